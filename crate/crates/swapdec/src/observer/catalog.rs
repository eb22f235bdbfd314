use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{BinaryObservable, ObservableKind};

/// Ordered collection of the observer's binary observables (the union of
/// reference and pointer sets).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<BinaryObservable>", into = "Vec<BinaryObservable>")]
pub struct ObservableCatalog {
    entries: Vec<BinaryObservable>,
    reference_count: usize,
    pointer_count: usize,
}

impl ObservableCatalog {
    pub fn new(entries: Vec<BinaryObservable>) -> Result<Self> {
        let mut seen = HashSet::new();
        for obs in &entries {
            obs.validate()?;
            if !seen.insert(obs.id.clone()) {
                return Err(Error::validation(format!(
                    "duplicate observable id {:?} in catalog",
                    obs.id
                )));
            }
        }
        let reference_count = entries
            .iter()
            .filter(|o| o.kind == ObservableKind::Reference)
            .count();
        let pointer_count = entries.len() - reference_count;
        Ok(ObservableCatalog {
            entries,
            reference_count,
            pointer_count,
        })
    }

    pub fn entries(&self) -> &[BinaryObservable] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn reference_count(&self) -> usize {
        self.reference_count
    }

    pub fn pointer_count(&self) -> usize {
        self.pointer_count
    }

    pub fn get(&self, id: &str) -> Option<&BinaryObservable> {
        self.entries.iter().find(|o| o.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.entries.iter().position(|o| o.id == id)
    }
}

impl TryFrom<Vec<BinaryObservable>> for ObservableCatalog {
    type Error = Error;
    fn try_from(entries: Vec<BinaryObservable>) -> Result<Self> {
        ObservableCatalog::new(entries)
    }
}

impl From<ObservableCatalog> for Vec<BinaryObservable> {
    fn from(catalog: ObservableCatalog) -> Self {
        catalog.entries
    }
}

/// The expected reference outcome bits whose simultaneous attainment
/// identifies the system of interest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReferenceSpec {
    pub expected: BTreeMap<String, u8>,
}

impl ReferenceSpec {
    pub fn new(expected: BTreeMap<String, u8>) -> Self {
        ReferenceSpec { expected }
    }

    /// Every key must name a Reference-kind observable in the catalog.
    pub fn validate_against(&self, catalog: &ObservableCatalog) -> Result<()> {
        for (id, bit) in &self.expected {
            if *bit > 1 {
                return Err(Error::validation(format!(
                    "reference spec for {id:?}: expected bit must be 0 or 1"
                )));
            }
            match catalog.get(id) {
                Some(obs) if obs.kind == ObservableKind::Reference => {}
                Some(_) => {
                    return Err(Error::validation(format!(
                        "reference spec key {id:?} names a pointer observable"
                    )))
                }
                None => {
                    return Err(Error::validation(format!(
                        "reference spec key {id:?} not present in catalog"
                    )))
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::Role;

    fn obs(id: &str, kind: ObservableKind) -> BinaryObservable {
        BinaryObservable::new(id, kind, Role::Reference(0))
    }

    #[test]
    fn counts_partition_catalog() {
        let catalog = ObservableCatalog::new(vec![
            obs("R1", ObservableKind::Reference),
            obs("R2", ObservableKind::Reference),
            obs("P1", ObservableKind::Pointer),
        ])
        .unwrap();
        assert_eq!(catalog.reference_count(), 2);
        assert_eq!(catalog.pointer_count(), 1);
        assert_eq!(catalog.reference_count() + catalog.pointer_count(), catalog.len());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = ObservableCatalog::new(vec![
            obs("R1", ObservableKind::Reference),
            obs("R1", ObservableKind::Pointer),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn reference_spec_must_name_reference_observables() {
        let catalog = ObservableCatalog::new(vec![
            obs("R1", ObservableKind::Reference),
            obs("P1", ObservableKind::Pointer),
        ])
        .unwrap();
        let ok = ReferenceSpec::new([("R1".to_string(), 1u8)].into());
        assert!(ok.validate_against(&catalog).is_ok());
        let wrong_kind = ReferenceSpec::new([("P1".to_string(), 0u8)].into());
        assert!(wrong_kind.validate_against(&catalog).is_err());
        let missing = ReferenceSpec::new([("R9".to_string(), 0u8)].into());
        assert!(missing.validate_against(&catalog).is_err());
    }
}

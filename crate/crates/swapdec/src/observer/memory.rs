use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::ObservableKind;

/// One recorded observation: the classical memory cell x_k(t).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemoryRecord {
    pub t: u64,
    pub observable_id: String,
    pub kind: ObservableKind,
    pub outcome: u8,
}

/// Classical, time-indexed outcome memory. Records are appended in
/// nondecreasing tick order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MemoryTape {
    records: Vec<MemoryRecord>,
}

impl MemoryTape {
    pub fn new() -> Self {
        MemoryTape::default()
    }

    pub fn append(&mut self, record: MemoryRecord) -> Result<()> {
        if let Some(last) = self.records.last() {
            if record.t < last.t {
                return Err(Error::validation(format!(
                    "memory records must be appended in nondecreasing tick order \
                     (got t={} after t={})",
                    record.t, last.t
                )));
            }
        }
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[MemoryRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Coarse-grains the tape from the qubit scale to the subsystem scale:
/// one R/P label per record, in temporal order.
pub fn classify_coarse_grained(memory: &MemoryTape) -> Vec<ObservableKind> {
    memory.records().iter().map(|r| r.kind).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(t: u64, id: &str, kind: ObservableKind, outcome: u8) -> MemoryRecord {
        MemoryRecord {
            t,
            observable_id: id.into(),
            kind,
            outcome,
        }
    }

    #[test]
    fn classification_follows_record_kinds() {
        let mut tape = MemoryTape::new();
        tape.append(rec(0, "R1", ObservableKind::Reference, 1)).unwrap();
        tape.append(rec(1, "P1", ObservableKind::Pointer, 0)).unwrap();
        tape.append(rec(2, "R2", ObservableKind::Reference, 1)).unwrap();
        assert_eq!(
            classify_coarse_grained(&tape),
            vec![
                ObservableKind::Reference,
                ObservableKind::Pointer,
                ObservableKind::Reference
            ]
        );
    }

    #[test]
    fn empty_tape_classifies_to_empty_sequence() {
        assert!(classify_coarse_grained(&MemoryTape::new()).is_empty());
    }

    #[test]
    fn out_of_order_append_rejected() {
        let mut tape = MemoryTape::new();
        tape.append(rec(5, "R1", ObservableKind::Reference, 0)).unwrap();
        assert!(tape.append(rec(4, "R1", ObservableKind::Reference, 0)).is_err());
        // Equal ticks are fine.
        tape.append(rec(5, "R2", ObservableKind::Reference, 0)).unwrap();
    }
}

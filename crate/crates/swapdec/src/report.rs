//! Result serialization: fixed-column CSV tables and a JSON summary with
//! stable key order. Floating-point values are emitted with 17 significant
//! digits so outputs are byte-reproducible and reparse losslessly.

use std::io::{self, Write};

use serde::Serialize;

use crate::analysis::LGStats;
use crate::config::ExperimentConfig;
use crate::dynamics::{DecayResult, SwapTrace, ZenoResult};
use crate::error::{Error, Result};
use crate::observer::MemoryTape;

/// 17-significant-digit rendering used in every CSV cell and JSON number.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `cycle,fraction_pure,mean_coherence,analytic_pure` per cycle.
pub fn write_decay_csv<W: Write>(w: &mut W, result: &DecayResult) -> io::Result<()> {
    w.write_all(b"cycle,fraction_pure,mean_coherence,analytic_pure\n")?;
    for c in &result.cycles {
        writeln!(
            w,
            "{},{},{},{}",
            c.cycle,
            fmt_f64(c.fraction_pure),
            fmt_f64(c.mean_coherence),
            fmt_f64(c.analytic_pure)
        )?;
    }
    Ok(())
}

/// `step,label,negativity_or,negativity_op,separable_or,separable_op`.
pub fn write_swap_csv<W: Write>(w: &mut W, trace: &SwapTrace) -> io::Result<()> {
    w.write_all(b"step,label,negativity_or,negativity_op,separable_or,separable_op\n")?;
    for s in &trace.steps {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            s.index, s.label,
            fmt_f64(s.negativity_or),
            fmt_f64(s.negativity_op),
            s.separable_or,
            s.separable_op
        )?;
    }
    Ok(())
}

/// One evaluated theta grid point.
#[derive(Clone, Debug, Serialize)]
pub struct LgRow {
    pub theta: f64,
    pub stats: LGStats,
}

/// `theta,c21,c32,c31,k_value,k_stderr` per grid point.
pub fn write_lg_csv<W: Write>(w: &mut W, rows: &[LgRow]) -> io::Result<()> {
    w.write_all(b"theta,c21,c32,c31,k_value,k_stderr\n")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_f64(row.theta),
            fmt_f64(row.stats.c21),
            fmt_f64(row.stats.c32),
            fmt_f64(row.stats.c31),
            fmt_f64(row.stats.k_value),
            fmt_f64(row.stats.k_stderr())
        )?;
    }
    Ok(())
}

/// `trial,first_outcome,constant_after_first,survived_initial` per trial;
/// the survival column is empty when the preparation is not an eigenstate.
pub fn write_zeno_csv<W: Write>(w: &mut W, result: &ZenoResult) -> io::Result<()> {
    w.write_all(b"trial,first_outcome,constant_after_first,survived_initial\n")?;
    for (i, trial) in result.outcomes.iter().enumerate() {
        let survived = match result.initial_eigenvalue {
            Some(q) => {
                if trial.outcomes.iter().all(|&o| o == q) {
                    "true"
                } else {
                    "false"
                }
            }
            None => "",
        };
        writeln!(
            w,
            "{},{},{},{}",
            i,
            trial.outcomes[0],
            trial.constant_after_first(),
            survived
        )?;
    }
    Ok(())
}

/// `t,observable_id,kind,outcome` per memory record.
pub fn write_tape_csv<W: Write>(w: &mut W, tape: &MemoryTape) -> io::Result<()> {
    w.write_all(b"t,observable_id,kind,outcome\n")?;
    for r in tape.records() {
        writeln!(w, "{},{},{},{}", r.t, r.observable_id, r.kind, r.outcome)?;
    }
    Ok(())
}

/// Envelope of `summary.json`: tool identification, the full effective
/// config, and experiment-specific results.
#[derive(Serialize)]
pub struct Summary<'a, R: Serialize> {
    pub tool: ToolInfo,
    pub config: &'a ExperimentConfig,
    pub results: R,
}

#[derive(Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "swapdec",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// Serializes with two-space indentation and 17-significant-digit floats.
pub fn to_json_17<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Pretty17::default());
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    String::from_utf8(buf).map_err(|e| Error::Config(format!("non-utf8 output: {e}")))
}

/// Pretty formatter with `{:.16e}` floats.
#[derive(Default)]
pub struct Pretty17 {
    depth: usize,
    has_value: bool,
}

impl Pretty17 {
    fn newline_indent<W: ?Sized + Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.depth {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for Pretty17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth += 1;
        self.has_value = false;
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth -= 1;
        if self.has_value {
            self.newline_indent(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline_indent(w)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth += 1;
        self.has_value = false;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth -= 1;
        if self.has_value {
            self.newline_indent(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline_indent(w)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::lg_evaluate;

    #[test]
    fn float_rendering_has_17_significant_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        // Round-trips exactly.
        let x = 0.12345678901234568;
        let back: f64 = fmt_f64(x).parse().unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn json_floats_use_scientific_form_and_reparse() {
        #[derive(Serialize)]
        struct Probe {
            p: f64,
            n: u32,
        }
        let json = to_json_17(&Probe { p: 0.1, n: 3 }).unwrap();
        assert!(json.contains("1.0000000000000001e-1"), "{json}");
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["p"].as_f64().unwrap(), 0.1);
        assert_eq!(value["n"].as_u64().unwrap(), 3);
    }

    #[test]
    fn lg_csv_schema() {
        let rows = vec![LgRow {
            theta: std::f64::consts::PI / 3.0,
            stats: lg_evaluate(0.5, 0.5, -0.5),
        }];
        let mut buf = Vec::new();
        write_lg_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "theta,c21,c32,c31,k_value,k_stderr"
        );
        assert_eq!(lines.next().unwrap().split(',').count(), 6);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_output_is_deterministic() {
        #[derive(Serialize)]
        struct Nested {
            values: Vec<f64>,
            flag: bool,
        }
        let a = to_json_17(&Nested { values: vec![1.0, 0.25], flag: true }).unwrap();
        let b = to_json_17(&Nested { values: vec![1.0, 0.25], flag: true }).unwrap();
        assert_eq!(a, b);
    }
}

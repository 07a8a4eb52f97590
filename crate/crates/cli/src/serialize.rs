//! JSON documents for transition tables and cohomology data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use su21_core::cohomology::{compute_kernel_d, w_dim, w_vector, ScalarActionTable};
use su21_core::lie::Weight;
use su21_core::module::{DiscreteSeriesModule, SpectrumWindow, TransitionTable, XSVector};
use su21_core::rational::{self, format_fraction};
use su21_core::Rational;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionEntry {
    pub q: [String; 2],
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionTableDoc {
    pub p: [String; 2],
    pub window: [u32; 2],
    pub gauge: String,
    pub entries: Vec<TransitionEntry>,
}

fn pair(w: &Weight) -> [String; 2] {
    [format_fraction(&w.q1), format_fraction(&w.q2)]
}

fn rat(s: &str) -> Result<Rational, CliError> {
    rational::parse(s).map_err(|_| CliError::Config(format!("'{s}' is not a rational number")))
}

impl TransitionTableDoc {
    pub fn from_table(t: &TransitionTable) -> Self {
        let w = &t.window;
        let entries = t
            .entries
            .iter()
            .map(|((n, m), [a, b, c, d])| TransitionEntry {
                q: pair(&w.label(*n, *m).q),
                a: format_fraction(a),
                b: format_fraction(b),
                c: format_fraction(c),
                d: format_fraction(d),
            })
            .collect();
        TransitionTableDoc { p: pair(&w.p), window: [w.n_max, w.m_max], gauge: t.gauge.clone(), entries }
    }

    pub fn to_table(&self) -> Result<TransitionTable, CliError> {
        let p = Weight::new(rat(&self.p[0])?, rat(&self.p[1])?);
        let window = SpectrumWindow::new(p.clone(), self.window[0], self.window[1]).map_err(CliError::from)?;
        let mut entries = BTreeMap::new();
        for e in &self.entries {
            let n = rational::to_i64(&(rat(&e.q[0])? - &p.q1));
            let m = rational::to_i64(&(&p.q2 - rat(&e.q[1])?));
            let (Some(n), Some(m)) = (n, m) else {
                return Err(CliError::Config(format!("q = ({}, {}) is not a K-type label of the window", e.q[0], e.q[1])));
            };
            if n < 0 || m < 0 || !window.contains(n as u32, m as u32) {
                return Err(CliError::Config(format!("q = ({}, {}) lies outside the window", e.q[0], e.q[1])));
            }
            entries.insert((n as u32, m as u32), [rat(&e.a)?, rat(&e.b)?, rat(&e.c)?, rat(&e.d)?]);
        }
        Ok(TransitionTable { window, gauge: self.gauge.clone(), entries })
    }
}

fn xs_json(v: &XSVector) -> serde_json::Value {
    serde_json::Value::Array(
        v.coords
            .iter()
            .map(|((n, m, k, s), c)| serde_json::json!({"n": n, "m": m, "k": k, "spin": s, "value": format_fraction(c)}))
            .collect(),
    )
}

pub fn scalar_table_json(t: &ScalarActionTable) -> serde_json::Value {
    serde_json::Value::Array(
        t.entries.iter().map(|(name, v)| serde_json::json!({"name": name, "value": format_fraction(v)})).collect(),
    )
}

/// `W` basis, interior kernel dimension and scalar actions.
pub fn cohomology_json(module: &DiscreteSeriesModule, scalars: &ScalarActionTable) -> Result<serde_json::Value, CliError> {
    let p = module.p();
    let basis: Vec<serde_json::Value> = (1..=w_dim(p))
        .map(|s| w_vector(p, s).map(|v| serde_json::json!({"s": s, "vector": xs_json(&v)})))
        .collect::<Result<_, _>>()
        .map_err(CliError::from)?;
    let kernel = compute_kernel_d(module).map_err(CliError::from)?;
    Ok(serde_json::json!({
        "p": pair(p),
        "dim_w": w_dim(p),
        "kernel_dimension": kernel.len(),
        "w_basis": basis,
        "scalar_actions": scalar_table_json(scalars),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transition_table_round_trip() {
        let m = DiscreteSeriesModule::build(Weight::ints(1, -1), 2, 2).unwrap();
        let doc = TransitionTableDoc::from_table(&m.table);
        let text = serde_json::to_string(&doc).unwrap();
        let back: TransitionTableDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_table().unwrap(), m.table);
        assert_eq!(serde_json::to_string(&TransitionTableDoc::from_table(&back.to_table().unwrap())).unwrap(), text);
        assert_eq!(doc.entries[0].q, ["1/1".to_string(), "-1/1".to_string()]);
        assert_eq!(doc.entries[0].a, "1/1");
    }
}

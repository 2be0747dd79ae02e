//! JSON form of a [`QuasiPolynomial`].
//!
//! Rationals are strings `"p/q"` (or `"p"`), so documents round-trip exactly.
//!
//! ```json
//! {"columns": [[1, 0], ...],
//!  "chambers": [{"index": 0, "lower_ray": [1, 0], "upper_ray": [2, 1],
//!                "polynomial": [[0, 2, "1/2"], ...],
//!                "periodic": [{"pair": [1, 3], "modulus": 2, "residues": [1, 1],
//!                              "linear_form": [1, 0], "shift": 2,
//!                              "table": ["1/8", "-1/8"], ...}]}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, BivarPoly};
use crate::dedekind::{PairReduction, ResidueTable};
use crate::error::{Error, Result};
use crate::lattice::{build_matrix, Chamber, Column};
use crate::quasipoly::{ChamberFormula, PeriodicTerm, QuasiPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaDoc {
    pub columns: Vec<Column>,
    pub chambers: Vec<ChamberDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberDoc {
    pub index: usize,
    pub lower_ray: Column,
    pub upper_ray: Column,
    /// `[i, j, c]` for `c * n1^i * n2^j`.
    pub polynomial: Vec<(u32, u32, String)>,
    pub periodic: Vec<PeriodicDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicDoc {
    pub pair: [usize; 2],
    pub modulus: i64,
    pub residues: Vec<i64>,
    pub linear_form: [i64; 2],
    pub shift: i64,
    pub table: Vec<String>,
    pub pivot: usize,
    pub f: i64,
    pub g: i64,
}

impl FormulaDoc {
    pub fn from_formula(q: &QuasiPolynomial) -> Self {
        let chambers = q
            .chambers
            .iter()
            .map(|cf| ChamberDoc {
                index: cf.chamber.index,
                lower_ray: cf.chamber.lower_ray,
                upper_ray: cf.chamber.upper_ray,
                polynomial: cf
                    .polynomial
                    .terms()
                    .map(|(&(i, j), c)| (i, j, c.to_string()))
                    .collect(),
                periodic: cf
                    .periodic
                    .iter()
                    .map(|t| {
                        let r = &t.reduction;
                        PeriodicDoc {
                            pair: [r.pair.0, r.pair.1],
                            modulus: r.modulus,
                            residues: r.residues.clone(),
                            linear_form: r.linear_form,
                            shift: r.shift,
                            table: t.table.values.iter().map(|v| v.to_string()).collect(),
                            pivot: r.pivot,
                            f: r.f,
                            g: r.g,
                        }
                    })
                    .collect(),
            })
            .collect();
        Self { columns: q.matrix.columns().to_vec(), chambers }
    }

    pub fn into_formula(self) -> Result<QuasiPolynomial> {
        let matrix = build_matrix(&self.columns)?;
        if matrix.columns() != self.columns.as_slice() {
            return Err(Error::Parse("columns must be listed in counterclockwise order".into()));
        }
        if self.chambers.len() != matrix.n_chambers() {
            return Err(Error::Parse(format!(
                "expected {} chambers, found {}",
                matrix.n_chambers(),
                self.chambers.len()
            )));
        }
        let mut chambers = Vec::with_capacity(self.chambers.len());
        for (k, doc) in self.chambers.into_iter().enumerate() {
            if doc.index != k {
                return Err(Error::Parse(format!("chamber {k} is labelled {}", doc.index)));
            }
            let terms = doc
                .polynomial
                .iter()
                .map(|(i, j, c)| Ok(((*i, *j), parse_rational(c)?)))
                .collect::<Result<Vec<_>>>()?;
            let periodic = doc.periodic.into_iter().map(periodic_term).collect::<Result<_>>()?;
            chambers.push(ChamberFormula {
                chamber: Chamber { index: k, lower_ray: doc.lower_ray, upper_ray: doc.upper_ray },
                polynomial: BivarPoly::from_terms(terms),
                periodic,
            });
        }
        Ok(QuasiPolynomial { matrix, chambers })
    }
}

fn periodic_term(doc: PeriodicDoc) -> Result<PeriodicTerm> {
    if doc.modulus < 2 || doc.table.len() != doc.modulus as usize {
        return Err(Error::Parse(format!(
            "periodic table of length {} for modulus {}",
            doc.table.len(),
            doc.modulus
        )));
    }
    let values = doc.table.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
    Ok(PeriodicTerm {
        reduction: PairReduction {
            pair: (doc.pair[0], doc.pair[1]),
            pivot: doc.pivot,
            f: doc.f,
            g: doc.g,
            modulus: doc.modulus,
            residues: doc.residues,
            linear_form: doc.linear_form.map(|a| a.rem_euclid(doc.modulus)),
            shift: doc.shift,
        },
        table: ResidueTable { modulus: doc.modulus, values },
    })
}

pub fn to_json(q: &QuasiPolynomial) -> String {
    serde_json::to_string_pretty(&FormulaDoc::from_formula(q)).expect("formula documents serialize")
}

pub fn from_json(text: &str) -> Result<QuasiPolynomial> {
    let doc: FormulaDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_formula()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasipoly::{build_formula, evaluate_count};

    #[test]
    fn round_trip_is_exact() {
        for cols in [
            vec![[1, 0], [2, 1], [1, 1], [0, 1]],
            vec![[1, 0], [1, 2], [1, 3], [0, 1], [-1, 1]],
            vec![[1, 0], [0, 1]],
        ] {
            let q = build_formula(&build_matrix(&cols).unwrap()).unwrap();
            let back = from_json(&to_json(&q)).unwrap();
            assert_eq!(back.chambers, q.chambers);
            for x in -6..=6 {
                for y in -6..=6 {
                    assert_eq!(evaluate_count(&back, [x, y]), evaluate_count(&q, [x, y]));
                }
            }
        }
    }

    #[test]
    fn example_document_fields() {
        let q = build_formula(&build_matrix(&[[1, 0], [2, 1], [1, 1], [0, 1]]).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&q)).unwrap();
        let periodic = &v["chambers"][1]["periodic"][0];
        assert_eq!(periodic["modulus"], 2);
        assert_eq!(periodic["table"], serde_json::json!(["1/8", "-1/8"]));
        assert_eq!(periodic["linear_form"], serde_json::json!([1, 0]));
        assert!(v["chambers"][0]["polynomial"]
            .as_array()
            .unwrap()
            .contains(&serde_json::json!([0, 2, "1/2"])));
    }

    #[test]
    fn malformed_documents_rejected() {
        assert!(matches!(from_json("{"), Err(Error::Parse(_))));
        let q = build_formula(&build_matrix(&[[1, 0], [2, 1], [1, 1], [0, 1]]).unwrap()).unwrap();
        let mut doc = FormulaDoc::from_formula(&q);
        doc.chambers[1].periodic[0].table.pop();
        assert!(matches!(doc.clone().into_formula(), Err(Error::Parse(_))));
        doc.columns.swap(0, 1);
        assert!(matches!(doc.into_formula(), Err(Error::Parse(_))));
    }
}

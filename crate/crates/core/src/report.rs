//! Machine-readable verification records and their aggregate report.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::polyrep::{BiPoly, UniPoly};
use crate::scalar::{Coeff, Cx};

/// The first term at which the two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub a: u32,
    pub b: u32,
    pub lhs: Value,
    pub rhs: Value,
}

fn cx_value<F: Coeff>(c: &Cx<F>) -> Value {
    serde_json::json!({ "re": c.re.to_json(), "im": c.im.to_json() })
}

impl Witness {
    pub fn from_bipolys<F: Coeff>(lhs: &BiPoly<F>, rhs: &BiPoly<F>) -> Option<Witness> {
        lhs.first_difference(rhs).map(|(m, l, r)| Witness {
            a: m.a,
            b: m.b,
            lhs: cx_value(&l),
            rhs: cx_value(&r),
        })
    }

    /// Univariate terms use `b = 0`, as in the polynomial schema.
    pub fn from_unipolys<F: Coeff>(lhs: &UniPoly<F>, rhs: &UniPoly<F>) -> Option<Witness> {
        lhs.first_difference(rhs).map(|(i, l, r)| Witness {
            a: i as u32,
            b: 0,
            lhs: l.to_json(),
            rhs: r.to_json(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One checked identity instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub identity: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(identity: impl Into<String>) -> Self {
        CheckRecord {
            identity: identity.into(),
            params: BTreeMap::new(),
            pass: true,
            witness: None,
            status: Status::Pass,
            note: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_witness(mut self, witness: Option<Witness>) -> Self {
        self.pass = witness.is_none();
        self.status = if self.pass { Status::Pass } else { Status::Fail };
        self.witness = witness;
        self
    }

    pub fn failed(mut self, note: impl Into<String>) -> Self {
        self.pass = false;
        self.status = Status::Fail;
        self.note = Some(note.into());
        self
    }

    pub fn skipped(mut self, note: impl Into<String>) -> Self {
        self.pass = true;
        self.status = Status::Skipped;
        self.note = Some(note.into());
        self
    }

    pub fn bipoly_eq<F: Coeff>(self, lhs: &BiPoly<F>, rhs: &BiPoly<F>) -> Self {
        self.with_witness(Witness::from_bipolys(lhs, rhs))
    }

    pub fn unipoly_eq<F: Coeff>(self, lhs: &UniPoly<F>, rhs: &UniPoly<F>) -> Self {
        self.with_witness(Witness::from_unipolys(lhs, rhs))
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn is_skipped(&self) -> bool {
        self.status == Status::Skipped
    }

    fn sort_key(&self) -> (String, String) {
        (
            self.identity.clone(),
            serde_json::to_string(&self.params).unwrap_or_default(),
        )
    }
}

/// Which reading of a misprinted operator the checks support.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VariantFinding {
    /// The form the library exports.
    pub adopted: String,
    pub printed: String,
    pub adopted_passes: usize,
    pub printed_passes: usize,
    /// Tuples where both readings produce the same polynomial.
    pub both_pass: usize,
    pub neither_pass: usize,
    pub tested: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Aggregate result of a verification batch. Skipped records are counted in
/// the summary but left out of `records`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub z2_variant: Option<VariantFinding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e2_variant: Option<VariantFinding>,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn from_records(mut records: Vec<CheckRecord>) -> Self {
        records.sort_by_key(CheckRecord::sort_key);
        let summary = Summary {
            total: records.len(),
            passed: records.iter().filter(|r| r.is_pass()).count(),
            failed: records.iter().filter(|r| r.is_fail()).count(),
            skipped: records.iter().filter(|r| r.is_skipped()).count(),
        };
        records.retain(|r| !r.is_skipped());
        VerificationReport {
            summary,
            z2_variant: None,
            e2_variant: None,
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.is_fail())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    #[test]
    fn witness_reports_first_difference() {
        let l: BiPoly<Rational> = &BiPoly::z() + &BiPoly::one();
        let r: BiPoly<Rational> = BiPoly::z();
        let rec = CheckRecord::new("x").param("k", 1).bipoly_eq(&l, &r);
        assert!(!rec.pass);
        let w = rec.witness.unwrap();
        assert_eq!((w.a, w.b), (0, 0));
        assert_eq!(w.lhs["re"], "1");
        assert_eq!(w.rhs["re"], "0");
    }

    #[test]
    fn skipped_records_are_counted_not_listed() {
        let recs = vec![
            CheckRecord::new("b").unipoly_eq(&UniPoly::<Rational>::one(), &UniPoly::one()),
            CheckRecord::new("a").skipped("out of range"),
            CheckRecord::new("c").unipoly_eq(&UniPoly::<Rational>::one(), &UniPoly::constant(qi(2))),
        ];
        let rep = VerificationReport::from_records(recs);
        assert_eq!(rep.summary.total, 3);
        assert_eq!(rep.summary.skipped, 1);
        assert_eq!(rep.summary.failed, 1);
        assert_eq!(rep.records.len(), 2);
        assert!(!rep.all_pass());
        assert!(rep.to_json().contains("\"z2_variant\": null"));
    }
}

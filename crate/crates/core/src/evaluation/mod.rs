//! Alignment scoring against a reference, and competency-question checks.

mod competency;

use std::collections::HashSet;
use std::fmt::{self, Write};

use serde::{Serialize, Serializer};

use crate::alignment::{Alignment, AlignmentError};

pub use competency::{
    answer_question, competency_check, parse_manifest, CompetencyAnswer, CompetencyError, Manifest, Question,
    RoleBindings,
};

/// A ratio that may be undefined (0/0 and friends). Undefined prints as `NaN`
/// but never takes part in arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Score(f64),
    Undefined,
}

impl Metric {
    pub fn ratio(num: usize, den: usize) -> Metric {
        if den == 0 {
            Metric::Undefined
        } else {
            Metric::Score(num as f64 / den as f64)
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Metric::Score(v) => Some(v),
            Metric::Undefined => None,
        }
    }

    pub fn is_undefined(self) -> bool {
        self == Metric::Undefined
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Score(v) => write!(f, "{v:.4}"),
            Metric::Undefined => f.write_str("NaN"),
        }
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Metric::Score(v) => s.serialize_f64(*v),
            Metric::Undefined => s.serialize_str("NaN"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub result_count: usize,
    pub reference_count: usize,
    pub common_count: usize,
    pub precision: Metric,
    pub recall: Metric,
    pub f1: Metric,
}

impl EvalReport {
    pub fn from_counts(result_count: usize, reference_count: usize, common_count: usize) -> Self {
        let precision = Metric::ratio(common_count, result_count);
        let recall = Metric::ratio(common_count, reference_count);
        let f1 = match (precision, recall) {
            (Metric::Score(p), Metric::Score(r)) if p + r > 0.0 => Metric::Score(2.0 * p * r / (p + r)),
            _ => Metric::Undefined,
        };
        EvalReport {
            result_count,
            reference_count,
            common_count,
            precision,
            recall,
            f1,
        }
    }

    /// One `name<TAB>value` line per field.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "precision\t{}", self.precision);
        let _ = writeln!(out, "recall\t{}", self.recall);
        let _ = writeln!(out, "f1\t{}", self.f1);
        let _ = writeln!(out, "common_count\t{}", self.common_count);
        let _ = writeln!(out, "result_count\t{}", self.result_count);
        let _ = writeln!(out, "reference_count\t{}", self.reference_count);
        out
    }
}

/// Scores `a` against `reference`; correspondences are compared on
/// (entity1, entity2, relation), similarity ignored.
pub fn evaluate(a: &Alignment, reference: &Alignment) -> Result<EvalReport, AlignmentError> {
    a.check_same_pair(reference)?;
    let wanted: HashSet<_> = reference.correspondences().iter().map(|c| c.key()).collect();
    let tp = a.correspondences().iter().filter(|c| wanted.contains(&c.key())).count();
    Ok(EvalReport::from_counts(a.len(), reference.len(), tp))
}

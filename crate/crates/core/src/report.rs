//! Serializable report documents with deterministic field ordering. Struct
//! field order is the serialization order, weight lists are kept sorted
//! ascending, and cyclotomic values are emitted as integer-string arrays,
//! so identical configurations serialize byte for byte.

use serde::{Deserialize, Serialize};

use crate::codes::{DualDistance, LinearCode, WeightDist};
use crate::cyclotomic::CycloInt;
use crate::derived::BoundVerdict;
use crate::spectral::{Condition, ConditionReport, QuarticUnit, Witness};

/// A code together with its enumerated or predicted weight data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub q: u64,
    pub length: usize,
    pub dimension: usize,
    /// `[weight, multiplicity]` pairs sorted by weight, including weight 0.
    pub weights: Vec<(u64, u64)>,
    pub minimum_distance: u64,
    pub self_orthogonal: bool,
    pub dual_distance: Option<DualDistanceDoc>,
    /// `"enumeration"` or `"theorem"`.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualDistanceDoc {
    pub exact: bool,
    pub value: u32,
}

impl From<DualDistance> for DualDistanceDoc {
    fn from(d: DualDistance) -> Self {
        match d {
            DualDistance::Exact(v) => DualDistanceDoc {
                exact: true,
                value: v,
            },
            DualDistance::AtLeast(v) => DualDistanceDoc {
                exact: false,
                value: v,
            },
        }
    }
}

impl CodeReport {
    pub fn from_enumeration(
        code: &LinearCode,
        wd: &WeightDist,
        self_orthogonal: bool,
        dual: Option<DualDistance>,
    ) -> CodeReport {
        CodeReport {
            q: code.q(),
            length: code.length,
            dimension: code.dimension,
            weights: wd.pairs.clone(),
            minimum_distance: wd.min_nonzero_weight().unwrap_or(0),
            self_orthogonal,
            dual_distance: dual.map(Into::into),
            source: "enumeration".to_string(),
        }
    }

    pub fn from_prediction(q: u64, dimension: usize, wd: &WeightDist) -> CodeReport {
        CodeReport {
            q,
            length: wd.max_weight().unwrap_or(0) as usize,
            dimension,
            weights: wd.pairs.clone(),
            minimum_distance: wd.min_nonzero_weight().unwrap_or(0),
            self_orthogonal: true,
            dual_distance: None,
            source: "theorem".to_string(),
        }
    }
}

/// Certification outcome in serializable form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReportDoc {
    pub condition: Condition,
    pub holds: bool,
    pub eps_or_theta: Option<QuarticUnit>,
    pub l_exponent: Option<u64>,
    pub d_exponent: Option<u64>,
    pub dual_values: Option<Vec<u32>>,
    pub counterexample: Option<Witness>,
}

impl From<&ConditionReport> for ConditionReportDoc {
    fn from(r: &ConditionReport) -> Self {
        ConditionReportDoc {
            condition: r.condition,
            holds: r.holds,
            eps_or_theta: r.eps_or_theta,
            l_exponent: r.l_exponent,
            d_exponent: r.d_exponent,
            dual_values: r.vectorial_dual.as_ref().map(|f| f.values.clone()),
            counterexample: r.counterexample.clone(),
        }
    }
}

/// A cyclotomic integer as its coefficient array (base `1, zeta, ...`),
/// rendered as decimal strings to stay exact in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloDoc {
    pub p: u32,
    pub coeffs: Vec<String>,
}

impl From<&CycloInt> for CycloDoc {
    fn from(z: &CycloInt) -> Self {
        CycloDoc {
            p: z.p(),
            coeffs: z.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Closed-form-versus-oracle comparison for one character-sum query.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharsumReport {
    pub identity: String,
    pub params: Vec<(String, String)>,
    pub closed_form: CycloDoc,
    pub brute_force: CycloDoc,
    pub agree: bool,
}

/// Quantum / LCD derivation summary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivedReport {
    pub kind: String,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub verdict: BoundVerdict,
}

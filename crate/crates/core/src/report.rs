//! Serializable records shared by the table generators, the verification
//! sweeps and the command-line front end.

use serde::{Deserialize, Serialize};

/// How far a table row has been checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Parameters recomputed from cosets and ranks agree with the closed form.
    FormulaMatch,
    /// Additionally confirmed by exhaustive search.
    OracleVerified,
    /// Formula matched but the exhaustive check was over budget.
    OracleSkipped,
    /// Recomputed parameters contradict the closed form or the search.
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::FormulaMatch => "formula-match",
            Status::OracleVerified => "oracle-verified",
            Status::OracleSkipped => "oracle-skipped",
            Status::Mismatch => "mismatch",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One regenerated table entry.
///
/// `params` holds the bracket notation exactly as printed; `computed_bound`
/// is the distance bound derived from the constructed codes, which can exceed
/// the claimed bound shown in `params`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: u8,
    pub family: String,
    pub q: u64,
    pub m: Option<u32>,
    pub c: Option<u64>,
    pub i: Option<u64>,
    pub n: u64,
    pub k: u64,
    pub degree: Option<u64>,
    pub memory: Option<u64>,
    pub claimed_bound: u64,
    pub computed_bound: u64,
    pub params: String,
    pub status: Status,
    pub note: Option<String>,
}

/// A disagreement between a computed value and the value a construction
/// promises. Reported, never panicked on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub module: String,
    pub check: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {} ({}): expected {}, got {}",
            self.module, self.check, self.inputs, self.expected, self.actual
        )
    }
}

/// CSS bracket: `[[n, k, d >= D]]_q`.
pub fn css_bracket(n: u64, k: u64, d: u64, q: u64) -> String {
    format!("[[{n}, {k}, d >= {d}]]_{q}")
}

/// Convolutional bracket: `(n, k, g; m, dfree >= D)_q`.
pub fn conv_bracket(n: u64, k: u64, degree: u64, memory: u64, d: u64, q: u64) -> String {
    format!("({n}, {k}, {degree}; {memory}, dfree >= {d})_{q}")
}

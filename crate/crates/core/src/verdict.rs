use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of a sampled verification. `max_residual` is the worst observed
/// violation measure; `witness` describes the sample that produced it.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Verdict {
    pub(crate) fn new(check: &str, trials: usize, seed: u64, tolerance: f64) -> Self {
        Verdict {
            check: check.to_string(),
            passed: true,
            trials,
            seed,
            tolerance,
            max_residual: 0.0,
            witness: None,
        }
    }

    /// Records one residual; keeps the witness of the worst one.
    pub(crate) fn record(&mut self, residual: f64, witness: impl FnOnce() -> Value) {
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
            self.witness = Some(witness());
        }
        if !(residual <= self.tolerance) {
            self.passed = false;
        }
    }
}

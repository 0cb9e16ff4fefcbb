use serde::Serialize;
use serde_json::Value;

/// Outcome of one verification run.
///
/// For inequality properties `worst_violation` is the smallest observed slack
/// (negative means violated) and the property passes when it is at least
/// `-tolerance`. For equality properties it is the largest observed error and
/// the property passes when its magnitude is within `tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property_name: String,
    pub samples: u64,
    pub worst_violation: f64,
    pub worst_case_inputs: Value,
    pub passed: bool,
    pub seed: u64,
}

impl PropertyReport {
    pub fn inequality(
        name: impl Into<String>,
        samples: u64,
        worst_slack: f64,
        inputs: Value,
        tolerance: f64,
        seed: u64,
    ) -> Self {
        Self {
            property_name: name.into(),
            samples,
            worst_violation: worst_slack,
            worst_case_inputs: inputs,
            passed: worst_slack >= -tolerance,
            seed,
        }
    }

    pub fn equality(
        name: impl Into<String>,
        samples: u64,
        worst_error: f64,
        inputs: Value,
        tolerance: f64,
        seed: u64,
    ) -> Self {
        Self {
            property_name: name.into(),
            samples,
            worst_violation: worst_error,
            worst_case_inputs: inputs,
            passed: worst_error.abs() <= tolerance,
            seed,
        }
    }

    /// Single-line JSON rendering.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Running extreme with the index that produced it. Ties keep the lowest
/// index, so parallel and serial reductions agree.
#[derive(Clone, Debug)]
pub(crate) struct Extreme<I> {
    pub value: f64,
    pub index: usize,
    pub inputs: I,
}

impl<I> Extreme<I> {
    pub fn new(value: f64, index: usize, inputs: I) -> Self {
        Self {
            value,
            index,
            inputs,
        }
    }

    /// Keeps the smaller value; NaN counts as smallest.
    pub fn min(self, other: Self) -> Self {
        let key = |v: f64| if v.is_nan() { f64::NEG_INFINITY } else { v };
        match key(self.value).total_cmp(&key(other.value)) {
            std::cmp::Ordering::Less => self,
            std::cmp::Ordering::Greater => other,
            std::cmp::Ordering::Equal if self.index <= other.index => self,
            std::cmp::Ordering::Equal => other,
        }
    }

    /// Keeps the larger value; NaN counts as largest.
    pub fn max(self, other: Self) -> Self {
        let key = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
        match key(self.value).total_cmp(&key(other.value)) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal if self.index <= other.index => self,
            std::cmp::Ordering::Equal => other,
        }
    }
}

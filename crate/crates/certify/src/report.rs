//! Machine-readable verdicts. Witnesses carry enough data (polynomials,
//! intervals, counts, constants) to re-verify each step in isolation.

use exactalg::{textfmt, IntervalQ, MPoly, Rational};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Decreasing,
    Increasing,
}

impl Branch {
    pub fn d_window(self) -> (Rational, Rational) {
        match self {
            Branch::Decreasing => (exactalg::rat(-1, 2), exactalg::int(0)),
            Branch::Increasing => (exactalg::int(-1), exactalg::rat(-1, 2)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Decreasing => "decreasing",
            Branch::Increasing => "increasing",
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "decreasing" => Ok(Branch::Decreasing),
            "increasing" => Ok(Branch::Increasing),
            other => Err(format!("unknown branch {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub name: String,
    pub claim: String,
    pub verdict: Verdict,
    pub witness: Value,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub branch: Branch,
    pub steps: Vec<StepReport>,
    pub overall: Verdict,
}

impl CertificateReport {
    pub fn assemble(branch: Branch, steps: Vec<StepReport>) -> Self {
        let overall = if steps.iter().all(StepReport::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            branch,
            steps,
            overall,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Verdict::Pass
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn step(&self, name: &str) -> Option<&StepReport> {
        self.steps.iter().find(|s| s.name == name)
    }
}

/// Embeds a polynomial in witness JSON using the exact polynomial format.
pub fn poly_json(p: &MPoly) -> Value {
    serde_json::from_str(&textfmt::to_json(p)).expect("valid polynomial JSON")
}

pub fn rational_str(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn interval_json(iv: &IntervalQ) -> Value {
    json!({ "lo": rational_str(iv.lo()), "hi": rational_str(iv.hi()) })
}

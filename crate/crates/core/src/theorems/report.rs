//! Structured verdicts: hypotheses with evidence, asserted conclusions and
//! the counterexample alarm.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Statements the harness knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// `p^n >= e(R)`, `F^n(M)` MCM and `M` free at minimal primes imply `M` free.
    FrobeniusMcmFreeness,
    /// `R = F_p[x,y]/(x^2)`, `M = R/(xy)`: `F(M)` is MCM, `M` is not free.
    DoubleLineExample,
    /// Over `F_p[x,y]/(xy)`: tensor products of `R/(x)` and ranks of `R/(x)`.
    NodeTensorExample,
    /// Vanishing of `Ext^i(Tr M, N)` for `i <= n` from depth conditions.
    TransposeExtVanishing,
    /// `0 -> Ext^1(Tr M, N) -> M ⊗ N -> Hom(M*, N) -> Ext^2(Tr M, N) -> 0`.
    TransposeFourTermSequence,
    /// Vanishing of `d` consecutive `Ext^i(M, ^{φ^n}R)` bounds `pd M`.
    FrobeniusExtPdBound,
    /// A reduction of length `e(R) <= q` yields `m^[q] ⊆ (sop)`.
    MultiplicityBoundsDrs,
    /// Over a non-regular ring, Frobenius pushforwards have infinite `pd`.
    PushforwardInfinitePd,
    /// `^{φ^n}R ⊗ ^{φ^n}R` has torsion once `p^n >= e(R)`.
    PushforwardTensorTorsion,
    /// `^{φ^s}R ⊗ ^{φ^n}R` MCM forces `R` regular.
    TensorMcmForcesRegular,
}

impl Statement {
    pub const ALL: [Statement; 10] = [
        Statement::FrobeniusMcmFreeness,
        Statement::DoubleLineExample,
        Statement::NodeTensorExample,
        Statement::TransposeExtVanishing,
        Statement::TransposeFourTermSequence,
        Statement::FrobeniusExtPdBound,
        Statement::MultiplicityBoundsDrs,
        Statement::PushforwardInfinitePd,
        Statement::PushforwardTensorTorsion,
        Statement::TensorMcmForcesRegular,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Statement::FrobeniusMcmFreeness => "frobenius-mcm-freeness",
            Statement::DoubleLineExample => "double-line-example",
            Statement::NodeTensorExample => "node-tensor-example",
            Statement::TransposeExtVanishing => "transpose-ext-vanishing",
            Statement::TransposeFourTermSequence => "transpose-four-term-sequence",
            Statement::FrobeniusExtPdBound => "frobenius-ext-pd-bound",
            Statement::MultiplicityBoundsDrs => "multiplicity-bounds-drs",
            Statement::PushforwardInfinitePd => "pushforward-infinite-pd",
            Statement::PushforwardTensorTorsion => "pushforward-tensor-torsion",
            Statement::TensorMcmForcesRegular => "tensor-mcm-forces-regular",
        }
    }

    pub fn from_id(s: &str) -> Option<Statement> {
        Self::ALL.into_iter().find(|st| st.id() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub evidence: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConclusionStatus {
    Holds,
    Fails,
    /// Some hypothesis failed, so the conclusion was not asserted.
    NotAsserted,
    /// The statement does not apply to this instance (e.g. a regular ring).
    NotApplicable,
}

/// How a report contributes to a run's exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    HypothesesFail,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: Statement,
    pub instance: Value,
    pub hypotheses: Vec<Check>,
    pub conclusion: ConclusionStatus,
    /// Checked conclusions. Conditional ones are only evaluated when every
    /// hypothesis holds; unconditional ones are always evaluated.
    pub assertions: Vec<Check>,
    pub counterexample: bool,
    pub notes: Vec<String>,
    /// Wall-clock time per stage; kept out of the serialized form.
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl VerificationReport {
    pub fn outcome(&self) -> Outcome {
        if self.counterexample {
            Outcome::Counterexample
        } else if self.conclusion == ConclusionStatus::Holds {
            Outcome::Pass
        } else {
            Outcome::HypothesesFail
        }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn assertion(&self, name: &str) -> Option<&Check> {
        self.assertions.iter().find(|a| a.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = match self.outcome() {
            Outcome::Pass => "PASS",
            Outcome::HypothesesFail => "HYPOTHESES FAIL",
            Outcome::Counterexample => "COUNTEREXAMPLE",
        };
        let _ = writeln!(s, "[{}] {verdict}", self.statement.id());
        if let Value::Object(map) = &self.instance {
            for (k, v) in map {
                let _ = writeln!(s, "  {k}: {}", compact(v));
            }
        }
        for h in &self.hypotheses {
            let _ = writeln!(s, "  hypothesis {}: {}", h.name, yes_no(h.holds));
        }
        let _ = writeln!(s, "  conclusion: {}", serde_json::to_value(self.conclusion).unwrap().as_str().unwrap());
        for a in &self.assertions {
            let _ = writeln!(s, "  assert {}: {}", a.name, yes_no(a.holds));
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Accumulates a report while a verifier runs.
pub(crate) struct ReportBuilder {
    statement: Statement,
    instance: serde_json::Map<String, Value>,
    hypotheses: Vec<Check>,
    assertions: Vec<(Check, bool)>,
    not_applicable: bool,
    notes: Vec<String>,
    timings: Vec<(String, Duration)>,
}

impl ReportBuilder {
    pub fn new(statement: Statement) -> Self {
        ReportBuilder {
            statement,
            instance: serde_json::Map::new(),
            hypotheses: Vec::new(),
            assertions: Vec::new(),
            not_applicable: false,
            notes: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn instance(&mut self, key: &str, v: impl Serialize) {
        self.instance
            .insert(key.into(), serde_json::to_value(v).expect("serializable instance"));
    }

    pub fn hypothesis(&mut self, name: &str, holds: bool, evidence: Value) -> bool {
        self.hypotheses.push(Check {
            name: name.into(),
            holds,
            evidence,
        });
        holds
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    /// Asserted only under the hypotheses.
    pub fn assert(&mut self, name: &str, holds: bool, evidence: Value) {
        self.assertions.push((
            Check {
                name: name.into(),
                holds,
                evidence,
            },
            true,
        ));
    }

    /// Asserted regardless of the hypotheses.
    pub fn assert_always(&mut self, name: &str, holds: bool, evidence: Value) {
        self.assertions.push((
            Check {
                name: name.into(),
                holds,
                evidence,
            },
            false,
        ));
    }

    pub fn not_applicable(&mut self) {
        self.not_applicable = true;
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.push((stage.into(), t.elapsed()));
        out
    }

    pub fn finish(self) -> VerificationReport {
        let hyps = self.hypotheses_hold();
        let assertions: Vec<Check> = self
            .assertions
            .into_iter()
            .filter(|(_, conditional)| hyps || !conditional)
            .map(|(c, _)| c)
            .collect();
        let all_hold = assertions.iter().all(|a| a.holds);
        let conclusion = if self.not_applicable {
            ConclusionStatus::NotApplicable
        } else if !all_hold {
            ConclusionStatus::Fails
        } else if hyps {
            ConclusionStatus::Holds
        } else {
            ConclusionStatus::NotAsserted
        };
        VerificationReport {
            statement: self.statement,
            instance: Value::Object(self.instance),
            hypotheses: self.hypotheses,
            conclusion,
            counterexample: !all_hold && !self.not_applicable,
            assertions,
            notes: self.notes,
            timings: self.timings,
        }
    }
}

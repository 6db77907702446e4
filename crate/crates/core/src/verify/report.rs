use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::ForgeError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    Divisors,
    SelfDual,
    DualFloor,
    Cor1,
    Cor34,
    Thm14,
    Cor15,
    Leech,
    LemmaNum,
    Mckay,
    Thm48,
    Generates,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::Divisors,
        ClaimId::SelfDual,
        ClaimId::DualFloor,
        ClaimId::Cor1,
        ClaimId::Cor34,
        ClaimId::Thm14,
        ClaimId::Cor15,
        ClaimId::Leech,
        ClaimId::LemmaNum,
        ClaimId::Mckay,
        ClaimId::Thm48,
        ClaimId::Generates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Divisors => "divisors",
            ClaimId::SelfDual => "self-dual",
            ClaimId::DualFloor => "dual-floor",
            ClaimId::Cor1 => "cor1",
            ClaimId::Cor34 => "cor34",
            ClaimId::Thm14 => "thm14",
            ClaimId::Cor15 => "cor15",
            ClaimId::Leech => "leech",
            ClaimId::LemmaNum => "lemma-num",
            ClaimId::Mckay => "mckay",
            ClaimId::Thm48 => "thm48",
            ClaimId::Generates => "generates",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = ForgeError;

    fn from_str(s: &str) -> Result<Self, ForgeError> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| ForgeError::InvalidParameter(format!("unknown claim {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// How a computed value is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    Exhaustive,
    BzCertified,
    DerivedViaTheorem,
    Randomized,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub value: Value,
    pub certification: Certification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub outcome: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Inputs {
    pub source: String,
    pub order: usize,
    pub normalization: String,
    pub params: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub claim: ClaimId,
    pub inputs: Inputs,
    pub computed: Vec<Entry>,
    pub checks: Vec<SubCheck>,
    pub assumptions: Vec<String>,
    pub verdict: Verdict,
    pub certification: Certification,
}

impl VerifyReport {
    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.inputs.source = source.into();
        self
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.computed.iter().find(|e| e.name == name)
    }

    pub fn check(&self, name: &str) -> Option<&SubCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}

/// Accumulates entries and sub-checks; the verdict is the worst sub-check.
#[derive(Debug)]
pub struct ReportBuilder {
    claim: ClaimId,
    inputs: Inputs,
    computed: Vec<Entry>,
    checks: Vec<SubCheck>,
    assumptions: Vec<String>,
}

impl ReportBuilder {
    pub fn new(claim: ClaimId, order: usize) -> Self {
        ReportBuilder {
            claim,
            inputs: Inputs { order, ..Inputs::default() },
            computed: Vec::new(),
            checks: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn normalization(&mut self, how: &str) -> &mut Self {
        self.inputs.normalization = how.to_string();
        self
    }

    pub fn param(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        self.inputs.params.insert(name.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn value(&mut self, name: &str, value: impl Serialize, certification: Certification) -> &mut Self {
        self.computed.push(Entry {
            name: name.to_string(),
            value: serde_json::to_value(value).expect("serializable"),
            certification,
        });
        self
    }

    pub fn check(&mut self, name: &str, ok: bool) -> &mut Self {
        self.outcome(name, Verdict::from(ok), None)
    }

    pub fn check_with(&mut self, name: &str, ok: bool, detail: impl Into<String>) -> &mut Self {
        self.outcome(name, Verdict::from(ok), Some(detail.into()))
    }

    pub fn inconclusive(&mut self, name: &str, reason: impl Into<String>) -> &mut Self {
        self.outcome(name, Verdict::Inconclusive, Some(reason.into()))
    }

    pub fn outcome(&mut self, name: &str, outcome: Verdict, detail: Option<String>) -> &mut Self {
        self.checks.push(SubCheck { name: name.to_string(), outcome, detail });
        self
    }

    pub fn assume(&mut self, text: &str) -> &mut Self {
        self.assumptions.push(text.to_string());
        self
    }

    pub fn verdict(&self) -> Verdict {
        self.checks.iter().fold(Verdict::Pass, |v, c| v.combine(c.outcome))
    }

    pub fn finish(self, certification: Certification) -> VerifyReport {
        let verdict = if self.checks.is_empty() { Verdict::Inconclusive } else { self.verdict() };
        VerifyReport {
            schema_version: SCHEMA_VERSION,
            claim: self.claim,
            inputs: self.inputs,
            computed: self.computed,
            checks: self.checks,
            assumptions: self.assumptions,
            verdict,
            certification,
        }
    }
}

use serde::Serialize;
use serde_json::Value;

/// One named check with its outcome. Failures carry a witness.
#[derive(Debug, Clone, Serialize)]
pub struct Invariant {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Invariant {
    pub fn pass(name: &str) -> Self {
        Invariant { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: &str, witness: impl Serialize) -> Self {
        Invariant { name: name.into(), pass: false, witness: Some(serde_json::to_value(witness).unwrap_or(Value::Null)) }
    }

    pub fn check(name: &str, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Invariant { name: name.into(), pass: false, witness: Some(witness()) }
        }
    }
}

/// Output record of a subcommand. Timing is left out unless asked for, so
/// that reports are byte-identical across runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub result: Value,
    pub invariants: Vec<Invariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: &str, input_digest: Option<String>) -> Self {
        RunReport { command: command.into(), input_digest, result: Value::Null, invariants: Vec::new(), timing_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.invariants.iter().all(|i| i.pass)
    }

    pub fn push(&mut self, inv: Invariant) -> &mut Self {
        self.invariants.push(inv);
        self
    }
}

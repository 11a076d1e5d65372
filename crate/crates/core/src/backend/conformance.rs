//! Protocol checks every backend implementation must pass.

use serde::{Deserialize, Serialize};

use super::{Backend, BackendRequest, Message, Role};
use crate::agent::{PrefillKind, BASE_INSTRUCTIONS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, result: Result<(), String>) -> Self {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

fn probe_request() -> BackendRequest {
    let mut req = BackendRequest::new(vec![
        Message::new(Role::System, BASE_INSTRUCTIONS),
        Message::new(
            Role::User,
            "What is 17 + 25? Put your final answer in \\boxed{}.",
        ),
    ]);
    req.max_tokens = 64;
    req
}

fn prefill_prefix(backend: &dyn Backend) -> Result<(), String> {
    for kind in [
        PrefillKind::SoftDirect,
        PrefillKind::SoftTool,
        PrefillKind::HardDirect,
        PrefillKind::HardTool,
    ] {
        let mut req = probe_request();
        req.assistant_prefill = Some(kind.text().to_string());
        let resp = backend
            .generate(&req)
            .map_err(|e| format!("{kind:?}: {e}"))?;
        if !resp.text.starts_with(kind.text()) {
            return Err(format!(
                "{kind:?}: completion starts with {:?}",
                resp.text.chars().take(40).collect::<String>()
            ));
        }
    }
    Ok(())
}

fn hidden_shape(backend: &dyn Backend) -> Result<(), String> {
    let mut req = probe_request();
    req.want_hidden_states = true;
    let resp = backend.generate(&req).map_err(|e| e.to_string())?;
    let h = resp.hidden.ok_or("no hidden states in the response")?;
    let (l, d) = (resp.model_meta.layer_count, resp.model_meta.hidden_dim);
    if h.values.len() != l * d || (h.layer_count, h.hidden_dim) != (l, d) {
        return Err(format!(
            "got {} values as {}x{}, advertised {l}x{d}",
            h.values.len(),
            h.layer_count,
            h.hidden_dim
        ));
    }
    if l == 0 || d == 0 {
        return Err("advertised an empty hidden state".into());
    }
    Ok(())
}

fn hidden_finite(backend: &dyn Backend) -> Result<(), String> {
    let mut req = probe_request();
    req.want_hidden_states = true;
    let resp = backend.generate(&req).map_err(|e| e.to_string())?;
    let h = resp.hidden.ok_or("no hidden states in the response")?;
    match h.values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(format!("value {i} is {}", h.values[i])),
        None => Ok(()),
    }
}

fn single_round_trip(backend: &dyn Backend) -> Result<(), String> {
    let mut req = probe_request();
    req.want_hidden_states = true;
    let resp = backend.generate(&req).map_err(|e| e.to_string())?;
    if resp.text.is_empty() || resp.hidden.is_none() {
        return Err("one request must return both text and hidden states".into());
    }
    Ok(())
}

fn determinism(backend: &dyn Backend) -> Result<(), String> {
    if !backend.meta().deterministic {
        return Ok(());
    }
    let mut req = probe_request();
    req.want_hidden_states = true;
    let a = backend.generate(&req).map_err(|e| e.to_string())?;
    let b = backend.generate(&req).map_err(|e| e.to_string())?;
    if a != b {
        return Err("identical temperature-0 requests gave different responses".into());
    }
    Ok(())
}

fn rejects_empty(backend: &dyn Backend) -> Result<(), String> {
    match backend.generate(&BackendRequest::new(vec![])) {
        Ok(_) => Err("accepted a request with no messages".into()),
        Err(_) => Ok(()),
    }
}

/// Runs every check; a backend conforms when all pass.
pub fn run(backend: &dyn Backend) -> Vec<Check> {
    vec![
        Check::new("prefill_prefix", prefill_prefix(backend)),
        Check::new("hidden_shape", hidden_shape(backend)),
        Check::new("hidden_finite", hidden_finite(backend)),
        Check::new("single_round_trip", single_round_trip(backend)),
        Check::new("deterministic_at_temperature_0", determinism(backend)),
        Check::new("rejects_empty_messages", rejects_empty(backend)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{
        BackendError, BackendResponse, HiddenFeatures, MockBackend, MockProfile, ModelMeta, Usage,
    };

    #[test]
    fn mock_conforms() {
        for name in MockProfile::NAMES {
            let mock = MockBackend::new(MockProfile::named(name).unwrap(), &[]);
            for c in run(&mock) {
                assert!(c.passed, "{name} {}: {}", c.name, c.detail);
            }
        }
    }

    /// Drops prefills and advertises a shape it does not send.
    struct Sloppy;

    impl Backend for Sloppy {
        fn generate(&self, _: &BackendRequest) -> Result<BackendResponse, BackendError> {
            Ok(BackendResponse {
                text: "\\boxed{42}".into(),
                hidden: Some(HiddenFeatures {
                    values: vec![0.0; 6],
                    layer_count: 2,
                    hidden_dim: 3,
                    task_id: None,
                }),
                usage: Usage::default(),
                model_meta: self.meta(),
            })
        }

        fn meta(&self) -> ModelMeta {
            ModelMeta {
                model: "sloppy".into(),
                layer_count: 2,
                hidden_dim: 4,
                deterministic: true,
            }
        }
    }

    #[test]
    fn violations_are_reported() {
        let checks = run(&Sloppy);
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(
            failed,
            ["prefill_prefix", "hidden_shape", "rejects_empty_messages"]
        );
    }
}

//! Model backends: generation with an optional assistant prefill, plus the
//! last-input-token hidden state of every layer.

pub mod conformance;
pub mod http;
pub mod mock;

use base64::Engine;
use serde::{Deserialize, Serialize};

pub use http::{serve, HttpBackend, ServerHandle};
pub use mock::{MockBackend, MockProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    System,
    User,
    Assistant,
    Tool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: Role,
    pub content: String,
}

impl Message {
    pub fn new(role: Role, content: impl Into<String>) -> Self {
        Message {
            role,
            content: content.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendRequest {
    pub messages: Vec<Message>,
    #[serde(default)]
    pub assistant_prefill: Option<String>,
    pub max_tokens: u32,
    #[serde(default)]
    pub temperature: f32,
    #[serde(default)]
    pub want_hidden_states: bool,
    /// Echoed into the hidden features so cached vectors stay attributable.
    #[serde(default)]
    pub task_id: Option<String>,
}

impl BackendRequest {
    pub fn new(messages: Vec<Message>) -> Self {
        BackendRequest {
            messages,
            assistant_prefill: None,
            max_tokens: 1024,
            temperature: 0.0,
            want_hidden_states: false,
            task_id: None,
        }
    }
}

/// Concatenated per-layer vectors, layer-major: `values[l * hidden_dim + i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HiddenFeatures {
    #[serde(rename = "values_b64", with = "f32_base64")]
    pub values: Vec<f32>,
    pub layer_count: usize,
    pub hidden_dim: usize,
    #[serde(default)]
    pub task_id: Option<String>,
}

impl HiddenFeatures {
    pub fn validate(&self) -> Result<(), BackendError> {
        if self.values.len() != self.layer_count * self.hidden_dim {
            return Err(BackendError::Protocol(format!(
                "hidden vector has {} values, expected {} x {}",
                self.values.len(),
                self.layer_count,
                self.hidden_dim
            )));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(BackendError::Protocol(
                "hidden vector contains non-finite values".into(),
            ));
        }
        Ok(())
    }

    pub fn layer(&self, l: usize) -> &[f32] {
        &self.values[l * self.hidden_dim..(l + 1) * self.hidden_dim]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Usage {
    pub prompt_tokens: u32,
    pub completion_tokens: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelMeta {
    pub model: String,
    pub layer_count: usize,
    pub hidden_dim: usize,
    /// Whether identical temperature-0 requests give identical responses.
    #[serde(default)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendResponse {
    /// Completion text, starting with the prefill when one was supplied.
    pub text: String,
    #[serde(default)]
    pub hidden: Option<HiddenFeatures>,
    #[serde(default)]
    pub usage: Usage,
    pub model_meta: ModelMeta,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum BackendError {
    #[error("transport error: {0}")]
    Transport(String),
    #[error("request timed out")]
    Timeout,
    #[error("protocol violation: {0}")]
    Protocol(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

impl BackendError {
    pub fn is_retriable(&self) -> bool {
        matches!(self, BackendError::Transport(_) | BackendError::Timeout)
    }
}

pub trait Backend: Send + Sync {
    fn generate(&self, request: &BackendRequest) -> Result<BackendResponse, BackendError>;
    fn meta(&self) -> ModelMeta;
}

impl<B: Backend + ?Sized> Backend for std::sync::Arc<B> {
    fn generate(&self, request: &BackendRequest) -> Result<BackendResponse, BackendError> {
        (**self).generate(request)
    }

    fn meta(&self) -> ModelMeta {
        (**self).meta()
    }
}

/// Rough whitespace token count used for usage accounting.
pub fn count_tokens(text: &str) -> u32 {
    text.split_whitespace().count() as u32
}

/// Little-endian f32 arrays as standard base64.
pub mod f32_base64 {
    use super::*;

    pub fn encode(values: &[f32]) -> String {
        let bytes: Vec<u8> = values.iter().flat_map(|v| v.to_le_bytes()).collect();
        base64::engine::general_purpose::STANDARD.encode(bytes)
    }

    pub fn decode(text: &str) -> Result<Vec<f32>, String> {
        let bytes = base64::engine::general_purpose::STANDARD
            .decode(text.trim())
            .map_err(|e| e.to_string())?;
        if bytes.len() % 4 != 0 {
            return Err(format!(
                "{} bytes is not a whole number of f32 values",
                bytes.len()
            ));
        }
        Ok(bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect())
    }

    pub fn serialize<S: serde::Serializer>(values: &[f32], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&encode(values))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<f32>, D::Error> {
        let text = String::deserialize(d)?;
        decode(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base64_is_little_endian_f32() {
        // 1.0f32 is 0x3F800000, stored little-endian as 00 00 80 3F.
        assert_eq!(f32_base64::encode(&[1.0]), "AACAPw==");
        assert_eq!(f32_base64::decode("AACAPw==").unwrap(), vec![1.0]);
        let xs = vec![0.0, -2.5, f32::MIN_POSITIVE, 123456.78];
        assert_eq!(f32_base64::decode(&f32_base64::encode(&xs)).unwrap(), xs);
        assert!(f32_base64::decode("AAA=").is_err());
    }

    #[test]
    fn hidden_features_round_trip_through_json() {
        let h = HiddenFeatures {
            values: vec![0.5, -1.0, 3.25, 7.0],
            layer_count: 2,
            hidden_dim: 2,
            task_id: None,
        };
        let json = serde_json::to_string(&h).unwrap();
        assert!(json.contains("values_b64"));
        assert_eq!(serde_json::from_str::<HiddenFeatures>(&json).unwrap(), h);
        assert_eq!(h.layer(1), &[3.25, 7.0]);
        let bad = HiddenFeatures {
            layer_count: 3,
            ..h
        };
        assert!(bad.validate().is_err());
    }
}

//! The `/v1/generate` wire protocol: a blocking client and a small server
//! that exposes any [`Backend`] (the sidecar speaks the same protocol).

use std::io::Read;
use std::net::SocketAddr;
use std::sync::{Arc, Condvar, Mutex};
use std::thread::JoinHandle;
use std::time::Duration;

use super::{Backend, BackendError, BackendRequest, BackendResponse, Message, ModelMeta, Role};

pub const GENERATE_PATH: &str = "/v1/generate";

#[derive(Debug, Clone)]
pub struct HttpConfig {
    pub base_url: String,
    pub timeout: Duration,
    /// Attempts per request for retriable failures, including the first.
    pub attempts: u32,
    pub backoff: Duration,
    pub max_in_flight: usize,
}

impl HttpConfig {
    pub fn new(base_url: impl Into<String>) -> Self {
        HttpConfig {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            timeout: Duration::from_secs(120),
            attempts: 3,
            backoff: Duration::from_millis(200),
            max_in_flight: 4,
        }
    }

    /// Reads `BACKEND_URL`.
    pub fn from_env() -> Option<Self> {
        std::env::var("BACKEND_URL")
            .ok()
            .filter(|u| !u.trim().is_empty())
            .map(Self::new)
    }
}

/// Counting semaphore for the client-side concurrency cap.
#[derive(Debug)]
struct Gate {
    free: Mutex<usize>,
    cv: Condvar,
}

impl Gate {
    fn acquire(&self) -> GateGuard<'_> {
        let mut free = self.free.lock().expect("gate lock");
        while *free == 0 {
            free = self.cv.wait(free).expect("gate lock");
        }
        *free -= 1;
        GateGuard(self)
    }
}

struct GateGuard<'a>(&'a Gate);

impl Drop for GateGuard<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().expect("gate lock") += 1;
        self.0.cv.notify_one();
    }
}

#[derive(Debug)]
pub struct HttpBackend {
    config: HttpConfig,
    agent: ureq::Agent,
    gate: Gate,
    meta: Mutex<Option<ModelMeta>>,
}

impl HttpBackend {
    pub fn new(config: HttpConfig) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(config.timeout).build();
        let gate = Gate {
            free: Mutex::new(config.max_in_flight.max(1)),
            cv: Condvar::new(),
        };
        HttpBackend {
            config,
            agent,
            gate,
            meta: Mutex::new(None),
        }
    }

    /// Sends a one-token probe so that [`Backend::meta`] is populated and an
    /// unreachable server is reported up front.
    pub fn connect(config: HttpConfig) -> Result<Self, BackendError> {
        let backend = Self::new(config);
        let mut probe = BackendRequest::new(vec![Message::new(Role::User, "ping")]);
        probe.max_tokens = 1;
        backend.generate(&probe)?;
        Ok(backend)
    }

    fn url(&self) -> String {
        format!("{}{}", self.config.base_url, GENERATE_PATH)
    }

    fn attempt(&self, request: &BackendRequest) -> Result<BackendResponse, BackendError> {
        let _slot = self.gate.acquire();
        let resp = match self.agent.post(&self.url()).send_json(request) {
            Ok(r) => r,
            Err(ureq::Error::Status(code, r)) => {
                let body = r.into_string().unwrap_or_default();
                return Err(match code {
                    408 | 429 | 502..=504 => {
                        BackendError::Transport(format!("HTTP {code}: {body}"))
                    }
                    400 | 422 => BackendError::InvalidRequest(body),
                    _ => BackendError::Protocol(format!("HTTP {code}: {body}")),
                });
            }
            Err(ureq::Error::Transport(t)) => {
                let msg = t.to_string();
                return Err(if msg.contains("timed out") {
                    BackendError::Timeout
                } else {
                    BackendError::Transport(msg)
                });
            }
        };
        let mut body = String::new();
        resp.into_reader()
            .read_to_string(&mut body)
            .map_err(|e| BackendError::Transport(e.to_string()))?;
        let parsed: BackendResponse = serde_json::from_str(&body)
            .map_err(|e| BackendError::Protocol(format!("bad response body: {e}")))?;
        check_response(request, &parsed)?;
        Ok(parsed)
    }
}

/// Contract checks every response must pass regardless of backend.
pub fn check_response(
    request: &BackendRequest,
    resp: &BackendResponse,
) -> Result<(), BackendError> {
    if let Some(p) = &request.assistant_prefill {
        if !resp.text.starts_with(p.as_str()) {
            return Err(BackendError::Protocol(
                "completion does not begin with the prefill".into(),
            ));
        }
    }
    match (&resp.hidden, request.want_hidden_states) {
        (Some(h), _) => {
            h.validate()?;
            if (h.layer_count, h.hidden_dim)
                != (resp.model_meta.layer_count, resp.model_meta.hidden_dim)
            {
                return Err(BackendError::Protocol(format!(
                    "hidden shape {}x{} differs from advertised {}x{}",
                    h.layer_count,
                    h.hidden_dim,
                    resp.model_meta.layer_count,
                    resp.model_meta.hidden_dim
                )));
            }
        }
        (None, true) => {
            return Err(BackendError::Protocol(
                "hidden states requested but not returned".into(),
            ))
        }
        (None, false) => {}
    }
    Ok(())
}

impl Backend for HttpBackend {
    fn generate(&self, request: &BackendRequest) -> Result<BackendResponse, BackendError> {
        if request.messages.is_empty() {
            return Err(BackendError::InvalidRequest("no messages".into()));
        }
        let mut tries = 0;
        loop {
            tries += 1;
            match self.attempt(request) {
                Ok(resp) => {
                    *self.meta.lock().expect("meta lock") = Some(resp.model_meta.clone());
                    return Ok(resp);
                }
                Err(e) if e.is_retriable() && tries < self.config.attempts => {
                    tracing::warn!(error = %e, attempt = tries, "retrying backend request");
                    std::thread::sleep(self.config.backoff * tries);
                }
                Err(e) => return Err(e),
            }
        }
    }

    fn meta(&self) -> ModelMeta {
        self.meta
            .lock()
            .expect("meta lock")
            .clone()
            .unwrap_or_else(|| ModelMeta {
                model: self.config.base_url.clone(),
                layer_count: 0,
                hidden_dim: 0,
                deterministic: false,
            })
    }
}

/// A running protocol server. Dropping the handle stops it.
pub struct ServerHandle {
    addr: SocketAddr,
    server: Arc<tiny_http::Server>,
    worker: Option<JoinHandle<()>>,
}

impl ServerHandle {
    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn url(&self) -> String {
        format!("http://{}", self.addr)
    }

    pub fn shutdown(mut self) {
        self.stop();
    }

    /// Blocks until the server stops.
    pub fn join(mut self) {
        if let Some(w) = self.worker.take() {
            let _ = w.join();
        }
    }

    fn stop(&mut self) {
        self.server.unblock();
        if let Some(w) = self.worker.take() {
            let _ = w.join();
        }
    }
}

impl Drop for ServerHandle {
    fn drop(&mut self) {
        self.stop();
    }
}

/// Serves `backend` on `addr` (port 0 picks a free port).
pub fn serve(backend: Arc<dyn Backend>, addr: &str) -> std::io::Result<ServerHandle> {
    let server = Arc::new(tiny_http::Server::http(addr).map_err(std::io::Error::other)?);
    let addr = server
        .server_addr()
        .to_ip()
        .ok_or_else(|| std::io::Error::other("server is not bound to an IP address"))?;
    let srv = Arc::clone(&server);
    let worker = std::thread::spawn(move || {
        for mut request in srv.incoming_requests() {
            let (code, body) = handle(&*backend, &mut request);
            let header = tiny_http::Header::from_bytes("Content-Type", "application/json")
                .expect("static header is valid");
            let response = tiny_http::Response::from_string(body)
                .with_status_code(code)
                .with_header(header);
            if let Err(e) = request.respond(response) {
                tracing::warn!(error = %e, "failed to write response");
            }
        }
    });
    Ok(ServerHandle {
        addr,
        server,
        worker: Some(worker),
    })
}

fn error_body(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

fn handle(backend: &dyn Backend, request: &mut tiny_http::Request) -> (u16, String) {
    if request.url() != GENERATE_PATH {
        return (404, error_body("not found"));
    }
    if *request.method() != tiny_http::Method::Post {
        return (405, error_body("use POST"));
    }
    let mut body = String::new();
    if let Err(e) = request.as_reader().read_to_string(&mut body) {
        return (400, error_body(&e.to_string()));
    }
    let parsed: BackendRequest = match serde_json::from_str(&body) {
        Ok(r) => r,
        Err(e) => return (400, error_body(&format!("malformed request: {e}"))),
    };
    match backend.generate(&parsed) {
        Ok(resp) => (
            200,
            serde_json::to_string(&resp).expect("responses serialize"),
        ),
        Err(BackendError::InvalidRequest(m)) => (400, error_body(&m)),
        Err(e @ (BackendError::Transport(_) | BackendError::Timeout)) => {
            (503, error_body(&e.to_string()))
        }
        Err(e) => (500, error_body(&e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{MockBackend, MockProfile};

    #[test]
    fn unreachable_server_is_a_retriable_error() {
        let mut cfg = HttpConfig::new("http://127.0.0.1:9");
        cfg.attempts = 2;
        cfg.backoff = Duration::from_millis(1);
        let err = HttpBackend::connect(cfg).unwrap_err();
        assert!(err.is_retriable(), "{err}");
    }

    #[test]
    fn malformed_requests_get_400() {
        let server = serve(
            Arc::new(MockBackend::new(MockProfile::default(), &[])),
            "127.0.0.1:0",
        )
        .unwrap();
        let err = ureq::post(&format!("{}{GENERATE_PATH}", server.url()))
            .send_string("{not json")
            .unwrap_err();
        assert!(matches!(err, ureq::Error::Status(400, _)));
        let empty = ureq::post(&format!("{}{GENERATE_PATH}", server.url()))
            .send_json(serde_json::json!({"messages": [], "max_tokens": 4}))
            .unwrap_err();
        assert!(matches!(empty, ureq::Error::Status(400, _)));
        server.shutdown();
    }

    #[test]
    fn round_trip_matches_in_process_backend() {
        let mock = Arc::new(MockBackend::new(MockProfile::default(), &[]));
        let server = serve(mock.clone(), "127.0.0.1:0").unwrap();
        let client = HttpBackend::connect(HttpConfig::new(server.url())).unwrap();
        let mut req = BackendRequest::new(vec![Message::new(Role::User, "What is 2 + 2?")]);
        req.want_hidden_states = true;
        req.assistant_prefill = Some("I can solve this directly without using a tool.".into());
        assert_eq!(client.generate(&req).unwrap(), mock.generate(&req).unwrap());
        assert_eq!(client.meta(), mock.meta());
    }
}

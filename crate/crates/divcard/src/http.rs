//! Minimal blocking HTTP layer with pluggable transports, so remote
//! collection and the LLM client can run against recorded cassettes.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub method: String,
    pub url: String,
    #[serde(skip)]
    pub headers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
}

impl Request {
    pub fn get(url: impl Into<String>) -> Self {
        Request { method: "GET".into(), url: url.into(), headers: Vec::new(), body: None }
    }

    pub fn post_json(url: impl Into<String>, body: String) -> Self {
        Request {
            method: "POST".into(),
            url: url.into(),
            headers: vec![("content-type".into(), "application/json".into())],
            body: Some(body),
        }
    }

    pub fn header(mut self, name: &str, value: impl Into<String>) -> Self {
        self.headers.push((name.to_ascii_lowercase(), value.into()));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub status: u16,
    /// Lower-case names.
    #[serde(default)]
    pub headers: BTreeMap<String, String>,
    #[serde(default)]
    pub body: String,
}

impl Response {
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers.get(&name.to_ascii_lowercase()).map(String::as_str)
    }
}

/// A failure to obtain any response at all.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct TransportError(pub String);

pub trait Transport: Send + Sync {
    fn send(&self, req: &Request) -> Result<Response, TransportError>;
}

/// Live network via `ureq`. Non-2xx statuses are returned, not raised.
pub struct UreqTransport {
    agent: ureq::Agent,
}

impl Default for UreqTransport {
    fn default() -> Self {
        let agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(Duration::from_secs(60)))
            .user_agent("divcard/0.1")
            .build()
            .into();
        UreqTransport { agent }
    }
}

impl Transport for UreqTransport {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        let fail = |e: ureq::Error| TransportError(format!("{} {}: {e}", req.method, req.url));
        let mut resp = match (req.method.as_str(), &req.body) {
            ("GET", _) => {
                let mut b = self.agent.get(&req.url);
                for (k, v) in &req.headers {
                    b = b.header(k, v);
                }
                b.call().map_err(fail)?
            }
            (_, body) => {
                let mut b = self.agent.post(&req.url);
                for (k, v) in &req.headers {
                    b = b.header(k, v);
                }
                b.send(body.as_deref().unwrap_or("")).map_err(fail)?
            }
        };
        let status = resp.status().as_u16();
        let headers = resp
            .headers()
            .iter()
            .filter_map(|(k, v)| Some((k.as_str().to_ascii_lowercase(), v.to_str().ok()?.to_string())))
            .collect();
        let bytes = resp.body_mut().read_to_vec().map_err(fail)?;
        Ok(Response { status, headers, body: String::from_utf8_lossy(&bytes).into_owned() })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interaction {
    pub request: Request,
    pub response: Response,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Cassette {
    pub interactions: Vec<Interaction>,
}

impl Cassette {
    pub fn load(path: &Path) -> Result<Self, TransportError> {
        let text = std::fs::read_to_string(path).map_err(|e| TransportError(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| TransportError(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        crate::json::to_pretty(self)
    }
}

/// Replays a cassette. Interactions are matched on method + URL (+ body
/// when recorded) and each is served once, in recorded order, so a retried
/// URL can see a 403 first and a 200 afterwards.
pub struct Replay {
    queues: Mutex<BTreeMap<(String, String), VecDeque<Interaction>>>,
}

impl Replay {
    pub fn new(cassette: Cassette) -> Self {
        let mut queues: BTreeMap<_, VecDeque<_>> = BTreeMap::new();
        for i in cassette.interactions {
            queues.entry((i.request.method.clone(), i.request.url.clone())).or_default().push_back(i);
        }
        Replay { queues: Mutex::new(queues) }
    }

    pub fn from_file(path: &Path) -> Result<Self, TransportError> {
        Ok(Replay::new(Cassette::load(path)?))
    }

    /// Interactions never requested.
    pub fn unused(&self) -> usize {
        self.queues.lock().unwrap().values().map(VecDeque::len).sum()
    }
}

impl Transport for Replay {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        let mut queues = self.queues.lock().unwrap();
        let key = (req.method.clone(), req.url.clone());
        let queue = queues.get_mut(&key).filter(|q| !q.is_empty());
        let Some(queue) = queue else {
            return Err(TransportError(format!("cassette has no interaction for {} {}", req.method, req.url)));
        };
        let pos = queue
            .iter()
            .position(|i| i.request.body.is_none() || i.request.body == req.body)
            .ok_or_else(|| TransportError(format!("cassette body mismatch for {} {}", req.method, req.url)))?;
        Ok(queue.remove(pos).expect("position is in range").response)
    }
}

/// Wraps a transport, logging every exchange and the peak number of
/// requests in flight at once.
pub struct Recorder<T> {
    inner: T,
    log: Mutex<Vec<Interaction>>,
    in_flight: AtomicUsize,
    peak: AtomicUsize,
}

impl<T: Transport> Recorder<T> {
    pub fn new(inner: T) -> Self {
        Recorder { inner, log: Mutex::new(Vec::new()), in_flight: AtomicUsize::new(0), peak: AtomicUsize::new(0) }
    }

    pub fn peak_in_flight(&self) -> usize {
        self.peak.load(Ordering::SeqCst)
    }

    pub fn requests(&self) -> Vec<Request> {
        self.log.lock().unwrap().iter().map(|i| i.request.clone()).collect()
    }

    pub fn cassette(&self) -> Cassette {
        Cassette { interactions: self.log.lock().unwrap().clone() }
    }
}

impl<T: Transport> Transport for Recorder<T> {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        let now = self.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
        self.peak.fetch_max(now, Ordering::SeqCst);
        let result = self.inner.send(req);
        self.in_flight.fetch_sub(1, Ordering::SeqCst);
        if let Ok(resp) = &result {
            let mut request = req.clone();
            request.headers.clear();
            self.log.lock().unwrap().push(Interaction { request, response: resp.clone() });
        }
        result
    }
}

impl<T: Transport + ?Sized> Transport for &T {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        (**self).send(req)
    }
}

impl<T: Transport + ?Sized> Transport for Box<T> {
    fn send(&self, req: &Request) -> Result<Response, TransportError> {
        (**self).send(req)
    }
}

pub trait Sleeper: Send + Sync {
    fn sleep(&self, d: Duration);
}

pub struct ThreadSleeper;

impl Sleeper for ThreadSleeper {
    fn sleep(&self, d: Duration) {
        std::thread::sleep(d);
    }
}

/// Records requested delays instead of sleeping.
#[derive(Default)]
pub struct FakeSleeper {
    pub slept: Mutex<Vec<Duration>>,
}

impl Sleeper for FakeSleeper {
    fn sleep(&self, d: Duration) {
        self.slept.lock().unwrap().push(d);
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Backoff {
    pub base: Duration,
    pub max_retries: u32,
    /// Upper bound on a single wait, including server-requested waits.
    pub cap: Duration,
}

impl Default for Backoff {
    fn default() -> Self {
        Backoff { base: Duration::from_secs(1), max_retries: 5, cap: Duration::from_secs(60) }
    }
}

impl Backoff {
    /// Delay before retry number `attempt` (0-based): base·2^attempt,
    /// raised to the server's `Retry-After` when that is longer.
    pub fn delay(&self, attempt: u32, retry_after: Option<Duration>) -> Duration {
        let exp = self.base.saturating_mul(1u32 << attempt.min(16));
        exp.max(retry_after.unwrap_or_default()).min(self.cap)
    }
}

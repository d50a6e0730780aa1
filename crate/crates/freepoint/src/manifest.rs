//! Run manifests. Every output is `{"manifest": .., "payload": ..}`; the
//! payload depends only on the parameters, never on threads or time.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: Value,
    pub fixture_hashes: BTreeMap<String, String>,
    pub seed: u64,
    pub threads: usize,
    pub wall_time_ms: u64,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(subcommand: &str, params: Value, seed: u64, threads: usize) -> Self {
        RunManifest {
            subcommand: subcommand.into(),
            params,
            fixture_hashes: BTreeMap::new(),
            seed,
            threads,
            wall_time_ms: 0,
            version: VERSION,
        }
    }
}

pub fn envelope(manifest: &RunManifest, payload: &Value) -> Value {
    json!({ "manifest": manifest, "payload": payload })
}

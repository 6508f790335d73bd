use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SeedInfo {
    pub master_seed: u64,
    pub streams: u64,
    pub generator: &'static str,
}

impl SeedInfo {
    pub fn new(master_seed: u64, streams: u64) -> Self {
        SeedInfo { master_seed, streams, generator: "chacha8: stream = stream id, trial t at word 2^32 t" }
    }
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, Serialize)]
pub struct OutputEnvelope {
    pub schema_version: u32,
    pub command: String,
    pub params: Value,
    pub values: Value,
    pub error_bounds: Value,
    pub seed: Option<SeedInfo>,
    /// Seconds.
    pub wall_time: f64,
}

/// `"p/q"` (or `"p"` for integers); never a float.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

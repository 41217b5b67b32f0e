//! JSON wire formats. Field order here is the output key order, so keep it
//! fixed: reports are diffed byte-for-byte by downstream tooling.

use serde::Serialize;

use gencyclo::numtheory::AssumptionReport;

/// One engine's linear-complexity report.
#[derive(Serialize)]
pub struct ReportJson {
    pub p: Option<u64>,
    pub r: Option<u32>,
    pub f: Option<u64>,
    pub b: Option<u64>,
    pub g: Option<u64>,
    #[serde(rename = "N")]
    pub n: u64,
    pub engine: &'static str,
    #[serde(rename = "L")]
    pub l: u64,
    pub delta: Option<u8>,
    pub deltas: Option<Vec<u8>>,
    pub weight: u64,
    pub assumptions: Option<AssumptionReport>,
}

/// Echo printed by `generate` alongside the sequence file.
#[derive(Serialize)]
pub struct GenerateEcho {
    pub p: u64,
    pub r: u32,
    pub f: u64,
    pub b: Option<u64>,
    pub g: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub weight: u64,
    pub out: String,
}

/// Output of `info`.
#[derive(Serialize)]
pub struct InfoJson {
    pub p: u64,
    pub r: u32,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    pub ord2: u64,
    pub period: u64,
    pub wieferich: bool,
    pub gcd_ok: bool,
    pub assumptions_ok: bool,
}

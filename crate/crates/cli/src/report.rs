//! The JSON run report and the typed payloads embedded in it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use weak_delta::structures::Evidence;
use weak_delta::{Point, ViolationCertificate};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub runtime_ms: u64,
    pub deterministic: bool,
    pub cache: bool,
}

impl RunReport {
    pub fn new(command: &str, inputs: BTreeMap<String, Value>, result: Value) -> Self {
        Self {
            command: command.into(),
            version: VERSION.into(),
            inputs,
            result,
            runtime_ms: 0,
            deterministic: true,
            cache: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificatePayload {
    pub kind: String,
    /// The three members in `.fam` row syntax, in scan order.
    pub triple: [String; 3],
    pub evidence: EvidencePayload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum EvidencePayload {
    CommonIntersection(u32),
    CommonDistance(u32),
    SunflowerCore(String),
    LineTrace(String),
}

impl<V: Point> From<&ViolationCertificate<V>> for CertificatePayload {
    fn from(c: &ViolationCertificate<V>) -> Self {
        let evidence = match &c.evidence {
            Evidence::CommonIntersection(s) => EvidencePayload::CommonIntersection(*s),
            Evidence::CommonDistance(d) => EvidencePayload::CommonDistance(*d),
            Evidence::SunflowerCore(core) => EvidencePayload::SunflowerCore(core.to_row()),
            Evidence::LineTrace(t) => EvidencePayload::LineTrace(t.clone()),
        };
        Self {
            kind: c.kind.name().into(),
            triple: [c.triple[0].to_row(), c.triple[1].to_row(), c.triple[2].to_row()],
            evidence,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckPayload {
    pub free: bool,
    pub size: usize,
    pub certificate: Option<CertificatePayload>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPayload {
    pub numer: u64,
    pub denom: u64,
    pub decimal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchPayload {
    pub ground: String,
    pub kind: String,
    pub n: usize,
    pub k: Option<usize>,
    pub ground_size: usize,
    pub extremal_size: usize,
    /// `optimal` or `timeout`; a timed-out size is only a lower bound.
    pub status: String,
    pub nodes_explored: u64,
    pub witness: Vec<String>,
    /// Equilateral-free density of the ground set, for that kind only.
    pub density: Option<DensityPayload>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundPayload {
    pub name: String,
    pub value: f64,
    pub formula: String,
    pub provenance: String,
    pub inputs: BTreeMap<String, f64>,
}

impl From<&weak_delta::bounds::BoundReport> for BoundPayload {
    fn from(b: &weak_delta::bounds::BoundReport) -> Self {
        Self {
            name: b.name.clone(),
            value: b.value,
            formula: b.formula.clone(),
            provenance: b.provenance.clone(),
            inputs: b.inputs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub n: u32,
    pub k: u32,
    pub slice_size: f64,
    pub slice_bound: f64,
    pub density_bound: f64,
    pub size_bound: f64,
    pub cube_size: f64,
    pub es_lower: Option<f64>,
    pub kr_lower: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsPayload {
    pub constants: Vec<BoundPayload>,
    pub chain: Vec<ChainRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyPayload {
    pub alphabet: String,
    pub n: usize,
    pub size: usize,
    pub rows: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlicePayload {
    pub sizes: Vec<usize>,
    pub best_weight: usize,
    /// `|A| / (n + 1)` as a reduced fraction.
    pub pigeonhole_bound: String,
    pub family: FamilyPayload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslatePayload {
    pub x: String,
    /// `|f_x(A) ∩ B|` when translating toward a second family.
    pub overlap: Option<usize>,
    /// `|A| |B| / 2^n`, the floor the overlap always meets.
    pub average: Option<f64>,
    pub family: FamilyPayload,
}

pub fn to_value<T: Serialize>(payload: &T) -> Value {
    serde_json::to_value(payload).expect("payloads serialize")
}

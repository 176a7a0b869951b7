//! Scenario files: a version tag, an optional seed and exactly one payload table.

use cmdef_core::numerology::PMode;
use cmdef_core::padic_weights::PassageFamily;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    version: u32,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    description: Option<String>,
    rootdatum: Option<RootDatumPayload>,
    local: Option<LocalPayload>,
    numerology: Option<NumerologyPayload>,
    selmer: Option<SelmerPayload>,
    weights: Option<WeightsPayload>,
    example: Option<ExamplePayload>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioFile {
    pub version: u32,
    pub seed: Option<u64>,
    pub description: Option<String>,
    pub payload: Payload,
    #[serde(skip)]
    pub payload_line: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Payload {
    RootDatum(RootDatumPayload),
    Local(LocalPayload),
    Numerology(NumerologyPayload),
    Selmer(SelmerPayload),
    Weights(WeightsPayload),
    Example(ExamplePayload),
}

impl Payload {
    pub fn key(&self) -> &'static str {
        match self {
            Payload::RootDatum(_) => "rootdatum",
            Payload::Local(_) => "local",
            Payload::Numerology(_) => "numerology",
            Payload::Selmer(_) => "selmer",
            Payload::Weights(_) => "weights",
            Payload::Example(_) => "example",
        }
    }

    /// Payloads whose computation draws random numbers.
    pub fn is_randomized(&self) -> bool {
        match self {
            Payload::Local(l) => matches!(l, LocalPayload::Random(_)),
            Payload::Selmer(_) => true,
            Payload::Weights(w) => matches!(w, WeightsPayload::Corpus(_) | WeightsPayload::Engine(_)),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileExpect {
    pub dim_g0: usize,
    pub dim_n: usize,
    pub dim_b0: usize,
    pub dim_t0: usize,
    pub coxeter_number: usize,
    pub center_order: u64,
    #[serde(default)]
    pub num_roots: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumEntry {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub central_rank: usize,
    #[serde(default)]
    pub expect: Option<ProfileExpect>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumPayload {
    pub data: Vec<DatumEntry>,
    #[serde(default)]
    pub certificates: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LocalPayload {
    Adjoint(AdjointSpec),
    Module(ModuleSpec),
    Random(RandomModules),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjointExpect {
    pub h0: Option<usize>,
    pub h1: Option<usize>,
    pub h2: Option<usize>,
    pub dim_l_unr: Option<usize>,
    pub dim_l_ram: Option<usize>,
    pub h0_twist: Option<usize>,
    pub ramakrishna_root: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjointSpec {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub central_rank: usize,
    pub p: u64,
    pub q: u64,
    /// Values of the simple roots on the Frobenius.
    pub torus: Vec<i64>,
    #[serde(default)]
    pub twist: i64,
    #[serde(default)]
    pub expect: Option<AdjointExpect>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsExpect {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub p: u64,
    pub q: u64,
    pub phi: Vec<Vec<i64>>,
    /// Identity when absent.
    #[serde(default)]
    pub tau: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub twist: i64,
    #[serde(default)]
    pub expect: Option<DimsExpect>,
}

fn default_primes() -> Vec<u64> {
    vec![5, 7, 11, 13]
}

fn default_max_dim() -> usize {
    8
}

fn default_q_max() -> u64 {
    60
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomModules {
    pub count: usize,
    #[serde(default = "default_max_dim")]
    pub max_dim: usize,
    #[serde(default = "default_primes")]
    pub primes: Vec<u64>,
    #[serde(default = "default_q_max")]
    pub q_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Rational,
    TotallyReal,
    SplitCm,
    ImaginaryQuadratic,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AwaySpec {
    pub label: String,
    pub dim_l: usize,
    pub h0: usize,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumerologyCase {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub central_rank: usize,
    pub field: FieldKind,
    #[serde(default)]
    pub degree: Option<u32>,
    pub mode: PMode,
    #[serde(default = "yes")]
    pub fixed_multiplier: bool,
    #[serde(default)]
    pub h0_at_p: Option<Vec<usize>>,
    #[serde(default)]
    pub real_h0: Option<Vec<usize>>,
    #[serde(default)]
    pub away: Vec<AwaySpec>,
    #[serde(default)]
    pub global_h0: usize,
    #[serde(default)]
    pub global_h0_twist: usize,
    #[serde(default)]
    pub expect_total: Option<i64>,
    #[serde(default)]
    pub expect_cm_parameter: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeBoundCase {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub central_rank: usize,
    #[serde(default)]
    pub expect: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalDimsCase {
    pub r: i64,
    pub p: u64,
    #[serde(default)]
    pub expect: Option<DimsExpect>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumerologyPayload {
    #[serde(default)]
    pub cases: Vec<NumerologyCase>,
    #[serde(default)]
    pub prime_bounds: Vec<PrimeBoundCase>,
    #[serde(default)]
    pub local_dims: Vec<LocalDimsCase>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelmerPayload {
    #[serde(default)]
    pub annihilation: usize,
    #[serde(default)]
    pub inflation: usize,
    #[serde(default)]
    pub avoidance: usize,
    #[serde(default = "selmer_primes")]
    pub primes: Vec<u64>,
}

fn selmer_primes() -> Vec<u64> {
    vec![5, 7, 11]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Parallel,
    Certificate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightsPayload {
    Dichotomy(DichotomySpec),
    Corpus(CorpusSpec),
    Engine(EngineSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DichotomySpec {
    #[serde(default)]
    pub expect: Option<Verdict>,
    pub family: PassageFamily,
}

fn default_types() -> Vec<String> {
    vec!["A1".into(), "A2".into(), "B2".into()]
}

fn default_precision() -> u32 {
    8
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    pub count: usize,
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default = "default_types")]
    pub types: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialCase {
    pub p: u64,
    /// Coefficients in increasing degree.
    pub coeffs: Vec<i64>,
    #[serde(default)]
    pub expect_degree: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineSpec {
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default)]
    pub log_pairs: usize,
    #[serde(default)]
    pub functional: usize,
    #[serde(default)]
    pub torsion_primes: Vec<u64>,
    #[serde(default)]
    pub weierstrass: Vec<PolynomialCase>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExamplePayload {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub central_rank: usize,
    pub p: u64,
    pub twists: Vec<i64>,
}

fn payload_line(text: &str, key: &str) -> usize {
    let header = format!("[{key}");
    text.lines()
        .position(|l| {
            let t = l.trim_start();
            t.starts_with(&header) || t.starts_with(&format!("[[{key}")) || t.starts_with(&format!("{key} ="))
        })
        .map_or(0, |i| i + 1)
}

/// Parses a scenario; schema violations carry the line and column from the TOML parser.
pub fn parse(text: &str) -> Result<ScenarioFile, CliError> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    if raw.version != SCENARIO_VERSION {
        let line = text.lines().position(|l| l.trim_start().starts_with("version")).map_or(0, |i| i + 1);
        return Err(CliError::Input(format!(
            "line {line}: unsupported scenario version {}, expected {SCENARIO_VERSION}",
            raw.version
        )));
    }
    let mut found = Vec::new();
    if let Some(p) = raw.rootdatum {
        found.push(Payload::RootDatum(p));
    }
    if let Some(p) = raw.local {
        found.push(Payload::Local(p));
    }
    if let Some(p) = raw.numerology {
        found.push(Payload::Numerology(p));
    }
    if let Some(p) = raw.selmer {
        found.push(Payload::Selmer(p));
    }
    if let Some(p) = raw.weights {
        found.push(Payload::Weights(p));
    }
    if let Some(p) = raw.example {
        found.push(Payload::Example(p));
    }
    if found.len() != 1 {
        let keys: Vec<String> = found
            .iter()
            .map(|p| format!("{} (line {})", p.key(), payload_line(text, p.key())))
            .collect();
        return Err(CliError::Input(format!(
            "expected exactly one payload table among rootdatum, local, numerology, selmer, weights, example; found {}",
            if keys.is_empty() { "none".to_string() } else { keys.join(", ") }
        )));
    }
    let payload = found.pop().expect("one payload");
    Ok(ScenarioFile {
        version: raw.version,
        seed: raw.seed,
        description: raw.description,
        payload_line: payload_line(text, payload.key()),
        payload,
    })
}

mod example;
mod local;
mod numerology;
mod rootdatum;
mod selmer;
mod weights;

use std::fmt::Debug;

use cmdef_core::RootDatum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::report::{Check, Report, Status, REPORT_FORMAT};
use crate::scenario::{Payload, ScenarioFile};
use crate::{CliError, RunOptions};

/// Results and checks accumulated by a payload runner.
#[derive(Default)]
pub(crate) struct Outcome {
    results: Map<String, Value>,
    checks: Vec<Check>,
}

impl Outcome {
    pub fn put(&mut self, key: impl Into<String>, v: impl Serialize) {
        self.results.insert(key.into(), json(v));
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: None,
        });
    }

    pub fn check_detail(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: Some(detail.into()),
        });
    }

    pub fn check_eq<T: PartialEq + Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let pass = got == want;
        let detail = (!pass).then(|| format!("got {got:?}, expected {want:?}"));
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
        });
    }

    /// A tally over a seeded suite: passes when no case failed.
    pub fn check_suite(&mut self, name: impl Into<String>, cases: usize, failures: &[String]) {
        let detail = if failures.is_empty() {
            format!("{cases} case{}", if cases == 1 { "" } else { "s" })
        } else {
            format!(
                "{} of {cases} cases failed; first: {}",
                failures.len(),
                failures[0]
            )
        };
        self.check_detail(name, failures.is_empty(), detail);
    }
}

pub(crate) fn json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// `"GLn"` or a list of Cartan types such as `"A1 x B2"`.
pub(crate) fn datum(ty: &str, central_rank: usize) -> cmdef_core::Result<RootDatum> {
    let t = ty.trim();
    if let Some(n) = t.strip_prefix("GL").and_then(|n| n.parse::<usize>().ok()) {
        let gl = RootDatum::gl(n)?;
        return if central_rank == 0 {
            Ok(gl)
        } else {
            RootDatum::new(gl.components(), 1 + central_rank)
        };
    }
    RootDatum::parse(t, central_rank)
}

pub(crate) fn seeded_rng(seed: Option<u64>) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed.expect("seed checked before dispatch"))
}

pub(crate) fn execute(name: &str, sc: &ScenarioFile, opts: &RunOptions) -> Result<Report, CliError> {
    let seed = opts.seed.or(sc.seed);
    if sc.payload.is_randomized() && seed.is_none() {
        return Err(CliError::Input(format!(
            "line {}: the {} payload is randomized and needs a seed (top-level `seed` or --seed)",
            sc.payload_line,
            sc.payload.key()
        )));
    }
    let mut out = Outcome::default();
    let mut precision = None;
    let result = match &sc.payload {
        Payload::RootDatum(p) => rootdatum::run(p, &mut out),
        Payload::Local(p) => local::run(p, seed, &mut out),
        Payload::Numerology(p) => numerology::run(p, &mut out),
        Payload::Selmer(p) => selmer::run(p, seed, &mut out),
        Payload::Weights(p) => weights::run(p, seed, opts.precision, &mut out).map(|n| precision = Some(n)),
        Payload::Example(p) => example::run(p, &mut out),
    };
    result.map_err(|e| {
        CliError::Input(format!(
            "line {}: [{}] payload rejected: {e}",
            sc.payload_line,
            sc.payload.key()
        ))
    })?;
    let status = if out.checks.iter().all(|c| c.pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(Report {
        format: REPORT_FORMAT,
        scenario: name.to_string(),
        seed: seed.map(|s| s.to_string()),
        precision,
        input: json(sc),
        results: Value::Object(out.results),
        checks: out.checks,
        status,
    })
}

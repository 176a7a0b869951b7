use cmdef_core::numerology::{example_conditions_check, example_local_dims};
use serde_json::json;

use super::{datum, Outcome};
use crate::scenario::ExamplePayload;

pub(crate) fn run(p: &ExamplePayload, out: &mut Outcome) -> cmdef_core::Result<()> {
    let rd = datum(&p.ty, p.central_rank)?;
    let label = rd.label();
    out.put("datum", &label);
    out.put("p", p.p);
    out.put("very_good", rd.is_very_good_prime(p.p));
    out.put("coxeter_number", rd.coxeter_number());
    let mut rows = Vec::with_capacity(p.twists.len());
    for &r in &p.twists {
        let report = example_conditions_check(&rd, r, p.p)?;
        out.check(format!("{label}, r = {r}: simple roots pair to 2 with 2rho^vee"), report.simple_root_pairings.iter().all(|&x| x == 2));
        let d = report.local_dims;
        out.check_eq(format!("{label}, r = {r}: F_p(r) local dimensions"), (d.h0, d.h1, d.h2), (0, 1, 0));
        out.check(format!("{label}, r = {r}: regular unipotent in the image"), report.nonsplit);
        rows.push(json!({ "r": r, "report": report, "all_pass": report.all_pass() }));
    }
    out.put("twists", rows);
    // the excluded twists, for comparison
    let excluded: Vec<_> = [0i64, 1]
        .iter()
        .map(|&r| example_local_dims(r, p.p).map(|d| json!({ "r": r, "dims": d })))
        .collect::<cmdef_core::Result<_>>()?;
    out.put("excluded_twists", excluded);
    Ok(())
}

use serde_json::json;

use super::{datum, Outcome};
use crate::scenario::RootDatumPayload;

pub(crate) fn run(p: &RootDatumPayload, out: &mut Outcome) -> cmdef_core::Result<()> {
    let mut entries = Vec::with_capacity(p.data.len());
    for entry in &p.data {
        let rd = datum(&entry.ty, entry.central_rank)?;
        let label = rd.label();
        let prof = rd.dimension_profile();
        let mut e = json!({
            "type": entry.ty,
            "label": label,
            "profile": prof,
            "num_roots": rd.num_roots(),
            "semisimple_rank": rd.semisimple_rank(),
            "two_rho_vee": rd.two_rho_vee(),
        });
        if let Some(x) = &entry.expect {
            let got = (prof.dim_g0, prof.dim_n, prof.dim_b0, prof.dim_t0, prof.coxeter_number, prof.center_order);
            let want = (x.dim_g0, x.dim_n, x.dim_b0, x.dim_t0, x.coxeter_number, x.center_order);
            out.check_eq(format!("{label}: dimension profile"), got, want);
            if let Some(n) = x.num_roots {
                out.check_eq(format!("{label}: root count"), rd.num_roots(), n);
            }
            out.check_eq(format!("{label}: dim g0 = 2 dim n + dim t0"), prof.dim_g0, 2 * prof.dim_n + prof.dim_t0);
        }
        if p.certificates {
            let n = rd.semisimple_rank();
            let mut unique = Vec::with_capacity(n);
            let mut control = Vec::with_capacity(n);
            for alpha in 0..n {
                unique.push(rd.unique_root_certificate(alpha)?);
                control.push(rd.two_rho_control(alpha)?);
            }
            out.check(
                format!("{label}: 4rho^vee - alpha^vee singles out every simple root"),
                unique.iter().all(|c| c.unique),
            );
            if rd.components().len() == 1 {
                let expect_unique = n == 1;
                out.check(
                    format!(
                        "{label}: 2rho^vee control {} every simple root",
                        if expect_unique { "singles out" } else { "fails to single out" }
                    ),
                    control.iter().all(|c| c.unique == expect_unique),
                );
            }
            e["unique_root_certificates"] = json!(unique);
            e["two_rho_control"] = json!(control);
        }
        entries.push(e);
    }
    out.put("data", entries);
    Ok(())
}

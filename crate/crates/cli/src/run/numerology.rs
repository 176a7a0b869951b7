use cmdef_core::numerology::{
    archimedean_bound, cm_parameter, example_local_dims, large_image_prime_bound, wiles_difference, AwayPlace,
    FieldSignature, PMode, Scenario,
};
use cmdef_core::Error;
use serde_json::json;

use super::{datum, Outcome};
use crate::scenario::{FieldKind, NumerologyCase, NumerologyPayload};

fn signature(c: &NumerologyCase) -> cmdef_core::Result<FieldSignature> {
    let need_degree = || c.degree.ok_or_else(|| Error::Signature(format!("{:?} fields need a degree", c.field)));
    match c.field {
        FieldKind::Rational => Ok(FieldSignature::rational()),
        FieldKind::ImaginaryQuadratic => Ok(FieldSignature::imaginary_quadratic()),
        FieldKind::TotallyReal => Ok(FieldSignature::totally_real(need_degree()?)),
        FieldKind::SplitCm => FieldSignature::split_cm(need_degree()?),
    }
}

/// The specializations with default local data: odd real places, no `h^0` anywhere, no extra places.
fn closed_form(s: &Scenario, c: &NumerologyCase) -> Option<i64> {
    let plain = c.h0_at_p.is_none()
        && c.real_h0.is_none()
        && c.away.is_empty()
        && c.global_h0 == 0
        && c.global_h0_twist == 0;
    if !plain {
        return None;
    }
    let half = s.signature.degree as i64 / 2 * s.dims().t as i64;
    match (s.signature.is_totally_real(), s.signature.cm, s.mode) {
        (true, _, PMode::Ordinary) => Some(0),
        (_, true, PMode::Ordinary) => Some(-half),
        (_, true, PMode::NearlyOrdinary) => Some(half),
        _ => None,
    }
}

pub(crate) fn run(p: &NumerologyPayload, out: &mut Outcome) -> cmdef_core::Result<()> {
    let mut cases = Vec::with_capacity(p.cases.len());
    for (i, c) in p.cases.iter().enumerate() {
        let rd = datum(&c.ty, c.central_rank)?;
        let label = c.label.clone().unwrap_or_else(|| format!("case {i}"));
        let sig = signature(c)?;
        let mut s = Scenario::new(rd.clone(), sig.clone(), c.mode)?;
        s.fixed_multiplier = c.fixed_multiplier;
        if let Some(h) = &c.h0_at_p {
            s.h0_at_p = h.clone();
        }
        if let Some(h) = &c.real_h0 {
            s.real_h0 = h.clone();
        }
        s.away = c
            .away
            .iter()
            .map(|a| AwayPlace {
                label: a.label.clone(),
                dim_l: a.dim_l,
                h0: a.h0,
            })
            .collect();
        s.global_h0 = c.global_h0;
        s.global_h0_twist = c.global_h0_twist;
        let report = wiles_difference(&s)?;
        let mut e = json!({
            "label": label,
            "datum": rd.label(),
            "signature": sig,
            "mode": c.mode,
            "fixed_multiplier": c.fixed_multiplier,
            "dims": s.dims(),
            "wiles": report,
        });
        if sig.real_places > 0 {
            let arch = archimedean_bound(&rd, &sig, &s.real_h0)?;
            out.check(format!("{label}: archimedean bound"), arch.holds);
            e["archimedean"] = json!(arch);
        }
        if let Some(cf) = closed_form(&s, c) {
            e["closed_form"] = json!(cf);
            out.check_eq(format!("{label}: Wiles difference matches its closed form"), report.total, cf);
        }
        if let Some(want) = c.expect_total {
            out.check_eq(format!("{label}: expected Wiles difference"), report.total, want);
        }
        if sig.cm {
            let r = cm_parameter(&sig, &rd)?;
            e["cm_parameter"] = json!(r);
            if let Some(want) = c.expect_cm_parameter {
                out.check_eq(format!("{label}: expected CM parameter"), r, want);
            }
        } else if c.expect_cm_parameter.is_some() {
            return Err(Error::NotCm);
        }
        cases.push(e);
    }
    out.put("cases", cases);

    let mut bounds = Vec::with_capacity(p.prime_bounds.len());
    for b in &p.prime_bounds {
        let rd = datum(&b.ty, b.central_rank)?;
        let bound = large_image_prime_bound(&rd)?;
        if let Some(want) = b.expect {
            out.check_eq(format!("{}: large-image prime bound", rd.label()), bound.prime, want);
        }
        bounds.push(json!({ "datum": rd.label(), "bound": bound }));
    }
    out.put("prime_bounds", bounds);

    let mut dims = Vec::with_capacity(p.local_dims.len());
    for c in &p.local_dims {
        let d = example_local_dims(c.r, c.p)?;
        if let Some(x) = &c.expect {
            out.check_eq(
                format!("F_{}({}) local dimensions", c.p, c.r),
                (d.h0, d.h1, d.h2),
                (x.h0, x.h1, x.h2),
            );
        }
        dims.push(json!({ "r": c.r, "p": c.p, "dims": d }));
    }
    out.put("local_dims", dims);
    Ok(())
}

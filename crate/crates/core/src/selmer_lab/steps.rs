use serde::Serialize;

use super::system::{ConditionAssignment, NewPrime, SelmerDims, SelmerSystem};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{is_zero_vec, EchelonBuilder, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub before: SelmerDims,
    pub after: SelmerDims,
    /// Dual Selmer dimension of the enlarged system with `(L^unr cap L^Ram)^perp` at the new place.
    pub dual_with_balanced_perp: usize,
    pub strictly_decreased: bool,
    pub isomorphism_holds: bool,
    pub difference_preserved: bool,
}

impl AnnihilationReport {
    pub fn all_pass(&self) -> bool {
        self.strictly_decreased && self.isomorphism_holds && self.difference_preserved
    }
}

#[derive(Debug, Clone)]
pub struct AnnihilationOutcome {
    pub system: SelmerSystem,
    pub conditions: ConditionAssignment,
    pub report: AnnihilationReport,
}

fn ramakrishna_data(prime: &NewPrime) -> Result<(&Subspace, &Subspace)> {
    let l = &prime.local;
    match (&l.unramified, &l.ramakrishna) {
        (Some(u), Some(r)) => Ok((u, r)),
        _ => Err(Error::Hypothesis(format!(
            "{} is not a prime of Ramakrishna type",
            l.label
        ))),
    }
}

/// Adds a Ramakrishna prime `w` with condition `L^Ram_w` to kill the dual class `phi`.
///
/// Requires `phi|_w` outside `L^{Ram, perp}_w` and `psi|_w` outside `L^unr_w cap L^Ram_w`;
/// `phi` and `psi` are coordinates on the bases of `H'` and `H`.
pub fn annihilation_step(
    sys: &SelmerSystem,
    cond: &ConditionAssignment,
    prime: &NewPrime,
    phi: &[Elem],
    psi: &[Elem],
) -> Result<AnnihilationOutcome> {
    let f = &sys.field;
    let (unr, ram) = ramakrishna_data(prime)?;
    let sel = sys.selmer(cond)?;
    let dual_sel = sys.dual_selmer(cond)?;
    if phi.len() != sys.dim_h_dual() || is_zero_vec(phi) || !dual_sel.contains(phi, f) {
        return Err(Error::Hypothesis(
            "phi is not a nonzero dual Selmer class".into(),
        ));
    }
    if psi.len() != sys.dim_h() || is_zero_vec(psi) || !sel.contains(psi, f) {
        return Err(Error::Hypothesis(
            "psi is not a nonzero Selmer class".into(),
        ));
    }
    let ram_perp = prime.local.perp(ram, f)?;
    let phi_w = prime.dual_restriction.transpose().apply(phi, f)?;
    if ram_perp.contains(&phi_w, f) {
        return Err(Error::Hypothesis("phi restricts into L^{Ram, perp}".into()));
    }
    let balanced = unr.intersect(ram, f)?;
    let psi_w = prime.restriction.transpose().apply(psi, f)?;
    if balanced.contains(&psi_w, f) {
        return Err(Error::Hypothesis(
            "psi restricts into L^unr cap L^Ram".into(),
        ));
    }

    let before = SelmerDims {
        selmer: sel.dim(),
        dual_selmer: dual_sel.dim(),
    };
    let system = sys.enlarge(std::slice::from_ref(prime))?;
    let conditions = cond.extended(ram.clone());
    let after = system.dims(&conditions)?;
    let dual_with_balanced_perp = system.dual_selmer(&cond.extended(balanced))?.dim();
    let report = AnnihilationReport {
        before,
        after,
        dual_with_balanced_perp,
        strictly_decreased: after.dual_selmer < before.dual_selmer,
        isomorphism_holds: dual_with_balanced_perp == before.dual_selmer,
        difference_preserved: after.difference() == before.difference(),
    };
    Ok(AnnihilationOutcome {
        system,
        conditions,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InflationReport {
    /// `dim H_{y_i} / H_Sigma` measured inside the combined system.
    pub contributions: Vec<usize>,
    /// The same quotients measured in the single enlargements.
    pub single_contributions: Vec<usize>,
    pub total: usize,
    pub direct: bool,
    pub spans: bool,
}

impl InflationReport {
    pub fn holds(&self) -> bool {
        self.direct && self.spans && self.contributions == self.single_contributions
    }
}

fn check_prefix(base: &SelmerSystem, other: &SelmerSystem, name: &str) -> Result<()> {
    let n = base.locals.len();
    if other.locals.len() < n || other.locals[..n] != base.locals[..] {
        return Err(Error::NotNested(format!(
            "{name} does not extend the base places"
        )));
    }
    if other.dim_h() < base.dim_h()
        || other.global.submatrix(0..base.dim_h(), 0..base.total_dim()) != base.global
    {
        return Err(Error::NotNested(format!(
            "{name} does not extend the base classes"
        )));
    }
    Ok(())
}

/// Checks `sum_i H_{y_i} / H_Sigma = H_all / H_Sigma` as a direct sum, with each
/// `H_{y_i}` realised inside the combined system as the classes unramified away from `y_i`.
pub fn inflation_decomposition_check(
    base: &SelmerSystem,
    singles: &[SelmerSystem],
    combined: &SelmerSystem,
) -> Result<InflationReport> {
    let f = &base.field;
    check_prefix(base, combined, "combined system")?;
    let n = base.locals.len();
    if combined.locals.len() != n + singles.len() {
        return Err(Error::NotNested("combined system has extra places".into()));
    }
    let mut new_places = Vec::with_capacity(singles.len());
    for (i, s) in singles.iter().enumerate() {
        check_prefix(base, s, &format!("enlargement {i}"))?;
        if s.locals.len() != n + 1 {
            return Err(Error::NotNested(format!(
                "enlargement {i} adds more than one place"
            )));
        }
        let idx = combined
            .place_index(&s.locals[n].label)
            .filter(|&j| j >= n && combined.locals[j] == s.locals[n])
            .ok_or_else(|| {
                Error::NotNested(format!(
                    "place of enlargement {i} missing from the combined system"
                ))
            })?;
        if new_places.contains(&idx) {
            return Err(Error::NotNested(
                "two enlargements add the same place".into(),
            ));
        }
        new_places.push(idx);
    }
    let base_rank = base.global.rank(f);
    let h_sigma = combined.unramified_at(&new_places)?;
    let image = |s: &Subspace| -> Result<Subspace> {
        let m = if s.dim() == 0 {
            Matrix::zeros(0, combined.total_dim())
        } else {
            s.basis().mul(&combined.global, f)?
        };
        Ok(Subspace::span(&m, f))
    };
    let sigma_img = image(&h_sigma)?;
    let mut sum = sigma_img.clone();
    let mut contributions = Vec::new();
    let mut single_contributions = Vec::new();
    for (i, &y) in new_places.iter().enumerate() {
        let others: Vec<usize> = new_places.iter().copied().filter(|&j| j != y).collect();
        let h_i = image(&combined.unramified_at(&others)?)?;
        contributions.push(h_i.dim() - sigma_img.dim());
        single_contributions.push(singles[i].global.rank(f) - base_rank);
        sum = sum.sum(&h_i, f)?;
    }
    let total = combined.global.rank(f) - sigma_img.dim();
    let sum_dim = sum.dim() - sigma_img.dim();
    Ok(InflationReport {
        direct: sum_dim == contributions.iter().sum::<usize>(),
        spans: sum_dim == total,
        contributions,
        single_contributions,
        total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AvoidanceReport {
    pub selmer_before: usize,
    pub selmer_after: usize,
    pub ker_phi_dim: usize,
    pub psi_prime: Vec<Elem>,
    pub psi_tilde: Vec<Elem>,
    pub beta_psi_tilde: Vec<Elem>,
    pub avoids: bool,
}

impl AvoidanceReport {
    pub fn all_pass(&self) -> bool {
        self.avoids
            && self.selmer_after == self.selmer_before
            && self.ker_phi_dim == self.selmer_before + 1
    }
}

#[derive(Debug, Clone)]
pub struct AvoidanceOutcome {
    pub system: SelmerSystem,
    pub conditions: ConditionAssignment,
    pub report: AvoidanceReport,
}

fn row_times(x: &[Elem], m: &Matrix, sys: &SelmerSystem) -> Result<Vec<Elem>> {
    m.transpose().apply(x, &sys.field)
}

/// Adds a Ramakrishna prime `y` so that some Selmer class has weight image outside `U`.
///
/// `beta` is the weight map on the enlarged `H`, whose basis is the old basis
/// followed by the new classes of `prime`; it is a `dim H_new x D` matrix acting on row vectors.
pub fn avoidance_step(
    sys: &SelmerSystem,
    cond: &ConditionAssignment,
    prime: &NewPrime,
    beta: &Matrix,
    u: &Subspace,
) -> Result<AvoidanceOutcome> {
    let f = &sys.field;
    let (_, ram) = ramakrishna_data(prime)?;
    if sys.dual_selmer(cond)?.dim() != 0 {
        return Err(Error::Hypothesis("dual Selmer group is nonzero".into()));
    }
    let system = sys.enlarge(std::slice::from_ref(prime))?;
    let grown = system.global.rank(f) - sys.global.rank(f);
    if grown != 1 {
        return Err(Error::Hypothesis(format!(
            "enlargement adds {grown} dimensions, expected 1"
        )));
    }
    let d = u.ambient();
    if beta.nrows() != system.dim_h() || beta.ncols() != d {
        return Err(Error::Dimension(format!(
            "beta is {}x{}, expected {}x{d}",
            beta.nrows(),
            beta.ncols(),
            system.dim_h()
        )));
    }
    if beta.rank(f) != d {
        return Err(Error::Hypothesis("beta is not surjective".into()));
    }
    let old_sel = sys.selmer(cond)?;
    let inflated: Vec<Vec<Elem>> = old_sel
        .basis()
        .rows_iter()
        .map(|r| sys.inflate(r, &system))
        .collect();
    for x in &inflated {
        if !u.contains(&row_times(x, beta, &system)?, f) {
            return Err(Error::Hypothesis(
                "beta of the Selmer group already leaves U".into(),
            ));
        }
    }

    let mut open = cond.extended(Subspace::full(prime.local.dim()));
    let ker_phi = system.selmer(&open)?;
    let mut builder = EchelonBuilder::new(system.dim_h());
    for x in &inflated {
        builder.insert(x.clone(), f);
    }
    let psi_prime = ker_phi
        .basis()
        .rows_iter()
        .find(|r| builder.insert(r.to_vec(), f))
        .map(<[Elem]>::to_vec)
        .ok_or_else(|| Error::Hypothesis("ker Phi adds nothing to the Selmer group".into()))?;
    if u.contains(&row_times(&psi_prime, beta, &system)?, f) {
        return Err(Error::Hypothesis("beta(ker Phi) lies in U".into()));
    }

    open.conditions.pop();
    let conditions = open.extended(ram.clone());
    let new_sel = system.selmer(&conditions)?;
    let mut span = Matrix::from_rows_with_cols(&inflated, system.dim_h())?;
    span.push_row(&psi_prime)?;
    let span_t = span.transpose();
    let mut psi_tilde = None;
    for s in new_sel.basis().rows_iter() {
        let c = span_t
            .solve(s, f)?
            .ok_or_else(|| Error::Hypothesis("new Selmer class outside ker Phi".into()))?;
        if *c.last().unwrap() != 0 {
            psi_tilde = Some(s.to_vec());
            break;
        }
    }
    let psi_tilde =
        psi_tilde.ok_or_else(|| Error::Hypothesis("new Selmer group equals the old one".into()))?;
    let beta_psi_tilde = row_times(&psi_tilde, beta, &system)?;
    let report = AvoidanceReport {
        selmer_before: old_sel.dim(),
        selmer_after: new_sel.dim(),
        ker_phi_dim: ker_phi.dim(),
        avoids: !u.contains(&beta_psi_tilde, f),
        psi_prime,
        psi_tilde,
        beta_psi_tilde,
    };
    Ok(AvoidanceOutcome {
        system,
        conditions,
        report,
    })
}

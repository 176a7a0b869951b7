//! Random exact Selmer systems and explicit supplies of auxiliary primes.

use rand::Rng;

use super::system::{ConditionAssignment, LocalSpace, NewPrime, SelmerSystem};
use crate::error::{Error, Result};
use crate::field::{Elem, Fq};
use crate::linalg::{combine, Matrix, Subspace};
use crate::local_tame::{random_invertible, AdjointModule};
use crate::root_datum::{RootDatum, TorusElement};

pub fn random_vector<R: Rng>(rng: &mut R, f: &Fq, n: usize) -> Vec<Elem> {
    (0..n).map(|_| rng.gen_range(0..f.order())).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, f: &Fq, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen_range(0..f.order()));
        }
    }
    m
}

/// A uniformly chosen subspace of dimension exactly `d`.
pub fn random_subspace<R: Rng>(rng: &mut R, f: &Fq, n: usize, d: usize) -> Subspace {
    assert!(d <= n);
    loop {
        let s = Subspace::span(&random_matrix(rng, f, d, n), f);
        if s.dim() == d {
            return s;
        }
    }
}

/// Random vectors of `within` appended to `start` until it reaches dimension `d`.
pub fn grow_subspace<R: Rng>(
    rng: &mut R,
    f: &Fq,
    start: &Subspace,
    within: &Subspace,
    d: usize,
) -> Result<Subspace> {
    if d > within.dim() || start.dim() > d {
        return Err(Error::Dimension(
            "cannot grow to the requested dimension".into(),
        ));
    }
    let mut cur = start.clone();
    while cur.dim() < d {
        let c = random_vector(rng, f, within.dim());
        let v = combine(&c, within.basis(), f);
        cur = cur.sum(&Subspace::span_vectors(within.ambient(), &[v], f)?, f)?;
    }
    Ok(cur)
}

/// Places with random perfect pairings of the given dimensions.
pub fn bare_places<R: Rng>(rng: &mut R, f: &Fq, dims: &[usize]) -> Vec<LocalSpace> {
    dims.iter()
        .enumerate()
        .map(|(i, &d)| LocalSpace::bare(format!("v{i}"), random_invertible(rng, d, f)))
        .collect()
}

/// The exact system whose image of `H` is `image` and whose `H'` is its annihilator.
pub fn exact_from_image(f: &Fq, locals: Vec<LocalSpace>, image: &Subspace) -> Result<SelmerSystem> {
    let gram = locals
        .iter()
        .fold(Matrix::zeros(0, 0), |acc, l| acc.direct_sum(&l.gram));
    let dual = image.annihilator(&gram, f)?;
    SelmerSystem::new(f, locals, image.basis().clone(), dual.basis().clone())
}

/// Embeds per-place subspaces block-diagonally into the sum of the local spaces.
pub fn block_subspace(f: &Fq, parts: &[Subspace]) -> Subspace {
    let total: usize = parts.iter().map(Subspace::ambient).sum();
    let mut rows = Matrix::zeros(0, total);
    let mut off = 0;
    for s in parts {
        for r in s.basis().rows_iter() {
            let mut v = vec![0; total];
            v[off..off + r.len()].copy_from_slice(r);
            rows.push_row(&v).expect("width matches");
        }
        off += s.ambient();
    }
    Subspace::span(&rows, f)
}

pub fn random_assignment<R: Rng>(rng: &mut R, sys: &SelmerSystem) -> ConditionAssignment {
    let conditions = sys
        .locals
        .iter()
        .map(|l| {
            let d = rng.gen_range(0..=l.dim());
            random_subspace(rng, &sys.field, l.dim(), d)
        })
        .collect();
    ConditionAssignment { conditions }
}

/// A random exact system with random local conditions.
pub fn random_exact_system<R: Rng>(
    rng: &mut R,
    f: &Fq,
    places: usize,
    max_local_dim: usize,
) -> Result<(SelmerSystem, ConditionAssignment)> {
    let dims: Vec<usize> = (0..places)
        .map(|_| rng.gen_range(1..=max_local_dim))
        .collect();
    let locals = bare_places(rng, f, &dims);
    let n: usize = dims.iter().sum();
    let d = rng.gen_range(0..=n);
    let image = random_subspace(rng, f, n, d);
    let sys = exact_from_image(f, locals, &image)?;
    let cond = random_assignment(rng, &sys);
    Ok((sys, cond))
}

/// An exact system whose dual Selmer group has dimension at least `deficiency`
/// and whose Selmer group exceeds it by at least `surplus`.
pub fn deficient_system<R: Rng>(
    rng: &mut R,
    f: &Fq,
    places: usize,
    max_local_dim: usize,
    deficiency: usize,
    surplus: usize,
) -> Result<(SelmerSystem, ConditionAssignment)> {
    for _ in 0..1000 {
        let dims: Vec<usize> = (0..places)
            .map(|_| rng.gen_range(2..=max_local_dim))
            .collect();
        let n: usize = dims.iter().sum();
        let parts: Vec<Subspace> = dims
            .iter()
            .map(|&d| {
                let k = rng.gen_range(1..d);
                random_subspace(rng, f, d, k)
            })
            .collect();
        let l = block_subspace(f, &parts);
        if l.dim() + deficiency > n {
            continue;
        }
        let wide = grow_subspace(rng, f, &l, &Subspace::full(n), n - deficiency)?;
        // dim Sel - dim Sel' = dim I + dim L - n
        let want = n + surplus - l.dim();
        if want > wide.dim() {
            continue;
        }
        let start = Subspace::zero(n);
        let image = grow_subspace(rng, f, &start, &wide, want)?;
        let locals = bare_places(rng, f, &dims);
        let sys = exact_from_image(f, locals, &image)?;
        let cond = ConditionAssignment::new(&sys, parts)?;
        let d = sys.dims(&cond)?;
        if d.dual_selmer >= deficiency && d.difference() >= surplus as i64 {
            return Ok((sys, cond));
        }
    }
    Err(Error::Hypothesis(
        "could not build a deficient system".into(),
    ))
}

/// A trivial prime of Ramakrishna type for `rd` over `f`: the first regular
/// `t` in lexicographic order with a unique Ramakrishna root, at residue degree `q`.
pub fn ramakrishna_local(
    label: impl Into<String>,
    rd: &RootDatum,
    f: &Fq,
    q: u64,
) -> Result<LocalSpace> {
    let r = rd.semisimple_rank();
    let units: Vec<Elem> = f.units().collect();
    let total = units.len().pow(r as u32);
    for code in 0..total {
        let mut c = code;
        let vals: Vec<Elem> = (0..r)
            .map(|_| {
                let v = units[c % units.len()];
                c /= units.len();
                v
            })
            .collect();
        let t = TorusElement::new(f, vals)?;
        if !t.is_regular_semisimple(rd)? {
            continue;
        }
        let a = AdjointModule::new(rd, &t, q, 0)?;
        if let Some(alpha) = a.is_ramakrishna_type()? {
            return LocalSpace::from_adjoint(label, &a, alpha);
        }
    }
    Err(Error::Hypothesis(
        "no torus element of Ramakrishna type".into(),
    ))
}

/// Samples unramified restriction data for `local` until `accept` holds.
///
/// The new classes are the RREF complement of `L^unr` in `V`.
pub fn supply_prime<R: Rng>(
    rng: &mut R,
    sys: &SelmerSystem,
    local: &LocalSpace,
    attempts: usize,
    mut accept: impl FnMut(&NewPrime) -> bool,
) -> Result<NewPrime> {
    let f = &sys.field;
    let unr = local
        .unramified
        .as_ref()
        .ok_or_else(|| Error::Hypothesis(format!("{} has no unramified subspace", local.label)))?;
    let dual_unr = local.dual_unramified.as_ref().ok_or_else(|| {
        Error::Hypothesis(format!("{} has no dual unramified subspace", local.label))
    })?;
    let new_classes = unr.complement_in(&Subspace::full(local.dim()), f).to_rows();
    for _ in 0..attempts {
        let restriction = random_matrix(rng, f, sys.dim_h(), unr.dim());
        let restriction = if unr.dim() == 0 {
            Matrix::zeros(sys.dim_h(), local.dim())
        } else {
            restriction.mul(unr.basis(), f)?
        };
        let dual_restriction = if dual_unr.dim() == 0 {
            Matrix::zeros(sys.dim_h_dual(), local.dual_dim())
        } else {
            random_matrix(rng, f, sys.dim_h_dual(), dual_unr.dim()).mul(dual_unr.basis(), f)?
        };
        let prime = NewPrime {
            local: local.clone(),
            restriction,
            dual_restriction,
            new_classes: new_classes.clone(),
        };
        if accept(&prime) {
            return Ok(prime);
        }
    }
    Err(Error::Hypothesis(format!(
        "no acceptable prime after {attempts} attempts"
    )))
}

/// The single enlargements by each prime and the combined enlargement by all of them.
pub fn nested_family(
    base: &SelmerSystem,
    primes: &[NewPrime],
) -> Result<(Vec<SelmerSystem>, SelmerSystem)> {
    let singles = primes
        .iter()
        .map(|p| base.enlarge(std::slice::from_ref(p)))
        .collect::<Result<Vec<_>>>()?;
    let combined = base.enlarge(primes)?;
    Ok((singles, combined))
}

/// A combined enlargement whose only new class is ramified at every new place at once.
pub fn overlapping_enlargement(base: &SelmerSystem, primes: &[NewPrime]) -> Result<SelmerSystem> {
    let mut shared = Vec::new();
    for p in primes {
        let u = p
            .new_classes
            .first()
            .ok_or_else(|| Error::Hypothesis(format!("{} admits no new class", p.local.label)))?;
        shared.extend_from_slice(u);
    }
    base.enlarge_with_classes(primes, &[shared])
}

/// A weight map `dim_h x D` on row vectors sending the (zero-padded) subspace `sel` into `u`.
pub fn weight_map<R: Rng>(rng: &mut R, f: &Fq, sel: &Subspace, dim_h: usize, u: &Subspace) -> Result<Matrix> {
    let d = u.ambient();
    let mut basis = Matrix::zeros(0, dim_h);
    let mut images = Matrix::zeros(0, d);
    for r in sel.basis().rows_iter() {
        let mut x = r.to_vec();
        x.resize(dim_h, 0);
        basis.push_row(&x)?;
        let c = random_vector(rng, f, u.dim());
        images.push_row(&combine(&c, u.basis(), f))?;
    }
    let padded = Subspace::span(&basis, f);
    for r in padded.complement_in(&Subspace::full(dim_h), f).rows_iter() {
        basis.push_row(r)?;
        images.push_row(&random_vector(rng, f, d))?;
    }
    basis.inverse(f)?.mul(&images, f)
}

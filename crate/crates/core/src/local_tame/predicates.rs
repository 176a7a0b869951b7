use serde::Serialize;

use super::TameGaloisModule;
use crate::error::{Error, Result};
use crate::field::{Elem, Fq};
use crate::linalg::{Matrix, Quotient, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegReport {
    pub reg: bool,
    pub reg_star: bool,
    pub fixed_dim: usize,
    pub twisted_fixed_dim: usize,
}

/// Common fixed spaces on `g/b` of the given generators, untwisted and twisted by `kappa`.
///
/// `gens` act on `g` by matrices on column vectors, `borel` is the subspace `b`,
/// and `kappa[i]` is the mod-p cyclotomic value on the `i`-th generator.
pub fn reg_checks(
    field: &Fq,
    gens: &[Matrix],
    borel: &Subspace,
    kappa: &[Elem],
) -> Result<RegReport> {
    if gens.len() != kappa.len() {
        return Err(Error::Arity(format!(
            "{} generators but {} cyclotomic values",
            gens.len(),
            kappa.len()
        )));
    }
    let n = borel.ambient();
    for g in gens {
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::Dimension("generator does not act on g".into()));
        }
        if !borel.image_under(g, field)?.is_subspace_of(borel, field) {
            return Err(Error::NotBorelValued);
        }
    }
    let quotient = Quotient::new(&Subspace::full(n), borel, field)?;
    let d = quotient.dim();
    let induced: Vec<Matrix> = gens
        .iter()
        .map(|g| {
            let mut cols = Matrix::zeros(0, d);
            for r in quotient.basis().rows_iter() {
                let img = g.apply(r, field)?;
                cols.push_row(&quotient.coordinates(&img, field).expect("ambient is full"))?;
            }
            Ok(cols.transpose())
        })
        .collect::<Result<_>>()?;
    let fixed_dim = |scales: &[Elem]| -> Result<usize> {
        let mut stacked = Matrix::zeros(0, d);
        for (m, &s) in induced.iter().zip(scales) {
            stacked = stacked.vstack(&m.scale(s, field).sub(&Matrix::identity(d), field)?)?;
        }
        Ok(d - stacked.rank(field))
    };
    let fixed = fixed_dim(&vec![1; gens.len()])?;
    let twisted = fixed_dim(kappa)?;
    Ok(RegReport {
        reg: fixed == 0,
        reg_star: twisted == 0,
        fixed_dim: fixed,
        twisted_fixed_dim: twisted,
    })
}

/// Basis order on `gl_n` used by [`gl_adjoint`]: `E_ij` with `i <= j` first, then `i > j`.
fn gl_basis(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    for i in 0..n {
        for j in 0..i {
            out.push((i, j));
        }
    }
    out
}

/// `Ad(g)` on `gl_n`.
pub fn gl_adjoint(field: &Fq, g: &Matrix) -> Result<Matrix> {
    let n = g.nrows();
    let gi = g.inverse(field)?;
    let basis = gl_basis(n);
    let mut out = Matrix::zeros(n * n, n * n);
    for (c, &(i, j)) in basis.iter().enumerate() {
        let mut e = Matrix::zeros(n, n);
        e.set(i, j, 1);
        let img = g.mul(&e, field)?.mul(&gi, field)?;
        for (r, &(k, l)) in basis.iter().enumerate() {
            out.set(r, c, img.get(k, l));
        }
    }
    Ok(out)
}

/// Upper-triangular matrices inside `gl_n`, in the basis of [`gl_adjoint`].
pub fn gl_borel(n: usize) -> Subspace {
    let d = n * (n + 1) / 2;
    Subspace::coordinate(n * n, &(0..d).collect::<Vec<_>>())
}

/// The `alpha`-line of a lift: Frobenius and inertia eigenvalues plus the cocycle values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonsplitLine {
    pub phi: Elem,
    pub tau: Elem,
    pub a: Elem,
    pub b: Elem,
}

/// True when the class of `phi` is nonzero on every simple-root line.
pub fn nonsplit_check(field: &Fq, q: u64, lines: &[NonsplitLine]) -> Result<bool> {
    let mut all = true;
    for (i, line) in lines.iter().enumerate() {
        let m = TameGaloisModule::new(
            field,
            Matrix::scalar(1, line.phi),
            Matrix::scalar(1, line.tau),
            q,
        )?;
        let x = [line.a, line.b];
        if !m.is_cocycle(&x) {
            return Err(Error::NotCocycle(format!("simple root {i}")));
        }
        if m.coboundaries().contains(&x, field) {
            all = false;
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_reg() {
        let f = Fq::prime(7).unwrap();
        let kappa = f.from_int(3);
        let borel = gl_borel(2);
        let diag = |psi: i64| Matrix::from_ints(&f, &[vec![psi, 0], vec![0, 1]]).unwrap();
        let r = reg_checks(&f, &[gl_adjoint(&f, &diag(2)).unwrap()], &borel, &[kappa]).unwrap();
        assert!(r.reg && r.reg_star);
        let r = reg_checks(&f, &[gl_adjoint(&f, &diag(3)).unwrap()], &borel, &[kappa]).unwrap();
        assert!(r.reg && !r.reg_star);
        let r = reg_checks(&f, &[Matrix::identity(4)], &borel, &[kappa]).unwrap();
        assert!(!r.reg);
        let lower = Matrix::from_ints(&f, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            reg_checks(&f, &[gl_adjoint(&f, &lower).unwrap()], &borel, &[kappa]).unwrap_err(),
            Error::NotBorelValued
        );
    }

    #[test]
    fn nonsplit() {
        let f = Fq::prime(5).unwrap();
        let zero = NonsplitLine {
            phi: 1,
            tau: 1,
            a: 0,
            b: 0,
        };
        assert!(!nonsplit_check(&f, 3, &[zero]).unwrap());
        let line = NonsplitLine {
            phi: 1,
            tau: 1,
            a: 1,
            b: 0,
        };
        assert!(nonsplit_check(&f, 3, &[line]).unwrap());
        assert!(!nonsplit_check(&f, 3, &[line, zero]).unwrap());
        // a class on a line with Frobenius eigenvalue != 1 is a coboundary when b = 0
        let cob = NonsplitLine {
            phi: 2,
            tau: 1,
            a: 4,
            b: 0,
        };
        assert!(!nonsplit_check(&f, 3, &[cob]).unwrap());
        let bad = NonsplitLine {
            phi: 1,
            tau: 1,
            a: 0,
            b: 1,
        };
        assert!(matches!(
            nonsplit_check(&f, 3, &[bad]),
            Err(Error::NotCocycle(_))
        ));
    }
}

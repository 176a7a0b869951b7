use rand::Rng;

use super::TameGaloisModule;
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::linalg::Matrix;

/// `exp(N)` for a nilpotent `N` with `N^p = 0`.
pub fn unipotent_exp(n: &Matrix, f: &Fq) -> Result<Matrix> {
    let d = n.nrows();
    let p = f.p() as usize;
    let mut term = Matrix::identity(d);
    let mut sum = Matrix::identity(d);
    for k in 1..p {
        term = term.mul(n, f)?.scale(f.inv(f.from_int(k as i64))?, f);
        sum = sum.add(&term, f)?;
    }
    if !term.mul(n, f)?.is_zero() {
        return Err(Error::Dimension(
            "nilpotent part has order exceeding p".into(),
        ));
    }
    Ok(sum)
}

pub(crate) fn random_invertible<R: Rng>(rng: &mut R, n: usize, f: &Fq) -> Matrix {
    loop {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, rng.gen_range(0..f.order()));
            }
        }
        if m.is_invertible(f) {
            return m;
        }
    }
}

/// A random tame module over `F_p` of dimension `1..=max_dim`.
///
/// Blocks are either unramified with random Frobenius, or a Jordan block
/// `tau = exp(N)` of size at most `p` with `Phi = c diag(q^{s-1}, ..., q, 1)`.
/// The result is conjugated by a random change of basis.
pub fn random_module<R: Rng>(
    rng: &mut R,
    f: &Fq,
    max_dim: usize,
    q: u64,
) -> Result<TameGaloisModule> {
    let p = f.p() as usize;
    let n = rng.gen_range(1..=max_dim);
    let qbar = f.from_u64(q);
    let mut phi = Matrix::zeros(0, 0);
    let mut tau = Matrix::zeros(0, 0);
    let mut left = n;
    while left > 0 {
        let ramified = left >= 2 && rng.gen_bool(0.5);
        if ramified {
            let s = rng.gen_range(2..=left.min(p));
            let mut nil = Matrix::zeros(s, s);
            for i in 0..s - 1 {
                nil.set(i, i + 1, 1);
            }
            let c = rng.gen_range(1..f.order());
            let diag: Vec<_> = (0..s)
                .map(|i| f.mul(c, f.pow(qbar, (s - 1 - i) as u64)))
                .collect();
            phi = phi.direct_sum(&Matrix::diagonal(&diag));
            tau = tau.direct_sum(&unipotent_exp(&nil, f)?);
            left -= s;
        } else {
            let s = rng.gen_range(1..=left.min(3));
            phi = phi.direct_sum(&random_invertible(rng, s, f));
            tau = tau.direct_sum(&Matrix::identity(s));
            left -= s;
        }
    }
    let s = random_invertible(rng, n, f);
    let si = s.inverse(f)?;
    let conj = |m: &Matrix| s.mul(m, f).and_then(|x| x.mul(&si, f));
    TameGaloisModule::new(f, conj(&phi)?, conj(&tau)?, q)
}

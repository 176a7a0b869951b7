//! Cohomology of tame modules recomputed from the group relation, without the library's presentation matrices.

use cmdef_core::field::Elem;
use cmdef_core::linalg::Matrix;
use cmdef_core::TameGaloisModule;

/// `c(sigma tau) - c(tau^q sigma)` for the cochain with `c(sigma) = a`, `c(tau) = b`,
/// evaluated letter by letter with the cocycle rule `c(gh) = c(g) + g c(h)`.
pub fn relator_defect(m: &TameGaloisModule, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let f = m.field();
    let n = m.dim();
    let eval = |word: &mut dyn Iterator<Item = bool>| {
        let mut acc = vec![0; n];
        let mut g = Matrix::identity(n);
        for is_sigma in word {
            let (val, act) = if is_sigma { (a, m.phi()) } else { (b, m.tau()) };
            let moved = g.apply(val, f).expect("length n");
            for (x, y) in acc.iter_mut().zip(moved) {
                *x = f.add(*x, y);
            }
            g = g.mul(act, f).expect("square");
        }
        acc
    };
    let lhs = eval(&mut [true, false].into_iter());
    let rhs = eval(&mut std::iter::repeat(false).take(m.q() as usize).chain([true]));
    lhs.iter().zip(&rhs).map(|(&x, &y)| f.sub(x, y)).collect()
}

fn coboundaries(m: &TameGaloisModule) -> Matrix {
    let n = m.dim();
    let mut cob = Matrix::zeros(0, 2 * n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        cob.push_row(&m.coboundary(&e).expect("length n")).expect("length 2n");
    }
    cob
}

/// `(h0, h1, h2)` from the rank of the relator map on `k^{2n}`.
pub fn rank_dims(m: &TameGaloisModule) -> (usize, usize, usize) {
    let f = m.field();
    let n = m.dim();
    let mut rows = Matrix::zeros(0, n);
    for i in 0..2 * n {
        let mut x = vec![0; 2 * n];
        x[i] = 1;
        rows.push_row(&relator_defect(m, &x[..n], &x[n..])).expect("length n");
    }
    let rank = rows.rank(f);
    let b1 = coboundaries(m).rank(f);
    (n - b1, 2 * n - rank - b1, n - rank)
}

fn all_vectors(p: usize, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..p.pow(len as u32)).map(move |mut code| {
        (0..len)
            .map(|_| {
                let d = code % p;
                code /= p;
                d as Elem
            })
            .collect()
    })
}

fn log_p(mut x: usize, p: usize) -> usize {
    let mut e = 0;
    while x > 1 {
        x /= p;
        e += 1;
    }
    e
}

/// `(h0, h1)` by listing fixed vectors, cocycles and coboundaries; `None` beyond `limit` cochains.
pub fn brute_force_dims(m: &TameGaloisModule, limit: usize) -> Option<(usize, usize)> {
    let p = m.field().p() as usize;
    let n = m.dim();
    if p.checked_pow(2 * n as u32)? > limit {
        return None;
    }
    let fixed = all_vectors(p, n)
        .filter(|v| m.coboundary(v).expect("length n").iter().all(|&c| c == 0))
        .count();
    let cocycles = all_vectors(p, 2 * n)
        .filter(|x| relator_defect(m, &x[..n], &x[n..]).iter().all(|&c| c == 0))
        .count();
    let mut cob: Vec<Vec<Elem>> = all_vectors(p, n).map(|v| m.coboundary(&v).expect("length n")).collect();
    cob.sort();
    cob.dedup();
    Some((log_p(fixed, p), log_p(cocycles / cob.len(), p)))
}

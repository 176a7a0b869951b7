//! Local duality `H^1(M) x H^1(M^vee(1)) -> H^2(k(1)) = k`.
//!
//! The cup product of `x` and `y` is the 2-cocycle
//! `z(g, h) = <x(g), g y(h)>`. Its class in `H^2(k(1))` is read off along the
//! relator `sigma tau = tau^q sigma`:
//! `z(sigma, tau) - sum_{i=1}^{q-1} z(tau^i, tau) - z(tau^q, sigma)`.

use super::{ConditionLabel, LocalCondition, TameGaloisModule, H1};
use crate::error::{Error, Result};
use crate::field::{Elem, Fq};
use crate::linalg::{dot, vec_add, Matrix};

#[derive(Debug, Clone)]
pub struct DualityPairing {
    h1: H1,
    dual_h1: H1,
    gram: Matrix,
}

impl DualityPairing {
    pub fn new(m: &TameGaloisModule) -> Self {
        Self::build(m, &m.dual_twist())
    }

    /// Pairing against an explicitly supplied dual, which must equal `M^vee(1)`.
    pub fn with_dual(m: &TameGaloisModule, dual: &TameGaloisModule) -> Result<Self> {
        if m.dim() != dual.dim() {
            return Err(Error::Dimension(format!(
                "module of dimension {} paired with a dual of dimension {}",
                m.dim(),
                dual.dim()
            )));
        }
        let expected = m.dual_twist();
        if dual.phi() != expected.phi() || dual.tau() != expected.tau() || dual.q() != m.q() {
            return Err(Error::Dimension("declared dual is not M^vee(1)".into()));
        }
        Ok(Self::build(m, dual))
    }

    fn build(m: &TameGaloisModule, dual: &TameGaloisModule) -> Self {
        let h1 = m.h1();
        let dual_h1 = dual.h1();
        let f = m.field();
        let mut gram = Matrix::zeros(h1.dim(), dual_h1.dim());
        for (i, x) in h1.basis().rows_iter().enumerate() {
            for (j, y) in dual_h1.basis().rows_iter().enumerate() {
                gram.set(i, j, cup_value(m, dual, x, y, f));
            }
        }
        DualityPairing { h1, dual_h1, gram }
    }

    pub fn h1(&self) -> &H1 {
        &self.h1
    }

    pub fn dual_h1(&self) -> &H1 {
        &self.dual_h1
    }

    /// `G[i][j] = <x_i, y_j>` on the canonical bases.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_perfect(&self) -> bool {
        let f = self.h1.module().field();
        self.gram.is_square() && self.gram.is_invertible(f)
    }

    /// Pairing of two cocycles.
    pub fn pair(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        let m = self.h1.module();
        let d = self.dual_h1.module();
        if !m.is_cocycle(x) {
            return Err(Error::NotCocycle("left argument".into()));
        }
        if !d.is_cocycle(y) {
            return Err(Error::NotCocycle("right argument".into()));
        }
        Ok(cup_value(m, d, x, y, m.field()))
    }

    /// `L^perp` inside `H^1(M^vee(1))`.
    pub fn annihilator(&self, cond: &LocalCondition) -> Result<LocalCondition> {
        let f = self.h1.module().field();
        Ok(LocalCondition {
            label: ConditionLabel::Custom,
            space: cond.space.annihilator(&self.gram, f)?,
        })
    }
}

fn cup_value(m: &TameGaloisModule, d: &TameGaloisModule, x: &[Elem], y: &[Elem], f: &Fq) -> Elem {
    let n = m.dim();
    let (a, b) = x.split_at(n);
    let (a2, b2) = y.split_at(n);
    let phi_star = d.phi();
    let t = m.tau();
    let t_star = d.tau();
    let q = m.q();

    let first = dot(a, &phi_star.apply(b2, f).expect("length n"), f);

    // N_i b and T*^i b' are periodic in i with period p^2 since T^p = 1
    let p = f.p() as u64;
    let period = p * p;
    let mut middle = 0;
    let mut n_b = b.to_vec();
    let mut t_b2 = t_star.apply(b2, f).expect("length n");
    for r in 1..q.min(period + 1) {
        let count = (q - 1 - r) / period + 1;
        let c = f.from_u64(count);
        if c != 0 {
            middle = f.add(middle, f.mul(c, dot(&n_b, &t_b2, f)));
        }
        n_b = vec_add(b, &t.apply(&n_b, f).expect("length n"), f);
        t_b2 = t_star.apply(&t_b2, f).expect("length n");
    }

    let nq_b = t
        .geometric_sum(q, f)
        .expect("square")
        .apply(b, f)
        .expect("length n");
    let tq_a2 = t_star
        .pow(q, f)
        .expect("square")
        .apply(a2, f)
        .expect("length n");
    let last = dot(&nq_b, &tq_a2, f);

    f.sub(f.sub(first, middle), last)
}

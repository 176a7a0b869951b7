//! Cohomology of the tame quotient `<sigma, tau | sigma tau sigma^-1 = tau^q>`.
//!
//! A 1-cocycle is recorded by its values `(a, b) = (c(sigma), c(tau))`, a vector
//! of length `2n`. The cocycle condition is
//! `(1 - T^q) a + (Phi - N_q(T)) b = 0` with `N_q(T) = 1 + T + ... + T^{q-1}`,
//! coboundaries are `((Phi - 1) m, (T - 1) m)`, and `H^2` is the cokernel of the
//! map `(a, b) -> (1 - T^q) a + (Phi - N_q(T)) b`.

mod adjoint;
mod duality;
mod predicates;
mod random;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Fq};
use crate::linalg::{Matrix, Quotient, Subspace};

pub use adjoint::{AdjointModule, LemmaReport};
pub use duality::DualityPairing;
pub use predicates::{gl_adjoint, gl_borel, nonsplit_check, reg_checks, NonsplitLine, RegReport};
pub(crate) use random::random_invertible;
pub use random::{random_module, unipotent_exp};

/// A finite-dimensional module for the tame quotient.
///
/// `phi` is the arithmetic Frobenius before twisting; the effective Frobenius
/// of `M(e)` is `qbar^e * phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameGaloisModule {
    field: Fq,
    base_phi: Matrix,
    tau: Matrix,
    q: u64,
    twist: i64,
    phi: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionLabel {
    Unramified,
    Ramakrishna,
    Custom,
}

/// A subspace of `H^1`, stored in the coordinates of [`H1::basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCondition {
    pub label: ConditionLabel,
    pub space: Subspace,
}

impl LocalCondition {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Canonical cocycle representatives of a basis.
    pub fn representatives(&self, h1: &H1) -> Matrix {
        let mut out = Matrix::zeros(0, 2 * h1.module.dim());
        for c in self.space.basis().rows_iter() {
            out.push_row(&h1.lift(c))
                .expect("lifted cocycles have length 2n");
        }
        out
    }
}

impl TameGaloisModule {
    pub fn new(field: &Fq, phi: Matrix, tau: Matrix, q: u64) -> Result<Self> {
        let n = phi.nrows();
        if !phi.is_square() || tau.nrows() != n || tau.ncols() != n {
            return Err(Error::Dimension(format!(
                "Frobenius {}x{} and inertia {}x{}",
                phi.nrows(),
                phi.ncols(),
                tau.nrows(),
                tau.ncols()
            )));
        }
        let p = field.p() as u64;
        if q % p == 0 {
            return Err(Error::DegenerateQ {
                q,
                p,
                reason: "zero",
            });
        }
        if !phi.is_invertible(field) {
            return Err(Error::Singular);
        }
        if tau.pow(p, field)? != Matrix::identity(n) {
            return Err(Error::TameRelation);
        }
        let conj = phi.mul(&tau, field)?.mul(&phi.inverse(field)?, field)?;
        if conj != tau.pow(q, field)? {
            return Err(Error::TameRelation);
        }
        Ok(TameGaloisModule {
            field: field.clone(),
            phi: phi.clone(),
            base_phi: phi,
            tau,
            q,
            twist: 0,
        })
    }

    /// Module with trivial inertia action.
    pub fn unramified(field: &Fq, phi: Matrix, q: u64) -> Result<Self> {
        let n = phi.nrows();
        Self::new(field, phi, Matrix::identity(n), q)
    }

    /// The trivial module `k`.
    pub fn trivial(field: &Fq, q: u64) -> Result<Self> {
        Self::unramified(field, Matrix::identity(1), q)
    }

    /// The cyclotomic module `k(1)`.
    pub fn cyclotomic(field: &Fq, q: u64) -> Result<Self> {
        Ok(Self::trivial(field, q)?.twisted(1))
    }

    /// `M(f)`; twisting composes additively.
    pub fn twisted(&self, f: i64) -> Self {
        let e = self.twist + f;
        let scale = self
            .field
            .pow_signed(self.qbar(), e)
            .expect("qbar is a unit");
        TameGaloisModule {
            phi: self.base_phi.scale(scale, &self.field),
            twist: e,
            ..self.clone()
        }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.phi.nrows()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn qbar(&self) -> Elem {
        self.field.from_u64(self.q)
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Effective arithmetic Frobenius `qbar^e * phi`.
    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn base_phi(&self) -> &Matrix {
        &self.base_phi
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    pub fn is_unramified(&self) -> bool {
        self.tau == Matrix::identity(self.dim())
    }

    /// `M^vee(1)` on the dual space: Frobenius `qbar * Phi^{-T}`, inertia `T^{-T}`.
    pub fn dual_twist(&self) -> Self {
        let f = &self.field;
        let phi_star = self
            .phi
            .inverse(f)
            .expect("Frobenius is invertible")
            .transpose()
            .scale(self.qbar(), f);
        let tau_star = self
            .tau
            .inverse(f)
            .expect("inertia is invertible")
            .transpose();
        TameGaloisModule {
            field: f.clone(),
            phi: phi_star.clone(),
            base_phi: phi_star,
            tau: tau_star,
            q: self.q,
            twist: 0,
        }
    }

    fn shifted(&self, m: &Matrix, c: Elem) -> Matrix {
        let n = self.dim();
        m.sub(&Matrix::scalar(n, c), &self.field).expect("square")
    }

    /// `H^0(M)`, the common fixed space.
    pub fn invariants(&self) -> Subspace {
        let stacked = self
            .shifted(&self.phi, 1)
            .vstack(&self.shifted(&self.tau, 1))
            .expect("same width");
        Subspace::span(&stacked.kernel(&self.field), &self.field)
    }

    /// The `n x 2n` matrix of the cocycle relation.
    pub fn relation_matrix(&self) -> Matrix {
        let f = &self.field;
        let n = self.dim();
        let tq = self.tau.pow(self.q, f).expect("square");
        let left = Matrix::identity(n).sub(&tq, f).expect("square");
        let nq = self.tau.geometric_sum(self.q, f).expect("square");
        let right = self.phi.sub(&nq, f).expect("square");
        left.hstack(&right).expect("same height")
    }

    pub fn cocycles(&self) -> Subspace {
        Subspace::span(&self.relation_matrix().kernel(&self.field), &self.field)
    }

    pub fn coboundaries(&self) -> Subspace {
        let f = &self.field;
        let rows = self
            .shifted(&self.phi, 1)
            .transpose()
            .hstack(&self.shifted(&self.tau, 1).transpose())
            .expect("same height");
        Subspace::span(&rows, f)
    }

    /// Coboundary of `m`.
    pub fn coboundary(&self, m: &[Elem]) -> Result<Vec<Elem>> {
        let f = &self.field;
        let mut out = self.shifted(&self.phi, 1).apply(m, f)?;
        out.extend(self.shifted(&self.tau, 1).apply(m, f)?);
        Ok(out)
    }

    pub fn is_cocycle(&self, x: &[Elem]) -> bool {
        x.len() == 2 * self.dim()
            && self
                .relation_matrix()
                .apply(x, &self.field)
                .map(|v| v.iter().all(|&c| c == 0))
                .unwrap_or(false)
    }

    pub fn cohomology_dims(&self) -> CohomologyDims {
        let n = self.dim();
        let h0 = self.invariants().dim();
        let rel = self.relation_matrix();
        let rank = rel.rank(&self.field);
        let z1 = 2 * n - rank;
        let b1 = self.coboundaries().dim();
        CohomologyDims {
            h0,
            h1: z1 - b1,
            h2: n - rank,
        }
    }

    pub fn h1(&self) -> H1 {
        let cocycles = self.cocycles();
        let coboundaries = self.coboundaries();
        let quotient = Quotient::new(&cocycles, &coboundaries, &self.field)
            .expect("coboundaries are cocycles");
        H1 {
            module: self.clone(),
            cocycles,
            quotient,
        }
    }
}

/// `H^1(M) = Z^1 / B^1` with canonical representatives.
#[derive(Debug, Clone)]
pub struct H1 {
    module: TameGaloisModule,
    cocycles: Subspace,
    quotient: Quotient,
}

impl H1 {
    pub fn module(&self) -> &TameGaloisModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        self.quotient.lower()
    }

    /// Canonical representatives of the basis classes, one per row.
    pub fn basis(&self) -> &Matrix {
        self.quotient.basis()
    }

    /// Coordinates of the class of a cocycle.
    pub fn coordinates(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != 2 * self.module.dim() || !self.cocycles.contains(x, &self.module.field) {
            return Err(Error::NotCocycle("vector is not a 1-cocycle".into()));
        }
        Ok(self
            .quotient
            .coordinates(x, &self.module.field)
            .expect("cocycles project into the quotient"))
    }

    pub fn canonical(&self, x: &[Elem]) -> Vec<Elem> {
        self.quotient.canonical(x, &self.module.field)
    }

    pub fn lift(&self, coords: &[Elem]) -> Vec<Elem> {
        self.quotient.lift(coords, &self.module.field)
    }

    /// The subspace spanned by the classes of the given cocycles.
    pub fn condition_from_cocycles(
        &self,
        label: ConditionLabel,
        cocycles: &Matrix,
    ) -> Result<LocalCondition> {
        let mut coords = Matrix::zeros(0, self.dim());
        for x in cocycles.rows_iter() {
            coords.push_row(&self.coordinates(x)?)?;
        }
        Ok(LocalCondition {
            label,
            space: Subspace::span(&coords, &self.module.field),
        })
    }

    /// Classes with a representative vanishing on inertia.
    pub fn unramified(&self) -> LocalCondition {
        let m = &self.module;
        let n = m.dim();
        let fixed = m.shifted(&m.tau, 1).kernel(&m.field);
        let mut gens = Matrix::zeros(0, 2 * n);
        for a in fixed.rows_iter() {
            let mut v = a.to_vec();
            v.extend(std::iter::repeat(0).take(n));
            gens.push_row(&v).expect("length 2n");
        }
        self.condition_from_cocycles(ConditionLabel::Unramified, &gens)
            .expect("inertia-fixed vectors give cocycles")
    }

    pub fn full(&self) -> LocalCondition {
        LocalCondition {
            label: ConditionLabel::Custom,
            space: Subspace::full(self.dim()),
        }
    }

    pub fn zero(&self) -> LocalCondition {
        LocalCondition {
            label: ConditionLabel::Custom,
            space: Subspace::zero(self.dim()),
        }
    }
}

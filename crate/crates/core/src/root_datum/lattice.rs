use serde::Serialize;

use super::RootDatum;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeKind {
    Character,
    Cocharacter,
}

/// A (co)character in Dynkin-label coordinates plus central coordinates.
///
/// For a character `lambda` the labels are `<lambda, alpha_i^vee>`; for a
/// cocharacter `mu` they are `<alpha_i, mu>`. The central coordinates record
/// the part invisible to the roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Weight {
    pub kind: LatticeKind,
    pub labels: Vec<i64>,
    pub central: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaImage {
    pub first: Weight,
    pub second: Weight,
    pub fixed: bool,
}

impl Weight {
    pub fn new(kind: LatticeKind, labels: Vec<i64>, central: Vec<i64>) -> Self {
        Weight {
            kind,
            labels,
            central,
        }
    }

    pub fn zero(rd: &RootDatum, kind: LatticeKind) -> Self {
        Weight::new(
            kind,
            vec![0; rd.semisimple_rank()],
            vec![0; rd.central_rank()],
        )
    }

    /// Fundamental (co)weight dual to the `i`-th simple (co)root.
    pub fn fundamental(rd: &RootDatum, kind: LatticeKind, i: usize) -> Self {
        let mut w = Weight::zero(rd, kind);
        w.labels[i] = 1;
        w
    }

    /// `GL_n` (co)character from diagonal coordinates `(a_1, ..., a_n)`.
    pub fn from_gl(kind: LatticeKind, coords: &[i64]) -> Self {
        let labels = coords.windows(2).map(|w| w[0] - w[1]).collect();
        Weight::new(kind, labels, vec![coords.iter().sum()])
    }

    fn check(&self, rd: &RootDatum) -> Result<()> {
        if self.labels.len() != rd.semisimple_rank() || self.central.len() != rd.central_rank() {
            return Err(Error::Dimension(format!(
                "weight with {}+{} coordinates for a datum of rank {}+{}",
                self.labels.len(),
                self.central.len(),
                rd.semisimple_rank(),
                rd.central_rank()
            )));
        }
        Ok(())
    }

    fn same_lattice(&self, other: &Weight) -> Result<()> {
        if self.kind != other.kind
            || self.labels.len() != other.labels.len()
            || self.central.len() != other.central.len()
        {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.same_lattice(other)?;
        Ok(Weight::new(
            self.kind,
            self.labels
                .iter()
                .zip(&other.labels)
                .map(|(a, b)| a + b)
                .collect(),
            self.central
                .iter()
                .zip(&other.central)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> Weight {
        Weight::new(
            self.kind,
            self.labels.iter().map(|x| -x).collect(),
            self.central.iter().map(|x| -x).collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.add(&other.neg())
    }

    pub fn is_central(&self) -> bool {
        self.labels.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.labels.iter().all(|&x| x >= 0)
    }

    /// Pairing with a root (for cocharacters) or coroot (for characters) given in simple coordinates.
    pub fn pair(&self, simple_coords: &[i64]) -> i64 {
        self.labels
            .iter()
            .zip(simple_coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `-w0` applied to the weight.
    pub fn minus_w0(&self, rd: &RootDatum) -> Result<Weight> {
        self.check(rd)?;
        if rd.semisimple_rank() == 0 {
            return Ok(self.neg());
        }
        let perm = rd.longest_element()?.minus_w0;
        Ok(Weight::new(
            self.kind,
            (0..perm.len()).map(|j| self.labels[perm[j]]).collect(),
            self.central.iter().map(|x| -x).collect(),
        ))
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, rd: &RootDatum, i: usize) -> Weight {
        let c = rd.cartan_matrix();
        let li = self.labels[i];
        let labels = (0..self.labels.len())
            .map(|j| {
                let cij = match self.kind {
                    LatticeKind::Character => c[i][j],
                    LatticeKind::Cocharacter => c[j][i],
                };
                self.labels[j] - li * cij
            })
            .collect();
        Weight::new(self.kind, labels, self.central.clone())
    }

    /// The dominant Weyl conjugate.
    pub fn dominant(&self, rd: &RootDatum) -> Result<Weight> {
        self.check(rd)?;
        let mut w = self.clone();
        while let Some(i) = w.labels.iter().position(|&x| x < 0) {
            w = w.reflect(rd, i);
        }
        Ok(w)
    }
}

/// `(lambda_1, lambda_2) -> (-w0 lambda_2, -w0 lambda_1)`.
pub fn theta_involution(rd: &RootDatum, lambda1: &Weight, lambda2: &Weight) -> Result<ThetaImage> {
    lambda1.same_lattice(lambda2)?;
    let first = lambda2.minus_w0(rd)?;
    let second = lambda1.minus_w0(rd)?;
    let fixed = first == *lambda1;
    Ok(ThetaImage {
        first,
        second,
        fixed,
    })
}

/// Checks `dom(mu_w) = omega - w0 dom(mu_wbar)` for a central `omega`.
pub fn parallel_cocharacter_check(
    rd: &RootDatum,
    mu_w: &Weight,
    mu_wbar: &Weight,
    omega: &Weight,
) -> Result<bool> {
    mu_w.same_lattice(mu_wbar)?;
    mu_w.same_lattice(omega)?;
    if !omega.is_central() {
        return Err(Error::NotCentral);
    }
    let lhs = mu_w.dominant(rd)?;
    let rhs = omega.add(&mu_wbar.dominant(rd)?.minus_w0(rd)?)?;
    Ok(lhs == rhs)
}

use serde::Serialize;

use super::RootDatum;
use crate::error::{Error, Result};
use crate::field::{Elem, Fq};

/// A torus element `t`, recorded by the values `alpha_i(t)` on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    field: Fq,
    simple_values: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamakrishnaRoots {
    /// Indices (in the datum's root order) of roots with `beta(t) = q^{-1}`.
    pub roots: Vec<usize>,
    pub unique: bool,
}

impl TorusElement {
    pub fn new(field: &Fq, simple_values: Vec<Elem>) -> Result<Self> {
        if simple_values.iter().any(|&v| v == 0 || v >= field.order()) {
            return Err(Error::Dimension(
                "simple-root values must be units of k".into(),
            ));
        }
        Ok(TorusElement {
            field: field.clone(),
            simple_values,
        })
    }

    pub fn from_ints(field: &Fq, values: &[i64]) -> Result<Self> {
        Self::new(field, values.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn simple_values(&self) -> &[Elem] {
        &self.simple_values
    }

    /// `beta(t)` for a root in simple-root coordinates.
    pub fn value(&self, root: &[i64]) -> Elem {
        let f = &self.field;
        root.iter()
            .zip(&self.simple_values)
            .fold(1, |acc, (&b, &v)| {
                f.mul(acc, f.pow_signed(v, b).expect("values are units"))
            })
    }

    fn check(&self, rd: &RootDatum) -> Result<()> {
        if self.simple_values.len() != rd.semisimple_rank() {
            return Err(Error::Dimension(format!(
                "{} simple-root values for semisimple rank {}",
                self.simple_values.len(),
                rd.semisimple_rank()
            )));
        }
        Ok(())
    }

    pub fn is_regular_semisimple(&self, rd: &RootDatum) -> Result<bool> {
        self.check(rd)?;
        Ok(rd.positive_roots().iter().all(|r| self.value(r) != 1))
    }

    /// Roots with arithmetic Frobenius eigenvalue `q` on `g_beta`, i.e. `beta(t) = q^{-1}`.
    pub fn ramakrishna_root_set(&self, rd: &RootDatum, q: u64) -> Result<RamakrishnaRoots> {
        self.check(rd)?;
        let f = &self.field;
        let qbar = check_q(f, q)?;
        if !self.is_regular_semisimple(rd)? {
            return Err(Error::NotRegular);
        }
        let target = f.inv(qbar)?;
        let roots: Vec<usize> = (0..rd.num_roots())
            .filter(|&i| self.value(&rd.root(i)) == target)
            .collect();
        let unique = roots.len() == 1;
        Ok(RamakrishnaRoots { roots, unique })
    }
}

/// `q mod p`, rejecting the degenerate residues 0 and 1.
pub(crate) fn check_q(f: &Fq, q: u64) -> Result<Elem> {
    let qbar = f.from_u64(q);
    let p = f.p() as u64;
    match qbar {
        0 => Err(Error::DegenerateQ {
            q,
            p,
            reason: "zero",
        }),
        1 => Err(Error::DegenerateQ {
            q,
            p,
            reason: "one",
        }),
        _ => Ok(qbar),
    }
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Fq};
use crate::linalg::{Matrix, Subspace};
use crate::local_tame::{AdjointModule, DualityPairing};

/// Local cohomology at one place: `V = H^1(Gamma_v, M)`, `V' = H^1(Gamma_v, M^vee(1))`
/// and the local Tate pairing between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSpace {
    pub label: String,
    /// `gram[i][j] = <e_i, e'_j>`.
    pub gram: Matrix,
    pub unramified: Option<Subspace>,
    pub dual_unramified: Option<Subspace>,
    pub ramakrishna: Option<Subspace>,
    /// `h^0` of the module and of its Tate dual at this place.
    pub h0: usize,
    pub h0_dual: usize,
}

impl LocalSpace {
    /// A place with no distinguished conditions and the given perfect pairing.
    pub fn bare(label: impl Into<String>, gram: Matrix) -> Self {
        LocalSpace {
            label: label.into(),
            gram,
            unramified: None,
            dual_unramified: None,
            ramakrishna: None,
            h0: 0,
            h0_dual: 0,
        }
    }

    /// Local data at a trivial prime of Ramakrishna type with root `alpha`.
    pub fn from_adjoint(label: impl Into<String>, a: &AdjointModule, alpha: usize) -> Result<Self> {
        let pairing = DualityPairing::new(a.module());
        let ram = a.ramakrishna_subspace(alpha)?;
        Ok(LocalSpace {
            label: label.into(),
            gram: pairing.gram().clone(),
            unramified: Some(pairing.h1().unramified().space),
            dual_unramified: Some(pairing.dual_h1().unramified().space),
            ramakrishna: Some(ram.space),
            h0: a.module().cohomology_dims().h0,
            h0_dual: a.module().dual_twist().cohomology_dims().h0,
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn dual_dim(&self) -> usize {
        self.gram.ncols()
    }

    pub fn perp(&self, l: &Subspace, f: &Fq) -> Result<Subspace> {
        l.annihilator(&self.gram, f)
    }

    /// `L^unr cap L^Ram`.
    pub fn balanced_intersection(&self, f: &Fq) -> Result<Subspace> {
        match (&self.unramified, &self.ramakrishna) {
            (Some(u), Some(r)) => u.intersect(r, f),
            _ => Err(Error::Hypothesis(format!(
                "{} lacks unramified or Ramakrishna data",
                self.label
            ))),
        }
    }
}

/// One local condition `L_v` per place of a [`SelmerSystem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionAssignment {
    pub conditions: Vec<Subspace>,
}

impl ConditionAssignment {
    pub fn new(sys: &SelmerSystem, conditions: Vec<Subspace>) -> Result<Self> {
        if conditions.len() != sys.locals.len() {
            return Err(Error::IndexMismatch(format!(
                "{} conditions for {} places",
                conditions.len(),
                sys.locals.len()
            )));
        }
        for (l, v) in conditions.iter().zip(&sys.locals) {
            if l.ambient() != v.dim() {
                return Err(Error::IndexMismatch(format!(
                    "condition at {} has the wrong ambient",
                    v.label
                )));
            }
        }
        Ok(ConditionAssignment { conditions })
    }

    /// Appends a condition at a newly added place.
    pub fn extended(&self, l: Subspace) -> Self {
        let mut conditions = self.conditions.clone();
        conditions.push(l);
        ConditionAssignment { conditions }
    }

    pub fn total_dim(&self) -> usize {
        self.conditions.iter().map(Subspace::dim).sum()
    }
}

/// Global classes `H` and `H'` recorded through their restrictions to the places
/// of `Sigma`: row `i` of `global` is `(res_v(h_i))_v`, concatenated in place order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelmerSystem {
    pub field: Fq,
    pub locals: Vec<LocalSpace>,
    pub global: Matrix,
    pub dual_global: Matrix,
}

/// Restriction data of the old global classes at a new place, together with
/// the classes it newly admits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewPrime {
    pub local: LocalSpace,
    /// `dim H x dim V_w`, rows in `L^unr_w`.
    pub restriction: Matrix,
    /// `dim H' x dim V'_w`, rows in the dual unramified line.
    pub dual_restriction: Matrix,
    /// Local components at `w` of the new global classes.
    pub new_classes: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelmerDims {
    pub selmer: usize,
    pub dual_selmer: usize,
}

impl SelmerDims {
    pub fn difference(&self) -> i64 {
        self.selmer as i64 - self.dual_selmer as i64
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Matrix of `V -> V / L` on row vectors, in the non-pivot coordinates of `L`.
fn quotient_map(l: &Subspace, f: &Fq) -> Matrix {
    let n = l.ambient();
    let free: Vec<usize> = (0..n).filter(|c| !l.pivots().contains(c)).collect();
    let mut m = Matrix::zeros(n, free.len());
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let r = l.reduce(&e, f);
        for (k, &c) in free.iter().enumerate() {
            m.set(i, k, r[c]);
        }
    }
    m
}

impl SelmerSystem {
    pub fn new(
        field: &Fq,
        locals: Vec<LocalSpace>,
        global: Matrix,
        dual_global: Matrix,
    ) -> Result<Self> {
        let total: usize = locals.iter().map(LocalSpace::dim).sum();
        let total_dual: usize = locals.iter().map(LocalSpace::dual_dim).sum();
        if global.ncols() != total || dual_global.ncols() != total_dual {
            return Err(Error::Dimension(format!(
                "global restrictions have {}/{} columns, places need {total}/{total_dual}",
                global.ncols(),
                dual_global.ncols()
            )));
        }
        Ok(SelmerSystem {
            field: field.clone(),
            locals,
            global,
            dual_global,
        })
    }

    pub fn dim_h(&self) -> usize {
        self.global.nrows()
    }

    pub fn dim_h_dual(&self) -> usize {
        self.dual_global.nrows()
    }

    pub fn total_dim(&self) -> usize {
        self.locals.iter().map(LocalSpace::dim).sum()
    }

    pub fn total_dual_dim(&self) -> usize {
        self.locals.iter().map(LocalSpace::dual_dim).sum()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.locals.iter().map(|l| l.label.as_str()).collect()
    }

    pub fn place_index(&self, label: &str) -> Option<usize> {
        self.locals.iter().position(|l| l.label == label)
    }

    fn offsets(&self) -> Vec<usize> {
        offsets(self.locals.iter().map(LocalSpace::dim))
    }

    fn dual_offsets(&self) -> Vec<usize> {
        offsets(self.locals.iter().map(LocalSpace::dual_dim))
    }

    /// `res_v` on the basis of `H`, as a `dim H x dim V_v` matrix.
    pub fn restriction(&self, v: usize) -> Matrix {
        let o = self.offsets();
        self.global.submatrix(0..self.dim_h(), o[v]..o[v + 1])
    }

    pub fn dual_restriction(&self, v: usize) -> Matrix {
        let o = self.dual_offsets();
        self.dual_global
            .submatrix(0..self.dim_h_dual(), o[v]..o[v + 1])
    }

    /// Block-diagonal sum of the local pairings.
    pub fn block_gram(&self) -> Matrix {
        self.locals
            .iter()
            .fold(Matrix::zeros(0, 0), |acc, l| acc.direct_sum(&l.gram))
    }

    /// Image of `H` in the sum of the local spaces.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.global, &self.field)
    }

    pub fn dual_image(&self) -> Subspace {
        Subspace::span(&self.dual_global, &self.field)
    }

    /// Global reciprocity: the sum of local pairings of global classes vanishes.
    pub fn reciprocity_holds(&self) -> bool {
        let f = &self.field;
        if self.dim_h() == 0 || self.dim_h_dual() == 0 {
            return true;
        }
        let g = self.block_gram();
        self.global
            .mul(&g, f)
            .and_then(|m| m.mul(&self.dual_global.transpose(), f))
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }

    /// The images of `H` and `H'` are exact annihilators of each other.
    pub fn is_exact(&self) -> Result<bool> {
        let f = &self.field;
        let ann = self.image().annihilator(&self.block_gram(), f)?;
        Ok(ann == self.dual_image())
    }

    /// Whether `H -> sum over targets of V_v` is onto.
    pub fn surjectivity_check(&self, targets: &[usize]) -> Result<bool> {
        let mut cols = Matrix::zeros(self.dim_h(), 0);
        let mut need = 0;
        for &v in targets {
            if v >= self.locals.len() {
                return Err(Error::IndexMismatch(format!("place {v} out of range")));
            }
            cols = cols.hstack(&self.restriction(v))?;
            need += self.locals[v].dim();
        }
        Ok(cols.rank(&self.field) == need)
    }

    fn kernel_of_conditions(&self, dual: bool, conds: &[Subspace]) -> Result<Subspace> {
        let f = &self.field;
        let rows = if dual {
            self.dim_h_dual()
        } else {
            self.dim_h()
        };
        let mut big = Matrix::zeros(rows, 0);
        for (v, l) in conds.iter().enumerate() {
            let res = if dual {
                self.dual_restriction(v)
            } else {
                self.restriction(v)
            };
            big = big.hstack(&res.mul(&quotient_map(l, f), f)?)?;
        }
        let k = big.left_kernel(f);
        Ok(if k.nrows() == 0 {
            Subspace::zero(rows)
        } else {
            Subspace::span(&k, f)
        })
    }

    /// `H^1_L`: coordinates on the basis of `H` of classes locally in every `L_v`.
    pub fn selmer(&self, cond: &ConditionAssignment) -> Result<Subspace> {
        self.check_assignment(cond)?;
        self.kernel_of_conditions(false, &cond.conditions)
    }

    /// `H^1_{L^perp}` on the basis of `H'`.
    pub fn dual_selmer(&self, cond: &ConditionAssignment) -> Result<Subspace> {
        self.check_assignment(cond)?;
        let perps = self.perps(cond)?;
        self.kernel_of_conditions(true, &perps)
    }

    pub fn perps(&self, cond: &ConditionAssignment) -> Result<Vec<Subspace>> {
        cond.conditions
            .iter()
            .zip(&self.locals)
            .map(|(l, v)| v.perp(l, &self.field))
            .collect()
    }

    pub fn dims(&self, cond: &ConditionAssignment) -> Result<SelmerDims> {
        Ok(SelmerDims {
            selmer: self.selmer(cond)?.dim(),
            dual_selmer: self.dual_selmer(cond)?.dim(),
        })
    }

    fn check_assignment(&self, cond: &ConditionAssignment) -> Result<()> {
        ConditionAssignment::new(self, cond.conditions.clone()).map(|_| ())
    }

    /// The assignment with `L^unr` wherever it is recorded and `0` elsewhere.
    pub fn unramified_assignment(&self) -> ConditionAssignment {
        let conditions = self
            .locals
            .iter()
            .map(|l| {
                l.unramified
                    .clone()
                    .unwrap_or_else(|| Subspace::zero(l.dim()))
            })
            .collect();
        ConditionAssignment { conditions }
    }

    /// Adds the places of `primes`; each admits its own new classes, supported at that place.
    pub fn enlarge(&self, primes: &[NewPrime]) -> Result<SelmerSystem> {
        let widths: Vec<usize> = primes.iter().map(|p| p.local.dim()).collect();
        let o = offsets(widths.iter().copied());
        let mut classes = Vec::new();
        for (k, p) in primes.iter().enumerate() {
            for u in &p.new_classes {
                if u.len() != widths[k] {
                    return Err(Error::Dimension(format!(
                        "new class at {} has the wrong length",
                        p.local.label
                    )));
                }
                let mut full = vec![0; o[primes.len()]];
                full[o[k]..o[k + 1]].copy_from_slice(u);
                classes.push(full);
            }
        }
        self.enlarge_with_classes(primes, &classes)
    }

    /// Adds places and global classes with prescribed components at the new places.
    ///
    /// Components at the old places are solved for from reciprocity against the old
    /// dual classes and reduced modulo the old image; the new dual classes are
    /// completed to the full annihilator.
    pub fn enlarge_with_classes(
        &self,
        primes: &[NewPrime],
        classes: &[Vec<Elem>],
    ) -> Result<SelmerSystem> {
        let f = &self.field;
        let mut ext = self.global.clone();
        let mut ext_dual = self.dual_global.clone();
        let mut new_gram = Matrix::zeros(0, 0);
        for p in primes {
            let l = &p.local;
            if p.restriction.nrows() != self.dim_h()
                || p.restriction.ncols() != l.dim()
                || p.dual_restriction.nrows() != self.dim_h_dual()
                || p.dual_restriction.ncols() != l.dual_dim()
            {
                return Err(Error::Dimension(format!(
                    "restriction data at {} has the wrong shape",
                    l.label
                )));
            }
            if let Some(u) = &l.unramified {
                if !p.restriction.rows_iter().all(|r| u.contains(r, f)) {
                    return Err(Error::Hypothesis(format!(
                        "old classes ramify at {}",
                        l.label
                    )));
                }
            }
            if let Some(u) = &l.dual_unramified {
                if !p.dual_restriction.rows_iter().all(|r| u.contains(r, f)) {
                    return Err(Error::Hypothesis(format!(
                        "old dual classes ramify at {}",
                        l.label
                    )));
                }
            }
            if self.place_index(&l.label).is_some() {
                return Err(Error::IndexMismatch(format!(
                    "place {} already present",
                    l.label
                )));
            }
            ext = ext.hstack(&p.restriction)?;
            ext_dual = ext_dual.hstack(&p.dual_restriction)?;
            new_gram = new_gram.direct_sum(&l.gram);
        }
        let mut locals = self.locals.clone();
        locals.extend(primes.iter().map(|p| p.local.clone()));
        let extended = SelmerSystem::new(f, locals, ext, ext_dual)?;
        if !extended.reciprocity_holds() {
            return Err(Error::Hypothesis(
                "restrictions at the new places break reciprocity".into(),
            ));
        }

        let old_gram = self.block_gram();
        let new_dual_part = extended.dual_global.submatrix(
            0..self.dim_h_dual(),
            self.total_dual_dim()..extended.total_dual_dim(),
        );
        // <e, y> = (y G^T) . e
        let a = if self.dim_h_dual() == 0 {
            Matrix::zeros(0, self.total_dim())
        } else {
            self.dual_global.mul(&old_gram.transpose(), f)?
        };
        let old_image = self.image();
        let mut global = extended.global.clone();
        for u in classes {
            if u.len() != new_gram.nrows() {
                return Err(Error::Dimension(
                    "new class does not match the new places".into(),
                ));
            }
            let rhs: Vec<Elem> = if self.dim_h_dual() == 0 {
                Vec::new()
            } else {
                let pairing = new_dual_part.mul(&new_gram.transpose(), f)?;
                pairing.apply(u, f)?.iter().map(|&x| f.neg(x)).collect()
            };
            let e = if self.dim_h_dual() == 0 {
                vec![0; self.total_dim()]
            } else {
                a.solve(&rhs, f)?.ok_or_else(|| {
                    Error::Hypothesis("new class cannot satisfy reciprocity".into())
                })?
            };
            let mut row = old_image.reduce(&e, f);
            row.extend_from_slice(u);
            global.push_row(&row)?;
        }

        let image = Subspace::span(&global, f);
        let ann = image.annihilator(&extended.block_gram(), f)?;
        let have = Subspace::span(&extended.dual_global, f);
        let extra = have.complement_in(&ann, f);
        let dual_global = extended.dual_global.vstack(&extra)?;
        SelmerSystem::new(f, extended.locals, global, dual_global)
    }

    /// Coordinates of an element of the old `H` inside an enlargement built by [`Self::enlarge`].
    pub fn inflate(&self, coords: &[Elem], larger: &SelmerSystem) -> Vec<Elem> {
        let mut out = coords.to_vec();
        out.resize(larger.dim_h(), 0);
        out
    }

    /// Restriction of the class with coordinates `x` to place `v`.
    pub fn restrict(&self, x: &[Elem], v: usize) -> Result<Vec<Elem>> {
        self.restriction(v).transpose().apply(x, &self.field)
    }

    pub fn restrict_dual(&self, y: &[Elem], v: usize) -> Result<Vec<Elem>> {
        self.dual_restriction(v).transpose().apply(y, &self.field)
    }

    /// Classes whose restriction at each listed place lies in its unramified subspace.
    pub fn unramified_at(&self, places: &[usize]) -> Result<Subspace> {
        let mut conds: Vec<Subspace> = self
            .locals
            .iter()
            .map(|l| Subspace::full(l.dim()))
            .collect();
        for &v in places {
            conds[v] = self.locals[v].unramified.clone().ok_or_else(|| {
                Error::Hypothesis(format!(
                    "no unramified subspace at {}",
                    self.locals[v].label
                ))
            })?;
        }
        self.kernel_of_conditions(false, &conds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_map_kills_subspace() {
        let f = Fq::prime(5).unwrap();
        let l = Subspace::span_vectors(3, &[vec![1, 2, 0]], &f).unwrap();
        let q = quotient_map(&l, &f);
        assert_eq!((q.nrows(), q.ncols()), (3, 2));
        let img = Matrix::from_rows(&[vec![1, 2, 0]])
            .unwrap()
            .mul(&q, &f)
            .unwrap();
        assert!(img.is_zero());
        assert_eq!(q.rank(&f), 2);
    }

    #[test]
    fn one_place_system() {
        let f = Fq::prime(7).unwrap();
        let v = LocalSpace::bare("v", Matrix::identity(2));
        let global = Matrix::from_rows(&[vec![1, 0]]).unwrap();
        let dual = Matrix::from_rows(&[vec![0, 1]]).unwrap();
        let sys = SelmerSystem::new(&f, vec![v], global, dual).unwrap();
        assert!(sys.reciprocity_holds());
        assert!(sys.is_exact().unwrap());
        let full = ConditionAssignment::new(&sys, vec![Subspace::full(2)]).unwrap();
        assert_eq!(
            sys.dims(&full).unwrap(),
            SelmerDims {
                selmer: 1,
                dual_selmer: 0
            }
        );
        let zero = ConditionAssignment::new(&sys, vec![Subspace::zero(2)]).unwrap();
        assert_eq!(
            sys.dims(&zero).unwrap(),
            SelmerDims {
                selmer: 0,
                dual_selmer: 1
            }
        );
        assert!(matches!(
            ConditionAssignment::new(&sys, vec![]),
            Err(Error::IndexMismatch(_))
        ));
    }
}

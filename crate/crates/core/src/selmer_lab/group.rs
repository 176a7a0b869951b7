use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Fq};
use crate::linalg::{EchelonBuilder, Matrix, Quotient, Subspace};

pub const DEFAULT_GROUP_BOUND: usize = 100_000;
/// Largest `|G|^2 * dim M` for which 2-cochains are materialized.
pub const DEFAULT_COCHAIN_LIMIT: usize = 20_000;

/// A finite group, enumerated from generators in a faithful representation,
/// together with matrices describing its action on a module `M`.
#[derive(Debug, Clone)]
pub struct FiniteGroupAction {
    group_field: Fq,
    field: Fq,
    dim: usize,
    keys: Vec<Matrix>,
    actions: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    gens: Vec<usize>,
    /// `right[g][s]` is the index of `g * gen_s`.
    right: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCohomology {
    pub degree: usize,
    pub dim: usize,
    /// Cocycle representatives (degrees 0 and 1), one per row; cochain
    /// coordinates are `g * dim M + i`.
    #[serde(skip)]
    pub basis: Option<Matrix>,
}

impl FiniteGroupAction {
    /// Enumerates the group generated by `group_gens` (over `group_field`) acting through `action_gens`.
    pub fn new(
        group_field: &Fq,
        group_gens: &[Matrix],
        field: &Fq,
        action_gens: &[Matrix],
        bound: usize,
    ) -> Result<Self> {
        if group_gens.len() != action_gens.len() {
            return Err(Error::Arity(format!(
                "{} group generators but {} action matrices",
                group_gens.len(),
                action_gens.len()
            )));
        }
        let Some(first) = group_gens.first() else {
            return Self::trivial(
                group_field,
                field,
                action_gens.first().map_or(0, Matrix::nrows),
            );
        };
        let d = first.nrows();
        let dim = action_gens[0].nrows();
        let id_key = Matrix::identity(d);
        let mut g = FiniteGroupAction {
            group_field: group_field.clone(),
            field: field.clone(),
            dim,
            keys: vec![id_key.clone()],
            actions: vec![Matrix::identity(dim)],
            index: HashMap::from([(id_key, 0)]),
            gens: Vec::new(),
            right: Vec::new(),
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(group_gens.len());
            for (gk, ga) in group_gens.iter().zip(action_gens) {
                let key = g.keys[i].mul(gk, group_field)?;
                let act = g.actions[i].mul(ga, field)?;
                let j = match g.index.get(&key) {
                    Some(&j) => {
                        if g.actions[j] != act {
                            return Err(Error::Hypothesis("action is not a homomorphism".into()));
                        }
                        j
                    }
                    None => {
                        if g.keys.len() >= bound {
                            return Err(Error::EnumerationOverflow(bound));
                        }
                        let j = g.keys.len();
                        g.index.insert(key.clone(), j);
                        g.keys.push(key);
                        g.actions.push(act);
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            if g.right.len() <= i {
                g.right.resize(i + 1, Vec::new());
            }
            g.right[i] = row;
        }
        g.gens = g.right[0].clone();
        Ok(g)
    }

    /// The image of `action_gens`, used as its own faithful representation.
    pub fn from_action(field: &Fq, action_gens: &[Matrix], bound: usize) -> Result<Self> {
        Self::new(field, action_gens, field, action_gens, bound)
    }

    fn trivial(group_field: &Fq, field: &Fq, dim: usize) -> Result<Self> {
        let key = Matrix::identity(1);
        Ok(FiniteGroupAction {
            group_field: group_field.clone(),
            field: field.clone(),
            dim,
            keys: vec![key.clone()],
            actions: vec![Matrix::identity(dim)],
            index: HashMap::from([(key, 0)]),
            gens: Vec::new(),
            right: vec![Vec::new()],
        })
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn module_dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.actions[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let key = self.keys[a]
            .mul(&self.keys[b], &self.group_field)
            .expect("keys share a shape");
        self.index[&key]
    }

    /// `g * gen_s`.
    pub fn right_by_generator(&self, g: usize, s: usize) -> usize {
        self.right[g][s]
    }

    /// Common fixed space of the action.
    pub fn invariants(&self) -> Subspace {
        let f = &self.field;
        let mut stacked = Matrix::zeros(0, self.dim);
        for &s in &self.gens {
            let shifted = self.actions[s]
                .sub(&Matrix::identity(self.dim), f)
                .expect("square");
            stacked = stacked.vstack(&shifted).expect("same width");
        }
        Subspace::span(&stacked.kernel(f), f)
    }

    fn coboundaries_1(&self) -> Subspace {
        let f = &self.field;
        let n = self.dim;
        let mut rows = Matrix::zeros(0, self.order() * n);
        for i in 0..n {
            let mut m = vec![0; n];
            m[i] = 1;
            let mut c = Vec::with_capacity(self.order() * n);
            for a in &self.actions {
                let gm = a.apply(&m, f).expect("length n");
                c.extend(gm.iter().zip(&m).map(|(&x, &y)| f.sub(x, y)));
            }
            rows.push_row(&c).expect("length |G| n");
        }
        Subspace::span(&rows, f)
    }

    /// Rows of the bar differential `d1` for the pair `(g, h)`: `c(gh) - c(g) - g c(h)`.
    fn d1_rows(&self, g: usize, h: usize, gh: usize) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let n = self.dim;
        let cols = self.order() * n;
        (0..n)
            .map(|i| {
                let mut row = vec![0; cols];
                row[gh * n + i] = f.add(row[gh * n + i], 1);
                row[g * n + i] = f.sub(row[g * n + i], 1);
                for j in 0..n {
                    let a = self.actions[g].get(i, j);
                    row[h * n + j] = f.sub(row[h * n + j], a);
                }
                row
            })
            .collect()
    }

    /// The space `Z^1` of 1-cocycles as the kernel of `d1`.
    pub fn cocycles_1(&self) -> Subspace {
        let f = &self.field;
        let cols = self.order() * self.dim;
        let mut builder = EchelonBuilder::new(cols);
        // rows with h a generator already cut out Z^1: the remaining ones follow by induction on word length
        for g in 0..self.order() {
            for (s, &h) in self.gens.iter().enumerate() {
                for row in self.d1_rows(g, h, self.right[g][s]) {
                    builder.insert(row, f);
                }
            }
        }
        // c(1) = 0 is the (g, h) = (1, 1) row
        for row in self.d1_rows(0, 0, 0) {
            builder.insert(row, f);
        }
        Subspace::span(&builder.into_matrix().kernel(f), f)
    }

    /// Checks the cocycle identity of a 1-cochain on every pair of group elements.
    pub fn is_cocycle_1(&self, c: &[Elem]) -> bool {
        let f = &self.field;
        let n = self.dim;
        for g in 0..self.order() {
            for h in 0..self.order() {
                let gh = self.mul(g, h);
                let gc = self.actions[g]
                    .apply(&c[h * n..(h + 1) * n], f)
                    .expect("length n");
                for i in 0..n {
                    if c[gh * n + i] != f.add(c[g * n + i], gc[i]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `H^degree(G, M)` for `degree` in `{0, 1, 2}` from the bar resolution.
pub fn finite_cohomology(
    g: &FiniteGroupAction,
    degree: usize,
    cochain_limit: usize,
) -> Result<GroupCohomology> {
    let f = g.field();
    match degree {
        0 => {
            let inv = g.invariants();
            Ok(GroupCohomology {
                degree,
                dim: inv.dim(),
                basis: Some(inv.basis().clone()),
            })
        }
        1 => {
            let z1 = g.cocycles_1();
            let b1 = g.coboundaries_1();
            let q = Quotient::new(&z1, &b1, f)?;
            Ok(GroupCohomology {
                degree,
                dim: q.dim(),
                basis: Some(q.basis().clone()),
            })
        }
        2 => {
            let n = g.module_dim();
            let order = g.order();
            let cols = order * order * n;
            if cols > cochain_limit {
                return Err(Error::CochainLimit(cols));
            }
            let rank_d1 = order * n - g.cocycles_1().dim();
            let mut table = vec![0usize; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = g.mul(a, b);
                }
            }
            let idx = |a: usize, b: usize, i: usize| (a * order + b) * n + i;
            let mut builder = EchelonBuilder::new(cols);
            let target = cols - rank_d1;
            'outer: for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b];
                    for c in 0..order {
                        let bc = table[b * order + c];
                        // a z(b,c) - z(ab,c) + z(a,bc) - z(a,b)
                        for i in 0..n {
                            let mut row = vec![0; cols];
                            for j in 0..n {
                                let v = g.action(a).get(i, j);
                                row[idx(b, c, j)] = f.add(row[idx(b, c, j)], v);
                            }
                            row[idx(ab, c, i)] = f.sub(row[idx(ab, c, i)], 1);
                            row[idx(a, bc, i)] = f.add(row[idx(a, bc, i)], 1);
                            row[idx(a, b, i)] = f.sub(row[idx(a, b, i)], 1);
                            builder.insert(row, f);
                            if builder.rank() == target {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            let z2 = cols - builder.rank();
            Ok(GroupCohomology {
                degree,
                dim: z2 - rank_d1,
                basis: None,
            })
        }
        _ => Err(Error::OutOfRange {
            value: degree as i64,
            lo: 0,
            hi: 2,
        }),
    }
}

/// `Ad(g)` on `sl_n` in the basis `E_ij (i != j)` row-major, then `E_ii - E_{i+1,i+1}`.
pub fn sl_adjoint(field: &Fq, g: &Matrix) -> Result<Matrix> {
    let n = g.nrows();
    let gi = g.inverse(field)?;
    let mut basis: Vec<Matrix> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = Matrix::zeros(n, n);
                e.set(i, j, 1);
                basis.push(e);
            }
        }
    }
    for i in 0..n - 1 {
        let mut h = Matrix::zeros(n, n);
        h.set(i, i, 1);
        h.set(i + 1, i + 1, field.neg(1));
        basis.push(h);
    }
    let d = basis.len();
    let mut out = Matrix::zeros(d, d);
    for (c, x) in basis.iter().enumerate() {
        let y = g.mul(x, field)?.mul(&gi, field)?;
        let mut r = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.set(r, c, y.get(i, j));
                    r += 1;
                }
            }
        }
        let mut acc = 0;
        for i in 0..n - 1 {
            acc = field.add(acc, y.get(i, i));
            out.set(r + i, c, acc);
        }
    }
    Ok(out)
}

//! Split reductive root data: roots, coroots, the Weyl group and dimension bookkeeping.
//!
//! Roots are stored in simple-root coordinates and coroots in simple-coroot
//! coordinates; the pairing `<beta, gamma^vee>` is evaluated through the
//! Cartan matrix `C[i][j] = <alpha_i, alpha_j^vee>`.

mod cartan;
mod certificate;
mod lattice;
pub(crate) mod torus;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub use cartan::{CartanType, Family};
pub use certificate::{RootPairingCertificate, CONTROL_TARGET};
pub use lattice::{parallel_cocharacter_check, theta_involution, LatticeKind, ThetaImage, Weight};
pub use torus::{RamakrishnaRoots, TorusElement};

const MAX_ROOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    components: Vec<CartanType>,
    cartan: Vec<Vec<i64>>,
    central_rank: usize,
    /// Positive roots sorted by height, simple roots first in index order.
    positive: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

/// `(dim g0, dim n, dim b0, dim t0, Coxeter number, #Z of the simply connected cover)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionProfile {
    pub dim_g0: usize,
    pub dim_n: usize,
    pub dim_b0: usize,
    pub dim_t0: usize,
    pub coxeter_number: usize,
    pub center_order: u64,
}

impl DimensionProfile {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize, u64) {
        (
            self.dim_g0,
            self.dim_n,
            self.dim_b0,
            self.dim_t0,
            self.coxeter_number,
            self.center_order,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestElement {
    /// Simple reflection indices, leftmost applied last.
    pub reduced_word: Vec<usize>,
    /// `minus_w0[i] = j` when `-w0(alpha_i) = alpha_j`.
    pub minus_w0: Vec<usize>,
}

impl RootDatum {
    /// Root datum with the given irreducible components and `central_rank` extra central coordinates.
    pub fn new(components: &[CartanType], central_rank: usize) -> Result<Self> {
        let mut cartan: Vec<Vec<i64>> = Vec::new();
        for ct in components {
            let block = ct.cartan_matrix();
            let offset = cartan.len();
            let n = offset + block.len();
            for row in cartan.iter_mut() {
                row.resize(n, 0);
            }
            for brow in block {
                let mut row = vec![0; offset];
                row.extend(brow);
                cartan.push(row);
            }
        }
        Self::assemble(components.to_vec(), cartan, central_rank)
    }

    /// Parses a whitespace, comma or `x` separated list such as `"A2"` or `"A1 x B2"`.
    pub fn parse(spec: &str, central_rank: usize) -> Result<Self> {
        let parts: Vec<CartanType> = spec
            .split(|c: char| c == ',' || c == 'x' || c == '+' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        Self::new(&parts, central_rank)
    }

    /// `GL_n` as `A_{n-1}` with one central coordinate.
    pub fn gl(n: usize) -> Result<Self> {
        Self::new(&[CartanType::new(Family::A, n - 1)?], 1)
    }

    /// Builds a datum from an explicit Cartan matrix; the family list is left empty.
    pub fn from_cartan(cartan: Vec<Vec<i64>>, central_rank: usize) -> Result<Self> {
        cartan::validate_cartan(&cartan)?;
        Self::assemble(Vec::new(), cartan, central_rank)
    }

    fn assemble(
        components: Vec<CartanType>,
        cartan: Vec<Vec<i64>>,
        central_rank: usize,
    ) -> Result<Self> {
        cartan::validate_cartan(&cartan)?;
        let (positive, positive_coroots) = enumerate_positive(&cartan)?;
        let mut index = HashMap::new();
        for (i, r) in positive.iter().enumerate() {
            index.insert(r.clone(), i);
        }
        let np = positive.len();
        for (i, r) in positive.iter().enumerate() {
            index.insert(r.iter().map(|x| -x).collect(), np + i);
        }
        Ok(RootDatum {
            components,
            cartan,
            central_rank,
            positive,
            positive_coroots,
            index,
        })
    }

    pub fn components(&self) -> &[CartanType] {
        &self.components
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn semisimple_rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn central_rank(&self) -> usize {
        self.central_rank
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.central_rank
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Root with index `i`: positive roots first, then their negatives in the same order.
    pub fn root(&self, i: usize) -> Vec<i64> {
        let np = self.positive.len();
        if i < np {
            self.positive[i].clone()
        } else {
            self.positive[i - np].iter().map(|x| -x).collect()
        }
    }

    pub fn coroot(&self, i: usize) -> Vec<i64> {
        let np = self.positive.len();
        if i < np {
            self.positive_coroots[i].clone()
        } else {
            self.positive_coroots[i - np].iter().map(|x| -x).collect()
        }
    }

    pub fn roots(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.num_roots()).map(move |i| self.root(i))
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// Index of the negative of root `i`.
    pub fn negative_index(&self, i: usize) -> usize {
        let np = self.positive.len();
        if i < np {
            i + np
        } else {
            i - np
        }
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        self.positive[i].clone()
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// `<beta, gamma^vee>` for `beta` in root coordinates and `gamma^vee` in coroot coordinates.
    pub fn pairing(&self, root: &[i64], coroot: &[i64]) -> i64 {
        let n = self.semisimple_rank();
        let mut s = 0;
        for i in 0..n {
            if root[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += root[i] * coroot[j] * self.cartan[i][j];
            }
        }
        s
    }

    /// Simple reflection `s_j` on a root-coordinate vector.
    pub fn reflect_root(&self, j: usize, root: &[i64]) -> Vec<i64> {
        let c: i64 = (0..self.semisimple_rank())
            .map(|i| root[i] * self.cartan[i][j])
            .sum();
        let mut out = root.to_vec();
        out[j] -= c;
        out
    }

    /// Simple reflection `s_j` on a coroot-coordinate vector.
    pub fn reflect_coroot(&self, j: usize, coroot: &[i64]) -> Vec<i64> {
        let c: i64 = (0..self.semisimple_rank())
            .map(|k| coroot[k] * self.cartan[j][k])
            .sum();
        let mut out = coroot.to_vec();
        out[j] -= c;
        out
    }

    /// Sum of the positive coroots, i.e. `2 rho^vee`, in coroot coordinates.
    pub fn two_rho_vee(&self) -> Vec<i64> {
        let mut out = vec![0; self.semisimple_rank()];
        for c in &self.positive_coroots {
            for (o, x) in out.iter_mut().zip(c) {
                *o += x;
            }
        }
        out
    }

    pub fn highest_root_height(&self) -> i64 {
        self.positive
            .iter()
            .map(|r| Self::height(r))
            .max()
            .unwrap_or(0)
    }

    /// Coxeter number; for reducible data the maximum over components.
    pub fn coxeter_number(&self) -> usize {
        if self.semisimple_rank() == 0 {
            return 0;
        }
        let mut best = 0;
        for comp in self.connected_components() {
            let h = self
                .positive
                .iter()
                .filter(|r| comp.iter().any(|&i| r[i] != 0))
                .map(|r| Self::height(r))
                .max()
                .unwrap_or(0);
            best = best.max(h as usize + 1);
        }
        best
    }

    /// Order of the center of the simply connected cover of the derived group.
    pub fn center_order(&self) -> u64 {
        if self.components.is_empty() {
            return determinant(&self.cartan).unsigned_abs();
        }
        self.components.iter().map(|c| c.center_order()).product()
    }

    pub fn dimension_profile(&self) -> DimensionProfile {
        let np = self.num_positive_roots();
        let rss = self.semisimple_rank();
        DimensionProfile {
            dim_g0: 2 * np + rss,
            dim_n: np,
            dim_b0: np + rss,
            dim_t0: rss,
            coxeter_number: self.coxeter_number(),
            center_order: self.center_order(),
        }
    }

    /// Dimension of `g`, including the central torus.
    pub fn dim_g(&self) -> usize {
        self.dimension_profile().dim_g0 + self.central_rank
    }

    /// Longest Weyl element by descent from `rho`, lowest simple index first.
    pub fn longest_element(&self) -> Result<LongestElement> {
        let n = self.semisimple_rank();
        if n == 0 {
            return Err(Error::NoSemisimplePart);
        }
        let mut lambda = vec![1i64; n];
        let mut word = Vec::new();
        while let Some(i) = (0..n).find(|&i| lambda[i] > 0) {
            let li = lambda[i];
            for (j, l) in lambda.iter_mut().enumerate() {
                *l -= li * self.cartan[i][j];
            }
            word.push(i);
        }
        // w0 = s_{word[k-1]} ... s_{word[0]}; apply rightmost first
        let apply = |root: &[i64]| {
            word.iter()
                .fold(root.to_vec(), |acc, &j| self.reflect_root(j, &acc))
        };
        let mut minus_w0 = Vec::with_capacity(n);
        for i in 0..n {
            let img: Vec<i64> = apply(&self.simple_root(i)).iter().map(|x| -x).collect();
            let j = (0..n).find(|&j| self.positive[j] == img).ok_or_else(|| {
                Error::InconsistentCartan("-w0 does not permute simple roots".into())
            })?;
            minus_w0.push(j);
        }
        word.reverse();
        Ok(LongestElement {
            reduced_word: word,
            minus_w0,
        })
    }

    /// Applies a Weyl word (leftmost applied last) to a root.
    pub fn apply_word_to_root(&self, word: &[usize], root: &[i64]) -> Vec<i64> {
        word.iter()
            .rev()
            .fold(root.to_vec(), |acc, &j| self.reflect_root(j, &acc))
    }

    /// Dimension of the `r`-th step of the height filtration of `b`.
    pub fn borel_height_filtration(&self, r: usize) -> usize {
        if r == 0 {
            return self.dimension_profile().dim_b0 + self.central_rank;
        }
        self.positive
            .iter()
            .filter(|root| Self::height(root) >= r as i64)
            .count()
    }

    pub fn is_very_good_prime(&self, p: u64) -> bool {
        if self.components.is_empty() {
            return p % 2 == 1 && self.center_order() % p != 0;
        }
        self.components.iter().all(|c| c.is_very_good(p))
    }

    /// Groups simple root indices into connected components of the Dynkin diagram.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.semisimple_rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(i) = queue.pop_front() {
                comp.push(i);
                for j in 0..n {
                    if !seen[j] && self.cartan[i][j] != 0 {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn label(&self) -> String {
        let mut s = if self.components.is_empty() {
            format!("rank-{} datum", self.semisimple_rank())
        } else {
            self.components
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("x")
        };
        if self.central_rank > 0 {
            s.push_str(&format!(" + T^{}", self.central_rank));
        }
        s
    }
}

fn enumerate_positive(cartan: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let n = cartan.len();
    let mut found: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        found.insert(e.clone(), e.clone());
        queue.push_back(e);
    }
    while let Some(root) = queue.pop_front() {
        let coroot = found[&root].clone();
        for j in 0..n {
            let c: i64 = (0..n).map(|i| root[i] * cartan[i][j]).sum();
            if c == 0 {
                continue;
            }
            let mut img = root.clone();
            img[j] -= c;
            if img.iter().any(|&x| x < 0) {
                continue;
            }
            if found.contains_key(&img) {
                continue;
            }
            let d: i64 = (0..n).map(|k| coroot[k] * cartan[j][k]).sum();
            let mut coimg = coroot.clone();
            coimg[j] -= d;
            found.insert(img.clone(), coimg);
            if found.len() > MAX_ROOTS {
                return Err(Error::InconsistentCartan(
                    "root system is not finite".into(),
                ));
            }
            queue.push_back(img);
        }
    }
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = found.into_iter().collect();
    pairs.sort_by(|a, b| {
        let ha = RootDatum::height(&a.0);
        let hb = RootDatum::height(&b.0);
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    Ok(pairs.into_iter().unzip())
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    // fraction-free Bareiss elimination
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s, 0).unwrap()
    }

    #[test]
    fn gl2_profile() {
        let gl2 = RootDatum::gl(2).unwrap();
        assert_eq!(gl2.num_roots(), 2);
        let p = gl2.dimension_profile();
        assert_eq!((p.dim_n, p.dim_t0), (1, 1));
        assert_eq!(gl2.dim_g(), 4);
    }

    #[test]
    fn a2_heights() {
        let a2 = rd("A2");
        let heights: Vec<i64> = a2
            .positive_roots()
            .iter()
            .map(|r| RootDatum::height(r))
            .collect();
        assert_eq!(heights, vec![1, 1, 2]);
        assert_eq!(a2.positive_roots()[0], vec![1, 0]);
    }

    #[test]
    fn profiles_of_small_types() {
        assert_eq!(rd("A1").dimension_profile().as_tuple(), (3, 1, 2, 1, 2, 2));
        assert_eq!(rd("A2").dimension_profile().as_tuple(), (8, 3, 5, 2, 3, 3));
        assert_eq!(rd("B2").dimension_profile().as_tuple(), (10, 4, 6, 2, 4, 2));
        let g2 = rd("G2");
        assert_eq!(g2.num_roots(), 12);
        assert_eq!(g2.coxeter_number(), 6);
    }

    #[test]
    fn center_order_matches_determinant() {
        for t in [
            "A1", "A3", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
        ] {
            let r = rd(t);
            assert_eq!(
                r.center_order() as i64,
                determinant(r.cartan_matrix()),
                "{t}"
            );
        }
    }

    #[test]
    fn coroots_are_dual() {
        for t in ["B3", "C3", "G2", "F4"] {
            let r = rd(t);
            for i in 0..r.num_roots() {
                let root = r.root(i);
                let coroot = r.coroot(i);
                assert_eq!(r.pairing(&root, &coroot), 2, "{t} root {i}");
            }
        }
    }

    #[test]
    fn longest_elements() {
        assert_eq!(rd("A1").longest_element().unwrap().minus_w0, vec![0]);
        assert_eq!(rd("A2").longest_element().unwrap().minus_w0, vec![1, 0]);
        assert_eq!(rd("B2").longest_element().unwrap().minus_w0, vec![0, 1]);
        assert_eq!(
            rd("D5").longest_element().unwrap().minus_w0,
            vec![0, 1, 2, 4, 3]
        );
        assert_eq!(
            rd("D4").longest_element().unwrap().minus_w0,
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            rd("E6").longest_element().unwrap().minus_w0,
            vec![5, 1, 4, 3, 2, 0]
        );
        let a3 = rd("A3");
        let w0 = a3.longest_element().unwrap();
        assert_eq!(w0.reduced_word.len(), a3.num_positive_roots());
        assert!(matches!(
            RootDatum::new(&[], 1).unwrap().longest_element(),
            Err(Error::NoSemisimplePart)
        ));
    }

    #[test]
    fn height_filtration() {
        let a1 = rd("A1");
        assert_eq!(
            (a1.borel_height_filtration(1), a1.borel_height_filtration(2)),
            (1, 0)
        );
        let a2 = rd("A2");
        assert_eq!(
            (a2.borel_height_filtration(1), a2.borel_height_filtration(2)),
            (3, 1)
        );
        assert_eq!(rd("B2").borel_height_filtration(2), 2);
    }

    #[test]
    fn very_good_primes() {
        assert!(rd("A1").is_very_good_prime(5));
        assert!(!rd("A4").is_very_good_prime(5));
        assert!(!rd("G2").is_very_good_prime(3));
        assert!(!rd("E8").is_very_good_prime(5));
        assert!(rd("E8").is_very_good_prime(7));
    }

    #[test]
    fn rejects_bad_cartan() {
        assert!(matches!(
            RootDatum::from_cartan(vec![vec![2, 1], vec![-1, 2]], 0),
            Err(Error::InconsistentCartan(_))
        ));
        // affine A1 is not of finite type
        assert!(matches!(
            RootDatum::from_cartan(vec![vec![2, -2], vec![-2, 2]], 0),
            Err(Error::InconsistentCartan(_))
        ));
    }
}

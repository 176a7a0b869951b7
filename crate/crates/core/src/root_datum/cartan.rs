use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// An irreducible Cartan type such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            });
        }
        Ok(CartanType { family, rank })
    }

    /// Order of the center of the simply connected group.
    pub fn center_order(self) -> u64 {
        match self.family {
            Family::A => self.rank as u64 + 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E => match self.rank {
                6 => 3,
                7 => 2,
                _ => 1,
            },
            Family::F | Family::G => 1,
        }
    }

    /// Primes that are not very good for this type.
    pub fn is_very_good(self, p: u64) -> bool {
        match self.family {
            Family::A => (self.rank as u64 + 1) % p != 0,
            Family::B | Family::C | Family::D => p != 2,
            Family::E if self.rank == 8 => !matches!(p, 2 | 3 | 5),
            Family::E | Family::F | Family::G => !matches!(p, 2 | 3),
        }
    }

    /// Cartan matrix with `C[i][j] = <alpha_i, alpha_j^vee>`, Bourbaki numbering.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        // squared lengths and inner products of adjacent simple roots
        let mut len = vec![2i64; n];
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        match self.family {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    edges.push((i, i + 1, -1));
                }
            }
            Family::B => {
                for l in len.iter_mut().take(n - 1) {
                    *l = 4;
                }
                for i in 0..n - 2 {
                    edges.push((i, i + 1, -2));
                }
                edges.push((n - 2, n - 1, -2));
            }
            Family::C => {
                len[n - 1] = 4;
                for i in 0..n - 2 {
                    edges.push((i, i + 1, -1));
                }
                edges.push((n - 2, n - 1, -2));
            }
            Family::D => {
                for i in 0..n - 2 {
                    edges.push((i, i + 1, -1));
                }
                edges.push((n - 3, n - 1, -1));
            }
            Family::E => {
                edges.push((0, 2, -1));
                edges.push((1, 3, -1));
                for i in 2..n - 1 {
                    edges.push((i, i + 1, -1));
                }
            }
            Family::F => {
                len = vec![4, 4, 2, 2];
                edges = vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)];
            }
            Family::G => {
                len = vec![2, 6];
                edges = vec![(0, 1, -3)];
            }
        }
        let mut ip = vec![vec![0i64; n]; n];
        for i in 0..n {
            ip[i][i] = len[i];
        }
        for &(i, j, v) in &edges {
            ip[i][j] = v;
            ip[j][i] = v;
        }
        (0..n)
            .map(|i| (0..n).map(|j| 2 * ip[i][j] / len[j]).collect())
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::UnknownFamily(s.into()))?;
        let family = Family::from_letter(letter).ok_or_else(|| Error::UnknownFamily(s.into()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownFamily(s.into()))?;
        CartanType::new(family, rank)
    }
}

/// Checks the axioms of a generalized Cartan matrix.
pub(crate) fn validate_cartan(c: &[Vec<i64>]) -> Result<()> {
    let n = c.len();
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InconsistentCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::InconsistentCartan(format!(
                "diagonal entry {i} is {}",
                row[i]
            )));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if c[i][j] > 0 {
                return Err(Error::InconsistentCartan(format!(
                    "entry ({i},{j}) is positive"
                )));
            }
            if (c[i][j] == 0) != (c[j][i] == 0) {
                return Err(Error::InconsistentCartan(format!(
                    "entries ({i},{j}) and ({j},{i}) disagree on vanishing"
                )));
            }
        }
    }
    Ok(())
}

use serde::Serialize;

use super::RootDatum;
use crate::error::{Error, Result};

/// Value of `<alpha, 2 rho^vee>` (and of `<alpha, 4 rho^vee - alpha^vee>`) at a simple root.
pub const CONTROL_TARGET: i64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootPairingCertificate {
    pub alpha: usize,
    /// The cocharacter used, in simple-coroot coordinates.
    pub cocharacter: Vec<i64>,
    pub target: i64,
    /// Every root index `beta` with `<beta, cocharacter> = target`.
    pub matches: Vec<usize>,
    pub unique: bool,
}

impl RootDatum {
    fn pairing_certificate(
        &self,
        alpha: usize,
        cocharacter: Vec<i64>,
    ) -> Result<RootPairingCertificate> {
        let n = self.semisimple_rank();
        if n == 0 {
            return Err(Error::NoSemisimplePart);
        }
        if alpha >= n {
            return Err(Error::OutOfRange {
                value: alpha as i64,
                lo: 0,
                hi: n as i64 - 1,
            });
        }
        let target = self.pairing(&self.simple_root(alpha), &cocharacter);
        let matches: Vec<usize> = (0..self.num_roots())
            .filter(|&i| self.pairing(&self.root(i), &cocharacter) == target)
            .collect();
        let unique = matches == [alpha];
        Ok(RootPairingCertificate {
            alpha,
            cocharacter,
            target,
            matches,
            unique,
        })
    }

    /// Exhaustive check that `alpha` is the only root pairing to 2 with `4 rho^vee - alpha^vee`.
    pub fn unique_root_certificate(&self, alpha: usize) -> Result<RootPairingCertificate> {
        let mut c: Vec<i64> = self.two_rho_vee().iter().map(|x| 2 * x).collect();
        if alpha < c.len() {
            c[alpha] -= 1;
        }
        self.pairing_certificate(alpha, c)
    }

    /// The same check with `2 rho^vee`, which singles out `alpha` only in rank one.
    pub fn two_rho_control(&self, alpha: usize) -> Result<RootPairingCertificate> {
        self.pairing_certificate(alpha, self.two_rho_vee())
    }
}

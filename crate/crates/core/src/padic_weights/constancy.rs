use serde::Serialize;

use super::padic::{teichmuller_budget, PadicInt};
use super::series::{weierstrass_data, Direction, TruncatedSeries};
use crate::error::{Error, Result};

/// Along `direction`, `g - zeta` is `p^content` times a series with `degree` zeros in the open disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeierstrassBound {
    pub zeta: PadicInt,
    pub direction: Direction,
    pub content: u32,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Constancy {
    Constant(PadicInt),
    NonconstantWitness(WeierstrassBound),
}

fn directions(vars: usize) -> impl Iterator<Item = Direction> {
    (0..vars).map(Direction::Axis).chain((vars > 1).then_some(Direction::Diagonal))
}

/// The first direction along which `g - zeta` is nonzero, with its Weierstrass data.
pub fn weierstrass_bound(g: &TruncatedSeries, zeta: &PadicInt) -> Result<Option<WeierstrassBound>> {
    let k = TruncatedSeries::constant(g.p(), g.precision(), g.degree_cap(), g.vars(), zeta)?;
    let h = g.sub(&k)?;
    for dir in directions(g.vars()) {
        let line = h.restrict(dir)?;
        if line.is_zero() {
            continue;
        }
        let w = weierstrass_data(&line)?;
        return Ok(Some(WeierstrassBound {
            zeta: *zeta,
            direction: dir,
            content: w.content,
            degree: w.normalized_degree,
        }));
    }
    Ok(None)
}

/// Decides whether a unit series is a root of unity from `budget`, at its precision.
pub fn constancy_test(g: &TruncatedSeries, budget: &[PadicInt]) -> Result<Constancy> {
    if budget.is_empty() {
        return Err(Error::EmptyBudget);
    }
    if !g.is_unit() {
        return Err(Error::NotUnit);
    }
    for z in budget {
        let k = TruncatedSeries::constant(g.p(), g.precision(), g.degree_cap(), g.vars(), z)?;
        if g.sub(&k)?.is_zero() {
            return Ok(Constancy::Constant(*z));
        }
    }
    let c0 = g.constant_term().reduction();
    let zeta = budget.iter().find(|z| z.reduction() == c0).unwrap_or(&budget[0]);
    match weierstrass_bound(g, zeta)? {
        Some(b) => Ok(Constancy::NonconstantWitness(b)),
        None => Err(Error::Undetermined {
            n: g.precision(),
            d: g.degree_cap(),
        }),
    }
}

/// Runs `constancy_test` on `source(n, d)`, doubling both caps once when no unit coefficient
/// certifies the witness.
pub fn constancy_test_escalating(
    source: impl Fn(u32, u32) -> Result<TruncatedSeries>,
    n: u32,
    d: u32,
) -> Result<(Constancy, u32, u32)> {
    let mut caps = (n, d);
    let mut escalated = false;
    loop {
        let g = source(caps.0, caps.1)?;
        let budget = teichmuller_budget(g.p(), g.precision())?;
        let verdict = constancy_test(&g, &budget);
        let settled = match &verdict {
            Ok(Constancy::NonconstantWitness(b)) => b.content == 0,
            Err(Error::Undetermined { .. }) => false,
            _ => true,
        };
        if settled || escalated {
            return verdict.map(|v| (v, caps.0, caps.1));
        }
        escalated = true;
        caps = (2 * caps.0, 2 * caps.1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(p: u64, n: u32, d: u32, terms: &[(u32, i64)]) -> Result<TruncatedSeries> {
        let t: Vec<_> = terms.iter().map(|&(i, c)| (vec![i], c)).collect();
        TruncatedSeries::from_terms(p, n, d, 1, &t)
    }

    #[test]
    fn constant_root_of_unity() {
        let budget = teichmuller_budget(5, 8).unwrap();
        let z4 = budget[1];
        let g = TruncatedSeries::constant(5, 8, 6, 1, &z4).unwrap();
        assert_eq!(constancy_test(&g, &budget).unwrap(), Constancy::Constant(z4));
        assert_eq!(constancy_test(&g, &[]), Err(Error::EmptyBudget));
    }

    #[test]
    fn one_plus_x_is_nonconstant() {
        let budget = teichmuller_budget(5, 8).unwrap();
        let g = one_var(5, 8, 6, &[(0, 1), (1, 1)]).unwrap();
        match constancy_test(&g, &budget).unwrap() {
            Constancy::NonconstantWitness(b) => {
                assert_eq!(b.zeta.residue(), 1);
                assert_eq!((b.content, b.degree), (0, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn escalation_finds_a_late_unit() {
        // 1 + 5X + X^8: no unit beyond the constant below degree 8
        let src = |n, d| one_var(5, n, d, &[(0, 1), (1, 5), (8, 1)]);
        let (v, n, d) = constancy_test_escalating(src, 4, 6).unwrap();
        assert_eq!((n, d), (8, 12));
        match v {
            Constancy::NonconstantWitness(b) => assert_eq!((b.content, b.degree), (0, 8)),
            other => panic!("{other:?}"),
        }
        let src = |n, d| one_var(5, n, d, &[(0, 1), (1, 5)]);
        let (v, _, _) = constancy_test_escalating(src, 4, 6).unwrap();
        assert!(matches!(v, Constancy::NonconstantWitness(WeierstrassBound { content: 1, degree: 1, .. })));
    }

    #[test]
    fn mixed_terms_use_the_diagonal() {
        let budget = teichmuller_budget(7, 4).unwrap();
        let g = TruncatedSeries::from_terms(7, 4, 4, 2, &[(vec![0, 0], 1), (vec![1, 1], 1)]).unwrap();
        match constancy_test(&g, &budget).unwrap() {
            Constancy::NonconstantWitness(b) => assert_eq!((b.direction, b.degree), (Direction::Diagonal, 2)),
            other => panic!("{other:?}"),
        }
        let g = TruncatedSeries::from_terms(7, 4, 4, 2, &[(vec![0, 0], 1), (vec![2, 1], 1), (vec![1, 2], -1)]).unwrap();
        assert_eq!(constancy_test(&g, &budget), Err(Error::Undetermined { n: 4, d: 4 }));
    }
}

//! Dimension counts: archimedean bounds, oddness, Wiles's formula and the CM parameter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, Fq};
use crate::linalg::Matrix;
use crate::root_datum::RootDatum;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSignature {
    pub degree: u32,
    pub real_places: u32,
    pub complex_places: u32,
    pub cm: bool,
    /// `[F_v : Q_p]` for each place `v | p`.
    pub local_degrees: Vec<u32>,
    /// Conjugate pairs `(w, w-bar)` of places above `p`, as indices into `local_degrees`.
    #[serde(default)]
    pub cm_pairs: Vec<(usize, usize)>,
}

impl FieldSignature {
    pub fn new(
        degree: u32,
        real_places: u32,
        complex_places: u32,
        cm: bool,
        local_degrees: Vec<u32>,
        cm_pairs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let s = FieldSignature {
            degree,
            real_places,
            complex_places,
            cm,
            local_degrees,
            cm_pairs,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Signature("degree must be positive".into()));
        }
        if self.real_places + 2 * self.complex_places != self.degree {
            return Err(Error::Signature(format!(
                "r1 + 2 r2 = {} differs from the degree {}",
                self.real_places + 2 * self.complex_places,
                self.degree
            )));
        }
        if self.local_degrees.iter().sum::<u32>() != self.degree || self.local_degrees.contains(&0) {
            return Err(Error::Signature("local degrees above p must be positive and sum to the degree".into()));
        }
        if self.cm && (self.real_places != 0 || self.degree % 2 != 0) {
            return Err(Error::Signature("a CM field is totally imaginary of even degree".into()));
        }
        let mut used = vec![false; self.local_degrees.len()];
        for &(w, wb) in &self.cm_pairs {
            if !self.cm {
                return Err(Error::NotCm);
            }
            if w >= used.len() || wb >= used.len() || w == wb || used[w] || used[wb] {
                return Err(Error::Signature(format!("bad conjugate pair ({w}, {wb})")));
            }
            if self.local_degrees[w] != self.local_degrees[wb] {
                return Err(Error::Signature(format!("paired places {w} and {wb} have different local degrees")));
            }
            used[w] = true;
            used[wb] = true;
        }
        Ok(())
    }

    pub fn rational() -> Self {
        FieldSignature {
            degree: 1,
            real_places: 1,
            complex_places: 0,
            cm: false,
            local_degrees: vec![1],
            cm_pairs: Vec::new(),
        }
    }

    /// A totally real field of the given degree in which `p` splits completely.
    pub fn totally_real(degree: u32) -> Self {
        FieldSignature {
            degree,
            real_places: degree,
            complex_places: 0,
            cm: false,
            local_degrees: vec![1; degree as usize],
            cm_pairs: Vec::new(),
        }
    }

    /// A CM field of the given even degree in which `p` splits completely.
    pub fn split_cm(degree: u32) -> Result<Self> {
        let pairs = (0..degree as usize / 2).map(|i| (2 * i, 2 * i + 1)).collect();
        FieldSignature::new(degree, 0, degree / 2, true, vec![1; degree as usize], pairs)
    }

    pub fn imaginary_quadratic() -> Self {
        FieldSignature::split_cm(2).expect("valid signature")
    }

    pub fn is_totally_real(&self) -> bool {
        self.complex_places == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PMode {
    Ordinary,
    NearlyOrdinary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AwayPlace {
    pub label: String,
    pub dim_l: usize,
    pub h0: usize,
}

impl AwayPlace {
    /// A place with `dim L_v = h^0`, such as a Ramakrishna prime.
    pub fn balanced(label: impl Into<String>, h0: usize) -> Self {
        AwayPlace {
            label: label.into(),
            dim_l: h0,
            h0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub rd: RootDatum,
    pub signature: FieldSignature,
    pub mode: PMode,
    /// `h^0(Gamma_{F_v}, g^0)` at each place above `p`.
    pub h0_at_p: Vec<usize>,
    /// `h^0` at each real place; odd involutions by default.
    pub real_h0: Vec<usize>,
    pub away: Vec<AwayPlace>,
    pub global_h0: usize,
    pub global_h0_twist: usize,
    /// Similitude character fixed, so counts use `g^0` rather than `g`.
    pub fixed_multiplier: bool,
}

/// The Lie algebra dimensions that enter the counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AmbientDims {
    pub g: usize,
    pub b: usize,
    pub n: usize,
    pub t: usize,
}

impl Scenario {
    /// Odd real places, zero local `h^0` above `p`, vanishing global terms, no extra places.
    pub fn new(rd: RootDatum, signature: FieldSignature, mode: PMode) -> Result<Self> {
        signature.validate()?;
        let dim_n = rd.num_positive_roots();
        Ok(Scenario {
            h0_at_p: vec![0; signature.local_degrees.len()],
            real_h0: vec![dim_n; signature.real_places as usize],
            away: Vec::new(),
            global_h0: 0,
            global_h0_twist: 0,
            fixed_multiplier: true,
            rd,
            signature,
            mode,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.signature.validate()?;
        if self.h0_at_p.len() != self.signature.local_degrees.len() {
            return Err(Error::Arity(format!(
                "{} h0 values for {} places above p",
                self.h0_at_p.len(),
                self.signature.local_degrees.len()
            )));
        }
        if self.real_h0.len() != self.signature.real_places as usize {
            return Err(Error::Arity(format!(
                "{} h0 values for {} real places",
                self.real_h0.len(),
                self.signature.real_places
            )));
        }
        let dims = self.dims();
        for &h in &self.real_h0 {
            if h < dims.n || h > dims.g {
                return Err(Error::OutOfRange {
                    value: h as i64,
                    lo: dims.n as i64,
                    hi: dims.g as i64,
                });
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> AmbientDims {
        ambient_dims(&self.rd, self.fixed_multiplier)
    }
}

pub fn ambient_dims(rd: &RootDatum, fixed_multiplier: bool) -> AmbientDims {
    let p = rd.dimension_profile();
    let z = if fixed_multiplier { 0 } else { rd.central_rank() };
    AmbientDims {
        g: p.dim_g0 + z,
        b: p.dim_b0 + z,
        n: p.dim_n,
        t: p.dim_t0 + z,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArchimedeanReport {
    /// `sum_{v | infinity} h^0(Gamma_{F_v}, g^0)`.
    pub lhs: usize,
    /// `[F:Q] dim n + C dim t^0`.
    pub rhs: usize,
    pub holds: bool,
    /// `lhs = [F:Q] dim n`, the balance Taylor-Wiles needs.
    pub equality: bool,
}

pub fn archimedean_bound(rd: &RootDatum, sig: &FieldSignature, real_h0: &[usize]) -> Result<ArchimedeanReport> {
    sig.validate()?;
    let prof = rd.dimension_profile();
    if real_h0.len() != sig.real_places as usize {
        return Err(Error::Arity(format!(
            "{} h0 values for {} real places",
            real_h0.len(),
            sig.real_places
        )));
    }
    for &h in real_h0 {
        if h < prof.dim_n || h > prof.dim_g0 {
            return Err(Error::OutOfRange {
                value: h as i64,
                lo: prof.dim_n as i64,
                hi: prof.dim_g0 as i64,
            });
        }
    }
    let lhs = real_h0.iter().sum::<usize>() + sig.complex_places as usize * prof.dim_g0;
    let base = sig.degree as usize * prof.dim_n;
    let rhs = base + sig.complex_places as usize * prof.dim_t0;
    Ok(ArchimedeanReport {
        lhs,
        rhs,
        holds: lhs >= rhs,
        equality: lhs == base && sig.is_totally_real(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OddnessEntry {
    pub h0: usize,
    pub is_odd: bool,
}

/// Fixed-space dimension of each involution of `g^0`, and whether it equals `dim n`.
pub fn oddness_audit(field: &Fq, rd: &RootDatum, involutions: &[Matrix]) -> Result<Vec<OddnessEntry>> {
    let prof = rd.dimension_profile();
    involutions
        .iter()
        .map(|m| {
            if m.nrows() != prof.dim_g0 || m.ncols() != prof.dim_g0 {
                return Err(Error::Dimension(format!(
                    "involution is {}x{}, g^0 has dimension {}",
                    m.nrows(),
                    m.ncols(),
                    prof.dim_g0
                )));
            }
            let id = Matrix::identity(prof.dim_g0);
            if m.mul(m, field)? != id {
                return Err(Error::NotInvolution);
            }
            let h0 = prof.dim_g0 - m.sub(&id, field)?.rank(field);
            Ok(OddnessEntry {
                h0,
                is_odd: h0 == prof.dim_n,
            })
        })
        .collect()
}

/// `Ad(t)` on `g^0` for a torus element of order 2 given by a sign on each simple root,
/// in the basis of positive roots, negative roots, then `t^0`.
pub fn sign_involution(field: &Fq, rd: &RootDatum, signs: &[bool]) -> Result<Matrix> {
    if signs.len() != rd.semisimple_rank() {
        return Err(Error::Arity(format!(
            "{} signs for semisimple rank {}",
            signs.len(),
            rd.semisimple_rank()
        )));
    }
    let minus = field.neg(1);
    let mut diag = Vec::with_capacity(rd.num_roots() + rd.semisimple_rank());
    for i in 0..rd.num_roots() {
        let odd = rd
            .root(i)
            .iter()
            .zip(signs)
            .filter(|(_, &s)| s)
            .map(|(c, _)| c.rem_euclid(2))
            .sum::<i64>()
            % 2
            == 1;
        diag.push(if odd { minus } else { 1 });
    }
    diag.extend(std::iter::repeat(1).take(rd.semisimple_rank()));
    Ok(Matrix::diagonal(&diag))
}

/// `(-1)^{ht}` on root spaces, the image of `-1` under `rho^vee`.
pub fn height_parity_involution(field: &Fq, rd: &RootDatum) -> Result<Matrix> {
    sign_involution(field, rd, &vec![true; rd.semisimple_rank()])
}

/// `dim L_v` at `v | p`: `h^0 + [F_v:Q_p] dim n` (ordinary) or `h^0 + [F_v:Q_p] dim b^0` (nearly ordinary).
pub fn tangent_dim_at_p(mode: PMode, local_degree: u32, rd: &RootDatum, h0: usize) -> usize {
    tangent_dim_with(mode, local_degree, &ambient_dims(rd, true), h0)
}

fn tangent_dim_with(mode: PMode, local_degree: u32, dims: &AmbientDims, h0: usize) -> usize {
    let per = match mode {
        PMode::Ordinary => dims.n,
        PMode::NearlyOrdinary => dims.b,
    };
    h0 + local_degree as usize * per
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WilesReport {
    /// `h^0(Gamma_F, g^0) - h^0(Gamma_F, g^0(1))`.
    pub global_term: i64,
    /// `dim L_v - h^0_v` for each place above `p`.
    pub p_terms: Vec<i64>,
    /// `-h^0_v` for each archimedean place, real places first.
    pub infinity_terms: Vec<i64>,
    pub away_terms: Vec<i64>,
    pub total: i64,
}

/// Right-hand side of Wiles's formula for `h^1_P - h^1_{P^perp}`.
pub fn wiles_difference(s: &Scenario) -> Result<WilesReport> {
    s.validate()?;
    let dims = s.dims();
    let global_term = s.global_h0 as i64 - s.global_h0_twist as i64;
    let p_terms: Vec<i64> = s
        .signature
        .local_degrees
        .iter()
        .zip(&s.h0_at_p)
        .map(|(&f, &h0)| tangent_dim_with(s.mode, f, &dims, h0) as i64 - h0 as i64)
        .collect();
    let mut infinity_terms: Vec<i64> = s.real_h0.iter().map(|&h| -(h as i64)).collect();
    infinity_terms.extend(std::iter::repeat(-(dims.g as i64)).take(s.signature.complex_places as usize));
    let away_terms: Vec<i64> = s.away.iter().map(|v| v.dim_l as i64 - v.h0 as i64).collect();
    let total = global_term
        + p_terms.iter().sum::<i64>()
        + infinity_terms.iter().sum::<i64>()
        + away_terms.iter().sum::<i64>();
    Ok(WilesReport {
        global_term,
        p_terms,
        infinity_terms,
        away_terms,
        total,
    })
}

/// `r = ([F:Q]/2) dim t^0`.
pub fn cm_parameter(sig: &FieldSignature, rd: &RootDatum) -> Result<usize> {
    sig.validate()?;
    if !sig.cm {
        return Err(Error::NotCm);
    }
    Ok(sig.degree as usize / 2 * rd.dimension_profile().dim_t0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeBound {
    pub center_order: u64,
    pub coxeter_number: usize,
    /// `p - 1` must exceed this.
    pub threshold: u64,
    pub prime: u64,
}

/// Smallest very good prime with `p - 1 > max(8 #Z, (h-1) #Z or (2h-2) #Z)`.
pub fn large_image_prime_bound(rd: &RootDatum) -> Result<PrimeBound> {
    if rd.semisimple_rank() == 0 {
        return Err(Error::NoSemisimplePart);
    }
    let z = rd.center_order();
    let h = rd.coxeter_number() as u64;
    let parity = if z % 2 == 0 { (h - 1) * z } else { (2 * h - 2) * z };
    let threshold = (8 * z).max(parity);
    let mut p = threshold + 2;
    while !(is_prime(p) && rd.is_very_good_prime(p)) {
        p += 1;
    }
    Ok(PrimeBound {
        center_order: z,
        coxeter_number: h as usize,
        threshold,
        prime: p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalDims {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

fn check_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

/// Cohomology of `F_p(r)` over `Gamma_{Q_p}`.
pub fn example_local_dims(r: i64, p: u64) -> Result<LocalDims> {
    check_odd_prime(p)?;
    let m = p as i64 - 1;
    let h0 = usize::from(r.rem_euclid(m) == 0);
    let h2 = usize::from(r.rem_euclid(m) == 1);
    Ok(LocalDims {
        h0,
        h1: h0 + h2 + 1,
        h2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    /// `<alpha, 2 rho^vee>` for each simple root.
    pub simple_root_pairings: Vec<i64>,
    /// Exponent `e` with `alpha o rho-bar = kappa^e`, reduced mod `p - 1`.
    pub exponents: Vec<i64>,
    pub local_dims: LocalDims,
    /// `r` avoids `0` and `1` modulo `p - 1`.
    pub twist_ok: bool,
    /// The principal unipotent has order `p`, so the image contains a regular unipotent.
    pub nonsplit: bool,
    /// Whether `r / 2` is an integer; the diagonal of the principal torus needs `kappa^{r/2}`.
    pub half_twist_integral: bool,
}

impl ExampleReport {
    pub fn all_pass(&self) -> bool {
        let m = self.local_dims;
        self.twist_ok && self.nonsplit && (m.h0, m.h1, m.h2) == (0, 1, 0) && self.simple_root_pairings.iter().all(|&x| x == 2)
    }
}

/// Conditions for the principal `SL_2` composed with a non-split extension of `F_p` by `F_p(r)`.
pub fn example_conditions_check(rd: &RootDatum, r: i64, p: u64) -> Result<ExampleReport> {
    check_odd_prime(p)?;
    if !rd.is_very_good_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let m = p as i64 - 1;
    if matches!(r.rem_euclid(m), 0 | 1) {
        return Err(Error::ExcludedTwist(r));
    }
    let two_rho = rd.two_rho_vee();
    let pairings: Vec<i64> = (0..rd.semisimple_rank())
        .map(|i| rd.pairing(&rd.simple_root(i), &two_rho))
        .collect();
    // diag(kappa^{r/2}, kappa^{-r/2}) pulls back along alpha to kappa^{<alpha, 2 rho^vee> r / 2}
    let exponents = pairings.iter().map(|&k| (k * r / 2).rem_euclid(m)).collect();
    Ok(ExampleReport {
        simple_root_pairings: pairings,
        exponents,
        local_dims: example_local_dims(r, p)?,
        twist_ok: true,
        nonsplit: p as usize >= rd.coxeter_number(),
        half_twist_integral: r % 2 == 0,
    })
}

use serde::Serialize;

use super::{ConditionLabel, DualityPairing, LocalCondition, TameGaloisModule, H1};
use crate::error::{Error, Result};
use crate::field::{Elem, Fq};
use crate::linalg::{dot, Matrix, Subspace};
use crate::root_datum::torus::check_q;
use crate::root_datum::{RootDatum, TorusElement};

/// The adjoint module `g^0(e)` for an unramified representation with Frobenius in `T(k)`.
///
/// Basis order: positive root spaces, negative root spaces (both in the datum's
/// root order), then `t^0` in the simple-coroot basis.
#[derive(Debug, Clone)]
pub struct AdjointModule {
    rd: RootDatum,
    t: TorusElement,
    module: TameGaloisModule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub alpha: usize,
    /// Representatives are cocycles valued in `W = t_alpha + g_alpha`.
    pub image_of_w: bool,
    pub dim_l_ram: usize,
    pub h0: usize,
    /// `L^{Ram, perp}` equals the image of `H^1(W^perp(1))`.
    pub perp_is_image: bool,
    pub l_alpha_vanishes: bool,
    pub g_minus_alpha_vanishes: bool,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.image_of_w
            && self.dim_l_ram == self.h0
            && self.perp_is_image
            && self.l_alpha_vanishes
            && self.g_minus_alpha_vanishes
    }
}

impl AdjointModule {
    pub fn new(rd: &RootDatum, t: &TorusElement, q: u64, twist: i64) -> Result<Self> {
        let f = t.field();
        if t.simple_values().len() != rd.semisimple_rank() {
            return Err(Error::Dimension(format!(
                "{} simple-root values for semisimple rank {}",
                t.simple_values().len(),
                rd.semisimple_rank()
            )));
        }
        let mut diag = Vec::with_capacity(rd.num_roots() + rd.semisimple_rank());
        for i in 0..rd.num_roots() {
            diag.push(f.inv(t.value(&rd.root(i)))?);
        }
        diag.extend(std::iter::repeat(1).take(rd.semisimple_rank()));
        let module = TameGaloisModule::unramified(f, Matrix::diagonal(&diag), q)?.twisted(twist);
        Ok(AdjointModule {
            rd: rd.clone(),
            t: t.clone(),
            module,
        })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn torus_element(&self) -> &TorusElement {
        &self.t
    }

    pub fn module(&self) -> &TameGaloisModule {
        &self.module
    }

    pub fn field(&self) -> &Fq {
        self.module.field()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    fn torus_offset(&self) -> usize {
        self.rd.num_roots()
    }

    pub fn twisted(&self, f: i64) -> Self {
        AdjointModule {
            module: self.module.twisted(f),
            ..self.clone()
        }
    }

    /// The certified root `alpha`, if the Frobenius is of Ramakrishna type.
    pub fn is_ramakrishna_type(&self) -> Result<Option<usize>> {
        let roots = self.t.ramakrishna_root_set(&self.rd, self.module.q())?;
        Ok(roots.unique.then(|| roots.roots[0]))
    }

    /// Coefficients of the linear form `alpha` on `t^0` in the coroot basis.
    pub fn root_functional(&self, alpha: usize) -> Vec<Elem> {
        let f = self.field();
        let root = self.rd.root(alpha);
        let c = self.rd.cartan_matrix();
        let n = self.rd.semisimple_rank();
        (0..n)
            .map(|j| f.from_int((0..n).map(|i| root[i] * c[i][j]).sum()))
            .collect()
    }

    /// Coefficient of `alpha^vee` in the `l_alpha`-component of `v`.
    pub fn l_alpha_component(&self, alpha: usize, v: &[Elem]) -> Elem {
        let f = self.field();
        let h = &v[self.torus_offset()..];
        let half = f.inv(f.from_int(2)).expect("p is odd");
        f.mul(dot(&self.root_functional(alpha), h, f), half)
    }

    /// `W = t_alpha + g_alpha` as a subspace of `g^0`.
    pub fn w_subspace(&self, alpha: usize) -> Subspace {
        let f = self.field();
        let n = self.dim();
        let off = self.torus_offset();
        let functional = Matrix::from_rows(&[self.root_functional(alpha)]).expect("one row");
        let mut gens = Matrix::zeros(0, n);
        for h in functional.kernel(f).rows_iter() {
            let mut v = vec![0; off];
            v.extend_from_slice(h);
            gens.push_row(&v).expect("length n");
        }
        let mut e = vec![0; n];
        e[alpha] = 1;
        gens.push_row(&e).expect("length n");
        Subspace::span(&gens, f)
    }

    /// `W^perp` inside the dual space (coordinates dual to the basis of `g^0`).
    pub fn w_perp(&self, alpha: usize) -> Subspace {
        let gram = Matrix::identity(self.dim());
        self.w_subspace(alpha)
            .annihilator(&gram, self.field())
            .expect("ambient matches")
    }

    fn check_alpha(&self, alpha: usize) -> Result<()> {
        check_q(self.field(), self.module.q())?;
        match self.is_ramakrishna_type()? {
            Some(a) if a == alpha => Ok(()),
            _ => Err(Error::NotRamakrishnaRoot(alpha)),
        }
    }

    /// `L^Ram`, the image of `H^1(W)` in `H^1(g^0)`.
    pub fn ramakrishna_subspace(&self, alpha: usize) -> Result<LocalCondition> {
        self.check_alpha(alpha)?;
        let h1 = self.module.h1();
        image_of_submodule(&h1, &self.w_subspace(alpha), ConditionLabel::Ramakrishna)
    }

    /// Checks the four items describing `L^Ram` and its annihilator.
    pub fn lemma_check(&self, alpha: usize) -> Result<LemmaReport> {
        let l_ram = self.ramakrishna_subspace(alpha)?;
        let pairing = DualityPairing::new(&self.module);
        let h1 = pairing.h1();
        let dual_h1 = pairing.dual_h1();
        let f = self.field();
        let n = self.dim();
        let w = self.w_subspace(alpha);

        let reps = l_ram.representatives(h1);
        let image_of_w = reps
            .rows_iter()
            .all(|x| self.module.is_cocycle(x) && w.contains(&x[..n], f) && w.contains(&x[n..], f));

        let perp = pairing.annihilator(&l_ram)?;
        let image = image_of_submodule(dual_h1, &self.w_perp(alpha), ConditionLabel::Custom)?;
        let perp_is_image = perp.space == image.space;

        let l_alpha_vanishes = reps.rows_iter().all(|x| {
            self.l_alpha_component(alpha, &x[..n]) == 0
                && self.l_alpha_component(alpha, &x[n..]) == 0
        });
        // the dual coordinate of g_alpha is the g_{-alpha} line of g^0(1)
        let g_minus_alpha_vanishes = perp
            .representatives(dual_h1)
            .rows_iter()
            .all(|y| y[alpha] == 0 && y[n + alpha] == 0);

        Ok(LemmaReport {
            alpha,
            image_of_w,
            dim_l_ram: l_ram.dim(),
            h0: self.module.cohomology_dims().h0,
            perp_is_image,
            l_alpha_vanishes,
            g_minus_alpha_vanishes,
        })
    }
}

/// Image of `H^1(W) -> H^1(M)` for a Frobenius- and inertia-stable subspace `W`.
pub(crate) fn image_of_submodule(
    h1: &H1,
    w: &Subspace,
    label: ConditionLabel,
) -> Result<LocalCondition> {
    let m = h1.module();
    let f = m.field();
    let n = m.dim();
    let mut pair_gens = Matrix::zeros(0, 2 * n);
    for v in w.basis().rows_iter() {
        let mut a = v.to_vec();
        a.extend(std::iter::repeat(0).take(n));
        pair_gens.push_row(&a)?;
        let mut b = vec![0; n];
        b.extend_from_slice(v);
        pair_gens.push_row(&b)?;
    }
    let ww = Subspace::span(&pair_gens, f);
    let z_w = ww.intersect(h1.cocycles(), f)?;
    h1.condition_from_cocycles(label, z_w.basis())
}

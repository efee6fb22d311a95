//! Differential forms on a patch: multivectors over the dz generators with
//! symbolic coefficients, the exterior differential (through dependent
//! variables), the twisted differential d_H, conjugation, the spinor pairing,
//! and pointwise evaluation.

use crate::clifford::{Algebra, Mv, Repr};
use crate::expr::Expr;
use crate::patch::Patch;
use crate::sample::SamplePoint;
use crate::scalar::FieldScalar;

pub type Form = Mv<Expr>;

pub struct FormSpace {
    pub patch: Patch,
    pub alg: Algebra,
}

impl FormSpace {
    pub fn new(patch: Patch) -> FormSpace {
        let alg = Algebra::exterior(patch.form_names.clone());
        FormSpace { patch, alg }
    }

    pub fn zero(&self) -> Form {
        Mv::zero(Repr::Exterior)
    }

    pub fn scalar(&self, e: Expr) -> Form {
        Mv::scalar(Repr::Exterior, e)
    }

    /// The 1-form generator dz (index as in the patch ordering).
    pub fn d_gen(&self, k: usize) -> Form {
        Mv::generator(Repr::Exterior, k)
    }

    pub fn wedge(&self, a: &Form, b: &Form) -> Form {
        self.alg.wedge(a, b)
    }

    /// Exterior differential; coefficients may depend on the patch radius.
    pub fn d(&self, a: &Form) -> Form {
        let mut out = self.zero();
        for (&mask, c) in &a.terms {
            for k in 0..2 * self.patch.n {
                let dc = self.patch.partial(c, k);
                if dc.is_zero_const() {
                    continue;
                }
                out = out.add(&self.wedge(&self.d_gen(k), &Mv::blade(Repr::Exterior, mask, dc)));
            }
        }
        out
    }

    /// d_H = d + H /\ .
    pub fn d_h(&self, a: &Form, h: &Form) -> Form {
        self.d(a).add(&self.wedge(h, a))
    }

    /// Complex conjugation: coefficients conjugated, dz_k <-> dz_kb.
    pub fn conj(&self, a: &Form) -> Form {
        self.alg.conj_perm(a, &self.patch.conj_perm())
    }

    /// Spinor pairing <a, b>_s: top coefficient of a /\ sigma(b).
    pub fn mukai(&self, a: &Form, b: &Form) -> Expr {
        self.alg.mukai(a, b)
    }

    /// i^{-n} <a, conj a>_s, the normalization integrand.
    pub fn norm_pairing(&self, a: &Form) -> Expr {
        let i_pow = FieldScalar::i()
            .pow(-(self.patch.n as i32))
            .expect("i is invertible");
        self.mukai(a, &self.conj(a)).scale(&i_pow)
    }

    /// Truncated exponential e^a of a 2-form (nilpotent, so the series is
    /// finite: n terms suffice in complex dimension n).
    pub fn exp(&self, a: &Form) -> Form {
        let mut out: Form = Mv::one(Repr::Exterior);
        let mut pow: Form = Mv::one(Repr::Exterior);
        let mut fact = FieldScalar::one();
        for k in 1..=self.patch.n {
            pow = self.wedge(&pow, a);
            fact = fact * FieldScalar::from_int(k as i64);
            let inv = fact.inv().expect("factorial nonzero");
            out = out.add(&pow.scale_field(&inv));
        }
        out
    }

    pub fn eval_at(&self, a: &Form, p: &SamplePoint) -> Mv<FieldScalar> {
        let mut out = Mv::zero(Repr::Exterior);
        for (&mask, c) in &a.terms {
            out.accum(mask, c.eval(p).expect("form coefficient evaluates"));
        }
        out
    }

    /// B-field transform a -> e^b /\ a for a 2-form b. Together with the
    /// shift H -> H - db of the twist it preserves twisted closedness:
    /// d_{H - db}(e^b /\ a) = e^b /\ d_H a.
    pub fn b_transform(&self, b: &Form, a: &Form) -> Form {
        self.wedge(&self.exp(b), a)
    }

    /// Zero test on every coefficient, by sampling points of the patch.
    pub fn form_is_zero(&self, a: &Form, seed: u64, trials: usize) -> bool {
        a.terms
            .values()
            .all(|c| self.patch.is_zero(c, seed, trials).is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_transform_intertwines_twisted_differentials() {
        // d_{H - db}(e^b /\ a) = e^b /\ d_H a, and the Mukai pairing is
        // invariant: <e^b a, e^b c> = <a, c> for real b
        let fs = FormSpace::new(Patch::punctured(2));
        let b = {
            let raw = fs
                .wedge(&fs.d_gen(0), &fs.d_gen(3))
                .scale(&Expr::var("z2"))
                .add(&fs.wedge(&fs.d_gen(0), &fs.d_gen(1)).scale(&Expr::var("r")));
            raw.add(&fs.conj(&raw))
        };
        let h = fs
            .wedge(&fs.wedge(&fs.d_gen(0), &fs.d_gen(1)), &fs.d_gen(2))
            .scale(&Expr::i());
        let h = h.add(&fs.conj(&h));
        let a = fs
            .d_gen(0)
            .scale(&Expr::var("z1b"))
            .add(&fs.wedge(&fs.d_gen(2), &fs.d_gen(3)).scale(&Expr::var("r")));
        let lhs = fs.d_h(&fs.b_transform(&b, &a), &h.sub(&fs.d(&b)));
        let rhs = fs.b_transform(&b, &fs.d_h(&a, &h));
        assert!(fs.form_is_zero(&lhs.sub(&rhs), 23, 12));
        let c = fs.d_gen(1).add(&fs.wedge(&fs.d_gen(0), &fs.d_gen(2)));
        let p1 = fs.mukai(&fs.b_transform(&b, &a), &fs.b_transform(&b, &c));
        let p2 = fs.mukai(&a, &c);
        assert!(fs.patch.is_zero(&p1.sub(&p2), 29, 12).is_zero);
    }

    #[test]
    fn d_of_z1_dz1b() {
        let fs = FormSpace::new(Patch::flat(2));
        let a = fs.d_gen(1).scale(&Expr::var("z1"));
        let expect = fs.wedge(&fs.d_gen(0), &fs.d_gen(1));
        assert_eq!(fs.d(&a), expect);
    }

    #[test]
    fn d_squared_vanishes_on_radius_coefficients() {
        let fs = FormSpace::new(Patch::punctured(2));
        // a 1-form with a genuinely r-dependent coefficient
        let a = fs
            .d_gen(0)
            .scale(&Expr::var("z1b").div(&Expr::var("r").pow(2)))
            .add(&fs.d_gen(3).scale(&Expr::var("r")));
        let dd = fs.d(&fs.d(&a));
        assert!(fs.form_is_zero(&dd, 11, 16));
    }

    #[test]
    fn conj_commutes_with_d() {
        let fs = FormSpace::new(Patch::punctured(2));
        let a = fs
            .d_gen(0)
            .scale(&Expr::var("z2").div(&Expr::var("r")))
            .add(&fs.wedge(&fs.d_gen(1), &fs.d_gen(2)).scale(&Expr::i()));
        let lhs = fs.d(&fs.conj(&a));
        let rhs = fs.conj(&fs.d(&a));
        assert!(fs.form_is_zero(&lhs.sub(&rhs), 5, 16));
    }

    #[test]
    fn exp_of_kahler_form_expands() {
        let fs = FormSpace::new(Patch::flat(2));
        // omega' = dz1 dz1b + dz2 dz2b; e^{omega'} = 1 + omega' + dz1 dz1b dz2 dz2b
        let w = fs
            .wedge(&fs.d_gen(0), &fs.d_gen(1))
            .add(&fs.wedge(&fs.d_gen(2), &fs.d_gen(3)));
        let e = fs.exp(&w);
        assert_eq!(e.coeff(0b0000), Expr::one());
        assert_eq!(e.coeff(0b0011), Expr::one());
        assert_eq!(e.coeff(0b1111), Expr::one());
    }

    #[test]
    fn mukai_of_volume_blade() {
        let fs = FormSpace::new(Patch::flat(2));
        // <dz1 dz2, conj(dz1 dz2)>_s = dz1 dz2 /\ sigma(dz1b dz2b)
        let phi = fs.wedge(&fs.d_gen(0), &fs.d_gen(2));
        let m = fs.mukai(&phi, &fs.conj(&phi));
        // sigma on grade 2 is -1; dz1 dz2 dz1b dz2b = -dz1 dz1b dz2 dz2b
        assert_eq!(m, Expr::one());
    }
}

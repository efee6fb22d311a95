//! Sections of (T + T*)^C over a patch: spin action on forms, the canonical
//! pairing, Courant and Dorfman brackets, and twisted Lie derivatives.
//!
//! Coefficient index k refers to the patch coordinate ordering, so v[k] is
//! the d/dz_k component and xi[k] the dz_k component.

use crate::expr::Expr;
use crate::forms::{Form, FormSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct GenSection {
    pub v: Vec<Expr>,
    pub xi: Vec<Expr>,
}

impl GenSection {
    pub fn zero(n: usize) -> GenSection {
        GenSection {
            v: vec![Expr::zero(); 2 * n],
            xi: vec![Expr::zero(); 2 * n],
        }
    }

    pub fn vector(n: usize, k: usize) -> GenSection {
        let mut s = GenSection::zero(n);
        s.v[k] = Expr::one();
        s
    }

    pub fn covector(n: usize, k: usize) -> GenSection {
        let mut s = GenSection::zero(n);
        s.xi[k] = Expr::one();
        s
    }

    pub fn add(&self, o: &GenSection) -> GenSection {
        GenSection {
            v: self.v.iter().zip(&o.v).map(|(a, b)| a.add(b)).collect(),
            xi: self.xi.iter().zip(&o.xi).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &GenSection) -> GenSection {
        GenSection {
            v: self.v.iter().zip(&o.v).map(|(a, b)| a.sub(b)).collect(),
            xi: self.xi.iter().zip(&o.xi).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Expr) -> GenSection {
        GenSection {
            v: self.v.iter().map(|a| a.mul(c)).collect(),
            xi: self.xi.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Complex conjugation: conj(c d/dz_k) = conj(c) d/dz_kb.
    pub fn conj(&self) -> GenSection {
        let flip = |v: &[Expr]| -> Vec<Expr> {
            (0..v.len()).map(|k| v[k ^ 1].conjugate()).collect()
        };
        GenSection {
            v: flip(&self.v),
            xi: flip(&self.xi),
        }
    }
}

impl FormSpace {
    /// Interior product of the coefficient vector v with a form.
    pub fn interior(&self, v: &[Expr], a: &Form) -> Form {
        let mut out = self.zero();
        for (&mask, c) in &a.terms {
            for k in 0..2 * self.patch.n {
                let bit = 1u32 << k;
                if mask & bit == 0 || v[k].is_zero_const() {
                    continue;
                }
                let below = (mask & (bit - 1)).count_ones();
                let mut coeff = v[k].mul(c);
                if below % 2 == 1 {
                    coeff = coeff.neg();
                }
                out.accum(mask & !bit, coeff);
            }
        }
        out
    }

    /// One-form with the given dz coefficients.
    pub fn one_form(&self, xi: &[Expr]) -> Form {
        let mut out = self.zero();
        for (k, c) in xi.iter().enumerate() {
            if !c.is_zero_const() {
                out.accum(1 << k, c.clone());
            }
        }
        out
    }

    /// Spin action e . a = i_v a + xi /\ a.
    pub fn spin_action(&self, e: &GenSection, a: &Form) -> Form {
        self.interior(&e.v, a)
            .add(&self.wedge(&self.one_form(&e.xi), a))
    }

    /// <e1, e2> = (xi1(v2) + xi2(v1)) / 2.
    pub fn pairing_tt(&self, e1: &GenSection, e2: &GenSection) -> Expr {
        let mut acc = Expr::zero();
        for k in 0..2 * self.patch.n {
            acc = acc.add(&e1.xi[k].mul(&e2.v[k]));
            acc = acc.add(&e2.xi[k].mul(&e1.v[k]));
        }
        acc.mul(&Expr::ratio(1, 2))
    }

    /// Directional derivative of a function along the vector part.
    pub fn lie_fn(&self, e: &GenSection, f: &Expr) -> Expr {
        let mut acc = Expr::zero();
        for k in 0..2 * self.patch.n {
            if !e.v[k].is_zero_const() {
                acc = acc.add(&e.v[k].mul(&self.patch.partial(f, k)));
            }
        }
        acc
    }

    /// df as covector coefficients.
    pub fn d_fn(&self, f: &Expr) -> Vec<Expr> {
        (0..2 * self.patch.n)
            .map(|k| self.patch.partial(f, k))
            .collect()
    }

    fn vec_bracket(&self, u: &[Expr], v: &[Expr]) -> Vec<Expr> {
        (0..2 * self.patch.n)
            .map(|k| {
                let mut acc = Expr::zero();
                for j in 0..2 * self.patch.n {
                    if !u[j].is_zero_const() {
                        acc = acc.add(&u[j].mul(&self.patch.partial(&v[k], j)));
                    }
                    if !v[j].is_zero_const() {
                        acc = acc.sub(&v[j].mul(&self.patch.partial(&u[k], j)));
                    }
                }
                acc
            })
            .collect()
    }

    fn lie_one_form(&self, u: &[Expr], eta: &[Expr]) -> Vec<Expr> {
        (0..2 * self.patch.n)
            .map(|k| {
                let mut acc = Expr::zero();
                for j in 0..2 * self.patch.n {
                    if !u[j].is_zero_const() {
                        acc = acc.add(&u[j].mul(&self.patch.partial(&eta[k], j)));
                    }
                    if !eta[j].is_zero_const() {
                        acc = acc.add(&eta[j].mul(&self.patch.partial(&u[j], k)));
                    }
                }
                acc
            })
            .collect()
    }

    fn contract_vec(&self, u: &[Expr], eta: &[Expr]) -> Expr {
        let mut acc = Expr::zero();
        for k in 0..2 * self.patch.n {
            acc = acc.add(&u[k].mul(&eta[k]));
        }
        acc
    }

    /// H-twisted Courant bracket
    /// [u+xi, v+eta] = [u,v] + L_u eta - L_v xi - d(i_u eta - i_v xi)/2 - i_v i_u H.
    pub fn courant_bracket(&self, e1: &GenSection, e2: &GenSection, h: &Form) -> GenSection {
        let v = self.vec_bracket(&e1.v, &e2.v);
        let mut xi_out: Vec<Expr> = self
            .lie_one_form(&e1.v, &e2.xi)
            .iter()
            .zip(self.lie_one_form(&e2.v, &e1.xi))
            .map(|(a, b)| a.sub(&b))
            .collect();
        let half_exact = self
            .contract_vec(&e1.v, &e2.xi)
            .sub(&self.contract_vec(&e2.v, &e1.xi))
            .mul(&Expr::ratio(1, 2));
        let d_half = self.d_fn(&half_exact);
        let h1 = self.interior(&e2.v, &self.interior(&e1.v, h));
        for k in 0..2 * self.patch.n {
            xi_out[k] = xi_out[k].sub(&d_half[k]).sub(&h1.coeff(1 << k));
        }
        GenSection { v, xi: xi_out }
    }

    /// Dorfman bracket = Courant + d<e1, e2>.
    pub fn dorfman_bracket(&self, e1: &GenSection, e2: &GenSection, h: &Form) -> GenSection {
        let mut out = self.courant_bracket(e1, e2, h);
        let d_pair = self.d_fn(&self.pairing_tt(e1, e2));
        for k in 0..2 * self.patch.n {
            out.xi[k] = out.xi[k].add(&d_pair[k]);
        }
        out
    }

    /// L^H_e = d_H (e . ) + e . d_H on forms.
    pub fn lie_derivative_h(&self, e: &GenSection, a: &Form, h: &Form) -> Form {
        self.d_h(&self.spin_action(e, a), h)
            .add(&self.spin_action(e, &self.d_h(a, h)))
    }

    pub fn section_is_zero(&self, e: &GenSection, seed: u64, trials: usize) -> bool {
        e.v.iter()
            .chain(&e.xi)
            .all(|c| self.patch.is_zero(c, seed, trials).is_zero)
    }
}

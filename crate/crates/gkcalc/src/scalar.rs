//! Exact arithmetic in the number field K = Q(i, sqrt2, sqrt3).
//!
//! Every coefficient the engine ever produces lives here: i comes from pure
//! spinors, sqrt2 from the Hopf normalization and from Pin elements, sqrt3
//! from the isotropic Cartan vector of su(3). A value is stored as
//! `c1 + c2*sqrt2 + c3*sqrt3 + c6*sqrt6`
//! with Gaussian-rational components, so equality, inversion and conjugation
//! are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A Gaussian rational re + im*i.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }
    pub fn i() -> Self {
        GaussRat::new(Rat::zero(), Rat::one())
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }
    fn add(&self, o: &Self) -> Self {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn neg(&self) -> Self {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
    fn mul(&self, o: &Self) -> Self {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn scale(&self, k: i64) -> Self {
        let k = rat(k, 1);
        GaussRat::new(&self.re * &k, &self.im * &k)
    }
    fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }
}

fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*i", fmt_rat(&self.re), fmt_rat(&self.im))
    }
}

/// Element of Q(i, sqrt2, sqrt3): c1 + c2*sqrt2 + c3*sqrt3 + c6*sqrt6.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FieldScalar {
    pub c1: GaussRat,
    pub c2: GaussRat,
    pub c3: GaussRat,
    pub c6: GaussRat,
}

impl FieldScalar {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        FieldScalar {
            c1: GaussRat::one(),
            ..Default::default()
        }
    }
    pub fn i() -> Self {
        FieldScalar {
            c1: GaussRat::i(),
            ..Default::default()
        }
    }
    pub fn sqrt2() -> Self {
        FieldScalar {
            c2: GaussRat::one(),
            ..Default::default()
        }
    }
    pub fn sqrt3() -> Self {
        FieldScalar {
            c3: GaussRat::one(),
            ..Default::default()
        }
    }
    pub fn sqrt6() -> Self {
        FieldScalar {
            c6: GaussRat::one(),
            ..Default::default()
        }
    }
    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n, 1))
    }
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rat(rat(num, den))
    }
    pub fn from_rat(r: Rat) -> Self {
        FieldScalar {
            c1: GaussRat::new(r, Rat::zero()),
            ..Default::default()
        }
    }
    pub fn from_gauss(g: GaussRat) -> Self {
        FieldScalar {
            c1: g,
            ..Default::default()
        }
    }
    /// p + q*i as a convenience for small literals.
    pub fn complex(p_num: i64, p_den: i64, q_num: i64, q_den: i64) -> Self {
        Self::from_gauss(GaussRat::new(rat(p_num, p_den), rat(q_num, q_den)))
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero() && self.c3.is_zero() && self.c6.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }
    /// True when the value is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.c1.im.is_zero() && self.c2.im.is_zero() && self.c3.im.is_zero() && self.c6.im.is_zero()
    }

    /// Complex conjugation (fixes sqrt2, sqrt3, sqrt6).
    pub fn conj(&self) -> Self {
        FieldScalar {
            c1: self.c1.conj(),
            c2: self.c2.conj(),
            c3: self.c3.conj(),
            c6: self.c6.conj(),
        }
    }
    /// Real part (f + conj f)/2.
    pub fn re_part(&self) -> Self {
        let mut s = self.clone() + self.conj();
        let half = Self::from_ratio(1, 2);
        s = s * half;
        s
    }

    /// Galois automorphism sqrt2 -> -sqrt2 (and so sqrt6 -> -sqrt6).
    fn gal2(&self) -> Self {
        FieldScalar {
            c1: self.c1.clone(),
            c2: self.c2.neg(),
            c3: self.c3.clone(),
            c6: self.c6.neg(),
        }
    }
    /// Galois automorphism sqrt3 -> -sqrt3 (and so sqrt6 -> -sqrt6).
    fn gal3(&self) -> Self {
        FieldScalar {
            c1: self.c1.clone(),
            c2: self.c2.clone(),
            c3: self.c3.neg(),
            c6: self.c6.neg(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x * gal2(x) kills the sqrt2 components; then * gal3 kills sqrt3.
        let a = self.clone() * self.gal2(); // in Q(i, sqrt3)
        let b = a.clone() * a.gal3(); // in Q(i)
        debug_assert!(b.c2.is_zero() && b.c3.is_zero() && b.c6.is_zero());
        let binv = Self::from_gauss(b.c1.inv()?);
        Some(self.gal2() * a.gal3() * binv)
    }

    pub fn pow(&self, n: i32) -> Option<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * base.clone();
        }
        Some(acc)
    }

    /// Exact sign test for a real value. Returns None when not real.
    pub fn real_sign(&self) -> Option<i32> {
        if !self.is_real() {
            return None;
        }
        // f = a + b sqrt2 + c sqrt3 + d sqrt6 with rational a..d. Determine the
        // sign by interval arithmetic with rational endpoints of sqrt2, sqrt3,
        // sqrt6, refining until the interval excludes zero or f is proven 0.
        if self.is_zero() {
            return Some(0);
        }
        // Rational bounds via continued-fraction convergents, hard-coded tight:
        // sqrt2 in [131836323/93222358, 93222358/65918161] etc. Easier: Newton
        // refinement on demand.
        let coeffs = [
            self.c1.re.clone(),
            self.c2.re.clone(),
            self.c3.re.clone(),
            self.c6.re.clone(),
        ];
        let targets = [1i64, 2, 3, 6];
        // start with crude bounds (1 <= sqrt t <= t) and refine by bisection
        let mut lo: Vec<Rat> = targets.iter().map(|_| rat(1, 1)).collect();
        let mut hi: Vec<Rat> = targets.iter().map(|&t| rat(t, 1)).collect();
        hi[0] = rat(1, 1);
        for _ in 0..200 {
            // evaluate interval for f
            let mut fmin = Rat::zero();
            let mut fmax = Rat::zero();
            for k in 0..4 {
                let c = &coeffs[k];
                if c.is_positive() {
                    fmin = fmin + c * &lo[k];
                    fmax = fmax + c * &hi[k];
                } else {
                    fmin = fmin + c * &hi[k];
                    fmax = fmax + c * &lo[k];
                }
            }
            if fmin.is_positive() {
                return Some(1);
            }
            if fmax.is_negative() {
                return Some(-1);
            }
            // refine each sqrt bound by bisection on x^2 = t
            for k in 1..4 {
                let mid = (&lo[k] + &hi[k]) / rat(2, 1);
                if &mid * &mid <= rat(targets[k], 1) {
                    lo[k] = mid;
                } else {
                    hi[k] = mid;
                }
            }
        }
        // f is nonzero (exact representation) so the loop must decide;
        // 200 bisections give far more precision than any height we use.
        unreachable!("real_sign failed to converge on a nonzero value")
    }
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(self, o: FieldScalar) -> FieldScalar {
        FieldScalar {
            c1: self.c1.add(&o.c1),
            c2: self.c2.add(&o.c2),
            c3: self.c3.add(&o.c3),
            c6: self.c6.add(&o.c6),
        }
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(self, o: FieldScalar) -> FieldScalar {
        FieldScalar {
            c1: self.c1.sub(&o.c1),
            c2: self.c2.sub(&o.c2),
            c3: self.c3.sub(&o.c3),
            c6: self.c6.sub(&o.c6),
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            c1: self.c1.neg(),
            c2: self.c2.neg(),
            c3: self.c3.neg(),
            c6: self.c6.neg(),
        }
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, o: FieldScalar) -> FieldScalar {
        let (x1, x2, x3, x6) = (&self.c1, &self.c2, &self.c3, &self.c6);
        let (y1, y2, y3, y6) = (&o.c1, &o.c2, &o.c3, &o.c6);
        // multiplication table of {1, sqrt2, sqrt3, sqrt6}
        let c1 = x1
            .mul(y1)
            .add(&x2.mul(y2).scale(2))
            .add(&x3.mul(y3).scale(3))
            .add(&x6.mul(y6).scale(6));
        let c2 = x1
            .mul(y2)
            .add(&x2.mul(y1))
            .add(&x3.mul(y6).scale(3))
            .add(&x6.mul(y3).scale(3));
        let c3 = x1
            .mul(y3)
            .add(&x3.mul(y1))
            .add(&x2.mul(y6).scale(2))
            .add(&x6.mul(y2).scale(2));
        let c6 = x1.mul(y6).add(&x6.mul(y1)).add(&x2.mul(y3)).add(&x3.mul(y2));
        FieldScalar { c1, c2, c3, c6 }
    }
}

impl Div for FieldScalar {
    type Output = FieldScalar;
    fn div(self, o: FieldScalar) -> FieldScalar {
        self * o.inv().expect("division by zero in FieldScalar")
    }
}

impl fmt::Display for FieldScalar {
    /// Canonical string: "a/b + c/d*i + (e/f + g/h*i)*sqrt2", with *sqrt3 and
    /// *sqrt6 terms appended only when nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*sqrt2", self.c1, self.c2)?;
        if !self.c3.is_zero() {
            write!(f, " + ({})*sqrt3", self.c3)?;
        }
        if !self.c6.is_zero() {
            write!(f, " + ({})*sqrt6", self.c6)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_round_trip() {
        let x = FieldScalar::from_ratio(3, 4) + FieldScalar::i() * FieldScalar::sqrt2()
            - FieldScalar::from_ratio(5, 7) * FieldScalar::sqrt3();
        let y = FieldScalar::sqrt6() + FieldScalar::from_int(2);
        let prod = x.clone() * y.clone();
        assert_eq!(prod.clone() / y.clone(), x);
        assert_eq!((x.clone() - x.clone()), FieldScalar::zero());
    }

    #[test]
    fn inverse_of_mixed_radicals() {
        let x = FieldScalar::one() + FieldScalar::sqrt2() + FieldScalar::sqrt3()
            + FieldScalar::i() * FieldScalar::sqrt6();
        let inv = x.inv().unwrap();
        assert_eq!(x * inv, FieldScalar::one());
    }

    #[test]
    fn conj_is_involution_and_fixes_radicals() {
        let x = FieldScalar::complex(1, 2, -3, 5) * FieldScalar::sqrt2()
            + FieldScalar::complex(0, 1, 7, 2) * FieldScalar::sqrt3();
        assert_eq!(x.conj().conj(), x);
        assert_eq!(
            (FieldScalar::sqrt2() * FieldScalar::sqrt3()).conj(),
            FieldScalar::sqrt6()
        );
    }

    #[test]
    fn sqrt_products() {
        assert_eq!(
            FieldScalar::sqrt2() * FieldScalar::sqrt2(),
            FieldScalar::from_int(2)
        );
        assert_eq!(
            FieldScalar::sqrt2() * FieldScalar::sqrt3(),
            FieldScalar::sqrt6()
        );
        assert_eq!(
            FieldScalar::sqrt6() * FieldScalar::sqrt6(),
            FieldScalar::from_int(6)
        );
    }

    #[test]
    fn real_sign_decides() {
        // sqrt6 - sqrt2 - sqrt3 + 1 is positive? sqrt6=2.449, sqrt2+sqrt3=3.146
        let x = FieldScalar::sqrt6() - FieldScalar::sqrt2() - FieldScalar::sqrt3()
            + FieldScalar::one();
        assert_eq!(x.real_sign(), Some(1)); // 2.449-3.146+1 = 0.303
        let y = FieldScalar::sqrt2() - FieldScalar::from_ratio(3, 2);
        assert_eq!(y.real_sign(), Some(-1));
        assert_eq!(FieldScalar::zero().real_sign(), Some(0));
        assert_eq!(FieldScalar::i().real_sign(), None);
    }

    #[test]
    fn canonical_string() {
        let x = FieldScalar::from_ratio(1, 2) + FieldScalar::i() * FieldScalar::sqrt2();
        assert_eq!(x.to_string(), "1/2 + 0/1*i + (0/1 + 1/1*i)*sqrt2");
    }
}

//! Randomized zero testing for symbolic expressions.
//!
//! An expression is declared zero when it evaluates to zero at a batch of
//! random conjugation-consistent points; a nonzero value is returned as a
//! concrete witness. Sampling is deterministic under a seed (ChaCha8).

use crate::expr::{conj_var, EvalError, Expr};
use crate::scalar::{rat, FieldScalar, GaussRat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub const DEFAULT_TRIALS: usize = 32;

pub type SamplePoint = BTreeMap<String, FieldScalar>;

/// Outcome of a randomized zero test. A `false` verdict carries the point and
/// value that refute zero-ness.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub is_zero: bool,
    pub witness: Option<(SamplePoint, FieldScalar)>,
}

impl Verdict {
    pub fn zero() -> Verdict {
        Verdict {
            is_zero: true,
            witness: None,
        }
    }
    pub fn nonzero(point: SamplePoint, value: FieldScalar) -> Verdict {
        Verdict {
            is_zero: false,
            witness: Some((point, value)),
        }
    }
}

/// Small random rational: numerator in [-9, 9], denominator in [1, 9].
pub fn random_rat(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Small random Gaussian rational.
pub fn random_gauss(rng: &mut ChaCha8Rng) -> FieldScalar {
    FieldScalar::from_gauss(GaussRat {
        re: random_rat(rng),
        im: random_rat(rng),
    })
}

/// Conjugation-consistent random point for a variable set: `z` and `zb` get
/// conjugate values, names starting with `r` get positive rationals.
pub fn sample_point(vars: &[String], rng: &mut ChaCha8Rng) -> SamplePoint {
    let mut point = SamplePoint::new();
    for v in vars {
        if point.contains_key(v) {
            continue;
        }
        if v.starts_with('r') {
            point.insert(
                v.clone(),
                FieldScalar::from_rat(rat(rng.gen_range(1..=9), rng.gen_range(1..=9))),
            );
        } else {
            let z = random_gauss(rng);
            point.insert(conj_var(v), z.conj());
            point.insert(v.clone(), z);
        }
    }
    point
}

/// Zero test against a caller-supplied sampler (used by coordinate patches
/// whose variables satisfy constraints the generic sampler cannot know).
/// Points where the expression is undefined (a denominator vanishes) are
/// rejected and resampled, up to 16 rejections per trial.
pub fn is_zero_with<F>(e: &Expr, trials: usize, mut draw: F) -> Verdict
where
    F: FnMut() -> SamplePoint,
{
    for _ in 0..trials {
        let mut value = None;
        for _ in 0..16 {
            let point = draw();
            match e.eval(&point) {
                Ok(v) => {
                    value = Some((point, v));
                    break;
                }
                Err(EvalError::DivisionByZero(_)) => continue,
                Err(err @ EvalError::UnboundVariable(_)) => {
                    panic!("zero test over incomplete point: {err}")
                }
            }
        }
        let (point, v) = value.expect("sampler kept hitting poles; domain too small");
        if !v.is_zero() {
            return Verdict::nonzero(point, v);
        }
    }
    Verdict::zero()
}

/// Seeded zero test with the default free sampler.
pub fn is_zero(e: &Expr, seed: u64, trials: usize) -> Verdict {
    let vars: Vec<String> = e.vars().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    is_zero_with(e, trials, || sample_point(&vars, &mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    #[test]
    fn detects_structural_zero_in_disguise() {
        // (z1 + z1b)^2 - z1^2 - 2*z1*z1b - z1b^2
        let e = parse_expr("(z1 + z1b)^2 - z1^2 - 2*z1*z1b - z1b^2").unwrap();
        assert!(is_zero(&e, 7, DEFAULT_TRIALS).is_zero);
    }

    #[test]
    fn nonzero_comes_with_witness() {
        let e = parse_expr("z1 * z1b - 1").unwrap();
        let v = is_zero(&e, 7, DEFAULT_TRIALS);
        assert!(!v.is_zero);
        let (point, value) = v.witness.unwrap();
        assert_eq!(e.eval(&point).unwrap(), value);
        assert!(!value.is_zero());
    }

    #[test]
    fn rejection_handles_poles() {
        // zero identity with a pole at z1 = 0
        let e = parse_expr("z1 / z1 - 1").unwrap();
        assert!(is_zero(&e, 7, DEFAULT_TRIALS).is_zero);
    }

    #[test]
    fn deterministic_under_seed() {
        let e = parse_expr("z1 + z2").unwrap();
        let a = is_zero(&e, 42, 4).witness.unwrap();
        let b = is_zero(&e, 42, 4).witness.unwrap();
        assert_eq!(a.1, b.1);
        assert_eq!(a.0, b.0);
    }

    #[test]
    fn real_vars_sample_real_and_positive() {
        let e = parse_expr("r - 10").unwrap();
        let v = is_zero(&e, 3, DEFAULT_TRIALS);
        let (point, _) = v.witness.unwrap();
        let r = &point["r"];
        assert!(r.is_real());
        assert_eq!(r.real_sign(), Some(1));
    }
}

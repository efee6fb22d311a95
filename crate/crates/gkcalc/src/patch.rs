//! Coordinate patches: complex coordinates z_k with their conjugates, an
//! optional dependent radius r with r^2 = sum |z_k|^2, and exact samplers.
//!
//! The radius is a patch variable, not an independent one: conj(r) = r and
//! the chain rule routes every derivative of an r-dependent coefficient
//! through dr/dz_k = z_kb / (2r). Samplers keep points conjugation
//! consistent, and the punctured sampler produces points whose radius is an
//! exact rational (square a Gaussian-integer quaternion and |z_1|^2 + |z_2|^2
//! becomes a perfect square).

use crate::expr::Expr;
use crate::sample::{self, SamplePoint, Verdict};
use crate::scalar::FieldScalar;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct Patch {
    pub n: usize,
    /// z1, z1b, z2, z2b, ... — coordinate k and its conjugate are adjacent.
    pub coord_names: Vec<String>,
    /// dz1, dz1b, ... in the same order; generator index = coordinate index.
    pub form_names: Vec<String>,
    /// Whether the dependent radius variable r is in scope (and nonzero).
    pub has_r: bool,
}

impl Patch {
    fn build(n: usize, has_r: bool) -> Patch {
        let mut coord_names = Vec::new();
        let mut form_names = Vec::new();
        for k in 1..=n {
            coord_names.push(format!("z{k}"));
            coord_names.push(format!("z{k}b"));
            form_names.push(format!("dz{k}"));
            form_names.push(format!("dz{k}b"));
        }
        Patch {
            n,
            coord_names,
            form_names,
            has_r,
        }
    }

    /// C^n with independent coordinates.
    pub fn flat(n: usize) -> Patch {
        Patch::build(n, false)
    }

    /// C^n minus the origin, with the radius r in scope.
    pub fn punctured(n: usize) -> Patch {
        Patch::build(n, true)
    }

    /// Index permutation realizing conjugation on coordinates (and on the
    /// form generators, which share the ordering).
    pub fn conj_perm(&self) -> Vec<usize> {
        (0..2 * self.n).map(|i| i ^ 1).collect()
    }

    /// r^2 as a polynomial in the coordinates.
    pub fn r2(&self) -> Expr {
        let mut acc = Expr::zero();
        for k in 0..self.n {
            acc = acc.add(
                &Expr::var(&self.coord_names[2 * k]).mul(&Expr::var(&self.coord_names[2 * k + 1])),
            );
        }
        acc
    }

    /// Coordinate derivative along coordinate index k, chaining through the
    /// dependent radius when present.
    pub fn partial(&self, f: &Expr, k: usize) -> Expr {
        let mut d = f.diff(&self.coord_names[k]);
        if self.has_r {
            let fr = f.diff("r");
            if !fr.is_zero_const() {
                // dr/dz_k = z_kb/(2r), dr/dz_kb = z_k/(2r)
                let partner = Expr::var(&self.coord_names[k ^ 1]);
                let dr = partner.div(&Expr::int(2).mul(&Expr::var("r")));
                d = d.add(&fr.mul(&dr));
            }
        }
        d
    }

    /// Conjugation-consistent sample point; with a radius in scope the point
    /// is scaled from a squared Gaussian-integer quaternion so r is rational.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> SamplePoint {
        if !self.has_r {
            return sample::sample_point(&self.coord_names, rng);
        }
        assert_eq!(self.n, 2, "radius sampler is specific to n = 2");
        let mut point = SamplePoint::new();
        loop {
            let a: i64 = rng.gen_range(-4..=4);
            let b: i64 = rng.gen_range(-4..=4);
            let c: i64 = rng.gen_range(-4..=4);
            let d: i64 = rng.gen_range(-4..=4);
            let norm = a * a + b * b + c * c + d * d;
            if norm == 0 {
                continue;
            }
            let s_num: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let s_den: i64 = rng.gen_range(1..=5);
            let s = FieldScalar::from_ratio(s_num, s_den);
            // (z1, z2) = s * q^2 for the quaternion q = a + bi + cj + dk;
            // then |z1|^2 + |z2|^2 = (s * norm)^2 exactly
            let z1 = s.clone()
                * (FieldScalar::from_int(a * a - b * b - c * c - d * d)
                    + FieldScalar::i() * FieldScalar::from_int(2 * a * b));
            let z2 = s.clone()
                * (FieldScalar::from_int(2 * a * c) + FieldScalar::i() * FieldScalar::from_int(2 * a * d));
            let r = FieldScalar::from_ratio(s_num.abs(), s_den) * FieldScalar::from_int(norm);
            point.insert("z1".into(), z1.clone());
            point.insert("z1b".into(), z1.conj());
            point.insert("z2".into(), z2.clone());
            point.insert("z2b".into(), z2.conj());
            point.insert("r".into(), r);
            return point;
        }
    }

    /// Randomized zero test drawing points from this patch.
    pub fn is_zero(&self, e: &Expr, seed: u64, trials: usize) -> Verdict {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample::is_zero_with(e, trials, || self.sample(&mut rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_samples_are_exact_and_consistent() {
        let p = Patch::punctured(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let pt = p.sample(&mut rng);
            let r = pt["r"].clone();
            assert!(r.is_real());
            assert_eq!(r.real_sign(), Some(1));
            let r2 = pt["z1"].clone() * pt["z1b"].clone() + pt["z2"].clone() * pt["z2b"].clone();
            assert_eq!(r2, r.clone() * r);
            assert_eq!(pt["z1b"], pt["z1"].conj());
        }
    }

    #[test]
    fn chain_rule_through_radius() {
        // d/dz1 (1/r) = -z1b/(2 r^3): check both sides numerically
        let p = Patch::punctured(2);
        let f = Expr::one().div(&Expr::var("r"));
        let lhs = p.partial(&f, 0);
        let rhs = Expr::var("z1b")
            .neg()
            .div(&Expr::int(2).mul(&Expr::var("r").pow(3)));
        assert!(p.is_zero(&lhs.sub(&rhs), 3, 16).is_zero);
    }

    #[test]
    fn flat_partial_is_plain_diff() {
        let p = Patch::flat(2);
        let f = Expr::var("z1").pow(3).mul(&Expr::var("z2b"));
        assert_eq!(p.partial(&f, 0), f.diff("z1"));
        assert!(p.partial(&f, 1).is_zero_const());
    }
}

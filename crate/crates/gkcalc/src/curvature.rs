//! Scalar curvature of a generalized Kahler pair from its pure spinors:
//! the divergence-style formula, the Lie-derivative definition it reduces
//! to, gauge-transformed variants, and the Poisson calculus of the
//! symplectic-type spinor.

use crate::expr::Expr;
use crate::forms::{Form, FormSpace};
use crate::linalg::Matrix;
use crate::scalar::FieldScalar;
use crate::section::GenSection;

/// i^{-n} as an exact scalar.
pub fn i_pow_minus_n(n: usize) -> Expr {
    Expr::constant(FieldScalar::i().pow(-(n as i32)).expect("i invertible"))
}

/// i^{-n} <a, d_H(e . conj a)>_s, the one-spinor half of the curvature.
pub fn curvature_term(fs: &FormSpace, a: &Form, e: &GenSection, h: &Form) -> Expr {
    let acted = fs.spin_action(e, &fs.conj(a));
    fs.mukai(a, &fs.d_h(&acted, h))
        .mul(&i_pow_minus_n(fs.patch.n))
}

/// Top-degree coefficient of S vol as
/// Re( i^{-n}<psi, d_H(eta . conj psi)> + i^{-n}<phi, d_H(zeta . conj phi)> ),
/// with eta the section extracted from phi and zeta from psi (they act
/// crosswise).
pub fn curvature_top(
    fs: &FormSpace,
    phi: &Form,
    psi: &Form,
    eta: &GenSection,
    zeta: &GenSection,
    h: &Form,
) -> Expr {
    curvature_term(fs, psi, eta, h)
        .add(&curvature_term(fs, phi, zeta, h))
        .re_part()
}

/// Top-degree coefficient of S vol from the defining expression
/// Re( i^{-n}<psi, L^H_eta conj psi> + i^{-n}<phi, L^H_zeta conj phi> )
/// + 2 <zeta, eta> vol, where vol_top is the top coefficient of the volume
/// form.
pub fn curvature_top_definition(
    fs: &FormSpace,
    phi: &Form,
    psi: &Form,
    eta: &GenSection,
    zeta: &GenSection,
    h: &Form,
    vol_top: &Expr,
) -> Expr {
    let ipow = i_pow_minus_n(fs.patch.n);
    let t1 = fs.mukai(psi, &fs.lie_derivative_h(eta, &fs.conj(psi), h));
    let t2 = fs.mukai(phi, &fs.lie_derivative_h(zeta, &fs.conj(phi), h));
    let lie_part = t1.add(&t2).mul(&ipow).re_part();
    let cross = fs
        .pairing_tt(zeta, eta)
        .mul(&Expr::int(2))
        .mul(vol_top);
    lie_part.add(&cross)
}

/// Gauge-transformed curvature term for a rescaled pair: if the other
/// spinor picks up the phase e^{ip} its section shifts to e' = e + i dp,
/// while a itself transforms by e^{iq}; the phase factors cancel inside the
/// pairing, leaving
/// i^{-n} <a, d_H(e' . conj a) - i dq /\ (e' . conj a)>.
pub fn gauge_curvature_term(
    fs: &FormSpace,
    a: &Form,
    e_shifted: &GenSection,
    q: &Expr,
    h: &Form,
) -> Expr {
    let acted = fs.spin_action(e_shifted, &fs.conj(a));
    let dq = fs.one_form(&fs.d_fn(q));
    let inner = fs
        .d_h(&acted, h)
        .sub(&fs.wedge(&dq, &acted).scale(&Expr::i()));
    fs.mukai(a, &inner).mul(&i_pow_minus_n(fs.patch.n))
}

/// The section i dp for a real function p.
pub fn i_dp(fs: &FormSpace, p: &Expr) -> GenSection {
    GenSection {
        v: vec![Expr::zero(); 2 * fs.patch.n],
        xi: fs.d_fn(p).iter().map(|c| c.mul(&Expr::i())).collect(),
    }
}

/// Apply a constant endomorphism of (T + T*)^C to a symbolic section.
pub fn apply_endo(fs: &FormSpace, j: &Matrix, e: &GenSection) -> GenSection {
    let n2 = 2 * fs.patch.n;
    let coeffs: Vec<Expr> = e.v.iter().chain(&e.xi).cloned().collect();
    let mut out = vec![Expr::zero(); 2 * n2];
    for (i, row) in j.data.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out[i] = out[i].add(&coeffs[k].scale(c));
            }
        }
    }
    GenSection {
        v: out[..n2].to_vec(),
        xi: out[n2..].to_vec(),
    }
}

/// J_psi df as a symbolic section, for a constant J.
pub fn j_df(fs: &FormSpace, j: &Matrix, f: &Expr) -> GenSection {
    let df = GenSection {
        v: vec![Expr::zero(); 2 * fs.patch.n],
        xi: fs.d_fn(f),
    };
    apply_endo(fs, j, &df)
}

/// {f1, f2}_psi = (L_{pi(J_psi d f1)} f2 - L_{pi(J_psi d f2)} f1) / 2, for
/// a constant J. The 1/2 matches the 1/2-normalized pairing on T + T*: with
/// it, [J df1, J df2]_H = J d{f1, f2}_psi holds on the nose.
pub fn poisson_bracket(fs: &FormSpace, j: &Matrix, f1: &Expr, f2: &Expr) -> Expr {
    let e1 = j_df(fs, j, f1);
    let e2 = j_df(fs, j, f2);
    fs.lie_fn(&e1, f2)
        .sub(&fs.lie_fn(&e2, f1))
        .mul(&Expr::ratio(1, 2))
}

/// Modified Lie derivative along J_psi df:
/// Ltilde_f = L^H_{J_psi df} - 2i f L^H_zeta.
pub fn modified_lie(
    fs: &FormSpace,
    j: &Matrix,
    f: &Expr,
    zeta: &GenSection,
    a: &Form,
    h: &Form,
) -> Form {
    let main = fs.lie_derivative_h(&j_df(fs, j, f), a, h);
    let corr = fs
        .lie_derivative_h(zeta, a, h)
        .scale(&f.mul(&Expr::i()).mul(&Expr::int(2)));
    main.sub(&corr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::Patch;
    use crate::pointwise::induced_j;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn flat() -> (FormSpace, Form, Form) {
        let fs = FormSpace::new(Patch::flat(2));
        let phi = fs
            .wedge(&fs.d_gen(0), &fs.d_gen(2))
            .scale(&Expr::ratio(1, 2));
        let w = fs
            .wedge(&fs.d_gen(0), &fs.d_gen(1))
            .add(&fs.wedge(&fs.d_gen(2), &fs.d_gen(3)))
            .scale(&Expr::i());
        let psi = fs
            .exp(&w.scale(&Expr::i().neg().mul(&Expr::ratio(1, 2))))
            .scale(&Expr::ratio(1, 2));
        (fs, phi, psi)
    }

    #[test]
    fn flat_kahler_curvature_vanishes() {
        let (fs, phi, psi) = flat();
        let zero_sec = GenSection::zero(4);
        let h = fs.zero();
        let s = curvature_top(&fs, &phi, &psi, &zero_sec, &zero_sec, &h);
        assert!(s.is_zero_const());
        let vol = fs.norm_pairing(&phi);
        let s_def =
            curvature_top_definition(&fs, &phi, &psi, &zero_sec, &zero_sec, &h, &vol);
        assert!(s_def.is_zero_const());
    }

    #[test]
    fn flat_poisson_bracket_is_canonical() {
        let (fs, _, psi) = flat();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = fs.patch.sample(&mut rng);
        let j = induced_j(&fs, &psi, &p).unwrap();
        // x1 = (z1 + z1b)/2, y1 = (z1 - z1b)/(2i); {x1, y1} should be a
        // nonzero constant and {x1, x2} = 0
        let half = Expr::ratio(1, 2);
        let x1 = Expr::var("z1").add(&Expr::var("z1b")).mul(&half);
        let y1 = Expr::var("z1")
            .sub(&Expr::var("z1b"))
            .div(&Expr::i().mul(&Expr::int(2)));
        let x2 = Expr::var("z2").add(&Expr::var("z2b")).mul(&half);
        let b11 = poisson_bracket(&fs, &j, &x1, &y1);
        assert!(b11.as_const().is_some());
        assert!(!b11.is_zero_const());
        assert!(poisson_bracket(&fs, &j, &x1, &x2).is_zero_const());
        // antisymmetry on polynomial inputs
        let f = Expr::var("z1").mul(&Expr::var("z2b"));
        let g = Expr::var("z2").pow(2);
        let anti = poisson_bracket(&fs, &j, &f, &g).add(&poisson_bracket(&fs, &j, &g, &f));
        assert!(fs.patch.is_zero(&anti, 13, 16).is_zero);
    }

    #[test]
    fn modified_lie_commutator_represents_poisson_bracket() {
        let (fs, _, psi) = flat();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let p = fs.patch.sample(&mut rng);
        let j = induced_j(&fs, &psi, &p).unwrap();
        let h = fs.zero();
        let zeta = GenSection::zero(4);
        // real test functions built as f + conj f
        let f1 = {
            let f = Expr::var("z1").mul(&Expr::var("z2b"));
            f.add(&f.conjugate())
        };
        let f2 = {
            let f = Expr::var("z2").mul(&Expr::var("z1b")).mul(&Expr::var("z1"));
            f.add(&f.conjugate())
        };
        let a = fs
            .d_gen(0)
            .scale(&Expr::var("z2"))
            .add(&fs.wedge(&fs.d_gen(1), &fs.d_gen(2)));
        let lhs = modified_lie(&fs, &j, &f1, &zeta, &modified_lie(&fs, &j, &f2, &zeta, &a, &h), &h)
            .sub(&modified_lie(
                &fs,
                &j,
                &f2,
                &zeta,
                &modified_lie(&fs, &j, &f1, &zeta, &a, &h),
                &h,
            ));
        let br = poisson_bracket(&fs, &j, &f1, &f2);
        let rhs = modified_lie(&fs, &j, &br, &zeta, &a, &h);
        assert!(fs.form_is_zero(&lhs.sub(&rhs), 17, 12));
    }

    #[test]
    fn gauge_term_with_zero_phases_reduces_to_plain_term() {
        let (fs, phi, _) = flat();
        let e = GenSection::covector(4, 1).scale(&Expr::var("z1"));
        let h = fs.zero();
        let plain = curvature_term(&fs, &phi, &e, &h);
        let gauged = gauge_curvature_term(&fs, &phi, &e, &Expr::zero(), &h);
        assert!(fs.patch.is_zero(&plain.sub(&gauged), 19, 12).is_zero);
    }
}

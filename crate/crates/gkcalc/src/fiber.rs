//! The bounded matrix domain {h in M_n(C) : 1 - h*h > 0} with its Kahler
//! potential log det(1 - h*h), the closed-form Hermitian metric it induces,
//! and floating-point consistency checks (finite-difference Hessian,
//! positivity, unitary invariance).
//!
//! This is the one deliberately numeric module: the potential involves log.
//! Tolerances: 1e-6 relative for the Hessian agreement, 1e-10 for unitary
//! invariance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type CMat = DMatrix<Complex64>;

pub const HESSIAN_REL_TOL: f64 = 1e-6;
pub const INVARIANCE_TOL: f64 = 1e-10;
// Balances truncation (~ step^2) against double-precision cancellation in
// the second difference (~ eps / step^2); 1e-4 puts both near 1e-8.
pub const FD_STEP: f64 = 1e-4;

/// 1 - h*h.
fn gram(h: &CMat) -> CMat {
    CMat::identity(h.nrows(), h.ncols()) - h.adjoint() * h
}

/// Membership: 1 - h*h positive definite (Cholesky succeeds).
pub fn in_domain(h: &CMat) -> bool {
    h.is_square() && gram(h).cholesky().is_some()
}

/// log det(1 - h*h); requires membership.
pub fn kahler_potential(h: &CMat) -> Option<f64> {
    let chol = gram(h).cholesky()?;
    // det = prod of squared Cholesky diagonal entries, all real positive
    Some(
        chol.l()
            .diagonal()
            .iter()
            .map(|c| 2.0 * c.re.ln())
            .sum(),
    )
}

/// Closed-form Hermitian metric of the domain in directions (A, B):
/// G(A, B) = tr((1 - h*h)^{-1} A* (1 - h h*)^{-1} B),
/// the mixed second derivative of -log det(1 - h*h).
pub fn metric_closed_form(h: &CMat, a: &CMat, b: &CMat) -> Option<Complex64> {
    let n = h.nrows();
    let m_inv = gram(h).try_inverse()?;
    let n_inv = (CMat::identity(n, n) - h * h.adjoint()).try_inverse()?;
    Some((m_inv * a.adjoint() * n_inv * b).trace())
}

/// Mixed second derivative -d/dt d/dtbar of the potential along h + tA,
/// by central finite differences: -(1/4)(d^2/dx^2 + d^2/dy^2) log det.
pub fn metric_finite_difference(h: &CMat, a: &CMat) -> Option<f64> {
    let f = |t: Complex64| kahler_potential(&(h + a.map(|x| x * t)));
    let s = FD_STEP;
    let f0 = f(Complex64::new(0.0, 0.0))?;
    let fxp = f(Complex64::new(s, 0.0))?;
    let fxm = f(Complex64::new(-s, 0.0))?;
    let fyp = f(Complex64::new(0.0, s))?;
    let fym = f(Complex64::new(0.0, -s))?;
    Some(-((fxp + fxm - 2.0 * f0) + (fyp + fym - 2.0 * f0)) / (4.0 * s * s))
}

/// Random complex matrix with entries uniform in a box.
fn random_matrix(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(n, n, |_, _| {
        Complex64::new(
            scale * (rng.gen::<f64>() - 0.5),
            scale * (rng.gen::<f64>() - 0.5),
        )
    })
}

/// Random interior point: contraction of a random matrix.
pub fn random_domain_point(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    loop {
        let h = random_matrix(n, 0.9, rng);
        // scale well below operator norm: deep interior points keep the
        // higher derivatives small enough for the finite-difference oracle
        let norm = h.norm();
        let h = h.map(|x| x * 0.6 / (1.0 + norm));
        if in_domain(&h) {
            return h;
        }
    }
}

/// Random unitary matrix via QR of a random complex matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    loop {
        let m = random_matrix(n, 2.0, rng);
        let qr = m.qr();
        let q = qr.q();
        if q.is_square() && (q.adjoint() * &q - CMat::identity(n, n)).norm() < 1e-10 {
            return q;
        }
    }
}

pub struct FiberCheck {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

/// The full numeric suite for one matrix size: Hessian agreement,
/// positivity, unitary invariance, plus a deliberately sign-flipped metric
/// as a negative control.
pub fn fiber_checks(n: usize, points: usize, seed: u64) -> Vec<FiberCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_rel: f64 = 0.0;
    let mut min_metric = f64::INFINITY;
    let mut hess_ok = true;
    let mut flipped_caught = true;
    for _ in 0..points {
        let h = random_domain_point(n, &mut rng);
        let a = random_matrix(n, 1.0, &mut rng);
        let g = metric_closed_form(&h, &a, &a).expect("interior point");
        let fd = metric_finite_difference(&h, &a).expect("interior point");
        let rel = (g.re - fd).abs() / fd.abs().max(1.0);
        worst_rel = worst_rel.max(rel);
        min_metric = min_metric.min(g.re);
        if rel > HESSIAN_REL_TOL || g.im.abs() > HESSIAN_REL_TOL {
            hess_ok = false;
        }
        // negative control: the flipped sign must disagree badly
        if (-g.re - fd).abs() / fd.abs().max(1.0) <= HESSIAN_REL_TOL {
            flipped_caught = false;
        }
    }
    let mut inv_worst: f64 = 0.0;
    for _ in 0..points {
        let h = random_domain_point(n, &mut rng);
        let u = random_unitary(n, &mut rng);
        let v = random_unitary(n, &mut rng);
        let k0 = kahler_potential(&h).expect("interior point");
        let k1 = kahler_potential(&(&u * &h * v.adjoint())).expect("unitary image stays interior");
        inv_worst = inv_worst.max((k0 - k1).abs());
    }
    vec![
        FiberCheck {
            id: format!("fiber-hessian-agreement-n{n}"),
            pass: hess_ok,
            detail: format!("worst relative deviation {worst_rel:.3e} over {points} points"),
        },
        FiberCheck {
            id: format!("fiber-metric-positivity-n{n}"),
            pass: min_metric > 0.0,
            detail: format!("minimum diagonal metric value {min_metric:.3e}"),
        },
        FiberCheck {
            id: format!("fiber-unitary-invariance-n{n}"),
            pass: inv_worst <= INVARIANCE_TOL,
            detail: format!("worst potential deviation under h -> u h v* is {inv_worst:.3e}"),
        },
        FiberCheck {
            id: format!("fiber-negative-control-sign-flip-n{n}"),
            pass: flipped_caught,
            detail: "sign-flipped closed form must fail the Hessian comparison".into(),
        },
    ]
}

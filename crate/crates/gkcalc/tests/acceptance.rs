//! End-to-end acceptance suite. Each criterion prints exactly one pass/fail
//! line; all tolerances are pinned here or in the modules they test. The
//! symbolic suites are exact (no tolerances); the fiber suite uses the
//! floating-point tolerances pinned in `fiber.rs` (1e-6 Hessian, 1e-10
//! invariance).

use gkcalc::lie::{self, cartan::LieClifford};
use gkcalc::models;
use gkcalc::pointwise::extract_eta_n;
use gkcalc::report::{self, Status};
use gkcalc::scalar::FieldScalar;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const SEED: u64 = 42;

fn status(r: &report::Report, suffix: &str) -> bool {
    r.checks
        .iter()
        .filter(|c| c.id.ends_with(suffix))
        .all(|c| c.status == Status::Pass)
        && r.checks.iter().any(|c| c.id.ends_with(suffix))
}

struct Tally {
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, num: usize, label: &str, pass: bool) {
        println!(
            "criterion {num:2}: {} — {label}",
            if pass { "pass" } else { "FAIL" }
        );
        if !pass {
            self.failures.push(format!("criterion {num}: {label}"));
        }
    }
}

#[test]
fn acceptance() {
    let mut tally = Tally { failures: Vec::new() };

    // Full verification reports for the four models.
    let t_odd = Instant::now();
    let odd = report::verify_model(&models::model("hopf-odd").unwrap(), SEED, 32);
    let odd_secs = t_odd.elapsed().as_secs_f64();
    let t_even = Instant::now();
    let even_p = report::verify_model(&models::model("hopf-even-plus").unwrap(), SEED, 8);
    let even_m = report::verify_model(&models::model("hopf-even-minus").unwrap(), SEED, 8);
    let even_secs = t_even.elapsed().as_secs_f64();
    let flat = report::verify_model(&models::model("flat").unwrap(), SEED, 16);

    // 1: odd Hopf surface — scalar curvature exact and constant, in time.
    tally.record(
        1,
        "odd Hopf surface: S exactly the expected constant, both formulas, under 60 s",
        status(&odd, "-scalar-curvature")
            && status(&odd, "-scalar-curvature-definition")
            && odd_secs < 60.0,
    );

    // 2: even Hopf surfaces, both volume signs, in time.
    tally.record(
        2,
        "even Hopf surfaces (both signs): S exactly the expected constant, under 120 s",
        status(&even_p, "-scalar-curvature")
            && status(&even_m, "-scalar-curvature")
            && status(&even_p, "-scalar-curvature-definition")
            && status(&even_m, "-scalar-curvature-definition")
            && even_secs < 120.0,
    );

    // 3: flat model — S identically zero with type numbers (2, 0).
    tally.record(
        3,
        "flat model: S = 0 and type numbers (2, 0)",
        status(&flat, "-scalar-curvature") && status(&flat, "-type-numbers"),
    );

    // 4: Lie-algebra curvature identities and frozen golden values.
    let t_lie = Instant::now();
    let lie_a = report::lie_suite(lie::su2_u1(), "su2xu1", SEED).unwrap();
    let lie_b = report::lie_suite(lie::su3(), "su3", SEED).unwrap();
    let lie_secs = t_lie.elapsed().as_secs_f64();
    tally.record(
        4,
        "Lie algebras: curvature identities hold and match the golden values, under 120 s",
        status(&lie_a, "-curvature")
            && status(&lie_a, "-golden")
            && status(&lie_b, "-curvature")
            && status(&lie_b, "-golden")
            && lie_secs < 120.0,
    );

    // 5: gauge independence (5 random polynomial phase pairs) and symmetry
    // under swapping the spinors, on every model.
    tally.record(
        5,
        "S gauge-independent under 5 random phase pairs and symmetric in (Phi, Psi)",
        [&flat, &odd, &even_p, &even_m]
            .iter()
            .all(|r| status(r, "-gauge-independence") && status(r, "-symmetry")),
    );

    // 6: the degree-3 part of d_H Phi annihilates the partner spinor at 32
    // fresh points per model.
    let mut n_ok = true;
    for name in models::MODEL_NAMES {
        let m = models::model(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xabcd);
        for _ in 0..32 {
            let p = m.fs.patch.sample(&mut rng);
            let ok = match extract_eta_n(&m.fs, &m.phi, &m.h, &p) {
                Ok(data) => {
                    let psip = m.fs.eval_at(&m.psi, &p);
                    data.n_apply(&m.fs, &psip).is_zero()
                }
                Err(_) => false,
            };
            n_ok &= ok;
        }
    }
    tally.record(6, "N . Psi = 0 at 32 sample points for every model", n_ok);

    // 7: operator bracket lemmas on at least 50 random section pairs.
    let props = report::props_suite(SEED, 50);
    tally.record(
        7,
        "[L_e1, L_e2] = L_[e1,e2] (untwisted and twisted) on 50 random pairs",
        status(&props, "-operator-bracket") && status(&props, "-clifford-relation"),
    );

    // 8: group-level matrix models — pairing at 10 points and the four
    // bracket identities.
    tally.record(
        8,
        "matrix models: section pairing at 10 points and 4 bracket identities",
        [&lie_a, &lie_b].iter().all(|r| {
            status(r, "-double-pairing")
                && (0..4).all(|k| status(r, &format!("-bracket-{k}")))
        }),
    );

    // 9: five random Pin chains preserve S = 2 |P|^2 on both algebras.
    let mut pin_ok = status(&lie_a, "-pin-chains") && status(&lie_b, "-pin-chains");
    for data in [lie::su2_u1(), lie::su3()] {
        let lc = LieClifford::new(data).unwrap();
        let cur = lc.lie_scalar_curvature().unwrap();
        pin_ok &= cur.s == cur.p_norm_sq.clone() * FieldScalar::from_int(2);
    }
    tally.record(9, "five random Pin chains preserve S = 2 |P|^2", pin_ok);

    // 10: bounded matrix domain, sizes 1 and 2, 20 points each; closed-form
    // metric vs finite differences within 1e-6 and positive.
    let fib_ok = [1usize, 2].iter().all(|&n| {
        let r = report::fiber_report(n, 20, SEED);
        status(&r, &format!("-hessian-agreement-n{n}"))
            && status(&r, &format!("-metric-positivity-n{n}"))
    });
    tally.record(
        10,
        "matrix-domain metric: Hessian agreement within 1e-6 and positivity, n = 1, 2",
        fib_ok,
    );

    // 11: negative controls — every deliberate corruption is caught with a
    // witness.
    let model_controls = [&flat, &odd, &even_p, &even_m].iter().all(|r| {
        r.checks
            .iter()
            .any(|c| c.id.ends_with("-negative-control") && c.status == Status::Pass && c.witness.is_some())
    });
    let fiber_control = [1usize, 2].iter().all(|&n| {
        status(&report::fiber_report(n, 20, SEED), &format!("-negative-control-sign-flip-n{n}"))
    });
    let jacobi_control = {
        let mut alg = lie::su3();
        alg.brackets[2][3] = vec![(4, FieldScalar::from_int(2))];
        alg.brackets[3][2] = vec![(4, FieldScalar::from_int(-2))];
        alg.brackets[5][6] = vec![(7, FieldScalar::from_int(2))];
        alg.brackets[6][5] = vec![(7, FieldScalar::from_int(-2))];
        match alg.validate() {
            Err(e) => {
                // the error must name the violated invariant and the triple
                (e.contains("Jacobi") || e.contains("ad-invariant")) && e.contains('(')
            }
            Ok(()) => false,
        }
    };
    tally.record(
        11,
        "negative controls caught with witnesses (corrupted spinor, flipped metric, broken Jacobi)",
        model_controls && fiber_control && jacobi_control,
    );

    assert!(
        tally.failures.is_empty(),
        "acceptance failures:\n{}",
        tally.failures.join("\n")
    );
}

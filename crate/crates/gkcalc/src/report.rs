//! Machine-readable verification reports: every suite produces an ordered
//! list of named checks with pass/fail status, witnesses for failures, and
//! exact values serialized as canonical field-scalar strings. JSON output
//! is deterministic for a fixed (seed, trials).

use crate::curvature::{curvature_top, gauge_curvature_term, i_dp};
use crate::expr::Expr;
use crate::fiber;
use crate::forms::FormSpace;
use crate::lie::{self, cartan::LieClifford};
use crate::models::GKModel;
use crate::pointwise::{extract_eta_n, is_gk_pair, is_nondegenerate, is_pure, section_at, type_number};
use crate::sample::SamplePoint;
use crate::scalar::FieldScalar;
use crate::section::GenSection;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Serialize)]
pub struct Check {
    pub id: String,
    /// Human-readable statement of the identity being verified.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<Check>,
    /// Not serialized: wall time would break byte-level determinism.
    #[serde(skip)]
    pub wall_ms: u128,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn print_human(&self) {
        println!("suite {} (seed {}, trials {})", self.suite, self.seed, self.trials);
        for c in &self.checks {
            let mark = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            println!("  [{mark}] {} — {}", c.id, c.anchor);
            for (k, v) in &c.values {
                println!("         {k} = {v}");
            }
            if let Some(w) = &c.witness {
                println!("         witness: {w}");
            }
        }
        println!("  wall time {} ms", self.wall_ms);
    }
}

fn check(id: &str, anchor: &str, pass: bool, witness: Option<String>) -> Check {
    Check {
        id: id.to_string(),
        anchor: anchor.to_string(),
        status: if pass { Status::Pass } else { Status::Fail },
        witness,
        values: BTreeMap::new(),
    }
}

fn point_witness(p: &SamplePoint) -> String {
    let mut parts: Vec<String> = p.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    parts.sort();
    parts.join(", ")
}

/// Random real polynomial f + conj(f) of low degree, for gauge phases.
fn random_real_polynomial(fs: &FormSpace, rng: &mut ChaCha8Rng) -> Expr {
    let mut f = Expr::zero();
    let names = &fs.patch.coord_names;
    for _ in 0..2 {
        let mut term = Expr::constant(FieldScalar::from_ratio(
            rng.gen_range(-3..=3),
            rng.gen_range(1..=3),
        ));
        for _ in 0..rng.gen_range(1..=2) {
            term = term.mul(&Expr::var(&names[rng.gen_range(0..names.len())]));
        }
        f = f.add(&term);
    }
    f.add(&f.conjugate())
}

/// The per-model verification pipeline.
pub fn verify_model(m: &GKModel, seed: u64, trials: usize) -> Report {
    let start = std::time::Instant::now();
    let fs = &m.fs;
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // closedness of the twist
    checks.push(check(
        &format!("{}-twist-closed", m.name),
        "dH = 0 and H real",
        fs.form_is_zero(&fs.d(&m.h), seed, trials)
            && fs.form_is_zero(&m.h.sub(&fs.conj(&m.h)), seed, trials),
        None,
    ));

    // pointwise structure at sampled points
    let points: Vec<SamplePoint> = (0..trials.min(32)).map(|_| fs.patch.sample(&mut rng)).collect();
    let mut pure_ok = true;
    let mut nondeg_ok = true;
    let mut pair_ok = true;
    let mut types_ok = true;
    let mut nijenhuis_ok = true;
    let mut witness = None;
    for p in &points {
        let ok = is_pure(fs, &m.phi, p).unwrap_or(false)
            && is_pure(fs, &m.psi, p).unwrap_or(false);
        if !ok && witness.is_none() {
            witness = Some(point_witness(p));
        }
        pure_ok &= ok;
        nondeg_ok &= is_nondegenerate(fs, &m.phi, p).unwrap_or(false)
            && is_nondegenerate(fs, &m.psi, p).unwrap_or(false);
        pair_ok &= is_gk_pair(fs, &m.phi, &m.psi, p).unwrap_or(false);
        types_ok &= type_number(fs, &m.phi, p) == Ok(m.expected_types.0)
            && type_number(fs, &m.psi, p) == Ok(m.expected_types.1);
        // extracted integrability data: eta matches the model section and
        // the degree-3 part annihilates the partner spinor
        match extract_eta_n(fs, &m.phi, &m.h, p) {
            Ok(data) => {
                let model_eta = section_at(fs, &m.eta, p);
                if data.eta != model_eta {
                    nijenhuis_ok = false;
                }
                let psip = fs.eval_at(&m.psi, p);
                if !data.n_apply(fs, &psip).is_zero() {
                    nijenhuis_ok = false;
                }
            }
            Err(_) => nijenhuis_ok = false,
        }
    }
    checks.push(check(
        &format!("{}-purity", m.name),
        "both spinors pure at sampled points",
        pure_ok,
        witness.clone(),
    ));
    checks.push(check(
        &format!("{}-nondegeneracy", m.name),
        "ker Phi and its conjugate span at sampled points",
        nondeg_ok,
        None,
    ));
    checks.push(check(
        &format!("{}-gk-pair", m.name),
        "commuting pair with positive definite generalized metric",
        pair_ok,
        None,
    ));
    checks.push(check(
        &format!("{}-type-numbers", m.name),
        &format!("type numbers ({}, {})", m.expected_types.0, m.expected_types.1),
        types_ok,
        None,
    ));
    checks.push(check(
        &format!("{}-integrability-data", m.name),
        "extracted eta matches the closed form; N annihilates the partner spinor",
        nijenhuis_ok,
        None,
    ));

    // normalization
    let (n1, n2) = m.normalization_residuals();
    checks.push(check(
        &format!("{}-normalization", m.name),
        "i^{-n} <Phi, conj Phi> = i^{-n} <Psi, conj Psi> = vol",
        fs.patch.is_zero(&n1, seed ^ 1, trials).is_zero
            && fs.patch.is_zero(&n2, seed ^ 1, trials).is_zero,
        None,
    ));

    // integrability residuals
    let (r1, r2) = m.integrability_residuals();
    checks.push(check(
        &format!("{}-integrability", m.name),
        "d_H Phi = eta . Phi and d_H Psi = zeta . Psi",
        fs.form_is_zero(&r1, seed ^ 2, trials) && fs.form_is_zero(&r2, seed ^ 2, trials),
        None,
    ));

    // scalar curvature, both formulas
    let mut c = check(
        &format!("{}-scalar-curvature", m.name),
        "S constant from the divergence formula",
        fs.patch.is_zero(&m.curvature_residual(), seed ^ 3, trials).is_zero,
        None,
    );
    c.values.insert(
        "expected_s".into(),
        m.expected_s
            .eval(&SamplePoint::new())
            .map(|v| v.to_string())
            .unwrap_or_else(|_| format!("{}", m.expected_s)),
    );
    checks.push(c);
    checks.push(check(
        &format!("{}-scalar-curvature-definition", m.name),
        "defining formula with the 2<zeta, eta> vol cross term agrees",
        fs.patch
            .is_zero(&m.curvature_residual_definition(), seed ^ 4, trials)
            .is_zero,
        None,
    ));

    // gauge independence: 5 random polynomial phase pairs
    let s_top = curvature_top(fs, &m.phi, &m.psi, &m.eta, &m.zeta, &m.h);
    let mut gauge_ok = true;
    for _ in 0..5 {
        let p_phase = random_real_polynomial(fs, &mut rng);
        let q_phase = random_real_polynomial(fs, &mut rng);
        let eta_shift = m.eta.add(&i_dp(fs, &p_phase));
        let zeta_shift = m.zeta.add(&i_dp(fs, &q_phase));
        let s_gauged = gauge_curvature_term(fs, &m.psi, &eta_shift, &q_phase, &m.h)
            .add(&gauge_curvature_term(fs, &m.phi, &zeta_shift, &p_phase, &m.h))
            .re_part();
        if !fs
            .patch
            .is_zero(&s_gauged.sub(&s_top), seed ^ 5, trials.min(8).max(4))
            .is_zero
        {
            gauge_ok = false;
        }
    }
    checks.push(check(
        &format!("{}-gauge-independence", m.name),
        "S unchanged under (Phi, Psi) -> (e^{ip} Phi, e^{iq} Psi)",
        gauge_ok,
        None,
    ));

    // symmetry under swapping the pair
    let s_swapped = curvature_top(fs, &m.psi, &m.phi, &m.zeta, &m.eta, &m.h);
    checks.push(check(
        &format!("{}-symmetry", m.name),
        "S(Phi, Psi) = S(Psi, Phi)",
        fs.patch
            .is_zero(&s_swapped.sub(&s_top), seed ^ 6, trials.min(8).max(4))
            .is_zero,
        None,
    ));

    // negative control: a corrupted spinor must be caught
    let (bad, via): (crate::forms::Form, &str) = if m.phi.terms.len() > 1 {
        // drop one term: integrability must break
        let mask = *m.phi.terms.keys().max().unwrap();
        let mut bad = m.phi.clone();
        bad.terms.remove(&mask);
        (bad, "residual")
    } else {
        (m.phi.add(&fs.d_gen(1)), "purity")
    };
    let mut caught = false;
    let mut bad_witness = None;
    if via == "residual" {
        let res = fs.d_h(&bad, &m.h).sub(&fs.spin_action(&m.eta, &bad));
        for c in res.terms.values() {
            let v = fs.patch.is_zero(c, seed ^ 7, trials.min(8).max(4));
            if !v.is_zero {
                caught = true;
                bad_witness = v.witness.map(|(p, val)| {
                    format!("{}; residual coefficient = {}", point_witness(&p), val)
                });
                break;
            }
        }
    } else {
        let p = fs.patch.sample(&mut rng);
        if !is_pure(fs, &bad, &p).unwrap_or(true) {
            caught = true;
            bad_witness = Some(point_witness(&p));
        }
    }
    checks.push(check(
        &format!("{}-negative-control", m.name),
        "corrupted Phi fails purity or the integrability residual",
        caught,
        bad_witness,
    ));

    Report {
        suite: format!("verify-{}", m.name),
        seed,
        trials,
        checks,
        wall_ms: start.elapsed().as_millis(),
    }
}

/// Golden values for the built-in Lie algebras, frozen from an independent
/// brute-force expansion.
fn golden_for(name: &str) -> Option<(String, String)> {
    let text = match name {
        "su2xu1" => include_str!("../golden/lie_su2xu1.json"),
        "su3" => include_str!("../golden/lie_su3.json"),
        _ => return None,
    };
    let v: serde_json::Value = serde_json::from_str(text).ok()?;
    Some((
        v["p_norm_sq"].as_str()?.to_string(),
        v["scalar_curvature"].as_str()?.to_string(),
    ))
}

/// Lie-side suite: curvature identities, golden comparison, Pin chains,
/// and the pointwise group-level checks for the built-in algebras.
pub fn lie_suite(data: lie::LieAlgebra, name: &str, seed: u64) -> Result<Report, String> {
    let start = std::time::Instant::now();
    let mut checks = Vec::new();
    let lc = LieClifford::new(data)?;
    let cur = lc.lie_scalar_curvature()?;
    let two_pp = cur.p_norm_sq.clone() * FieldScalar::from_int(2);

    let mut c = check(
        &format!("lie-{name}-curvature"),
        "each curvature term equals |P|^2 and S = 2 |P|^2",
        cur.s_psi == cur.p_norm_sq && cur.s_phi == cur.p_norm_sq && cur.s == two_pp,
        None,
    );
    c.values.insert("p_norm_sq".into(), cur.p_norm_sq.to_string());
    c.values.insert("scalar_curvature".into(), cur.s.to_string());
    checks.push(c);

    if let Some((g_p, g_s)) = golden_for(name) {
        checks.push(check(
            &format!("lie-{name}-golden"),
            "matches the frozen golden values",
            cur.p_norm_sq.to_string() == g_p && cur.s.to_string() == g_s,
            None,
        ));
    }

    // Pin deformation chains
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pin_ok = true;
    for _ in 0..5 {
        let chain: Vec<_> = (0..rng.gen_range(1..=4))
            .map(|_| lc.random_pin_factor(&mut rng))
            .collect();
        match lc.pin_deform(&cur, &chain) {
            Ok((_, _, s)) => {
                if s != cur.s {
                    pin_ok = false;
                }
            }
            Err(_) => pin_ok = false,
        }
    }
    checks.push(check(
        &format!("lie-{name}-pin-chains"),
        "random Pin chains preserve the scalar curvature",
        pin_ok,
        None,
    ));

    // group-level pointwise checks where a matrix model exists
    if let Some(gm) = lie::abm::model(name) {
        gm.check_consistency()?;
        let mut pair_ok = true;
        for _ in 0..10 {
            let g = gm.random_point(&mut rng);
            let x1 = gm.random_element(&mut rng);
            let x2 = gm.random_element(&mut rng);
            let y1 = gm.random_element(&mut rng);
            let y2 = gm.random_element(&mut rng);
            let s1 = lie::abm::section_of(&x1, &y1);
            let s2 = lie::abm::section_of(&x2, &y2);
            let lhs = lie::abm::pairing_at(&s1, &s2, &g);
            let rhs = lie::abm::b_tr(&x1, &x2) - lie::abm::b_tr(&y1, &y2);
            if lhs != rhs {
                pair_ok = false;
            }
        }
        checks.push(check(
            &format!("lie-{name}-double-pairing"),
            "section pairing equals the split double-form at group points",
            pair_ok,
            None,
        ));

        // bracket identities on the invariant sections
        let tests = gm.gens.clone();
        let zero3 = crate::linalg::Matrix::zeros(3, 3);
        let mut br_ok = [true; 4];
        for _ in 0..5 {
            let g = gm.random_point(&mut rng);
            let x1 = gm.random_element(&mut rng);
            let x2 = gm.random_element(&mut rng);
            let y1 = gm.random_element(&mut rng);
            let y2 = gm.random_element(&mut rng);
            let br = lie::abm::comm(&x1, &x2);
            br_ok[0] &= lie::abm::bracket_at(
                &lie::abm::section_of(&x1, &zero3),
                &lie::abm::section_of(&x2, &zero3),
                &g,
                &tests,
            ) == lie::abm::section_values(&lie::abm::section_of(&br, &zero3), &g, &tests);
            let brr = lie::abm::comm(&y1, &y2);
            br_ok[1] &= lie::abm::bracket_at(
                &lie::abm::section_of(&zero3, &y1),
                &lie::abm::section_of(&zero3, &y2),
                &g,
                &tests,
            ) == lie::abm::section_values(&lie::abm::section_of(&zero3, &brr), &g, &tests);
            let (v, cov) = lie::abm::bracket_at(
                &lie::abm::section_of(&x1, &zero3),
                &lie::abm::section_of(&zero3, &y2),
                &g,
                &tests,
            );
            br_ok[2] &= v == zero3 && cov.iter().all(|c| c.is_zero());
            br_ok[3] &= lie::abm::bracket_at(
                &lie::abm::section_of(&x1, &y1),
                &lie::abm::section_of(&x2, &y2),
                &g,
                &tests,
            ) == lie::abm::section_values(
                &lie::abm::section_of(&br, &lie::abm::comm(&y1, &y2)),
                &g,
                &tests,
            );
        }
        for (k, label) in [
            "left sections close under the twisted bracket",
            "right sections close under the twisted bracket",
            "left and right sections commute",
            "mixed sections reproduce the double bracket",
        ]
        .iter()
        .enumerate()
        {
            checks.push(check(
                &format!("lie-{name}-bracket-{k}"),
                label,
                br_ok[k],
                None,
            ));
        }
    }

    Ok(Report {
        suite: format!("lie-{name}"),
        seed,
        trials: 5,
        checks,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// Cross-module property suite on random data.
pub fn props_suite(seed: u64, trials: usize) -> Report {
    let start = std::time::Instant::now();
    let mut checks = Vec::new();
    let fs = FormSpace::new(crate::patch::Patch::flat(2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let rand_expr = |rng: &mut ChaCha8Rng| -> Expr {
        let mut e = Expr::constant(FieldScalar::from_ratio(
            rng.gen_range(-2..=2),
            rng.gen_range(1..=2),
        ));
        for _ in 0..rng.gen_range(0..=2) {
            e = e.mul(&Expr::var(&fs.patch.coord_names[rng.gen_range(0..4)]));
        }
        e
    };
    let rand_section = |rng: &mut ChaCha8Rng| -> GenSection {
        GenSection {
            v: (0..4).map(|_| rand_expr(rng)).collect(),
            xi: (0..4).map(|_| rand_expr(rng)).collect(),
        }
    };
    let rand_form = |rng: &mut ChaCha8Rng| -> crate::forms::Form {
        let mut a = fs.zero();
        for _ in 0..3 {
            a = a.add(&crate::forms::Form::blade(
                crate::clifford::Repr::Exterior,
                rng.gen_range(0..16),
                rand_expr(rng),
            ));
        }
        a
    };

    // Clifford relation for the spin action
    let mut clifford_ok = true;
    for _ in 0..trials.min(16) {
        let e1 = rand_section(&mut rng);
        let e2 = rand_section(&mut rng);
        let a = rand_form(&mut rng);
        let lhs = fs
            .spin_action(&e1, &fs.spin_action(&e2, &a))
            .add(&fs.spin_action(&e2, &fs.spin_action(&e1, &a)));
        let rhs = a.scale(&fs.pairing_tt(&e1, &e2).mul(&Expr::int(2)));
        if !fs.form_is_zero(&lhs.sub(&rhs), seed ^ 11, 4) {
            clifford_ok = false;
        }
    }
    checks.push(check(
        "props-clifford-relation",
        "e1 e2 + e2 e1 = 2 <e1, e2> as operators on forms",
        clifford_ok,
        None,
    ));

    // operator brackets, untwisted and twisted
    let h = {
        let b = rand_form(&mut rng);
        let real = b.add(&fs.conj(&b));
        fs.d(&real)
    };
    let pair_count = trials.max(50);
    let mut co_ok = true;
    let mut tw_ok = true;
    for k in 0..pair_count {
        let e1 = rand_section(&mut rng);
        let e2 = rand_section(&mut rng);
        let a = rand_form(&mut rng);
        let zero_h = fs.zero();
        let (h_use, flag): (&crate::forms::Form, &mut bool) = if k % 2 == 0 {
            (&zero_h, &mut co_ok)
        } else {
            (&h, &mut tw_ok)
        };
        let lhs = fs
            .lie_derivative_h(&e1, &fs.lie_derivative_h(&e2, &a, h_use), h_use)
            .sub(&fs.lie_derivative_h(&e2, &fs.lie_derivative_h(&e1, &a, h_use), h_use));
        let br = fs.courant_bracket(&e1, &e2, h_use);
        let rhs = fs.lie_derivative_h(&br, &a, h_use);
        if !fs.form_is_zero(&lhs.sub(&rhs), seed ^ 13, 3) {
            *flag = false;
        }
    }
    checks.push(check(
        "props-courant-operator-bracket",
        "[L_e1, L_e2] = L_[e1,e2] on random untwisted sections",
        co_ok,
        None,
    ));
    checks.push(check(
        "props-twisted-operator-bracket",
        "[L^H_e1, L^H_e2] = L^H_[e1,e2]_H on random twisted sections",
        tw_ok,
        None,
    ));

    // Mukai sign determination, pinned by the flat model: both spinor norms
    // give the same volume, positively oriented against dx1 dy1 dx2 dy2
    // (the top blade dz1 dz1b dz2 dz2b equals -4 times the real volume).
    let m = crate::models::flat_kahler();
    let v1 = m.fs.norm_pairing(&m.phi);
    let v2 = m.fs.norm_pairing(&m.psi);
    let same = m.fs.patch.is_zero(&v1.sub(&v2), seed ^ 17, 8).is_zero;
    let oriented = v1
        .mul(&Expr::int(-4))
        .eval(&crate::sample::SamplePoint::new())
        .ok()
        .and_then(|c| c.real_sign())
        == Some(1);
    checks.push(check(
        "props-mukai-sign",
        "spinor norms agree and orient the volume positively",
        same && oriented,
        None,
    ));

    Report {
        suite: "props".into(),
        seed,
        trials,
        checks,
        wall_ms: start.elapsed().as_millis(),
    }
}

/// Numeric fiber suite wrapped as a report.
pub fn fiber_report(n: usize, points: usize, seed: u64) -> Report {
    let start = std::time::Instant::now();
    let checks = fiber::fiber_checks(n, points, seed)
        .into_iter()
        .map(|c| {
            let mut ck = check(&c.id, "bounded-domain Kahler data", c.pass, None);
            ck.values.insert("detail".into(), c.detail);
            ck
        })
        .collect();
    Report {
        suite: format!("fiber-n{n}"),
        seed,
        trials: points,
        checks,
        wall_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn flat_model_report_all_pass() {
        let m = models::flat_kahler();
        let r = verify_model(&m, 0, 8);
        assert!(r.all_pass(), "{}", r.to_json());
    }

    #[test]
    fn lie_suite_su2xu1_all_pass() {
        let r = lie_suite(lie::su2_u1(), "su2xu1", 0).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
    }

    #[test]
    fn props_report_all_pass() {
        let r = props_suite(1, 8);
        assert!(r.all_pass(), "{}", r.to_json());
    }

    #[test]
    fn json_deterministic() {
        let a = fiber_report(1, 5, 7).to_json();
        let b = fiber_report(1, 5, 7).to_json();
        assert_eq!(a, b);
    }
}

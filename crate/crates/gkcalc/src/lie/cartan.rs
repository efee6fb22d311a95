//! Clifford-algebraic structures attached to a compact Lie algebra: the
//! Cartan three-form, the momentum element P, the pure spinors phi and psi,
//! the Clifford differential, the invariant pairing, the constant scalar
//! curvature 2|P|^2, and Pin deformations.
//!
//! The Clifford relation used throughout is x y + y x = B(x, y), so the
//! engine's pairing slot (which doubles) is fed B/2; in the unitary basis
//! th thb + thb th = 1.

use crate::clifford::{Algebra, Mv, Repr};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::FieldScalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type F = FieldScalar;

pub struct LieClifford {
    pub data: LieAlgebra,
    pub cl: Algebra,
}

/// A section of the double g + g, acting by rho((x, x')) t =
/// x t - (-1)^|t| t x'. e(P) = (P, P), a(P) = (P, -P).
#[derive(Clone)]
pub struct DoubleSection {
    pub left: Mv<F>,
    pub right: Mv<F>,
}

pub fn e_of(p: &Mv<F>) -> DoubleSection {
    DoubleSection {
        left: p.clone(),
        right: p.clone(),
    }
}

pub fn a_of(p: &Mv<F>) -> DoubleSection {
    DoubleSection {
        left: p.clone(),
        right: p.neg(),
    }
}

impl LieClifford {
    pub fn new(data: LieAlgebra) -> Result<LieClifford, String> {
        data.validate()?;
        let d = data.dim();
        let names = (0..d).map(|i| data.gen_name(i)).collect();
        let half = F::from_ratio(1, 2);
        let g = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| data.b.at(i, j).clone() * half.clone())
                    .collect()
            })
            .collect();
        Ok(LieClifford {
            data,
            cl: Algebra::new(names, g),
        })
    }

    pub fn generator(&self, i: usize) -> Mv<F> {
        Mv::generator(Repr::Clifford, i)
    }

    pub fn from_vec(&self, v: &[F]) -> Mv<F> {
        let mut out = Mv::zero(Repr::Clifford);
        for (i, c) in v.iter().enumerate() {
            out.accum(1 << i, c.clone());
        }
        out
    }

    pub fn conj(&self, x: &Mv<F>) -> Mv<F> {
        self.cl.conj_perm(x, &self.data.conj_perm())
    }

    /// The unique Xi in wedge^3 g with i_{x3} i_{x2} i_{x1} Xi = B(x1,[x2,x3])
    /// for all basis triples, found by an exact linear solve over the
    /// three-blade basis.
    pub fn cartan_three_form(&self) -> Mv<F> {
        let d = self.data.dim();
        let blades: Vec<u32> = (0..1u32 << d).filter(|m| m.count_ones() == 3).collect();
        let nb = blades.len();
        let mut rows = Vec::with_capacity(nb);
        let mut rhs = Vec::with_capacity(nb);
        let basis: Vec<Vec<F>> = (0..d)
            .map(|i| {
                let mut v = vec![F::zero(); d];
                v[i] = F::one();
                v
            })
            .collect();
        for &triple in &blades {
            let idx: Vec<usize> = (0..d).filter(|i| triple >> i & 1 == 1).collect();
            let (x1, x2, x3) = (idx[0], idx[1], idx[2]);
            let mut row = Vec::with_capacity(nb);
            for &blade in &blades {
                let b = Mv::blade(Repr::Exterior, blade, F::one());
                // the engine contraction doubles its pairing slot, which
                // holds B/2, so each i_x here contracts with B itself
                let c = self
                    .cl
                    .contract(x3, &self.cl.contract(x2, &self.cl.contract(x1, &b)))
                    .coeff(0);
                row.push(c);
            }
            rows.push(row);
            rhs.push(
                self.data
                    .b_form(&basis[x1], &self.data.bracket_vec(&basis[x2], &basis[x3])),
            );
        }
        let solution = Matrix::new(rows)
            .solve(&rhs)
            .expect("the contraction system is invertible for a (1,1) form B");
        let mut xi = Mv::zero(Repr::Exterior);
        for (c, &blade) in solution.into_iter().zip(&blades) {
            xi.accum(blade, c);
        }
        xi
    }

    /// P_a read from the 2 P_a ^ th_a ^ thb_a blades of Xi; returns
    /// (list of P_a, P = sum P_a) as coefficient vectors over the basis.
    pub fn compute_p(&self, xi: &Mv<F>) -> Result<(Vec<Vec<F>>, Vec<F>), String> {
        let (k, m) = (self.data.k, self.data.m);
        let d = self.data.dim();
        let mut list = Vec::new();
        let mut total = vec![F::zero(); d];
        let half = F::from_ratio(1, 2);
        for a in 0..m {
            let th = 2 * k + a;
            let thb = 2 * k + m + a;
            let mut pa = vec![F::zero(); d];
            for i in 0..2 * k {
                // t_i < th < thb in generator order, so the blade coefficient
                // carries no reordering sign
                let c = xi.coeff(1 << i | 1 << th | 1 << thb);
                pa[i] = c * half.clone();
                total[i] = total[i].clone() + pa[i].clone();
            }
            list.push(pa);
        }
        let minus_conj: Vec<F> = self.data.conj_vec(&total).iter().map(|c| -c.clone()).collect();
        if total != minus_conj {
            return Err("P is not pure imaginary; invalid root data".to_string());
        }
        Ok((list, total))
    }

    pub fn p_norm_sq(&self, p: &[F]) -> F {
        -self.data.b_form(p, p)
    }

    /// phi = (prod t_i)(prod th_a): a single Clifford word.
    pub fn phi(&self) -> Mv<F> {
        let (k, m) = (self.data.k, self.data.m);
        let mut mask = 0u32;
        for i in 0..k {
            mask |= 1 << i;
        }
        for a in 0..m {
            mask |= 1 << (2 * k + a);
        }
        Mv::blade(Repr::Clifford, mask, F::one())
    }

    /// psi = (prod t_i tb_i)(prod th_a thb_a).
    pub fn psi(&self) -> Mv<F> {
        let (k, m) = (self.data.k, self.data.m);
        let mut out = Mv::one(Repr::Clifford);
        for i in 0..k {
            out = self.cl.cl_mul(&out, &self.generator(i));
            out = self.cl.cl_mul(&out, &self.generator(i + k));
        }
        for a in 0..m {
            out = self.cl.cl_mul(&out, &self.generator(2 * k + a));
            out = self.cl.cl_mul(&out, &self.generator(2 * k + m + a));
        }
        out
    }

    pub fn rho(&self, zeta: &DoubleSection, x: &Mv<F>) -> Mv<F> {
        let left = self.cl.cl_mul(&zeta.left, x);
        let right = self.cl.cl_mul(x, &zeta.right);
        if parity_of(x) {
            left.sub(&right)
        } else {
            left.add(&right)
        }
    }

    /// d^cl x = -(q(Xi) x - (-1)^|x| x q(Xi)).
    pub fn d_cl(&self, q_xi: &Mv<F>, x: &Mv<F>) -> Mv<F> {
        let left = self.cl.cl_mul(q_xi, x);
        let right = self.cl.cl_mul(x, q_xi);
        if parity_of(x) {
            left.sub(&right).neg()
        } else {
            left.add(&right).neg()
        }
    }

    /// Volume-blade coefficient of symbol(transpose(x) y).
    pub fn cl_pairing(&self, x: &Mv<F>, y: &Mv<F>) -> F {
        self.cl
            .symbol_map(&self.cl.cl_mul(&self.cl.transpose(x), y))
            .coeff(self.cl.top_mask())
    }

    /// S for a (possibly deformed) spinor pair: each summand is the exact
    /// real part of -(chi, d^cl rho(.) chib)/(chi, chib), with a(P) acting
    /// through psi's term and e(P) through phi's.
    pub fn scalar_curvature_of(
        &self,
        q_xi: &Mv<F>,
        p: &Mv<F>,
        phi: &Mv<F>,
        psi: &Mv<F>,
    ) -> Result<(F, F, F), String> {
        let phib = self.conj(phi);
        let psib = self.conj(psi);
        let re = |z: F| (z.clone() + z.conj()) * F::from_ratio(1, 2);
        let term = |chi: &Mv<F>, chib: &Mv<F>, acted: Mv<F>| -> Result<F, String> {
            let den = self.cl_pairing(chi, chib);
            if den.is_zero() {
                return Err("degenerate spinor pairing".to_string());
            }
            let num = self.cl_pairing(chi, &self.d_cl(q_xi, &acted));
            Ok(re(-(num / den)))
        };
        let s_psi = term(psi, &psib, self.rho(&a_of(p), &psib))?;
        let s_phi = term(phi, &phib, self.rho(&e_of(p), &phib))?;
        let total = s_psi.clone() + s_phi.clone();
        Ok((s_psi, s_phi, total))
    }

    /// Full pipeline on validated data.
    pub fn lie_scalar_curvature(&self) -> Result<LieCurvature, String> {
        let xi = self.cartan_three_form();
        let q_xi = self.cl.q_map(&xi);
        let (_, p_vec) = self.compute_p(&xi)?;
        let p = self.from_vec(&p_vec);
        let p_norm_sq = self.p_norm_sq(&p_vec);
        let (phi, psi) = (self.phi(), self.psi());
        // exact differential identities behind the curvature formula
        let dphi = self.d_cl(&q_xi, &phi);
        if dphi != self.rho(&a_of(&p), &phi).neg() {
            return Err("d^cl phi != -rho(a(P)) phi".to_string());
        }
        let dpsi = self.d_cl(&q_xi, &psi);
        if dpsi != self.rho(&e_of(&p), &psi).neg() {
            return Err("d^cl psi != -rho(e(P)) psi".to_string());
        }
        let (s_psi, s_phi, s) = self.scalar_curvature_of(&q_xi, &p, &phi, &psi)?;
        // d^cl o d^cl is recorded, not asserted
        let ddphi = self.d_cl(&q_xi, &dphi);
        let dd_ratio = if ddphi.is_zero() {
            F::zero()
        } else {
            ddphi.coeff(*phi.terms.keys().next().unwrap())
        };
        Ok(LieCurvature {
            xi,
            q_xi,
            p_vec,
            p,
            p_norm_sq,
            phi,
            psi,
            s_psi,
            s_phi,
            s,
            dd_ratio,
        })
    }

    /// One Pin factor: (u1, u2) in the real Cartan spans with
    /// B(u1,u1) - B(u2,u2) = +1 or -1, generated from an exact rational
    /// point: radii p = (t^2 + 1/2)/2t, q = (t^2 - 1/2)/2t satisfy
    /// 2p^2 - 2q^2 = 1, and each u is a rational rotation of its radius.
    pub fn random_pin_factor(&self, rng: &mut ChaCha8Rng) -> DoubleSection {
        let nonzero_rat = |rng: &mut ChaCha8Rng| {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            F::from_ratio(sign * rng.gen_range(1..=9), rng.gen_range(1..=9))
        };
        let t = nonzero_rat(rng);
        let two = F::from_int(2);
        let radius_p = (t.clone() * t.clone() + F::from_ratio(1, 2)) / (two.clone() * t.clone());
        let radius_q = (t.clone() * t.clone() - F::from_ratio(1, 2)) / (two * t);
        let rotate = |r: &F, s: &F| -> (F, F) {
            let den = F::one() + s.clone() * s.clone();
            let a = r.clone() * (F::one() - s.clone() * s.clone()) / den.clone();
            let b = r.clone() * F::from_int(2) * s.clone() / den;
            (a, b)
        };
        let (a1, b1) = rotate(&radius_p, &nonzero_rat(rng));
        let (a2, b2) = rotate(&radius_q, &nonzero_rat(rng));
        let flip = rng.gen_bool(0.5);
        let (u1, u2) = if flip { ((a2, b2), (a1, b1)) } else { ((a1, b1), (a2, b2)) };
        let mk = |(a, b): (F, F)| -> Mv<F> {
            // u = a (t1 + tb1) + b i (t1 - tb1), a real Cartan element
            let mut v = vec![F::zero(); self.data.dim()];
            v[0] = a.clone() + F::i() * b.clone();
            v[self.data.k] = a - F::i() * b;
            self.from_vec(&v)
        };
        DoubleSection {
            left: mk(u1),
            right: mk(u2),
        }
    }

    /// Norm of a Pin factor in the double: B(u1,u1) - B(u2,u2).
    pub fn pin_norm(&self, e: &DoubleSection) -> F {
        let b_of = |x: &Mv<F>| {
            // x^2 = B(x,x)/2 for degree-1 x
            let sq = self.cl.cl_mul(x, x).coeff(0);
            sq * F::from_int(2)
        };
        b_of(&e.left) - b_of(&e.right)
    }

    /// Apply a chain of Pin factors to both spinors and recompute S.
    pub fn pin_deform(
        &self,
        cur: &LieCurvature,
        chain: &[DoubleSection],
    ) -> Result<(F, F, F), String> {
        let mut phi = cur.phi.clone();
        let mut psi = cur.psi.clone();
        for e in chain {
            let norm = self.pin_norm(e);
            if norm != F::one() && norm != -F::one() {
                return Err(format!("Pin factor has norm {norm}, expected +1 or -1"));
            }
            phi = self.rho(e, &phi);
            psi = self.rho(e, &psi);
        }
        // the deformed pair still satisfies the differential identities
        if self.d_cl(&cur.q_xi, &phi) != self.rho(&a_of(&cur.p), &phi).neg() {
            return Err("deformed phi loses d^cl phi = -rho(a(P)) phi".to_string());
        }
        if self.d_cl(&cur.q_xi, &psi) != self.rho(&e_of(&cur.p), &psi).neg() {
            return Err("deformed psi loses d^cl psi = -rho(e(P)) psi".to_string());
        }
        self.scalar_curvature_of(&cur.q_xi, &cur.p, &phi, &psi)
    }
}

pub struct LieCurvature {
    pub xi: Mv<F>,
    pub q_xi: Mv<F>,
    pub p_vec: Vec<F>,
    pub p: Mv<F>,
    pub p_norm_sq: F,
    pub phi: Mv<F>,
    pub psi: Mv<F>,
    pub s_psi: F,
    pub s_phi: F,
    pub s: F,
    pub dd_ratio: F,
}

fn parity_of(x: &Mv<F>) -> bool {
    let mut even = None;
    for m in x.terms.keys() {
        let e = m.count_ones() % 2 == 0;
        match even {
            None => even = Some(e),
            Some(prev) => assert_eq!(prev, e, "non-homogeneous parity"),
        }
    }
    even.unwrap_or(true)
}

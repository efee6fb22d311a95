//! Exact pointwise linear algebra of a pure spinor: Clifford kernel,
//! purity and nondegeneracy, the induced endomorphism J, the generalized
//! Kahler compatibility test, and the decomposition d_H Phi = (eta + N).Phi.
//!
//! Points in (T + T*)^C are coefficient vectors in C^{4n}: index i < 2n is
//! the d/dz_i component (patch coordinate ordering), index 2n + i the dz_i
//! component.

use crate::clifford::Mv;
use crate::expr::Expr;
use crate::forms::{Form, FormSpace};
use crate::linalg::Matrix;
use crate::sample::SamplePoint;
use crate::scalar::FieldScalar;
use crate::section::GenSection;

type F = FieldScalar;

/// Spin action of a constant coefficient vector on a pointwise form.
pub fn spin_at(fs: &FormSpace, e: &[F], a: &Mv<F>) -> Mv<F> {
    let n2 = 2 * fs.patch.n;
    let mut out = Mv::zero(a.repr);
    for (&mask, c) in &a.terms {
        for k in 0..n2 {
            let bit = 1u32 << k;
            // interior product of the vector part
            if mask & bit != 0 && !e[k].is_zero() {
                let below = (mask & (bit - 1)).count_ones();
                let mut coeff = e[k].clone() * c.clone();
                if below % 2 == 1 {
                    coeff = -coeff;
                }
                out.accum(mask & !bit, coeff);
            }
            // exterior product of the covector part
            if mask & bit == 0 && !e[n2 + k].is_zero() {
                let below = (mask & (bit - 1)).count_ones();
                let mut coeff = e[n2 + k].clone() * c.clone();
                if below % 2 == 1 {
                    coeff = -coeff;
                }
                out.accum(mask | bit, coeff);
            }
        }
    }
    out
}

/// Conjugation on coefficient vectors: conj(d/dz_k) = d/dz_kb and likewise
/// for covectors.
pub fn conj_vec(fs: &FormSpace, e: &[F]) -> Vec<F> {
    let n2 = 2 * fs.patch.n;
    (0..2 * n2)
        .map(|i| {
            let j = if i < n2 { i ^ 1 } else { n2 + ((i - n2) ^ 1) };
            e[j].conj()
        })
        .collect()
}

/// <. , .> on coefficient vectors.
pub fn pair_vec(fs: &FormSpace, a: &[F], b: &[F]) -> F {
    let n2 = 2 * fs.patch.n;
    let half = F::from_ratio(1, 2);
    let mut acc = F::zero();
    for k in 0..n2 {
        acc = acc + a[k].clone() * b[n2 + k].clone() + b[k].clone() * a[n2 + k].clone();
    }
    acc * half
}

/// Constant-coefficient section from a vector, for feeding symbolic
/// operations a pointwise value.
pub fn section_from_vec(fs: &FormSpace, e: &[F]) -> GenSection {
    let n2 = 2 * fs.patch.n;
    GenSection {
        v: (0..n2).map(|k| Expr::constant(e[k].clone())).collect(),
        xi: (0..n2).map(|k| Expr::constant(e[n2 + k].clone())).collect(),
    }
}

/// Evaluate a symbolic section at a point, as a coefficient vector.
pub fn section_at(_fs: &FormSpace, e: &GenSection, p: &SamplePoint) -> Vec<F> {
    e.v.iter()
        .chain(&e.xi)
        .map(|c| c.eval(p).expect("section coefficient evaluates"))
        .collect()
}

/// Basis of the Clifford annihilator of Phi at p.
pub fn kernel_at_point(fs: &FormSpace, phi: &Form, p: &SamplePoint) -> Result<Vec<Vec<F>>, String> {
    let phip = fs.eval_at(phi, p);
    if phip.is_zero() {
        return Err("spinor vanishes at the sample point".into());
    }
    let n2 = 2 * fs.patch.n;
    let dim = 1usize << n2;
    let mut m = Matrix::zeros(dim, 2 * n2);
    for i in 0..2 * n2 {
        let mut e = vec![F::zero(); 2 * n2];
        e[i] = F::one();
        let col = spin_at(fs, &e, &phip);
        for (&mask, c) in &col.terms {
            m.data[mask as usize][i] = c.clone();
        }
    }
    Ok(m.kernel())
}

/// Purity: kernel of dimension 2n, isotropic.
pub fn is_pure(fs: &FormSpace, phi: &Form, p: &SamplePoint) -> Result<bool, String> {
    let ker = kernel_at_point(fs, phi, p)?;
    if ker.len() != 2 * fs.patch.n {
        return Ok(false);
    }
    for a in &ker {
        for b in &ker {
            if !pair_vec(fs, a, b).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nondegeneracy: ker Phi and its conjugate intersect trivially.
pub fn is_nondegenerate(fs: &FormSpace, phi: &Form, p: &SamplePoint) -> Result<bool, String> {
    let ker = kernel_at_point(fs, phi, p)?;
    let n4 = 4 * fs.patch.n;
    let mut rows: Vec<Vec<F>> = ker.clone();
    rows.extend(ker.iter().map(|v| conj_vec(fs, v)));
    if rows.len() != n4 {
        return Ok(false);
    }
    Ok(Matrix::new(rows).rank() == n4)
}

/// The endomorphism J of (T + T*)^C with ker Phi as -i eigenspace and its
/// conjugate as +i eigenspace.
pub fn induced_j(fs: &FormSpace, phi: &Form, p: &SamplePoint) -> Result<Matrix, String> {
    let ker = kernel_at_point(fs, phi, p)?;
    let n2 = 2 * fs.patch.n;
    if ker.len() != n2 {
        return Err("spinor is not pure at the sample point".into());
    }
    let n4 = 2 * n2;
    let mut pmat = Matrix::zeros(n4, n4);
    let mut d = Matrix::zeros(n4, n4);
    for (j, v) in ker.iter().enumerate() {
        let vb = conj_vec(fs, v);
        for i in 0..n4 {
            pmat.data[i][j] = v[i].clone();
            pmat.data[i][n2 + j] = vb[i].clone();
        }
        d.data[j][j] = -F::i();
        d.data[n2 + j][n2 + j] = F::i();
    }
    let pinv = pmat
        .inverse()
        .ok_or_else(|| "spinor is degenerate at the sample point".to_string())?;
    Ok(pmat.mul(&d).mul(&pinv))
}

/// Real basis of T + T* (u and iu-type combinations of the holomorphic
/// directions), as coefficient vectors.
fn real_basis(fs: &FormSpace) -> Vec<Vec<F>> {
    let n2 = 2 * fs.patch.n;
    let n4 = 2 * n2;
    let mut out = Vec::new();
    for base in (0..n4).step_by(2) {
        let (i, j) = (base, base + 1); // a holomorphic index and its conjugate
        let mut u = vec![F::zero(); n4];
        u[i] = F::one();
        u[j] = F::one();
        out.push(u);
        let mut w = vec![F::zero(); n4];
        w[i] = F::i();
        w[j] = -F::i();
        out.push(w);
    }
    out
}

/// Generalized Kahler compatibility at a point: commuting pair and positive
/// definite G = <-J1 J2 . , .>, decided by exact leading principal minors.
pub fn is_gk_pair(fs: &FormSpace, phi: &Form, psi: &Form, p: &SamplePoint) -> Result<bool, String> {
    let j1 = induced_j(fs, phi, p)?;
    let j2 = induced_j(fs, psi, p)?;
    if j1.mul(&j2) != j2.mul(&j1) {
        return Ok(false);
    }
    let ghat = j1.mul(&j2);
    // G(x, y) = <-J1 J2 x, y> on a real basis
    let basis = real_basis(fs);
    let m = basis.len();
    let mut g = Matrix::zeros(m, m);
    for (a, ra) in basis.iter().enumerate() {
        let gx: Vec<F> = {
            let gv = ghat.mul_vec(ra);
            gv.iter().map(|c| -c.clone()).collect()
        };
        for (b, rb) in basis.iter().enumerate() {
            let val = pair_vec(fs, &gx, rb);
            if !val.is_real() {
                return Err("compatibility form has non-real entries".into());
            }
            g.data[a][b] = val;
        }
    }
    Ok(g
        .leading_principal_minors()
        .iter()
        .all(|d| d.real_sign() == Some(1)))
}

/// The degree <= 3 decomposition of d_H Phi at a point.
pub struct EtaN {
    /// eta = ebar - conj(ebar), a pure imaginary coefficient vector.
    pub eta: Vec<F>,
    /// chi: coefficients over products kbar_i kbar_j kbar_k (i < j < k) of
    /// the conjugate kernel basis.
    pub chi: Vec<((usize, usize, usize), F)>,
    /// conjugate kernel basis used for chi.
    pub kbar: Vec<Vec<F>>,
}

impl EtaN {
    /// N x = (chi + conj chi) . x at the point.
    pub fn n_apply(&self, fs: &FormSpace, x: &Mv<F>) -> Mv<F> {
        let mut out = Mv::zero(x.repr);
        for ((i, j, k), c) in &self.chi {
            let acted = spin_at(
                fs,
                &self.kbar[*i],
                &spin_at(fs, &self.kbar[*j], &spin_at(fs, &self.kbar[*k], x)),
            );
            out = out.add(&acted.scale(c));
            let acted = spin_at(
                fs,
                &conj_vec(fs, &self.kbar[*i]),
                &spin_at(
                    fs,
                    &conj_vec(fs, &self.kbar[*j]),
                    &spin_at(fs, &conj_vec(fs, &self.kbar[*k]), x),
                ),
            );
            out = out.add(&acted.scale(&c.conj()));
        }
        out
    }
}

/// Solve d_H Phi|_p = (ebar + chi).Phi|_p with ebar in the conjugate kernel
/// and chi in its third exterior power; return eta = ebar - conj(ebar) and N.
pub fn extract_eta_n(fs: &FormSpace, phi: &Form, h: &Form, p: &SamplePoint) -> Result<EtaN, String> {
    let ker = kernel_at_point(fs, phi, p)?;
    let n2 = 2 * fs.patch.n;
    if ker.len() != n2 {
        return Err("spinor is not pure at the sample point".into());
    }
    let kbar: Vec<Vec<F>> = ker.iter().map(|v| conj_vec(fs, v)).collect();
    let phip = fs.eval_at(phi, p);
    let w = fs.eval_at(&fs.d_h(phi, h), p);

    let dim = 1usize << n2;
    let mut cols: Vec<Mv<F>> = Vec::new();
    let mut labels: Vec<Option<(usize, usize, usize)>> = Vec::new();
    for v in &kbar {
        cols.push(spin_at(fs, v, &phip));
        labels.push(None);
    }
    for i in 0..n2 {
        for j in i + 1..n2 {
            for k in j + 1..n2 {
                cols.push(spin_at(
                    fs,
                    &kbar[i],
                    &spin_at(fs, &kbar[j], &spin_at(fs, &kbar[k], &phip)),
                ));
                labels.push(Some((i, j, k)));
            }
        }
    }
    let mut m = Matrix::zeros(dim, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (&mask, val) in &col.terms {
            m.data[mask as usize][c] = val.clone();
        }
    }
    let mut rhs = vec![F::zero(); dim];
    for (&mask, val) in &w.terms {
        rhs[mask as usize] = val.clone();
    }
    let sol = m
        .solve(&rhs)
        .ok_or_else(|| "d_H Phi is not in the degree <= 3 image of Phi".to_string())?;

    let mut ebar = vec![F::zero(); 2 * n2];
    for (idx, v) in kbar.iter().enumerate() {
        for (i, c) in v.iter().enumerate() {
            ebar[i] = ebar[i].clone() + sol[idx].clone() * c.clone();
        }
    }
    let ebar_conj = conj_vec(fs, &ebar);
    let eta: Vec<F> = ebar
        .iter()
        .zip(&ebar_conj)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    let chi: Vec<((usize, usize, usize), F)> = labels
        .iter()
        .zip(&sol)
        .filter_map(|(l, c)| l.map(|t| (t, c.clone())).filter(|(_, c)| !c.is_zero()))
        .collect();
    Ok(EtaN { eta, chi, kbar })
}

/// Minimal degree of the form at the point.
pub fn type_number(fs: &FormSpace, phi: &Form, p: &SamplePoint) -> Result<u32, String> {
    let phip = fs.eval_at(phi, p);
    phip.terms
        .keys()
        .map(|m| m.count_ones())
        .min()
        .ok_or_else(|| "spinor vanishes at the sample point".into())
}

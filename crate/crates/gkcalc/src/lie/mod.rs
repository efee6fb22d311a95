//! Compact Lie algebra data: structure constants in a basis adapted to a
//! generalized complex structure.
//!
//! Generators are ordered t_1..t_k, tb_1..tb_k, th_1..th_m, thb_1..thb_m:
//! an isotropic splitting of the complexified Cartan subalgebra into dual
//! pairs (t_i, tb_i), then positive/negative root vectors (th_a, thb_a).
//! The invariant form B is type (1,1): it pairs exactly the dual pairs, with
//! B(t_i, tb_i) = B(th_a, thb_a) = 1. Conjugation (the anti-involution fixing
//! the compact real form) swaps each pair and conjugates coefficients.

pub mod abm;
pub mod cartan;

use crate::linalg::Matrix;
use crate::scalar::FieldScalar;
use serde::Deserialize;

/// [e_i, e_j] = sum of (generator index, coefficient).
pub type Bracket = Vec<(usize, FieldScalar)>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub name: String,
    /// Cartan dual pairs.
    pub k: usize,
    /// Positive roots.
    pub m: usize,
    pub b: Matrix,
    pub brackets: Vec<Vec<Bracket>>,
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        2 * (self.k + self.m)
    }
    /// Complex dimension of the associated group's GC structure, k + m.
    pub fn n(&self) -> usize {
        self.k + self.m
    }

    pub fn gen_name(&self, i: usize) -> String {
        let (k, m) = (self.k, self.m);
        if i < k {
            format!("t{}", i + 1)
        } else if i < 2 * k {
            format!("tb{}", i + 1 - k)
        } else if i < 2 * k + m {
            format!("th{}", i + 1 - 2 * k)
        } else {
            format!("thb{}", i + 1 - 2 * k - m)
        }
    }

    /// Index of the conjugate generator: t_i <-> tb_i, th_a <-> thb_a.
    pub fn conj_index(&self, i: usize) -> usize {
        let (k, m) = (self.k, self.m);
        if i < k {
            i + k
        } else if i < 2 * k {
            i - k
        } else if i < 2 * k + m {
            i + m
        } else {
            i - m
        }
    }

    pub fn conj_perm(&self) -> Vec<usize> {
        (0..self.dim()).map(|i| self.conj_index(i)).collect()
    }

    /// [e_i, e_j] as a dense coefficient vector.
    pub fn ad(&self, i: usize, j: usize) -> Vec<FieldScalar> {
        let mut v = vec![FieldScalar::zero(); self.dim()];
        for (l, c) in &self.brackets[i][j] {
            v[*l] = v[*l].clone() + c.clone();
        }
        v
    }

    /// Bracket of arbitrary coefficient vectors.
    pub fn bracket_vec(&self, x: &[FieldScalar], y: &[FieldScalar]) -> Vec<FieldScalar> {
        let mut out = vec![FieldScalar::zero(); self.dim()];
        for i in 0..self.dim() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if y[j].is_zero() {
                    continue;
                }
                let f = x[i].clone() * y[j].clone();
                for (l, c) in &self.brackets[i][j] {
                    out[*l] = out[*l].clone() + f.clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn b_form(&self, x: &[FieldScalar], y: &[FieldScalar]) -> FieldScalar {
        let mut out = FieldScalar::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.b.at(i, j).is_zero() {
                    out = out + x[i].clone() * self.b.at(i, j).clone() * y[j].clone();
                }
            }
        }
        out
    }

    pub fn conj_vec(&self, x: &[FieldScalar]) -> Vec<FieldScalar> {
        let mut out = vec![FieldScalar::zero(); self.dim()];
        for i in 0..self.dim() {
            out[self.conj_index(i)] = x[i].conj();
        }
        out
    }

    /// Structural sanity: antisymmetry, Jacobi, B of type (1,1) with unit
    /// dual pairs, ad-invariance of B, and conjugation consistency.
    pub fn validate(&self) -> Result<(), String> {
        let d = self.dim();
        if self.b.rows != d || self.b.cols != d {
            return Err(format!("B must be {d} x {d}"));
        }
        for i in 0..d {
            for (l, _) in self.brackets.iter().flatten().flatten() {
                if *l >= d {
                    return Err(format!("bracket target {l} out of range"));
                }
            }
            for j in 0..d {
                // B symmetric, pairing exactly the dual pairs with value 1
                let expect = if self.conj_index(i) == j {
                    FieldScalar::one()
                } else {
                    FieldScalar::zero()
                };
                if *self.b.at(i, j) != expect {
                    return Err(format!(
                        "B({}, {}) = {} but the basis requires {}",
                        self.gen_name(i),
                        self.gen_name(j),
                        self.b.at(i, j),
                        expect
                    ));
                }
            }
        }
        let basis: Vec<Vec<FieldScalar>> = (0..d)
            .map(|i| {
                let mut v = vec![FieldScalar::zero(); d];
                v[i] = FieldScalar::one();
                v
            })
            .collect();
        for i in 0..d {
            for j in 0..d {
                let xy = self.bracket_vec(&basis[i], &basis[j]);
                let yx = self.bracket_vec(&basis[j], &basis[i]);
                for l in 0..d {
                    if !(xy[l].clone() + yx[l].clone()).is_zero() {
                        return Err(format!(
                            "bracket not antisymmetric on ({}, {})",
                            self.gen_name(i),
                            self.gen_name(j)
                        ));
                    }
                }
                // conjugation is a bracket homomorphism
                let cc = self.bracket_vec(&self.conj_vec(&basis[i]), &self.conj_vec(&basis[j]));
                if cc != self.conj_vec(&xy) {
                    return Err(format!(
                        "conjugation breaks the bracket on ({}, {})",
                        self.gen_name(i),
                        self.gen_name(j)
                    ));
                }
                for l in 0..d {
                    // B([x,y],z) + B(y,[x,z]) = 0
                    let inv = self.b_form(&self.bracket_vec(&basis[i], &basis[j]), &basis[l])
                        + self.b_form(&basis[j], &self.bracket_vec(&basis[i], &basis[l]));
                    if !inv.is_zero() {
                        return Err(format!(
                            "B is not ad-invariant on ({}, {}, {})",
                            self.gen_name(i),
                            self.gen_name(j),
                            self.gen_name(l)
                        ));
                    }
                    // Jacobi
                    let jac: Vec<FieldScalar> = {
                        let a = self.bracket_vec(&self.bracket_vec(&basis[i], &basis[j]), &basis[l]);
                        let b = self.bracket_vec(&self.bracket_vec(&basis[j], &basis[l]), &basis[i]);
                        let c = self.bracket_vec(&self.bracket_vec(&basis[l], &basis[i]), &basis[j]);
                        (0..d).map(|p| a[p].clone() + b[p].clone() + c[p].clone()).collect()
                    };
                    if jac.iter().any(|c| !c.is_zero()) {
                        return Err(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.gen_name(i),
                            self.gen_name(j),
                            self.gen_name(l)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn type_one_one_b(k: usize, m: usize) -> Matrix {
    let d = 2 * (k + m);
    let mut b = Matrix::zeros(d, d);
    for i in 0..k {
        b.data[i][i + k] = FieldScalar::one();
        b.data[i + k][i] = FieldScalar::one();
    }
    for a in 0..m {
        b.data[2 * k + a][2 * k + m + a] = FieldScalar::one();
        b.data[2 * k + m + a][2 * k + a] = FieldScalar::one();
    }
    b
}

fn empty_brackets(d: usize) -> Vec<Vec<Bracket>> {
    vec![vec![Vec::new(); d]; d]
}

fn set_bracket(br: &mut Vec<Vec<Bracket>>, i: usize, j: usize, val: Bracket) {
    br[j][i] = val.iter().map(|(l, c)| (*l, -c.clone())).collect();
    br[i][j] = val;
}

/// su(2) + u(1): one Cartan pair t1 = H/2 + (sqrt2/2) u, tb1 = -H/2 +
/// (sqrt2/2) u and one root pair th = E, thb = -F, with B = -tr on the su(2)
/// factor and B(u, u) = 1.
pub fn su2_u1() -> LieAlgebra {
    let one = FieldScalar::one;
    let (t1, tb1, th, thb) = (0usize, 1usize, 2usize, 3usize);
    let mut br = empty_brackets(4);
    set_bracket(&mut br, t1, th, vec![(th, one())]);
    set_bracket(&mut br, t1, thb, vec![(thb, -one())]);
    set_bracket(&mut br, tb1, th, vec![(th, -one())]);
    set_bracket(&mut br, tb1, thb, vec![(thb, one())]);
    set_bracket(&mut br, th, thb, vec![(tb1, one()), (t1, -one())]);
    LieAlgebra {
        name: "su2xu1".to_string(),
        k: 1,
        m: 1,
        b: type_one_one_b(1, 1),
        brackets: br,
    }
}

/// su(3): Cartan pair t1 = (i/2) v1 + (sqrt3/6) v2 (v1 = i diag(1,-1,0),
/// v2 = i diag(1,1,-2)), roots th1 = E12, th2 = E23, th3 = E13, thb_j = -F_j,
/// B = -tr. Root eigenvalues under t1: a1 = -1, a2 = (1 + i sqrt3)/2,
/// a3 = (-1 + i sqrt3)/2.
pub fn su3() -> LieAlgebra {
    let (t1, tb1) = (0usize, 1usize);
    let (th1, th2, th3, thb1, thb2, thb3) = (2usize, 3, 4, 5, 6, 7);
    // a_j and the coefficients c_j in [th_j, thb_j] = c_j t1 - conj(c_j) tb1
    let half_i_s3 = FieldScalar::i() * FieldScalar::sqrt3() * FieldScalar::from_ratio(1, 2);
    let a = [
        -FieldScalar::one(),
        FieldScalar::from_ratio(1, 2) + half_i_s3.clone(),
        FieldScalar::from_ratio(-1, 2) + half_i_s3.clone(),
    ];
    let omega3 = FieldScalar::from_ratio(-1, 2) + half_i_s3;
    let c = [
        FieldScalar::one(),
        omega3.clone(),
        FieldScalar::one() + omega3,
    ];
    let mut br = empty_brackets(8);
    for j in 0..3 {
        let (thj, thbj) = (th1 + j, thb1 + j);
        set_bracket(&mut br, t1, thj, vec![(thj, a[j].clone())]);
        set_bracket(&mut br, tb1, thj, vec![(thj, -a[j].conj())]);
        set_bracket(&mut br, t1, thbj, vec![(thbj, -a[j].clone())]);
        set_bracket(&mut br, tb1, thbj, vec![(thbj, a[j].conj())]);
        set_bracket(
            &mut br,
            thj,
            thbj,
            vec![(t1, c[j].clone()), (tb1, -c[j].conj())],
        );
    }
    let one = FieldScalar::one;
    set_bracket(&mut br, th1, th2, vec![(th3, one())]);
    set_bracket(&mut br, thb1, thb2, vec![(thb3, one())]);
    set_bracket(&mut br, th3, thb1, vec![(th2, one())]);
    set_bracket(&mut br, th3, thb2, vec![(th1, -one())]);
    set_bracket(&mut br, th1, thb3, vec![(thb2, -one())]);
    set_bracket(&mut br, th2, thb3, vec![(thb1, one())]);
    LieAlgebra {
        name: "su3".to_string(),
        k: 1,
        m: 1 + 2,
        b: type_one_one_b(1, 3),
        brackets: br,
    }
}

pub fn builtin(name: &str) -> Option<LieAlgebra> {
    match name {
        "su2xu1" => Some(su2_u1()),
        "su3" => Some(su3()),
        _ => None,
    }
}

/// JSON description of a root-space basis (see docs/root-data-schema.md):
/// brackets are triples [i, j, [[l, "coeff"], ...]] with canonical scalar
/// strings for coefficients; only i < j entries are given.
#[derive(Deserialize)]
pub struct LieAlgebraFile {
    pub name: String,
    pub cartan_pairs: usize,
    pub root_pairs: usize,
    pub brackets: Vec<(usize, usize, Vec<(usize, String)>)>,
}

pub fn from_json(text: &str) -> Result<LieAlgebra, String> {
    let file: LieAlgebraFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let (k, m) = (file.cartan_pairs, file.root_pairs);
    let d = 2 * (k + m);
    let mut br = empty_brackets(d);
    for (i, j, terms) in &file.brackets {
        if *i >= d || *j >= d {
            return Err(format!("bracket ({i}, {j}) out of range for dimension {d}"));
        }
        let mut val = Bracket::new();
        for (l, s) in terms {
            let e = crate::parse::parse_expr(s).map_err(|e| e.to_string())?;
            let c = e
                .as_const()
                .ok_or_else(|| format!("coefficient '{s}' is not a constant"))?
                .clone();
            val.push((*l, c));
        }
        set_bracket(&mut br, *i, *j, val);
    }
    let algebra = LieAlgebra {
        name: file.name,
        k,
        m,
        b: type_one_one_b(k, m),
        brackets: br,
    };
    algebra.validate()?;
    Ok(algebra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        su2_u1().validate().unwrap();
        su3().validate().unwrap();
    }

    #[test]
    fn broken_jacobi_is_named() {
        let mut alg = su3();
        // corrupt [th1, th2] and its conjugate so only Jacobi/invariance fail
        alg.brackets[2][3] = vec![(4, FieldScalar::from_int(2))];
        alg.brackets[3][2] = vec![(4, FieldScalar::from_int(-2))];
        alg.brackets[5][6] = vec![(7, FieldScalar::from_int(2))];
        alg.brackets[6][5] = vec![(7, FieldScalar::from_int(-2))];
        let err = alg.validate().unwrap_err();
        assert!(err.contains("Jacobi") || err.contains("ad-invariant"), "{err}");
    }

    #[test]
    fn json_round_trip_of_su2u1() {
        let text = r#"{
            "name": "su2xu1",
            "cartan_pairs": 1,
            "root_pairs": 1,
            "brackets": [
                [0, 2, [[2, "1"]]],
                [0, 3, [[3, "-1"]]],
                [1, 2, [[2, "-1"]]],
                [1, 3, [[3, "1"]]],
                [2, 3, [[1, "1"], [0, "-1"]]]
            ]
        }"#;
        let alg = from_json(text).unwrap();
        assert_eq!(alg.brackets, su2_u1().brackets);
    }
}

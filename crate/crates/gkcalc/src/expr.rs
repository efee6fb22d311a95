//! Symbolic scalar expressions over Q(i, sqrt2, sqrt3).
//!
//! An `Expr` is an immutable AST over {+, -, *, /, integer power} whose leaves
//! are exact field constants and named variables. Variables come in conjugate
//! pairs by a naming convention: `z1` pairs with `z1b`; names starting with
//! `r` are real (self-conjugate). Differentiation treats conjugate variables
//! as independent. No simplification is performed beyond constant folding.

use crate::scalar::FieldScalar;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;

#[derive(Debug, PartialEq)]
pub enum Node {
    Const(FieldScalar),
    Var(String),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Pow(Expr, i32),
}

#[derive(Clone, Debug)]
pub struct Expr(Rc<Node>);

impl PartialEq for Expr {
    fn eq(&self, o: &Expr) -> bool {
        Rc::ptr_eq(&self.0, &o.0) || *self.0 == *o.0
    }
}

/// Conjugate variable name: z1 <-> z1b, r -> r.
pub fn conj_var(name: &str) -> String {
    if name.starts_with('r') {
        name.to_string()
    } else if let Some(stripped) = name.strip_suffix('b') {
        stripped.to_string()
    } else {
        format!("{name}b")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    DivisionByZero(String),
    UnboundVariable(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DivisionByZero(e) => write!(f, "division by zero in {e}"),
            EvalError::UnboundVariable(v) => write!(f, "unbound variable {v}"),
        }
    }
}

impl Expr {
    fn new(n: Node) -> Expr {
        Expr(Rc::new(n))
    }
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(c: FieldScalar) -> Expr {
        Expr::new(Node::Const(c))
    }
    pub fn int(n: i64) -> Expr {
        Expr::constant(FieldScalar::from_int(n))
    }
    pub fn ratio(num: i64, den: i64) -> Expr {
        Expr::constant(FieldScalar::from_ratio(num, den))
    }
    pub fn i() -> Expr {
        Expr::constant(FieldScalar::i())
    }
    pub fn var(name: &str) -> Expr {
        Expr::new(Node::Var(name.to_string()))
    }
    pub fn zero() -> Expr {
        Expr::int(0)
    }
    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn as_const(&self) -> Option<&FieldScalar> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }
    /// Structural zero test (constant folding makes this catch most zeros
    /// produced by arithmetic; semantic zero testing is `is_zero` in sample.rs).
    pub fn is_zero_const(&self) -> bool {
        matches!(self.node(), Node::Const(c) if c.is_zero())
    }
    pub fn is_one_const(&self) -> bool {
        matches!(self.node(), Node::Const(c) if c.is_one())
    }

    pub fn add(&self, o: &Expr) -> Expr {
        if self.is_zero_const() {
            return o.clone();
        }
        if o.is_zero_const() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            return Expr::constant(a.clone() + b.clone());
        }
        Expr::new(Node::Add(self.clone(), o.clone()))
    }
    pub fn sub(&self, o: &Expr) -> Expr {
        if o.is_zero_const() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            return Expr::constant(a.clone() - b.clone());
        }
        Expr::new(Node::Sub(self.clone(), o.clone()))
    }
    pub fn mul(&self, o: &Expr) -> Expr {
        if self.is_zero_const() || o.is_one_const() {
            return self.clone();
        }
        if o.is_zero_const() || self.is_one_const() {
            return o.clone();
        }
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            return Expr::constant(a.clone() * b.clone());
        }
        Expr::new(Node::Mul(self.clone(), o.clone()))
    }
    pub fn div(&self, o: &Expr) -> Expr {
        if o.is_one_const() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.as_const(), o.as_const()) {
            if !b.is_zero() {
                return Expr::constant(a.clone() / b.clone());
            }
        }
        Expr::new(Node::Div(self.clone(), o.clone()))
    }
    pub fn pow(&self, n: i32) -> Expr {
        if n == 0 {
            return Expr::one();
        }
        if n == 1 {
            return self.clone();
        }
        if let Some(c) = self.as_const() {
            if let Some(p) = c.pow(n) {
                return Expr::constant(p);
            }
        }
        Expr::new(Node::Pow(self.clone(), n))
    }
    pub fn neg(&self) -> Expr {
        Expr::int(-1).mul(self)
    }
    pub fn scale(&self, c: &FieldScalar) -> Expr {
        Expr::constant(c.clone()).mul(self)
    }

    /// Formal partial derivative with respect to `v`; conjugate variables are
    /// treated as independent.
    pub fn diff(&self, v: &str) -> Expr {
        match self.node() {
            Node::Const(_) => Expr::zero(),
            Node::Var(name) => {
                if name == v {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Node::Add(a, b) => a.diff(v).add(&b.diff(v)),
            Node::Sub(a, b) => a.diff(v).sub(&b.diff(v)),
            // (fg)' = f'g + fg'
            Node::Mul(a, b) => a.diff(v).mul(b).add(&a.mul(&b.diff(v))),
            // (f/g)' = (f'g - fg')/g^2
            Node::Div(a, b) => a
                .diff(v)
                .mul(b)
                .sub(&a.mul(&b.diff(v)))
                .div(&b.pow(2)),
            // (f^n)' = n f^(n-1) f'
            Node::Pow(a, n) => Expr::int(*n as i64).mul(&a.pow(n - 1)).mul(&a.diff(v)),
        }
    }

    /// Complex conjugation: conjugates constants and swaps z_k <-> z_kb.
    pub fn conjugate(&self) -> Expr {
        match self.node() {
            Node::Const(c) => Expr::constant(c.conj()),
            Node::Var(name) => Expr::var(&conj_var(name)),
            Node::Add(a, b) => a.conjugate().add(&b.conjugate()),
            Node::Sub(a, b) => a.conjugate().sub(&b.conjugate()),
            Node::Mul(a, b) => a.conjugate().mul(&b.conjugate()),
            Node::Div(a, b) => a.conjugate().div(&b.conjugate()),
            Node::Pow(a, n) => a.conjugate().pow(*n),
        }
    }

    /// Real part (f + conj f)/2, exact.
    pub fn re_part(&self) -> Expr {
        self.add(&self.conjugate()).mul(&Expr::ratio(1, 2))
    }

    pub fn eval(&self, point: &BTreeMap<String, FieldScalar>) -> Result<FieldScalar, EvalError> {
        match self.node() {
            Node::Const(c) => Ok(c.clone()),
            Node::Var(name) => point
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
            Node::Add(a, b) => Ok(a.eval(point)? + b.eval(point)?),
            Node::Sub(a, b) => Ok(a.eval(point)? - b.eval(point)?),
            Node::Mul(a, b) => Ok(a.eval(point)? * b.eval(point)?),
            Node::Div(a, b) => {
                let den = b.eval(point)?;
                if den.is_zero() {
                    return Err(EvalError::DivisionByZero(b.to_string()));
                }
                Ok(a.eval(point)? / den)
            }
            Node::Pow(a, n) => {
                let base = a.eval(point)?;
                if *n < 0 && base.is_zero() {
                    return Err(EvalError::DivisionByZero(a.to_string()));
                }
                Ok(base.pow(*n).expect("checked nonzero base"))
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Var(name) => {
                out.insert(name.clone());
            }
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Node::Pow(a, _) => a.collect_vars(out),
        }
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized form; `parse_expr(print(e))` rebuilds `e` exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(c) => write!(f, "({c})"),
            Node::Var(name) => write!(f, "{name}"),
            Node::Add(a, b) => write!(f, "({a} + {b})"),
            Node::Sub(a, b) => write!(f, "({a} - {b})"),
            Node::Mul(a, b) => write!(f, "({a} * {b})"),
            Node::Div(a, b) => write!(f, "({a} / {b})"),
            Node::Pow(a, n) => write!(f, "({a} ^ {n})"),
        }
    }
}

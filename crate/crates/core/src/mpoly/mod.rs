//! Sparse multivariate polynomials over a finite field.
//!
//! A [`Polynomial`] is a canonical list of `(Monomial, coefficient)` pairs
//! without zero coefficients, kept sorted in descending degrevlex order.
//! Variables are indexed from 0; the "first `j` variables" `x_1..x_j` of the
//! triangular basis are the indices `0..j`, so prefix lengths (`j`) and
//! 0-based variable indices (`var`) are deliberately different types of
//! argument throughout the crate.

mod hasse;
mod order;
mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::ffield::{Elem, Field};

pub use hasse::{hasse_composite, hasse_derivative};
pub use order::{trailing_revlex_compare, MonomialOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("exponent vectors of lengths {0} and {1} cannot be compared")]
    LengthMismatch(usize, usize),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, var: usize) -> Monomial {
        let mut m = Monomial::one(n);
        m.0[var] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Supported on the first `j` variables only.
    pub fn in_prefix(&self, j: usize) -> bool {
        self.0[j.min(self.0.len())..].iter().all(|&e| e == 0)
    }

    /// Divisible by some `x_i` with `i < j` (0-based).
    pub fn touches_prefix(&self, j: usize) -> bool {
        self.0[..j.min(self.0.len())].iter().any(|&e| e > 0)
    }

    pub(crate) fn with_exponent(&self, var: usize, e: u16) -> Monomial {
        let mut m = self.clone();
        m.0[var] = e;
        m
    }

    pub(crate) fn padded(&self, n: usize) -> Monomial {
        let mut v = self.0.clone();
        v.resize(n, 0);
        Monomial(v)
    }
}

struct RingInner {
    field: Field,
    names: Vec<String>,
}

/// `F_q[x_1, ..., x_n]`; cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.names == other.0.names)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.0.field, self.0.names.join(","))
    }
}

impl Ring {
    /// Ring with the default names `x1..xn`.
    pub fn new(field: Field, n: usize) -> Result<Ring, PolyError> {
        Ring::with_names(field, (1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn with_names(field: Field, names: Vec<String>) -> Result<Ring, PolyError> {
        if names.is_empty() {
            return Err(PolyError::InvalidRing("at least one variable is required".into()));
        }
        for (i, a) in names.iter().enumerate() {
            let valid = a != "a"
                && a.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PolyError::InvalidRing(format!("bad variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(PolyError::InvalidRing(format!("duplicate variable name `{a}`")));
            }
        }
        Ok(Ring(Arc::new(RingInner { field, names })))
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Elem::ONE)
    }

    pub fn constant(&self, c: Elem) -> Polynomial {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn term(&self, m: Monomial, c: Elem) -> Polynomial {
        debug_assert_eq!(m.nvars(), self.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: self.clone(), terms }
    }

    /// The variable with 0-based index `var`.
    pub fn var(&self, var: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), var), Elem::ONE)
    }

    /// Polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Polynomial {
        let field = self.field();
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), self.nvars());
            let e = acc.entry(m).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_desc(&mut terms);
        Polynomial { ring: self.clone(), terms }
    }

    /// Linear form `Σ row[i]·x_i`.
    pub fn linear_form(&self, row: &[Elem]) -> Polynomial {
        let n = self.nvars();
        self.from_terms(row.iter().enumerate().map(|(i, &c)| (Monomial::var(n, i), c)))
    }

    /// All monomials of total degree `d`, in descending degrevlex order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), d)
    }

    /// The subring on the first `j` variables, `S^{(j)}`.
    pub fn prefix(&self, j: usize) -> Result<Ring, PolyError> {
        if j == 0 || j > self.nvars() {
            return Err(PolyError::IndexOutOfRange { index: j, n: self.nvars() });
        }
        Ring::with_names(self.field().clone(), self.names()[..j].to_vec())
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial, PolyError> {
        text::parse(self, s)
    }
}

pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, var: usize, left: u16, cur: &mut SmallVec<[u16; 8]>, out: &mut Vec<Monomial>) {
        if var == n - 1 {
            cur[var] = left;
            out.push(Monomial(cur.clone()));
            cur[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e;
            rec(n, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    let mut cur = SmallVec::from_elem(0, n);
    rec(n, 0, d as u16, &mut cur, &mut out);
    out.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
    out
}

#[inline]
fn sort_desc(terms: &mut [(Monomial, Elem)]) {
    terms.sort_unstable_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
}

/// Element of a [`Ring`].
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Elem)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// Ring operations accepted by [`Polynomial::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms
            .binary_search_by(|(t, _)| MonomialOrder::DegRevLex.cmp(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(Elem::ZERO)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        // descending degrevlex puts a top-degree term first
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    /// Leading term under degrevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, Elem)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// `ring` check followed by the operation.
    pub fn arith(&self, other: &Polynomial, op: PolyOp) -> Result<Polynomial, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(match op {
            PolyOp::Add => self.add_impl(other, false),
            PolyOp::Sub => self.add_impl(other, true),
            PolyOp::Mul => self.mul_impl(other),
        })
    }

    fn add_impl(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let map = |c: Elem| if subtract { field.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match MonomialOrder::DegRevLex.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), map(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a[i].1, map(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), map(*c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, *c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, *c);
        }
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, Elem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(Elem::ZERO);
                *e = field.add(*e, field.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_desc(&mut terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c · m · self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: Elem) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let field = self.ring.field();
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), field.mul(*d, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so that the coefficient of `m` becomes 1; `None` if it is 0.
    pub fn normalized_at(&self, m: &Monomial) -> Option<Polynomial> {
        let c = self.coeff(m);
        self.ring.field().inv(c).map(|ci| self.scale(ci))
    }

    /// Membership in the subring `S^{(j)} = F[x_1..x_j]`.
    pub fn in_prefix_ring(&self, j: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.in_prefix(j))
    }

    /// `monomial_ideal_member`: membership in `(x_1, ..., x_j)S`, decided
    /// termwise since the ideal is monomial.
    pub fn in_prefix_ideal(&self, j: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.touches_prefix(j))
    }

    /// Image in a ring with at least as many variables (extra exponents 0).
    pub fn extend_to(&self, ring: &Ring) -> Result<Polynomial, PolyError> {
        if ring.field() != self.ring.field() || ring.nvars() < self.ring.nvars() {
            return Err(PolyError::RingMismatch);
        }
        let n = ring.nvars();
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.padded(n), *c)).collect();
        sort_desc(&mut terms);
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    /// Writes `self = Σ_α f_α z^α` with `f_α ∈ S^{(j)}` and `z^α` a monomial
    /// in the trailing variables `x_{j+1}..x_n`. Returns `(α, f_α)` pairs
    /// sorted descending by [`trailing_revlex_compare`].
    pub fn trailing_decomposition(&self, j: usize) -> Vec<(Vec<u16>, Polynomial)> {
        let n = self.ring.nvars();
        let mut parts: HashMap<Vec<u16>, Vec<(Monomial, Elem)>> = HashMap::new();
        for (m, c) in &self.terms {
            let alpha = m.exponents()[j..].to_vec();
            let mut head = m.clone();
            for v in j..n {
                head = head.with_exponent(v, 0);
            }
            parts.entry(alpha).or_default().push((head, *c));
        }
        let mut out: Vec<_> = parts
            .into_iter()
            .map(|(alpha, mut terms)| {
                sort_desc(&mut terms);
                (alpha, Polynomial { ring: self.ring.clone(), terms })
            })
            .collect();
        out.sort_by(|a, b| trailing_revlex_compare(&b.0, &a.0).unwrap());
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write(self, f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.arith(rhs, $op).expect("ring mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.arith(&rhs, $op).expect("ring mismatch")
            }
        }
    };
}

binop!(Add, add, PolyOp::Add);
binop!(Sub, sub, PolyOp::Sub);
binop!(Mul, mul, PolyOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.ring.field();
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect() }
    }
}

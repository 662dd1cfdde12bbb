//! Exact arithmetic in prime fields `F_p` and their extensions `F_{p^k}`.
//!
//! Elements of `F_{p^k}` are residue classes of polynomials over `F_p`
//! modulo a monic irreducible `m(t)` of degree `k`. Internally an element is
//! stored as a single integer code `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! holding its coordinates in the power basis `1, t, ..., t^{k-1}`; the code
//! is canonical, so equality of elements is equality of codes.
//!
//! Hot loops (polynomial arithmetic, linear algebra) work on bare [`Elem`]
//! codes through a [`Field`] handle. [`FieldElement`] bundles a code with its
//! field for the checked, user-facing API.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Extension fields are tabulated; this caps the table size.
pub const MAX_EXTENSION_ORDER: u32 = 1 << 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {0} is too large to tabulate")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// Canonical code of a field element relative to some [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    add: Vec<u32>,
    neg: Vec<u32>,
    // exp has length 2(q-1) so that log a + log b never needs a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct FieldInner {
    p: u32,
    k: usize,
    /// Monic modulus, low degree first, length k+1. Empty for prime fields.
    modulus: Vec<u32>,
    q: u32,
    tables: Option<Tables>,
}

/// A finite field `F_p` or `F_{p^k}`; cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{} (mod ", self.0.q)?;
            write_poly_over_fp(f, &self.0.modulus, "t")?;
            write!(f, ")")
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Remainder of `a` modulo monic `b` over `F_p` (coefficient lists, low first).
fn poly_rem_fp(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64 % p).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c as u64 % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Exhaustive search for a monic factor of degree 1..=k/2.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                cand.push((c % p as u64) as u32);
                c /= p as u64;
            }
            cand.push(1);
            if poly_rem_fp(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn write_poly_over_fp(f: &mut fmt::Formatter<'_>, coeffs: &[u32], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            write!(f, "+")?;
        }
        first = false;
        match (i, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => write!(f, "{var}")?,
            (1, c) => write!(f, "{c}*{var}")?,
            (i, 1) => write!(f, "{var}^{i}")?,
            (i, c) => write!(f, "{c}*{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Field {
    /// `field_create`: the prime field when `modulus` is `None`, otherwise
    /// `F_p[t]/(modulus)` after checking that the modulus is monic of degree
    /// at least 2 and irreducible.
    pub fn new(p: u64, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::FieldTooLarge(p));
        }
        let p32 = p as u32;
        let Some(modulus) = modulus else {
            return Ok(Field(Arc::new(FieldInner { p: p32, k: 1, modulus: Vec::new(), q: p32, tables: None })));
        };
        let m: Vec<u32> = modulus.iter().map(|&c| c % p32).collect();
        if m.len() < 3 {
            return Err(FieldError::InvalidModulus(format!("{modulus:?} has degree below 2")));
        }
        if *m.last().unwrap() != 1 {
            return Err(FieldError::InvalidModulus(format!("{modulus:?} is not monic")));
        }
        let k = m.len() - 1;
        let q = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if q > MAX_EXTENSION_ORDER as u128 {
            return Err(FieldError::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        if !is_irreducible(&m, p32) {
            return Err(FieldError::ReducibleModulus(m, p32));
        }
        let q = q as u32;
        let tables = build_tables(p32, k, &m, q);
        Ok(Field(Arc::new(FieldInner { p: p32, k, modulus: m, q, tables: Some(tables) })))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree `k` over `F_p`.
    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus (low degree first); `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.0.k == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Residue class of `t`, the extension generator (`ω` in `F_8`).
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            Elem::ONE
        } else {
            Elem(self.0.p)
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element with the given power-basis coordinates (reduced mod `p`).
    /// Over an extension, lists longer than `k` are read as polynomials in
    /// the generator and reduced modulo the field modulus.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Elem, FieldError> {
        let p = self.0.p as i64;
        let mut c: Vec<u32> = coeffs.iter().map(|&v| v.rem_euclid(p) as u32).collect();
        if c.len() > self.0.k {
            if self.0.k == 1 {
                return Err(FieldError::Parse(format!("{coeffs:?} has more than one coordinate")));
            }
            c = poly_rem_fp(&c, &self.0.modulus, self.0.p);
        }
        let code = c.iter().rev().fold(0u64, |acc, &d| acc * self.0.p as u64 + d as u64);
        Ok(Elem(code as u32))
    }

    /// Power-basis coordinates, length `k`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.k);
        let mut c = a.0;
        for _ in 0..self.0.k {
            out.push(c % self.0.p);
            c /= self.0.p;
        }
        out
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            None => {
                let s = a.0 as u64 + b.0 as u64;
                let p = self.0.p as u64;
                Elem(if s >= p { (s - p) as u32 } else { s as u32 })
            }
            Some(t) => Elem(t.add[(a.0 * self.0.q + b.0) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            None => Elem(if a.0 == 0 { 0 } else { self.0.p - a.0 }),
            Some(t) => Elem(t.neg[a.0 as usize]),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.0.tables {
            None => Elem((a.0 as u64 * b.0 as u64 % self.0.p as u64) as u32),
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        Some(match &self.0.tables {
            None => Elem(pow_mod(a.0 as u64, self.0.p as u64 - 2, self.0.p as u64) as u32),
            Some(t) => {
                let l = t.log[a.0 as usize];
                Elem(t.exp[((self.0.q - 1 - l) % (self.0.q - 1)) as usize])
            }
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn element(&self, a: Elem) -> FieldElement {
        debug_assert!(self.contains(a));
        FieldElement { field: self.clone(), value: a }
    }

    /// Checked arithmetic on bundled elements.
    pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
        if a.field != b.field {
            return Err(FieldError::FieldMismatch);
        }
        let f = &a.field;
        let value = match op {
            ArithOp::Add => f.add(a.value, b.value),
            ArithOp::Sub => f.sub(a.value, b.value),
            ArithOp::Mul => f.mul(a.value, b.value),
            ArithOp::Div => f.div(a.value, b.value).ok_or(FieldError::DivisionByZero)?,
        };
        Ok(FieldElement { field: f.clone(), value })
    }

    /// Text form: integers for prime fields, `a^2+1` style polynomials in
    /// the generator `a` otherwise.
    pub fn format(&self, a: Elem) -> String {
        struct Show<'a>(&'a Field, Elem);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_poly_over_fp(f, &self.0.coeffs(self.1), "a")
            }
        }
        Show(self, a).to_string()
    }

    /// Inverse of [`Field::format`]; also accepts negative integers.
    pub fn parse(&self, s: &str) -> Result<Elem, FieldError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(FieldError::Parse(s));
        }
        let mut acc = Elem::ZERO;
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let v = self.parse_term(term).ok_or_else(|| FieldError::Parse(s.clone()))?;
            acc = if neg { self.sub(acc, v) } else { self.add(acc, v) };
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str) -> Option<Elem> {
        let (coef, power) = match term.split_once('*') {
            Some((c, rest)) => (Some(c), Some(rest)),
            None if term.starts_with('a') => (None, Some(term)),
            None => (Some(term), None),
        };
        let c = match coef {
            Some(c) => self.from_int(c.parse::<i64>().ok()?),
            None => Elem::ONE,
        };
        let e = match power {
            None => 0,
            Some("a") => 1,
            Some(pw) => pw.strip_prefix("a^")?.parse::<u64>().ok()?,
        };
        if e > 0 && self.is_prime_field() {
            return None;
        }
        Some(self.mul(c, self.pow(self.generator(), e)))
    }
}

fn build_tables(p: u32, k: usize, modulus: &[u32], q: u32) -> Tables {
    let qs = q as usize;
    let digits = |mut c: u32| {
        let mut d = vec![0u32; k];
        for slot in d.iter_mut() {
            *slot = c % p;
            c /= p;
        }
        d
    };
    let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);
    let mut add = vec![0u32; qs * qs];
    let mut neg = vec![0u32; qs];
    for a in 0..q {
        let da = digits(a);
        neg[a as usize] = encode(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>());
        for b in 0..q {
            let db = digits(b);
            let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = encode(&s);
        }
    }
    // multiplication of codes via polynomial product and reduction
    let mul_code = |a: u32, b: u32| {
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] += da[i] as u64 * db[j] as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| (c % p as u64) as u32).collect();
        let mut r = poly_rem_fp(&prod, modulus, p);
        r.resize(k, 0);
        encode(&r)
    };
    // find a primitive element by brute force
    let order = q - 1;
    let prime_factors: Vec<u32> = (2..=order).filter(|&d| order % d == 0 && is_prime(d as u64)).collect();
    let primitive = (2..q)
        .find(|&g| {
            prime_factors.iter().all(|&f| {
                let mut acc = 1u32;
                for _ in 0..order / f {
                    acc = mul_code(acc, g);
                }
                acc != 1
            })
        })
        .unwrap_or(1);
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; qs];
    let mut acc = 1u32;
    for i in 0..order {
        exp[i as usize] = acc;
        exp[(i + order) as usize] = acc;
        log[acc as usize] = i;
        acc = mul_code(acc, primitive);
    }
    Tables { add, neg, exp, log }
}

/// Binary field operations accepted by [`Field::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        Ok(FieldElement { field: field.clone(), value: field.from_coeffs(coeffs)? })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

/// `binomial(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        // small binomial via the multiplicative formula with Fermat inverses
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..ki {
            num = num * ((ni - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        acc = acc * num % p * pow_mod(den, p - 2, p) % p;
        n /= p;
        k /= p;
    }
    acc % p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> Field {
        Field::new(2, Some(&[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn prime_field_creation() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.degree(), 1);
        assert!(f.modulus().is_none());
        assert_eq!(Field::prime(9).unwrap_err(), FieldError::NonPrimeCharacteristic(9));
        assert_eq!(Field::prime(1).unwrap_err(), FieldError::NonPrimeCharacteristic(1));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(Field::new(2, Some(&[0, 0, 1])), Err(FieldError::ReducibleModulus(..))));
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(matches!(Field::new(2, Some(&[1, 0, 1])), Err(FieldError::ReducibleModulus(..))));
        // t^4 + t^2 + 1 = (t^2 + t + 1)^2 over F_2: no root but reducible
        assert!(matches!(Field::new(2, Some(&[1, 0, 1, 0, 1])), Err(FieldError::ReducibleModulus(..))));
        assert!(matches!(Field::new(2, Some(&[1, 1])), Err(FieldError::InvalidModulus(_))));
        assert!(matches!(Field::new(3, Some(&[1, 0, 2])), Err(FieldError::InvalidModulus(_))));
    }

    #[test]
    fn small_prime_sums() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.add(Elem(2), Elem(2)), Elem(1));
        let two = f.element(Elem(2));
        let zero = f.element(Elem(0));
        assert_eq!(Field::arith(&f.element(Elem(1)), &zero, ArithOp::Div), Err(FieldError::DivisionByZero));
        assert_eq!(Field::arith(&two, &two, ArithOp::Add).unwrap().value(), Elem(1));
    }

    #[test]
    fn f8_generator_products() {
        let f = f8();
        let w = f.generator();
        let w2 = f.mul(w, w);
        assert_eq!(f.coeffs(w2), vec![0, 0, 1]);
        // ω·ω² = ω³ = ω + 1 modulo t³ + t + 1
        assert_eq!(f.coeffs(f.mul(w, w2)), vec![1, 1, 0]);
        assert_eq!(f.format(f.mul(w, w2)), "a+1");
    }

    #[test]
    fn mismatched_fields() {
        let a = FieldElement::new(&Field::prime(3).unwrap(), &[1]).unwrap();
        let b = FieldElement::new(&Field::prime(5).unwrap(), &[1]).unwrap();
        assert_eq!(Field::arith(&a, &b, ArithOp::Mul), Err(FieldError::FieldMismatch));
    }

    fn small_fields() -> Vec<Field> {
        vec![
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::prime(7).unwrap(),
            f8(),
            Field::new(3, Some(&[2, 1, 1])).unwrap(), // t^2+t+2 over F_3
            Field::new(2, Some(&[1, 1, 0, 0, 1])).unwrap(),
            Field::new(5, Some(&[2, 0, 1])).unwrap(), // t^2 + 2
        ]
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let p = f.characteristic();
            for a in f.elements() {
                assert_eq!(f.add(a, Elem::ZERO), a);
                assert_eq!(f.mul(a, Elem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE, "{f:?} {a:?}");
                }
                let mut s = Elem::ZERO;
                for _ in 0..p {
                    s = f.add(s, a);
                }
                assert_eq!(s, Elem::ZERO);
                for b in f.elements() {
                    let lhs = f.pow(f.add(a, b), p as u64);
                    let rhs = f.add(f.pow(a, p as u64), f.pow(b, p as u64));
                    assert_eq!(lhs, rhs);
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn distributivity_exhaustive() {
        for f in small_fields().into_iter().filter(|f| f.order() <= 16) {
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.parse(&f.format(a)).unwrap(), a);
            }
        }
        let f = Field::prime(3).unwrap();
        assert_eq!(f.parse("-1").unwrap(), Elem(2));
        assert!(f.parse("a").is_err());
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binomial_mod_p(3, 2, 3), 0);
        assert_eq!(binomial_mod_p(4, 2, 3), 0);
        assert_eq!(binomial_mod_p(5, 2, 7), 3);
        assert_eq!(binomial_mod_p(2, 3, 5), 0);
        for n in 0..30u64 {
            for k in 0..=n {
                let mut exact = 1u128;
                for i in 0..k {
                    exact = exact * (n - i) as u128 / (i + 1) as u128;
                }
                for p in [2u64, 3, 5, 7] {
                    assert_eq!(binomial_mod_p(n, k, p) as u128, exact % p as u128);
                }
            }
        }
    }
}

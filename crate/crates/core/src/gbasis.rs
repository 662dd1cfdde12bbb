//! Buchberger's algorithm over `F_q` plus the ideal-theoretic queries built
//! on it: membership, equality, colength, height and the complete
//! intersection test.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::{Elem, Field};
use crate::mpoly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("zero polynomial in generator list")]
    ZeroGenerator,
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("generator `{0}` is not homogeneous")]
    NonHomogeneousInput(String),
    #[error("empty generator list")]
    EmptyInput,
}

impl From<PolyError> for GbError {
    fn from(_: PolyError) -> Self {
        GbError::RingMismatch
    }
}

type Terms = Vec<(Monomial, Elem)>;

/// Terms sorted descending in `order`.
fn ordered(f: &Polynomial, order: MonomialOrder) -> Terms {
    let mut t = f.terms().to_vec();
    if order != MonomialOrder::DegRevLex {
        t.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

fn make_monic(t: &mut Terms, field: &Field) {
    if let Some(&(_, lc)) = t.first() {
        if lc != Elem::ONE {
            let inv = field.inv(lc).unwrap();
            for (_, c) in t.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
    }
}

/// `work - c·q·g_tail` where `work` and the result are ascending and `g` is
/// descending.
fn sub_scaled(work: Terms, g: &[(Monomial, Elem)], q: &Monomial, c: Elem, order: MonomialOrder, field: &Field) -> Terms {
    let mut out = Vec::with_capacity(work.len() + g.len());
    let scaled = g.iter().rev().map(|(m, d)| (m.mul(q), field.neg(field.mul(c, *d))));
    let mut a = work.into_iter().peekable();
    let mut b = scaled.peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m, u) = a.next().unwrap();
                    let (_, v) = b.next().unwrap();
                    let s = field.add(u, v);
                    if !s.is_zero() {
                        out.push((m, s));
                    }
                }
            },
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => out.push(b.next().unwrap()),
            (None, None) => break,
        }
    }
    out
}

/// Full reduction of `f` (descending terms) by monic `basis`.
fn reduce(f: &[(Monomial, Elem)], basis: &[Terms], order: MonomialOrder, field: &Field) -> Terms {
    let mut work: Terms = f.iter().rev().cloned().collect();
    let mut rem = Vec::new();
    while let Some((m, c)) = work.pop() {
        match basis.iter().find(|g| g[0].0.divides(&m)) {
            Some(g) => {
                let q = g[0].0.quotient_of(&m).unwrap();
                work = sub_scaled(work, &g[1..], &q, c, order, field);
            }
            None => rem.push((m, c)),
        }
    }
    rem
}

fn s_polynomial(f: &Terms, g: &Terms, order: MonomialOrder, field: &Field) -> Terms {
    let lcm = f[0].0.lcm(&g[0].0);
    let qf = f[0].0.quotient_of(&lcm).unwrap();
    let qg = g[0].0.quotient_of(&lcm).unwrap();
    // both monic: S = qf·f - qg·g, leading terms cancel
    let left: Terms = f[1..].iter().rev().map(|(m, c)| (m.mul(&qf), *c)).collect();
    let mut s = sub_scaled(left, &g[1..], &qg, Elem::ONE, order, field);
    s.reverse();
    s
}

fn buchberger(inputs: Vec<Terms>, order: MonomialOrder, field: &Field) -> Vec<Terms> {
    let mut basis: Vec<Terms> = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();

    let add = |h: Terms, basis: &mut Vec<Terms>, pending: &mut Vec<(usize, usize)>| {
        let idx = basis.len();
        basis.push(h);
        pending.extend((0..idx).map(|i| (i, idx)));
    };

    for f in inputs {
        let mut h = reduce(&f, &basis, order, field);
        if !h.is_empty() {
            make_monic(&mut h, field);
            add(h, &mut basis, &mut pending);
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first, ties broken by indices
        let lcm_of = |&(i, j): &(usize, usize)| basis[i][0].0.lcm(&basis[j][0].0);
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (la, lb) = (lcm_of(&pending[a]), lcm_of(&pending[b]));
                la.degree()
                    .cmp(&lb.degree())
                    .then_with(|| order.cmp(&la, &lb))
                    .then_with(|| pending[a].cmp(&pending[b]))
            })
            .unwrap();
        let (i, j) = pending.remove(best);
        let (lm_i, lm_j) = (&basis[i][0].0, &basis[j][0].0);
        if lm_i.is_coprime(lm_j) {
            continue;
        }
        let lcm = lm_i.lcm(lm_j);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order, field);
        let mut h = reduce(&s, &basis, order, field);
        if !h.is_empty() {
            make_monic(&mut h, field);
            add(h, &mut basis, &mut pending);
        }
    }
    basis
}

fn reduce_basis(basis: Vec<Terms>, order: MonomialOrder, field: &Field) -> Vec<Terms> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Terms> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Terms> =
                minimal.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, h)| h.clone()).collect();
            let mut r = reduce(&minimal[i], &others, order, field);
            make_monic(&mut r, field);
            r
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    reduced
}

/// Number of standard monomials of a monomial ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colength {
    Finite(u64),
    Infinite,
}

/// Reduced Gröbner basis with monic generators sorted by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    basis: Vec<Terms>,
    source: Vec<Polynomial>,
}

fn check_common_ring(gens: &[Polynomial], ring: Option<&Ring>) -> Result<Option<Ring>, GbError> {
    let ring = ring.cloned().or_else(|| gens.first().map(|g| g.ring().clone()));
    if let Some(r) = &ring {
        if gens.iter().any(|g| g.ring() != r) {
            return Err(GbError::RingMismatch);
        }
    }
    Ok(ring)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, GbError> {
    let ring = check_common_ring(gens, None)?.ok_or(GbError::EmptyInput)?;
    GroebnerBasis::new(&ring, gens, order)
}

impl GroebnerBasis {
    /// Like [`groebner`] but accepts an empty list (the zero ideal).
    pub fn new(ring: &Ring, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, GbError> {
        check_common_ring(gens, Some(ring))?;
        if gens.iter().any(|g| g.is_zero()) {
            return Err(GbError::ZeroGenerator);
        }
        let field = ring.field();
        // feed low-degree generators first; deterministic for a fixed input
        let mut inputs: Vec<Terms> = gens.iter().map(|g| ordered(g, order)).collect();
        inputs.sort_by(|a, b| {
            let (da, db) = (a[0].0.degree(), b[0].0.degree());
            da.cmp(&db).then_with(|| order.cmp(&a[0].0, &b[0].0))
        });
        let basis = reduce_basis(buchberger(inputs, order, field), order, field);
        Ok(GroebnerBasis { ring: ring.clone(), order, basis, source: gens.to_vec() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn source(&self) -> &[Polynomial] {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|t| self.ring.from_terms(t.iter().cloned())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|t| t[0].0.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GbError> {
        if f.ring() != &self.ring {
            return Err(GbError::RingMismatch);
        }
        let r = reduce(&ordered(f, self.order), &self.basis, self.order, self.ring.field());
        Ok(self.ring.from_terms(r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GbError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Leading monomial exponents per variable that appear as pure powers.
    fn pure_powers(&self) -> Vec<Option<u16>> {
        let n = self.ring.nvars();
        let mut bound = vec![None; n];
        for m in self.leading_monomials() {
            let support: Vec<usize> = (0..n).filter(|&v| m.exponent(v) > 0).collect();
            if let [v] = support[..] {
                let e = m.exponent(v);
                bound[v] = Some(bound[v].map_or(e, |b: u16| b.min(e)));
            }
        }
        bound
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.is_unit_ideal() || self.pure_powers().iter().all(|b| b.is_some())
    }

    /// `dim_F S/I`, counted on the staircase of leading monomials.
    pub fn colength(&self) -> Colength {
        if self.is_unit_ideal() {
            return Colength::Finite(0);
        }
        if !self.is_zero_dimensional() {
            return Colength::Infinite;
        }
        let mut count = 0u64;
        self.walk_staircase(|_| count += 1);
        Colength::Finite(count)
    }

    /// Standard monomials, or `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if self.is_unit_ideal() {
            return Some(Vec::new());
        }
        if !self.is_zero_dimensional() {
            return None;
        }
        let mut out = Vec::new();
        self.walk_staircase(|m| out.push(m.clone()));
        Some(out)
    }

    /// Largest degree of a standard monomial of a zero-dimensional ideal.
    pub fn socle_degree(&self) -> Option<u32> {
        self.standard_monomials().map(|ms| ms.iter().map(|m| m.degree()).max().unwrap_or(0))
    }

    fn walk_staircase(&self, mut visit: impl FnMut(&Monomial)) {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        fn rec(var: usize, n: usize, cur: &mut Vec<u16>, live: Vec<&Monomial>, visit: &mut dyn FnMut(&Monomial)) {
            if var == n {
                visit(&Monomial::from_exponents(cur));
                return;
            }
            let mut e = 0u16;
            loop {
                cur[var] = e;
                // leading monomials still able to divide an extension of cur
                let still: Vec<&Monomial> = live.iter().copied().filter(|m| m.exponent(var) <= e).collect();
                let blocked = still.iter().any(|m| (var + 1..n).all(|v| m.exponent(v) == 0));
                if blocked {
                    break;
                }
                rec(var + 1, n, cur, still, visit);
                e += 1;
            }
            cur[var] = 0;
        }
        let mut cur = vec![0u16; n];
        rec(0, n, &mut cur, lms.iter().collect(), &mut visit);
    }

    /// Krull dimension of `S/I`: largest set of variables containing the
    /// support of no leading monomial.
    pub fn dimension(&self) -> usize {
        if self.is_unit_ideal() {
            return 0;
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let masks: Vec<u64> = lms
            .iter()
            .map(|m| (0..n).filter(|&v| m.exponent(v) > 0).fold(0u64, |acc, v| acc | 1 << v))
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size > best && masks.iter().all(|&m| m & !set != 0) {
                best = size;
            }
        }
        best
    }

    pub fn height(&self) -> usize {
        self.ring.nvars() - self.dimension()
    }
}

/// Ideal equality by mutual reduction to zero.
pub fn ideal_equal(i: &[Polynomial], j: &[Polynomial]) -> Result<bool, GbError> {
    let ring = check_common_ring(&[i, j].concat(), None)?;
    let Some(ring) = ring else {
        return Ok(true);
    };
    let i: Vec<Polynomial> = i.iter().filter(|f| !f.is_zero()).cloned().collect();
    let j: Vec<Polynomial> = j.iter().filter(|f| !f.is_zero()).cloned().collect();
    let gi = GroebnerBasis::new(&ring, &i, MonomialOrder::DegRevLex)?;
    let gj = GroebnerBasis::new(&ring, &j, MonomialOrder::DegRevLex)?;
    for f in &j {
        if !gi.contains(f)? {
            return Ok(false);
        }
    }
    for f in &i {
        if !gj.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A minimal homogeneous generating set by graded Nakayama: scanning by
/// degree, keep an element iff it is not in the ideal of those kept so far.
pub fn minimal_generators(gens: &[Polynomial]) -> Result<Vec<Polynomial>, GbError> {
    let Some(ring) = check_common_ring(gens, None)? else {
        return Ok(Vec::new());
    };
    if let Some(bad) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(GbError::NonHomogeneousInput(bad.to_string()));
    }
    let mut sorted: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.degree().unwrap());
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut gb = GroebnerBasis::new(&ring, &[], MonomialOrder::DegRevLex)?;
    for f in sorted {
        if !gb.contains(f)? {
            kept.push(f.clone());
            let mut seed = gb.generators();
            seed.push(f.clone());
            gb = GroebnerBasis::new(&ring, &seed, MonomialOrder::DegRevLex)?;
        }
    }
    Ok(kept)
}

/// Outcome of [`is_complete_intersection`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiVerdict {
    pub minimal_generators: usize,
    pub height: usize,
    pub is_complete_intersection: bool,
}

/// A homogeneous ideal is a complete intersection iff its minimal number
/// of generators equals its height.
pub fn is_complete_intersection(gens: &[Polynomial]) -> Result<CiVerdict, GbError> {
    let ring = check_common_ring(gens, None)?.ok_or(GbError::EmptyInput)?;
    if gens.iter().any(|g| g.is_zero()) {
        return Err(GbError::ZeroGenerator);
    }
    let minimal = minimal_generators(gens)?;
    let height = GroebnerBasis::new(&ring, &minimal, MonomialOrder::DegRevLex)?.height();
    Ok(CiVerdict {
        minimal_generators: minimal.len(),
        height,
        is_complete_intersection: minimal.len() == height,
    })
}

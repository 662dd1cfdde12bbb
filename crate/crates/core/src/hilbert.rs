//! Invariants by degreewise linear algebra, the Hilbert ideal by brute
//! force, and the constructive generator pipeline for groups with a
//! generalised Nakajima structure.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffield::Elem;
use crate::gaction::{group_closure, GroupElement, GroupError, GroupTable};
use crate::gbasis::{ideal_equal, is_complete_intersection, CiVerdict, Colength, GbError, GroebnerBasis};
use crate::linalg::{axpy, sparse_rref, SparseRow};
use crate::mpoly::{hasse_composite, Monomial, MonomialOrder, Polynomial, Ring};
use crate::nakajima::{verify_structure, NakajimaStructure, Verification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("no invariant candidate for index {j} up to degree {bound}")]
    NoCandidate { j: usize, bound: u32 },
    #[error("reduction escaped at index {j}, exponent {alpha:?}: {reason}")]
    ReductionEscape { j: usize, alpha: Vec<u16>, reason: String },
    #[error("structure invalid: {0}")]
    StructureInvalid(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("ring does not match the group")]
    RingMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Groebner(#[from] GbError),
}

/// Images of monomials under one group element. Only the part of a
/// monomial in moved variables is memoised.
struct ImageCache {
    images: Vec<Polynomial>,
    moved: Vec<bool>,
    memo: HashMap<Monomial, Polynomial>,
}

impl ImageCache {
    fn new(g: &GroupElement, ring: &Ring) -> ImageCache {
        let images: Vec<Polynomial> = (0..g.dim()).map(|i| ring.linear_form(g.image(i))).collect();
        let moved = (0..g.dim()).map(|i| images[i] != ring.var(i)).collect();
        ImageCache { images, moved, memo: HashMap::new() }
    }

    fn image(&mut self, m: &Monomial) -> Polynomial {
        let n = m.nvars();
        let split = |keep: bool| {
            Monomial::from_exponents(&(0..n).map(|v| if self.moved[v] == keep { m.exponent(v) } else { 0 }).collect::<Vec<_>>())
        };
        let (active, fixed) = (split(true), split(false));
        self.moved_image(&active).mul_term(&fixed, Elem::ONE)
    }

    fn moved_image(&mut self, m: &Monomial) -> Polynomial {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        let p = match (0..m.nvars()).rev().find(|&v| m.exponent(v) > 0) {
            None => self.images[0].ring().one(),
            Some(v) => {
                let rest = Monomial::var(m.nvars(), v).quotient_of(m).unwrap();
                &self.moved_image(&rest) * &self.images[v]
            }
        };
        self.memo.insert(m.clone(), p.clone());
        p
    }
}

/// Basis of the invariants inside the span of `columns`, which must be
/// stable under the group. The basis is in reduced echelon form with
/// respect to the column order, each element monic at its first column.
fn invariant_space(caches: &mut [ImageCache], ring: &Ring, columns: &[Monomial]) -> Vec<Polynomial> {
    let field = ring.field();
    let ngens = caches.len() as u32;
    let mut sorted: Vec<usize> = (0..columns.len()).collect();
    sorted.sort_unstable_by(|&a, &b| MonomialOrder::Lex.cmp(&columns[a], &columns[b]));
    let rank: HashMap<&Monomial, u32> = sorted.iter().enumerate().map(|(r, &c)| (&columns[c], r as u32)).collect();
    let mut pivots: HashMap<u32, (SparseRow, SparseRow)> = HashMap::new();
    let mut kernel = Vec::new();
    // lex-largest columns first with pivots at the lex-smallest image
    // monomial: a lower triangular action moves monomials up in lex, which
    // keeps the fill-in small
    for &c in sorted.iter().rev() {
        let m = &columns[c];
        let mut image: SparseRow = Vec::new();
        for (gi, cache) in caches.iter_mut().enumerate() {
            let diff = &cache.image(m) - &ring.term(m.clone(), Elem::ONE);
            for (u, coeff) in diff.terms() {
                image.push((rank[u] * ngens + gi as u32, *coeff));
            }
        }
        image.sort_unstable_by_key(|x| x.0);
        let mut combo: SparseRow = vec![(c as u32, Elem::ONE)];
        loop {
            let Some(&(lead, v)) = image.first() else {
                kernel.push(combo);
                break;
            };
            match pivots.get(&lead) {
                Some((pimg, pcombo)) => {
                    let f = field.neg(v);
                    image = axpy(&image, f, pimg, field);
                    combo = axpy(&combo, f, pcombo, field);
                }
                None => {
                    let inv = field.inv(v).unwrap();
                    let scale = |r: SparseRow| -> SparseRow { r.into_iter().map(|(k, x)| (k, field.mul(x, inv))).collect() };
                    pivots.insert(lead, (scale(image), scale(combo)));
                    break;
                }
            }
        }
    }
    sparse_rref(kernel, field)
        .into_iter()
        .map(|row| ring.from_terms(row.into_iter().map(|(c, v)| (columns[c as usize].clone(), v))))
        .collect()
}

fn check_ring(group: &GroupTable, ring: &Ring) -> Result<(), HilbertError> {
    if ring.nvars() != group.dim() || ring.field() != group.field() {
        return Err(HilbertError::RingMismatch);
    }
    Ok(())
}

/// Basis of the degree-`d` invariants.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub degree: u32,
    pub basis: Vec<Polynomial>,
}

/// Joint kernel of `g - 1` over the generators on the monomials of
/// degree `d`.
pub fn invariants_of_degree(group: &GroupTable, ring: &Ring, d: u32) -> Result<InvariantBasis, HilbertError> {
    check_ring(group, ring)?;
    let mut caches: Vec<ImageCache> = group.gens().iter().map(|g| ImageCache::new(g, ring)).collect();
    let columns = ring.monomials_of_degree(d);
    Ok(InvariantBasis { degree: d, basis: invariant_space(&mut caches, ring, &columns) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Bruteforce,
    Constructive,
}

/// How the degree scan of the brute-force computation ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    /// The ideal found so far is zero-dimensional and every monomial above
    /// its socle degree lies in it, so no later invariant is needed.
    Certified { socle_degree: u32 },
    /// Stopped at `|G|`, which suffices for a verified generalised
    /// Nakajima structure.
    StructureBound,
    /// Stopped at a bound given by the caller without a certificate.
    UserBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanInfo {
    /// Largest degree whose invariants were computed.
    pub max_degree_scanned: u32,
    pub degree_bound: Option<u32>,
    pub termination: Termination,
    pub heuristic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stage {
    /// `f_j = x_j` for `j <= i_0`.
    Base,
    /// Index inside the block `(i_{k-1}, i_k]`, computed against `G_k`.
    Block { k: usize },
    /// Index beyond `i_r`, computed against the whole group.
    Trailing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorProvenance {
    /// 1-based variable index.
    pub index: usize,
    pub stage: Stage,
    pub acting_order: usize,
    pub degree: u32,
    /// The minimal-degree invariant before reduction.
    pub candidate: String,
    /// Number of steps `m` of the reduction.
    pub reduction_steps: usize,
    /// Intermediate derivative images checked for invariance.
    pub delta_checks: usize,
}

#[derive(Debug, Clone)]
pub struct HilbertIdealResult {
    pub method: Method,
    pub generators: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    pub provenance: Vec<GeneratorProvenance>,
    pub scan: Option<ScanInfo>,
    /// Stage-level checks that ran, for reporting.
    pub checks: Vec<String>,
}

impl HilbertIdealResult {
    pub fn degree_product(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    pub fn total_delta_checks(&self) -> usize {
        self.provenance.iter().map(|p| p.delta_checks).sum()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceOptions {
    pub degree_bound: Option<u32>,
    /// The group has a verified generalised Nakajima structure.
    pub structure_verified: bool,
}

/// Minimal homogeneous generators of the ideal generated by all positive
/// degree invariants. The scan runs degree by degree and keeps an
/// invariant iff it is not in the ideal of those kept so far.
pub fn hilbert_ideal_bruteforce(
    group: &GroupTable,
    ring: &Ring,
    options: &BruteForceOptions,
) -> Result<HilbertIdealResult, HilbertError> {
    check_ring(group, ring)?;
    let order = group.order() as u32;
    let limit = match (options.degree_bound, options.structure_verified) {
        (Some(b), _) => Some(b),
        (None, true) => Some(order),
        (None, false) => None,
    };
    let mut caches: Vec<ImageCache> = group.gens().iter().map(|g| ImageCache::new(g, ring)).collect();
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut gb = GroebnerBasis::new(ring, &[], MonomialOrder::DegRevLex)?;
    let mut d = 0u32;
    let termination = loop {
        if let Some(s) = gb.socle_degree().filter(|_| !kept.is_empty()) {
            if d > s {
                break Termination::Certified { socle_degree: s };
            }
        }
        if limit.is_some_and(|b| d >= b) {
            break if options.degree_bound.is_some() { Termination::UserBound } else { Termination::StructureBound };
        }
        d += 1;
        let columns = ring.monomials_of_degree(d);
        for f in invariant_space(&mut caches, ring, &columns) {
            if !gb.contains(&f)? {
                kept.push(f);
                gb = GroebnerBasis::new(ring, &kept, MonomialOrder::DegRevLex)?;
            }
        }
        caches.iter_mut().for_each(|c| c.memo.retain(|m, _| m.degree() + 1 >= d));
    };
    let heuristic = match termination {
        Termination::Certified { .. } | Termination::StructureBound => false,
        Termination::UserBound => !(options.structure_verified && d >= order),
    };
    let degrees = kept.iter().map(|f| f.degree().unwrap()).collect();
    Ok(HilbertIdealResult {
        method: Method::Bruteforce,
        generators: kept,
        degrees,
        provenance: Vec::new(),
        scan: Some(ScanInfo { max_degree_scanned: d, degree_bound: options.degree_bound, termination, heuristic }),
        checks: Vec::new(),
    })
}

/// Minimal-degree invariant of `group` in `(x_1..x_j)S` with a term outside
/// `(x_1..x_{j-1})S`; `j` is 1-based. The candidate is the first row of
/// the reduced echelon basis with column priority `x_j^d`, the remaining
/// monomials free of `x_1..x_{j-1}`, then the rest; it is normalised to
/// coefficient 1 at its pivot.
pub fn find_fj(group: &GroupTable, ring: &Ring, j: usize) -> Result<Polynomial, HilbertError> {
    check_ring(group, ring)?;
    let n = ring.nvars();
    if j == 0 || j > n {
        return Err(GroupError::IndexOutOfRange { index: j, n }.into());
    }
    let mut caches: Vec<ImageCache> = group.gens().iter().map(|g| ImageCache::new(g, ring)).collect();
    let bound = group.order() as u32;
    for d in 1..=bound {
        let pure = Monomial::var(n, j - 1);
        let pure = (1..d).fold(pure.clone(), |acc, _| acc.mul(&pure));
        let mut new = vec![pure.clone()];
        let mut old = Vec::new();
        for m in ring.monomials_of_degree(d) {
            if m == pure || !m.touches_prefix(j) {
                continue;
            }
            if m.touches_prefix(j - 1) {
                old.push(m);
            } else {
                new.push(m);
            }
        }
        let fresh = new.len();
        let columns: Vec<Monomial> = new.into_iter().chain(old).collect();
        let basis = invariant_space(&mut caches, ring, &columns);
        if let Some(first) = basis.into_iter().next() {
            let lead = first.terms().iter().position(|(m, _)| columns[..fresh].contains(m));
            if lead.is_some() {
                return Ok(first);
            }
        }
    }
    Err(HilbertError::NoCandidate { j, bound })
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub result: Polynomial,
    pub steps: usize,
    pub delta_checks: usize,
}

/// Strips the trailing-variable part of `f`: with `F = Σ f_α z^α` over
/// monomials `z^α` in `x_{j+1}..x_n`, applies
/// `F_k = F_{k-1} - Δ^{(α_{k-1})}(F_{k-1}) z^{α_{k-1}}` along the support in
/// descending trailing order. With `check` set, every derivative image is
/// tested for invariance under `group` and membership in
/// `(x_1..x_{j-1})S`.
pub fn reduce_to_small_ring(
    f: &Polynomial,
    j: usize,
    group: &GroupTable,
    check: bool,
) -> Result<Reduction, HilbertError> {
    let ring = f.ring().clone();
    check_ring(group, &ring)?;
    let n = ring.nvars();
    let support: Vec<Vec<u16>> = f.trailing_decomposition(j).into_iter().map(|(a, _)| a).collect();
    let mut current = f.clone();
    let mut steps = 0;
    let mut delta_checks = 0;
    for alpha in &support {
        if alpha.iter().all(|&a| a == 0) {
            continue;
        }
        let image = hasse_composite(&current, j, alpha).map_err(|e| HilbertError::ReductionEscape {
            j,
            alpha: alpha.clone(),
            reason: e.to_string(),
        })?;
        if check {
            if !group.is_invariant(&image)? {
                return Err(HilbertError::ReductionEscape { j, alpha: alpha.clone(), reason: "image not invariant".into() });
            }
            if !image.in_prefix_ideal(j - 1) {
                return Err(HilbertError::ReductionEscape {
                    j,
                    alpha: alpha.clone(),
                    reason: format!("image {image} not in (x_1..x_{})S", j - 1),
                });
            }
            delta_checks += 1;
        }
        let mut z = vec![0u16; n];
        z[j..].copy_from_slice(alpha);
        current = &current - &image.mul_term(&Monomial::from_exponents(&z), Elem::ONE);
        steps += 1;
    }
    if !current.in_prefix_ring(j) {
        return Err(HilbertError::ReductionEscape { j, alpha: vec![], reason: "result not in the small ring".into() });
    }
    Ok(Reduction { result: current, steps, delta_checks })
}

#[derive(Debug, Clone, Copy)]
pub struct HilbertOptions {
    /// Run the stage-level ideal comparisons and derivative checks.
    pub verify: bool,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        HilbertOptions { verify: true }
    }
}

/// Group acting on the first `j` variables, by truncating generators.
fn restrict(group: &GroupTable, j: usize) -> Result<GroupTable, HilbertError> {
    let field = group.field();
    let mut gens = vec![GroupElement::identity(field, j)];
    for g in group.gens() {
        let rows = (0..j).map(|r| g.image(r)[..j].to_vec()).collect();
        gens.push(GroupElement::from_rows(field, rows)?);
    }
    Ok(group_closure(&gens, group.order().max(1))?)
}

fn same_group(a: &GroupTable, b: &GroupTable) -> bool {
    a.order() == b.order() && a.gens().iter().all(|g| b.contains(g))
}

fn assert_that(cond: bool, what: impl FnOnce() -> String) -> Result<(), HilbertError> {
    if cond {
        Ok(())
    } else {
        Err(HilbertError::AssertionFailed(what()))
    }
}

/// Checks shape conditions of a constructive output: `n` homogeneous
/// generators, `f_j` in the first `j` variables with an `x_j^{deg}` term and
/// degree at most `|G|`.
pub fn check_shape(gens: &[Polynomial], ring: &Ring, group_order: usize) -> Result<(), String> {
    let n = ring.nvars();
    if gens.len() != n {
        return Err(format!("{} generators for {n} variables", gens.len()));
    }
    for (i, f) in gens.iter().enumerate() {
        let j = i + 1;
        let d = f.degree().ok_or_else(|| format!("f_{j} is zero"))?;
        if !f.is_homogeneous() {
            return Err(format!("f_{j} is not homogeneous"));
        }
        if !f.in_prefix_ring(j) {
            return Err(format!("f_{j} involves variables beyond x_{j}"));
        }
        if d as usize > group_order {
            return Err(format!("deg f_{j} = {d} exceeds |G| = {group_order}"));
        }
        let mut e = vec![0u16; n];
        e[i] = d as u16;
        if f.coeff(&Monomial::from_exponents(&e)).is_zero() {
            return Err(format!("f_{j} lacks the term x_{j}^{d}"));
        }
    }
    Ok(())
}

/// The generators `f_1..f_n` built along the chain `G_1 ⊆ ... ⊆ G_r` of a
/// verified structure for `sequence`. Refuses with `StructureInvalid` if
/// the sequence does not give a generalised Nakajima structure.
pub fn ci_generators(
    group: &GroupTable,
    ring: &Ring,
    sequence: &[usize],
    options: &HilbertOptions,
) -> Result<HilbertIdealResult, HilbertError> {
    check_ring(group, ring)?;
    let structure = match verify_structure(group, sequence) {
        Ok(Verification::Valid(s)) => s,
        Ok(Verification::Refuted(r)) => {
            return Err(HilbertError::StructureInvalid(format!(
                "sequence {:?} generates a subgroup of order {} in a group of order {}",
                r.sequence, r.generated_order, r.group_order
            )))
        }
        Err(e) => return Err(HilbertError::StructureInvalid(e.to_string())),
    };
    ci_generators_for(group, ring, &structure, options)
}

/// As [`ci_generators`] for an already verified structure.
pub fn ci_generators_for(
    group: &GroupTable,
    ring: &Ring,
    structure: &NakajimaStructure,
    options: &HilbertOptions,
) -> Result<HilbertIdealResult, HilbertError> {
    let n = ring.nvars();
    let seq = &structure.sequence;
    let i0 = seq[0];
    let mut gens: Vec<Polynomial> = Vec::with_capacity(n);
    let mut provenance = Vec::with_capacity(n);
    let mut checks = Vec::new();
    for j in 1..=i0 {
        gens.push(ring.var(j - 1));
        provenance.push(GeneratorProvenance {
            index: j,
            stage: Stage::Base,
            acting_order: structure.chain.first().map_or(1, |g| g.order()),
            degree: 1,
            candidate: ring.var(j - 1).to_string(),
            reduction_steps: 0,
            delta_checks: 0,
        });
    }
    if options.verify {
        if let Some(g1) = structure.chain.first() {
            let restricted = restrict(g1, i0)?;
            assert_that(restricted.order() == 1, || format!("G_1 moves x_1..x_{i0}"))?;
            checks.push(format!("G_1 acts trivially on x_1..x_{i0}"));
        }
    }
    for j in i0 + 1..=n {
        let (stage, acting) = match (1..seq.len()).find(|&k| j <= seq[k]) {
            Some(k) => (Stage::Block { k }, &structure.chain[k - 1]),
            None => (Stage::Trailing, group),
        };
        let big_f = find_fj(acting, ring, j)?;
        let red = reduce_to_small_ring(&big_f, j, acting, options.verify)?;
        let fj = red.result;
        if options.verify && j > 1 {
            let prior = GroebnerBasis::new(ring, &gens, MonomialOrder::DegRevLex)?;
            assert_that(prior.contains(&(&big_f - &fj))?, || format!("F_{j} - f_{j} not in the prior ideal"))?;
        }
        provenance.push(GeneratorProvenance {
            index: j,
            stage,
            acting_order: acting.order(),
            degree: fj.degree().unwrap_or(0),
            candidate: big_f.to_string(),
            reduction_steps: red.steps,
            delta_checks: red.delta_checks,
        });
        gens.push(fj);

        if options.verify {
            if let Some(k) = (1..seq.len()).find(|&k| seq[k] == j) {
                verify_block_end(structure, ring, &gens, k, &mut checks)?;
            }
        }
    }
    check_shape(&gens, ring, group.order()).map_err(HilbertError::AssertionFailed)?;
    if options.verify {
        let gb = GroebnerBasis::new(ring, &gens, MonomialOrder::DegRevLex)?;
        let product: u128 = gens.iter().map(|f| f.degree().unwrap() as u128).product();
        assert_that(gb.colength() == Colength::Finite(product as u64), || {
            format!("colength {:?} differs from the degree product {product}", gb.colength())
        })?;
        checks.push(format!("colength equals degree product {product}"));
    }
    let degrees = gens.iter().map(|f| f.degree().unwrap()).collect();
    Ok(HilbertIdealResult { method: Method::Constructive, generators: gens, degrees, provenance, scan: None, checks })
}

/// At `j = i_k`: the ideal built so far must equal the Hilbert ideal of
/// `G_k` on `x_1..x_{i_k}` extended to `S`, and `G_{k+1}` must act on those
/// variables exactly as `G_k` does.
fn verify_block_end(
    structure: &NakajimaStructure,
    ring: &Ring,
    gens: &[Polynomial],
    k: usize,
    checks: &mut Vec<String>,
) -> Result<(), HilbertError> {
    let ik = structure.sequence[k];
    let gk = &structure.chain[k - 1];
    let small = ring.prefix(ik).map_err(|_| HilbertError::RingMismatch)?;
    let restricted = restrict(gk, ik)?;
    let oracle = hilbert_ideal_bruteforce(&restricted, &small, &BruteForceOptions::default())?;
    let extended: Vec<Polynomial> =
        oracle.generators.iter().map(|f| f.extend_to(ring).expect("prefix ring embeds")).collect();
    assert_that(ideal_equal(&extended, gens)?, || format!("Hilbert ideal of G_{k} on x_1..x_{ik} differs"))?;
    checks.push(format!("P(G_{k}, W^({ik})): ideal equals the extended Hilbert ideal of the restriction"));
    if let Some(next) = structure.chain.get(k) {
        assert_that(same_group(&restricted, &restrict(next, ik)?), || {
            format!("G_{} and G_{k} act differently on x_1..x_{ik}", k + 1)
        })?;
        checks.push(format!("G_{} and G_{k} agree on x_1..x_{ik}", k + 1));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polynomiality {
    Polynomial,
    NotPolynomial,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialityReport {
    pub verdict: Polynomiality,
    pub degree_product: u128,
    pub group_order: usize,
    pub complete_intersection: CiVerdict,
}

/// For a complete intersection Hilbert ideal: degree product equal to
/// `|G|` means the invariant ring is polynomial, a larger product means it
/// is not. Anything else is undetermined.
pub fn polynomiality_report(group: &GroupTable, result: &HilbertIdealResult) -> Result<PolynomialityReport, HilbertError> {
    let ci = is_complete_intersection(&result.generators)?;
    let minimal = crate::gbasis::minimal_generators(&result.generators)?;
    let product: u128 = minimal.iter().map(|f| f.degree().unwrap() as u128).product();
    let order = group.order() as u128;
    let verdict = if !ci.is_complete_intersection || ci.height != group.dim() {
        Polynomiality::Undetermined
    } else if product == order {
        Polynomiality::Polynomial
    } else if product > order {
        Polynomiality::NotPolynomial
    } else {
        Polynomiality::Undetermined
    };
    Ok(PolynomialityReport { verdict, degree_product: product, group_order: group.order(), complete_intersection: ci })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use crate::gaction::orbit_product;

    fn elem(field: &Field, rows: &[&[u32]]) -> GroupElement {
        GroupElement::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| Elem(x)).collect()).collect()).unwrap()
    }

    fn xy_group() -> (GroupTable, Ring) {
        let k = Field::prime(3).unwrap();
        let g = group_closure(&[elem(&k, &[&[1, 0], &[1, 1]])], 10).unwrap();
        (g, Ring::with_names(k, vec!["x".into(), "y".into()]).unwrap())
    }

    #[test]
    fn invariants_low_degrees() {
        let (g, r) = xy_group();
        assert_eq!(invariants_of_degree(&g, &r, 1).unwrap().basis, vec![r.parse("x").unwrap()]);
        assert_eq!(invariants_of_degree(&g, &r, 2).unwrap().basis, vec![r.parse("x^2").unwrap()]);
        let d3 = invariants_of_degree(&g, &r, 3).unwrap().basis;
        assert_eq!(d3.len(), 2);
        assert!(d3.iter().all(|f| g.is_invariant(f).unwrap()));
        let triv = GroupTable::trivial(&Field::prime(2).unwrap(), 2);
        let r2 = Ring::new(Field::prime(2).unwrap(), 2).unwrap();
        assert_eq!(invariants_of_degree(&triv, &r2, 2).unwrap().basis.len(), 3);
    }

    #[test]
    fn fj_in_two_variables_is_orbit_product() {
        let (g, r) = xy_group();
        let f2 = find_fj(&g, &r, 2).unwrap();
        assert_eq!(f2, orbit_product(1, &g, &r).unwrap());
        assert_eq!(find_fj(&g, &r, 1).unwrap(), r.parse("x").unwrap());
    }

    #[test]
    fn reduction_of_small_ring_element_is_identity() {
        let (g, r) = xy_group();
        let f = r.parse("y^3 + 2*x^2*y").unwrap();
        let red = reduce_to_small_ring(&f, 2, &g, true).unwrap();
        assert_eq!(red.result, f);
        assert_eq!(red.steps, 0);
    }

    #[test]
    fn bruteforce_two_variables() {
        let (g, r) = xy_group();
        let res = hilbert_ideal_bruteforce(&g, &r, &BruteForceOptions::default()).unwrap();
        assert!(ideal_equal(&res.generators, &[r.parse("x").unwrap(), r.parse("y^3").unwrap()]).unwrap());
        assert!(matches!(res.scan.unwrap().termination, Termination::Certified { socle_degree: 2 }));
        let ci = ci_generators(&g, &r, &[1, 2], &HilbertOptions::default()).unwrap();
        assert_eq!(ci.degrees, vec![1, 3]);
        let poly = polynomiality_report(&g, &ci).unwrap();
        assert_eq!(poly.verdict, Polynomiality::Polynomial);
    }
}

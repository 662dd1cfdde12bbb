//! Matrix groups acting linearly on the dual space `V*` and, through it, on
//! the polynomial ring. A group element is stored as the matrix whose row
//! `i` is the image of `x_i`.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::ffield::{Elem, Field};
use crate::linalg::Matrix;
use crate::mpoly::{Monomial, Polynomial, Ring};

/// Default bound on enumerated group orders.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("elements are defined over different fields")]
    FieldMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("group order {0} is not a power of the characteristic")]
    NotAPGroup(usize),
    #[error("generator {0} is not unipotent")]
    NotUnipotent(usize),
    #[error("no generators given")]
    NoGenerators,
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    field: Field,
    matrix: Matrix,
}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.matrix)
    }
}

impl GroupElement {
    pub fn new(field: &Field, matrix: Matrix) -> Result<GroupElement, GroupError> {
        if !matrix.is_square() {
            return Err(GroupError::NotSquare);
        }
        if matrix.data().iter().any(|&e| !field.contains(e)) {
            return Err(GroupError::FieldMismatch);
        }
        if matrix.inverse(field).is_none() {
            return Err(GroupError::NotInvertible(0));
        }
        Ok(GroupElement { field: field.clone(), matrix })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<GroupElement, GroupError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(GroupError::DimensionMismatch { expected: n, found: bad.len() });
        }
        GroupElement::new(field, Matrix::from_rows(rows).ok_or(GroupError::NotSquare)?)
    }

    pub fn identity(field: &Field, n: usize) -> GroupElement {
        GroupElement { field: field.clone(), matrix: Matrix::identity(n) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Row `i`: the coefficients of `g·x_i`.
    pub fn image(&self, i: usize) -> &[Elem] {
        self.matrix.row(i)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement { field: self.field.clone(), matrix: other.matrix.mul(&self.matrix, &self.field) }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { field: self.field.clone(), matrix: self.matrix.inverse(&self.field).unwrap() }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `M - I`.
    pub fn minus_identity(&self) -> Matrix {
        self.matrix.sub(&Matrix::identity(self.dim()), &self.field)
    }

    pub fn is_unipotent(&self) -> bool {
        self.minus_identity().pow(self.dim() as u32, &self.field).is_zero()
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.matrix.is_lower_unitriangular()
    }

    /// 0-based indices `i` with `g·x_i != x_i`.
    pub fn moved_indices(&self) -> Vec<usize> {
        let d = self.minus_identity();
        (0..self.dim()).filter(|&i| d.row(i).iter().any(|e| !e.is_zero())).collect()
    }

    /// `rank(g - 1)`.
    pub fn rank_minus_identity(&self) -> usize {
        self.minus_identity().rank(&self.field)
    }

    /// Matrix of `g` on `V` in column convention relative to the dual basis.
    pub fn v_side_matrix(&self) -> Matrix {
        self.matrix.inverse(&self.field).unwrap()
    }

    /// Same element written in new coordinates `y = P x` (rows of `P` are
    /// the new variables): `P M P^{-1}`.
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> GroupElement {
        let m = p.mul(&self.matrix, &self.field).mul(p_inv, &self.field);
        GroupElement { field: self.field.clone(), matrix: m }
    }

    fn key(&self) -> &[Elem] {
        self.matrix.data()
    }
}

fn check_compatible(gens: &[GroupElement]) -> Result<(Field, usize), GroupError> {
    let first = gens.first().ok_or(GroupError::NoGenerators)?;
    for g in gens {
        if g.field != first.field {
            return Err(GroupError::FieldMismatch);
        }
        if g.dim() != first.dim() {
            return Err(GroupError::DimensionMismatch { expected: first.dim(), found: g.dim() });
        }
    }
    Ok((first.field.clone(), first.dim()))
}

/// `g·f`: substitute each `x_i` by the linear form `g·x_i`.
pub fn act(g: &GroupElement, f: &Polynomial) -> Result<Polynomial, GroupError> {
    if f.ring().nvars() != g.dim() {
        return Err(GroupError::DimensionMismatch { expected: g.dim(), found: f.ring().nvars() });
    }
    if f.ring().field() != g.field() {
        return Err(GroupError::FieldMismatch);
    }
    Ok(Action::new(g, f.ring()).apply(f))
}

/// Substitution by a fixed element with cached powers of the images of
/// the variables.
pub struct Action {
    ring: Ring,
    images: Vec<Polynomial>,
    powers: HashMap<(usize, u16), Polynomial>,
}

impl Action {
    pub fn new(g: &GroupElement, ring: &Ring) -> Action {
        let images = (0..g.dim()).map(|i| ring.linear_form(g.image(i))).collect();
        Action { ring: ring.clone(), images, powers: HashMap::new() }
    }

    fn power(&mut self, var: usize, e: u16) -> Polynomial {
        if e == 0 {
            return self.ring.one();
        }
        if e == 1 {
            return self.images[var].clone();
        }
        if let Some(p) = self.powers.get(&(var, e)) {
            return p.clone();
        }
        let p = &self.power(var, e - 1) * &self.images[var];
        self.powers.insert((var, e), p.clone());
        p
    }

    pub fn apply_monomial(&mut self, m: &Monomial) -> Polynomial {
        let mut acc = self.ring.one();
        for v in 0..m.nvars() {
            let e = m.exponent(v);
            if e > 0 {
                acc = &acc * &self.power(v, e);
            }
        }
        acc
    }

    pub fn apply(&mut self, f: &Polynomial) -> Polynomial {
        let mut acc = self.ring.zero();
        for (m, c) in f.terms() {
            acc = &acc + &self.apply_monomial(m).scale(*c);
        }
        acc
    }
}

/// A finite matrix group with all elements enumerated.
#[derive(Clone, Debug)]
pub struct GroupTable {
    field: Field,
    n: usize,
    elements: Vec<GroupElement>,
    index: HashMap<Vec<Elem>, usize>,
    gens: Vec<GroupElement>,
}

fn bfs_closure(
    field: &Field,
    n: usize,
    gens: &[GroupElement],
    cap: usize,
) -> Result<(Vec<GroupElement>, HashMap<Vec<Elem>, usize>), GroupError> {
    let id = GroupElement::identity(field, n);
    let mut index = HashMap::new();
    index.insert(id.key().to_vec(), 0);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&elements[i]);
            if !index.contains_key(h.key()) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                index.insert(h.key().to_vec(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    Ok((elements, index))
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Closure of `gens` under composition. Generators are taken greedily in
/// input order: one that already lies in the group generated by its
/// predecessors is dropped, so the stored generating set is irredundant
/// in that sense and the element list is a breadth-first enumeration from
/// the kept generators.
pub fn group_closure(gens: &[GroupElement], cap: usize) -> Result<GroupTable, GroupError> {
    let (field, n) = check_compatible(gens)?;
    for (i, g) in gens.iter().enumerate() {
        if g.matrix.inverse(&field).is_none() {
            return Err(GroupError::NotInvertible(i));
        }
    }
    let mut kept: Vec<GroupElement> = Vec::new();
    let (mut elements, mut index) = bfs_closure(&field, n, &kept, cap)?;
    for g in gens {
        if index.contains_key(g.key()) {
            continue;
        }
        kept.push(g.clone());
        (elements, index) = bfs_closure(&field, n, &kept, cap)?;
    }
    if !is_power_of(elements.len(), field.characteristic() as usize) {
        return Err(GroupError::NotAPGroup(elements.len()));
    }
    Ok(GroupTable { field, n, elements, index, gens: kept })
}

impl GroupTable {
    pub fn trivial(field: &Field, n: usize) -> GroupTable {
        group_closure(&[GroupElement::identity(field, n)], 1).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements; the identity comes first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn gens(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g.key())
    }

    /// Subgroup generated by `elems` (the trivial group when empty).
    pub fn subgroup(&self, elems: &[GroupElement]) -> GroupTable {
        let mut gens = vec![GroupElement::identity(&self.field, self.n)];
        gens.extend(elems.iter().cloned());
        group_closure(&gens, self.order()).expect("subgroup of a valid table")
    }

    /// `true` iff `f` is fixed by every generator.
    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool, GroupError> {
        for g in &self.gens {
            if &act(g, f)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Σ_{g∈G} g·f`.
pub fn trace(f: &Polynomial, group: &GroupTable) -> Result<Polynomial, GroupError> {
    let mut acc = f.ring().zero();
    for g in group.elements() {
        acc = &acc + &act(g, f)?;
    }
    Ok(acc)
}

/// Product of the distinct images of `x_j` (0-based) under the group.
pub fn orbit_product(j: usize, group: &GroupTable, ring: &Ring) -> Result<Polynomial, GroupError> {
    if j >= group.dim() {
        return Err(GroupError::IndexOutOfRange { index: j, n: group.dim() });
    }
    if ring.nvars() != group.dim() {
        return Err(GroupError::DimensionMismatch { expected: group.dim(), found: ring.nvars() });
    }
    let mut orbit: Vec<&[Elem]> = Vec::new();
    for g in group.elements() {
        let row = g.image(j);
        if !orbit.contains(&row) {
            orbit.push(row);
        }
    }
    let mut acc = ring.one();
    for row in orbit {
        acc = &acc * &ring.linear_form(row);
    }
    Ok(acc)
}

/// Basis change to a flag basis together with the conjugated generators.
#[derive(Clone, Debug)]
pub struct Triangularization {
    /// Row `i` expresses the new `i`-th variable in the old ones.
    pub basis_change: Matrix,
    pub generators: Vec<GroupElement>,
}

impl Triangularization {
    pub fn is_identity(&self) -> bool {
        self.basis_change.is_identity()
    }
}

/// Finds new variables `y_1..y_n` with `g·y_i - y_i` in the span of
/// `y_1..y_{i-1}` for all generators, by repeatedly extracting a form that
/// is fixed modulo the span found so far.
pub fn triangularize(gens: &[GroupElement]) -> Result<Triangularization, GroupError> {
    let (field, n) = check_compatible(gens)?;
    for (i, g) in gens.iter().enumerate() {
        if !g.is_unipotent() {
            return Err(GroupError::NotUnipotent(i));
        }
    }
    let diffs: Vec<Matrix> = gens.iter().map(|g| g.minus_identity()).collect();
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    while basis.len() < n {
        // columns spanning the annihilator of the current span
        let annihilator: Vec<Vec<Elem>> = if basis.is_empty() {
            Matrix::identity(n).to_rows()
        } else {
            crate::linalg::right_kernel_dense(&Matrix::from_rows(basis.clone()).unwrap(), &field)
        };
        let ann = Matrix::from_rows(annihilator).unwrap().transpose();
        let mut blocks: Vec<Vec<Elem>> = vec![Vec::new(); n];
        for d in &diffs {
            let prod = d.mul(&ann, &field);
            for (r, block) in blocks.iter_mut().enumerate() {
                block.extend_from_slice(prod.row(r));
            }
        }
        let system = Matrix::from_rows(blocks).unwrap();
        let candidates = if system.ncols() == 0 {
            Matrix::identity(n).to_rows()
        } else {
            system.left_kernel(&field)
        };
        // candidates modulo the current span, in echelon form; prefer the
        // sparsest row, then the smallest pivot
        let mut span = Matrix::from_rows(if basis.is_empty() { vec![vec![Elem::ZERO; n]] } else { basis.clone() }).unwrap();
        span.rref(&field);
        let reduced: Vec<Vec<Elem>> = candidates.iter().map(|c| reduce_mod_span(c, &span, &field)).collect();
        let mut ech = Matrix::from_rows(reduced).unwrap();
        ech.rref(&field);
        let v = ech
            .to_rows()
            .into_iter()
            .filter_map(|r| {
                let piv = r.iter().position(|e| !e.is_zero())?;
                Some((r.iter().filter(|e| !e.is_zero()).count(), piv, r))
            })
            .min_by_key(|(nnz, piv, _)| (*nnz, *piv));
        let (_, _, mut v) = v.expect("unipotent action has a fixed form modulo any stable subspace");
        let lead = *v.iter().find(|e| !e.is_zero()).unwrap();
        let inv = field.inv(lead).unwrap();
        for e in v.iter_mut() {
            *e = field.mul(*e, inv);
        }
        basis.push(v);
    }
    let p = Matrix::from_rows(basis).unwrap();
    let p_inv = p.inverse(&field).unwrap();
    let generators = gens.iter().map(|g| g.conjugate(&p, &p_inv)).collect::<Vec<_>>();
    debug_assert!(generators.iter().all(|g| g.is_lower_unitriangular()));
    Ok(Triangularization { basis_change: p, generators })
}

/// Reduces `v` by the rows of an RREF matrix.
fn reduce_mod_span(v: &[Elem], rref: &Matrix, field: &Field) -> Vec<Elem> {
    let mut v = v.to_vec();
    for r in 0..rref.nrows() {
        let row = rref.row(r);
        if let Some(piv) = row.iter().position(|e| !e.is_zero()) {
            let c = v[piv];
            if !c.is_zero() {
                for (k, x) in row.iter().enumerate() {
                    v[k] = field.sub(v[k], field.mul(c, *x));
                }
            }
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoReflections {
    /// Indices into the element list of the table.
    pub reflections: Vec<usize>,
    pub generated_order: usize,
    pub generated_by_reflections: bool,
}

/// Elements with `rank(g - 1) = 1` and whether they generate the group.
pub fn pseudo_reflections(group: &GroupTable) -> PseudoReflections {
    let reflections: Vec<usize> =
        (0..group.order()).filter(|&i| group.elements()[i].rank_minus_identity() == 1).collect();
    let elems: Vec<GroupElement> = reflections.iter().map(|&i| group.elements()[i].clone()).collect();
    let generated_order = group.subgroup(&elems).order();
    PseudoReflections { reflections, generated_order, generated_by_reflections: generated_order == group.order() }
}

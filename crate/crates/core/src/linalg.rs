//! Exact linear algebra over a [`Field`]: small dense matrices for group
//! elements and sparse row echelon forms for the large, very sparse systems
//! that invariant computations produce.

use std::collections::HashMap;
use std::fmt;

use crate::ffield::{Elem, Field};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r).iter().map(|e| e.0).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Option<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return None;
        }
        Some(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix, field: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix, field: &Field) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// `M[i][i] = 1` and `M[i][j] = 0` for `j > i`.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i) == Elem::ONE && (i + 1..self.cols).all(|j| self.get(i, j).is_zero())
            })
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, c);
                if i != r && !f.is_zero() {
                    for j in 0..self.cols {
                        let v = field.sub(self.get(i, j), field.mul(f, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref(field).len()
    }

    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        let piv = aug.rref(field);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis (in RREF) of `{v : v·M = 0}` for row vectors `v`.
    pub fn left_kernel(&self, field: &Field) -> Vec<Vec<Elem>> {
        right_kernel_dense(&self.transpose(), field)
    }

    pub fn pow(&self, e: u32, field: &Field) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }
}

/// Basis of `{c : M c = 0}` in reduced echelon form (sorted by pivot).
pub fn right_kernel_dense(m: &Matrix, field: &Field) -> Vec<Vec<Elem>> {
    let mut a = m.clone();
    let pivots = a.rref(field);
    let free: Vec<usize> = (0..a.ncols()).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<Elem>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Elem::ZERO; a.ncols()];
            v[f] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a.get(r, f));
            }
            v
        })
        .collect();
    // put the basis itself into RREF so callers get a canonical answer
    if !basis.is_empty() {
        let mut k = Matrix::from_rows(basis).unwrap();
        let rank = k.rref(field).len();
        basis = k.to_rows().into_iter().take(rank).collect();
    }
    basis
}

/// Sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(u32, Elem)>;

/// `a + c·b`.
pub fn axpy(a: &[(u32, Elem)], c: Elem, b: &[(u32, Elem)], field: &Field) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, va) = a[i];
        let (cb, vb) = b[j];
        if ca < cb {
            out.push((ca, va));
            i += 1;
        } else if cb < ca {
            out.push((cb, field.mul(c, vb)));
            j += 1;
        } else {
            let v = field.add(va, field.mul(c, vb));
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(cb, vb)| (cb, field.mul(c, vb))));
    out
}

/// Incrementally built row echelon form of sparse rows. Pivot rows are
/// normalised to leading coefficient 1.
pub struct SparseEchelon<'f> {
    field: &'f Field,
    rows: Vec<SparseRow>,
    pivot_of: HashMap<u32, usize>,
}

impl<'f> SparseEchelon<'f> {
    pub fn new(field: &'f Field) -> Self {
        SparseEchelon { field, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates leading entries until the lead is not a pivot column.
    pub fn reduce_head(&self, mut row: SparseRow) -> SparseRow {
        while let Some(&(c, v)) = row.first() {
            match self.pivot_of.get(&c) {
                Some(&r) => row = axpy(&row, self.field.neg(v), &self.rows[r], self.field),
                None => break,
            }
        }
        row
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce_full(&self, mut row: SparseRow) -> SparseRow {
        let mut pos = 0;
        while pos < row.len() {
            let (c, v) = row[pos];
            match self.pivot_of.get(&c) {
                Some(&r) => row = axpy(&row, self.field.neg(v), &self.rows[r], self.field),
                None => pos += 1,
            }
        }
        row
    }

    /// Adds a row; returns its pivot column when it was independent.
    pub fn insert(&mut self, row: SparseRow) -> Option<u32> {
        let row = self.reduce_head(row);
        let &(c, v) = row.first()?;
        let inv = self.field.inv(v).unwrap();
        let row: SparseRow = row.into_iter().map(|(k, x)| (k, self.field.mul(x, inv))).collect();
        self.pivot_of.insert(c, self.rows.len());
        self.rows.push(row);
        Some(c)
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce_head(row).is_empty()
    }

    /// Fully reduced rows sorted by pivot column.
    pub fn into_rref(mut self) -> Vec<SparseRow> {
        let mut order: Vec<(u32, usize)> = self.pivot_of.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        // descending pivots: each row only meets pivots to its right, which
        // are already fully reduced
        for &(_, r) in &order {
            let row = std::mem::take(&mut self.rows[r]);
            let (head, tail) = row.split_first().map(|(h, t)| (*h, t.to_vec())).unwrap();
            let mut reduced = self.reduce_full(tail);
            reduced.insert(0, head);
            self.rows[r] = reduced;
        }
        order.reverse();
        order.into_iter().map(|(_, r)| std::mem::take(&mut self.rows[r])).collect()
    }

    /// Basis of the right kernel `{c : row·c = 0 for all rows}` on columns
    /// `0..ncols`, one vector per free column (value 1 there).
    pub fn kernel(self, ncols: u32) -> Vec<SparseRow> {
        let field = self.field;
        let rref = self.into_rref();
        let mut is_pivot = vec![false; ncols as usize];
        let mut contributions: HashMap<u32, Vec<(u32, Elem)>> = HashMap::new();
        for row in &rref {
            let pc = row[0].0;
            is_pivot[pc as usize] = true;
            for &(c, v) in &row[1..] {
                contributions.entry(c).or_default().push((pc, field.neg(v)));
            }
        }
        (0..ncols)
            .filter(|&c| !is_pivot[c as usize])
            .map(|f| {
                let mut v = contributions.remove(&f).unwrap_or_default();
                v.push((f, Elem::ONE));
                v.sort_unstable_by_key(|x| x.0);
                v
            })
            .collect()
    }
}

/// Reduced row echelon basis of the span of `rows`.
pub fn sparse_rref(rows: impl IntoIterator<Item = SparseRow>, field: &Field) -> Vec<SparseRow> {
    let mut ech = SparseEchelon::new(field);
    for r in rows {
        ech.insert(r);
    }
    ech.into_rref()
}

//! β-indices, generalised Nakajima sequences and the classical Nakajima
//! test, for groups already written in a triangular basis.
//!
//! Sequences are 1-based as in the usual notation: `(i_0, ..., i_r)` with
//! `1 <= i_0 < ... < i_r <= n`. The block `P_k` (for `k = 1..r`) consists of
//! every group element whose moved variables lie in `x_{i_{k-1}+1}..x_{i_k}`
//! and whose β-index is at most `i_{k-1}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaction::{GroupElement, GroupTable};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NakajimaError {
    #[error("group element is not lower unitriangular in the working basis")]
    NotTriangular,
    #[error("bad sequence: {0}")]
    BadSequence(String),
}

/// `β_g`: the largest 1-based index `j` such that `x_j` occurs in some
/// `g·x_i - x_i`; 0 for the identity.
pub fn beta(g: &GroupElement) -> Result<usize, NakajimaError> {
    if !g.is_lower_unitriangular() {
        return Err(NakajimaError::NotTriangular);
    }
    let d = g.minus_identity();
    let n = g.dim();
    Ok((0..n).filter(|&c| (0..n).any(|r| !d.get(r, c).is_zero())).map(|c| c + 1).max().unwrap_or(0))
}

fn check_triangular(group: &GroupTable) -> Result<(), NakajimaError> {
    if group.elements().iter().all(|g| g.is_lower_unitriangular()) {
        Ok(())
    } else {
        Err(NakajimaError::NotTriangular)
    }
}

/// Moved range and β of an element, 1-based; `None` range for the identity.
#[derive(Clone, Copy, Debug)]
struct Profile {
    moved: Option<(usize, usize)>,
    beta: usize,
}

fn profile(g: &GroupElement) -> Profile {
    let moved = g.moved_indices();
    let range = moved.first().map(|&lo| (lo + 1, *moved.last().unwrap() + 1));
    Profile { moved: range, beta: beta(g).expect("checked triangular") }
}

impl Profile {
    fn fits(&self, lo: usize, hi: usize) -> bool {
        self.moved.is_none_or(|(a, b)| a > lo && b <= hi) && self.beta <= lo
    }
}

/// Why an element violates the block condition for a given sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockViolation {
    /// Moved variables do not lie inside a single block.
    MovedOutsideBlocks { first_moved: usize, last_moved: usize },
    /// The only block containing the moved variables starts below `β_g`.
    BetaTooLarge { beta: usize, block_start: usize },
}

/// A failed verification: the blocks generate a proper subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub sequence: Vec<usize>,
    pub generated_order: usize,
    pub group_order: usize,
    /// Index in the element table of the first element outside the
    /// generated subgroup.
    pub witness: usize,
    pub violation: BlockViolation,
}

#[derive(Debug, Clone)]
pub struct NakajimaStructure {
    pub basis_change: Matrix,
    pub sequence: Vec<usize>,
    /// `P_1..P_r`, each listing all qualifying elements (identity included).
    pub blocks: Vec<Vec<GroupElement>>,
    /// `G_1 ⊆ ... ⊆ G_r`.
    pub chain: Vec<GroupTable>,
}

impl NakajimaStructure {
    pub fn r(&self) -> usize {
        self.sequence.len() - 1
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn chain_orders(&self) -> Vec<usize> {
        self.chain.iter().map(|g| g.order()).collect()
    }

    /// Re-checks the block condition literally on every stored element.
    pub fn blocks_satisfy_condition(&self) -> bool {
        self.blocks.iter().enumerate().all(|(k, block)| {
            let (lo, hi) = (self.sequence[k], self.sequence[k + 1]);
            block.iter().all(|g| {
                let d = g.minus_identity();
                let n = g.dim();
                let beta = beta(g).unwrap();
                (0..n).all(|i| d.row(i).iter().all(|e| e.is_zero()) || (lo < i + 1 && i < hi)) && beta <= lo
            })
        })
    }

    /// The same condition on `V`: for `g ∈ P_k` and `i <= i_{k-1}`,
    /// `g·v_i - v_i` lies in the span of `v_{i_{k-1}+1}..v_n`.
    pub fn dual_description_holds(&self) -> bool {
        self.blocks.iter().enumerate().all(|(k, block)| {
            let lo = self.sequence[k];
            block.iter().all(|g| {
                let m = g.v_side_matrix();
                (0..lo).all(|i| (0..lo).all(|l| m.get(l, i).0 == u32::from(l == i)))
            })
        })
    }

    pub fn with_basis_change(mut self, p: Matrix) -> Self {
        self.basis_change = p;
        self
    }
}

#[derive(Debug, Clone)]
pub enum Verification {
    Valid(NakajimaStructure),
    Refuted(Refutation),
}

impl Verification {
    pub fn structure(&self) -> Option<&NakajimaStructure> {
        match self {
            Verification::Valid(s) => Some(s),
            Verification::Refuted(_) => None,
        }
    }
}

fn check_sequence(seq: &[usize], n: usize) -> Result<(), NakajimaError> {
    if seq.is_empty() {
        return Err(NakajimaError::BadSequence("empty sequence".into()));
    }
    if seq.len() > n {
        return Err(NakajimaError::BadSequence(format!("length {} exceeds n = {n}", seq.len())));
    }
    if seq[0] < 1 || *seq.last().unwrap() > n {
        return Err(NakajimaError::BadSequence(format!("entries must lie in 1..={n}")));
    }
    if seq.windows(2).any(|w| w[0] >= w[1]) {
        return Err(NakajimaError::BadSequence("not strictly increasing".into()));
    }
    Ok(())
}

fn verify_with_profiles(group: &GroupTable, profiles: &[Profile], seq: &[usize]) -> Verification {
    let elements = group.elements();
    let mut blocks = Vec::new();
    let mut chain = Vec::new();
    let mut union: Vec<GroupElement> = Vec::new();
    for k in 1..seq.len() {
        let (lo, hi) = (seq[k - 1], seq[k]);
        let block: Vec<GroupElement> =
            (0..elements.len()).filter(|&i| profiles[i].fits(lo, hi)).map(|i| elements[i].clone()).collect();
        union.extend(block.iter().cloned());
        chain.push(group.subgroup(&union));
        blocks.push(block);
    }
    let generated = chain.last().cloned().unwrap_or_else(|| group.subgroup(&[]));
    if generated.order() == group.order() {
        return Verification::Valid(NakajimaStructure {
            basis_change: Matrix::identity(group.dim()),
            sequence: seq.to_vec(),
            blocks,
            chain,
        });
    }
    let witness = (0..elements.len()).find(|&i| !generated.contains(&elements[i])).unwrap();
    let p = profiles[witness];
    let (a, b) = p.moved.unwrap();
    let containing = (1..seq.len()).find(|&k| seq[k - 1] < a && b <= seq[k]);
    let violation = match containing {
        Some(k) => BlockViolation::BetaTooLarge { beta: p.beta, block_start: seq[k - 1] },
        None => BlockViolation::MovedOutsideBlocks { first_moved: a, last_moved: b },
    };
    Verification::Refuted(Refutation {
        sequence: seq.to_vec(),
        generated_order: generated.order(),
        group_order: group.order(),
        witness,
        violation,
    })
}

/// Builds every `P_k` from all qualifying elements and accepts iff they
/// generate the whole group.
pub fn verify_structure(group: &GroupTable, sequence: &[usize]) -> Result<Verification, NakajimaError> {
    check_triangular(group)?;
    check_sequence(sequence, group.dim())?;
    let profiles: Vec<Profile> = group.elements().iter().map(profile).collect();
    Ok(verify_with_profiles(group, &profiles, sequence))
}

/// All candidate sequences, shortest first and lexicographic within a
/// length.
pub fn candidate_sequences(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 1..=n {
        let mut comb: Vec<usize> = (1..=len).collect();
        loop {
            out.push(comb.clone());
            // next combination of `len` elements of 1..=n
            let Some(pos) = (0..len).rev().find(|&i| comb[i] < n - (len - 1 - i)) else {
                break;
            };
            comb[pos] += 1;
            for i in pos + 1..len {
                comb[i] = comb[i - 1] + 1;
            }
        }
    }
    out
}

/// First valid sequence in [`candidate_sequences`] order. `None` only says
/// that no sequence works in the current basis.
pub fn find_sequence(group: &GroupTable) -> Result<Option<NakajimaStructure>, NakajimaError> {
    check_triangular(group)?;
    let profiles: Vec<Profile> = group.elements().iter().map(profile).collect();
    for seq in candidate_sequences(group.dim()) {
        if let Verification::Valid(s) = verify_with_profiles(group, &profiles, &seq) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Classical Nakajima test: with `G_i` the elements moving at most `x_i`,
/// the group is Nakajima (in this basis) iff `Π |G_i| = |G|`.
pub fn is_nakajima_classic(group: &GroupTable) -> Result<bool, NakajimaError> {
    check_triangular(group)?;
    let n = group.dim();
    let mut sizes = vec![0usize; n];
    for g in group.elements() {
        match g.moved_indices()[..] {
            [] => sizes.iter_mut().for_each(|s| *s += 1),
            [i] => sizes[i] += 1,
            _ => {}
        }
    }
    let product = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
    Ok(product == Some(group.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{Elem, Field};
    use crate::gaction::group_closure;

    fn elem(field: &Field, rows: &[&[u32]]) -> GroupElement {
        GroupElement::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| Elem(x)).collect()).collect()).unwrap()
    }

    fn cyclic() -> GroupTable {
        let k = Field::prime(3).unwrap();
        group_closure(&[elem(&k, &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 1]])], 100).unwrap()
    }

    #[test]
    fn beta_values() {
        let k = Field::prime(3).unwrap();
        assert_eq!(beta(&GroupElement::identity(&k, 3)).unwrap(), 0);
        let sigma = elem(&k, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 1, 1, 0], &[1, 1, 0, 1]]);
        assert_eq!(beta(&sigma).unwrap(), 2);
        let upper = elem(&k, &[&[1, 1], &[0, 1]]);
        assert_eq!(beta(&upper), Err(NakajimaError::NotTriangular));
    }

    #[test]
    fn sequence_enumeration_order() {
        let seqs = candidate_sequences(3);
        assert_eq!(
            seqs,
            vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]]
        );
        assert_eq!(candidate_sequences(6).len(), 63);
    }

    #[test]
    fn cyclic_group_has_no_sequence() {
        let g = cyclic();
        assert_eq!(g.order(), 3);
        for seq in candidate_sequences(3) {
            assert!(matches!(verify_structure(&g, &seq).unwrap(), Verification::Refuted(_)));
        }
        assert!(find_sequence(&g).unwrap().is_none());
        assert!(!is_nakajima_classic(&g).unwrap());
        match verify_structure(&g, &[1, 2, 3]).unwrap() {
            Verification::Refuted(r) => {
                assert_eq!(r.group_order, 3);
                assert!(r.generated_order < 3);
            }
            Verification::Valid(_) => unreachable!(),
        }
    }

    #[test]
    fn bad_sequences() {
        let g = cyclic();
        assert!(matches!(verify_structure(&g, &[2, 2]), Err(NakajimaError::BadSequence(_))));
        assert!(matches!(verify_structure(&g, &[0, 2]), Err(NakajimaError::BadSequence(_))));
        assert!(matches!(verify_structure(&g, &[1, 4]), Err(NakajimaError::BadSequence(_))));
        assert!(matches!(verify_structure(&g, &[]), Err(NakajimaError::BadSequence(_))));
    }

    #[test]
    fn trivial_group() {
        let k = Field::prime(2).unwrap();
        let g = GroupTable::trivial(&k, 3);
        let s = find_sequence(&g).unwrap().unwrap();
        assert_eq!(s.sequence, vec![1]);
        assert!(is_nakajima_classic(&g).unwrap());
    }

    #[test]
    fn nakajima_group_with_full_sequence() {
        // x2 -> x2 + x1 and x3 -> x3 + x1 + x2 generate all unitriangular 3x3 matrices
        let k = Field::prime(2).unwrap();
        let a = elem(&k, &[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
        let b = elem(&k, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]]);
        let g = group_closure(&[a, b], 100).unwrap();
        assert!(is_nakajima_classic(&g).unwrap());
        let v = verify_structure(&g, &[1, 2, 3]).unwrap();
        let s = v.structure().unwrap();
        assert!(s.blocks_satisfy_condition());
        assert!(s.dual_description_holds());
        assert_eq!(s.chain_orders(), vec![2, 8]);
    }
}

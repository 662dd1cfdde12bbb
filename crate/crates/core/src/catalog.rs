//! Named example groups and a generator of random groups with a known
//! generalised Nakajima sequence.

use rand::Rng;

use crate::ffield::{Elem, Field};
use std::collections::HashSet;

use crate::gaction::{group_closure, GroupElement, GroupTable};
use crate::linalg::Matrix;

/// Generators over a field with variable names and an optional known
/// sequence.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub field: Field,
    pub variables: Vec<String>,
    pub labels: Vec<String>,
    pub generators: Vec<GroupElement>,
    pub sequence: Option<Vec<usize>>,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.variables.len()
    }
}

/// First monic irreducible polynomial of degree `k` over `F_p` in
/// lexicographic order of the low coefficients.
pub fn first_irreducible(p: u32, k: usize) -> Vec<u32> {
    let total = (p as u64).pow(k as u32);
    for code in 0..total {
        let mut c = code;
        let mut modulus: Vec<u32> = (0..k)
            .map(|_| {
                let d = (c % p as u64) as u32;
                c /= p as u64;
                d
            })
            .collect();
        modulus.push(1);
        if Field::new(p as u64, Some(&modulus)).is_ok() {
            return modulus;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Identity plus the listed `(row, col, value)` entries.
fn unipotent(field: &Field, n: usize, entries: &[(usize, usize, Elem)]) -> GroupElement {
    let mut m = Matrix::identity(n);
    for &(r, c, v) in entries {
        m.set(r, c, v);
    }
    GroupElement::new(field, m).expect("unipotent matrices are invertible")
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Stong's group over `F_{p^3}` with basis `1, ω, ν = ω^2`.
pub fn stong(p: u32) -> Instance {
    let field = Field::new(p as u64, Some(&first_irreducible(p, 3))).unwrap();
    let one = Elem::ONE;
    let omega = field.generator();
    let nu = field.mul(omega, omega);
    let rho = unipotent(&field, 3, &[(1, 0, one)]);
    let sigma = unipotent(&field, 3, &[(2, 0, one)]);
    let tau = unipotent(&field, 3, &[(1, 0, omega), (2, 0, nu)]);
    Instance {
        name: format!("stong_p{p}"),
        variables: default_names(3),
        labels: vec!["rho".into(), "sigma".into(), "tau".into()],
        generators: vec![rho, sigma, tau],
        sequence: Some(vec![1, 3]),
        field,
    }
}

/// `Z/p` acting diagonally on `m` copies of the two-dimensional
/// indecomposable: `y_i -> y_i + x_i`, variables ordered `x_1..x_m, y_1..y_m`.
pub fn mv2(p: u32, m: usize) -> Instance {
    let field = Field::prime(p as u64).unwrap();
    let entries: Vec<_> = (0..m).map(|i| (m + i, i, Elem::ONE)).collect();
    let sigma = unipotent(&field, 2 * m, &entries);
    let mut variables: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    variables.extend((1..=m).map(|i| format!("y{i}")));
    Instance {
        name: format!("mv2_p{p}_m{m}"),
        variables,
        labels: vec!["sigma".into()],
        generators: vec![sigma],
        sequence: Some(vec![m, 2 * m]),
        field,
    }
}

/// The order 27 group in four variables over `F_3` generated by
/// `σ: x3 -> x3 + x2, x4 -> x4 + x2 + x1` and `τ: x2 -> x2 + x1, x3 -> x3 + x1`.
pub fn f3_order27() -> Instance {
    let field = Field::prime(3).unwrap();
    let one = Elem::ONE;
    let sigma = unipotent(&field, 4, &[(2, 1, one), (3, 1, one), (3, 0, one)]);
    let tau = unipotent(&field, 4, &[(1, 0, one), (2, 0, one)]);
    Instance {
        name: "f3_order27".into(),
        variables: default_names(4),
        labels: vec!["sigma".into(), "tau".into()],
        generators: vec![sigma, tau],
        sequence: None,
        field,
    }
}

/// Cyclic group generated by `x2 -> x2 + x1, x3 -> x3 + x2`.
pub fn cyclic(p: u32) -> Instance {
    let field = Field::prime(p as u64).unwrap();
    let g = unipotent(&field, 3, &[(1, 0, Elem::ONE), (2, 1, Elem::ONE)]);
    Instance {
        name: format!("cyclic_p{p}"),
        variables: default_names(3),
        labels: vec!["g".into()],
        generators: vec![g],
        sequence: None,
        field,
    }
}

pub fn identity(p: u32, n: usize) -> Instance {
    let field = Field::prime(p as u64).unwrap();
    Instance {
        name: format!("identity_p{p}_n{n}"),
        variables: default_names(n),
        labels: vec!["e".into()],
        generators: vec![GroupElement::identity(&field, n)],
        sequence: Some(vec![n]),
        field,
    }
}

/// Parameters for [`random_nakajima`].
#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub primes: &'static [u32],
    pub max_n: usize,
    pub max_order: usize,
    pub max_per_block: usize,
    /// Cap on the number of monomials in the top degree a brute-force
    /// scan may need, estimated from the orbit sizes of the variables.
    pub max_scan_monomials: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { primes: &[2, 3], max_n: 6, max_order: 81, max_per_block: 2, max_scan_monomials: 20_000 }
    }
}

/// A random group with a generalised Nakajima sequence by construction:
/// each generator of block `k` is the identity plus entries in rows
/// `i_{k-1}+1..=i_k` and columns `1..=i_{k-1}`. Draws are repeated until
/// the order is at most `max_order` and the group is not trivial.
pub fn random_nakajima<R: Rng>(rng: &mut R, params: &RandomParams) -> Instance {
    loop {
        let p = params.primes[rng.gen_range(0..params.primes.len())];
        let n = rng.gen_range(2..=params.max_n);
        let field = Field::prime(p as u64).unwrap();
        // i_0 in 1..n, then a random increasing tail
        let mut seq = vec![rng.gen_range(1..n)];
        while *seq.last().unwrap() < n {
            let last = *seq.last().unwrap();
            let next = rng.gen_range(last + 1..=n);
            seq.push(next);
            if rng.gen_bool(0.3) {
                break;
            }
        }
        let mut gens = Vec::new();
        for k in 1..seq.len() {
            let (lo, hi) = (seq[k - 1], seq[k]);
            for _ in 0..rng.gen_range(1..=params.max_per_block) {
                let mut entries = Vec::new();
                for r in lo..hi {
                    for c in 0..lo {
                        if rng.gen_bool(0.5) {
                            entries.push((r, c, Elem(rng.gen_range(1..p))));
                        }
                    }
                }
                if !entries.is_empty() {
                    gens.push(unipotent(&field, n, &entries));
                }
            }
        }
        if gens.is_empty() {
            continue;
        }
        let Ok(table) = group_closure(&gens, params.max_order) else {
            continue;
        };
        if table.order() == 1 || scan_estimate(&table) > params.max_scan_monomials {
            continue;
        }
        return Instance {
            name: format!("random_p{p}_n{n}"),
            variables: default_names(n),
            labels: (1..=gens.len()).map(|i| format!("g{i}")).collect(),
            generators: gens,
            sequence: Some(seq),
            field,
        };
    }
}

/// Number of monomials of degree `D` in `n` variables, where `D - 1` is the
/// socle degree of the ideal of orbit products of the variables. The Hilbert
/// ideal contains those orbit products, so a certified scan never goes past `D`.
pub fn scan_estimate(group: &GroupTable) -> u64 {
    let n = group.dim();
    let mut top = 1u64;
    for j in 0..n {
        let orbit: HashSet<Vec<Elem>> = group.elements().iter().map(|g| g.image(j).to_vec()).collect();
        top += orbit.len() as u64 - 1;
    }
    // C(n - 1 + top, n - 1)
    let mut c = 1u64;
    for i in 1..n as u64 {
        c = c.saturating_mul(top + i) / i;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nakajima::{find_sequence, verify_structure, Verification};
    use rand::SeedableRng;

    #[test]
    fn example_orders() {
        let cap = 10_000;
        assert_eq!(group_closure(&stong(2).generators, cap).unwrap().order(), 8);
        assert_eq!(group_closure(&mv2(3, 2).generators, cap).unwrap().order(), 3);
        assert_eq!(group_closure(&f3_order27().generators, cap).unwrap().order(), 27);
        assert_eq!(group_closure(&cyclic(3).generators, cap).unwrap().order(), 3);
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn random_instances_have_their_sequence() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let inst = random_nakajima(&mut rng, &RandomParams::default());
            let g = group_closure(&inst.generators, 100).unwrap();
            assert!(g.order() <= 81);
            let seq = inst.sequence.unwrap();
            assert!(matches!(verify_structure(&g, &seq).unwrap(), Verification::Valid(_)));
            assert!(find_sequence(&g).unwrap().is_some());
        }
    }
}

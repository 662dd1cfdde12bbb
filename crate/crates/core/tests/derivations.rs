use invar_core::ffield::{binomial_mod_p, Elem, Field};
use invar_core::gaction::{act, group_closure, trace, GroupElement};
use invar_core::linalg::Matrix;
use invar_core::mpoly::{hasse_derivative, Monomial, Polynomial, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn fields() -> Vec<Field> {
    vec![
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::new(2, Some(&[1, 1, 1])).unwrap(),
        Field::new(3, Some(&[1, 0, 1])).unwrap(),
    ]
}

fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, terms: usize, max_exp: u16) -> Polynomial {
    let n = ring.nvars();
    let q = ring.field().order();
    ring.from_terms((0..terms).map(|_| {
        let e: Vec<u16> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        (Monomial::from_exponents(&e), Elem(rng.gen_range(0..q)))
    }))
}

/// Leibniz `Δ^(l)(fg) = Σ Δ^(i) f · Δ^(l-i) g` and iterativity
/// `Δ^(a) Δ^(b) = C(a+b, a) Δ^(a+b)` on 1000 random pairs.
#[test]
fn leibniz_and_iterativity_on_random_pairs() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let fields = fields();
    let mut checked = 0;
    for _ in 0..1000 {
        let field = fields[rng.gen_range(0..fields.len())].clone();
        let n = rng.gen_range(1..=3);
        let ring = Ring::new(field.clone(), n).unwrap();
        let (tf, tg) = (rng.gen_range(1..5), rng.gen_range(1..5));
        let f = random_poly(&mut rng, &ring, tf, 6);
        let g = random_poly(&mut rng, &ring, tg, 6);
        let var = rng.gen_range(0..n);
        let l = rng.gen_range(0..8);
        let lhs = hasse_derivative(&(&f * &g), var, l).unwrap();
        let mut rhs = ring.zero();
        for i in 0..=l {
            rhs = &rhs + &(&hasse_derivative(&f, var, i).unwrap() * &hasse_derivative(&g, var, l - i).unwrap());
        }
        assert_eq!(lhs, rhs, "Leibniz failed for {f} * {g}, var {var}, l {l}");

        let (a, b) = (rng.gen_range(0..6), rng.gen_range(0..6));
        let twice = hasse_derivative(&hasse_derivative(&f, var, b).unwrap(), var, a).unwrap();
        let c = binomial_mod_p((a + b) as u64, a as u64, field.characteristic() as u64);
        let once = hasse_derivative(&f, var, a + b).unwrap().scale(field.from_int(c as i64));
        assert_eq!(twice, once, "iterativity failed for {f}, var {var}, a {a}, b {b}");
        checked += 1;
    }
    assert_eq!(checked, 1000);
}

fn unitriangular<R: Rng>(rng: &mut R, field: &Field, n: usize) -> GroupElement {
    let mut m = Matrix::identity(n);
    for r in 1..n {
        for c in 0..r {
            if rng.gen_bool(0.4) {
                m.set(r, c, Elem(rng.gen_range(0..field.order())));
            }
        }
    }
    GroupElement::new(field, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_a_homomorphism(seed in any::<u64>(), fi in 0usize..5, n in 1usize..4) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let field = fields()[fi].clone();
        let ring = Ring::new(field.clone(), n).unwrap();
        let g = unitriangular(&mut rng, &field, n);
        let h = unitriangular(&mut rng, &field, n);
        let f = random_poly(&mut rng, &ring, 4, 3);
        let k = random_poly(&mut rng, &ring, 3, 2);
        prop_assert_eq!(act(&g.compose(&h), &f).unwrap(), act(&g, &act(&h, &f).unwrap()).unwrap());
        prop_assert_eq!(act(&g, &(&f * &k)).unwrap(), &act(&g, &f).unwrap() * &act(&g, &k).unwrap());
        prop_assert_eq!(act(&g, &(&f + &k)).unwrap(), &act(&g, &f).unwrap() + &act(&g, &k).unwrap());
        prop_assert_eq!(act(&g.inverse(), &act(&g, &f).unwrap()).unwrap(), f);
    }

    #[test]
    fn trace_is_linear_and_invariant(seed in any::<u64>(), fi in 0usize..2, n in 2usize..4) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let field = fields()[fi].clone();
        let ring = Ring::new(field.clone(), n).unwrap();
        let gens: Vec<GroupElement> = (0..2).map(|_| unitriangular(&mut rng, &field, n)).collect();
        let group = group_closure(&gens, 10_000).unwrap();
        let f = random_poly(&mut rng, &ring, 3, 3);
        let k = random_poly(&mut rng, &ring, 3, 3);
        let c = Elem(rng.gen_range(0..field.order()));
        let combined = &f + &k.scale(c);
        let lhs = trace(&combined, &group).unwrap();
        let rhs = &trace(&f, &group).unwrap() + &trace(&k, &group).unwrap().scale(c);
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert!(group.is_invariant(&lhs).unwrap());
    }

    #[test]
    fn hasse_matches_substitution(seed in any::<u64>(), fi in 0usize..5, l in 0u32..7) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let field = fields()[fi].clone();
        let ring = Ring::new(field.clone(), 2).unwrap();
        let f = random_poly(&mut rng, &ring, 4, 6);
        // the coefficient of t^l in f(x1 + t, x2), with t the last variable
        let big = Ring::new(field.clone(), 3).unwrap();
        let shifted = &big.var(0) + &big.var(2);
        let mut expanded = big.zero();
        for (m, c) in f.terms() {
            let term = &(&shifted.pow(m.exponent(0) as u32) * &big.var(1).pow(m.exponent(1) as u32)) * &big.constant(*c);
            expanded = &expanded + &term;
        }
        let picked = ring.from_terms(expanded.terms().iter().filter(|(m, _)| m.exponent(2) as u32 == l).map(|(m, c)| {
            (Monomial::from_exponents(&m.exponents()[..2]), *c)
        }));
        prop_assert_eq!(hasse_derivative(&f, 0, l).unwrap(), picked);
    }
}

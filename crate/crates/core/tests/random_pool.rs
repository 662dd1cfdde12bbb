use invar_core::catalog::{random_nakajima, RandomParams};
use invar_core::gaction::{group_closure, GroupTable};
use invar_core::gbasis::{ideal_equal, Colength, GroebnerBasis};
use invar_core::hilbert::*;
use invar_core::mpoly::{Monomial, MonomialOrder, Polynomial, Ring};
use invar_core::nakajima::verify_structure;
use rand::SeedableRng;

fn orbit_size(group: &GroupTable, j: usize) -> usize {
    let mut rows: Vec<&[_]> = group.elements().iter().map(|g| g.image(j)).collect();
    rows.sort();
    rows.dedup();
    rows.len()
}

fn assert_shape(gens: &[Polynomial], ring: &Ring, order: usize) {
    let n = ring.nvars();
    assert_eq!(gens.len(), n);
    let mut product = 1u64;
    for (i, f) in gens.iter().enumerate() {
        let d = f.degree().unwrap();
        assert!(f.is_homogeneous());
        assert!(f.terms().iter().all(|(m, _)| m.exponents()[i + 1..].iter().all(|&e| e == 0)), "f_{} = {f}", i + 1);
        assert!(d as usize <= order);
        let mut e = vec![0u16; n];
        e[i] = d as u16;
        assert!(!f.coeff(&Monomial::from_exponents(&e)).is_zero(), "f_{} = {f}", i + 1);
        product *= d as u64;
    }
    let gb = GroebnerBasis::new(ring, gens, MonomialOrder::DegRevLex).unwrap();
    assert_eq!(gb.colength(), Colength::Finite(product));
}

#[test]
fn random_generalised_nakajima_pool() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let params = RandomParams::default();
    for round in 0..50 {
        let inst = random_nakajima(&mut rng, &params);
        let group = group_closure(&inst.generators, 1000).unwrap();
        assert!(group.order() <= 81 && inst.n() <= 6);
        let ring = Ring::with_names(inst.field.clone(), inst.variables.clone()).unwrap();
        let seq = inst.sequence.clone().unwrap();
        let structure = verify_structure(&group, &seq).unwrap().structure().cloned().unwrap();
        let ci = ci_generators(&group, &ring, &seq, &HilbertOptions::default())
            .unwrap_or_else(|e| panic!("round {round} ({}): {e}", inst.name));
        assert_shape(&ci.generators, &ring, group.order());

        let bf = hilbert_ideal_bruteforce(&group, &ring, &BruteForceOptions::default()).unwrap();
        assert!(ideal_equal(&ci.generators, &bf.generators).unwrap(), "round {round}");

        for (i, prov) in ci.provenance.iter().enumerate() {
            let j = i + 1;
            let acting = match prov.stage {
                Stage::Base => continue,
                Stage::Block { k } => &structure.chain[k - 1],
                Stage::Trailing => &group,
            };
            assert_eq!(prov.acting_order, acting.order());
            // the orbit product of x_j is a candidate of that degree
            assert!(prov.degree as usize <= orbit_size(acting, i), "round {round}, j = {j}");
            let big_f = ring.parse(&prov.candidate).unwrap();
            let mut with_f = ci.generators[..i].to_vec();
            let mut with_fj = with_f.clone();
            with_f.push(big_f);
            with_fj.push(ci.generators[i].clone());
            assert!(ideal_equal(&with_f, &with_fj).unwrap(), "round {round}, j = {j}");
        }
    }
}

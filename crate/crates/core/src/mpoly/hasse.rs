//! Hasse derivations `Δ_j^{(l)}`: the coefficient of `t^l` after the
//! substitution `x_j -> x_j + t`. Computed termwise: `x_j^d` contributes
//! `binomial(d, l)·x_j^{d-l}` with the binomial reduced mod `p`.

use super::{PolyError, Polynomial};
use crate::ffield::binomial_mod_p;

/// `Δ_var^{(l)}(f)`; `var` is a 0-based variable index.
pub fn hasse_derivative(f: &Polynomial, var: usize, l: u32) -> Result<Polynomial, PolyError> {
    let ring = f.ring();
    if var >= ring.nvars() {
        return Err(PolyError::IndexOutOfRange { index: var, n: ring.nvars() });
    }
    if l == 0 {
        return Ok(f.clone());
    }
    let field = ring.field();
    let p = field.characteristic() as u64;
    let terms = f.terms().iter().filter_map(|(m, c)| {
        let d = m.exponent(var) as u32;
        if d < l {
            return None;
        }
        let b = binomial_mod_p(d as u64, l as u64, p);
        if b == 0 {
            return None;
        }
        Some((m.with_exponent(var, (d - l) as u16), field.mul(*c, field.from_int(b as i64))))
    });
    Ok(ring.from_terms(terms))
}

/// `Δ^{(α)} = Δ_{j+1}^{(α_{j+1})} ∘ ... ∘ Δ_n^{(α_n)}` for a trailing
/// exponent vector `α` over the variables after the prefix of length `j`.
pub fn hasse_composite(f: &Polynomial, j: usize, alpha: &[u16]) -> Result<Polynomial, PolyError> {
    let n = f.ring().nvars();
    if j > n || alpha.len() != n - j {
        return Err(PolyError::IndexOutOfRange { index: j + alpha.len(), n });
    }
    let mut g = f.clone();
    for (offset, &a) in alpha.iter().enumerate().rev() {
        if a > 0 {
            g = hasse_derivative(&g, j + offset, a as u32)?;
        }
        if g.is_zero() {
            break;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{binomial_mod_p, Elem, Field};
    use crate::mpoly::{Monomial, Ring};
    use proptest::prelude::*;

    /// Reference: expand `f(x_var + t)` by repeated multiplication and read
    /// off the coefficient of `t^l`, with `t` an extra trailing variable.
    fn hasse_by_substitution(f: &Polynomial, var: usize, l: u32) -> Polynomial {
        let ring = f.ring();
        let n = ring.nvars();
        let mut names = ring.names().to_vec();
        names.push("t_".into());
        let big = Ring::with_names(ring.field().clone(), names).unwrap();
        let shifted = &big.var(var) + &big.var(n);
        let mut acc = big.zero();
        for (m, c) in f.terms() {
            let mut term = big.constant(*c);
            for v in 0..n {
                let base = if v == var { shifted.clone() } else { big.var(v) };
                term = &term * &base.pow(m.exponent(v) as u32);
            }
            acc = &acc + &term;
        }
        let picked = acc.terms().iter().filter(|(m, _)| m.exponent(n) as u32 == l).map(|(m, c)| {
            (Monomial::from_exponents(&m.exponents()[..n]), *c)
        });
        ring.from_terms(picked)
    }

    fn ring3(p: u64) -> Ring {
        Ring::with_names(Field::prime(p).unwrap(), vec!["x".into(), "y".into(), "z".into()]).unwrap()
    }

    #[test]
    fn characteristic_p_vanishing() {
        let r = ring3(3);
        let x3 = r.parse("x^3").unwrap();
        assert!(hasse_derivative(&x3, 0, 1).unwrap().is_zero());
        assert_eq!(hasse_derivative(&x3, 0, 3).unwrap(), r.one());
        assert_eq!(hasse_derivative(&r.parse("x*y").unwrap(), 1, 1).unwrap(), r.parse("x").unwrap());
        assert!(hasse_derivative(&r.parse("y^3").unwrap(), 1, 2).unwrap().is_zero());
        assert_eq!(
            hasse_derivative(&r.one(), 3, 1),
            Err(PolyError::IndexOutOfRange { index: 3, n: 3 })
        );
    }

    #[test]
    fn composite_examples() {
        let r = ring3(3);
        let f = r.parse("x*y*z").unwrap();
        assert_eq!(hasse_composite(&f, 1, &[0, 0]).unwrap(), f);
        assert_eq!(hasse_composite(&f, 1, &[1, 1]).unwrap(), r.parse("x").unwrap());
        let small = r.parse("x^4").unwrap();
        assert!(hasse_composite(&small, 1, &[2, 0]).unwrap().is_zero());
        assert!(hasse_composite(&f, 1, &[1]).is_err());
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((0u16..5, 0u16..5, 0u16..5, 1u32..p as u32), 0..6).prop_map(move |ts| {
            let r = ring3(p);
            r.from_terms(ts.into_iter().map(|(a, b, c, k)| (Monomial::from_exponents(&[a, b, c]), Elem(k))))
        })
    }

    proptest! {
        #[test]
        fn termwise_matches_substitution(f in arb_poly(3), var in 0usize..3, l in 0u32..6) {
            prop_assert_eq!(hasse_derivative(&f, var, l).unwrap(), hasse_by_substitution(&f, var, l));
        }

        #[test]
        fn termwise_matches_substitution_char2(f in arb_poly(2), var in 0usize..3, l in 0u32..6) {
            prop_assert_eq!(hasse_derivative(&f, var, l).unwrap(), hasse_by_substitution(&f, var, l));
        }

        #[test]
        fn leibniz_rule(f in arb_poly(3), g in arb_poly(3), var in 0usize..3, l in 0u32..6) {
            let lhs = hasse_derivative(&(&f * &g), var, l).unwrap();
            let mut rhs = f.ring().zero();
            for a in 0..=l {
                rhs = &rhs + &(&hasse_derivative(&f, var, a).unwrap() * &hasse_derivative(&g, var, l - a).unwrap());
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn iterativity(f in arb_poly(2), var in 0usize..3, a in 0u32..4, b in 0u32..4) {
            let field = f.ring().field().clone();
            let lhs = hasse_derivative(&hasse_derivative(&f, var, b).unwrap(), var, a).unwrap();
            let c = field.from_int(binomial_mod_p((a + b) as u64, a as u64, 2) as i64);
            let rhs = hasse_derivative(&f, var, a + b).unwrap().scale(c);
            prop_assert_eq!(lhs, rhs);
        }
    }
}

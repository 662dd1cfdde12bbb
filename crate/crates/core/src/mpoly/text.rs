//! `2*x1^3*x2 + x3` style text form. Extension-field coefficients are
//! written in parentheses as polynomials in the generator `a`, e.g.
//! `(a^2+1)*x1`.

use std::fmt;

use super::{Monomial, PolyError, Polynomial, Ring};
use crate::ffield::Elem;

pub(super) fn write(p: &Polynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let field = p.ring().field();
    let names = p.ring().names();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        let coeff = if field.is_prime_field() { field.format(*c) } else { format!("({})", field.format(*c)) };
        let mut factors: Vec<String> = Vec::new();
        if *c != Elem::ONE || m.is_one() {
            factors.push(coeff);
        }
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[v].clone()),
                e => factors.push(format!("{}^{}", names[v], e)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

fn split_top_level(s: &str) -> Result<Vec<(bool, &str)>, PolyError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut neg = false;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(PolyError::Parse(format!("unbalanced parentheses in `{s}`")));
                }
            }
            b'+' | b'-' if depth == 0 => {
                let prev_is_caret = i > 0 && bytes[i - 1] == b'^';
                if !prev_is_caret {
                    if i > start {
                        out.push((neg, &s[start..i]));
                    } else if i > 0 {
                        return Err(PolyError::Parse(format!("empty term in `{s}`")));
                    }
                    neg = b == b'-';
                    start = i + 1;
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(PolyError::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    if start >= s.len() {
        return Err(PolyError::Parse(format!("dangling sign in `{s}`")));
    }
    out.push((neg, &s[start..]));
    Ok(out)
}

pub(super) fn parse(ring: &Ring, s: &str) -> Result<Polynomial, PolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let field = ring.field();
    let n = ring.nvars();
    let mut terms = Vec::new();
    for (neg, term) in split_top_level(&compact)? {
        let mut coeff = Elem::ONE;
        let mut mono = Monomial::one(n);
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(PolyError::Parse(format!("empty factor in `{term}`")));
            }
            if let Some(inner) = factor.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
                let c = field.parse(inner).map_err(|e| PolyError::Parse(e.to_string()))?;
                coeff = field.mul(coeff, c);
            } else if factor.as_bytes()[0].is_ascii_digit() {
                let v: i64 = factor.parse().map_err(|_| PolyError::Parse(format!("bad coefficient `{factor}`")))?;
                coeff = field.mul(coeff, field.from_int(v));
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((nm, e)) => {
                        (nm, e.parse::<u16>().map_err(|_| PolyError::Parse(format!("bad exponent in `{factor}`")))?)
                    }
                    None => (factor, 1),
                };
                let var = ring
                    .names()
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable `{name}`")))?;
                mono = mono.with_exponent(var, mono.exponent(var) + exp);
            }
        }
        if neg {
            coeff = field.neg(coeff);
        }
        terms.push((mono, coeff));
    }
    Ok(ring.from_terms(terms))
}

#[cfg(test)]
mod tests {
    use crate::ffield::Field;
    use crate::mpoly::Ring;

    #[test]
    fn prime_field_round_trip() {
        let r = Ring::new(Field::prime(3).unwrap(), 4).unwrap();
        let f = r.parse("x4^3 - x3^3").unwrap();
        assert_eq!(f.to_string(), "2*x3^3 + x4^3");
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
        assert_eq!(r.parse("2*x1^3*x2 + x3 + 1").unwrap().to_string(), "2*x1^3*x2 + x3 + 1");
        assert_eq!(r.zero().to_string(), "0");
        assert_eq!(r.parse("x1 - x1").unwrap().to_string(), "0");
    }

    #[test]
    fn extension_coefficients() {
        let f8 = Field::new(2, Some(&[1, 1, 0, 1])).unwrap();
        let r = Ring::new(f8, 3).unwrap();
        let f = r.parse("x2 + (a)*x1 + (a^2+1)*x3^2").unwrap();
        let shown = f.to_string();
        assert_eq!(shown, "(a^2+1)*x3^2 + (a)*x1 + x2");
        assert_eq!(r.parse(&shown).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        let r = Ring::new(Field::prime(2).unwrap(), 2).unwrap();
        for bad in ["", "x3", "x1^", "(x1", "x1 +", "x1**x2"] {
            assert!(r.parse(bad).is_err(), "{bad}");
        }
    }
}

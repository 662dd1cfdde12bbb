use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Monomial, PolyError};

/// Monomial orders with `x_1 > x_2 > ... > x_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// Order on trailing exponent vectors: `α > β` iff at the largest index
/// where they differ `α` has the larger entry. On unit vectors this gives
/// `(0,..,0,1) > (0,..,1,0) > ... > (1,0,..,0)`.
pub fn trailing_revlex_compare(alpha: &[u16], beta: &[u16]) -> Result<Ordering, PolyError> {
    if alpha.len() != beta.len() {
        return Err(PolyError::LengthMismatch(alpha.len(), beta.len()));
    }
    for (a, b) in alpha.iter().zip(beta).rev() {
        if a != b {
            return Ok(a.cmp(b));
        }
    }
    Ok(Ordering::Equal)
}

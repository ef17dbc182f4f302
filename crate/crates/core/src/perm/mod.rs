//! Permutations and permutation groups.

mod chain;
mod group;
mod permutation;

pub use chain::StabChain;
pub use group::{ConjClass, PermGroup};
pub use permutation::{parse_cycles, Permutation, MAX_DEGREE};

use crate::error::{ParseError, Result};

/// Parses a `|`-separated tuple of cycle-notation elements of a fixed degree.
pub fn parse_tuple(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split('|') {
        let cycles = parse_cycles(part).map_err(|e| {
            // Re-anchor the column to the full text.
            ParseError::at(text, offset + col_offset(part, &e), e.message)
        })?;
        out.push(Permutation::from_cycles(degree, &cycles)?);
        offset += part.len() + 1;
    }
    Ok(out)
}

fn col_offset(part: &str, e: &ParseError) -> usize {
    part.char_indices()
        .nth(e.col.saturating_sub(1))
        .map_or(part.len(), |(i, _)| i)
}

/// Order of an element via its cycle type.
pub fn element_order(g: &Permutation) -> u64 {
    g.order()
}

pub fn group_order(g: &PermGroup) -> &num_bigint::BigUint {
    g.order()
}

pub fn contains(g: &PermGroup, x: &Permutation) -> Result<bool> {
    g.contains(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn tuples() {
        let t = parse_tuple("(1,2,3,4,5) | (1,2,3)(4,5,6,7)", 7).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].order(), 12);
        let t = parse_tuple("()|(1,2)", 3).unwrap();
        assert!(t[0].is_identity());
        let e = parse_tuple("(1,2)|(1,x)", 3).unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { col: 10, .. })));
        assert!(parse_tuple("(1,9)", 3).is_err());
    }
}

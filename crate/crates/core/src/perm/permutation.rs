use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, ParseError, Result};

/// A permutation of `{0, .., degree-1}`.
///
/// Points are 0-based internally; the text form is 1-based cycle notation.
/// Products act left to right: `(a * b).image(i) == b.image(a.image(i))`,
/// so conjugation `x^g` is `g^-1 * x * g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

/// Largest degree accepted from cycle notation.
pub const MAX_DEGREE: usize = 1 << 24;

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 0-based image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..={degree}"
                    )));
                }
                if touched[pt - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears twice"
                    )));
                }
                touched[pt - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {next} outside 1..={degree}"
                    )));
                }
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    /// Without an explicit degree, the largest point mentioned is used.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let max_pt = cycles.iter().flatten().copied().max().unwrap_or(0);
        let degree = match degree {
            Some(d) if d < max_pt => {
                return Err(Error::InvalidPermutation(format!(
                    "point {max_pt} exceeds degree {d}"
                )))
            }
            Some(d) => d,
            None => max_pt.max(1),
        };
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        // (g^-1 self g)(g(i)) = g(self(i))
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[g.image(i)] = g.images[self.image(i)];
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// Lengths of all cycles, including fixed points, in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles_with_fixed().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.image(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.image(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i)
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Self {
        assert!(degree >= self.degree());
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u32..degree as u32);
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Acts on the points `offset..offset+self.degree()` of a larger set.
    pub fn shifted(&self, offset: usize, degree: usize) -> Self {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for i in 0..self.degree() {
            images[offset + i] = (offset + self.image(i)) as u32;
        }
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

/// Serialized in cycle notation.
impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, pt) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// Parses 1-based cycle notation into a list of cycles. Whitespace is
/// ignored everywhere; `()` yields no cycles.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut cycles = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos] as char).is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(ParseError::at(text, pos, "expected `(`"));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(ParseError::at(text, pos, "expected `(`"));
        }
        pos += 1;
        skip_ws(&mut pos);
        let mut cycle = Vec::new();
        if pos < bytes.len() && bytes[pos] == b')' {
            pos += 1;
        } else {
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(ParseError::at(text, pos, "expected a point number"));
                }
                let pt: usize = text[start..pos]
                    .parse()
                    .map_err(|_| ParseError::at(text, start, "point number out of range"))?;
                if pt == 0 {
                    return Err(ParseError::at(text, start, "points are numbered from 1"));
                }
                if pt > u32::MAX as usize {
                    return Err(ParseError::at(text, start, "point number out of range"));
                }
                cycle.push(pt);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(ParseError::at(text, pos, "expected `,` or `)`")),
                }
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        skip_ws(&mut pos);
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn huge_points_are_rejected() {
        assert!(Permutation::parse("(1,99999999999)", None).is_err());
        assert!(Permutation::from_cycles(MAX_DEGREE + 1, &[]).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(p("(1,2,3)(4,5,6,7)", 7).order(), 12);
        assert_eq!(p("(1,2,3,4,5)", 5).order(), 5);
    }

    #[test]
    fn product_is_left_to_right() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        // 1 -> 2 -> 3
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!(format!("{}", &a * &b), "(1,3,2)");
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = p("(1,2,3)", 4);
        let g = p("(1,4)", 4);
        let direct = g.inverse().compose(&x).compose(&g);
        assert_eq!(x.conjugate_by(&g), direct);
        assert_eq!(format!("{}", x.conjugate_by(&g)), "(2,3,4)");
    }

    #[test]
    fn display_roundtrip() {
        for s in ["()", "(1,2,3)(4,5)", "(2,7)(3,5,6)"] {
            assert_eq!(format!("{}", p(s, 7)), s);
        }
        assert_eq!(format!("{}", p(" ( 3 , 1 ) ", 3)), "(1,3)");
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse("(1,2", None).is_err());
        assert!(Permutation::parse("(1,1)", None).is_err());
        assert!(Permutation::parse("(0,1)", None).is_err());
        assert!(Permutation::parse("(1,5)", Some(3)).is_err());
        assert!(Permutation::parse("", None).is_err());
        let e = parse_cycles("(1,2)x").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![1, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }

    #[test]
    fn pow_and_inverse() {
        let g = p("(1,2,3,4)(5,6)", 6);
        assert!(g.pow(4).is_identity());
        assert_eq!(g.pow(-1), g.inverse());
        assert!((&g * &g.inverse()).is_identity());
        assert_eq!(g.pow(2).cycle_type(), vec![2, 2, 1, 1]);
    }
}

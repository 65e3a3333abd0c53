//! Finitely supported vectors.
//!
//! An `FsVector` models an element of the infinite-dimensional rational space
//! in which only finitely many coordinates are nonzero. Coordinates are
//! indexed from 1 in the API and the docs; serialized arrays are 0-indexed
//! (array position = coordinate index - 1). The same value embeds into every
//! ambient dimension at least as large as its width, which is what makes
//! chains of slices across dimensions comparable.

use std::cmp::Ordering;
use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{denominator_lcm, numerator_gcd, rat_from_str, rat_to_string, Rat};

/// A rational vector with finite support, stored sparsely as strictly
/// increasing `(index, value)` pairs with all values nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FsVector {
    entries: Vec<(usize, Rat)>,
}

impl FsVector {
    pub fn zero() -> Self {
        FsVector { entries: Vec::new() }
    }

    /// Builds from sparse entries; indices must be >= 1 and strictly
    /// increasing, values nonzero.
    pub fn new(entries: Vec<(usize, Rat)>) -> Result<Self> {
        let mut prev = 0usize;
        for (i, v) in &entries {
            if *i == 0 {
                return Err(Error::Dimension("coordinate indices start at 1".into()));
            }
            if *i <= prev {
                return Err(Error::Dimension(format!(
                    "entry indices must be strictly increasing, saw {i} after {prev}"
                )));
            }
            if v.is_zero() {
                return Err(Error::Dimension(format!("explicit zero entry at index {i}")));
            }
            prev = *i;
        }
        Ok(FsVector { entries })
    }

    pub fn from_dense(values: &[Rat]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i + 1, v.clone()))
            .collect();
        FsVector { entries }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        let dense: Vec<Rat> = values.iter().map(|&v| crate::rat::rat_int(v)).collect();
        Self::from_dense(&dense)
    }

    /// Parses a dense array of canonical rational strings.
    pub fn from_strs(values: &[&str]) -> Result<Self> {
        let dense: Vec<Rat> = values.iter().map(|s| rat_from_str(s)).collect::<Result<_>>()?;
        Ok(Self::from_dense(&dense))
    }

    /// Standard basis vector `e_i`.
    pub fn unit(i: usize) -> Self {
        assert!(i >= 1, "coordinate indices start at 1");
        FsVector { entries: vec![(i, crate::rat::rat_one())] }
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest index with a nonzero coordinate; 0 for the zero vector.
    pub fn width(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| *i)
    }

    /// Indices of the nonzero coordinates, increasing.
    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|(i, _)| *i).collect()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Rat {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Sum of absolute values of the coordinates.
    pub fn one_norm(&self) -> Rat {
        let mut acc = Rat::zero();
        for (_, v) in &self.entries {
            acc += v.abs();
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.is_positive())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|(_, v)| crate::rat::is_integer(v))
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rat> {
        assert!(self.width() <= n, "width {} exceeds ambient dimension {n}", self.width());
        let mut dense = vec![Rat::zero(); n];
        for (i, v) in &self.entries {
            dense[i - 1] = v.clone();
        }
        dense
    }

    /// Dense canonical string form, 0-indexed, length `n`.
    pub fn to_strings(&self, n: usize) -> Vec<String> {
        self.to_dense(n).iter().map(rat_to_string).collect()
    }

    pub fn add(&self, other: &FsVector) -> FsVector {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FsVector) -> FsVector {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &FsVector, op: impl Fn(Rat, Rat) -> Rat) -> FsVector {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            let (i, v) = match (x.peek(), y.peek()) {
                (None, None) => break,
                (Some((i, v)), None) => {
                    let r = (*i, op(v.clone(), Rat::zero()));
                    x.next();
                    r
                }
                (None, Some((j, w))) => {
                    let r = (*j, op(Rat::zero(), w.clone()));
                    y.next();
                    r
                }
                (Some((i, v)), Some((j, w))) => match i.cmp(j) {
                    Ordering::Less => {
                        let r = (*i, op(v.clone(), Rat::zero()));
                        x.next();
                        r
                    }
                    Ordering::Greater => {
                        let r = (*j, op(Rat::zero(), w.clone()));
                        y.next();
                        r
                    }
                    Ordering::Equal => {
                        let r = (*i, op(v.clone(), w.clone()));
                        x.next();
                        y.next();
                        r
                    }
                },
            };
            if !v.is_zero() {
                entries.push((i, v));
            }
        }
        FsVector { entries }
    }

    pub fn scale(&self, c: &Rat) -> FsVector {
        if c.is_zero() {
            return FsVector::zero();
        }
        FsVector {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> FsVector {
        FsVector {
            entries: self.entries.iter().map(|(i, v)| (*i, -v.clone())).collect(),
        }
    }

    pub fn dot(&self, other: &FsVector) -> Rat {
        let mut acc = Rat::zero();
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, v)), Some((j, w))) = (x.peek(), y.peek()) {
            match i.cmp(j) {
                Ordering::Less => {
                    x.next();
                }
                Ordering::Greater => {
                    y.next();
                }
                Ordering::Equal => {
                    acc += v.clone() * w.clone();
                    x.next();
                    y.next();
                }
            }
        }
        acc
    }

    /// Scales by the unique positive rational that makes the coordinates
    /// coprime integers. Direction is preserved; the zero vector maps to
    /// itself.
    pub fn primitive(&self) -> FsVector {
        if self.is_zero() {
            return FsVector::zero();
        }
        let lcm = denominator_lcm(self.entries.iter().map(|(_, v)| v));
        let scaled: Vec<Rat> = self
            .entries
            .iter()
            .map(|(_, v)| v * Rat::from_integer(lcm.clone()))
            .collect();
        let gcd = numerator_gcd(scaled.iter());
        let factor = Rat::new(lcm, gcd);
        self.scale(&factor)
    }

    /// Like `primitive`, but also flips sign so the first nonzero coordinate
    /// is positive. Used for basis vectors of linear subspaces, where a ray
    /// direction carries no meaning.
    pub fn primitive_signed(&self) -> FsVector {
        let p = self.primitive();
        match p.entries.first() {
            Some((_, v)) if v.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// All coordinates non-decreasing when read as the dense tuple of a given
    /// ambient dimension. Leading zeros count, so a nonnegative vector is
    /// non-decreasing only if its support is a tail segment.
    pub fn is_non_decreasing(&self, n: usize) -> bool {
        let dense = self.to_dense(n);
        dense.windows(2).all(|w| w[0] <= w[1])
    }
}

// dense lexicographic order, independent of ambient dimension (trailing
// zeros compare equal); this is the canonical order for rays and reports
impl Ord for FsVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut x, mut y) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let zero = Rat::zero();
        loop {
            match (x.peek(), y.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, v)), None) => {
                    if *v != zero {
                        return v.cmp(&zero);
                    }
                    x.next();
                }
                (None, Some((_, w))) => {
                    if *w != zero {
                        return zero.cmp(w);
                    }
                    y.next();
                }
                (Some((i, v)), Some((j, w))) => match i.cmp(j) {
                    // smaller index means the other vector has 0 there
                    Ordering::Less => return v.cmp(&zero),
                    Ordering::Greater => return zero.cmp(w),
                    Ordering::Equal => {
                        match v.cmp(w) {
                            Ordering::Equal => {
                                x.next();
                                y.next();
                            }
                            ord => return ord,
                        }
                    }
                },
            }
        }
    }
}

impl PartialOrd for FsVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FsVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.width();
        write!(f, "({})", self.to_strings(n.max(1)).join(", "))
    }
}

impl fmt::Debug for FsVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FsVector{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_frac, rat_int};

    #[test]
    fn width_support_norm() {
        let v = FsVector::from_ints(&[0, 3, 0, -1]);
        assert_eq!(v.width(), 4);
        assert_eq!(v.support(), vec![2, 4]);
        assert_eq!(v.support_size(), 2);
        assert_eq!(v.one_norm(), rat_int(4));
        assert!(!v.is_nonnegative());
        assert!(v.is_integral());
    }

    #[test]
    fn zero_vector() {
        let z = FsVector::zero();
        assert_eq!(z.width(), 0);
        assert_eq!(z.one_norm(), rat_int(0));
        assert!(z.is_nonnegative());
        assert_eq!(z, FsVector::from_ints(&[0, 0]));
    }

    #[test]
    fn embedding_dimension_invisible() {
        // same vector read in two ambient dimensions
        let a = FsVector::from_ints(&[1, 2]);
        let b = FsVector::from_dense(&a.to_dense(5));
        assert_eq!(a, b);
        assert_eq!(a.cmp(&b), Ordering::Equal);
    }

    #[test]
    fn sparse_arithmetic() {
        let a = FsVector::from_ints(&[1, 0, 2]);
        let b = FsVector::from_ints(&[0, 1, -2]);
        assert_eq!(a.add(&b), FsVector::from_ints(&[1, 1]));
        assert_eq!(a.sub(&a), FsVector::zero());
        assert_eq!(a.dot(&b), rat_int(-4));
        assert_eq!(a.scale(&rat_frac(1, 2)), FsVector::from_strs(&["1/2", "0", "1"]).unwrap());
    }

    #[test]
    fn new_validates() {
        assert!(FsVector::new(vec![(0, rat_int(1))]).is_err());
        assert!(FsVector::new(vec![(2, rat_int(1)), (2, rat_int(1))]).is_err());
        assert!(FsVector::new(vec![(3, rat_int(1)), (2, rat_int(1))]).is_err());
        assert!(FsVector::new(vec![(1, rat_int(0))]).is_err());
        assert!(FsVector::new(vec![(1, rat_int(5)), (4, rat_int(-1))]).is_ok());
    }

    #[test]
    fn primitive_normalization() {
        let v = FsVector::from_strs(&["1/2", "0", "-3/4"]).unwrap();
        assert_eq!(v.primitive(), FsVector::from_ints(&[2, 0, -3]));
        assert_eq!(v.primitive_signed(), FsVector::from_ints(&[-2, 0, 3]).neg());
        let w = FsVector::from_ints(&[4, -6]);
        assert_eq!(w.primitive(), FsVector::from_ints(&[2, -3]));
        assert_eq!(FsVector::zero().primitive(), FsVector::zero());
    }

    #[test]
    fn dense_lex_order() {
        // (0,1) < (1,0) in dense order even though the sparse pair lists
        // would compare the other way
        let a = FsVector::from_ints(&[0, 1]);
        let b = FsVector::from_ints(&[1, 0]);
        assert!(a < b);
        // negative coordinate at a later index sorts below the shorter vector
        let c = FsVector::from_ints(&[1]);
        let d = FsVector::from_ints(&[1, -1]);
        assert!(d < c);
    }

    #[test]
    fn non_decreasing_reads_leading_zeros() {
        let v = FsVector::from_ints(&[0, 1, 2]);
        assert!(v.is_non_decreasing(3));
        assert!(!v.is_non_decreasing(4)); // trailing zero after 2
        assert!(FsVector::from_ints(&[-1, 2]).is_non_decreasing(2));
        assert!(!FsVector::from_ints(&[1, 2]).is_non_decreasing(3));
        assert!(FsVector::zero().is_non_decreasing(3));
    }
}

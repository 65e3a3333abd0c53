//! Finite permutations acting on coordinates.
//!
//! A `Permutation` of degree `n` permutes coordinate indices `1..=n`. The
//! action on vectors moves the value at index `i` to index `sigma(i)`; in
//! coordinates, `sigma(u)_j = u_{sigma^{-1}(j)}`, so `sigma(e_i) =
//! e_{sigma(i)}`. Degree-`n` permutations embed into any larger degree by
//! fixing the new points, matching the embedding of finitely supported
//! vectors.

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::vector::FsVector;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    // images[i-1] = sigma(i), a bijection on 1..=n
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Builds from the image list `[sigma(1), ..., sigma(n)]`, checking
    /// bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img == 0 || img > n {
                return Err(Error::BadPermutation {
                    degree: n,
                    reason: format!("image {img} out of range"),
                });
            }
            if seen[img - 1] {
                return Err(Error::BadPermutation {
                    degree: n,
                    reason: format!("image {img} repeated"),
                });
            }
            seen[img - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n);
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.degree(), "point {i} outside degree {}", self.degree());
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Composition acting as functions: `(self.compose(other))(i) =
    /// self(other(i))`. The degrees may differ; the result has the larger
    /// degree, with the smaller permutation extended by fixed points.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.degree().max(other.degree());
        let ext = |p: &Permutation, i: usize| if i <= p.degree() { p.image(i) } else { i };
        let images = (1..=n).map(|i| ext(self, ext(other, i))).collect();
        Permutation { images }
    }

    /// Applies the coordinate action. The vector's width must not exceed the
    /// degree.
    pub fn apply(&self, v: &FsVector) -> FsVector {
        assert!(
            v.width() <= self.degree(),
            "vector of width {} under a degree-{} permutation",
            v.width(),
            self.degree()
        );
        let mut entries: Vec<(usize, Rat)> = v
            .entries()
            .iter()
            .map(|(i, val)| (self.image(*i), val.clone()))
            .collect();
        entries.sort_by_key(|(i, _)| *i);
        FsVector::new(entries).expect("bijection preserves entry validity")
    }

    /// The permutation that stably sorts `values` into non-decreasing order:
    /// applying the result to the dense vector yields the sorted vector.
    pub fn sorting(values: &[Rat]) -> Permutation {
        let mut order: Vec<usize> = (1..=values.len()).collect();
        order.sort_by(|&a, &b| values[a - 1].cmp(&values[b - 1]));
        // order[j-1] = index whose value lands at position j, i.e. sigma^{-1}
        Permutation { images: order }.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn action_moves_values_to_images() {
        // sigma = (1 2 3) as a cycle: 1->2, 2->3, 3->1
        let s = Permutation::from_images(vec![2, 3, 1]).unwrap();
        let u = FsVector::from_ints(&[10, 20, 30]);
        assert_eq!(s.apply(&u), FsVector::from_ints(&[30, 10, 20]));
        assert_eq!(s.apply(&FsVector::unit(1)), FsVector::unit(2));
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_ok());
    }

    #[test]
    fn inverse_and_compose() {
        let s = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
        let t = Permutation::transposition(3, 1, 2);
        // (s . t)(1) = s(t(1)) = s(2) = 3
        assert_eq!(s.compose(&t).image(1), 3);
    }

    #[test]
    fn compose_mixed_degrees() {
        let s = Permutation::transposition(2, 1, 2);
        let t = Permutation::from_images(vec![3, 1, 2]).unwrap();
        let c = s.compose(&t);
        assert_eq!(c.degree(), 3);
        assert_eq!(c.image(2), 2); // t(2)=1, s(1)=2
        assert_eq!(c.image(1), 3); // t(1)=3, s fixes 3
    }

    #[test]
    fn preserves_norm_and_support_size() {
        let s = Permutation::from_images(vec![4, 3, 2, 1]).unwrap();
        let u = FsVector::from_ints(&[1, 0, -2, 0]);
        let v = s.apply(&u);
        assert_eq!(u.one_norm(), v.one_norm());
        assert_eq!(u.support_size(), v.support_size());
    }

    #[test]
    fn sorting_permutation_sorts() {
        let vals: Vec<Rat> = [3, 1, 2, 1].iter().map(|&x| rat_int(x)).collect();
        let s = Permutation::sorting(&vals);
        let sorted = s.apply(&FsVector::from_ints(&[3, 1, 2, 1]));
        assert_eq!(sorted, FsVector::from_ints(&[1, 1, 2, 3]));
    }
}

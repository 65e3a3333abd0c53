//! Orbits of vectors under the coordinate action of `Sym(n)`.
//!
//! The orbit of a vector under all of `Sym(n)` is the set of distinct
//! arrangements of its dense length-`n` value tuple, so it is enumerated as
//! multiset permutations rather than by walking all `n!` group elements. Its
//! size is the multinomial `n! / prod_v mult(v)!` over value multiplicities
//! (zeros included), which is computed first and checked against a cap before
//! any enumeration happens.

use num::bigint::BigUint;
use num::One;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rat::Rat;
use crate::vector::FsVector;

/// Exact orbit cardinality of `u` under `Sym(n)`.
pub fn orbit_size(u: &FsVector, n: usize) -> Result<BigUint> {
    if u.width() > n {
        return Err(Error::Dimension(format!(
            "vector of width {} has no Sym({n}) orbit",
            u.width()
        )));
    }
    let dense = u.to_dense(n);
    let mut sorted = dense;
    sorted.sort();
    let mut size = BigUint::one();
    // multinomial computed incrementally: after placing k values the factor
    // is k! / prod(mult!), maintained as size *= k / run-position
    let mut run = 0usize;
    for k in 1..=n {
        if k > 1 && sorted[k - 1] == sorted[k - 2] {
            run += 1;
        } else {
            run = 1;
        }
        size = size * BigUint::from(k) / BigUint::from(run);
    }
    Ok(size)
}

/// All distinct arrangements of `u` within dimension `n`, in increasing dense
/// lexicographic order. Fails without enumerating if the orbit exceeds `cap`.
pub fn orbit(u: &FsVector, n: usize, cap: usize) -> Result<Vec<FsVector>> {
    let size = orbit_size(u, n)?;
    if size > BigUint::from(cap) {
        return Err(Error::OrbitCap { required: clamp_u128(&size), cap });
    }
    let mut dense = u.to_dense(n);
    dense.sort();
    let mut out = Vec::new();
    loop {
        out.push(FsVector::from_dense(&dense));
        if !next_permutation(&mut dense) {
            break;
        }
    }
    debug_assert_eq!(BigUint::from(out.len()), size);
    Ok(out)
}

/// Sorted union of the `Sym(n)` orbits of several vectors, deduplicated.
/// The cap bounds the total size of the union's enumeration.
pub fn orbit_closure(vs: &[FsVector], n: usize, cap: usize) -> Result<Vec<FsVector>> {
    let mut total = BigUint::default();
    for v in vs {
        total += orbit_size(v, n)?;
        if total > BigUint::from(cap) {
            return Err(Error::OrbitCap { required: clamp_u128(&total), cap });
        }
    }
    let mut set = std::collections::BTreeSet::new();
    for v in vs {
        set.extend(orbit(v, n, cap)?);
    }
    Ok(set.into_iter().collect())
}

/// The canonical representative of the orbit: coordinates arranged
/// non-decreasingly in dimension `n`.
pub fn canonical_rep(u: &FsVector, n: usize) -> Result<FsVector> {
    if u.width() > n {
        return Err(Error::Dimension(format!(
            "vector of width {} cannot be canonicalized in dimension {n}",
            u.width()
        )));
    }
    let mut dense = u.to_dense(n);
    dense.sort();
    Ok(FsVector::from_dense(&dense))
}

/// Canonical representative together with a witnessing permutation `sigma`
/// such that `sigma(u)` is the representative.
pub fn canonical_rep_with_perm(u: &FsVector, n: usize) -> Result<(FsVector, Permutation)> {
    let rep = canonical_rep(u, n)?;
    let sigma = Permutation::sorting(&u.to_dense(n));
    debug_assert_eq!(sigma.apply(u), rep);
    Ok((rep, sigma))
}

/// A permutation sending `a` to `b` inside `Sym(n)`, when the two are in the
/// same orbit; positions of equal values are matched in increasing order, so
/// the choice is deterministic.
pub fn perm_mapping(a: &FsVector, b: &FsVector, n: usize) -> Option<Permutation> {
    if a.width() > n || b.width() > n {
        return None;
    }
    let da = a.to_dense(n);
    let db = b.to_dense(n);
    let mut by_value: std::collections::BTreeMap<&Rat, Vec<usize>> = Default::default();
    for (j, w) in db.iter().enumerate() {
        by_value.entry(w).or_default().push(j + 1);
    }
    // pop targets front-to-front per value class
    let mut cursors: std::collections::BTreeMap<&Rat, usize> = Default::default();
    let mut images = vec![0usize; n];
    for (i, v) in da.iter().enumerate() {
        let slots = by_value.get(v)?;
        let cursor = cursors.entry(v).or_insert(0);
        if *cursor >= slots.len() {
            return None; // multiplicity mismatch
        }
        images[i] = slots[*cursor];
        *cursor += 1;
    }
    Permutation::from_images(images).ok()
}

fn clamp_u128(v: &BigUint) -> u128 {
    u128::try_from(v).unwrap_or(u128::MAX)
}

// classic in-place next lexicographic arrangement; false once at the maximum
fn next_permutation(vals: &mut [Rat]) -> bool {
    if vals.len() < 2 {
        return false;
    }
    let mut k = vals.len() - 1;
    while k > 0 && vals[k - 1] >= vals[k] {
        k -= 1;
    }
    if k == 0 {
        return false;
    }
    let pivot = k - 1;
    let mut l = vals.len() - 1;
    while vals[l] <= vals[pivot] {
        l -= 1;
    }
    vals.swap(pivot, l);
    vals[k..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(ints: &[i64]) -> FsVector {
        FsVector::from_ints(ints)
    }

    #[test]
    fn orbit_of_unit_vector() {
        let got = orbit(&FsVector::unit(1), 3, 100).unwrap();
        assert_eq!(got, vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }

    #[test]
    fn orbit_sizes_are_multinomials() {
        // (1,1) in dim 3: 3!/2! = 3
        assert_eq!(orbit_size(&v(&[1, 1]), 3).unwrap(), BigUint::from(3u32));
        // (1,2) in dim 4: 4!/2! = 12
        assert_eq!(orbit_size(&v(&[1, 2]), 4).unwrap(), BigUint::from(12u32));
        // zero vector orbit is a single point
        assert_eq!(orbit_size(&FsVector::zero(), 5).unwrap(), BigUint::one());
    }

    #[test]
    fn orbit_matches_full_group_enumeration() {
        // oracle: apply all n! permutations and deduplicate
        fn oracle(u: &FsVector, n: usize) -> Vec<FsVector> {
            let mut images: Vec<usize> = (1..=n).collect();
            let mut set = std::collections::BTreeSet::new();
            loop {
                let p = Permutation::from_images(images.clone()).unwrap();
                set.insert(p.apply(u));
                // next_permutation over usizes
                let mut k = images.len() - 1;
                while k > 0 && images[k - 1] >= images[k] {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                let mut l = images.len() - 1;
                while images[l] <= images[k - 1] {
                    l -= 1;
                }
                images.swap(k - 1, l);
                images[k..].reverse();
            }
            set.into_iter().collect()
        }
        for (u, n) in [
            (v(&[1, 1]), 3),
            (v(&[1, 2]), 4),
            (v(&[0, -1, 2]), 4),
            (v(&[1, 2, 2]), 5),
        ] {
            assert_eq!(orbit(&u, n, 10_000).unwrap(), oracle(&u, n), "orbit of {u} in dim {n}");
        }
    }

    #[test]
    fn cap_is_enforced_before_enumeration() {
        let err = orbit(&v(&[1, 2, 3]), 9, 10).unwrap_err();
        match err {
            Error::OrbitCap { required, cap } => {
                assert_eq!(required, 504); // 9*8*7
                assert_eq!(cap, 10);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn canonical_rep_is_sorted_and_orbit_constant() {
        let u = v(&[2, 0, 1]);
        let rep = canonical_rep(&u, 3).unwrap();
        assert_eq!(rep, v(&[0, 1, 2]));
        for w in orbit(&u, 3, 100).unwrap() {
            assert_eq!(canonical_rep(&w, 3).unwrap(), rep);
        }
        // canonicalization is idempotent
        assert_eq!(canonical_rep(&rep, 3).unwrap(), rep);
    }

    #[test]
    fn canonical_rep_with_witness() {
        let u = v(&[3, -1, 2]);
        let (rep, sigma) = canonical_rep_with_perm(&u, 3).unwrap();
        assert_eq!(rep, v(&[-1, 2, 3]));
        assert_eq!(sigma.apply(&u), rep);
    }

    #[test]
    fn perm_mapping_connects_orbit_members() {
        let a = v(&[1, 2, 0, 2]);
        for b in orbit(&a, 4, 100).unwrap() {
            let p = perm_mapping(&a, &b, 4).expect("same orbit");
            assert_eq!(p.apply(&a), b);
        }
        assert!(perm_mapping(&a, &v(&[1, 2, 2, 2]), 4).is_none());
    }
}

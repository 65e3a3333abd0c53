//! Shared helpers for the integration suites: seeded generators of random
//! vectors, generator sets, and conic combinations.

#![allow(dead_code)]

use equicone::chain::GeneratorSet;
use equicone::rat::{rat_frac, rat_int, Rat};
use equicone::FsVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense integer vector with coordinates in `lo..=hi`.
pub fn rand_int_vec(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> FsVector {
    let values: Vec<i64> = (0..dim).map(|_| rng.random_range(lo..=hi)).collect();
    FsVector::from_ints(&values)
}

/// Nonzero dense integer vector with coordinates in `lo..=hi`.
pub fn rand_nonzero_vec(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> FsVector {
    loop {
        let v = rand_int_vec(rng, dim, lo, hi);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Generator set of 1..=max_gens nonzero nonnegative vectors, width at most
/// max_width, coordinates at most max_coord. Internal zeros are allowed.
pub fn rand_nonneg_set(
    rng: &mut ChaCha8Rng,
    max_gens: usize,
    max_width: usize,
    max_coord: i64,
) -> GeneratorSet {
    let count = rng.random_range(1..=max_gens);
    let gens = (0..count)
        .map(|_| {
            let width = rng.random_range(1..=max_width);
            rand_nonzero_vec(rng, width, 0, max_coord)
        })
        .collect();
    GeneratorSet::new(gens)
}

/// Generator set whose members have no internal zeros: every generator's
/// support is an initial segment of the coordinates.
pub fn rand_packed_set(
    rng: &mut ChaCha8Rng,
    max_gens: usize,
    max_width: usize,
    max_coord: i64,
) -> GeneratorSet {
    let count = rng.random_range(1..=max_gens);
    let gens = (0..count)
        .map(|_| {
            let width = rng.random_range(1..=max_width);
            let values: Vec<i64> =
                (0..width).map(|_| rng.random_range(1..=max_coord)).collect();
            FsVector::from_ints(&values)
        })
        .collect();
    GeneratorSet::new(gens)
}

/// Random conic combination of the given vectors with small nonnegative
/// rational coefficients (denominator 2).
pub fn rand_conic_combo(rng: &mut ChaCha8Rng, vectors: &[FsVector]) -> FsVector {
    let mut sum = FsVector::zero();
    for v in vectors {
        let c = rat_frac(rng.random_range(0..=6), 2);
        sum = sum.add(&v.scale(&c));
    }
    sum
}

/// Random nonnegative integer combination of the given vectors.
pub fn rand_integer_combo(rng: &mut ChaCha8Rng, vectors: &[FsVector]) -> FsVector {
    let mut sum = FsVector::zero();
    for v in vectors {
        let c = rat_int(rng.random_range(0..=3));
        sum = sum.add(&v.scale(&c));
    }
    sum
}

/// Exact recombination check: the terms sum to the target.
pub fn recombines(target: &FsVector, terms: &[(FsVector, Rat)]) -> bool {
    let sum = terms
        .iter()
        .fold(FsVector::zero(), |acc, (v, c)| acc.add(&v.scale(c)));
    sum == *target
}

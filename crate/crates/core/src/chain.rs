//! Chains of finite-dimensional slices of an invariant cone.
//!
//! A finite nonnegative generator set `A` spans an invariant cone whose
//! dimension-`n` slice is the conic hull of the `Sym(n)` orbits of the
//! generators that fit in `n` coordinates. From the stability index on, the
//! chain of slices is saturated: the width-`m` points of the slice at
//! `n >= m` form the slice at `m`. Below the index saturation can fail when
//! a generator has zeros inside its support span (its packed form belongs to
//! a narrow slice of the invariant cone but not to the localized one).
//!
//! The chain stabilizes once every slice is recombined from the orbit of a
//! single earlier slice. The stability index is the least dimension where
//! that happens; [`stability_index`] finds it and returns recombination
//! witnesses (success) and violated constraints (failure at earlier
//! candidates) so the verdict can be audited without re-running the search.

use num::Zero;

use crate::cone::{conic_witness, LocalCone, Membership};
use crate::error::{Error, Result, ViolatedConstraint};
use crate::orbit::orbit_closure;
use crate::rat::Rat;
use crate::vector::FsVector;

/// A finite set of finitely supported generators, kept in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<FsVector>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<FsVector>) -> Self {
        GeneratorSet { gens }
    }

    pub fn generators(&self) -> &[FsVector] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_width(&self) -> usize {
        self.gens.iter().map(|g| g.width()).max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gens.iter().all(|g| g.is_nonnegative())
    }

    pub fn is_integral(&self) -> bool {
        self.gens.iter().all(|g| g.is_integral())
    }

    /// Generators of width at most `n`.
    pub fn within(&self, n: usize) -> Vec<FsVector> {
        self.gens.iter().filter(|g| g.width() <= n).cloned().collect()
    }

    pub fn require_nonnegative(&self, operation: &str) -> Result<()> {
        if let Some(g) = self.gens.iter().find(|g| !g.is_nonnegative()) {
            return Err(Error::Rejected(format!(
                "{operation} requires nonnegative generators, but {g} has a negative \
                 coordinate; mixed-sign sets break both the localization formula and \
                 the support-size bound on decomposition length"
            )));
        }
        Ok(())
    }

    pub fn require_integral(&self, operation: &str) -> Result<()> {
        if let Some(g) = self.gens.iter().find(|g| !g.is_integral()) {
            return Err(Error::Rejected(format!(
                "{operation} requires integer generator coordinates, but {g} is fractional; \
                 scaling is not neutral for integer points, and for irrational slopes the \
                 integer-point monoid of the cone over (1, a) admits no finite generating \
                 set at all, so monoid computations insist on integral data (rationals are \
                 the only coordinates this library can even represent)"
            )));
        }
        Ok(())
    }
}

/// The dimension-`n` slice: the conic hull of the `Sym(n)` orbits of the
/// generators of width at most `n`. Requires nonnegative generators. From
/// the stability index on this equals the saturated slice of the invariant
/// cone; below it the two can differ when a generator has zeros inside its
/// support span.
pub fn localize(a: &GeneratorSet, n: usize, orbit_cap: usize) -> Result<LocalCone> {
    a.require_nonnegative("localize")?;
    let gens = orbit_closure(&a.within(n), n, orbit_cap)?;
    LocalCone::from_generators(&gens, n)
}

/// Exact recombination of one generator over orbit elements of an earlier
/// slice's rays.
#[derive(Clone, Debug)]
pub struct RecombinationWitness {
    pub generator: FsVector,
    /// The dimension in which the recombination takes place (the
    /// generator's width).
    pub ambient: usize,
    /// `(orbit element, positive coefficient)` terms summing to `generator`.
    pub terms: Vec<(FsVector, Rat)>,
}

/// Why a candidate index below the stability index was rejected.
#[derive(Clone, Debug)]
pub struct CandidateFailure {
    pub candidate: usize,
    /// A generator that the candidate slice's orbit fails to reach.
    pub generator: FsVector,
    pub violated: ViolatedConstraint,
}

/// The computed stability index together with its audit trail.
#[derive(Clone, Debug)]
pub struct StabilizationCertificate {
    pub index: usize,
    /// One recombination per generator wider than the index.
    pub witnesses: Vec<RecombinationWitness>,
    /// One refutation per rejected candidate index.
    pub failures: Vec<CandidateFailure>,
}

/// Least `r` such that every slice at `n >= m >= r` is the conic hull of the
/// `Sym(n)` orbit of the slice at `m`.
///
/// A candidate `m` is accepted iff every generator wider than `m` lies in
/// the conic hull of the `Sym(width)` orbit of the slice at `m`; acceptance
/// is monotone in `m` and the maximal generator width is always accepted, so
/// the scan terminates at the exact index.
pub fn stability_index(a: &GeneratorSet, orbit_cap: usize) -> Result<StabilizationCertificate> {
    a.require_nonnegative("stability_index")?;
    if a.is_empty() {
        return Err(Error::Rejected(
            "stability_index requires a nonempty generator set".into(),
        ));
    }
    let w = a.max_width();
    let mut failures = Vec::new();
    for m in 1..=w.max(1) {
        let wide: Vec<&FsVector> = a.generators().iter().filter(|g| g.width() > m).collect();
        if wide.is_empty() {
            return Ok(StabilizationCertificate { index: m, witnesses: Vec::new(), failures });
        }
        let slice = localize(a, m, orbit_cap)?;
        let mut witnesses = Vec::new();
        let mut rejected = false;
        for g in wide {
            let ambient = g.width();
            let orbit_gens = orbit_closure(slice.rays(), ambient, orbit_cap)?;
            let reach = LocalCone::from_generators(&orbit_gens, ambient)?;
            match reach.membership(g)? {
                Membership::Outside(violated) => {
                    failures.push(CandidateFailure {
                        candidate: m,
                        generator: (*g).clone(),
                        violated,
                    });
                    rejected = true;
                    break;
                }
                Membership::Inside(_) => {
                    // witness over the orbit elements themselves, not the
                    // reduced rays, so the recombination is explicit
                    let lambda = conic_witness(&orbit_gens, g, ambient).ok_or_else(|| {
                        Error::Internal("membership accepted but recombination failed".into())
                    })?;
                    let terms = orbit_gens
                        .iter()
                        .zip(&lambda)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(v, c)| (v.clone(), c.clone()))
                        .collect();
                    witnesses.push(RecombinationWitness {
                        generator: (*g).clone(),
                        ambient,
                        terms,
                    });
                }
            }
        }
        if !rejected {
            return Ok(StabilizationCertificate { index: m, witnesses, failures });
        }
    }
    Err(Error::Internal(
        "the maximal width candidate cannot be rejected".into(),
    ))
}

/// Result of the coordinate-merge test.
#[derive(Clone, Debug)]
pub enum MergeOutcome {
    /// Coordinates `pair` of `u` were added together and the arranged
    /// length-`(n-1)` vector `merged` lies in the previous slice.
    Merged { pair: (usize, usize), merged: FsVector },
    /// No coordinate pair merges into the previous slice.
    NoPair { tried: Vec<(usize, usize)> },
}

/// Tries all coordinate pairs `{i, j}` of `u` in lexicographic order,
/// replacing the two coordinates by their sum, and tests the canonically
/// arranged result against `c_prev` (the slice one dimension down, assumed
/// invariant under coordinate permutations, which makes the arrangement
/// irrelevant). Returns the first merging pair.
pub fn merge_test(u: &FsVector, c_prev: &LocalCone) -> Result<MergeOutcome> {
    let n = c_prev.dim() + 1;
    if u.width() > n {
        return Err(Error::Dimension(format!(
            "merge test needs width(u) <= {n}, got {}",
            u.width()
        )));
    }
    let dense = u.to_dense(n);
    let mut tried = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let mut values: Vec<Rat> = Vec::with_capacity(n - 1);
            for (k, v) in dense.iter().enumerate() {
                if k + 1 != i && k + 1 != j {
                    values.push(v.clone());
                }
            }
            values.push(dense[i - 1].clone() + dense[j - 1].clone());
            values.sort();
            let merged = FsVector::from_dense(&values);
            if c_prev.contains(&merged) {
                return Ok(MergeOutcome::Merged { pair: (i, j), merged });
            }
            tried.push((i, j));
        }
    }
    Ok(MergeOutcome::NoPair { tried })
}

/// Saturation of the chain between two dimensions: the width-`m` points of
/// the slice at `n` form exactly the slice at `m`. Checked by restricting
/// the larger slice with the equations `x_j = 0` for `j > m` and comparing
/// extreme rays both ways.
pub fn saturation_holds(a: &GeneratorSet, m: usize, n: usize, orbit_cap: usize) -> Result<bool> {
    assert!(m <= n, "saturation compares a smaller slice against a larger one");
    let c_m = localize(a, m, orbit_cap)?;
    let c_n = localize(a, n, orbit_cap)?;
    // containment of the smaller slice is the embedding direction
    if !c_m.rays().iter().all(|r| c_n.contains(r)) {
        return Ok(false);
    }
    let mut walls = Vec::new();
    for j in (m + 1)..=n {
        walls.push(FsVector::unit(j));
        walls.push(FsVector::unit(j).neg());
    }
    let restricted = c_n.intersect_halfspaces(&walls)?;
    Ok(restricted
        .rays()
        .iter()
        .all(|r| r.width() <= m && c_m.contains(r))
        && restricted.lineality().is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(ints: &[i64]) -> FsVector {
        FsVector::from_ints(ints)
    }

    fn set(gens: &[&[i64]]) -> GeneratorSet {
        GeneratorSet::new(gens.iter().map(|g| fs(g)).collect())
    }

    const CAP: usize = 100_000;

    #[test]
    fn localize_is_the_orbit_hull() {
        let a = set(&[&[1, 2]]);
        let c3 = localize(&a, 3, CAP).unwrap();
        // all six arrangements of (1,2,0) are extreme
        assert_eq!(c3.rays().len(), 6);
        assert!(c3.contains(&fs(&[1, 2, 0])));
        assert!(c3.contains(&fs(&[0, 2, 1])));
        assert!(!c3.contains(&fs(&[1, 0, 0])));
    }

    #[test]
    fn localize_below_width_is_zero_cone() {
        let a = set(&[&[1, 2]]);
        assert!(localize(&a, 1, CAP).unwrap().is_zero_cone());
    }

    #[test]
    fn localize_rejects_mixed_sign() {
        let a = set(&[&[1, -1]]);
        assert!(matches!(localize(&a, 2, CAP), Err(Error::Rejected(_))));
    }

    #[test]
    fn stability_indices_of_single_generators() {
        assert_eq!(stability_index(&set(&[&[1, 2]]), CAP).unwrap().index, 2);
        assert_eq!(stability_index(&set(&[&[1]]), CAP).unwrap().index, 1);
        assert_eq!(stability_index(&set(&[&[1, 1, 1]]), CAP).unwrap().index, 3);
    }

    #[test]
    fn failures_carry_violated_constraints() {
        let cert = stability_index(&set(&[&[1, 1, 1]]), CAP).unwrap();
        assert_eq!(cert.index, 3);
        assert_eq!(cert.failures.len(), 2); // candidates 1 and 2
        for f in &cert.failures {
            assert_eq!(f.generator, fs(&[1, 1, 1]));
            // the rejected slices are zero cones, so an equation is violated
            assert!(!f.violated.normal.dot(&f.generator).is_zero());
        }
    }

    #[test]
    fn witnesses_recombine_exactly() {
        // e_1 already stabilizes the chain; (1,2) must recombine over the
        // orbit of the slice at 1
        let cert = stability_index(&set(&[&[1], &[1, 2]]), CAP).unwrap();
        assert_eq!(cert.index, 1);
        assert_eq!(cert.witnesses.len(), 1);
        let w = &cert.witnesses[0];
        let mut acc = FsVector::zero();
        for (v, c) in &w.terms {
            acc = acc.add(&v.scale(c));
        }
        assert_eq!(acc, w.generator);
    }

    #[test]
    fn merge_examples() {
        let c2 = localize(&set(&[&[1, 2]]), 2, CAP).unwrap();
        match merge_test(&fs(&[1, 2, 0]), &c2).unwrap() {
            MergeOutcome::Merged { pair, merged } => {
                assert_eq!(pair, (1, 3)); // {1,2} merges to (0,3), outside
                assert_eq!(merged, fs(&[1, 2]));
            }
            MergeOutcome::NoPair { .. } => panic!("a zero merge must succeed"),
        }
        match merge_test(&fs(&[3, 2, 3]), &c2).unwrap() {
            MergeOutcome::Merged { pair, merged } => {
                assert_eq!(pair, (1, 2));
                assert_eq!(merged, fs(&[3, 5]));
            }
            MergeOutcome::NoPair { .. } => panic!("(3,2,3) merges at {{1,2}}"),
        }
    }

    #[test]
    fn merge_against_zero_cone_fails() {
        let c1 = LocalCone::zero(1);
        match merge_test(&fs(&[1, 0]), &c1).unwrap() {
            MergeOutcome::NoPair { tried } => assert_eq!(tried, vec![(1, 2)]),
            MergeOutcome::Merged { .. } => panic!("nothing merges into the zero cone"),
        }
    }

    #[test]
    fn saturation_between_slices() {
        let a = set(&[&[1, 2]]);
        assert!(saturation_holds(&a, 2, 4, CAP).unwrap());
        assert!(saturation_holds(&a, 1, 3, CAP).unwrap());
        assert!(saturation_holds(&a, 3, 3, CAP).unwrap());
    }
}

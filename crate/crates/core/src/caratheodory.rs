//! Decomposing a vector into few orbit images of generators.
//!
//! For a nonnegative generator family the number of terms never needs to
//! exceed the support size of the target: coordinates cannot cancel, so every
//! term of a decomposition is supported inside the target's support, and the
//! whole problem compresses onto those coordinates where a basic feasible
//! solution has at most one positive coefficient per coordinate. `decompose`
//! carries that out exactly and returns the witness.
//!
//! With signed generators the bound is false (a unit vector may already need
//! two terms), so the minimum is found by search instead: `min_terms` scans
//! term counts upward over orbit subsets inside a fixed ambient dimension,
//! with an LP-call budget as the brake.

use std::collections::BTreeMap;

use num::Zero;

use crate::chain::GeneratorSet;
use crate::cone::{LocalCone, Membership};
use crate::error::{Error, Result};
use crate::lp::conic_combination;
use crate::orbit::{orbit, perm_mapping};
use crate::perm::Permutation;
use crate::rat::Rat;
use crate::vector::FsVector;

/// One term of a conic decomposition: `coefficient * image` where `image` is
/// `permutation` applied to `generator`, the `base_index`-th input generator.
#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub coefficient: Rat,
    pub base_index: usize,
    pub generator: FsVector,
    pub image: FsVector,
    pub permutation: Permutation,
}

/// An exact decomposition of `target` into orbit images of generators, with
/// at most `support_size` terms.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub target: FsVector,
    /// Degree of the permutations used; at least the widths of the target
    /// and of every generator appearing.
    pub ambient: usize,
    pub support_size: usize,
    pub terms: Vec<DecompositionTerm>,
}

/// Packs a vector's nonzero values into coordinates `1..=support_size`,
/// keeping their order.
fn packed(v: &FsVector) -> FsVector {
    FsVector::new(
        v.entries()
            .iter()
            .enumerate()
            .map(|(k, (_, val))| (k + 1, val.clone()))
            .collect(),
    )
    .expect("packing preserves ordering and nonzeroness")
}

/// The permutation sending the support of `u` to an initial segment,
/// remaining coordinates following in increasing order.
fn compression(u: &FsVector) -> Permutation {
    let w = u.width();
    let mut images = vec![0usize; w];
    let mut next = 0usize;
    for (i, _) in u.entries() {
        next += 1;
        images[*i - 1] = next;
    }
    for img in images.iter_mut() {
        if *img == 0 {
            next += 1;
            *img = next;
        }
    }
    Permutation::from_images(images).expect("compression images form a bijection")
}

/// Orbit elements of the packed generators in dimension `s`, each paired
/// with the index of the generator it came from (first wins on collisions).
fn packed_orbits(
    a: &GeneratorSet,
    s: usize,
    orbit_cap: usize,
) -> Result<Vec<(FsVector, usize)>> {
    let mut seen: BTreeMap<FsVector, usize> = BTreeMap::new();
    for (idx, g) in a.generators().iter().enumerate() {
        if g.support_size() > s {
            continue;
        }
        for elem in orbit(&packed(g), s, orbit_cap)? {
            seen.entry(elem).or_insert(idx);
        }
    }
    Ok(seen.into_iter().collect())
}

/// Builds the membership failure for `u` against the slice of the chain cut
/// out by its own width.
fn not_member(a: &GeneratorSet, u: &FsVector, orbit_cap: usize) -> Result<Error> {
    let w = u.width().max(1);
    let gens: Vec<FsVector> = packed_orbits(a, w, orbit_cap)?
        .into_iter()
        .map(|(v, _)| v)
        .collect();
    let cone = LocalCone::from_generators(&gens, w)?;
    match cone.membership(u)? {
        Membership::Outside(vc) => Ok(Error::not_member(vc.kind, vc.normal, vc.value)),
        Membership::Inside(_) => Err(Error::Internal(
            "membership disagreement between compressed and direct formulations".into(),
        )),
    }
}

/// Decomposes `u` into at most `|supp(u)|` orbit images of nonnegative
/// generators. Rejects signed generator families, for which no such bound
/// exists; fails with the violated constraint when `u` is not in the chain.
pub fn decompose(a: &GeneratorSet, u: &FsVector, orbit_cap: usize) -> Result<Decomposition> {
    a.require_nonnegative("support-size decomposition")?;
    if u.is_zero() {
        return Ok(Decomposition {
            target: u.clone(),
            ambient: 0,
            support_size: 0,
            terms: Vec::new(),
        });
    }
    let w = u.width();
    let s = u.support_size();
    let sigma = compression(u);
    let v = sigma.apply(u);

    let orbit_gens = packed_orbits(a, s, orbit_cap)?;
    let columns: Vec<Vec<Rat>> = orbit_gens.iter().map(|(g, _)| g.to_dense(s)).collect();
    let Some(lambda) = conic_combination(&columns, &v.to_dense(s)) else {
        return Err(not_member(a, u, orbit_cap)?);
    };

    let sigma_inv = sigma.inverse();
    let mut ambient = w;
    for (coeff, (_, idx)) in lambda.iter().zip(&orbit_gens) {
        if !coeff.is_zero() {
            ambient = ambient.max(a.generators()[*idx].width());
        }
    }
    let mut terms = Vec::new();
    for (coeff, (g, idx)) in lambda.into_iter().zip(&orbit_gens) {
        if coeff.is_zero() {
            continue;
        }
        let generator = a.generators()[*idx].clone();
        let image = sigma_inv.apply(g);
        let permutation = perm_mapping(&generator, &image, ambient).ok_or_else(|| {
            Error::Internal(format!("no permutation maps {generator} onto {image}"))
        })?;
        terms.push(DecompositionTerm {
            coefficient: coeff,
            base_index: *idx,
            generator,
            image,
            permutation,
        });
    }
    debug_assert!(terms.len() <= s);
    Ok(Decomposition { target: u.clone(), ambient, support_size: s, terms })
}

/// Result of the minimum-term search.
#[derive(Clone, Debug)]
pub struct MinTerms {
    pub target: FsVector,
    /// Ambient dimension the search ran in; permutation degree of the terms.
    pub ambient: usize,
    pub minimum: usize,
    pub witness: Vec<DecompositionTerm>,
    pub lp_calls: u64,
}

struct Searcher<'a> {
    columns: &'a [Vec<Rat>],
    supports: &'a [Vec<usize>],
    rhs: Vec<Rat>,
    target_support: Vec<usize>,
    lp_calls: u64,
    budget: u64,
}

impl Searcher<'_> {
    fn lp(&mut self, subset: &[usize]) -> Result<Option<Vec<Rat>>> {
        if self.lp_calls >= self.budget {
            return Err(Error::Budget { budget: self.budget, best_bound: None });
        }
        self.lp_calls += 1;
        let cols: Vec<Vec<Rat>> = subset.iter().map(|&i| self.columns[i].clone()).collect();
        Ok(conic_combination(&cols, &self.rhs))
    }

    fn covers(&self, subset: &[usize]) -> bool {
        self.target_support
            .iter()
            .all(|i| subset.iter().any(|&j| self.supports[j].binary_search(i).is_ok()))
    }

    /// Tries every size-`k` subset in lexicographic order; returns the first
    /// feasible one with its coefficients.
    fn try_size(&mut self, k: usize) -> Result<Option<(Vec<usize>, Vec<Rat>)>> {
        let m = self.columns.len();
        if k > m {
            return Ok(None);
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            if self.covers(&subset) {
                if let Some(lambda) = self.lp(&subset)? {
                    return Ok(Some((subset, lambda)));
                }
            }
            // advance to the next lexicographic combination
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                if subset[i] != i + m - k {
                    break;
                }
            }
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
}

/// Finds the minimum number of terms expressing `u` as a conic combination
/// of generator orbit images inside dimension `n`. Signed generators are
/// allowed. `budget` caps the number of exact LPs solved; when it runs out
/// the error carries the best upper bound proven so far.
pub fn min_terms(
    a: &GeneratorSet,
    u: &FsVector,
    n: usize,
    orbit_cap: usize,
    budget: u64,
) -> Result<MinTerms> {
    if u.width() > n {
        return Err(Error::Dimension(format!(
            "target has width {} but the ambient dimension is {n}",
            u.width()
        )));
    }
    if u.is_zero() {
        return Ok(MinTerms {
            target: u.clone(),
            ambient: n,
            minimum: 0,
            witness: Vec::new(),
            lp_calls: 0,
        });
    }
    let orbit_gens = packed_orbits(a, n, orbit_cap)?;
    let columns: Vec<Vec<Rat>> = orbit_gens.iter().map(|(g, _)| g.to_dense(n)).collect();
    let supports: Vec<Vec<usize>> = orbit_gens.iter().map(|(g, _)| g.support()).collect();
    let mut searcher = Searcher {
        columns: &columns,
        supports: &supports,
        rhs: u.to_dense(n),
        target_support: u.support(),
        lp_calls: 0,
        budget,
    };

    let all: Vec<usize> = (0..columns.len()).collect();
    let Some(full) = searcher.lp(&all)? else {
        return Err(not_member(a, u, orbit_cap)?);
    };
    let mut best: Vec<usize> = Vec::new();
    let mut best_lambda = Vec::new();
    for (i, c) in full.iter().enumerate() {
        if !c.is_zero() {
            best.push(i);
            best_lambda.push(c.clone());
        }
    }

    for k in 1..best.len() {
        match searcher.try_size(k) {
            Ok(Some((subset, lambda))) => {
                let kept: Vec<usize> = subset
                    .iter()
                    .zip(&lambda)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&i, _)| i)
                    .collect();
                best_lambda = lambda.into_iter().filter(|c| !c.is_zero()).collect();
                best = kept;
                break;
            }
            Ok(None) => {}
            Err(Error::Budget { budget, .. }) => {
                return Err(Error::Budget { budget, best_bound: Some(best.len()) })
            }
            Err(e) => return Err(e),
        }
    }

    let witness = best
        .iter()
        .zip(&best_lambda)
        .map(|(&i, c)| {
            let (image, idx) = &orbit_gens[i];
            let generator = a.generators()[*idx].clone();
            let degree = n.max(generator.width());
            let permutation = perm_mapping(&generator, image, degree).ok_or_else(|| {
                Error::Internal(format!("no permutation maps {generator} onto {image}"))
            })?;
            Ok(DecompositionTerm {
                coefficient: c.clone(),
                base_index: *idx,
                generator,
                image: image.clone(),
                permutation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MinTerms {
        target: u.clone(),
        ambient: n,
        minimum: witness.len(),
        witness,
        lp_calls: searcher.lp_calls,
    })
}

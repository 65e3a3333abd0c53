//! Hilbert bases of the integer-point monoids of the slices, their
//! stabilization across dimensions, and the full pipeline report.
//!
//! The monoid of a slice is its set of integer points. For a pointed
//! nonnegative cone that monoid has a unique minimal generating set, the
//! Hilbert basis, computed here by triangulating the cone, enumerating the
//! integer points of each simplex's fundamental parallelepiped, and filtering
//! the resulting generating set down to its irreducible members. A brute
//! force enumerator over a norm ball provides an independent cross-check.
//!
//! Across dimensions the bases themselves stabilize: past a threshold the
//! basis in dimension `n` is the orbit of the basis at the threshold. The
//! pipeline report records the cone stability index, the observed basis
//! stabilization index, norm and support bounds, and the pairwise merge
//! checks that tie elements of consecutive monoids together.

use std::collections::BTreeSet;

use num::{ToPrimitive, Zero};

use crate::chain::{localize, stability_index, GeneratorSet};
use crate::cone::LocalCone;
use crate::error::{Error, Result};
use crate::linalg;
use crate::orbit::canonical_rep;
use crate::rat::{rat_int, Rat};
use crate::triangulate::placing_triangulation;
use crate::vector::FsVector;

/// The minimal generating set of the integer points of a pointed
/// nonnegative cone, together with the cone itself.
#[derive(Clone, Debug)]
pub struct HilbertBasis {
    pub dim: usize,
    /// Irreducible integer points, sorted.
    pub elements: Vec<FsVector>,
    /// Largest 1-norm among the elements; 0 when there are none.
    pub max_norm: u64,
    pub cone: LocalCone,
}

fn norm_u64(v: &FsVector) -> Result<u64> {
    v.one_norm()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("norm of {v} does not fit in a machine word")))
}

fn require_pointed_nonnegative(c: &LocalCone) -> Result<()> {
    if !c.lineality().is_empty() {
        return Err(Error::Rejected(
            "Hilbert basis needs a pointed cone: a cone containing a line has no \
             unique minimal generating set"
                .into(),
        ));
    }
    if !c.rays().iter().all(FsVector::is_nonnegative) {
        return Err(Error::Rejected(
            "Hilbert basis computation here covers nonnegative cones only; a ray \
             has a negative coordinate"
                .into(),
        ));
    }
    Ok(())
}

/// Integer points of the closed fundamental parallelepiped spanned by the
/// simplex rays: every point of the coordinate box is tested for exact
/// barycentric coordinates in `[0, 1]`.
fn parallelepiped_points(
    rays: &[Vec<Rat>],
    dim: usize,
    budget: &mut u64,
) -> Result<Vec<FsVector>> {
    let mut upper = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut s = Rat::zero();
        for r in rays {
            s += &r[j];
        }
        let u = s.to_integer().to_i64().ok_or_else(|| {
            Error::Rejected("ray coordinates too large for box enumeration".into())
        })?;
        upper.push(u);
    }
    let system: Vec<Vec<Rat>> = (0..dim)
        .map(|i| rays.iter().map(|r| r[i].clone()).collect())
        .collect();

    let mut out = Vec::new();
    let mut point = vec![0i64; dim];
    loop {
        if *budget == 0 {
            return Err(Error::Budget { budget: 0, best_bound: None });
        }
        *budget -= 1;
        let dense: Vec<Rat> = point.iter().map(|&x| rat_int(x)).collect();
        if let Some(t) = linalg::solve(&system, &dense) {
            if t.iter().all(|c| *c >= Rat::zero() && *c <= rat_int(1)) {
                let v = FsVector::from_dense(&dense);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
        let mut j = 0;
        loop {
            if j == dim {
                return Ok(out);
            }
            if point[j] < upper[j] {
                point[j] += 1;
                break;
            }
            point[j] = 0;
            j += 1;
        }
    }
}

/// An element is irreducible when no other generator can be split off it
/// inside the cone.
fn irreducible_filter(candidates: BTreeSet<FsVector>, c: &LocalCone) -> Vec<FsVector> {
    candidates
        .iter()
        .filter(|x| {
            !candidates
                .iter()
                .any(|y| y != *x && c.contains(&x.sub(y)))
        })
        .cloned()
        .collect()
}

/// Computes the Hilbert basis of the integer points of `c`. The cone must be
/// pointed and nonnegative. `budget` caps the number of lattice points
/// inspected during parallelepiped enumeration.
pub fn hilbert_basis(c: &LocalCone, budget: u64) -> Result<HilbertBasis> {
    require_pointed_nonnegative(c)?;
    let mut candidates: BTreeSet<FsVector> = c.rays().iter().cloned().collect();
    let dense: Vec<Vec<Rat>> = c.rays().iter().map(|r| r.to_dense(c.dim())).collect();
    let mut remaining = budget;
    for simplex in placing_triangulation(c.rays(), c.dim())? {
        let srays: Vec<Vec<Rat>> = simplex.iter().map(|&i| dense[i].clone()).collect();
        candidates.extend(parallelepiped_points(&srays, c.dim(), &mut remaining)?);
    }
    let elements = irreducible_filter(candidates, c);
    let mut max_norm = 0u64;
    for e in &elements {
        max_norm = max_norm.max(norm_u64(e)?);
    }
    Ok(HilbertBasis { dim: c.dim(), elements, max_norm, cone: c.clone() })
}

/// Enumerates every integer point of `c` with 1-norm at most `bound` and
/// keeps those that are not a sum of two nonzero enumerated points. For a
/// nonnegative cone norms add, so the result is exactly the set of Hilbert
/// basis elements of norm at most `bound`.
pub fn brute_force_hilbert(c: &LocalCone, bound: u64, budget: u64) -> Result<Vec<FsVector>> {
    require_pointed_nonnegative(c)?;
    let mut members: BTreeSet<FsVector> = BTreeSet::new();
    let mut stack = vec![(Vec::<i64>::new(), bound)];
    let mut remaining = budget;
    while let Some((prefix, left)) = stack.pop() {
        if prefix.len() == c.dim() {
            if remaining == 0 {
                return Err(Error::Budget { budget, best_bound: None });
            }
            remaining -= 1;
            let dense: Vec<Rat> = prefix.iter().map(|&x| rat_int(x)).collect();
            let v = FsVector::from_dense(&dense);
            if !v.is_zero() && c.contains(&v) {
                members.insert(v);
            }
            continue;
        }
        for x in 0..=left {
            let mut p = prefix.clone();
            p.push(x as i64);
            stack.push((p, left - x));
        }
    }
    Ok(members
        .iter()
        .filter(|x| {
            !members
                .iter()
                .any(|y| y != *x && members.contains(&x.sub(y)))
        })
        .cloned()
        .collect())
}

/// Hilbert bases of the slices in dimensions `1..=n_max`.
pub fn hilbert_chain(
    a: &GeneratorSet,
    n_max: usize,
    orbit_cap: usize,
    budget: u64,
) -> Result<Vec<HilbertBasis>> {
    a.require_nonnegative("the Hilbert basis chain")?;
    a.require_integral("the Hilbert basis chain")?;
    (1..=n_max)
        .map(|n| hilbert_basis(&localize(a, n, orbit_cap)?, budget))
        .collect()
}

/// Stabilization data extracted from a list of consecutive Hilbert bases
/// (dimensions `1..=n_max`).
#[derive(Clone, Debug)]
pub struct HbStabilization {
    /// Smallest `m` whose basis orbit reproduces every later basis in the
    /// window; `None` when no such index was observed.
    pub r_hilbert: Option<usize>,
    /// Largest element norm per dimension.
    pub norms: Vec<u64>,
    /// Largest support size over all basis elements in the window.
    pub support_bound: usize,
    /// Norms never increase from `r_hilbert` on.
    pub norms_non_increasing: bool,
    /// Stabilization observed and norms non-increasing from there on.
    pub verdict: bool,
}

/// Canonical representatives of a basis, lifted to ambient dimension `n`.
fn canon_set(hb: &HilbertBasis, n: usize) -> Result<BTreeSet<FsVector>> {
    hb.elements.iter().map(|e| canonical_rep(e, n)).collect()
}

/// Compares each basis against the orbits of earlier ones to find the least
/// index whose basis generates all later ones in the window.
pub fn check_hb_stabilization(bases: &[HilbertBasis]) -> Result<HbStabilization> {
    let n_max = bases.len();
    let norms = bases.iter().map(|b| b.max_norm).collect::<Vec<_>>();
    let support_bound = bases
        .iter()
        .flat_map(|b| b.elements.iter())
        .map(FsVector::support_size)
        .max()
        .unwrap_or(0);

    let mut r_hilbert = None;
    'scan: for m in 1..=n_max {
        for n in m + 1..=n_max {
            if canon_set(&bases[m - 1], n)? != canon_set(&bases[n - 1], n)? {
                continue 'scan;
            }
        }
        r_hilbert = Some(m);
        break;
    }
    let norms_non_increasing = match r_hilbert {
        Some(m) => norms[m - 1..].windows(2).all(|w| w[0] >= w[1]),
        None => false,
    };
    let verdict = r_hilbert.is_some() && norms_non_increasing;
    Ok(HbStabilization { r_hilbert, norms, support_bound, norms_non_increasing, verdict })
}

/// Expresses an integer point of the cone as a sum of Hilbert basis elements
/// (with repetition), by depth-first subtraction with backtracking. Elements
/// are consumed in non-decreasing index order, so each decomposition is
/// visited once.
pub fn decompose_over_hilbert(
    target: &FsVector,
    hb: &[FsVector],
    c: &LocalCone,
) -> Option<Vec<FsVector>> {
    fn go(
        target: &FsVector,
        hb: &[FsVector],
        c: &LocalCone,
        start: usize,
        acc: &mut Vec<FsVector>,
    ) -> bool {
        if target.is_zero() {
            return true;
        }
        for i in start..hb.len() {
            let rest = target.sub(&hb[i]);
            if !rest.is_nonnegative() || !c.contains(&rest) {
                continue;
            }
            acc.push(hb[i].clone());
            if go(&rest, hb, c, i, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(target, hb, c, 0, &mut acc).then_some(acc)
}

/// Outcome of the monoid merge test.
#[derive(Clone, Debug)]
pub enum MonoidMerge {
    Merged {
        /// 1-based coordinate pair that was summed.
        pair: (usize, usize),
        /// Canonical merged vector, a member of the smaller monoid.
        merged: FsVector,
        /// Expression of the merged vector over the smaller Hilbert basis.
        decomposition: Vec<FsVector>,
    },
    NoPair {
        tried: usize,
    },
}

/// Searches coordinate pairs of the integer vector `u` whose merge (summing
/// the pair into one coordinate) lands in the monoid one dimension down,
/// i.e. the integer points of `c_prev`. Invariance of `c_prev` under
/// coordinate permutations lets the merged coordinates be sorted.
pub fn monoid_merge_test(
    u: &FsVector,
    hb_prev: &HilbertBasis,
    c_prev: &LocalCone,
) -> Result<MonoidMerge> {
    if !u.is_integral() {
        return Err(Error::Rejected(format!(
            "monoid merge needs an integer vector, got {u}"
        )));
    }
    let n = c_prev.dim() + 1;
    if u.width() > n {
        return Err(Error::Dimension(format!(
            "vector of width {} cannot merge into dimension {}",
            u.width(),
            c_prev.dim()
        )));
    }
    let dense = u.to_dense(n);
    let mut tried = 0;
    for i in 0..n {
        for j in i + 1..n {
            tried += 1;
            let mut values: Vec<Rat> = (0..n)
                .filter(|k| *k != i && *k != j)
                .map(|k| dense[k].clone())
                .collect();
            values.push(&dense[i] + &dense[j]);
            values.sort();
            let merged = FsVector::from_dense(&values);
            if c_prev.contains(&merged) {
                let decomposition =
                    decompose_over_hilbert(&merged, &hb_prev.elements, c_prev).ok_or_else(
                        || {
                            Error::Internal(format!(
                                "merged vector {merged} is in the cone but does not decompose \
                                 over its Hilbert basis"
                            ))
                        },
                    )?;
                return Ok(MonoidMerge::Merged { pair: (i + 1, j + 1), merged, decomposition });
            }
        }
    }
    Ok(MonoidMerge::NoPair { tried })
}

/// Full pipeline report: cone stabilization, Hilbert basis chain, basis
/// stabilization, and merge checks above the cone index.
#[derive(Clone, Debug)]
pub struct GordanReport {
    pub r_cone: usize,
    pub r_hilbert: Option<usize>,
    pub support_bound: usize,
    /// Largest basis norm per dimension `1..=window`.
    pub norms: Vec<u64>,
    /// Basis stabilization observed and norms non-increasing from there on.
    pub verdict: bool,
    /// Largest dimension examined.
    pub window: usize,
    pub bases: Vec<HilbertBasis>,
    /// Every basis element in dimensions above the cone index merged into
    /// the monoid one dimension down.
    pub merge_ok: bool,
    pub merge_failures: Vec<FsVector>,
}

/// Runs the whole pipeline for a nonnegative integral generator set:
/// stability index, Hilbert bases up to `n_max`, stabilization check, and
/// merge tests for every basis element above the stability index.
pub fn gordan_report(
    a: &GeneratorSet,
    n_max: usize,
    orbit_cap: usize,
    budget: u64,
) -> Result<GordanReport> {
    let cert = stability_index(a, orbit_cap)?;
    let bases = hilbert_chain(a, n_max, orbit_cap, budget)?;
    let stab = check_hb_stabilization(&bases)?;

    let mut merge_failures = Vec::new();
    for n in cert.index + 1..=n_max {
        let hb = &bases[n - 1];
        let prev = &bases[n - 2];
        for u in &hb.elements {
            match monoid_merge_test(u, prev, &prev.cone)? {
                MonoidMerge::Merged { .. } => {}
                MonoidMerge::NoPair { .. } => merge_failures.push(u.clone()),
            }
        }
    }
    Ok(GordanReport {
        r_cone: cert.index,
        r_hilbert: stab.r_hilbert,
        support_bound: stab.support_bound,
        norms: stab.norms,
        verdict: stab.verdict,
        window: n_max,
        bases,
        merge_ok: merge_failures.is_empty(),
        merge_failures,
    })
}

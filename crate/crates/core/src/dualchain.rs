//! Finite presentation of the duals of all slices at once.
//!
//! For a stabilizing nonnegative chain with stability index `r`, the dual of
//! every slice at `n >= r` is generated by the `Sym(n)` orbit of a fixed
//! finite set: the extreme rays of the non-decreasing part of the dual slice
//! at `r` (other than the last unit vector), each padded from length `r` to
//! length `n` by repeating its final coordinate, together with the last unit
//! vector `e_n`. This module extracts that basis, pads it, and verifies the
//! claimed presentation dimension by dimension with exact double-inclusion
//! certificates.
//!
//! When the non-decreasing part of the dual slice has nontrivial lineality,
//! or an extreme ray of support one other than `e_r` shows up, the padding
//! rule does not apply; the basis is then flagged `degenerate` and the
//! verifier reports that instead of guessing.

use num::Zero;

use crate::chain::{localize, stability_index, GeneratorSet, StabilizationCertificate};
use crate::cone::{conic_witness, LocalCone, Membership};
use crate::error::{Error, Result};
use crate::orbit::orbit_closure;
use crate::rat::Rat;
use crate::vector::FsVector;

/// The finite dual-chain basis at the stability index.
#[derive(Clone, Debug)]
pub struct DualChainBasis {
    /// Stability index `r` of the chain.
    pub index: usize,
    /// Non-decreasing generators of the dual slice at `r`, the unit vector
    /// excluded. May be empty.
    pub basis: Vec<FsVector>,
    /// The excluded unit vector `e_r`, whose orbit supplies the rest.
    pub excluded: FsVector,
    /// Set when the padding rule is inapplicable; consumers must not pad.
    pub degenerate: bool,
}

/// Extracts the dual-chain basis: dualize the slice at the stability index,
/// cut down to non-decreasing coordinates, take extreme rays, drop `e_r`.
pub fn dual_chain_basis(
    a: &GeneratorSet,
    orbit_cap: usize,
) -> Result<(DualChainBasis, StabilizationCertificate)> {
    let cert = stability_index(a, orbit_cap)?;
    let r = cert.index;
    let dual = localize(a, r, orbit_cap)?.dualize();
    let order: Vec<FsVector> = (1..r)
        .map(|i| FsVector::unit(i + 1).sub(&FsVector::unit(i)))
        .collect();
    let non_decreasing = dual.intersect_halfspaces(&order)?;
    let unit = FsVector::unit(r);
    let mut degenerate = !non_decreasing.lineality().is_empty();
    let mut basis = Vec::new();
    for ray in non_decreasing.rays() {
        if *ray == unit {
            continue;
        }
        if ray.support_size() <= 1 {
            // a one-coordinate ray other than e_r defeats the padding rule
            degenerate = true;
            continue;
        }
        if !ray.is_non_decreasing(r) {
            return Err(Error::Internal(format!(
                "extreme ray {ray} of the order-restricted dual is not non-decreasing"
            )));
        }
        basis.push(ray.clone());
    }
    Ok((DualChainBasis { index: r, basis, excluded: unit, degenerate }, cert))
}

/// Pads the basis from length `r` to length `n >= r` by repeating each
/// vector's final coordinate, and appends `e_n`. This is the generating set
/// whose `Sym(n)` orbit presents the dual slice at `n`.
pub fn pad_basis(b: &DualChainBasis, n: usize) -> Result<Vec<FsVector>> {
    if b.degenerate {
        return Err(Error::Rejected(
            "degenerate dual-chain basis: the padding rule does not apply".into(),
        ));
    }
    if n < b.index {
        return Err(Error::Dimension(format!(
            "cannot pad a length-{} basis down to length {n}",
            b.index
        )));
    }
    let mut out = Vec::with_capacity(b.basis.len() + 1);
    for u in &b.basis {
        let mut dense = u.to_dense(b.index);
        let last = dense.last().cloned().unwrap_or_else(Rat::zero);
        dense.resize(n, last);
        out.push(FsVector::from_dense(&dense));
    }
    out.push(FsVector::unit(n));
    Ok(out)
}

/// An exact conic recombination certifying one vector's membership in the
/// other side of an inclusion.
#[derive(Clone, Debug)]
pub struct InclusionWitness {
    pub vector: FsVector,
    pub terms: Vec<(FsVector, Rat)>,
}

/// Verification record for one dimension.
#[derive(Clone, Debug)]
pub struct SliceCheck {
    pub n: usize,
    /// Dual slice equals the orbit hull of the padded basis; `None` when the
    /// slice could not be checked within the orbit cap.
    pub holds: Option<bool>,
    /// Message for a per-slice resource failure.
    pub resource_error: Option<String>,
    /// The padded generating set `F_n` plus `e_n`.
    pub padded: Vec<FsVector>,
    /// Greedily minimized sublist that still generates (always keeps `e_n`).
    pub minimized: Vec<FsVector>,
    /// Padded members found redundant over the rest.
    pub redundant: Vec<FsVector>,
    /// Witnesses: dual-slice rays (and lineality, signed) over the padded
    /// orbit. Only present when witness emission is on.
    pub forward: Option<Vec<InclusionWitness>>,
    /// Witnesses: padded orbit hull rays (and lineality, signed) over the
    /// dual slice. Only present when witness emission is on.
    pub backward: Option<Vec<InclusionWitness>>,
}

/// Full dual-chain verification report.
#[derive(Clone, Debug)]
pub struct DualChainReport {
    pub basis: DualChainBasis,
    pub certificate: StabilizationCertificate,
    pub slices: Vec<SliceCheck>,
    /// `Some(true)` when every slice checked out, `Some(false)` when one
    /// definitely failed, `None` when the basis is degenerate or a resource
    /// cap left slices unchecked.
    pub verified: Option<bool>,
}

fn forward_witnesses(
    lhs: &LocalCone,
    orbit_gens: &[FsVector],
    n: usize,
) -> Result<Vec<InclusionWitness>> {
    let mut out = Vec::new();
    let mut targets: Vec<FsVector> = lhs.rays().to_vec();
    for l in lhs.lineality() {
        targets.push(l.clone());
        targets.push(l.neg());
    }
    for t in targets {
        let lambda = conic_witness(orbit_gens, &t, n).ok_or_else(|| {
            Error::Internal(format!("verified inclusion lost its witness for {t}"))
        })?;
        let terms = orbit_gens
            .iter()
            .zip(&lambda)
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| (v.clone(), c.clone()))
            .collect();
        out.push(InclusionWitness { vector: t, terms });
    }
    Ok(out)
}

fn backward_witnesses(lhs: &LocalCone, rhs: &LocalCone) -> Result<Vec<InclusionWitness>> {
    let mut out = Vec::new();
    let mut targets: Vec<FsVector> = rhs.rays().to_vec();
    for l in rhs.lineality() {
        targets.push(l.clone());
        targets.push(l.neg());
    }
    for t in targets {
        let Membership::Inside(w) = lhs.membership(&t)? else {
            return Err(Error::Internal(format!(
                "verified inclusion lost its witness for {t}"
            )));
        };
        let mut terms: Vec<(FsVector, Rat)> = w
            .ray_coefficients
            .iter()
            .map(|(i, c)| (lhs.rays()[*i].clone(), c.clone()))
            .collect();
        terms.extend(
            w.lineality_coefficients
                .iter()
                .map(|(i, c)| (lhs.lineality()[*i].clone(), c.clone())),
        );
        out.push(InclusionWitness { vector: t, terms });
    }
    Ok(out)
}

/// Greedy redundancy pass over the padded list: a member is redundant when
/// the orbit hull of the remaining members still contains it. `e_n` is never
/// dropped.
fn minimize_padded(
    padded: &[FsVector],
    n: usize,
    orbit_cap: usize,
) -> Result<(Vec<FsVector>, Vec<FsVector>)> {
    let mut kept: Vec<FsVector> = padded.to_vec();
    let mut redundant = Vec::new();
    let unit = FsVector::unit(n);
    let mut i = 0;
    while i < kept.len() {
        if kept[i] == unit {
            i += 1;
            continue;
        }
        let mut rest = kept.clone();
        let candidate = rest.remove(i);
        let hull = LocalCone::from_generators(&orbit_closure(&rest, n, orbit_cap)?, n)?;
        if hull.contains(&candidate) {
            redundant.push(candidate);
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok((kept, redundant))
}

/// Checks, for every `n` from the stability index to `n_max`, that the dual
/// of the slice at `n` equals the conic hull of the `Sym(n)` orbit of the
/// padded basis. With `emit_witnesses` the report carries exact
/// recombinations for both inclusions.
pub fn verify_dual_chain(
    a: &GeneratorSet,
    n_max: usize,
    orbit_cap: usize,
    emit_witnesses: bool,
) -> Result<DualChainReport> {
    let (basis, certificate) = dual_chain_basis(a, orbit_cap)?;
    if basis.degenerate {
        return Ok(DualChainReport { basis, certificate, slices: Vec::new(), verified: None });
    }
    let mut slices = Vec::new();
    let mut any_false = false;
    let mut any_unchecked = false;
    for n in basis.index..=n_max {
        let padded = pad_basis(&basis, n)?;
        let checked = (|| -> Result<SliceCheck> {
            let lhs = localize(a, n, orbit_cap)?.dualize();
            let orbit_gens = orbit_closure(&padded, n, orbit_cap)?;
            let rhs = LocalCone::from_generators(&orbit_gens, n)?;
            let holds = lhs.equal(&rhs)?;
            let (minimized, redundant) = minimize_padded(&padded, n, orbit_cap)?;
            let (forward, backward) = if emit_witnesses && holds {
                (
                    Some(forward_witnesses(&lhs, &orbit_gens, n)?),
                    Some(backward_witnesses(&lhs, &rhs)?),
                )
            } else {
                (None, None)
            };
            Ok(SliceCheck {
                n,
                holds: Some(holds),
                resource_error: None,
                padded: padded.clone(),
                minimized,
                redundant,
                forward,
                backward,
            })
        })();
        match checked {
            Ok(slice) => {
                any_false |= slice.holds == Some(false);
                slices.push(slice);
            }
            Err(e @ Error::OrbitCap { .. }) => {
                any_unchecked = true;
                slices.push(SliceCheck {
                    n,
                    holds: None,
                    resource_error: Some(e.to_string()),
                    padded,
                    minimized: Vec::new(),
                    redundant: Vec::new(),
                    forward: None,
                    backward: None,
                });
            }
            Err(e) => return Err(e),
        }
    }
    let verified = if any_false {
        Some(false)
    } else if any_unchecked {
        None
    } else {
        Some(true)
    };
    Ok(DualChainReport { basis, certificate, slices, verified })
}

//! Incremental double description (Motzkin-Burger) over exact rationals.
//!
//! A state holds a minimal V-representation, as a lineality basis plus the
//! extreme rays modulo lineality, of the intersection of the halfspaces
//! processed so far, starting from the whole space. Inserting `<a, x> >= 0`
//! either cuts the lineality space (one basis vector becomes a ray) or
//! partitions the rays by sign; adjacent positive/negative pairs combine into
//! the new rays on the cutting hyperplane.
//!
//! Adjacency is decided algebraically: two rays are adjacent iff the
//! constraints tight at both have rank exactly two less than the dimension of
//! the current quotient by lineality. Exactness of the arithmetic makes the
//! rank test sound; no combinatorial fallback is needed.

use num::{Signed, Zero};

use crate::linalg;
use crate::rat::Rat;
use crate::vector::FsVector;

pub(crate) struct DdState {
    dim: usize,
    constraints: Vec<Vec<Rat>>,
    lineality: Vec<Vec<Rat>>,
    rays: Vec<DdRay>,
}

struct DdRay {
    coords: Vec<Rat>,
    // sorted indices of the processed constraints this ray satisfies tightly
    tight: Vec<u32>,
}

fn primitive_dense(v: &[Rat]) -> Vec<Rat> {
    FsVector::from_dense(v).primitive().to_dense(v.len())
}

impl DdState {
    /// The whole space: empty constraint set, identity lineality basis.
    pub fn full_space(dim: usize) -> Self {
        let lineality = (0..dim)
            .map(|i| {
                let mut e = vec![Rat::zero(); dim];
                e[i] = Rat::from_integer(1.into());
                e
            })
            .collect();
        DdState { dim, constraints: Vec::new(), lineality, rays: Vec::new() }
    }

    /// Resumes from a cone already in minimal double form. The caller asserts
    /// that `(rays, lineality)` is exactly the minimal V-representation of
    /// the set cut out by `(ineqs, eqs)`; tight sets are recomputed.
    pub fn resume(
        dim: usize,
        ineqs: &[FsVector],
        eqs: &[FsVector],
        rays: &[FsVector],
        lineality: &[FsVector],
    ) -> Self {
        let mut constraints: Vec<Vec<Rat>> = Vec::new();
        for e in eqs {
            let d = e.to_dense(dim);
            constraints.push(d.iter().map(|v| -v.clone()).collect());
            constraints.push(d);
        }
        for a in ineqs {
            constraints.push(a.to_dense(dim));
        }
        let rays = rays
            .iter()
            .map(|r| {
                let coords = r.to_dense(dim);
                let tight = constraints
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| linalg::dot(c, &coords).is_zero())
                    .map(|(i, _)| i as u32)
                    .collect();
                DdRay { coords, tight }
            })
            .collect();
        DdState {
            dim,
            constraints,
            lineality: lineality.iter().map(|l| l.to_dense(dim)).collect(),
            rays,
        }
    }

    pub fn insert_equation(&mut self, normal: &[Rat]) {
        self.insert(normal.to_vec());
        self.insert(normal.iter().map(|v| -v.clone()).collect());
    }

    pub fn insert(&mut self, normal: Vec<Rat>) {
        assert_eq!(normal.len(), self.dim);
        let cur = self.constraints.len() as u32;

        // a lineality vector off the hyperplane absorbs the cut: it becomes
        // the one new ray, everything else is projected onto the hyperplane
        let off = self
            .lineality
            .iter()
            .position(|l| !linalg::dot(l, &normal).is_zero());
        if let Some(k) = off {
            let mut l0 = self.lineality.remove(k);
            let mut v0 = linalg::dot(&l0, &normal);
            if v0.is_negative() {
                for v in l0.iter_mut() {
                    *v = -v.clone();
                }
                v0 = -v0;
            }
            for l in self.lineality.iter_mut() {
                let w = linalg::dot(l, &normal);
                if !w.is_zero() {
                    let f = w / v0.clone();
                    for (lv, l0v) in l.iter_mut().zip(&l0) {
                        *lv -= f.clone() * l0v.clone();
                    }
                    *l = primitive_dense(l);
                }
            }
            for ray in self.rays.iter_mut() {
                let w = linalg::dot(&ray.coords, &normal);
                if !w.is_zero() {
                    let f = w / v0.clone();
                    for (rv, l0v) in ray.coords.iter_mut().zip(&l0) {
                        *rv -= f.clone() * l0v.clone();
                    }
                    ray.coords = primitive_dense(&ray.coords);
                }
                ray.tight.push(cur);
            }
            self.rays.push(DdRay {
                coords: primitive_dense(&l0),
                tight: (0..cur).collect(),
            });
            self.constraints.push(normal);
            return;
        }

        let values: Vec<Rat> = self
            .rays
            .iter()
            .map(|r| linalg::dot(&r.coords, &normal))
            .collect();
        if values.iter().all(|v| !v.is_negative()) {
            // redundant on the current cone; still recorded for tight sets
            for (ray, v) in self.rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.tight.push(cur);
                }
            }
            self.constraints.push(normal);
            return;
        }

        let quotient_dim = self.dim - self.lineality.len();
        let mut kept: Vec<DdRay> = Vec::new();
        let mut new_rays: Vec<DdRay> = Vec::new();
        let pos: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i].is_negative()).collect();

        for (p, m) in pos.iter().flat_map(|&p| neg.iter().map(move |&m| (p, m))) {
            let common = intersect_sorted(&self.rays[p].tight, &self.rays[m].tight);
            if quotient_dim < 2 || common.len() + 2 < quotient_dim {
                continue;
            }
            let tight_rows: Vec<Vec<Rat>> =
                common.iter().map(|&i| self.constraints[i as usize].clone()).collect();
            if linalg::rank(&tight_rows) != quotient_dim - 2 {
                continue;
            }
            // positive combination landing on the hyperplane
            let (wp, wm) = (&values[p], &values[m]);
            let coords: Vec<Rat> = self.rays[m]
                .coords
                .iter()
                .zip(&self.rays[p].coords)
                .map(|(mc, pc)| wp.clone() * mc.clone() - wm.clone() * pc.clone())
                .collect();
            let coords = primitive_dense(&coords);
            if new_rays.iter().any(|r| r.coords == coords) {
                continue;
            }
            let mut tight = common;
            tight.push(cur);
            new_rays.push(DdRay { coords, tight });
        }

        for (i, mut ray) in std::mem::take(&mut self.rays).into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                ray.tight.push(cur);
            }
            kept.push(ray);
        }
        kept.extend(new_rays);
        self.rays = kept;
        self.constraints.push(normal);
    }

    /// Extreme rays as primitive vectors in canonical (dense lexicographic)
    /// order, and the lineality space as a reduced, primitively scaled basis.
    pub fn into_vrep(self) -> (Vec<FsVector>, Vec<FsVector>) {
        let mut rays: Vec<FsVector> = self
            .rays
            .into_iter()
            .map(|r| FsVector::from_dense(&r.coords))
            .collect();
        rays.sort();
        rays.dedup();
        (rays, canonical_basis(&self.lineality))
    }
}

/// Reduced row echelon basis of the span of `rows`, each vector scaled to
/// coprime integers with positive leading coordinate.
pub(crate) fn canonical_basis(rows: &[Vec<Rat>]) -> Vec<FsVector> {
    let (r, _) = linalg::rref(rows);
    r.iter()
        .map(|row| FsVector::from_dense(row).primitive_signed())
        .collect()
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Runs double description over the given constraints: equations first (as
/// opposite halfspace pairs), then inequalities, both in the deterministic
/// order the caller fixed. Returns `(rays, lineality)`.
pub(crate) fn vrep_of_constraints(
    dim: usize,
    ineqs: &[FsVector],
    eqs: &[FsVector],
) -> (Vec<FsVector>, Vec<FsVector>) {
    let mut state = DdState::full_space(dim);
    for e in eqs {
        state.insert_equation(&e.to_dense(dim));
    }
    for a in ineqs {
        state.insert(a.to_dense(dim));
    }
    state.into_vrep()
}

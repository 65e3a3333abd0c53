//! Placing triangulation of a pointed cone.
//!
//! Rays are inserted one at a time in the given order. A ray outside the
//! current linear span joins every existing simplex; a ray inside the span
//! joins exactly the boundary facets it can see (those whose inward normal
//! evaluates negatively on it). The result is a fan of simplicial cones, each
//! listed as indices into the input rays, covering the cone they generate.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Row};
use crate::rat::Rat;
use crate::vector::FsVector;

/// Reduces `v` against reduced rows, returning the remainder.
fn reduce(v: &[Rat], rows: &[(usize, Row)]) -> Row {
    let mut v = v.to_vec();
    for (pivot, row) in rows {
        if !v[*pivot].is_zero() {
            let c = v[*pivot].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a = &*a - &c * b;
            }
        }
    }
    v
}

/// Inward normal of the facet `facet` of simplex `simplex`, expressed as a
/// combination of the simplex's own rays: orthogonal to every facet ray,
/// positive on the opposite ray.
fn inward_normal(rays: &[Row], simplex: &[usize], facet: &[usize]) -> Result<Row> {
    if facet.is_empty() {
        // one-ray simplex: the facet is the origin, the ray points inward
        return Ok(rays[simplex[0]].clone());
    }
    let system: Vec<Row> = facet
        .iter()
        .map(|&f| simplex.iter().map(|&s| linalg::dot(&rays[f], &rays[s])).collect())
        .collect();
    let coeffs = linalg::nullspace_vector(&system)
        .ok_or_else(|| Error::Internal("facet normal system has no kernel".into()))?;
    let dim = rays[simplex[0]].len();
    let mut normal = vec![Rat::zero(); dim];
    for (c, &s) in coeffs.iter().zip(simplex) {
        for (n, r) in normal.iter_mut().zip(&rays[s]) {
            *n = &*n + c * r;
        }
    }
    let apex = simplex.iter().find(|s| !facet.contains(s)).expect("facet omits one ray");
    let sign = linalg::dot(&normal, &rays[*apex]);
    if sign.is_zero() {
        return Err(Error::Internal("degenerate simplex in triangulation".into()));
    }
    if sign < Rat::zero() {
        for n in &mut normal {
            *n = -&*n;
        }
    }
    Ok(normal)
}

/// Facets (as sorted index lists) lying in exactly one simplex, paired with
/// that simplex's position.
fn boundary_facets(simplices: &[Vec<usize>]) -> Vec<(Vec<usize>, usize)> {
    let mut seen: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for (si, s) in simplices.iter().enumerate() {
        for omit in 0..s.len() {
            let mut facet = s.clone();
            facet.remove(omit);
            seen.entry(facet).and_modify(|e| e.1 += 1).or_insert((si, 1));
        }
    }
    seen.into_iter()
        .filter(|(_, (_, count))| *count == 1)
        .map(|(facet, (si, _))| (facet, si))
        .collect()
}

/// Triangulates the cone generated by `rays` (taken in order) into simplicial
/// cones, returned as sorted index lists into `rays`. Every simplex has one
/// ray per dimension of the linear span. The input must generate a pointed
/// cone; zero rays are not allowed.
pub fn placing_triangulation(rays: &[FsVector], dim: usize) -> Result<Vec<Vec<usize>>> {
    let dense: Vec<Row> = rays.iter().map(|r| r.to_dense(dim)).collect();
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut span_rows: Vec<(usize, Row)> = Vec::new(); // (pivot column, reduced row)

    for (j, v) in dense.iter().enumerate() {
        if v.iter().all(Zero::is_zero) {
            return Err(Error::Rejected("zero vector among triangulation rays".into()));
        }
        let rem = reduce(v, &span_rows);
        if let Some(pivot) = rem.iter().position(|x| !x.is_zero()) {
            // outside the current span: join the new ray to everything
            let inv = rem[pivot].clone();
            let row: Row = rem.iter().map(|x| x / &inv).collect();
            for (p, existing) in &mut span_rows {
                if !existing[pivot].is_zero() {
                    let c = existing[pivot].clone();
                    for (a, b) in existing.iter_mut().zip(&row) {
                        *a = &*a - &c * b;
                    }
                    debug_assert!(!existing[*p].is_zero());
                }
            }
            span_rows.push((pivot, row));
            if simplices.is_empty() {
                simplices.push(vec![j]);
            } else {
                for s in &mut simplices {
                    s.push(j);
                    s.sort_unstable();
                }
            }
        } else {
            // inside the span: cone over the visible part of the boundary
            let mut additions = Vec::new();
            for (facet, si) in boundary_facets(&simplices) {
                let normal = inward_normal(&dense, &simplices[si], &facet)?;
                if linalg::dot(&normal, v) < Rat::zero() {
                    let mut s = facet;
                    s.push(j);
                    s.sort_unstable();
                    additions.push(s);
                }
            }
            simplices.extend(additions);
        }
    }
    Ok(simplices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(ints: &[i64]) -> FsVector {
        FsVector::from_ints(ints)
    }

    #[test]
    fn simplex_cone_is_its_own_triangulation() {
        let rays = [fs(&[1, 0, 0]), fs(&[0, 1, 0]), fs(&[0, 0, 1])];
        let t = placing_triangulation(&rays, 3).unwrap();
        assert_eq!(t, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn square_cone_splits_in_two() {
        let rays = [
            fs(&[0, 0, 1]),
            fs(&[0, 1, 1]),
            fs(&[1, 0, 1]),
            fs(&[1, 1, 1]),
        ];
        let t = placing_triangulation(&rays, 3).unwrap();
        assert_eq!(t.len(), 2);
        for s in &t {
            assert_eq!(s.len(), 3);
        }
        // the two simplices share a common facet
        let common: Vec<usize> = t[0].iter().filter(|i| t[1].contains(i)).cloned().collect();
        assert_eq!(common.len(), 2);
    }

    #[test]
    fn interior_ray_adds_nothing() {
        let rays = [fs(&[1, 0]), fs(&[0, 1]), fs(&[1, 1])];
        let t = placing_triangulation(&rays, 2).unwrap();
        assert_eq!(t, vec![vec![0, 1]]);
    }

    #[test]
    fn fan_grows_along_visible_facets() {
        // each ray after the second widens the planar cone by one sector
        let rays = [fs(&[1, 0]), fs(&[1, 1]), fs(&[1, 2]), fs(&[0, 1])];
        let t = placing_triangulation(&rays, 2).unwrap();
        let mut sorted = t.clone();
        sorted.sort();
        assert_eq!(sorted, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn low_dimensional_cone_in_big_ambient() {
        let rays = [fs(&[1, 1, 0]), fs(&[1, 2, 0])];
        let t = placing_triangulation(&rays, 3).unwrap();
        assert_eq!(t, vec![vec![0, 1]]);
    }

    #[test]
    fn rejects_zero_rays() {
        assert!(placing_triangulation(&[FsVector::zero()], 2).is_err());
    }
}

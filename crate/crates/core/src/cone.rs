//! Finite-dimensional rational polyhedral cones in synchronized double
//! description.
//!
//! A `LocalCone` always carries both representations at once:
//!
//! * V-side: `rays` (primitive, extreme modulo lineality, sorted) and
//!   `lineality` (reduced primitive basis of the largest linear subspace).
//! * H-side: `ineqs` (facet normals, primitive, irredundant, sorted) and
//!   `eqs` (reduced primitive basis of the span's orthogonal complement).
//!
//! The two sides are linked by duality: the facet normals of a cone are the
//! extreme rays of its dual, and the implicit equations span the dual's
//! lineality. Keeping both sides canonical makes `dualize` a pure swap and
//! makes equality, containment, and serialization deterministic. Non-pointed
//! and non-full-dimensional cones are ordinary values here, not special
//! cases: the zero cone and the whole line both round-trip through duality.

use num::{Signed, Zero};
use std::collections::BTreeSet;

use crate::dd;
use crate::error::{ConstraintKind, Error, Result};
use crate::lp;
use crate::rat::{rat_to_string, Rat};
use crate::vector::FsVector;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalCone {
    dim: usize,
    rays: Vec<FsVector>,
    lineality: Vec<FsVector>,
    ineqs: Vec<FsVector>,
    eqs: Vec<FsVector>,
}

/// Outcome of a membership query with certificate.
#[derive(Clone, Debug)]
pub enum Membership {
    /// Exact conic coefficients over the cone's rays plus a linear part over
    /// its lineality basis, recombining to the queried vector.
    Inside(MembershipWitness),
    /// A constraint of the cone the vector violates.
    Outside(crate::error::ViolatedConstraint),
}

#[derive(Clone, Debug)]
pub struct MembershipWitness {
    /// `(ray index, coefficient)` pairs with positive coefficients.
    pub ray_coefficients: Vec<(usize, Rat)>,
    /// `(lineality index, coefficient)` pairs with nonzero coefficients.
    pub lineality_coefficients: Vec<(usize, Rat)>,
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside(_))
    }
}

// deterministic halfspace insertion order: support size, then dense
// lexicographic, duplicates removed
fn insertion_order(normals: &[FsVector]) -> Vec<FsVector> {
    let mut set: BTreeSet<(usize, FsVector)> = BTreeSet::new();
    for v in normals {
        if !v.is_zero() {
            set.insert((v.support_size(), v.clone()));
        }
    }
    set.into_iter().map(|(_, v)| v).collect()
}

impl LocalCone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[FsVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[FsVector] {
        &self.lineality
    }

    pub fn ineqs(&self) -> &[FsVector] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[FsVector] {
        &self.eqs
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Whether the cone lies inside the nonnegative orthant.
    pub fn is_nonnegative(&self) -> bool {
        self.lineality.is_empty() && self.rays.iter().all(|r| r.is_nonnegative())
    }

    /// Dimension of the cone's linear span.
    pub fn span_dim(&self) -> usize {
        self.dim - self.eqs.len()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// The cone `{0}` in ambient dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Self::from_generators(&[], dim).expect("zero cone construction")
    }

    /// The whole space as a cone.
    pub fn full(dim: usize) -> Self {
        Self::from_constraints(&[], &[], dim).expect("full space construction")
    }

    /// The conic hull of finitely many generators inside dimension `dim`.
    /// Generators may be rational, repeated, redundant, or zero; the stored
    /// representation is reduced to extreme rays plus lineality.
    pub fn from_generators(generators: &[FsVector], dim: usize) -> Result<Self> {
        for g in generators {
            if g.width() > dim {
                return Err(Error::Dimension(format!(
                    "generator {g} of width {} does not fit in dimension {dim}",
                    g.width()
                )));
            }
        }
        // V -> H: the dual cone is cut out by the generators as halfspace
        // normals; its minimal V-representation is exactly our H-side
        let gen_normals = insertion_order(generators);
        let (ineqs, eqs) = dd::vrep_of_constraints(dim, &gen_normals, &[]);
        // H -> V on the canonical H-side recovers extreme rays and lineality
        let (rays, lineality) = dd::vrep_of_constraints(dim, &ineqs, &eqs);
        Ok(LocalCone { dim, rays, lineality, ineqs, eqs })
    }

    /// The solution set of `<a, x> >= 0` for `a` in `ineqs` and `<b, x> = 0`
    /// for `b` in `eqs`. Redundant constraints are eliminated; the stored
    /// H-side is canonical regardless of the input presentation.
    pub fn from_constraints(ineqs: &[FsVector], eqs: &[FsVector], dim: usize) -> Result<Self> {
        for a in ineqs.iter().chain(eqs) {
            if a.width() > dim {
                return Err(Error::Dimension(format!(
                    "constraint normal {a} of width {} does not fit in dimension {dim}",
                    a.width()
                )));
            }
        }
        let (rays, lineality) =
            dd::vrep_of_constraints(dim, &insertion_order(ineqs), &insertion_order(eqs));
        let (ineqs, eqs) = dd::vrep_of_constraints(dim, &rays, &lineality);
        Ok(LocalCone { dim, rays, lineality, ineqs, eqs })
    }

    /// The dual cone `{a : <a, x> >= 0 for all x in C}`.
    ///
    /// With both sides canonical this is a representation swap: the dual's
    /// extreme rays are this cone's facet normals, the dual's lineality is
    /// spanned by this cone's implicit equations, and vice versa. The swap
    /// makes dualization exactly involutive.
    pub fn dualize(&self) -> LocalCone {
        LocalCone {
            dim: self.dim,
            rays: self.ineqs.clone(),
            lineality: self.eqs.clone(),
            ineqs: self.rays.clone(),
            eqs: self.lineality.clone(),
        }
    }

    /// Refines the cone by additional halfspaces `<a, x> >= 0`, one insertion
    /// at a time on the live double description state.
    pub fn intersect_halfspaces(&self, normals: &[FsVector]) -> Result<LocalCone> {
        for a in normals {
            if a.width() > self.dim {
                return Err(Error::Dimension(format!(
                    "halfspace normal {a} of width {} does not fit in dimension {}",
                    a.width(),
                    self.dim
                )));
            }
        }
        let mut state =
            dd::DdState::resume(self.dim, &self.ineqs, &self.eqs, &self.rays, &self.lineality);
        for a in insertion_order(normals) {
            state.insert(a.to_dense(self.dim));
        }
        let (rays, lineality) = state.into_vrep();
        let (ineqs, eqs) = dd::vrep_of_constraints(self.dim, &rays, &lineality);
        Ok(LocalCone { dim: self.dim, rays, lineality, ineqs, eqs })
    }

    /// H-side membership test. The vector must fit in the ambient dimension.
    pub fn contains(&self, v: &FsVector) -> bool {
        assert!(
            v.width() <= self.dim,
            "vector of width {} tested against dimension {}",
            v.width(),
            self.dim
        );
        self.eqs.iter().all(|b| b.dot(v).is_zero())
            && self.ineqs.iter().all(|a| !a.dot(v).is_negative())
    }

    /// Membership with certificate: exact recombination coefficients when
    /// inside, a violated constraint when outside.
    pub fn membership(&self, v: &FsVector) -> Result<Membership> {
        if v.width() > self.dim {
            return Err(Error::Dimension(format!(
                "vector of width {} tested against dimension {}",
                v.width(),
                self.dim
            )));
        }
        for b in &self.eqs {
            let val = b.dot(v);
            if !val.is_zero() {
                return Ok(Membership::Outside(crate::error::ViolatedConstraint {
                    kind: ConstraintKind::Equation,
                    normal: b.clone(),
                    value: rat_to_string(&val),
                }));
            }
        }
        for a in &self.ineqs {
            let val = a.dot(v);
            if val.is_negative() {
                return Ok(Membership::Outside(crate::error::ViolatedConstraint {
                    kind: ConstraintKind::Inequality,
                    normal: a.clone(),
                    value: rat_to_string(&val),
                }));
            }
        }
        let ray_cols: Vec<Vec<Rat>> = self.rays.iter().map(|r| r.to_dense(self.dim)).collect();
        let lin_cols: Vec<Vec<Rat>> =
            self.lineality.iter().map(|l| l.to_dense(self.dim)).collect();
        let rhs = v.to_dense(self.dim);
        let Some((lambda, mu)) = lp::conic_combination_with_free(&ray_cols, &lin_cols, &rhs)
        else {
            return Err(Error::Internal(
                "H-side accepted a vector the V-side cannot recombine".into(),
            ));
        };
        Ok(Membership::Inside(MembershipWitness {
            ray_coefficients: lambda
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            lineality_coefficients: mu
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }))
    }

    /// Set equality via mutual containment of the V-sides.
    pub fn equal(&self, other: &LocalCone) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "comparing cones of dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let forward = self.rays.iter().all(|r| other.contains(r))
            && self
                .lineality
                .iter()
                .all(|l| other.contains(l) && other.contains(&l.neg()));
        if !forward {
            return Ok(false);
        }
        Ok(other.rays.iter().all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&l.neg())))
    }

    /// Full resynchronization check: recomputes both sides from scratch and
    /// compares. Intended for tests.
    pub fn verify_synchronized(&self) -> bool {
        let gens: Vec<FsVector> = self
            .rays
            .iter()
            .chain(&self.lineality)
            .cloned()
            .chain(self.lineality.iter().map(|l| l.neg()))
            .collect();
        match LocalCone::from_generators(&gens, self.dim) {
            Ok(rebuilt) => rebuilt == *self,
            Err(_) => false,
        }
    }
}

/// Exact nonnegative coefficients expressing `target` over an explicit
/// generator list (not necessarily extreme rays), or `None` when `target`
/// is outside their conic hull. Used for witnesses that must recombine over
/// orbit elements rather than over a cone's reduced rays.
pub fn conic_witness(generators: &[FsVector], target: &FsVector, dim: usize) -> Option<Vec<Rat>> {
    if target.width() > dim || generators.iter().any(|g| g.width() > dim) {
        return None;
    }
    let cols: Vec<Vec<Rat>> = generators.iter().map(|g| g.to_dense(dim)).collect();
    lp::conic_combination(&cols, &target.to_dense(dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(ints: &[i64]) -> FsVector {
        FsVector::from_ints(ints)
    }

    #[test]
    fn orthant_round_trip() {
        let c = LocalCone::from_generators(&[fs(&[1, 0]), fs(&[0, 1])], 2).unwrap();
        assert_eq!(c.rays(), &[fs(&[0, 1]), fs(&[1, 0])]);
        assert_eq!(c.ineqs(), &[fs(&[0, 1]), fs(&[1, 0])]);
        assert!(c.eqs().is_empty() && c.lineality().is_empty());
        assert!(c.is_nonnegative());
    }

    #[test]
    fn dual_of_two_generator_cone() {
        // cone((1,2),(2,1)) has dual cone((-1,2),(2,-1))
        let c = LocalCone::from_generators(&[fs(&[1, 2]), fs(&[2, 1])], 2).unwrap();
        let d = c.dualize();
        assert_eq!(d.rays(), &[fs(&[-1, 2]), fs(&[2, -1])]);
        assert!(d.lineality().is_empty());
        assert_eq!(d.dualize(), c);
    }

    #[test]
    fn zero_cone_and_full_line_are_dual() {
        let z = LocalCone::zero(1);
        assert!(z.is_zero_cone());
        assert_eq!(z.eqs(), &[fs(&[1])]);
        let d = z.dualize();
        assert_eq!(d.lineality(), &[fs(&[1])]);
        assert!(d.ineqs().is_empty() && d.eqs().is_empty());
        assert!(d.contains(&fs(&[-7])));
        assert_eq!(d.dualize(), z);
    }

    #[test]
    fn redundant_generators_are_reduced() {
        let c = LocalCone::from_generators(
            &[fs(&[1, 0]), fs(&[0, 1]), fs(&[1, 1]), fs(&[2, 3]), fs(&[1, 0])],
            2,
        )
        .unwrap();
        assert_eq!(c.rays(), &[fs(&[0, 1]), fs(&[1, 0])]);
    }

    #[test]
    fn lineality_from_opposite_generators() {
        let c = LocalCone::from_generators(&[fs(&[1, -1]), fs(&[-1, 1]), fs(&[1, 1])], 2).unwrap();
        assert_eq!(c.lineality(), &[fs(&[1, -1])]);
        // the ray is reported modulo the lineality space: e1 + span(1,-1) covers (1,1)
        assert_eq!(c.rays(), &[fs(&[1])]);
        // the dual of a halfplane is a ray
        let d = c.dualize();
        assert_eq!(d.rays(), &[fs(&[1, 1])]);
        assert_eq!(d.eqs(), &[fs(&[1, -1])]);
    }

    #[test]
    fn intersect_orthant_with_order_halfspace() {
        let orthant = LocalCone::from_generators(&[fs(&[1, 0]), fs(&[0, 1])], 2).unwrap();
        let c = orthant.intersect_halfspaces(&[fs(&[-1, 1])]).unwrap();
        assert_eq!(c.rays(), &[fs(&[0, 1]), fs(&[1, 1])]);
    }

    #[test]
    fn intersect_dual_with_order_halfspace() {
        // cone((-1,2),(2,-1)) cut by x1 <= x2 leaves cone((-1,2),(1,1))
        let d = LocalCone::from_generators(&[fs(&[-1, 2]), fs(&[2, -1])], 2).unwrap();
        let cut = d.intersect_halfspaces(&[fs(&[-1, 1])]).unwrap();
        assert_eq!(cut.rays(), &[fs(&[-1, 2]), fs(&[1, 1])]);
    }

    #[test]
    fn membership_certificates() {
        let c = LocalCone::from_generators(&[fs(&[1, 2]), fs(&[2, 1])], 2).unwrap();
        match c.membership(&fs(&[1, 1])).unwrap() {
            Membership::Inside(w) => {
                let mut acc = FsVector::zero();
                for (i, coeff) in &w.ray_coefficients {
                    acc = acc.add(&c.rays()[*i].scale(coeff));
                }
                assert_eq!(acc, fs(&[1, 1]));
            }
            Membership::Outside(_) => panic!("(1,1) is inside"),
        }
        match c.membership(&fs(&[1, 3])).unwrap() {
            Membership::Outside(vc) => {
                assert!(vc.normal.dot(&fs(&[1, 3])).is_negative());
            }
            Membership::Inside(_) => panic!("(1,3) is outside"),
        }
    }

    #[test]
    fn equality_ignores_presentation() {
        let a = LocalCone::from_generators(&[fs(&[1, 0]), fs(&[0, 1]), fs(&[1, 1])], 2).unwrap();
        let b = LocalCone::from_constraints(&[fs(&[1, 0]), fs(&[0, 1])], &[], 2).unwrap();
        assert!(a.equal(&b).unwrap());
        let smaller = LocalCone::from_generators(&[fs(&[1, 0])], 2).unwrap();
        assert!(!a.equal(&smaller).unwrap());
        assert!(LocalCone::zero(2).equal(&LocalCone::zero(2)).unwrap());
        assert!(LocalCone::full(3).equal(&LocalCone::full(3)).unwrap());
        assert!(a.equal(&LocalCone::zero(3)).is_err());
    }

    #[test]
    fn low_dimensional_cone_has_equations() {
        let c = LocalCone::from_generators(&[fs(&[1, 1, 0])], 3).unwrap();
        assert_eq!(c.span_dim(), 1);
        assert_eq!(c.eqs().len(), 2);
        assert!(c.contains(&fs(&[2, 2, 0])));
        assert!(!c.contains(&fs(&[2, 2, 1])));
        assert!(c.verify_synchronized());
    }

    #[test]
    fn conic_witness_over_explicit_generators() {
        let gens = vec![fs(&[1, 2]), fs(&[2, 1])];
        let w = conic_witness(&gens, &fs(&[3, 3]), 2).unwrap();
        let mut acc = FsVector::zero();
        for (g, c) in gens.iter().zip(&w) {
            acc = acc.add(&g.scale(c));
        }
        assert_eq!(acc, fs(&[3, 3]));
        assert!(conic_witness(&gens, &fs(&[1, 0]), 2).is_none());
    }
}

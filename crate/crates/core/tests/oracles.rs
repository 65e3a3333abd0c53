//! Independent oracles cross-checking the geometry kernel.
//!
//! Nothing here shares code with the library's simplex or double-description
//! machinery: membership is re-decided by Fourier-Motzkin elimination,
//! planar extreme rays and duals are re-derived by angular sorting and
//! quarter-turn rotation, and small cones are compared point by point on an
//! integer grid.

mod common;

use std::collections::BTreeSet;

use equicone::cone::{conic_witness, LocalCone};
use equicone::rat::{rat_int, rat_zero, Rat};
use equicone::FsVector;
use rand::Rng;

use common::{rand_int_vec, rand_nonzero_vec, recombines, rng};

/// One inequality `a . x <= b` over the combination coefficients.
type Row = (Vec<Rat>, Rat);

fn normalize_row(mut a: Vec<Rat>, mut b: Rat) -> Row {
    let lcm = equicone::rat::denominator_lcm(a.iter().chain(std::iter::once(&b)));
    let scale = Rat::from(lcm);
    for c in a.iter_mut() {
        *c *= &scale;
    }
    b *= &scale;
    let gcd = equicone::rat::numerator_gcd(a.iter().chain(std::iter::once(&b)));
    if gcd > 0.into() {
        let inv = Rat::from(gcd);
        for c in a.iter_mut() {
            *c /= &inv;
        }
        b /= &inv;
    }
    (a, b)
}

/// Decides whether `rhs` is a nonnegative combination of `columns`, by
/// eliminating the coefficients one at a time from the system
/// `{ sum_i x_i columns[i] = rhs, x >= 0 }`.
fn fm_conic_feasible(columns: &[Vec<Rat>], rhs: &[Rat]) -> bool {
    let k = columns.len();
    let mut rows: BTreeSet<Row> = BTreeSet::new();
    for (j, r) in rhs.iter().enumerate() {
        let coeffs: Vec<Rat> = columns.iter().map(|c| c[j].clone()).collect();
        rows.insert(normalize_row(coeffs.clone(), r.clone()));
        rows.insert(normalize_row(coeffs.iter().map(|c| -c).collect(), -r.clone()));
    }
    for i in 0..k {
        let mut coeffs = vec![rat_zero(); k];
        coeffs[i] = rat_int(-1);
        rows.insert((coeffs, rat_zero()));
    }
    for var in 0..k {
        let mut kept: BTreeSet<Row> = BTreeSet::new();
        let mut pos: Vec<Row> = Vec::new();
        let mut neg: Vec<Row> = Vec::new();
        for (a, b) in rows {
            if a[var] > rat_zero() {
                pos.push((a, b));
            } else if a[var] < rat_zero() {
                neg.push((a, b));
            } else {
                kept.insert((a, b));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                // scale both rows so the eliminated coefficient cancels
                let sp = &ap[var];
                let sn = -&an[var];
                let a: Vec<Rat> =
                    (0..k).map(|j| &ap[j] / sp + &an[j] / &sn).collect();
                let b = bp / sp + bn / &sn;
                kept.insert(normalize_row(a, b));
            }
        }
        rows = kept;
    }
    rows.iter().all(|(_, b)| *b >= rat_zero())
}

fn fm_member(generators: &[FsVector], target: &FsVector, dim: usize) -> bool {
    let columns: Vec<Vec<Rat>> = generators.iter().map(|g| g.to_dense(dim)).collect();
    fm_conic_feasible(&columns, &target.to_dense(dim))
}

#[test]
fn membership_matches_elimination() {
    let mut rng = rng(0xC0FE_0001);
    for round in 0..40 {
        let dim = rng.random_range(2..=4usize);
        let count = rng.random_range(1..=5usize);
        let gens: Vec<FsVector> =
            (0..count).map(|_| rand_nonzero_vec(&mut rng, dim, -3, 3)).collect();
        let cone = LocalCone::from_generators(&gens, dim).unwrap();

        // half arbitrary points, half known members
        let target = if round % 2 == 0 {
            rand_int_vec(&mut rng, dim, -4, 4)
        } else {
            common::rand_conic_combo(&mut rng, &gens)
        };
        let oracle = fm_member(&gens, &target, dim);
        assert_eq!(
            cone.contains(&target),
            oracle,
            "membership disagrees with elimination for {target} over {gens:?}"
        );

        let witness = conic_witness(&gens, &target, dim);
        assert_eq!(witness.is_some(), oracle);
        if let Some(lambda) = witness {
            assert!(lambda.iter().all(|c| *c >= rat_zero()));
            let terms: Vec<(FsVector, Rat)> =
                gens.iter().cloned().zip(lambda).collect();
            assert!(recombines(&target, &terms));
        }
    }
}

fn cross(u: &FsVector, v: &FsVector) -> Rat {
    &u.get(1) * &v.get(2) - &u.get(2) * &v.get(1)
}

/// Extreme rays of a planar cone whose generators all have positive first
/// coordinate (so the cone is pointed and slope order is angular order).
fn planar_extremes(gens: &[FsVector]) -> BTreeSet<FsVector> {
    let shallowest = gens
        .iter()
        .reduce(|a, b| if cross(a, b) < rat_zero() { b } else { a })
        .unwrap();
    let steepest = gens
        .iter()
        .reduce(|a, b| if cross(a, b) > rat_zero() { b } else { a })
        .unwrap();
    [shallowest.primitive(), steepest.primitive()].into_iter().collect()
}

fn quarter_turn_ccw(u: &FsVector) -> FsVector {
    FsVector::from_dense(&[-u.get(2), u.get(1)])
}

fn quarter_turn_cw(u: &FsVector) -> FsVector {
    FsVector::from_dense(&[u.get(2), -u.get(1)])
}

#[test]
fn planar_extreme_rays_match_angular_sort() {
    let mut rng = rng(0xC0FE_0002);
    for _ in 0..40 {
        let count = rng.random_range(1..=5usize);
        let gens: Vec<FsVector> = (0..count)
            .map(|_| {
                let x = rng.random_range(1..=4i64);
                let y = rng.random_range(-4..=4i64);
                FsVector::from_dense(&[rat_int(x), rat_int(y)])
            })
            .collect();
        let cone = LocalCone::from_generators(&gens, 2).unwrap();
        let library: BTreeSet<FsVector> = cone.rays().iter().cloned().collect();
        assert_eq!(library, planar_extremes(&gens), "extreme rays of {gens:?}");
        assert!(cone.lineality().is_empty());
    }
}

#[test]
fn planar_duals_match_quarter_turns() {
    let mut rng = rng(0xC0FE_0003);
    for _ in 0..40 {
        let count = rng.random_range(1..=4usize);
        let gens: Vec<FsVector> = (0..count)
            .map(|_| {
                let x = rng.random_range(1..=4i64);
                let y = rng.random_range(-4..=4i64);
                FsVector::from_dense(&[rat_int(x), rat_int(y)])
            })
            .collect();
        let cone = LocalCone::from_generators(&gens, 2).unwrap();
        let dual = cone.dualize();
        let extremes: Vec<FsVector> = planar_extremes(&gens).into_iter().collect();

        if extremes.len() == 2 {
            // order the pair by angle again: the set iteration order is lexicographic
            let (u, v) = if cross(&extremes[0], &extremes[1]) > rat_zero() {
                (&extremes[0], &extremes[1])
            } else {
                (&extremes[1], &extremes[0])
            };
            let expected: BTreeSet<FsVector> = [
                quarter_turn_ccw(u).primitive(),
                quarter_turn_cw(v).primitive(),
            ]
            .into_iter()
            .collect();
            let library: BTreeSet<FsVector> = dual.rays().iter().cloned().collect();
            assert_eq!(library, expected, "dual rays of {gens:?}");
            assert!(dual.lineality().is_empty());
        } else {
            // a single ray dualizes to a halfplane whose boundary line is
            // the quarter turn of the ray, up to sign
            let u = &extremes[0];
            assert_eq!(dual.lineality().len(), 1);
            assert_eq!(
                dual.lineality()[0].primitive_signed(),
                quarter_turn_ccw(u).primitive_signed()
            );
        }

        // grid equivalence, independent of either representation
        for x in -3..=3i64 {
            for y in -3..=3i64 {
                let p = FsVector::from_dense(&[rat_int(x), rat_int(y)]);
                let valid = gens.iter().all(|g| g.dot(&p) >= rat_zero());
                assert_eq!(dual.contains(&p), valid, "dual membership of ({x},{y})");
            }
        }
    }
}

/// The published halfspace description and the defining arrangements cut the
/// same point set: checked on an integer grid with elimination as referee.
#[test]
fn published_constraints_match_the_defining_arrangements() {
    // all six arrangements of (1, 2, 0), written out by hand
    let arrangements: Vec<FsVector> = [
        [1, 2, 0],
        [1, 0, 2],
        [2, 1, 0],
        [2, 0, 1],
        [0, 1, 2],
        [0, 2, 1],
    ]
    .iter()
    .map(|v| FsVector::from_ints(v))
    .collect();
    let cone = LocalCone::from_generators(&arrangements, 3).unwrap();
    assert!(cone.verify_synchronized());

    for x in -2..=3i64 {
        for y in -2..=3i64 {
            for z in -2..=3i64 {
                let p = FsVector::from_ints(&[x, y, z]);
                let by_constraints = cone.ineqs().iter().all(|n| n.dot(&p) >= rat_zero())
                    && cone.eqs().iter().all(|n| n.dot(&p) == rat_zero());
                let by_elimination = fm_member(&arrangements, &p, 3);
                assert_eq!(by_constraints, by_elimination, "grid point ({x},{y},{z})");
            }
        }
    }
}

/// Freezes the dual-basis shapes used by the acceptance suite: for the
/// generator (1, a), the non-decreasing part of the dual slice in dimension
/// two is generated by (-1, a) and (1, 1). Both sides of the equality are
/// computed without the library: direct inequality evaluation on a grid
/// against elimination over the claimed basis.
#[test]
fn dual_basis_shapes_on_the_grid() {
    for a in 1..=3i64 {
        let slice_gens: Vec<FsVector> = if a == 1 {
            vec![FsVector::from_ints(&[1, 1])]
        } else {
            vec![FsVector::from_ints(&[1, a]), FsVector::from_ints(&[a, 1])]
        };
        let claimed = [FsVector::from_ints(&[-1, a]), FsVector::from_ints(&[1, 1])];
        for x in -4..=4i64 {
            for y in -4..=4i64 {
                let p = FsVector::from_ints(&[x, y]);
                let in_dual_nondecreasing =
                    slice_gens.iter().all(|g| g.dot(&p) >= rat_zero()) && x <= y;
                let generated = fm_member(&claimed, &p, 2);
                assert_eq!(
                    in_dual_nondecreasing, generated,
                    "a = {a}, grid point ({x},{y})"
                );
            }
        }
    }
}

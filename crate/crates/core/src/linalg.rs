//! Dense exact linear algebra over the rationals: Gaussian elimination,
//! reduced row echelon form, rank, linear solves, and null-space vectors.
//! Everything here is fraction-free in spirit but implemented directly on
//! `BigRational`, which is exact; pivoting picks the first nonzero entry so
//! results are deterministic.

use num::{One, Zero};

use crate::rat::Rat;

pub type Row = Vec<Rat>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns (increasing).
pub fn rref(rows: &[Row]) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.to_vec();
    let ncols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in &mut m {
        r.resize(ncols, Rat::zero());
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for v in &mut m[row][col..] {
            *v *= &inv;
        }
        let pivot_tail = m[row][col..].to_vec();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (dst, pv) in other[col..].iter_mut().zip(&pivot_tail) {
                    *dst -= &factor * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Row]) -> usize {
    rref(rows).1.len()
}

/// Solves `A x = b` for the column vector `x`, where `rows` are the rows of
/// `A`. Returns a particular solution with free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve(rows: &[Row], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rows.len(), b.len());
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let augmented: Vec<Row> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.resize(ncols, Rat::zero());
            row.push(bi.clone());
            row
        })
        .collect();
    let (m, pivots) = rref(&augmented);
    if pivots.contains(&ncols) {
        return None; // pivot in the constant column
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][ncols].clone();
    }
    Some(x)
}

/// A nonzero vector in the null space of `A` (columns viewed as the
/// unknowns), or `None` if the columns are linearly independent. The free
/// column chosen is the smallest, so the result is deterministic.
pub fn nullspace_vector(rows: &[Row]) -> Option<Vec<Rat>> {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let (m, pivots) = rref(rows);
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rat::zero(); ncols];
    x[free] = Rat::one();
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = -m[r][free].clone();
    }
    Some(x)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x.clone() * y.clone();
        }
    }
    acc
}

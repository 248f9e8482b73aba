//! Small dense rational linear algebra: reduced row echelon form, rank,
//! null spaces, and single-solution solves. Everything here runs on a few
//! rows of dimension at most six or so, so plain Gaussian elimination with
//! exact pivots is entirely adequate.

use num_traits::Zero;

use crate::numeric::{Rat, Vector};

/// In-place reduced row echelon form; returns the pivot column per pivot row.
pub(crate) fn rref(mat: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let sub = &mat[r][j] * &f;
                    mat[i][j] = &mat[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vector]) -> usize {
    let mut mat: Vec<Vec<Rat>> = rows.iter().map(|v| v.0.clone()).collect();
    rref(&mut mat).len()
}

/// Basis of `{ x : <row, x> = 0 for every row }` in ambient dimension `dim`.
pub(crate) fn nullspace(rows: &[Vector], dim: usize) -> Vec<Vector> {
    let mut mat: Vec<Vec<Rat>> = rows.iter().map(|v| v.0.clone()).collect();
    let pivots = rref(&mut mat);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); dim];
        v[f] = Rat::from_integer(1.into());
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -mat[r][f].clone();
        }
        basis.push(Vector(v));
    }
    basis
}

/// One solution of `A x = b` (free variables pinned to zero), or `None` if
/// the system is inconsistent.
pub(crate) fn solve(a_rows: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a_rows.len(), b.len());
    let cols = a_rows.first().map_or(0, Vec::len);
    let mut mat: Vec<Vec<Rat>> = a_rows
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut mat);
    // A pivot in the augmented column means 0 = 1 somewhere.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = mat[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_i, Vector};

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])];
        assert_eq!(rank(&rows), 2);
        assert!(nullspace(&rows, 2).is_empty());

        let rows = vec![Vector::from_ints(&[1, 1]), Vector::from_ints(&[2, 2])];
        assert_eq!(rank(&rows), 1);
        let ns = nullspace(&rows, 2);
        assert_eq!(ns.len(), 1);
        assert!(rows[0].dot(&ns[0]).is_zero());

        assert_eq!(nullspace(&[], 3).len(), 3);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = vec![
            vec![rat_i(1), rat_i(1)],
            vec![rat_i(1), rat_i(-1)],
        ];
        let x = solve(&a, &[rat_i(3), rat_i(1)]).unwrap();
        assert_eq!(x, vec![rat_i(2), rat_i(1)]);

        let a = vec![vec![rat_i(1), rat_i(1)], vec![rat_i(2), rat_i(2)]];
        assert!(solve(&a, &[rat_i(1), rat_i(3)]).is_none());
        let x = solve(&a, &[rat_i(1), rat_i(2)]).unwrap();
        assert_eq!(x, vec![rat_i(1), rat(0, 1)]);
    }
}

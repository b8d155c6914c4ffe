//! Gaussian elimination over the quaternions.
//!
//! Systems have the shape `sum_j A[r][j] u_j = b[r]`, known coefficients on the
//! left of the unknowns, so rows may be left-multiplied by scalars and
//! left-multiples of one row subtracted from another.

use crate::quat::Quaternion;

/// Reduced row echelon form of an augmented matrix; returns pivot columns.
fn rref(m: &mut [Vec<Quaternion>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|r| !m[*r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inverse().expect("nonzero pivot");
        for v in m[rank].iter_mut() {
            if !v.is_zero() {
                *v = &inv * &*v;
            }
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&f * pv);
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    pivots
}

/// One solution of `A u = b`, or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Quaternion>], b: &[Quaternion], ncols: usize) -> Option<Vec<Quaternion>> {
    let mut m: Vec<Vec<Quaternion>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(ncols, Quaternion::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols);
    if m[pivots.len()..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut u = vec![Quaternion::zero(); ncols];
    for (r, c) in pivots.iter().enumerate() {
        u[*c] = m[r][ncols].clone();
    }
    Some(u)
}

/// A basis of the right null space `{u : A u = 0}`.
pub fn kernel(a: &[Vec<Quaternion>], ncols: usize) -> Vec<Vec<Quaternion>> {
    let mut m: Vec<Vec<Quaternion>> = a
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.resize(ncols, Quaternion::zero());
            r
        })
        .collect();
    let pivots = if m.is_empty() { Vec::new() } else { rref(&mut m, ncols) };
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut u = vec![Quaternion::zero(); ncols];
        u[f] = Quaternion::one();
        for (r, c) in pivots.iter().enumerate() {
            u[*c] = -m[r][f].clone();
        }
        out.push(u);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Quaternion {
        Quaternion::from_ints(w, x, y, z)
    }

    fn apply(a: &[Vec<Quaternion>], u: &[Quaternion]) -> Vec<Quaternion> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .fold(Quaternion::zero(), |acc, (x, y)| &acc + &(x * y))
            })
            .collect()
    }

    #[test]
    fn solves_noncommutative_system() {
        let a = vec![vec![q(0, 1, 0, 0), q(0, 0, 1, 0)], vec![q(1, 0, 0, 1), q(2, 0, 0, 0)]];
        let b = vec![q(1, 2, 3, 4), q(0, 0, 1, 0)];
        let u = solve(&a, &b, 2).unwrap();
        assert_eq!(apply(&a, &u), b);
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![q(0, 1, 0, 0)], vec![q(0, 0, 0, 2)]];
        // i u = 1 forces u = -i, then 2k u = 2k(-i) = -2j
        assert!(solve(&a, &[q(1, 0, 0, 0), q(0, 0, 1, 0)], 1).is_none());
        assert!(solve(&a, &[q(1, 0, 0, 0), q(0, 0, -2, 0)], 1).is_some());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = vec![vec![q(0, 1, 0, 0), q(0, 0, 1, 0), q(1, 1, 1, 1)]];
        let ker = kernel(&a, 3);
        assert_eq!(ker.len(), 2);
        for u in &ker {
            assert!(apply(&a, u).iter().all(Quaternion::is_zero));
        }
        assert_eq!(kernel(&[], 2).len(), 2);
    }
}

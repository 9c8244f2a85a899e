//! Dense Gaussian elimination over ℚ(ζ_N).

use crate::scalars::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Reduced row echelon form; returns the reduced matrix and its pivot columns.
pub fn rref(mut a: Matrix) -> (Matrix, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a.clone()).1.len()
}

/// A basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &Matrix, cols: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(a.clone());
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&r[row][free];
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Matrix = a.iter().zip(b).map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect()).collect();
    let (r, pivots) = rref(aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][cols].clone();
    }
    Some(x)
}

pub fn mat_vec(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|row| row.iter().zip(v).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[Scalar::from_integer(3), Scalar::from_integer(1)]).unwrap();
        assert_eq!(x, vec![Scalar::from_integer(2), Scalar::from_integer(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[Scalar::one(), Scalar::one()]).is_none());
    }

    #[test]
    fn complex_entries() {
        let i = Scalar::i();
        let a = vec![vec![i.clone(), Scalar::one()], vec![Scalar::one(), -&i]];
        assert_eq!(rank(&a), 1);
    }
}

//! Exact determinants by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a square matrix. Every intermediate division is exact.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn from_i64(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(rows: &[Vec<i64>]) -> BigInt {
        determinant(from_i64(rows))
    }

    #[test]
    fn small_cases() {
        assert_eq!(det(&[]), BigInt::from(1));
        assert_eq!(det(&[vec![-7]]), BigInt::from(-7));
        assert_eq!(det(&[vec![1, 2], vec![3, 4]]), BigInt::from(-2));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
    }

    #[test]
    fn needs_pivoting() {
        let m = vec![vec![0, 0, 1], vec![0, 2, 0], vec![3, 0, 0]];
        assert_eq!(det(&m), BigInt::from(-6));
    }

    #[test]
    fn laplacian_of_k4() {
        // reduced Laplacian of K4: 16 spanning trees
        let m = vec![vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]];
        assert_eq!(det(&m), BigInt::from(16));
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = 1i64 << 40;
        let m = vec![vec![big, 1], vec![1, big]];
        let expect = BigInt::from(big) * BigInt::from(big) - 1;
        assert_eq!(det(&m), expect);
    }
}

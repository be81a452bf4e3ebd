//! Dense linear algebra over `F_p`.

use crate::algebra::PrimeField;

/// Row-reduce in place to reduced row echelon form; returns pivot columns.
pub fn rref(f: &PrimeField, m: &mut [Vec<u32>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && other[col] != 0 {
                let c = other[col];
                for (x, &y) in other.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(f: &PrimeField, m: &[Vec<u32>]) -> usize {
    let mut m = m.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{v : m·v = 0}` for an `r × ncols` matrix.
pub fn nullspace(f: &PrimeField, m: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut a = m.to_vec();
    let pivots = rref(f, &mut a);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(a[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Nonzero determinant test for a square matrix.
pub fn is_invertible(f: &PrimeField, m: &[Vec<u32>]) -> bool {
    m.iter().all(|r| r.len() == m.len()) && rank(f, m) == m.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let f = PrimeField::new(101).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(rank(&f, &m), 1);
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = (0..3).fold(0, |acc, i| f.add(acc, f.mul(m[0][i], v[i])));
            assert_eq!(dot, 0);
        }
        assert!(is_invertible(&f, &[vec![0, 1], vec![1, 0]]));
        assert!(!is_invertible(&f, &[vec![1, 1], vec![1, 1]]));
    }
}

//! Small dense Gaussian-elimination helpers.

#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

/// Solves the square system `a x = b` with partial pivoting; `None` when a
/// pivot falls below `tol`.
pub(crate) fn solve_square(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= tol {
            return None;
        }
        m.swap(col, piv);
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            if f != 0.0 {
                for k in col..=n {
                    m[i][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    Some(x)
}

/// Greedily picks rows (in the given order) that are linearly independent
/// of the rows already picked. Returns their indices.
pub(crate) fn independent_rows(rows: &[&[f64]], tol: f64) -> Vec<usize> {
    let mut basis: Vec<(Vec<f64>, usize)> = Vec::new(); // reduced row, pivot column
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.to_vec();
        for (b, p) in &basis {
            let f = r[*p] / b[*p];
            if f != 0.0 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= f * y;
                }
            }
        }
        let scale = row.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        let (p, mag) = r.iter().enumerate().fold((0, 0.0f64), |(bp, bm), (i, x)| {
            if x.abs() > bm {
                (i, x.abs())
            } else {
                (bp, bm)
            }
        });
        if mag > tol * scale {
            basis.push((r, p));
            picked.push(idx);
        }
    }
    picked
}

/// Affine parameterization `x = base + basis * z` of `{ x : E x = e }`.
#[derive(Debug, Clone)]
pub(crate) struct AffineHull {
    pub base: Vec<f64>,
    /// Columns spanning the direction space, each of length `n`.
    pub directions: Vec<Vec<f64>>,
}

impl AffineHull {
    pub fn point(&self, z: &[f64]) -> Vec<f64> {
        let mut x = self.base.clone();
        for (d, zi) in self.directions.iter().zip(z) {
            for (xk, dk) in x.iter_mut().zip(d) {
                *xk += zi * dk;
            }
        }
        x
    }
}

/// Reduced row echelon solve of `E x = e`. `None` if inconsistent beyond
/// `tol` (relative to row scale).
pub(crate) fn affine_hull(n: usize, eqs: &[(&[f64], f64)], tol: f64) -> Option<AffineHull> {
    let mut m: Vec<Vec<f64>> = eqs
        .iter()
        .map(|(a, b)| {
            let scale = a.iter().fold(0.0f64, |s, x| s.max(x.abs())).max(b.abs());
            let scale = if scale > 0.0 { scale } else { 1.0 };
            let mut r: Vec<f64> = a.iter().map(|x| x / scale).collect();
            r.push(b / scale);
            r
        })
        .collect();
    let rows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == rows {
            break;
        }
        let (piv, mag) = (r..rows).fold((r, 0.0f64), |(bi, bm), i| {
            if m[i][col].abs() > bm {
                (i, m[i][col].abs())
            } else {
                (bi, bm)
            }
        });
        if mag <= tol {
            continue;
        }
        m.swap(r, piv);
        let p = m[r][col];
        for k in 0..=n {
            m[r][k] /= p;
        }
        for i in 0..rows {
            if i != r {
                let f = m[i][col];
                if f != 0.0 {
                    for k in 0..=n {
                        m[i][k] -= f * m[r][k];
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    // rows r.. are numerically zero on the left; their rhs must vanish too
    for row in m.iter().skip(r) {
        if row[n].abs() > tol * 10.0 {
            return None;
        }
    }
    let mut base = vec![0.0; n];
    for (i, &c) in pivots.iter().enumerate() {
        base[c] = m[i][n];
    }
    let mut directions = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut d = vec![0.0; n];
        d[free] = 1.0;
        for (i, &c) in pivots.iter().enumerate() {
            d[c] = -m[i][free];
        }
        directions.push(d);
    }
    Some(AffineHull { base, directions })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_solve() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_square(&a, &[3.0, 5.0], 1e-12).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
        assert!(solve_square(&[vec![1.0, 1.0], vec![2.0, 2.0]], &[1.0, 2.0], 1e-12).is_none());
    }

    #[test]
    fn hull_of_line() {
        let h = affine_hull(3, &[(&[0.5, -0.5, 0.0], 0.0)], 1e-12).unwrap();
        assert_eq!(h.directions.len(), 2);
        let p = h.point(&[0.7, -0.2]);
        assert!((p[0] - p[1]).abs() < 1e-15);
        assert!(affine_hull(1, &[(&[1.0], 1.0), (&[1.0], 2.0)], 1e-12).is_none());
    }

    #[test]
    fn independence() {
        let rows: [&[f64]; 3] = [&[1.0, 0.0], &[2.0, 0.0], &[0.0, 1.0]];
        assert_eq!(independent_rows(&rows, 1e-12), vec![0, 2]);
    }
}

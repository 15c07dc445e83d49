//! Small dense exact and floating-point kernels used by the projection code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Fraction-free (Bareiss) row reduction of an integer matrix.
///
/// Returns the pivot columns, i.e. a maximal set of linearly independent
/// columns chosen greedily from the left.
pub fn pivot_columns(mat: &[Vec<BigInt>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let mut prev = BigInt::from(1);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `g · x = rhs` for a nonsingular integer matrix `g` by fraction-free
/// Gauss–Jordan elimination; the only division into rationals happens at the
/// end. `rhs` is given column-major as a list of right-hand sides.
pub fn solve_fraction_free(g: &[Vec<BigInt>], rhs: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = g.len();
    let m = rhs.len();
    // Augmented matrix [g | rhs].
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = g[i].clone();
            row.extend(rhs.iter().map(|col| col[i].clone()));
            row
        })
        .collect();
    let width = n + m;
    let mut prev = BigInt::from(1);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        for i in 0..n {
            if i == c {
                continue;
            }
            for j in 0..width {
                if j == c {
                    continue;
                }
                let v = (&a[c][c] * &a[i][j] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    // Every diagonal entry now equals ±det(g).
    Some(
        (0..m)
            .map(|col| {
                (0..n)
                    .map(|i| BigRational::new(a[i][n + col].clone(), a[i][i].clone()))
                    .collect()
            })
            .collect(),
    )
}

/// Modified Gram–Schmidt on the given vectors. Vectors whose remaining norm
/// falls below `tol` times their original norm are dropped.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let norm0 = dot(v, v).sqrt();
        if norm0 == 0.0 {
            continue;
        }
        let mut u = v.clone();
        // Two passes keep the basis orthogonal to working precision.
        for _ in 0..2 {
            for q in &basis {
                let d = dot(&u, q);
                for (x, y) in u.iter_mut().zip(q) {
                    *x -= d * y;
                }
            }
        }
        let norm = dot(&u, &u).sqrt();
        if norm > tol * norm0 {
            for x in &mut u {
                *x /= norm;
            }
            basis.push(u);
        }
    }
    basis
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

//! Small dense complex linear algebra used by the solvers.
//!
//! Systems here are tiny (order ≤ a few dozen), so plain Gaussian
//! elimination with partial pivoting is both adequate and transparent.

use crate::C64;
use ndarray::{Array1, Array2};

/// Solves `A x = b` in place for a square complex system.
///
/// Returns `None` when a pivot falls below `tol` times the largest
/// element of its column (numerically rank deficient).
pub fn solve(a: &Array2<C64>, b: &Array1<C64>, tol: f64) -> Option<Array1<C64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    assert_eq!(n, b.len());
    let mut m = a.clone();
    let mut rhs = b.clone();

    for col in 0..n {
        let (piv, piv_mag) = (col..n)
            .map(|r| (r, m[[r, col]].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        let col_scale = (0..n).map(|r| m[[r, col]].norm()).fold(0.0, f64::max);
        if piv_mag <= tol * col_scale.max(1e-300) {
            return None;
        }
        if piv != col {
            for j in 0..n {
                m.swap([piv, j], [col, j]);
            }
            rhs.swap(piv, col);
        }
        let d = m[[col, col]];
        for r in col + 1..n {
            let f = m[[r, col]] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = m[[col, j]];
                m[[r, j]] -= f * v;
            }
            let v = rhs[col];
            rhs[r] -= f * v;
        }
    }
    // Back substitution.
    let mut x = Array1::zeros(n);
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for j in row + 1..n {
            acc -= m[[row, j]] * x[j];
        }
        x[row] = acc / m[[row, row]];
    }
    Some(x)
}

/// Least-squares solution of an overdetermined `A x ≈ b` via the normal
/// equations `AᴴA x = Aᴴ b`. Fine for the well-conditioned, tiny systems
/// produced by OMP refits and Prony amplitude fits.
pub fn lstsq(a: &Array2<C64>, b: &Array1<C64>, tol: f64) -> Option<Array1<C64>> {
    let (rows, cols) = a.dim();
    assert_eq!(rows, b.len());
    let mut gram = Array2::zeros((cols, cols));
    let mut rhs = Array1::zeros(cols);
    for i in 0..cols {
        for j in 0..cols {
            let mut acc = C64::new(0.0, 0.0);
            for r in 0..rows {
                acc += a[[r, i]].conj() * a[[r, j]];
            }
            gram[[i, j]] = acc;
        }
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..rows {
            acc += a[[r, i]].conj() * b[r];
        }
        rhs[i] = acc;
    }
    solve(&gram, &rhs, tol)
}

/// One unit-norm vector from the null space of a wide matrix (rows < cols),
/// found by eliminating to row-echelon form and back-solving with the last
/// free column pinned to 1.
pub fn null_vector(a: &Array2<C64>) -> Option<Array1<C64>> {
    let (rows, cols) = a.dim();
    assert!(rows < cols, "null_vector expects a wide matrix");
    let mut m = a.clone();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (piv, mag) = (row..rows)
            .map(|r| (r, m[[r, col]].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        let scale = m.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if mag <= 1e-12 * scale.max(1e-300) {
            continue; // free column
        }
        if piv != row {
            for j in 0..cols {
                m.swap([piv, j], [row, j]);
            }
        }
        let d = m[[row, col]];
        for r in 0..rows {
            if r == row {
                continue;
            }
            let f = m[[r, col]] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..cols {
                let v = m[[row, j]];
                m[[r, j]] -= f * v;
            }
        }
        pivot_cols.push((row, col));
        row += 1;
    }
    // Choose the highest-index free column as the pinned one.
    let pivset: Vec<usize> = pivot_cols.iter().map(|&(_, c)| c).collect();
    let free = (0..cols).rev().find(|c| !pivset.contains(c))?;
    let mut x = Array1::zeros(cols);
    x[free] = C64::new(1.0, 0.0);
    for &(r, c) in pivot_cols.iter().rev() {
        let mut acc = C64::new(0.0, 0.0);
        for j in c + 1..cols {
            acc += m[[r, j]] * x[j];
        }
        x[c] = -acc / m[[r, c]];
    }
    let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    Some(x.mapv(|v| v / norm))
}

/// Roots of a complex polynomial `c[0] + c[1] z + ... + c[n] z^n` by
/// Durand-Kerner iteration. Degrees here are small (≤ ~8) and roots lie
/// near the unit circle, where the iteration is well behaved.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    assert!(n >= 1 && coeffs[n].norm() > 0.0);
    // Monic normalization.
    let monic: Vec<C64> = coeffs.iter().map(|c| c / coeffs[n]).collect();
    let eval = |z: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    // Standard starting points: powers of a point neither real nor unimodular.
    let g = C64::new(0.4, 0.9);
    let mut z: Vec<C64> = (0..n).map(|i| g.powu(i as u32 + 1)).collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // Perturb coincident iterates.
                z[i] += C64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn solve_known_system() {
        let a = array![[c(2.0, 0.0), c(0.0, 1.0)], [c(0.0, -1.0), c(3.0, 0.0)]];
        let x_true = array![c(1.0, 2.0), c(-0.5, 0.25)];
        let b = array![
            a[[0, 0]] * x_true[0] + a[[0, 1]] * x_true[1],
            a[[1, 0]] * x_true[0] + a[[1, 1]] * x_true[1],
        ];
        let x = solve(&a, &b, 1e-12).unwrap();
        for i in 0..2 {
            assert!((x[i] - x_true[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn solve_flags_singular() {
        let a = array![[c(1.0, 0.0), c(2.0, 0.0)], [c(2.0, 0.0), c(4.0, 0.0)]];
        let b = array![c(1.0, 0.0), c(2.0, 0.0)];
        assert!(solve(&a, &b, 1e-10).is_none());
    }

    #[test]
    fn null_vector_annihilates() {
        let a = array![
            [c(1.0, 0.0), c(0.5, 0.5), c(0.0, 2.0), c(1.0, -1.0)],
            [c(0.0, 1.0), c(1.0, 0.0), c(1.0, 1.0), c(2.0, 0.0)],
            [c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)],
        ];
        let v = null_vector(&a).unwrap();
        for r in 0..3 {
            let mut acc = c(0.0, 0.0);
            for j in 0..4 {
                acc += a[[r, j]] * v[j];
            }
            assert!(acc.norm() < 1e-10, "row {r} residual {}", acc.norm());
        }
    }

    #[test]
    fn roots_of_unimodular_quadratic() {
        // (z - e^{i0.3})(z - e^{-i1.1})
        let r1 = C64::from_polar(1.0, 0.3);
        let r2 = C64::from_polar(1.0, -1.1);
        let coeffs = vec![r1 * r2, -(r1 + r2), c(1.0, 0.0)];
        let mut roots = poly_roots(&coeffs);
        roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        let mut expect = [r2, r1];
        expect.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        for (got, want) in roots.iter().zip(expect.iter()) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn lstsq_recovers_exact_fit() {
        // 4 equations, 2 unknowns, consistent system.
        let a = array![
            [c(1.0, 0.0), c(0.0, 1.0)],
            [c(1.0, 1.0), c(2.0, 0.0)],
            [c(0.0, -1.0), c(1.0, 0.5)],
            [c(3.0, 0.0), c(0.0, 0.0)],
        ];
        let x_true = array![c(0.5, -1.0), c(2.0, 0.5)];
        let mut b = Array1::zeros(4);
        for r in 0..4 {
            b[r] = a[[r, 0]] * x_true[0] + a[[r, 1]] * x_true[1];
        }
        let x = lstsq(&a, &b, 1e-12).unwrap();
        for i in 0..2 {
            assert!((x[i] - x_true[i]).norm() < 1e-10);
        }
    }
}

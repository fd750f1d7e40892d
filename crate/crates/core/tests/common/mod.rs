//! Independent reference implementations used as test oracles. Nothing here
//! calls into the crate's solvers.
#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<f64> {
    let a = gaussian_matrix(rng, d, d);
    (&a + a.transpose()) * 0.5
}

/// Sparse-ish ground truth plus Gaussian noise.
pub fn random_problem(rng: &mut ChaCha8Rng, n: usize, d: usize) -> (DMatrix<f64>, DVector<f64>) {
    let x = gaussian_matrix(rng, n, d);
    let theta = DVector::from_fn(d, |j, _| if j % 3 == 0 { rng.random_range(-2.0..2.0) } else { 0.0 });
    let noise = DVector::from_fn(n, |_, _| 0.3 * rng.sample::<f64, _>(StandardNormal));
    let y = &x * theta + noise;
    (x, y)
}

fn soft(z: f64, t: f64) -> f64 {
    z.signum() * (z.abs() - t).max(0.0)
}

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
fn top_eigenvalue(a: &[Vec<f64>]) -> f64 {
    let d = a.len();
    let mut v = vec![1.0 / (d as f64).sqrt(); d];
    let mut value = 0.0;
    for _ in 0..10_000 {
        let w: Vec<f64> = (0..d).map(|i| (0..d).map(|j| a[i][j] * v[j]).sum()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm;
        v = w.into_iter().map(|x| x / norm).collect();
        if (next - value).abs() <= 1e-15 * next {
            return next;
        }
        value = next;
    }
    value
}

/// Proximal gradient (ISTA) on `(1/(2n))||y - Xθ||² + λ||θ||₁` with step
/// `1/L`, run until the iterates stop moving. Converges linearly when
/// `XᵀX/n` is well conditioned, so callers should use `n > d`.
pub fn proximal_gradient(x: &DMatrix<f64>, y: &DVector<f64>, lambda: f64) -> Vec<f64> {
    let (n, d) = x.shape();
    let nf = n as f64;
    let gram: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| (0..n).map(|r| x[(r, i)] * x[(r, j)]).sum::<f64>() / nf).collect())
        .collect();
    let xty: Vec<f64> = (0..d).map(|j| (0..n).map(|r| x[(r, j)] * y[r]).sum::<f64>() / nf).collect();
    let step = 1.0 / top_eigenvalue(&gram);
    let mut theta = vec![0.0; d];
    for _ in 0..5_000_000 {
        let grad: Vec<f64> = (0..d)
            .map(|i| (0..d).map(|j| gram[i][j] * theta[j]).sum::<f64>() - xty[i])
            .collect();
        let next: Vec<f64> = (0..d).map(|j| soft(theta[j] - step * grad[j], step * lambda)).collect();
        let change = next.iter().zip(&theta).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        theta = next;
        if change < 1e-14 {
            break;
        }
    }
    theta
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let d = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        assert!(p.abs() > 1e-300, "singular matrix");
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..d {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for c in 0..2 * d {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    m.into_iter().map(|r| r[d..].to_vec()).collect()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let d = a.nrows();
    let mut m: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| a[(i, j)]).collect()).collect();
    for _ in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..d {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..d {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..d).map(|i| m[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

pub fn to_rows(a: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..a.nrows()).map(|i| a.row(i).iter().copied().collect()).collect()
}

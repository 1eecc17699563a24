//! Small dense linear algebra: complex square matrices, power iteration for
//! the largest singular value and cyclic Jacobi for symmetric eigenvalues.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::fmt_real;

pub const POWER_REL_TOL: f64 = 1e-12;
pub const POWER_MAX_ITER: usize = 10_000;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense complex `n × n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_real(n: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), n * n);
        CMatrix {
            n,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.n + col] = v;
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.n + col] += v;
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|c| c.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol))
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `M† v`.
    pub fn adjoint_mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for (i, row) in self.data.chunks(self.n.max(1)).take(self.n).enumerate() {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * v[i];
            }
        }
        out
    }

    /// `M† M`.
    pub fn gram(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// One line per row. Real matrices print plain entries; complex ones
    /// print `re:im` pairs.
    pub fn to_text(&self) -> String {
        let real = self.is_real();
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let c = self.get(i, j);
                    if real {
                        fmt_real(c.re)
                    } else {
                        format!("{}:{}", fmt_real(c.re), fmt_real(c.im))
                    }
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerEstimate {
    pub sigma: f64,
    pub iterations: usize,
}

/// Largest singular value by power iteration on `M†M`.
///
/// The start vector is deterministic (all ones plus a small index-weighted
/// perturbation). The Rayleigh quotient of `M†M` never exceeds `σ_max²`, so
/// the estimate is a lower bound that increases towards `σ_max`. Iteration
/// stops once the quotient changes by at most [`POWER_REL_TOL`] relative.
///
/// If the plain iteration stalls on a nearly degenerate top of the spectrum,
/// it continues from the last iterate on `(M†M)^(2^j)` formed by repeated
/// squaring. The reported value is still the Rayleigh quotient of `M†M`.
pub fn sigma_max(m: &CMatrix) -> Result<PowerEstimate> {
    let n = m.dim();
    if n == 0 || m.max_abs() == 0.0 {
        return Ok(PowerEstimate {
            sigma: 0.0,
            iterations: 0,
        });
    }
    let mut v = start_vector(n);
    if vec_norm(&m.mul_vec(&v)) == 0.0 {
        // start vector in the kernel; restart on the heaviest column
        let j = (0..n)
            .max_by(|&a, &b| column_norm(m, a).total_cmp(&column_norm(m, b)))
            .unwrap_or(0);
        v = vec![Complex64::new(0.0, 0.0); n];
        v[j] = Complex64::new(1.0, 0.0);
    }
    normalize(&mut v);

    let plain = iterate(m, v, PLAIN_BUDGET, |w| m.adjoint_mul_vec(&m.mul_vec(w)));
    let (v, lambda) = match plain {
        Ok((sigma, iterations)) => return Ok(PowerEstimate { sigma, iterations }),
        Err(stalled) => stalled,
    };

    let not_converged = |lambda: f64| Error::NotConverged {
        iterations: POWER_MAX_ITER,
        estimate: lambda.sqrt(),
    };
    let (mut v, mut lambda, mut used) = (v, lambda, PLAIN_BUDGET);
    let mut accel = m.gram();
    for _ in 0..ACCEL_ROUNDS {
        for _ in 0..SQUARINGS_PER_ROUND {
            accel = accel.matmul(&accel);
            let scale = accel.max_abs();
            if scale == 0.0 || !scale.is_finite() {
                return Err(not_converged(lambda));
            }
            accel.data.iter_mut().for_each(|x| *x /= scale);
        }
        let budget = ROUND_BUDGET.min(POWER_MAX_ITER - used);
        match iterate(m, v, budget, |w| accel.mul_vec(w)) {
            Ok((sigma, iterations)) => {
                return Ok(PowerEstimate {
                    sigma,
                    iterations: used + iterations,
                })
            }
            Err(stalled) => (v, lambda) = stalled,
        }
        used += budget;
    }
    Err(not_converged(lambda))
}

/// Plain iterations before switching to powers of `M†M`. Each later round
/// squares four more times (up to `(M†M)^(2^32)`) and iterates again; all
/// rounds share the [`POWER_MAX_ITER`] budget.
const PLAIN_BUDGET: usize = 1_000;
const ROUND_BUDGET: usize = 1_125;
const SQUARINGS_PER_ROUND: usize = 4;
const ACCEL_ROUNDS: usize = 8;

/// All ones plus `0.1·cos(i+1)`. Ramps such as `i` or `frac(iφ)` are exactly
/// orthogonal to sign characters of some finite groups under ShortLex order
/// (B2's `++----++` pattern), which hides the top singular vector. Since
/// `cos 1` is transcendental, no nonzero vector with algebraic entries is
/// orthogonal to this perturbation.
fn start_vector(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| Complex64::new(1.0 + 0.1 * ((i + 1) as f64).cos(), 0.0))
        .collect()
}

/// Runs `v ← step(v)/‖step(v)‖` while tracking `‖Mv‖²`. Returns `(σ, iterations)`
/// on convergence, otherwise the last iterate and quotient.
fn iterate(
    m: &CMatrix,
    mut v: Vec<Complex64>,
    budget: usize,
    step: impl Fn(&[Complex64]) -> Vec<Complex64>,
) -> std::result::Result<(f64, usize), (Vec<Complex64>, f64)> {
    let mut previous = 0.0;
    let mut lambda = 0.0;
    for it in 1..=budget {
        lambda = m.mul_vec(&v).iter().map(|c| c.norm_sqr()).sum::<f64>();
        let w = step(&v);
        let nw = vec_norm(&w);
        if nw == 0.0 || (it > 1 && (lambda - previous).abs() <= POWER_REL_TOL * lambda) {
            return Ok((lambda.sqrt(), it));
        }
        v = w.into_iter().map(|x| x / nw).collect();
        previous = lambda;
    }
    Err((v, lambda))
}

fn normalize(v: &mut [Complex64]) {
    let nv = vec_norm(v);
    v.iter_mut().for_each(|x| *x /= nv);
}

fn column_norm(m: &CMatrix, j: usize) -> f64 {
    (0..m.dim()).map(|i| m.get(i, j).norm_sqr()).sum()
}

/// Eigenvalues of a real symmetric matrix (row-major `n × n`) by cyclic
/// Jacobi rotations, sorted ascending.
pub fn jacobi_eigenvalues(n: usize, matrix: &[f64]) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if frob == 0.0 {
        return vec![0.0; n];
    }
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Eigenvalues of a Hermitian matrix, sorted ascending. `A + iB` is embedded
/// as the real symmetric `[[A, -B], [B, A]]`, whose spectrum is that of
/// `A + iB` with every eigenvalue doubled.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let n = h.dim();
    if h.is_real() {
        let re: Vec<f64> = (0..n * n).map(|k| h.get(k / n, k % n).re).collect();
        return jacobi_eigenvalues(n, &re);
    }
    let m = 2 * n;
    let mut big = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let c = h.get(i, j);
            big[i * m + j] = c.re;
            big[(i + n) * m + (j + n)] = c.re;
            big[i * m + (j + n)] = -c.im;
            big[(i + n) * m + j] = c.im;
        }
    }
    jacobi_eigenvalues(m, &big).into_iter().step_by(2).collect()
}

/// Largest singular value from a full eigensolve of `M†M`.
pub fn sigma_max_exact(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(&m.gram())
        .last()
        .map(|&l| l.max(0.0).sqrt())
        .unwrap_or(0.0)
}

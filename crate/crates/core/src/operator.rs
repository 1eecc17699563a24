//! Finite sections of convolution operators and spectral certificates.
//!
//! `P_N λ(f) P_N` is the restriction of `λ(f)` to the span of `δ_g`,
//! `g ∈ B_N`. Its norm bounds `‖λ(f)‖` from below and increases to it with
//! `N`; `‖f‖₁` bounds it from above.

use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::GroupFunction;
use crate::coxeter::{Ball, CoxeterGroup, GroupElement};
use crate::error::Result;
use crate::format::fmt_word;
use crate::linalg::{jacobi_eigenvalues, sigma_max, sigma_max_exact, CMatrix};
use crate::semigroup::heat_weight;

/// Relative tolerance for the PSD / NSD verdicts.
pub const DEFINITENESS_REL_TOL: f64 = 1e-8;
/// Slack allowed in the Schur contraction comparison.
pub const SCHUR_TOL: f64 = 1e-9;
/// Largest group the full regular-representation oracle will handle.
pub const ORACLE_CAP: usize = 512;

/// Matrix of `P_N λ(f) P_N` in the ShortLex-ordered `δ`-basis of `B_N`:
/// `M[z][x] = f(z x⁻¹)`.
#[derive(Debug, Clone)]
pub struct CompressionMatrix {
    pub radius: usize,
    pub basis: Vec<GroupElement>,
    pub matrix: CMatrix,
}

impl CompressionMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis line followed by the row-major matrix dump.
    pub fn to_text(&self) -> String {
        let basis: Vec<String> = self.basis.iter().map(|g| fmt_word(g.word())).collect();
        format!("basis = {}\n{}", basis.join(","), self.matrix.to_text())
    }
}

fn regular_matrix(f: &GroupFunction, ball: &Ball) -> Result<CMatrix> {
    let group = f.group();
    let n = ball.len();
    let radius = ball.radius();
    let mut m = CMatrix::zeros(n);
    for (col, x) in ball.elements().iter().enumerate() {
        for (g, c) in f.terms() {
            if g.length() > radius + x.length() {
                continue;
            }
            let z = group.multiply(g, x)?;
            if let Some(row) = ball.index_of(&z) {
                m.add_to(row, col, *c);
            }
        }
    }
    Ok(m)
}

pub fn compression(f: &GroupFunction, radius: usize) -> Result<CompressionMatrix> {
    let ball = f.group().ball(radius)?;
    let matrix = regular_matrix(f, &ball)?;
    Ok(CompressionMatrix {
        radius,
        basis: ball.elements().to_vec(),
        matrix,
    })
}

/// `σ_max` of the compression by power iteration.
pub fn compressed_norm(m: &CompressionMatrix) -> Result<f64> {
    Ok(sigma_max(&m.matrix)?.sigma)
}

/// Certified bracket `lower ≤ ‖λ(f)‖ ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormInterval {
    pub lower: f64,
    pub upper: f64,
    pub radius: usize,
    /// `‖P_N λ(f) P_N‖` as computed.
    pub compressed: f64,
    pub l2: f64,
    pub iterations: usize,
}

impl NormInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// `lower = max(‖f‖₂, ‖P_N λ(f) P_N‖)`, `upper = ‖f‖₁`.
pub fn norm_interval(f: &GroupFunction, radius: usize) -> Result<NormInterval> {
    let norms = f.norms(0);
    let m = compression(f, radius)?;
    let est = sigma_max(&m.matrix)?;
    // power iteration is a lower estimate; clamp the rounding residue so the
    // bracket stays ordered
    let lower = norms.l2.max(est.sigma).min(norms.l1);
    Ok(NormInterval {
        lower,
        upper: norms.l1,
        radius,
        compressed: est.sigma,
        l2: norms.l2,
        iterations: est.iterations,
    })
}

/// `‖λ(f)‖` from the full regular representation of a finite group.
pub fn exact_norm_finite_group(f: &GroupFunction) -> Result<f64> {
    let group = (**f.group())
        .clone()
        .with_ball_cap(ORACLE_CAP.min(f.group().ball_cap()));
    let whole = group.enumerate_finite()?;
    let m = regular_matrix(f, &whole)?;
    Ok(sigma_max_exact(&m))
}

/// Word-metric kernel `l(g⁻¹h)` over a ball, row-major.
pub fn length_kernel(group: &CoxeterGroup, ball: &Ball) -> Result<Vec<usize>> {
    let n = ball.len();
    let inverses: Vec<GroupElement> = ball
        .elements()
        .iter()
        .map(|g| group.inverse(g))
        .collect::<Result<_>>()?;
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = group.multiply(&inverses[i], &ball.elements()[j])?.length();
            out[i * n + j] = d;
            out[j * n + i] = d;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramReport {
    pub dim: usize,
    pub min_eigenvalue: f64,
    pub max_entry: f64,
    pub verdict: bool,
}

/// Positive semidefiniteness of `[e^{-t l(g⁻¹h)}]` over `B_N`.
pub fn gram_psd(group: &Arc<CoxeterGroup>, t: f64, radius: usize) -> Result<GramReport> {
    crate::semigroup::check_time(t)?;
    let ball = group.ball(radius)?;
    let n = ball.len();
    let gram: Vec<f64> = length_kernel(group, &ball)?
        .into_iter()
        .map(|l| heat_weight(t, l))
        .collect();
    let max_entry = gram.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let min_eigenvalue = jacobi_eigenvalues(n, &gram)[0];
    Ok(GramReport {
        dim: n,
        min_eigenvalue,
        max_entry,
        verdict: min_eigenvalue >= -DEFINITENESS_REL_TOL * max_entry,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegDefReport {
    pub dim: usize,
    /// Largest eigenvalue of `L` restricted to mean-zero vectors; `None` when
    /// that subspace is `{0}`.
    pub max_eigenvalue: Option<f64>,
    pub max_entry: f64,
    pub verdict: bool,
}

/// Conditional negative definiteness of `L = [l(g⁻¹h)]` over `B_N`: the form
/// restricted to `Σ x_g = 0` must be `⪯ 0`. The restriction is taken in the
/// orthonormal Helmert basis of the mean-zero subspace.
pub fn negdef_check(group: &Arc<CoxeterGroup>, radius: usize) -> Result<NegDefReport> {
    let ball = group.ball(radius)?;
    let n = ball.len();
    let kernel: Vec<f64> = length_kernel(group, &ball)?.into_iter().map(|l| l as f64).collect();
    let max_entry = kernel.iter().fold(0.0f64, |a, &x| a.max(x));
    if n < 2 {
        return Ok(NegDefReport {
            dim: n,
            max_eigenvalue: None,
            max_entry,
            verdict: true,
        });
    }

    // column k-1 of Q (k = 1..n-1): (1, …, 1, -k, 0, …) / sqrt(k(k+1))
    let m = n - 1;
    let q = |i: usize, k: usize| -> f64 {
        let norm = ((k * (k + 1)) as f64).sqrt();
        match i.cmp(&k) {
            std::cmp::Ordering::Less => 1.0 / norm,
            std::cmp::Ordering::Equal => -(k as f64) / norm,
            std::cmp::Ordering::Greater => 0.0,
        }
    };
    // L Q, then Qᵀ (L Q)
    let mut lq = vec![0.0; n * m];
    for i in 0..n {
        for c in 0..m {
            let k = c + 1;
            lq[i * m + c] = (0..=k).map(|r| kernel[i * n + r] * q(r, k)).sum();
        }
    }
    let mut projected = vec![0.0; m * m];
    for a in 0..m {
        for b in 0..m {
            let k = a + 1;
            projected[a * m + b] = (0..=k).map(|r| q(r, k) * lq[r * m + b]).sum();
        }
    }
    // symmetrise rounding noise before the eigensolve
    for a in 0..m {
        for b in a + 1..m {
            let avg = 0.5 * (projected[a * m + b] + projected[b * m + a]);
            projected[a * m + b] = avg;
            projected[b * m + a] = avg;
        }
    }
    let top = *jacobi_eigenvalues(m, &projected).last().expect("m >= 1");
    Ok(NegDefReport {
        dim: n,
        max_eigenvalue: Some(top),
        max_entry,
        verdict: top <= DEFINITENESS_REL_TOL * max_entry,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurReport {
    pub lhs: f64,
    pub rhs: f64,
    pub verdict: bool,
}

/// `‖P_N λ(φ_t·f) P_N‖ ≤ ‖P_N λ(f) P_N‖`. The left compression is the Schur
/// product of the PSD unit-diagonal matrix `[φ_t(z x⁻¹)]` with the right one,
/// so the inequality holds exactly at every finite radius.
pub fn schur_contraction_check(t: f64, f: &GroupFunction, radius: usize) -> Result<SchurReport> {
    crate::semigroup::check_time(t)?;
    let damped = f.pointwise_mul(|g| heat_weight(t, g.length()));
    let lhs = compressed_norm(&compression(&damped, radius)?)?;
    let rhs = compressed_norm(&compression(f, radius)?)?;
    Ok(SchurReport {
        lhs,
        rhs,
        verdict: lhs <= rhs + SCHUR_TOL,
    })
}

/// Dense `f(z x⁻¹)` entry lookup, used by tests and the CLI dump.
pub fn entry(m: &CompressionMatrix, z: &GroupElement, x: &GroupElement) -> Option<Complex64> {
    let row = m.basis.iter().position(|g| g == z)?;
    let col = m.basis.iter().position(|g| g == x)?;
    Some(m.matrix.get(row, col))
}

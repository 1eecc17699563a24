//! Heat multipliers `M_t λ(f) = λ(φ_t·f)`, `φ_t(g) = e^{-t l(g)}`, and the
//! compactness machinery built on them.
//!
//! Rapid-decay constants `(C, k)` enter the truncation estimates
//! `‖λ(φ_t f) - λ(φ_{n,t} f)‖ ≤ C sup_{l>n} e^{-tl}(1+l)^k ‖λ(f)‖`. No explicit
//! values are known for general Coxeter groups, so they are configuration and
//! every report that depends on them says so.

use std::fmt;

use num_complex::Complex64;

use crate::algebra::GroupFunction;
use crate::coxeter::{CoxeterGroup, GroupElement};
use crate::error::{Error, Result};
use crate::operator::{compressed_norm, compression, norm_interval, NormInterval};

/// Rounding slack for comparisons between a computed compression norm and an
/// analytic bound.
const BOUND_SLACK: f64 = 1e-12;

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("t must be a positive real, got {t}")))
    }
}

/// `e^{-t·l}`.
pub fn heat_weight(t: f64, length: usize) -> f64 {
    (-t * length as f64).exp()
}

/// `φ_t`, or its truncation `φ_{n,t}` which vanishes beyond length `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatParams {
    pub t: f64,
    pub truncation: Option<usize>,
}

impl HeatParams {
    pub fn new(t: f64, truncation: Option<usize>) -> Result<Self> {
        check_time(t)?;
        Ok(HeatParams { t, truncation })
    }

    pub fn weight(&self, g: &GroupElement) -> f64 {
        match self.truncation {
            Some(n) if g.length() > n => 0.0,
            _ => heat_weight(self.t, g.length()),
        }
    }
}

pub fn heat_apply(p: &HeatParams, f: &GroupFunction) -> GroupFunction {
    f.pointwise_mul(|g| p.weight(g))
}

/// Rapid-decay constants: `‖λ(f)‖ ≤ C (Σ |f(g)|² (1+l(g))^{2k})^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdConstants {
    pub c: f64,
    pub k: u32,
}

impl Default for RdConstants {
    fn default() -> Self {
        RdConstants { c: 1.0, k: 2 }
    }
}

impl RdConstants {
    pub fn new(c: f64, k: u32) -> Result<Self> {
        if c > 0.0 && c.is_finite() {
            Ok(RdConstants { c, k })
        } else {
            Err(Error::InvalidArgument(format!("C must be a positive real, got {c}")))
        }
    }
}

/// `sup_{l > n} e^{-tl} (1+l)^k` over integer lengths.
pub fn tail_sup(t: f64, k: u32, n: usize) -> f64 {
    let log_h = |l: f64| -t * l + k as f64 * (1.0 + l).ln();
    let first = (n + 1) as f64;
    // the continuous profile peaks at k/t - 1
    let peak = k as f64 / t - 1.0;
    let mut best = log_h(first);
    if peak > first {
        best = best.max(log_h(peak.floor())).max(log_h(peak.ceil()));
    }
    best.exp()
}

/// Smallest `n` with `C · tail_sup(t, k, n) ≤ threshold`.
pub fn minimal_truncation(t: f64, rd: &RdConstants, threshold: f64) -> Result<usize> {
    check_time(t)?;
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    let ok = |n: usize| rd.c * tail_sup(t, rd.k, n) <= threshold;
    if ok(0) {
        return Ok(0);
    }
    const LIMIT: usize = 1 << 50;
    let mut hi = 1;
    while !ok(hi) {
        if hi >= LIMIT {
            return Err(Error::InvalidArgument("truncation radius exceeds 2^50".into()));
        }
        hi *= 2;
    }
    // ok(lo) false, ok(hi) true
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorReport {
    /// `‖P_N λ((φ_t·f - f)/t + l·f) P_N‖`.
    pub value: f64,
    /// `(t/2) · max_{supp f} l² · ‖f‖₁`.
    pub bound: f64,
}

/// Finite-difference check of the generator `λ(f) ↦ -λ(l·f)`.
pub fn generator_check(f: &GroupFunction, t: f64, radius: usize) -> Result<GeneratorReport> {
    check_time(t)?;
    let residual = f.pointwise_mul(|g| {
        let l = g.length() as f64;
        (-t * l).exp_m1() / t + l
    });
    let value = compressed_norm(&compression(&residual, radius)?)?;
    let max_l = f.max_length() as f64;
    let bound = 0.5 * t * max_l * max_l * f.norms(0).l1;
    Ok(GeneratorReport { value, bound })
}

/// Parameters of the approximating family `ψ_m = φ_{n,t}`: `t = 1/m` and the
/// minimal `n` with `C sup_{l>n} e^{-tl}(1+l)^k ≤ min(2, 1/m)`.
pub fn psi_params(m: usize, rd: &RdConstants) -> Result<HeatParams> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let t = 1.0 / m as f64;
    let threshold = (1.0 / m as f64).min(2.0);
    let n = minimal_truncation(t, rd, threshold)?;
    HeatParams::new(t, Some(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KStatus {
    CertifiedIn,
    CertifiedOut,
    Undetermined,
}

impl fmt::Display for KStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KStatus::CertifiedIn => "CERTIFIED_IN",
            KStatus::CertifiedOut => "CERTIFIED_OUT",
            KStatus::Undetermined => "UNDETERMINED",
        })
    }
}

/// Membership verdict for `K = {λ(f) : ‖λ(f)‖ ≤ 1, ‖λ(l·f)‖ ≤ 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KVerdict {
    pub status: KStatus,
    pub norm: NormInterval,
    pub weighted_norm: NormInterval,
}

pub fn k_membership(f: &GroupFunction, radius: usize) -> Result<KVerdict> {
    let norm = norm_interval(f, radius)?;
    let weighted_norm = norm_interval(&f.length_weighted(), radius)?;
    let status = if norm.upper <= 1.0 && weighted_norm.upper <= 1.0 {
        KStatus::CertifiedIn
    } else if norm.lower > 1.0 || weighted_norm.lower > 1.0 {
        KStatus::CertifiedOut
    } else {
        KStatus::Undetermined
    };
    Ok(KVerdict {
        status,
        norm,
        weighted_norm,
    })
}

/// Truncation schedule of the ε-net: `t = ε/2`, then the minimal `n` with
/// `C sup_{l>n} e^{-tl}(1+l)^k ≤ ε/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsNetSchedule {
    pub eps: f64,
    pub t: f64,
    pub n: usize,
    /// `sup_{l>n} e^{-tl}(1+l)^k`.
    pub tail: f64,
    /// `C (tail + 1)`: bound on `‖λ(φ_{n,t}·f)‖` for `f ∈ K`.
    pub radius_bound: f64,
}

pub fn epsnet_schedule(eps: f64, rd: &RdConstants) -> Result<EpsNetSchedule> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "eps must be a positive real, got {eps}"
        )));
    }
    let t = eps / 2.0;
    let n = minimal_truncation(t, rd, eps / 2.0)?;
    let tail = tail_sup(t, rd.k, n);
    Ok(EpsNetSchedule {
        eps,
        t,
        n,
        tail,
        radius_bound: rd.c * (tail + 1.0),
    })
}

/// The schedule together with the dimension `|B_n|` of the span that carries
/// the net.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsNetParams {
    pub schedule: EpsNetSchedule,
    pub dimension: usize,
}

pub fn epsnet_params(group: &CoxeterGroup, eps: f64, rd: &RdConstants) -> Result<EpsNetParams> {
    let schedule = epsnet_schedule(eps, rd)?;
    let ball = group.ball(schedule.n).map_err(|e| match e {
        Error::CapExceeded { cap, .. } => Error::NetTooLarge {
            required_n: schedule.n,
            cap,
        },
        other => other,
    })?;
    Ok(EpsNetParams {
        schedule,
        dimension: ball.len(),
    })
}

#[derive(Debug, Clone)]
pub struct EpsNetReport {
    pub schedule: EpsNetSchedule,
    pub membership: KVerdict,
    /// `φ_{n,t}·f`.
    pub approximant: GroupFunction,
    /// `t · upper‖λ(l·f)‖`.
    pub heat_term: f64,
    /// `C · tail · upper‖λ(f)‖`.
    pub tail_term: f64,
    pub analytic_bound: f64,
    /// `‖P_N λ(f - φ_{n,t} f) P_N‖`.
    pub empirical_distance: f64,
    /// `‖P_N λ(f - φ_t f) P_N‖`.
    pub heat_distance: f64,
    /// `‖P_N λ(φ_t f - φ_{n,t} f) P_N‖`.
    pub tail_distance: f64,
    pub empirical_within_bound: bool,
    /// Only meaningful for certified members of `K`.
    pub bound_within_eps: Option<bool>,
}

impl EpsNetReport {
    pub fn passed(&self) -> bool {
        self.empirical_within_bound && self.bound_within_eps.unwrap_or(true)
    }
}

pub fn epsnet_verify(f: &GroupFunction, eps: f64, rd: &RdConstants, radius: usize) -> Result<EpsNetReport> {
    let schedule = epsnet_schedule(eps, rd)?;
    let membership = k_membership(f, radius)?;
    if membership.status == KStatus::CertifiedOut {
        return Err(Error::InvalidArgument("function is certified outside K".into()));
    }
    let heat = HeatParams::new(schedule.t, None)?;
    let truncated = HeatParams::new(schedule.t, Some(schedule.n))?;
    let smoothed = heat_apply(&heat, f);
    let approximant = heat_apply(&truncated, f);

    let heat_term = schedule.t * membership.weighted_norm.upper;
    let tail_term = rd.c * schedule.tail * membership.norm.upper;
    let analytic_bound = heat_term + tail_term;

    let dist =
        |a: &GroupFunction, b: &GroupFunction| -> Result<f64> { compressed_norm(&compression(&a.sub(b)?, radius)?) };
    let empirical_distance = dist(f, &approximant)?;
    let heat_distance = dist(f, &smoothed)?;
    let tail_distance = dist(&smoothed, &approximant)?;

    let bound_within_eps = (membership.status == KStatus::CertifiedIn).then_some(analytic_bound <= eps);
    Ok(EpsNetReport {
        schedule,
        membership,
        approximant,
        heat_term,
        tail_term,
        analytic_bound,
        empirical_distance,
        heat_distance,
        tail_distance,
        empirical_within_bound: empirical_distance <= analytic_bound + BOUND_SLACK,
        bound_within_eps,
    })
}

/// `h = m·k_part + c·δ_e` with `k_part ∈ K`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub m: u64,
    pub c: Complex64,
    pub k_part: GroupFunction,
    pub certificate: KVerdict,
}

impl Decomposition {
    pub fn reconstruct(&self) -> GroupFunction {
        let scaled = self.k_part.scale(Complex64::new(self.m as f64, 0.0));
        let identity = GroupFunction::delta(self.k_part.group().clone(), GroupElement::identity()).scale(self.c);
        scaled.add(&identity).expect("same context")
    }
}

/// Splits off the identity coefficient and scales the rest into `K` using
/// the `ℓ¹` upper bounds: `m = ⌈max(‖h'‖₁, ‖l·h'‖₁)⌉`, `h' = h - h(e) δ_e`.
/// If rounding in `h'/m` pushes an upper bound past 1, `m` is bumped by one.
pub fn decompose(h: &GroupFunction, radius: usize) -> Result<Decomposition> {
    let e = GroupElement::identity();
    let c = h.get(&e);
    let rest = h.without(&e);
    if rest.is_zero() {
        let k_part = GroupFunction::zero(h.group().clone());
        let certificate = k_membership(&k_part, radius)?;
        return Ok(Decomposition {
            m: 0,
            c,
            k_part,
            certificate,
        });
    }
    let upper = rest.norms(0).l1.max(rest.length_weighted().norms(0).l1);
    let mut m = upper.ceil().max(1.0) as u64;
    loop {
        let k_part = rest.scale(Complex64::new(1.0 / m as f64, 0.0));
        let certificate = k_membership(&k_part, radius)?;
        if certificate.status == KStatus::CertifiedIn {
            return Ok(Decomposition {
                m,
                c,
                k_part,
                certificate,
            });
        }
        if m as f64 > upper + 1.0 {
            return Err(Error::InvariantViolation(format!(
                "scaled remainder not certified in K at m = {m}"
            )));
        }
        m += 1;
    }
}

/// `max_f lower‖λ(f)‖ / sobolev_k(f)`: a lower bound on the best rapid-decay
/// constant for exponent `k`. Zero samples are skipped.
pub fn rd_estimate(samples: &[GroupFunction], k: u32, radius: usize) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("rd_estimate needs at least one sample".into()));
    }
    let mut best = 0.0f64;
    for f in samples {
        let sob = f.norms(k).sobolev;
        if sob == 0.0 {
            continue;
        }
        best = best.max(norm_interval(f, radius)?.lower / sob);
    }
    Ok(best)
}

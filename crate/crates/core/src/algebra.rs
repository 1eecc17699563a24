//! Finitely supported functions `f: G → ℂ`, the symbols of convolution
//! operators `λ(f) h = f ∗ h` on `ℓ²(G)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;

use crate::coxeter::{CoxeterGroup, GroupElement};
use crate::error::{Error, Result};
use crate::format::{fmt_real, fmt_word, parse_word};

/// `ℓ¹`, `ℓ²` and the weighted norm `(Σ |f(g)|² (1 + l(g))^{2k})^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
    pub sobolev: f64,
}

/// A finitely supported complex function on a Coxeter group. Terms are kept in
/// ShortLex order of their support points; exact zeros are never stored.
#[derive(Debug, Clone)]
pub struct GroupFunction {
    group: Arc<CoxeterGroup>,
    terms: BTreeMap<GroupElement, Complex64>,
}

impl PartialEq for GroupFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.terms == other.terms
    }
}

impl GroupFunction {
    pub fn zero(group: Arc<CoxeterGroup>) -> Self {
        GroupFunction {
            group,
            terms: BTreeMap::new(),
        }
    }

    /// Point mass `δ_g`.
    pub fn delta(group: Arc<CoxeterGroup>, g: GroupElement) -> Self {
        Self::from_terms(group, [(g, Complex64::new(1.0, 0.0))])
    }

    /// Sums coefficients of coinciding elements and drops exact zeros.
    pub fn from_terms<I>(group: Arc<CoxeterGroup>, terms: I) -> Self
    where
        I: IntoIterator<Item = (GroupElement, Complex64)>,
    {
        let mut map: BTreeMap<GroupElement, Complex64> = BTreeMap::new();
        for (g, c) in terms {
            *map.entry(g).or_default() += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        GroupFunction { group, terms: map }
    }

    /// Parses the function file format: one `<word> <re> <im>` term per line,
    /// `word` being `e` or dash-separated 1-based generators. Words are reduced
    /// on load and coefficients of coinciding elements are summed.
    pub fn parse(group: Arc<CoxeterGroup>, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: lineno + 1, msg };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [word, re, im] = tokens.as_slice() else {
                return Err(err(format!("expected `<word> <re> <im>`, found `{line}`")));
            };
            let word = parse_word(word).map_err(err)?;
            let re: f64 = re.parse().map_err(|_| err(format!("invalid real part `{re}`")))?;
            let im: f64 = im.parse().map_err(|_| err(format!("invalid imaginary part `{im}`")))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(err("coefficients must be finite".into()));
            }
            let g = group.reduce(&word).map_err(|e| match e {
                Error::IndexOutOfRange { .. } => err(e.to_string()),
                other => other,
            })?;
            terms.push((g, Complex64::new(re, im)));
        }
        Ok(Self::from_terms(group, terms))
    }

    /// Serialises in the function file format with 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (g, c) in &self.terms {
            let _ = writeln!(out, "{} {} {}", fmt_word(g.word()), fmt_real(c.re), fmt_real(c.im));
        }
        out
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn get(&self, g: &GroupElement) -> Complex64 {
        self.terms.get(g).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Complex64)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length in the support (0 for the zero function).
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(GroupElement::length).max().unwrap_or(0)
    }

    fn same_context(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `f ∗ h (y) = Σ_x f(x) h(x⁻¹y)`. Products are accumulated in ShortLex
    /// order of the left support, then of the right support.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut acc: BTreeMap<GroupElement, Complex64> = BTreeMap::new();
        for (x, a) in &self.terms {
            for (z, b) in &other.terms {
                let y = self.group.multiply(x, z)?;
                *acc.entry(y).or_default() += a * b;
            }
        }
        acc.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(GroupFunction {
            group: self.group.clone(),
            terms: acc,
        })
    }

    /// `f*(g) = conj(f(g⁻¹))`, so that `λ(f)* = λ(f*)`.
    pub fn adjoint(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (g, c) in &self.terms {
            terms.insert(self.group.inverse(g)?, c.conj());
        }
        Ok(GroupFunction {
            group: self.group.clone(),
            terms,
        })
    }

    /// Coefficientwise product `φ·f`.
    pub fn pointwise_mul(&self, phi: impl Fn(&GroupElement) -> f64) -> Self {
        let terms = self.terms.iter().map(|(g, c)| (g.clone(), c * phi(g)));
        Self::from_terms(self.group.clone(), terms)
    }

    /// `l·f`.
    pub fn length_weighted(&self) -> Self {
        self.pointwise_mul(|g| g.length() as f64)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self.terms.iter().map(|(g, v)| (g.clone(), v * c));
        Self::from_terms(self.group.clone(), terms)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(g, c)| (g.clone(), *c));
        Ok(Self::from_terms(self.group.clone(), terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Drops the term at `g`.
    pub fn without(&self, g: &GroupElement) -> Self {
        let mut terms = self.terms.clone();
        terms.remove(g);
        GroupFunction {
            group: self.group.clone(),
            terms,
        }
    }

    pub fn norms(&self, k: u32) -> Norms {
        let mut l1 = 0.0;
        let mut l2sq = 0.0;
        let mut wsq = 0.0;
        for (g, c) in &self.terms {
            let abs2 = c.norm_sqr();
            l1 += c.norm();
            l2sq += abs2;
            wsq += abs2 * (1.0 + g.length() as f64).powi(2 * k as i32);
        }
        Norms {
            l1,
            l2: l2sq.sqrt(),
            sobolev: wsq.sqrt(),
        }
    }
}

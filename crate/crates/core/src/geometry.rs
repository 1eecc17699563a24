//! The geometric (reflection) representation of a Coxeter group.
//!
//! `V` has basis `{α_s}` and carries the symmetric form `B(α_s, α_t) =
//! -cos(π / m(s,t))` (or `-1` when `m = ∞`). Each generator acts by the
//! reflection `σ_s ξ = ξ - 2 B(α_s, ξ) α_s`. All root bookkeeping works on the
//! doubled form `2B`, which is integral whenever every `m(s,t)` lies in
//! `{2, 3, ∞}`; in that case roots have integer coordinates and arithmetic is
//! exact.
//!
//! Left inversion sets `N(g) = {β > 0 : σ(g⁻¹) β < 0}` stand in for the walls
//! separating the fundamental chamber from its translate by `g`. They are
//! enumerated along a reduced word `r₁⋯r_k` as `β_i = r₁⋯r_{i-1}(α_{r_i})`.

use std::f64::consts::PI;
use std::fmt;

use crate::coxeter::matrix::{BraidOrder, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::format::fmt_real;

/// Sign band for float-mode root sign tests.
pub const SIGN_TOL: f64 = 1e-9;
/// Two float-mode roots closer than this in max-norm are the same root.
pub const ROOT_EQ_TOL: f64 = 1e-6;
/// Distinct float-mode roots in one inversion set must be further apart than this.
pub const ROOT_SEPARATION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    /// Integer coordinates; requires a crystallographic matrix.
    Exact,
    /// Double precision.
    Float,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// A vector of `V` in simple-root coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum RootVector {
    Exact(Vec<i64>),
    Float(Vec<f64>),
}

impl RootVector {
    pub fn mode(&self) -> ScalarMode {
        match self {
            RootVector::Exact(_) => ScalarMode::Exact,
            RootVector::Float(_) => ScalarMode::Float,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            RootVector::Exact(v) => v.len(),
            RootVector::Float(v) => v.len(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            RootVector::Exact(v) => v.iter().map(|&x| x as f64).collect(),
            RootVector::Float(v) => v.clone(),
        }
    }

    /// Hashable key: exact coordinates, or float coordinates quantized to
    /// the [`ROOT_EQ_TOL`] grid.
    pub fn key(&self) -> Vec<i64> {
        match self {
            RootVector::Exact(v) => v.clone(),
            RootVector::Float(v) => v.iter().map(|x| (x / ROOT_EQ_TOL).round() as i64).collect(),
        }
    }

    /// Root equality: exact in exact mode, max-norm within [`ROOT_EQ_TOL`] otherwise.
    pub fn same_root(&self, other: &RootVector) -> bool {
        match (self, other) {
            (RootVector::Exact(a), RootVector::Exact(b)) => a == b,
            (RootVector::Float(a), RootVector::Float(b)) => a.len() == b.len() && max_dist(a, b) <= ROOT_EQ_TOL,
            _ => false,
        }
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self {
            RootVector::Exact(v) => v.iter().map(|x| x.to_string()).collect(),
            RootVector::Float(v) => v.iter().map(|&x| fmt_real(x)).collect(),
        };
        f.write_str(&parts.join(" "))
    }
}

fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Coordinate arithmetic shared by the exact and float kernels.
pub(crate) trait Scalar: Copy + PartialEq + fmt::Debug {
    const ZERO: Self;
    const ONE: Self;
    fn add(self, rhs: Self) -> Result<Self>;
    fn mul(self, rhs: Self) -> Result<Self>;
    fn neg(self) -> Self;
    /// `Some(true)` beyond the positive band, `Some(false)` beyond the negative
    /// band, `None` inside it.
    fn positive(self) -> Option<bool>;
    fn tol() -> f64;
    fn wrap(v: Vec<Self>) -> RootVector;
    fn unwrap(v: &RootVector) -> Option<&[Self]>;
    fn to_f64(self) -> f64;
}

impl Scalar for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;

    fn add(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }

    fn mul(self, rhs: Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }

    fn neg(self) -> Self {
        -self
    }

    fn positive(self) -> Option<bool> {
        match self {
            0 => None,
            x => Some(x > 0),
        }
    }

    fn tol() -> f64 {
        0.0
    }

    fn wrap(v: Vec<Self>) -> RootVector {
        RootVector::Exact(v)
    }

    fn unwrap(v: &RootVector) -> Option<&[Self]> {
        match v {
            RootVector::Exact(x) => Some(x),
            RootVector::Float(_) => None,
        }
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    fn add(self, rhs: Self) -> Result<Self> {
        finite(self + rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self> {
        finite(self * rhs)
    }

    fn neg(self) -> Self {
        -self
    }

    fn positive(self) -> Option<bool> {
        if self > SIGN_TOL {
            Some(true)
        } else if self < -SIGN_TOL {
            Some(false)
        } else {
            None
        }
    }

    fn tol() -> f64 {
        SIGN_TOL
    }

    fn wrap(v: Vec<Self>) -> RootVector {
        RootVector::Float(v)
    }

    fn unwrap(v: &RootVector) -> Option<&[Self]> {
        match v {
            RootVector::Float(x) => Some(x),
            RootVector::Exact(_) => None,
        }
    }

    fn to_f64(self) -> f64 {
        self
    }
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Overflow)
    }
}

/// Sign of a root, enforcing sign coherence.
pub(crate) fn root_sign<F: Scalar>(v: &[F]) -> Result<Sign> {
    let mut pos = false;
    let mut neg = false;
    for &x in v {
        match x.positive() {
            Some(true) => pos = true,
            Some(false) => neg = true,
            None => {}
        }
    }
    match (pos, neg) {
        (true, false) => Ok(Sign::Positive),
        (false, true) => Ok(Sign::Negative),
        (false, false) => Err(Error::NumericAmbiguity { tol: F::tol() }),
        (true, true) => Err(Error::SignIncoherent {
            coords: F::wrap(v.to_vec()).to_string(),
        }),
    }
}

fn roots_close<F: Scalar>(a: &[F], b: &[F]) -> bool {
    F::wrap(a.to_vec()).same_root(&F::wrap(b.to_vec()))
}

/// Doubled Gram matrix `2B` in one scalar type.
#[derive(Debug, Clone)]
pub(crate) struct Reflections<F> {
    rank: usize,
    two_b: Vec<F>,
}

/// `σ(w)` for a word `w`, stored column-major: column `t` is `w(α_t)`.
#[derive(Debug, Clone)]
struct Frame<F> {
    rank: usize,
    cols: Vec<F>,
}

#[allow(clippy::needless_range_loop)]
impl<F: Scalar> Frame<F> {
    fn identity(rank: usize) -> Self {
        let mut cols = vec![F::ZERO; rank * rank];
        for i in 0..rank {
            cols[i * rank + i] = F::ONE;
        }
        Frame { rank, cols }
    }

    fn col(&self, t: usize) -> &[F] {
        &self.cols[t * self.rank..(t + 1) * self.rank]
    }

    /// `self ← self · σ_s`.
    fn right_mul(&mut self, refl: &Reflections<F>, s: usize) -> Result<()> {
        let r = self.rank;
        let col_s: Vec<F> = self.col(s).to_vec();
        for t in 0..r {
            if t == s {
                continue;
            }
            let c = refl.two_b[s * r + t];
            if c == F::ZERO {
                continue;
            }
            for a in 0..r {
                let idx = t * r + a;
                self.cols[idx] = self.cols[idx].add(c.mul(col_s[a])?.neg())?;
            }
        }
        for a in 0..r {
            self.cols[s * r + a] = col_s[a].neg();
        }
        Ok(())
    }
}

#[allow(clippy::needless_range_loop)]
impl<F: Scalar> Reflections<F> {
    fn simple_root(&self, s: usize) -> Vec<F> {
        let mut v = vec![F::ZERO; self.rank];
        v[s] = F::ONE;
        v
    }

    /// `2B(x, y)`.
    fn form2(&self, x: &[F], y: &[F]) -> Result<F> {
        let r = self.rank;
        let mut acc = F::ZERO;
        for a in 0..r {
            if x[a] == F::ZERO {
                continue;
            }
            let mut row = F::ZERO;
            for b in 0..r {
                row = row.add(self.two_b[a * r + b].mul(y[b])?)?;
            }
            acc = acc.add(x[a].mul(row)?)?;
        }
        Ok(acc)
    }

    /// In-place `v ← σ_s v`; only coordinate `s` changes.
    fn reflect(&self, s: usize, v: &mut [F]) -> Result<()> {
        let r = self.rank;
        let mut c = F::ZERO;
        for t in 0..r {
            c = c.add(self.two_b[s * r + t].mul(v[t])?)?;
        }
        v[s] = v[s].add(c.neg())?;
        Ok(())
    }

    /// Reflection in an arbitrary unit root `beta`: `v - 2B(β, v) β`.
    fn reflect_in(&self, beta: &[F], v: &mut [F]) -> Result<()> {
        let c = self.form2(beta, v)?;
        for (x, &b) in v.iter_mut().zip(beta) {
            *x = x.add(c.mul(b)?.neg())?;
        }
        Ok(())
    }

    /// `σ(word) v`; the rightmost letter acts first.
    fn apply_word(&self, word: &[usize], v: &mut [F]) -> Result<()> {
        for &s in word.iter().rev() {
            self.reflect(s, v)?;
        }
        Ok(())
    }

    /// Reduced word for `word` by strong exchange: scan left to right keeping a
    /// reduced prefix `w` and its crossing roots; appending `s` with
    /// `w(α_s) < 0` deletes the unique letter whose crossing root is `-w(α_s)`.
    fn reduce(&self, word: &[usize]) -> Result<Vec<usize>> {
        let mut letters: Vec<usize> = Vec::with_capacity(word.len());
        let mut crossing: Vec<Vec<F>> = Vec::with_capacity(word.len());
        let mut frame = Frame::identity(self.rank);

        for &s in word {
            let image = frame.col(s).to_vec();
            match root_sign(&image)? {
                Sign::Positive => {
                    letters.push(s);
                    crossing.push(image);
                }
                Sign::Negative => {
                    let target: Vec<F> = image.iter().map(|x| x.neg()).collect();
                    let i = crossing
                        .iter()
                        .position(|beta| roots_close(beta, &target))
                        .ok_or_else(|| {
                            Error::InvariantViolation(format!(
                                "no crossing root of the prefix matches {}",
                                F::wrap(target.clone())
                            ))
                        })?;
                    let beta = crossing.remove(i);
                    letters.remove(i);
                    for later in crossing.iter_mut().skip(i) {
                        self.reflect_in(&beta, later)?;
                        if root_sign(later)? != Sign::Positive {
                            return Err(Error::InvariantViolation(
                                "crossing root turned negative after exchange".into(),
                            ));
                        }
                    }
                }
            }
            frame.right_mul(self, s)?;
        }
        Ok(letters)
    }

    /// ShortLex-least reduced word of the element represented by `word`, by
    /// repeatedly stripping the smallest left descent. Left descents of `g` are
    /// read off the columns of `σ(g⁻¹)`.
    fn shortlex(&self, word: &[usize]) -> Result<Vec<usize>> {
        let mut frame = Frame::identity(self.rank);
        for &s in word.iter().rev() {
            frame.right_mul(self, s)?;
        }
        let mut out = Vec::with_capacity(word.len());
        loop {
            let mut descent = None;
            for s in 0..self.rank {
                if root_sign(frame.col(s))? == Sign::Negative {
                    descent = Some(s);
                    break;
                }
            }
            let Some(s) = descent else { break };
            if out.len() == word.len() {
                return Err(Error::InvariantViolation(
                    "descent extraction exceeded the input word length".into(),
                ));
            }
            out.push(s);
            frame.right_mul(self, s)?;
        }
        Ok(out)
    }

    fn inversion_set(&self, word: &[usize]) -> Result<Vec<Vec<F>>> {
        let mut frame = Frame::identity(self.rank);
        let mut roots = Vec::with_capacity(word.len());
        for &s in word {
            let beta = frame.col(s).to_vec();
            if root_sign(&beta)? != Sign::Positive {
                return Err(Error::InvariantViolation(
                    "inversion set requested for a non-reduced word".into(),
                ));
            }
            roots.push(beta);
            frame.right_mul(self, s)?;
        }
        Ok(roots)
    }
}

#[derive(Debug, Clone)]
enum Kernel {
    Exact(Reflections<i64>),
    Float(Reflections<f64>),
}

macro_rules! dispatch {
    ($self:expr, $k:ident => $body:expr) => {
        match &$self.kernel {
            Kernel::Exact($k) => $body,
            Kernel::Float($k) => $body,
        }
    };
}

/// The bilinear form `B` together with the reflection kernel built from it.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    rank: usize,
    entries: Vec<f64>,
    kernel: Kernel,
}

impl BilinearForm {
    /// Builds the form. `mode = None` picks exact arithmetic when the matrix
    /// is crystallographic and float otherwise.
    pub fn new(matrix: &CoxeterMatrix, mode: Option<ScalarMode>) -> Result<Self> {
        let rank = matrix.rank();
        let mode = match mode {
            Some(ScalarMode::Exact) if !matrix.is_crystallographic() => return Err(Error::ExactModeUnavailable),
            Some(m) => m,
            None if matrix.is_crystallographic() => ScalarMode::Exact,
            None => ScalarMode::Float,
        };

        let mut entries = vec![0.0; rank * rank];
        let mut exact = vec![0i64; rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                let (b, b2) = if i == j {
                    (1.0, 2)
                } else {
                    match matrix.order(i, j) {
                        BraidOrder::Finite(2) => (0.0, 0),
                        BraidOrder::Finite(3) => (-0.5, -1),
                        BraidOrder::Infinite => (-1.0, -2),
                        BraidOrder::Finite(m) => (-(PI / m as f64).cos(), 0),
                    }
                };
                entries[i * rank + j] = b;
                exact[i * rank + j] = b2;
            }
        }

        let kernel = match mode {
            ScalarMode::Exact => Kernel::Exact(Reflections { rank, two_b: exact }),
            ScalarMode::Float => Kernel::Float(Reflections {
                rank,
                two_b: entries.iter().map(|b| 2.0 * b).collect(),
            }),
        };
        Ok(BilinearForm { rank, entries, kernel })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> ScalarMode {
        match self.kernel {
            Kernel::Exact(_) => ScalarMode::Exact,
            Kernel::Float(_) => ScalarMode::Float,
        }
    }

    /// `B(α_i, α_j)` as a double.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.rank + j]
    }

    pub fn simple_root(&self, s: usize) -> RootVector {
        dispatch!(self, k => Scalar::wrap(k.simple_root(s)))
    }

    /// `B(x, y)` evaluated in double precision.
    pub fn eval(&self, x: &RootVector, y: &RootVector) -> Result<f64> {
        dispatch!(self, k => {
            let x = Scalar::unwrap(x).filter(|v| v.len() == self.rank).ok_or(Error::RootMismatch)?;
            let y = Scalar::unwrap(y).filter(|v| v.len() == self.rank).ok_or(Error::RootMismatch)?;
            Ok(k.form2(x, y)?.to_f64() / 2.0)
        })
    }

    pub fn sign(&self, v: &RootVector) -> Result<Sign> {
        match v {
            RootVector::Exact(x) => root_sign(x),
            RootVector::Float(x) => root_sign(x),
        }
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&s| s >= self.rank) {
            Some(&s) => Err(Error::IndexOutOfRange {
                index: s + 1,
                rank: self.rank,
            }),
            None => Ok(()),
        }
    }

    /// `σ(word) v` with `σ(s₁⋯s_k) = σ_{s₁} ∘ ⋯ ∘ σ_{s_k}`.
    pub fn apply_word(&self, word: &[usize], v: &RootVector) -> Result<RootVector> {
        self.check_word(word)?;
        dispatch!(self, k => {
            let mut out = Scalar::unwrap(v)
                .filter(|x| x.len() == self.rank)
                .ok_or(Error::RootMismatch)?
                .to_vec();
            k.apply_word(word, &mut out)?;
            Ok(Scalar::wrap(out))
        })
    }

    /// True iff `l(s·g) < l(g)`, where `word` is a reduced word for `g`.
    pub fn is_left_descent(&self, s: usize, word: &[usize]) -> Result<bool> {
        self.check_word(word)?;
        self.check_word(&[s])?;
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        let image = self.apply_word(&rev, &self.simple_root(s))?;
        Ok(self.sign(&image)? == Sign::Negative)
    }

    /// True iff `l(g·s) < l(g)`, where `word` is a reduced word for `g`.
    pub fn is_right_descent(&self, word: &[usize], s: usize) -> Result<bool> {
        self.check_word(&[s])?;
        let image = self.apply_word(word, &self.simple_root(s))?;
        Ok(self.sign(&image)? == Sign::Negative)
    }

    /// Some reduced word for the element spelled by `word` (strong exchange).
    pub fn reduce(&self, word: &[usize]) -> Result<Vec<usize>> {
        self.check_word(word)?;
        dispatch!(self, k => k.reduce(word))
    }

    /// The ShortLex-least reduced word for the element spelled by `word`.
    pub fn shortlex(&self, word: &[usize]) -> Result<Vec<usize>> {
        self.check_word(word)?;
        dispatch!(self, k => k.shortlex(word))
    }

    /// Left inversion set of the element with reduced word `word`, in word
    /// order. Roots are checked to be pairwise distinct; in float mode they must
    /// also be separated by more than [`ROOT_SEPARATION`].
    pub fn inversion_set(&self, word: &[usize]) -> Result<Vec<RootVector>> {
        self.check_word(word)?;
        let roots: Vec<RootVector> = dispatch!(self, k => k
            .inversion_set(word)?
            .into_iter()
            .map(Scalar::wrap)
            .collect());
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let clash = match (&roots[i], &roots[j]) {
                    (RootVector::Exact(a), RootVector::Exact(b)) => a == b,
                    (RootVector::Float(a), RootVector::Float(b)) => max_dist(a, b) <= ROOT_SEPARATION,
                    _ => unreachable!(),
                };
                if clash {
                    return Err(Error::DuplicateRoot { first: i, second: j });
                }
            }
        }
        Ok(roots)
    }
}

/// Size of the symmetric difference of two root sets.
pub fn symmetric_difference(a: &[RootVector], b: &[RootVector]) -> usize {
    let common = a.iter().filter(|x| b.iter().any(|y| x.same_root(y))).count();
    a.len() + b.len() - 2 * common
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> BilinearForm {
        BilinearForm::new(&CoxeterMatrix::dihedral(BraidOrder::Finite(3)).unwrap(), None).unwrap()
    }

    fn b2() -> BilinearForm {
        BilinearForm::new(&CoxeterMatrix::dihedral(BraidOrder::Finite(4)).unwrap(), None).unwrap()
    }

    #[test]
    fn mode_selection() {
        assert_eq!(a2().mode(), ScalarMode::Exact);
        assert_eq!(b2().mode(), ScalarMode::Float);
        let b2m = CoxeterMatrix::dihedral(BraidOrder::Finite(4)).unwrap();
        assert_eq!(
            BilinearForm::new(&b2m, Some(ScalarMode::Exact)).unwrap_err(),
            Error::ExactModeUnavailable
        );
        let forced = BilinearForm::new(
            &CoxeterMatrix::dihedral(BraidOrder::Finite(3)).unwrap(),
            Some(ScalarMode::Float),
        )
        .unwrap();
        assert_eq!(forced.mode(), ScalarMode::Float);
    }

    #[test]
    fn form_entries() {
        let f = a2();
        assert_eq!(f.entry(0, 0), 1.0);
        assert_eq!(f.entry(0, 1), -0.5);
        let g = b2();
        assert!((g.entry(0, 1) + 0.5f64.sqrt()).abs() < 1e-15);
        let dinf = BilinearForm::new(&CoxeterMatrix::dihedral(BraidOrder::Infinite).unwrap(), None).unwrap();
        assert_eq!(dinf.entry(1, 0), -1.0);
    }

    #[test]
    fn reflection_negates_own_root() {
        let f = a2();
        let out = f.apply_word(&[0], &f.simple_root(0)).unwrap();
        assert_eq!(out, RootVector::Exact(vec![-1, 0]));
    }

    #[test]
    fn empty_word_is_identity() {
        let f = a2();
        let v = RootVector::Exact(vec![3, -7]);
        assert_eq!(f.apply_word(&[], &v).unwrap(), v);
    }

    #[test]
    fn a2_reflection_of_other_root() {
        let f = a2();
        assert_eq!(
            f.apply_word(&[0], &f.simple_root(1)).unwrap(),
            RootVector::Exact(vec![1, 1])
        );
    }

    #[test]
    fn apply_word_rejects_bad_input() {
        let f = a2();
        assert!(matches!(
            f.apply_word(&[2], &f.simple_root(0)),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        ));
        assert_eq!(
            f.apply_word(&[0], &RootVector::Float(vec![1.0, 0.0])),
            Err(Error::RootMismatch)
        );
        assert_eq!(
            f.apply_word(&[0], &RootVector::Exact(vec![1])),
            Err(Error::RootMismatch)
        );
    }

    #[test]
    fn descents() {
        let f = a2();
        assert!(f.is_left_descent(0, &[0, 1]).unwrap());
        assert!(!f.is_left_descent(1, &[0, 1]).unwrap());
        assert!(!f.is_left_descent(0, &[]).unwrap());
        assert!(!f.is_left_descent(1, &[]).unwrap());
        assert!(f.is_right_descent(&[0, 1], 1).unwrap());
        assert!(!f.is_right_descent(&[0, 1], 0).unwrap());
    }

    #[test]
    fn inversion_sets() {
        let f = a2();
        assert!(f.inversion_set(&[]).unwrap().is_empty());
        assert_eq!(f.inversion_set(&[0]).unwrap(), vec![RootVector::Exact(vec![1, 0])]);
        assert_eq!(
            f.inversion_set(&[0, 1]).unwrap(),
            vec![RootVector::Exact(vec![1, 0]), RootVector::Exact(vec![1, 1])]
        );
    }

    #[test]
    fn inversion_set_of_unreduced_word_is_rejected() {
        let f = a2();
        assert!(matches!(f.inversion_set(&[0, 0]), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn symmetric_difference_counts() {
        let f = a2();
        let a = f.inversion_set(&[0]).unwrap();
        let b = f.inversion_set(&[0, 1]).unwrap();
        assert_eq!(symmetric_difference(&a, &b), 1);
        assert_eq!(symmetric_difference(&b, &b), 0);
    }

    #[test]
    fn sign_coherence() {
        assert_eq!(root_sign(&[1i64, 2]).unwrap(), Sign::Positive);
        assert_eq!(root_sign(&[0i64, -2]).unwrap(), Sign::Negative);
        assert!(matches!(root_sign(&[1i64, -2]), Err(Error::SignIncoherent { .. })));
        assert!(matches!(root_sign(&[0i64, 0]), Err(Error::NumericAmbiguity { .. })));
        assert_eq!(root_sign(&[1.0, -1e-12]).unwrap(), Sign::Positive);
        assert!(matches!(
            root_sign(&[1e-12, -1e-12]),
            Err(Error::NumericAmbiguity { .. })
        ));
    }

    #[test]
    fn exact_overflow_is_reported() {
        assert_eq!(i64::MAX.add(1), Err(Error::Overflow));
        assert_eq!(i64::MAX.mul(2), Err(Error::Overflow));
    }

    #[test]
    fn float_roots_display_with_full_precision() {
        let f = b2();
        let r = f.apply_word(&[0], &f.simple_root(1)).unwrap();
        assert_eq!(r.to_string(), "1.4142135623730951 1");
    }

    #[test]
    fn float_keys_quantize() {
        let r = RootVector::Float(vec![1.0, 0.25]);
        assert_eq!(r.key(), vec![1_000_000, 250_000]);
        assert!(r.same_root(&RootVector::Float(vec![1.0 + 1e-9, 0.25 + 2e-7])));
        assert!(!r.same_root(&RootVector::Exact(vec![1, 1])));
    }

    #[test]
    fn strong_exchange_reduces() {
        let f = a2();
        assert_eq!(f.reduce(&[0, 0]).unwrap(), Vec::<usize>::new());
        let w = f.reduce(&[1, 0, 1, 0]).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(f.shortlex(&w).unwrap(), vec![0, 1]);
        assert_eq!(f.shortlex(&[1, 0, 1]).unwrap(), vec![0, 1, 0]);
    }
}

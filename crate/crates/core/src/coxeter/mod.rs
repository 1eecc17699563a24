//! Coxeter systems: presentation data, canonical elements and word-metric balls.

pub mod matrix;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::format::fmt_word;
use crate::geometry::{symmetric_difference, BilinearForm, RootVector, ScalarMode};

pub use matrix::{BraidOrder, CoxeterMatrix};

/// Default bound on the number of elements a ball may hold.
pub const DEFAULT_BALL_CAP: usize = 200_000;

/// A group element, stored as its ShortLex-least reduced word (0-based
/// generators). Equality of elements is equality of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    word: Vec<usize>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { word: Vec::new() }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Word length `l(g)`.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// ShortLex: shorter words first, then lexicographic by generator index.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_word(&self.word))
    }
}

/// All elements of length at most `radius`, in ShortLex order.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    elements: Vec<GroupElement>,
    cumulative: Vec<usize>,
    index: HashMap<GroupElement, usize>,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `|B_0|, |B_1|, …, |B_radius|`.
    pub fn cumulative_sizes(&self) -> &[usize] {
        &self.cumulative
    }

    pub fn sphere(&self, r: usize) -> &[GroupElement] {
        let start = if r == 0 { 0 } else { self.cumulative[r - 1] };
        &self.elements[start..self.cumulative[r]]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// A Coxeter system together with its geometric representation.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    form: BilinearForm,
    ball_cap: usize,
}

impl PartialEq for CoxeterGroup {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.form.mode() == other.form.mode()
    }
}

impl CoxeterGroup {
    /// `mode = None` selects exact arithmetic when the matrix allows it.
    pub fn new(matrix: CoxeterMatrix, mode: Option<ScalarMode>) -> Result<Self> {
        let form = BilinearForm::new(&matrix, mode)?;
        Ok(CoxeterGroup {
            matrix,
            form,
            ball_cap: DEFAULT_BALL_CAP,
        })
    }

    pub fn with_ball_cap(mut self, cap: usize) -> Self {
        self.ball_cap = cap;
        self
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn mode(&self) -> ScalarMode {
        self.form.mode()
    }

    pub fn ball_cap(&self) -> usize {
        self.ball_cap
    }

    pub fn generator(&self, s: usize) -> Result<GroupElement> {
        self.reduce(&[s])
    }

    /// Canonical element for an arbitrary word (0-based generators).
    pub fn reduce(&self, word: &[usize]) -> Result<GroupElement> {
        let reduced = self.form.reduce(word)?;
        let word = self.form.shortlex(&reduced)?;
        if word.len() != reduced.len() {
            return Err(Error::InvariantViolation(format!(
                "strong exchange gave length {} but descent extraction gave {}",
                reduced.len(),
                word.len()
            )));
        }
        Ok(GroupElement { word })
    }

    fn check_member(&self, g: &GroupElement) -> Result<()> {
        if g.word.iter().any(|&s| s >= self.rank()) {
            Err(Error::ContextMismatch)
        } else {
            Ok(())
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        if a.is_identity() {
            return Ok(b.clone());
        }
        if b.is_identity() {
            return Ok(a.clone());
        }
        let mut word = Vec::with_capacity(a.length() + b.length());
        word.extend_from_slice(&a.word);
        word.extend_from_slice(&b.word);
        self.reduce(&word)
    }

    /// The reversed word is reduced, so only the ShortLex pass is needed.
    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        let rev: Vec<usize> = a.word.iter().rev().copied().collect();
        Ok(GroupElement {
            word: self.form.shortlex(&rev)?,
        })
    }

    pub fn is_left_descent(&self, s: usize, g: &GroupElement) -> Result<bool> {
        self.form.is_left_descent(s, &g.word)
    }

    /// Left inversion set `N(g)`; its size is `l(g)`.
    pub fn inversion_set(&self, g: &GroupElement) -> Result<Vec<RootVector>> {
        self.check_member(g)?;
        let roots = self.form.inversion_set(&g.word)?;
        if roots.len() != g.length() {
            return Err(Error::InvariantViolation(format!(
                "|N(g)| = {} but l(g) = {}",
                roots.len(),
                g.length()
            )));
        }
        Ok(roots)
    }

    /// `|N(g) Δ N(h)|`, checked against the word metric `l(g⁻¹h)`.
    pub fn crossing_distance(&self, g: &GroupElement, h: &GroupElement) -> Result<usize> {
        let ng = self.inversion_set(g)?;
        let nh = self.inversion_set(h)?;
        let cut = symmetric_difference(&ng, &nh);
        let metric = self.multiply(&self.inverse(g)?, h)?.length();
        if cut != metric {
            return Err(Error::InvariantViolation(format!(
                "cut identity failed for g = {g}, h = {h}: |N(g) Δ N(h)| = {cut} but l(g⁻¹h) = {metric}"
            )));
        }
        Ok(cut)
    }

    /// Ball of radius `radius` in the word metric.
    pub fn ball(&self, radius: usize) -> Result<Ball> {
        self.expand(Some(radius)).map_err(|e| match e {
            Expansion::Cap { radius } => Error::CapExceeded {
                cap: self.ball_cap,
                radius,
            },
            Expansion::Failed(e) => e,
        })
    }

    /// The whole group, detected by ball stabilization; fails with
    /// [`Error::GroupNotFinite`] once the cap is exceeded.
    pub fn enumerate_finite(&self) -> Result<Ball> {
        self.expand(None).map_err(|e| match e {
            Expansion::Cap { .. } => Error::GroupNotFinite { cap: self.ball_cap },
            Expansion::Failed(e) => e,
        })
    }

    fn expand(&self, max_radius: Option<usize>) -> std::result::Result<Ball, Expansion> {
        let mut elements = vec![GroupElement::identity()];
        let mut cumulative = vec![1];
        let mut frontier = 0..1;
        let mut radius = 0;
        loop {
            if max_radius == Some(radius) {
                break;
            }
            let mut next = BTreeSet::new();
            for g in &elements[frontier.clone()] {
                for s in 0..self.rank() {
                    if self.form.is_right_descent(&g.word, s)? {
                        continue;
                    }
                    let mut word = g.word.clone();
                    word.push(s);
                    next.insert(GroupElement {
                        word: self.form.shortlex(&word)?,
                    });
                }
            }
            if next.is_empty() && max_radius.is_none() {
                break;
            }
            radius += 1;
            if elements.len() + next.len() > self.ball_cap {
                return Err(Expansion::Cap { radius });
            }
            let start = elements.len();
            elements.extend(next);
            frontier = start..elements.len();
            cumulative.push(elements.len());
        }
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Ok(Ball {
            radius,
            elements,
            cumulative,
            index,
        })
    }
}

enum Expansion {
    Cap { radius: usize },
    Failed(Error),
}

impl From<Error> for Expansion {
    fn from(e: Error) -> Self {
        Expansion::Failed(e)
    }
}

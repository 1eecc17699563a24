//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use coxnorm_core::{BraidOrder, CoxeterGroup, CoxeterMatrix, GroupElement, GroupFunction};
use num_complex::Complex64;
use rand::Rng;

pub fn a2() -> Arc<CoxeterGroup> {
    group(CoxeterMatrix::dihedral(BraidOrder::Finite(3)).unwrap())
}

pub fn b2() -> Arc<CoxeterGroup> {
    group(CoxeterMatrix::dihedral(BraidOrder::Finite(4)).unwrap())
}

pub fn affine_a2() -> Arc<CoxeterGroup> {
    group(CoxeterMatrix::uniform(3, BraidOrder::Finite(3)).unwrap())
}

pub fn dinf() -> Arc<CoxeterGroup> {
    group(CoxeterMatrix::dihedral(BraidOrder::Infinite).unwrap())
}

pub fn free_z2_cubed() -> Arc<CoxeterGroup> {
    group(CoxeterMatrix::uniform(3, BraidOrder::Infinite).unwrap())
}

fn group(m: CoxeterMatrix) -> Arc<CoxeterGroup> {
    Arc::new(CoxeterGroup::new(m, None).unwrap())
}

/// The five groups every property is checked on.
pub fn test_groups() -> Vec<(&'static str, Arc<CoxeterGroup>)> {
    vec![
        ("A2", a2()),
        ("B2", b2()),
        ("affine(3,3,3)", affine_a2()),
        ("Dinf", dinf()),
        ("Z2*Z2*Z2", free_z2_cubed()),
    ]
}

/// Finite group given by faithful integer matrices for its generators. Normal
/// forms come from enumerating all words in ShortLex order and keeping the
/// first word that reaches each matrix.
pub struct MatrixGroupOracle {
    dim: usize,
    gens: Vec<Vec<i64>>,
    normal_forms: HashMap<Vec<i64>, Vec<usize>>,
}

impl MatrixGroupOracle {
    pub fn new(dim: usize, gens: Vec<Vec<i64>>, max_len: usize) -> Self {
        let mut oracle = MatrixGroupOracle {
            dim,
            gens,
            normal_forms: HashMap::new(),
        };
        let rank = oracle.gens.len();
        for len in 0..=max_len {
            let total = rank.pow(len as u32);
            for code in 0..total {
                // lexicographic order within a length
                let mut word = vec![0; len];
                let mut c = code;
                for i in (0..len).rev() {
                    word[i] = c % rank;
                    c /= rank;
                }
                let m = oracle.evaluate(&word);
                oracle.normal_forms.entry(m).or_insert(word);
            }
        }
        oracle
    }

    /// S3 acting on three points; s1 = (1 2), s2 = (2 3).
    pub fn s3() -> Self {
        let s1 = vec![0, 1, 0, 1, 0, 0, 0, 0, 1];
        let s2 = vec![1, 0, 0, 0, 0, 1, 0, 1, 0];
        Self::new(3, vec![s1, s2], 6)
    }

    /// Dihedral group of order 8 as signed 2x2 permutations; s1 swaps the
    /// coordinates, s2 negates the second one, so s1 s2 has order 4.
    pub fn dihedral8() -> Self {
        let s1 = vec![0, 1, 1, 0];
        let s2 = vec![1, 0, 0, -1];
        Self::new(2, vec![s1, s2], 8)
    }

    pub fn order(&self) -> usize {
        self.normal_forms.len()
    }

    pub fn evaluate(&self, word: &[usize]) -> Vec<i64> {
        let n = self.dim;
        let mut acc: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        for &s in word {
            let g = &self.gens[s];
            let mut next = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    next[i * n + j] = (0..n).map(|k| acc[i * n + k] * g[k * n + j]).sum();
                }
            }
            acc = next;
        }
        acc
    }

    pub fn normal_form(&self, word: &[usize]) -> Vec<usize> {
        self.normal_forms[&self.evaluate(word)].clone()
    }
}

/// Normal form in a group where every m(s,t) is infinite: cancel adjacent
/// equal letters.
pub fn free_cancel(word: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &s in word {
        if out.last() == Some(&s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// All words of length `len` over `rank` letters.
pub fn all_words(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut words = vec![vec![]];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..rank).map(move |s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    words
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random function with up to `terms` terms supported in `B_radius`.
pub fn random_function<R: Rng>(group: &Arc<CoxeterGroup>, rng: &mut R, radius: usize, terms: usize) -> GroupFunction {
    let ball = group.ball(radius).unwrap();
    let picks: Vec<(GroupElement, Complex64)> = (0..terms)
        .map(|_| {
            let g = ball.elements()[rng.gen_range(0..ball.len())].clone();
            (g, random_complex(rng))
        })
        .collect();
    GroupFunction::from_terms(group.clone(), picks)
}

/// Scales a nonzero function so that max(‖f‖₁, ‖l·f‖₁) is just below 1,
/// making it a certified member of K.
pub fn into_k(f: &GroupFunction) -> GroupFunction {
    let scale = f.norms(0).l1.max(f.length_weighted().norms(0).l1);
    f.scale(Complex64::new(0.999 / scale, 0.0))
}

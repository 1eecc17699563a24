mod common;

use std::sync::Arc;

use common::*;
use coxnorm_core::geometry::{symmetric_difference, Sign};
use coxnorm_core::operator::{
    compressed_norm, compression, exact_norm_finite_group, gram_psd, negdef_check, norm_interval,
    schur_contraction_check,
};
use coxnorm_core::semigroup::{
    decompose, generator_check, heat_apply, k_membership, psi_params, rd_estimate, HeatParams, KStatus, RdConstants,
};
use coxnorm_core::{CoxeterGroup, GroupElement, GroupFunction, RootVector, ScalarMode};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle_sigma_max(f: &GroupFunction, radius: usize) -> f64 {
    let m = compression(f, radius).unwrap();
    let n = m.dim();
    let dm = DMatrix::from_fn(n, n, |i, j| m.matrix.get(i, j));
    dm.singular_values().iter().cloned().fold(0.0, f64::max)
}

fn max_coeff_diff(a: &GroupFunction, b: &GroupFunction) -> f64 {
    let mut keys: Vec<&GroupElement> = a.terms().map(|(g, _)| g).collect();
    keys.extend(b.terms().map(|(g, _)| g));
    keys.iter().map(|g| (a.get(g) - b.get(g)).norm()).fold(0.0, f64::max)
}

fn group_by_index(i: usize) -> (&'static str, Arc<CoxeterGroup>) {
    test_groups().swap_remove(i % 5)
}

// ---- coxeter core ----

#[test]
fn canonical_forms_match_finite_oracles() {
    for (group, oracle) in [(a2(), MatrixGroupOracle::s3()), (b2(), MatrixGroupOracle::dihedral8())] {
        for len in 0..=6 {
            for w in all_words(2, len) {
                assert_eq!(
                    group.reduce(&w).unwrap().word(),
                    oracle.normal_form(&w).as_slice(),
                    "{w:?}"
                );
            }
        }
    }
}

#[test]
fn free_product_reduction_is_cancellation() {
    let g = free_z2_cubed();
    for len in 0..=7 {
        for w in all_words(3, len) {
            assert_eq!(g.reduce(&w).unwrap().word(), free_cancel(&w).as_slice());
        }
    }
}

#[test]
fn reduce_of_concatenation_is_multiply() {
    for (name, group) in test_groups() {
        let ball = group.ball(4).unwrap();
        for u in ball.elements() {
            for v in ball.elements() {
                let concat: Vec<usize> = u.word().iter().chain(v.word()).copied().collect();
                assert_eq!(
                    group.reduce(&concat).unwrap(),
                    group.multiply(u, v).unwrap(),
                    "{name} {u} {v}"
                );
            }
        }
    }
}

#[test]
fn inverse_cancels() {
    for (name, group) in test_groups() {
        for a in group.ball(5).unwrap().elements() {
            let inv = group.inverse(a).unwrap();
            assert!(group.multiply(a, &inv).unwrap().is_identity(), "{name} {a}");
            assert!(group.multiply(&inv, a).unwrap().is_identity(), "{name} {a}");
            assert_eq!(inv.length(), a.length());
        }
    }
}

#[test]
fn ball_growth() {
    let sizes = |g: &Arc<CoxeterGroup>, n| g.ball(n).unwrap().len();
    for n in 3..=8 {
        assert_eq!(sizes(&a2(), n), 6);
    }
    for n in 4..=8 {
        assert_eq!(sizes(&b2(), n), 8);
    }
    for n in 0..=30 {
        assert_eq!(sizes(&dinf(), n), 2 * n + 1);
    }
    // free product of three Z2: spheres of size 3·2^(r-1)
    for n in 0..=8 {
        assert_eq!(sizes(&free_z2_cubed(), n), 3 * (1 << n) - 2);
    }
    assert_eq!(a2().enumerate_finite().unwrap().len(), 6);
    assert_eq!(b2().enumerate_finite().unwrap().len(), 8);
}

#[test]
fn ball_is_shortlex_sorted_and_reduced() {
    for (_, group) in test_groups() {
        let ball = group.ball(5).unwrap();
        for pair in ball.elements().windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for g in ball.elements() {
            assert_eq!(&group.reduce(g.word()).unwrap(), g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parity_of_products(gi in 0usize..5, a in prop::collection::vec(0usize..3, 0..10), b in prop::collection::vec(0usize..3, 0..10)) {
        let (_, group) = group_by_index(gi);
        let r = group.rank();
        let a = group.reduce(&a.iter().map(|s| s % r).collect::<Vec<_>>()).unwrap();
        let b = group.reduce(&b.iter().map(|s| s % r).collect::<Vec<_>>()).unwrap();
        let p = group.multiply(&a, &b).unwrap();
        prop_assert_eq!(p.length() % 2, (a.length() + b.length()) % 2);
        prop_assert!(p.length() <= a.length() + b.length());
    }

    #[test]
    fn roots_stay_sign_coherent(gi in 0usize..5, w in prop::collection::vec(0usize..3, 0..=12)) {
        let (_, group) = group_by_index(gi);
        let r = group.rank();
        let w: Vec<usize> = w.iter().map(|s| s % r).collect();
        let g = group.reduce(&w).unwrap();
        let form = group.form();
        for root in group.inversion_set(&g).unwrap() {
            prop_assert_eq!(form.sign(&root).unwrap(), Sign::Positive);
        }
        for s in 0..r {
            let image = form.apply_word(&w, &form.simple_root(s)).unwrap();
            prop_assert!(form.sign(&image).is_ok());
        }
    }

    #[test]
    fn reduction_matches_shortlex_of_any_word(gi in 0usize..2, w in prop::collection::vec(0usize..2, 0..=10)) {
        let (group, oracle) = if gi == 0 { (a2(), MatrixGroupOracle::s3()) } else { (b2(), MatrixGroupOracle::dihedral8()) };
        let ours = group.reduce(&w).unwrap();
        let expected = oracle.normal_form(&w);
        prop_assert_eq!(ours.word(), expected.as_slice());
    }
}

// ---- geometry ----

#[test]
fn reflections_are_involutive_isometries() {
    for (name, group) in test_groups() {
        let form = group.form();
        let r = group.rank();
        for s in 0..r {
            for i in 0..r {
                let v = form.simple_root(i);
                let back = form.apply_word(&[s, s], &v).unwrap();
                match group.mode() {
                    ScalarMode::Exact => assert_eq!(back, v, "{name}"),
                    ScalarMode::Float => {
                        let d = back
                            .to_f64()
                            .iter()
                            .zip(v.to_f64())
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0, f64::max);
                        assert!(d <= 1e-12, "{name}: {d}");
                    }
                }
                for j in 0..r {
                    let w = form.simple_root(j);
                    let before = form.eval(&v, &w).unwrap();
                    let sv = form.apply_word(&[s], &v).unwrap();
                    let sw = form.apply_word(&[s], &w).unwrap();
                    let after = form.eval(&sv, &sw).unwrap();
                    assert!(
                        (before - after).abs() <= 1e-12,
                        "{name}: B changed by {}",
                        before - after
                    );
                }
            }
        }
    }
}

#[test]
fn bilinear_form_entries() {
    let b = b2();
    assert_eq!(b.mode(), ScalarMode::Float);
    assert!((b.form().entry(0, 1) + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    assert_eq!(a2().form().entry(0, 1), -0.5);
    assert_eq!(dinf().form().entry(0, 1), -1.0);
    for (_, g) in test_groups() {
        for s in 0..g.rank() {
            assert_eq!(g.form().entry(s, s), 1.0);
        }
    }
}

#[test]
fn inversion_set_size_is_length() {
    for (name, group) in test_groups() {
        for g in group.ball(6).unwrap().elements() {
            assert_eq!(group.inversion_set(g).unwrap().len(), g.length(), "{name} {g}");
        }
    }
}

#[test]
fn cut_identity() {
    for (name, group) in test_groups() {
        let ball = group.ball(4).unwrap();
        let sets: Vec<Vec<RootVector>> = ball
            .elements()
            .iter()
            .map(|g| group.inversion_set(g).unwrap())
            .collect();
        for (g, ng) in ball.elements().iter().zip(&sets) {
            let g_inv = group.inverse(g).unwrap();
            for (h, nh) in ball.elements().iter().zip(&sets) {
                let l = group.multiply(&g_inv, h).unwrap().length();
                assert_eq!(symmetric_difference(ng, nh), l, "{name} {g} {h}");
                assert_eq!(group.crossing_distance(g, h).unwrap(), l);
            }
        }
    }
}

// ---- group algebra ----

fn sample_functions(seed: u64) -> Vec<(String, GroupFunction, GroupFunction, GroupFunction)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, group) in test_groups() {
        for _ in 0..8 {
            out.push((
                name.to_string(),
                random_function(&group, &mut rng, 3, 5),
                random_function(&group, &mut rng, 3, 5),
                random_function(&group, &mut rng, 3, 5),
            ));
        }
    }
    out
}

#[test]
fn convolution_is_associative() {
    for (name, f, g, h) in sample_functions(1) {
        let left = f.convolve(&g).unwrap().convolve(&h).unwrap();
        let right = f.convolve(&g.convolve(&h).unwrap()).unwrap();
        assert!(max_coeff_diff(&left, &right) <= 1e-12, "{name}");
    }
}

#[test]
fn adjoint_is_anti_multiplicative() {
    for (name, f, h, _) in sample_functions(2) {
        let left = f.convolve(&h).unwrap().adjoint().unwrap();
        let right = h.adjoint().unwrap().convolve(&f.adjoint().unwrap()).unwrap();
        assert!(max_coeff_diff(&left, &right) <= 1e-12, "{name}");
        let twice = f.adjoint().unwrap().adjoint().unwrap();
        assert_eq!(twice, f);
        let (a, b) = (f.adjoint().unwrap().norms(0).l2, f.norms(0).l2);
        assert!((a - b).abs() <= 4.0 * f64::EPSILON * b, "{a} vs {b}");
    }
}

#[test]
fn convolution_matches_word_concatenation_in_free_product() {
    let group = free_z2_cubed();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = random_function(&group, &mut rng, 3, 4);
        let h = random_function(&group, &mut rng, 3, 4);
        let mut expected = std::collections::BTreeMap::<Vec<usize>, Complex64>::new();
        for (a, x) in f.terms() {
            for (b, y) in h.terms() {
                let w: Vec<usize> = a.word().iter().chain(b.word()).copied().collect();
                *expected.entry(free_cancel(&w)).or_default() += x * y;
            }
        }
        let got = f.convolve(&h).unwrap();
        for (w, c) in expected {
            let g = group.reduce(&w).unwrap();
            assert!((got.get(&g) - c).norm() <= 1e-12);
        }
    }
}

#[test]
fn young_inequality() {
    for (name, f, h, _) in sample_functions(4) {
        let nf = f.norms(0);
        assert!(nf.l2 <= nf.l1 + 1e-15, "{name}");
        let conv = f.convolve(&h).unwrap().norms(0).l2;
        assert!(conv <= nf.l1 * h.norms(0).l2 * (1.0 + 1e-12), "{name}: {conv}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exponential_law(gi in 0usize..5, seed in any::<u64>(), t in 0.001f64..3.0, s in 0.001f64..3.0) {
        let (_, group) = group_by_index(gi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&group, &mut rng, 4, 6);
        let composed = heat_apply(&HeatParams::new(t, None).unwrap(), &heat_apply(&HeatParams::new(s, None).unwrap(), &f));
        let direct = heat_apply(&HeatParams::new(t + s, None).unwrap(), &f);
        for (g, c) in direct.terms() {
            let d = composed.get(g);
            // rounding the exponent t·l moves exp(-t·l) by a relative ε·t·l
            let budget = f64::EPSILON * (4.0 + 2.0 * (t + s) * g.length() as f64);
            prop_assert!((d - c).norm() <= budget * c.norm(), "{} vs {}", d, c);
        }
    }
}

// ---- operator estimates ----

#[test]
fn compressed_norm_is_monotone_and_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, group) in test_groups() {
        for _ in 0..4 {
            let f = random_function(&group, &mut rng, 2, 4);
            let l1 = f.norms(0).l1;
            let mut previous = 0.0;
            for n in 0..=6 {
                let c = compressed_norm(&compression(&f, n).unwrap()).unwrap();
                assert!(c + 1e-10 >= previous, "{name} N={n}: {previous} -> {c}");
                assert!(c <= l1 + 1e-10, "{name}: {c} > {l1}");
                previous = c;
            }
        }
    }
}

#[test]
fn compressed_norm_matches_svd_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, group) in test_groups() {
        for _ in 0..6 {
            let f = random_function(&group, &mut rng, 2, 4);
            for n in [1, 3] {
                let ours = compressed_norm(&compression(&f, n).unwrap()).unwrap();
                let oracle = oracle_sigma_max(&f, n);
                assert!(
                    (ours - oracle).abs() <= 1e-8 * oracle.max(1.0),
                    "{name} N={n}: {ours} vs {oracle}"
                );
                assert!(ours <= oracle * (1.0 + 1e-12) + 1e-15);
            }
        }
    }
}

#[test]
fn finite_groups_stabilize_to_exact_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (group, stable) in [(a2(), 3), (b2(), 4)] {
        for _ in 0..10 {
            let f = random_function(&group, &mut rng, 4, 5);
            let compressed = compressed_norm(&compression(&f, stable).unwrap()).unwrap();
            let exact = exact_norm_finite_group(&f).unwrap();
            assert!((compressed - exact).abs() <= 1e-8, "{compressed} vs {exact}");
        }
    }
}

#[test]
fn hermitian_norm_is_spectral_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, group) in test_groups() {
        for _ in 0..5 {
            let g = random_function(&group, &mut rng, 2, 4);
            let f = g.add(&g.adjoint().unwrap()).unwrap();
            let m = compression(&f, 3).unwrap();
            let n = m.dim();
            let dm = DMatrix::from_fn(n, n, |i, j| m.matrix.get(i, j));
            let eig = SymmetricEigen::new(dm).eigenvalues;
            let radius = eig.iter().map(|x| x.abs()).fold(0.0, f64::max);
            let ours = compressed_norm(&m).unwrap();
            assert!(
                (ours - radius).abs() <= 1e-10 * radius.max(1.0),
                "{name}: {ours} vs {radius}"
            );
        }
    }
}

#[test]
fn norm_interval_brackets_the_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, group) in test_groups() {
        for _ in 0..5 {
            let f = random_function(&group, &mut rng, 2, 4);
            let iv = norm_interval(&f, 3).unwrap();
            assert!(iv.lower <= iv.upper, "{name}");
            assert!(iv.lower >= f.norms(0).l2);
            assert_eq!(iv.upper, f.norms(0).l1);
        }
    }
}

#[test]
fn gram_and_negdef_hold_on_all_groups() {
    for (name, group) in test_groups() {
        for n in 0..=4 {
            for t in [0.1, 0.5, 1.0, 2.0] {
                assert!(gram_psd(&group, t, n).unwrap().verdict, "{name} t={t} N={n}");
            }
            assert!(negdef_check(&group, n).unwrap().verdict, "{name} N={n}");
        }
    }
}

#[test]
fn gram_anchor_matches_closed_form() {
    // D∞, N = 1, q = e^{-t} = 1/2: kernel [[1,q,q],[q,1,q²],[q,q²,1]]
    let q: f64 = 0.5;
    let dm = DMatrix::from_row_slice(3, 3, &[1.0, q, q, q, 1.0, q * q, q, q * q, 1.0]);
    let oracle = SymmetricEigen::new(dm).eigenvalues.min();
    let ours = gram_psd(&dinf(), 2f64.ln(), 1).unwrap().min_eigenvalue;
    assert!((ours - oracle).abs() <= 1e-12, "{ours} vs {oracle}");
    assert!((ours - 0.40693).abs() <= 1e-5);
}

#[test]
fn schur_contraction_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (name, group) in test_groups() {
        for _ in 0..100 {
            let t = rng.gen_range(1e-3..3.0);
            let f = random_function(&group, &mut rng, 2, 4);
            assert!(schur_contraction_check(t, &f, 3).unwrap().verdict, "{name} t={t}");
        }
    }
}

// ---- semigroup ----

#[test]
fn generator_bound_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, group) in test_groups() {
        for _ in 0..10 {
            let f = random_function(&group, &mut rng, 4, 5);
            for t in [0.1, 0.01, 0.001] {
                let r = generator_check(&f, t, 4).unwrap();
                assert!(r.value <= r.bound, "{name} t={t}: {} > {}", r.value, r.bound);
            }
        }
    }
}

#[test]
fn psi_family_is_bounded_and_converges() {
    let rd = RdConstants::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (name, group) in test_groups() {
        for _ in 0..4 {
            let f = random_function(&group, &mut rng, 4, 5);
            let upper = f.norms(0).l1;
            let mut previous = f64::INFINITY;
            for m in 1..=5 {
                let p = psi_params(m, &rd).unwrap();
                let g = heat_apply(&p, &f);
                assert!(g.norms(0).l1 <= 3.0 * upper, "{name} m={m}");
                let d = compressed_norm(&compression(&g.sub(&f).unwrap(), 3).unwrap()).unwrap();
                assert!(d <= previous + 1e-10, "{name} m={m}: {previous} -> {d}");
                previous = d;
            }
        }
    }
}

#[test]
fn decomposition_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (name, group) in test_groups() {
        for _ in 0..6 {
            let h = random_function(&group, &mut rng, 3, 6).scale(Complex64::new(rng.gen_range(0.1..30.0), 0.0));
            let d = decompose(&h, 3).unwrap();
            assert_eq!(d.c, h.get(&GroupElement::identity()));
            assert!(d.m >= 1);
            assert_eq!(d.certificate.status, KStatus::CertifiedIn, "{name}");
            assert_eq!(k_membership(&d.k_part, 3).unwrap().status, KStatus::CertifiedIn);
            assert!(d.k_part.get(&GroupElement::identity()) == Complex64::new(0.0, 0.0));
            let rebuilt = d.reconstruct();
            for (g, c) in h.terms() {
                assert!((rebuilt.get(g) - c).norm() <= f64::EPSILON * c.norm(), "{name} {g}");
            }
        }
    }
}

#[test]
fn rd_estimate_is_monotone_in_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (name, group) in test_groups() {
        let samples: Vec<GroupFunction> = (0..6).map(|_| random_function(&group, &mut rng, 3, 4)).collect();
        let mut previous = 0.0;
        for n in 1..=samples.len() {
            let c = rd_estimate(&samples[..n], 2, 2).unwrap();
            assert!(c >= previous, "{name}");
            previous = c;
        }
        // higher Sobolev weight can only lower the ratio
        assert!(rd_estimate(&samples, 3, 2).unwrap() <= rd_estimate(&samples, 2, 2).unwrap());
    }
}

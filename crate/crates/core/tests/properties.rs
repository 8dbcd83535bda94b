use bracket_core::bracket::{
    bracket_fourier, bracket_level, bracket_time, module_action_time, spectrum_of, FilterSeq,
};
use bracket_core::filters::{builtin, cascade, extract_filters, taps_from_symbol};
use bracket_core::io::{signal_from_json, signal_to_json};
use bracket_core::lattice::int_det;
use bracket_core::modnorm::x_norm;
use bracket_core::signal::{dilate, translate, Signal};
use bracket_core::testsig;
use bracket_core::verify::{default_tests, verify_completeness, verify_orthonormality, VerifyConfig};
use bracket_core::{AnalyticSignal, Complex64, DilationMatrix, Domain, Embedding, GridSignal};
use proptest::prelude::*;
use rand::Rng;

fn dilations() -> Vec<DilationMatrix> {
    vec![
        DilationMatrix::scalar(1, 2).unwrap(),
        DilationMatrix::scalar(1, 3).unwrap(),
        DilationMatrix::new(vec![vec![-2]]).unwrap(),
        DilationMatrix::scalar(2, 2).unwrap(),
        DilationMatrix::quincunx(),
        DilationMatrix::new(vec![vec![2, 1], vec![0, 2]]).unwrap(),
    ]
}

fn pick(seed: u64) -> (rand_chacha::ChaCha8Rng, DilationMatrix, Embedding) {
    let mut rng = testsig::rng(seed);
    let all = dilations();
    let d = all[rng.gen_range(0..all.len())].clone();
    let e = Embedding::level(&d, rng.gen_range(-1..=1)).unwrap();
    (rng, d, e)
}

fn rel(a: &FilterSeq, b: &FilterSeq) -> f64 {
    a.max_abs_diff(b) / a.max_abs().max(b.max_abs()).max(1.0)
}

/// Upper-triangular integer matrices with diagonal entries of modulus at least two.
fn expanding() -> impl Strategy<Value = Vec<Vec<i64>>> {
    let diag = prop_oneof![-4i64..=-2, 2i64..=4];
    prop_oneof![
        diag.clone().prop_map(|a| vec![vec![a]]),
        (diag.clone(), diag, -3i64..=3).prop_map(|(a, b, c)| vec![vec![a, c], vec![0, b]]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn level_embedding_determinant(seed in any::<u64>(), n in -3i32..=3) {
        let (_, d, _) = pick(seed);
        let e = Embedding::level(&d, n).unwrap();
        let m = d.index_m() as f64;
        prop_assert!((e.det().abs() - m.powi(-n)).abs() <= 1e-12 * m.powi(-n).max(1.0));
    }

    #[test]
    fn level_embedding_composition(seed in any::<u64>(), n in -3i32..=2) {
        let (_, d, _) = pick(seed);
        let a = Embedding::level(&d, n).unwrap();
        let b = Embedding::level(&d, n + 1).unwrap();
        let inv = d.real().try_inverse().unwrap();
        prop_assert!((inv * a.matrix() - b.matrix()).abs().max() < 1e-12);
    }

    #[test]
    fn characters_vanish_on_the_annihilator(seed in any::<u64>()) {
        let (_, _, e) = pick(seed);
        prop_assert!(e.character_defect(3, 3) < 1e-10);
    }

    #[test]
    fn coset_count_equals_index(entries in expanding()) {
        let d = DilationMatrix::new(entries.clone()).unwrap();
        let reps = d.coset_reps();
        prop_assert_eq!(reps.len() as i128, int_det(&entries).abs());
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                prop_assert!(!d.equivalent(a, b));
            }
        }
    }

    #[test]
    fn grid_fourier_round_trip(seed in any::<u64>()) {
        let mut rng = testsig::rng(seed);
        let centre: f64 = rng.gen_range(-1.0..1.0);
        let freq: f64 = rng.gen_range(-2.0..2.0);
        let g = GridSignal::from_fn(Domain::Time, vec![8.0], vec![256], |x| {
            let t = x[0] - centre;
            Complex64::from_polar((-t * t).exp(), 2.0 * std::f64::consts::PI * freq * t)
        }).unwrap();
        let back = g.fourier().unwrap().inverse_fourier().unwrap();
        prop_assert!(back.sub(&g).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn dilation_group_law(seed in any::<u64>(), a in -2i32..=2, b in -2i32..=2) {
        let (mut rng, d, _) = pick(seed);
        let f = testsig::random_compact(&mut rng, d.dim());
        let two = dilate(&dilate(&f, &d, a).unwrap(), &d, b).unwrap();
        let one = dilate(&f, &d, a + b).unwrap();
        prop_assert!(two.sub(&one).unwrap().l2_norm().unwrap() <= 1e-12 * f.l2_norm().unwrap().max(1.0));
    }

    #[test]
    fn dilation_intertwines_translations(seed in any::<u64>()) {
        let (mut rng, d, _) = pick(seed);
        let f = testsig::random_compact(&mut rng, d.dim());
        let gamma: Vec<i64> = (0..d.dim()).map(|_| rng.gen_range(-3..=3)).collect();
        let lhs = translate(&dilate(&f, &d, 1).unwrap(), &Embedding::level(&d, 1).unwrap(), &gamma).unwrap();
        let rhs = dilate(&translate(&f, &Embedding::level(&d, 0).unwrap(), &gamma).unwrap(), &d, 1).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().l2_norm().unwrap() <= 1e-12 * f.l2_norm().unwrap().max(1.0));
    }

    #[test]
    fn hermitian_symmetry(seed in any::<u64>()) {
        let (mut rng, d, e) = pick(seed);
        let f = testsig::random_compact(&mut rng, d.dim());
        let g = testsig::random_compact(&mut rng, d.dim());
        let fg = bracket_time(&f, &g, &e, None).unwrap();
        let gf = bracket_time(&g, &f, &e, None).unwrap();
        prop_assert!(rel(&gf, &fg.involution()) < 1e-12);
    }

    #[test]
    fn second_slot_linearity(seed in any::<u64>()) {
        let (mut rng, d, e) = pick(seed);
        let f = testsig::random_compact(&mut rng, d.dim());
        let g = testsig::random_compact(&mut rng, d.dim());
        let h = testsig::random_compact(&mut rng, d.dim());
        let (a, b) = (Complex64::new(rng.gen(), rng.gen()), Complex64::new(rng.gen(), rng.gen()));
        let lhs = bracket_time(&f, &g.scale(a).add(&h.scale(b)).unwrap(), &e, None).unwrap();
        let rhs = bracket_time(&f, &g, &e, None).unwrap().scale(a)
            .add(&bracket_time(&f, &h, &e, None).unwrap().scale(b)).unwrap();
        prop_assert!(rel(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn action_adjunction(seed in any::<u64>()) {
        let (mut rng, d, e) = pick(seed);
        let f = testsig::random_compact(&mut rng, d.dim());
        let g = testsig::random_compact(&mut rng, d.dim());
        let a = testsig::random_filter(&mut rng, d.dim(), 3);
        let lhs = bracket_time(&f, &module_action_time(&g, &a, &e).unwrap(), &e, None).unwrap();
        let rhs = bracket_time(&f, &g, &e, None).unwrap().convolve(&a).unwrap();
        prop_assert!(rel(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn action_is_independent_of_summation_order(seed in any::<u64>()) {
        let (mut rng, d, e) = pick(seed);
        let f = testsig::random_compact(&mut rng, d.dim());
        let a = testsig::random_filter(&mut rng, d.dim(), 3);
        let ordered = module_action_time(&f, &a, &e).unwrap();
        let mut reversed = Signal::Analytic(AnalyticSignal::zero(d.dim(), Domain::Time));
        for (k, c) in a.taps().iter().rev() {
            reversed = reversed.add(&translate(&f, &e, k).unwrap().scale(*c)).unwrap();
        }
        let scale = ordered.l2_norm().unwrap().max(1.0);
        prop_assert!(ordered.sub(&reversed).unwrap().l2_norm().unwrap() < 1e-12 * scale);
    }

    #[test]
    fn level_consistency(seed in any::<u64>(), n in -2i32..=2) {
        let (mut rng, d, _) = pick(seed);
        let f = testsig::random_compact(&mut rng, d.dim());
        let g = testsig::random_compact(&mut rng, d.dim());
        let lhs = bracket_level(&f, &g, &d, n, None).unwrap();
        let rhs = bracket_time(&dilate(&f, &d, -n).unwrap(), &dilate(&g, &d, -n).unwrap(),
            &Embedding::identity(d.dim()), None).unwrap();
        prop_assert!(rel(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn periodization_is_nonnegative(seed in any::<u64>(), n in -2i32..=2) {
        let mut rng = testsig::rng(seed);
        let p = testsig::random_bandlimited(&mut rng);
        let e = Embedding::level(&DilationMatrix::scalar(1, 2).unwrap(), n).unwrap();
        let s = spectrum_of(&p);
        let b = bracket_fourier(s.clone(), s, &e, 8, 256).unwrap().values;
        prop_assert!(b.min_re() >= -1e-12);
    }

    #[test]
    fn l2_norm_is_dominated(seed in any::<u64>(), n in -2i32..=2) {
        let mut rng = testsig::rng(seed);
        let f = testsig::random_bandlimited(&mut rng);
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let r = x_norm(&f, &d, n, 256, 8).unwrap();
        prop_assert!(r.l2_norm <= r.x_norm + 1e-8);
    }

    #[test]
    fn translations_are_isometric(seed in any::<u64>(), n in -2i32..=2, gamma in -5i64..=5) {
        let mut rng = testsig::rng(seed);
        let f = testsig::random_bandlimited(&mut rng);
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let moved = translate(&f, &Embedding::level(&d, n).unwrap(), &[gamma]).unwrap();
        let a = x_norm(&f, &d, n, 256, 8).unwrap().x_norm;
        let b = x_norm(&moved, &d, n, 256, 8).unwrap().x_norm;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn finer_torus_grids_do_not_lose_the_sup(seed in any::<u64>(), n in -1i32..=1) {
        let mut rng = testsig::rng(seed);
        let f = testsig::random_bandlimited(&mut rng);
        let d = DilationMatrix::scalar(1, 2).unwrap();
        let coarse = x_norm(&f, &d, n, 128, 8).unwrap();
        let fine = x_norm(&f, &d, n, 256, 8).unwrap();
        prop_assert!(fine.x_norm >= coarse.x_norm - fine.tail_estimate - 1e-15);
    }

    #[test]
    fn signals_round_trip_through_json(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = testsig::rng(seed);
        let f = testsig::random_compact(&mut rng, dim);
        prop_assert_eq!(signal_from_json(&signal_to_json(&f).unwrap()).unwrap(), f);
    }
}

#[test]
fn builtin_filters_are_normalized() {
    for (name, d) in [("haar", 1), ("haar", 2), ("haar", 3), ("shannon", 1), ("db4", 1)] {
        let b = builtin(name, d).unwrap();
        b.bank.check_norms().unwrap_or_else(|e| panic!("{name} in {d} dimensions: {e}"));
    }
}

#[test]
fn haar_extraction_is_level_invariant() {
    let b = builtin("haar", 1).unwrap();
    let d = &b.bank.dilation;
    for n in -2..=2 {
        let fine = b.phi.unitary_dilate(d, n).unwrap();
        let coarse = b.phi.unitary_dilate(d, n - 1).unwrap();
        let h = bracket_level(&fine, &coarse, d, n, None).unwrap();
        assert!(rel(&h, &b.bank.h) < 1e-10, "level {n}");
        for (psi, g) in b.psi.iter().zip(&b.bank.g) {
            let coarse = psi.unitary_dilate(d, n - 1).unwrap();
            assert!(rel(&bracket_level(&fine, &coarse, d, n, None).unwrap(), g) < 1e-10, "level {n}");
        }
    }
}

#[test]
fn time_and_fourier_filters_agree() {
    let b = builtin("shannon", 1).unwrap();
    let (h, g) = bracket_core::filters::extract_filters_fourier(&b.phi, &b.psi, &b.bank.dilation, 1024, 8).unwrap();
    assert!(b.bank.h.to_torus(1024).max_abs_diff(&h).unwrap() < 1e-12);
    assert!(b.bank.g[0].to_torus(1024).max_abs_diff(&g[0]).unwrap() < 1e-12);
    assert_eq!(taps_from_symbol(&h).unwrap(), b.bank.h);

    let haar = builtin("haar", 2).unwrap();
    let again = extract_filters(&haar.phi, &haar.psi, &haar.bank.dilation, None).unwrap();
    assert!(rel(&again.h, &haar.bank.h) < 1e-15);
}

#[test]
fn db4_cascade_is_cauchy() {
    let b = builtin("db4", 1).unwrap();
    let init = GridSignal::sample(&AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0), vec![4.0], vec![4096]).unwrap();
    let run = cascade(&b.bank.h, &b.bank.dilation, 12, &Signal::Grid(init)).unwrap();
    assert!(run.cauchy);
    for w in run.step_norms.windows(2).skip(2) {
        assert!(w[1] <= w[0]);
    }
}

#[test]
fn residuals_are_conjugate_symmetric() {
    let b = builtin("haar", 2).unwrap();
    let cfg = VerifyConfig { n_range: (-1, 1), grid_m: 32, ..VerifyConfig::default() };
    let r = verify_orthonormality(&b.psi, &b.bank.dilation, &cfg).unwrap();
    for p in &r.pairs {
        let q = r.pairs.iter().find(|q| (q.i, q.j, q.n, q.m) == (p.j, p.i, p.m, p.n)).unwrap();
        assert!((p.residual - q.residual).abs() < 1e-12);
    }
}

#[test]
fn shifting_the_window_preserves_residuals() {
    for name in ["haar", "shannon"] {
        let b = builtin(name, 1).unwrap();
        let base = VerifyConfig { n_range: (-1, 1), grid_m: 512, ..VerifyConfig::default() };
        let shifted = VerifyConfig { n_range: (0, 2), ..base.clone() };
        let a = verify_orthonormality(&b.psi, &b.bank.dilation, &base).unwrap();
        let c = verify_orthonormality(&b.psi, &b.bank.dilation, &shifted).unwrap();
        for (p, q) in a.pairs.iter().zip(&c.pairs) {
            assert!((p.residual - q.residual).abs() < 1e-8, "{name}");
        }
    }
}

#[test]
fn adding_levels_never_hurts_reconstruction() {
    for (name, lo, hi) in [("haar", -3, 3), ("shannon", 0, 3)] {
        let b = builtin(name, 1).unwrap();
        let tests = default_tests(name, 1);
        let mut previous = f64::INFINITY;
        for top in lo..=hi {
            let cfg = VerifyConfig { n_range: (lo, top), eps_energy: f64::INFINITY, ..VerifyConfig::default() };
            let r = verify_completeness(&b.psi, &b.bank.dilation, &tests, &cfg).unwrap();
            let worst = r.recon_residuals.iter().cloned().fold(0.0, f64::max);
            assert!(worst <= previous + 1e-12, "{name}: {worst} after {previous}");
            previous = worst;
        }
    }
}

#[test]
fn shannon_bank_has_no_time_domain_extraction() {
    let b = builtin("shannon", 1).unwrap();
    let r = extract_filters(&b.phi, &b.psi, &b.bank.dilation, None);
    assert!(matches!(r, Err(bracket_core::Error::Unsupported(_))));
}

mod common;

use std::f64::consts::PI;

use frft_riesz::io::{amplitude_map, normalize, synth_test_image, AmplitudeScale};
use frft_riesz::{frft_1d_direct, frft_1d_fast, frft_2d, ifrft_2d, ComplexGrid, FrftOrder, Path};
use num_complex::Complex64;
use proptest::prelude::*;

use common::{centered_dft_2d, gaussian, random_grid};

/// `∫ K_α(x, u)·f(x) dx` by the trapezoid rule on a fine grid.
fn continuous_frft(f: impl Fn(f64) -> f64, alpha: f64, u: f64) -> Complex64 {
    let cot = alpha.cos() / alpha.sin();
    let csc = 1.0 / alpha.sin();
    let c = Complex64::new(1.0, -cot).sqrt();
    let (lim, m) = (7.0, 200_000);
    let h = 2.0 * lim / m as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=m {
        let x = -lim + k as f64 * h;
        let w = if k == 0 || k == m { 0.5 } else { 1.0 };
        let phase = 2.0 * PI * (cot / 2.0 * (x * x + u * u) - csc * x * u);
        acc += Complex64::from_polar(w * f(x), phase);
    }
    c * acc * h
}

#[test]
fn matches_continuous_integral() {
    let n = 256;
    let f = |x: f64| (-2.0 * PI * (x - 0.3) * (x - 0.3)).exp();
    let xs = frft_riesz::grid::coordinates(n);
    let samples: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(f(x), 0.0)).collect();
    for alpha in [PI / 4.0, 7.0 * PI / 8.0, -1.1] {
        let direct = frft_1d_direct(&samples, alpha).unwrap();
        for k in [n / 2, n / 2 + 5, n / 2 - 17] {
            let want = continuous_frft(f, alpha, xs[k]);
            assert!(
                (direct[k] - want).norm() < 1e-6,
                "alpha {alpha} k {k}: {} vs {want}",
                direct[k]
            );
        }
    }
}

#[test]
fn gaussian_is_an_eigenfunction() {
    let n = 256;
    let g: Vec<Complex64> = frft_riesz::grid::coordinates(n)
        .iter()
        .map(|&x| Complex64::new((-PI * x * x).exp(), 0.0))
        .collect();
    for alpha in [0.2, PI / 4.0, 2.0, -2.9, 5.0] {
        let out = frft_1d_fast(&g, alpha).unwrap();
        let err = out
            .iter()
            .zip(&g)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "alpha {alpha}: {err}");
    }
}

#[test]
fn classical_order_is_centered_dft() {
    let f = random_grid(24, 16, 9);
    let got = frft_2d(
        &f,
        &FrftOrder::pair(PI / 2.0, PI / 2.0).unwrap(),
        Path::Direct,
    )
    .unwrap();
    assert!(got.max_abs_diff(&centered_dft_2d(&f)).unwrap() < 1e-12);
}

#[test]
fn special_orders_are_index_maps() {
    let f = random_grid(6, 4, 3);
    let same = frft_2d(
        &f,
        &FrftOrder::pair(2.0 * PI, 2.0 * PI).unwrap(),
        Path::Fast,
    )
    .unwrap();
    assert_eq!(same, f);
    let flip = FrftOrder::pair(PI, PI).unwrap();
    let r = frft_2d(&f, &flip, Path::Fast).unwrap();
    // (col, row) → (−col, −row) about the center sample (3, 2).
    assert_eq!(r.get(4, 1), f.get(2, 3));
    assert_eq!(r.get(0, 0), f.get(0, 0));
    assert_eq!(frft_2d(&r, &flip, Path::Direct).unwrap(), f);
}

#[test]
fn gaussians_keep_their_norm() {
    let o = FrftOrder::pair(0.7, 2.6).unwrap();
    for sigma in [4.0, 9.0] {
        let f = gaussian(64, sigma);
        let g = frft_2d(&f, &o, Path::Fast).unwrap();
        let ratio = g.l2_norm() / f.l2_norm();
        assert!((ratio - 1.0).abs() <= 1e-2, "{ratio}");
    }
}

#[test]
fn round_trips() {
    let o = FrftOrder::pair(7.0 * PI / 8.0, 5.0 * PI / 8.0).unwrap();
    let f = gaussian(256, 16.0);
    let back = ifrft_2d(&frft_2d(&f, &o, Path::Fast).unwrap(), &o, Path::Fast).unwrap();
    assert!(back.rel_l2_error(&f).unwrap() <= 1e-2);

    let q = FrftOrder::pair(PI / 2.0, PI / 2.0).unwrap();
    let r = random_grid(32, 32, 5);
    let back = ifrft_2d(&frft_2d(&r, &q, Path::Fast).unwrap(), &q, Path::Fast).unwrap();
    assert!(back.rel_l2_error(&r).unwrap() <= 1e-12);

    let img = normalize(&synth_test_image(128).unwrap());
    let f = ComplexGrid::from_real(&img);
    let o = FrftOrder::pair(PI / 4.0, 3.0 * PI / 8.0).unwrap();
    let back = ifrft_2d(&frft_2d(&f, &o, Path::Fast).unwrap(), &o, Path::Fast).unwrap();
    let mse: f64 = back
        .data()
        .iter()
        .zip(img.data())
        .map(|(z, v)| (z.norm() - v).powi(2))
        .sum::<f64>()
        / img.data().len() as f64;
    assert!(mse <= 1e-3, "{mse}");
}

#[test]
fn classical_amplitude_panel_matches_dft_rendering() {
    let img = ComplexGrid::from_real(&normalize(&synth_test_image(64).unwrap()));
    let q = FrftOrder::pair(PI / 2.0, PI / 2.0).unwrap();
    let ours = amplitude_map(&frft_2d(&img, &q, Path::Fast).unwrap(), AmplitudeScale::Log).unwrap();
    let reference = amplitude_map(&centered_dft_2d(&img), AmplitudeScale::Log).unwrap();
    let worst = ours
        .pixels()
        .iter()
        .zip(reference.pixels())
        .map(|(a, b)| a.abs_diff(*b))
        .max()
        .unwrap();
    assert!(worst <= 1, "{worst}");
}

#[test]
fn result_does_not_depend_on_thread_count() {
    let f = random_grid(64, 32, 12);
    let o = FrftOrder::pair(1.3, -2.2).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| frft_2d(&f, &o, Path::Fast).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert!(a
        .data()
        .iter()
        .zip(b.data())
        .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
}

fn signal() -> impl Strategy<Value = Vec<Complex64>> {
    (1usize..=32).prop_flat_map(|half| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * half)
            .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
    })
}

proptest! {
    #[test]
    fn fast_matches_direct_and_inverts(f in signal(), alpha in -7.0f64..7.0) {
        prop_assume!(alpha.sin().abs() > 1e-6);
        prop_assume!(f.iter().any(|z| z.norm() > 1e-3));
        let fast = frft_1d_fast(&f, alpha).unwrap();
        let direct = frft_1d_direct(&f, alpha).unwrap();
        let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let diff: Vec<Complex64> = fast.iter().zip(&direct).map(|(a, b)| a - b).collect();
        prop_assert!(norm(&diff) <= 1e-9 * norm(&direct));
        prop_assert!((norm(&fast) - norm(&f)).abs() <= 1e-12 * norm(&f));
        let back = frft_1d_fast(&fast, -alpha).unwrap();
        let diff: Vec<Complex64> = back.iter().zip(&f).map(|(a, b)| a - b).collect();
        prop_assert!(norm(&diff) <= 1e-12 * norm(&f));
    }
}

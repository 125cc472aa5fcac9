mod common;

use std::f64::consts::PI;

use frft_riesz::crypto::{
    decrypt, encrypt, key_sensitivity_sweep, load_key, mse, save_key, EncryptionKey, KeyParam,
    PhaseMask, Scheme,
};
use frft_riesz::io::{normalize, synth_test_image};
use frft_riesz::{frft_2d, Angle, ComplexGrid, Path, RealGrid, SymbolKind, SymbolSpec};
use proptest::prelude::*;

use common::Noise;

fn key(beta: f64, seed1: u64, seed2: u64) -> EncryptionKey {
    EncryptionKey::new(
        [Angle::pi_fraction(1.0, 4), Angle::pi_fraction(3.0, 8)],
        [Angle::pi_fraction(5.0, 8), Angle::pi_fraction(7.0, 8)],
        beta,
        seed1,
        seed2,
    )
    .unwrap()
}

fn image(n: usize) -> RealGrid {
    normalize(&synth_test_image(n).unwrap())
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    sab / (saa * sbb).sqrt()
}

#[test]
fn masks_look_uniform_and_uncorrelated() {
    let n = 256;
    let m = PhaseMask::generate(42, n, n).unwrap();
    let p = m.phases();
    let mean = p.iter().sum::<f64>() / p.len() as f64;
    assert!((mean - 0.5).abs() < 5e-3);
    let left: Vec<f64> = (0..n * n)
        .filter(|i| i % n != n - 1)
        .map(|i| p[i])
        .collect();
    let right: Vec<f64> = (0..n * n)
        .filter(|i| i % n != n - 1)
        .map(|i| p[i + 1])
        .collect();
    assert!(pearson(&left, &right).abs() < 0.02);
    let other = PhaseMask::generate(43, n, n).unwrap();
    assert!(pearson(p, other.phases()).abs() < 0.02);
}

#[test]
fn cipher_amplitude_does_not_track_the_image() {
    let img = image(128);
    let c = encrypt(&img, &key(0.75, 11, 12), Scheme::RieszPotential, Path::Fast).unwrap();
    let amp: Vec<f64> = c.data().iter().map(|z| z.norm()).collect();
    assert!(pearson(img.data(), &amp).abs() <= 0.1);
}

#[test]
fn one_seed_bit_breaks_decryption() {
    let img = image(64);
    let k = key(1.0, 5, 6);
    let c = encrypt(&img, &k, Scheme::RieszPotential, Path::Fast).unwrap();
    let mut wrong = k;
    wrong.seed2 ^= 1;
    let bad = decrypt(&c, &wrong, Scheme::RieszPotential, Path::Fast).unwrap();
    assert!(mse(&bad, &img).unwrap() >= 0.01);
}

#[test]
fn schemes_match_explicit_construction() {
    let img = image(32);
    let k = key(0.6, 1, 2);
    let (a, g) = (k.alpha_order().unwrap(), k.gamma_order().unwrap());
    let p1 = PhaseMask::generate(1, 32, 32).unwrap().field();
    let p2 = PhaseMask::generate(2, 32, 32).unwrap().field();
    let stage = frft_2d(
        &ComplexGrid::from_real(&img).hadamard(&p1).unwrap(),
        &a,
        Path::Direct,
    )
    .unwrap();

    let plain = frft_2d(&stage.hadamard(&p2).unwrap(), &g, Path::Direct).unwrap();
    let got = encrypt(&img, &k, Scheme::FrftOnly, Path::Fast).unwrap();
    assert!(got.rel_l2_error(&plain).unwrap() < 1e-12);

    let m = SymbolSpec::new(SymbolKind::RieszPotential { beta: 0.6 }, a)
        .unwrap()
        .multiplier(32, 32)
        .unwrap();
    let weighted = frft_2d(
        &stage.hadamard(&m).unwrap().hadamard(&p2).unwrap(),
        &g,
        Path::Direct,
    )
    .unwrap();
    let got = encrypt(&img, &k, Scheme::RieszPotential, Path::Fast).unwrap();
    assert!(got.rel_l2_error(&weighted).unwrap() < 1e-12);
}

#[test]
fn frft_only_round_trip() {
    let img = image(64);
    let k = key(1.2, 9, 10);
    let c = encrypt(&img, &k, Scheme::FrftOnly, Path::Fast).unwrap();
    let back = decrypt(&c, &k, Scheme::FrftOnly, Path::Fast).unwrap();
    assert!(mse(&back, &img).unwrap() < 1e-20);
}

#[test]
fn rejects_unnormalized_images() {
    let img = RealGrid::new(2, 2, vec![0.0, 0.5, 1.0, 2.0]).unwrap();
    assert!(encrypt(&img, &key(1.0, 1, 2), Scheme::RieszPotential, Path::Fast).is_err());
}

#[test]
fn thread_count_does_not_change_ciphertext() {
    let img = image(64);
    let k = key(0.9, 3, 4);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| encrypt(&img, &k, Scheme::RieszPotential, Path::Fast).unwrap())
    };
    let (a, b) = (run(1), run(3));
    assert!(a
        .data()
        .iter()
        .zip(b.data())
        .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
}

#[test]
fn key_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    let k = EncryptionKey::new(
        [Angle::Radians(0.1 + 0.2), Angle::pi_fraction(-3.0, 8)],
        [Angle::pi_fraction(5.0, 8), Angle::Radians(2.0_f64.sqrt())],
        1.0 / 3.0,
        u64::MAX,
        0,
    )
    .unwrap();
    save_key(&k, &path).unwrap();
    assert!(load_key(&path).unwrap().same_bits(&k));
    assert!(load_key(&dir.path().join("missing")).is_err());
}

#[test]
fn sweeps() {
    let img = image(32);
    let k = key(1.0, 7, 8);
    let zero = key_sensitivity_sweep(
        &img,
        &k,
        KeyParam::Beta,
        &[0.0],
        Scheme::RieszPotential,
        Path::Fast,
    )
    .unwrap();
    assert!(zero.mse[0].unwrap() < 1e-20);

    let devs: Vec<f64> = (-4..=4).map(|i| i as f64 * 0.05).collect();
    let s = key_sensitivity_sweep(
        &img,
        &k,
        KeyParam::Gamma1,
        &devs,
        Scheme::RieszPotential,
        Path::Fast,
    )
    .unwrap();
    assert_eq!(s.argmin(), Some(4));
    assert!(s.mse.iter().all(Option::is_some));
    assert!(s.to_csv().starts_with("deviation,mse\n"));
    assert_eq!(s.to_csv().lines().count(), devs.len() + 1);

    // α₁ = π/4 shifted by −π/4 lands on an identity axis.
    let s = key_sensitivity_sweep(
        &img,
        &k,
        KeyParam::Alpha1,
        &[-PI / 4.0, 0.0],
        Scheme::FrftOnly,
        Path::Fast,
    )
    .unwrap();
    assert_eq!(s.mse[0], None);
    assert_eq!(s.argmin(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn correct_key_recovers_any_image(beta in 0.25f64..1.75, seed in any::<u64>(), s1 in any::<u64>()) {
        let mut noise = Noise::new(seed);
        let data = (0..16 * 16).map(|_| (noise.next() + 1.0) / 2.0).collect();
        let img = RealGrid::new(16, 16, data).unwrap();
        let k = key(beta, s1, s1.wrapping_add(1));
        let c = encrypt(&img, &k, Scheme::RieszPotential, Path::Fast).unwrap();
        let back = decrypt(&c, &k, Scheme::RieszPotential, Path::Fast).unwrap();
        prop_assert!(mse(&back, &img).unwrap() <= 1e-20);
    }
}

//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Reference ratios marked "pinned" were produced by the reference run of
//! this crate at seed 42 and are frozen as regression constants; the
//! remaining thresholds are analytic.

use num_complex::Complex64;
use std::time::Instant;

use stframe::admissibility::{bessel_xi_bound, check_seminorm_admissibility, CheckConfig};
use stframe::frame::{
    analyze, frame_operator_apply, gram, naive_coefficient, walnut_apply, FrameIndex, FrameSpec,
    Tag,
};
use stframe::partition::{
    lattice_points, make_dyadic_1d, make_polar_2d, validate_admissible, Direction, Point,
    ValidationConfig,
};
use stframe::sobolev::{
    coefficient_energy, dilation_family, estimate_frame_bounds, gaussian_family, gaussian_mixtures,
    scan_nu, sobolev_norm_sq, Lcg, Signal,
};
use stframe::window::{BandSymbol, Window};

fn sinc_spec(j_max: u32, nu: f64, lambda_max: f64) -> FrameSpec {
    let mut spec = FrameSpec::new(make_dyadic_1d(j_max), Window::SincPow(1), nu).unwrap();
    spec.lambda_max = lambda_max;
    spec
}

/// Orthonormality of the sinc system at nu = 1 with exact normalization:
/// the Gram matrix over j in [0,4], |lambda| <= 8 is the identity to 1e-6.
#[test]
fn criterion_01_orthonormality() {
    let start = Instant::now();
    let spec = sinc_spec(4, 1.0, 8.0);
    let indices = spec.indices();
    let g = gram(&spec, &indices).unwrap();
    let n = indices.len();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let expect = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((g[a * n + b] - Complex64::new(expect, 0.0)).norm());
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 1 (orthonormality, {} elements): max |G - I| = {worst:.3e}, {elapsed:?} -> {}",
        n,
        if worst < 1e-6 { "PASS" } else { "FAIL" }
    );
    assert!(worst < 1e-6, "max deviation {worst}");
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
}

/// Sinc-window band symbols equal the band indicators exactly (double
/// precision) away from the interval endpoints.
#[test]
fn criterion_02_symbol_closed_form() {
    let p = make_dyadic_1d(8);
    let mut rng = Lcg::new(2024);
    let mut checked = 0usize;
    for j in 0..=8i32 {
        for k in [Direction::Pos, Direction::Neg] {
            let band = p.band(j, k).unwrap();
            let lat = lattice_points(band).unwrap();
            let sym = BandSymbol::new(Window::SincPow(1), band, &lat).unwrap();
            let iv = match band.geometry {
                stframe::partition::BandGeometry::Interval(iv) => iv,
                _ => unreachable!(),
            };
            let mut done = 0;
            while done < 10_000 {
                let w = rng.range(iv.lo - 5.0, iv.hi + 5.0);
                // stay clear of the half-integer endpoints
                if (w - w.floor() - 0.5).abs() < 1e-9 {
                    continue;
                }
                let expect = if iv.contains(w) { 1.0 } else { 0.0 };
                assert_eq!(sym.eval(Point::D1(w)), expect, "j={j} k={k} w={w}");
                done += 1;
                checked += 1;
            }
        }
    }
    println!("criterion 2 (symbol closed form): {checked} samples exact -> PASS");
}

/// Parseval at s = 0: narrow-band signals inside the truncation ceiling
/// satisfy |energy - ||f||^2| / ||f||^2 < 1e-6 on the sinc frame at nu = 1.
#[test]
fn criterion_03_parseval() {
    let spec = sinc_spec(4, 1.0, 64.0);
    let signals = stframe::sobolev::narrowband_family();
    assert_eq!(signals.len(), 10);
    let mut worst = 0.0f64;
    for f in &signals {
        let table = analyze(&spec, f).unwrap();
        let energy = coefficient_energy(&table, 0.0).unwrap();
        let l2 = sobolev_norm_sq(f, 0.0, &spec.grid).unwrap();
        let rel = (energy - l2).abs() / l2;
        worst = worst.max(rel);
        assert!(
            rel < 1e-6,
            "{}: energy {energy} vs l2 {l2} (rel {rel:.3e})",
            f.id()
        );
    }
    println!("criterion 3 (Parseval, 10 signals): worst rel err {worst:.3e} -> PASS");
}

/// Walnut equivalence: the lattice-sum form of the weighted frame operator
/// agrees with analysis + synthesis to 1e-6 relative on seeded mixtures.
#[test]
fn criterion_04_walnut_equivalence() {
    let start = Instant::now();
    let mut spec = FrameSpec::new(make_dyadic_1d(3), Window::Gaussian, 0.25).unwrap();
    spec.lambda_max = 16.0;
    let signals = gaussian_mixtures(42, 5);
    let mut worst = 0.0f64;
    for s in [0.0, 1.0] {
        for f in &signals {
            let direct = frame_operator_apply(&spec, f, s).unwrap();
            let walnut = walnut_apply(&spec, f, s).unwrap();
            let qd = direct.inner_with_signal(f);
            let qw = walnut.inner_with_signal(f);
            let rel = (qd - qw).norm() / qd.norm();
            worst = worst.max(rel);
            assert!(rel < 1e-6, "s={s} {}: {qd} vs {qw} (rel {rel:.3e})", f.id());
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 4 (Walnut equivalence): worst rel diff {worst:.3e}, {elapsed:?} -> PASS");
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
}

/// Boxcar seminorm admissibility: the sampled band infima respect the
/// alternating-series floor 2/pi - 1/2 for j <= 6, the fitted tail rate
/// approaches 3/2 (within [1.4, 1.6] for j in [5, 8]), and the seminorm
/// check passes at s = 0.5 while failing at s = 1.5.
#[test]
fn criterion_05_boxcar_seminorm() {
    let p = make_dyadic_1d(8);
    let cfg = CheckConfig::default();
    let rep = check_seminorm_admissibility(&Window::Boxcar, &p, 0.5, &cfg).unwrap();
    let floor = 2.0 / std::f64::consts::PI - 0.5 - 1e-3;
    for b in rep.bands.iter().filter(|b| b.j <= 6) {
        assert!(
            b.interior_inf >= floor,
            "({},{}): inf {} below floor",
            b.j,
            b.k,
            b.interior_inf
        );
    }
    for b in rep.bands.iter().filter(|b| b.j >= 5) {
        assert!(
            (1.4..=1.6).contains(&b.tail_exponent),
            "({},{}): tail exponent {}",
            b.j,
            b.k,
            b.tail_exponent
        );
    }
    assert!(rep.pass, "s=0.5 should pass: {:?}", rep.failures);
    let fail = check_seminorm_admissibility(&Window::Boxcar, &p, 1.5, &cfg).unwrap();
    assert!(!fail.pass, "s=1.5 should fail");
    println!(
        "criterion 5 (boxcar seminorm): inf floor ok, tail in [1.4,1.6] for j>=5, s=0.5 pass / s=1.5 fail -> PASS"
    );
}

/// Bessel uniformity: the per-scale Bessel constants of the gaussian window
/// at nu = 1/4 stay within a factor 2 of their median for j = 2..8.
#[test]
fn criterion_06_bessel_uniformity() {
    let p = make_dyadic_1d(8);
    let mut vals = Vec::new();
    for j in 2..=8i32 {
        let band = p.band(j, Direction::Pos).unwrap();
        vals.push(bessel_xi_bound(&Window::Gaussian, band, 0.25, 0.0, 512).unwrap());
    }
    let mut sorted = vals.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    for (i, v) in vals.iter().enumerate() {
        assert!(
            *v <= 2.0 * median && *v >= median / 2.0,
            "j = {}: {v} vs median {median}",
            i + 2
        );
    }
    println!(
        "criterion 6 (Bessel uniformity): values {:?} median {median:.4} -> PASS",
        vals.iter()
            .map(|v| (v * 1e4).round() / 1e4)
            .collect::<Vec<_>>()
    );
}

/// Norm-equivalence stability: all family ratios strictly positive, the
/// spread B/A within 20% of the pinned reference, and the sublattice scan
/// nu = 1, 1/2, 1/4 nondecreasing in A.
#[test]
fn criterion_07_norm_equivalence_stability() {
    // pinned reference spreads (B_hat / A_hat) for s = 0, 1, 2 at seed 42
    const SPREAD_REF: [(f64, f64); 3] = [
        (0.0, 1.460104189466),
        (1.0, 3.086829773264),
        (2.0, 8.493843863398),
    ];
    let mut spec = FrameSpec::new(make_dyadic_1d(3), Window::Gaussian, 0.25).unwrap();
    spec.lambda_max = 16.0;
    let family = gaussian_family(42);
    for (s, reference) in SPREAD_REF {
        let est = estimate_frame_bounds(&spec, &family, s).unwrap();
        assert!(est.ratios.iter().all(|r| r.ratio > 0.0));
        let spread = est.b_hat / est.a_hat;
        let rel = (spread - reference).abs() / reference;
        assert!(
            rel <= 0.20,
            "s={s}: spread {spread} vs pinned {reference} (rel {rel:.3})"
        );
    }
    let scans = scan_nu(&spec, &family, 0.0, &[1.0, 0.5, 0.25]).unwrap();
    for w in scans.windows(2) {
        assert!(
            w[1].1.a_hat >= w[0].1.a_hat - 1e-12,
            "A_hat decreased: {} -> {}",
            w[0].1.a_hat,
            w[1].1.a_hat
        );
    }
    println!(
        "criterion 7 (norm equivalence): spreads within 20% of reference, A_hat scan {:?} nondecreasing -> PASS",
        scans.iter().map(|(nu, e)| (*nu, (e.a_hat * 1e3).round() / 1e3)).collect::<Vec<_>>()
    );
}

/// Seminorm dilation robustness: boxcar at s = 1/2, dilations a in
/// {1/4,...,4}: every ratio falls inside the pinned reference envelope.
#[test]
fn criterion_08_seminorm_dilation_robustness() {
    // pinned reference envelope of the first oracle run (1% slack for
    // cross-platform libm jitter)
    const A_REF: f64 = 1.038010585869;
    const B_REF: f64 = 4.529952679859;
    let mut spec = FrameSpec::new(make_dyadic_1d(3), Window::Boxcar, 0.25).unwrap();
    spec.seminorm_mode = true;
    spec.j_neg = 6;
    spec.lambda_max = 16.0;
    spec.s = 0.5;
    let est = estimate_frame_bounds(&spec, &dilation_family(), 0.5).unwrap();
    for r in &est.ratios {
        assert!(
            r.ratio >= A_REF * 0.99 && r.ratio <= B_REF * 1.01,
            "{}: ratio {} outside [{A_REF}, {B_REF}]",
            r.signal_id,
            r.ratio
        );
    }
    println!(
        "criterion 8 (seminorm dilation robustness): ratios within [{:.4}, {:.4}] -> PASS",
        est.a_hat, est.b_hat
    );
}

/// Partition admissibility: dyadic (j_max = 8) and polar (j_max = 4)
/// validate with no holes, overlap 1 and scale ratios inside [1/2, 2).
#[test]
fn criterion_09_partition_admissibility() {
    let config = ValidationConfig::default();
    let d1 = validate_admissible(&make_dyadic_1d(8), &config);
    assert!(d1.pass && d1.holes.is_empty() && d1.empty_lattice_bands.is_empty());
    assert_eq!(d1.max_overlap, 1);
    assert!(
        d1.c_inf >= 0.5 && d1.c_sup < 2.0,
        "{} {}",
        d1.c_inf,
        d1.c_sup
    );

    let d2 = validate_admissible(&make_polar_2d(4), &config);
    assert!(d2.pass && d2.holes.is_empty() && d2.empty_lattice_bands.is_empty());
    assert_eq!(d2.max_overlap, 1);
    assert!(d2.c_inf >= 0.5 && d2.c_sup < 2.0);
    println!(
        "criterion 9 (partition admissibility): dyadic N=1 c=[{}, {}], polar N=1 c=[{}, {}] -> PASS",
        d1.c_inf, d1.c_sup, d2.c_inf, d2.c_sup
    );
}

/// Oracle equivalence: the single-sweep analysis equals naive per-index
/// quadrature to 1e-10 relative on a small instance for both the gaussian
/// and the boxcar window.
#[test]
fn criterion_10_oracle_equivalence() {
    let mut worst = 0.0f64;
    for window in [Window::Gaussian, Window::Boxcar] {
        let mut spec = FrameSpec::new(make_dyadic_1d(3), window, 0.5).unwrap();
        spec.lambda_max = 4.0;
        let signal = Signal::gaussian(1.0, 0.2, 1.5);
        let table = analyze(&spec, &signal).unwrap();
        let mut scale = 0.0f64;
        let mut err = 0.0f64;
        for (idx, c) in &table.entries {
            let naive = naive_coefficient(&spec, &signal, idx).unwrap();
            err = err.max((c - naive).norm());
            scale = scale.max(naive.norm());
        }
        let rel = err / scale;
        worst = worst.max(rel);
        assert!(rel <= 1e-10, "{}: rel {rel:.3e}", spec.window);
    }
    println!("criterion 10 (oracle equivalence): worst rel {worst:.3e} -> PASS");
}

/// The walnut off-diagonal terms vanish for signals band-limited to one
/// enlarged region when nu < 1/2 (supporting check for the Walnut path).
#[test]
fn walnut_band_limited_terms_vanish() {
    let mut spec = sinc_spec(3, 0.25, 8.0);
    spec.nu = 0.25;
    let signal = Signal::Bump {
        center: 5.5,
        halfwidth: 2.0,
        amplitude: 1.0,
    };
    for m in [-2i64, -1, 1, 2] {
        let term = stframe::frame::walnut_term(
            &spec,
            &signal,
            0.0,
            Tag::Band {
                j: 2,
                k: Direction::Pos,
            },
            m,
        )
        .unwrap();
        assert_eq!(term.norm_sq(), 0.0, "m = {m}");
    }
}

/// Self-coefficient sanity on the orthonormal frame, exercised through the
/// signal catalog's frame-element kind.
#[test]
fn frame_element_self_analysis() {
    let spec = sinc_spec(4, 1.0, 8.0);
    let target = FrameIndex::band(3, Direction::Neg, -2);
    let signal = Signal::FrameElement {
        spec: Box::new(spec.clone()),
        idx: target,
    };
    let table = analyze(&spec, &signal).unwrap();
    for (idx, c) in &table.entries {
        let expect = if *idx == target { 1.0 } else { 0.0 };
        assert!(
            (c - Complex64::new(expect, 0.0)).norm() < 1e-8,
            "{idx}: {c}"
        );
    }
}

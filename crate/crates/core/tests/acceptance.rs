//! Acceptance criteria. Each test prints one `PASS` / `FAIL` line and then
//! asserts the same verdict, so `cargo test --test acceptance -- --nocapture`
//! doubles as a report.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rss_lb::budget::{evaluate, EvalOptions};
use rss_lb::channel::{fspl, plos_ntn, scintillation_loss, EnvKind, GasAttenuationProvider};
use rss_lb::geometry::{
    n_max_continuous, optimal_placement_scattering, optimal_placement_specular,
    scattering_path_product, specular_path_distance, PlatformClass, ReflectorUnitSpec,
};
use rss_lb::metrics::{max_coverage_radius, outage_monte_carlo, outage_probability};
use rss_lb::reflection::{
    pr_reflector_sum_oracle, pr_scattering_aerial, pr_scattering_terrestrial, pr_specular_aerial,
    pr_specular_terrestrial, LogDistanceParams, Paradigm, ReflectorState,
};
use rss_lb::scenario::{load_scenario, Scenario};
use rss_lb::sweep::{run_sweep, Scale, SweepSpec, SweepVariable};
use rss_lb::units::{dbm_to_watts, watts_to_dbm};

// ---------------------------------------------------------------------------
// Pinned tolerances and limits

const C1_RUNTIME: Duration = Duration::from_secs(1);
const C2_REL_TOL: f64 = 1e-12;
const C2_RUNTIME: Duration = Duration::from_secs(1);
const C3_PAIRS: usize = 50;
const C3_GRID_POINTS: usize = 10_000;
const C3_MIN_M: f64 = 10.0;
const C3_MAX_M: f64 = 500_000.0;
const C3_RUNTIME: Duration = Duration::from_secs(10);
const C4_FREQS_GHZ: [f64; 4] = [6.0, 30.0, 100.0, 300.0];
const C4_FORMULA_REL_TOL: f64 = 1e-12;
const C5_PLOS_TOL: f64 = 1e-4;
const C5_SCINT_TOL_DB: f64 = 1e-3;
const C5_FSPL_TOL_DB: f64 = 0.01;
const C6_TRIPLES: usize = 100;
const C6_SAMPLES: u64 = 1_000_000;
const C6_SIGMAS: f64 = 3.0;
const C6_RUNTIME: Duration = Duration::from_secs(30);
const C7_OUTAGE_TARGET: f64 = 0.10;
const C7_THRESHOLD_DBM: f64 = -115.0;
/// "Much smaller than" between UAV and HAPS radii.
const C7_MUCH_LESS_FACTOR: f64 = 10.0;
const C7_HAPS_MIN_M: f64 = 10_000.0;
const C7_HAPS_MAX_M: f64 = 100_000.0;
const C7_HAPS_OVER_TERRESTRIAL: f64 = 40.0;
const C8_RADIUS_M: f64 = 50_000.0;
const C8_GRID_POINTS: usize = 201;
const C8_RUNTIME: Duration = Duration::from_secs(60);

fn verdict(id: u32, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("{tag} criterion {id} ({title}): {detail}");
    assert!(pass, "criterion {id} failed: {detail}");
}

fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_1_feasibility_matrix() {
    let start = Instant::now();
    let expected = [
        (PlatformClass::Terrestrial, 250, 5_000, true),
        (PlatformClass::Haps, 26_926, 80_000, true),
        (PlatformClass::Uav, 1_005, 6, false),
        (PlatformClass::Leo, 353_554, 5_000, false),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (class, n_min, n_max, feasible) in expected {
        let s = load_scenario(&format!(
            r#"{{"platform":"{}","paradigm":"specular","radio":{{"f_ghz":30}}}}"#,
            class.label()
        ))
        .unwrap();
        let rep = evaluate(&s, &GasAttenuationProvider::Zero, EvalOptions::default()).unwrap();
        let got = (
            rep.n_min.unwrap(),
            rep.n_max,
            rep.result.feasibility.is_feasible(),
        );
        pass &= got == (n_min, n_max, feasible);
        parts.push(format!(
            "{class} N_min={} N_max={} feasible={}",
            got.0, got.1, got.2
        ));
    }
    // The rounded "about 27 000" reading for HAPS.
    let haps_rounding = rel_err(26_926.0, 27_000.0);
    pass &= haps_rounding <= 0.005;
    let elapsed = start.elapsed();
    pass &= elapsed < C1_RUNTIME;
    verdict(
        1,
        "feasibility matrix",
        pass,
        &format!(
            "{}; HAPS vs 27000 off by {:.3}%; {elapsed:?}",
            parts.join(", "),
            100.0 * haps_rounding
        ),
    );
}

#[test]
fn criterion_2_closed_forms_match_per_reflector_sum() {
    let start = Instant::now();
    let base = LogDistanceParams::free_space(10.0, 0.01);
    let mut worst: f64 = 0.0;
    for n in [1u64, 10, 100] {
        // Terrestrial mirror with direct path, alpha = 4.
        let p = base.with_exponent(4.0);
        let d = 250.0;
        let units = vec![ReflectorState::ideal(d, d); n as usize];
        let oracle = pr_reflector_sum_oracle(&p, &units, Paradigm::Specular, Some(2.0 * d));
        worst = worst.max(rel_err(oracle, pr_specular_terrestrial(&p, d, n)));

        // Terrestrial scatterer, alpha = 4, asymmetric hops.
        let (d_t, d_r) = (180.0, 420.0);
        let units = vec![ReflectorState::ideal(d_t, d_r); n as usize];
        let oracle = pr_reflector_sum_oracle(&p, &units, Paradigm::Scattering, None);
        worst = worst.max(rel_err(oracle, pr_scattering_terrestrial(&p, d_t, d_r, n)));

        // Aerial mirror, alpha = 2, HAPS geometry at r = d.
        let (d_t, d_r) = (53_851.648_071_345_04, 53_851.648_071_345_04);
        let units = vec![ReflectorState::ideal(d_t, d_r); n as usize];
        let oracle = pr_reflector_sum_oracle(&base, &units, Paradigm::Specular, None);
        worst = worst.max(rel_err(oracle, pr_specular_aerial(&base, d_t, d_r, n)));

        // Aerial scatterer at the optimum, d_t d_r = 2 H d.
        let h: f64 = 20_000.0;
        let r = optimal_placement_scattering(h, 50_000.0).positions()[0];
        let (d_t, d_r) = (h.hypot(r), h.hypot(100_000.0 - r));
        let units = vec![ReflectorState::ideal(d_t, d_r); n as usize];
        let oracle = pr_reflector_sum_oracle(&base, &units, Paradigm::Scattering, None);
        worst = worst.max(rel_err(
            oracle,
            pr_scattering_aerial(&base, 2.0 * h * 50_000.0, n),
        ));
    }
    let elapsed = start.elapsed();
    verdict(
        2,
        "closed forms vs per-reflector sum",
        worst <= C2_REL_TOL && elapsed < C2_RUNTIME,
        &format!("worst relative error {worst:.3e} (limit {C2_REL_TOL:e}); {elapsed:?}"),
    );
}

#[test]
fn criterion_3_placement_optimality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (lo, hi) = (C3_MIN_M.ln(), C3_MAX_M.ln());
    let mut failures = Vec::new();
    for _ in 0..C3_PAIRS {
        let h = rng.random_range(lo..hi).exp();
        let d = rng.random_range(lo..hi).exp();
        let step = 2.0 * d / (C3_GRID_POINTS - 1) as f64;
        let grid = (0..C3_GRID_POINTS).map(|i| i as f64 * step);
        let argmin = |f: &dyn Fn(f64) -> f64| {
            grid.clone()
                .map(|r| (r, f(r)))
                .fold((f64::NAN, f64::INFINITY), |best, cur| {
                    if cur.1 < best.1 {
                        cur
                    } else {
                        best
                    }
                })
        };

        let (r_sp, v_sp) = argmin(&|r| specular_path_distance(h, d, r));
        let star = optimal_placement_specular(h, d);
        if (r_sp - star).abs() > step || specular_path_distance(h, d, star) > v_sp {
            failures.push(format!(
                "specular H={h:.1} d={d:.1} grid={r_sp:.3} closed={star:.3}"
            ));
        }

        let (r_sc, v_sc) = argmin(&|r| scattering_path_product(h, d, r));
        let roots = optimal_placement_scattering(h, d).positions();
        let near = roots
            .iter()
            .map(|x| (x - r_sc).abs())
            .fold(f64::INFINITY, f64::min);
        let best_root = roots
            .iter()
            .map(|&x| scattering_path_product(h, d, x))
            .fold(f64::INFINITY, f64::min);
        if near > step || best_root > v_sc * (1.0 + 1e-15) {
            failures.push(format!(
                "scattering H={h:.1} d={d:.1} grid={r_sc:.3} roots={roots:?}"
            ));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        3,
        "placement optimality",
        failures.is_empty() && elapsed < C3_RUNTIME,
        &format!(
            "{} of {} pairs off by more than one grid step {:?}; {elapsed:?}",
            failures.len(),
            C3_PAIRS,
            failures
        ),
    );
}

#[test]
fn criterion_4_full_surface_power_is_frequency_invariant() {
    let mut pass = true;
    let mut parts = Vec::new();
    for class in PlatformClass::ALL {
        let mut levels = Vec::new();
        let mut worst_formula: f64 = 0.0;
        for f in C4_FREQS_GHZ {
            let s = load_scenario(&format!(
                r#"{{"platform":"{}","paradigm":"scattering","channel":"log_distance","radio":{{"f_ghz":{f}}}}}"#,
                class.label()
            ))
            .unwrap();
            let rep = evaluate(&s, &GasAttenuationProvider::Zero, EvalOptions::default()).unwrap();
            levels.push(rep.result.pr_mean_dbm);

            // Generic scattering power with the un-rounded reflector count.
            let (alpha, d0) = match s.channel {
                rss_lb::scenario::ChannelModel::LogDistance {
                    alpha,
                    ref_distance_m,
                } => (alpha, ref_distance_m),
                _ => unreachable!(),
            };
            let lambda = s.radio.wavelength_m();
            let unit = ReflectorUnitSpec::srss(s.radio.c1, s.radio.c2).unwrap();
            let n = n_max_continuous(s.platform.rss_area_m2, &unit, lambda);
            let (d_t, d_r) = (rep.tx_distance_m, rep.rx_distance_m);
            let generic = dbm_to_watts(s.radio.pt_dbm)
                * (lambda / (4.0 * PI)).powi(4)
                * d0.powf(2.0 * alpha - 4.0)
                * n
                * n
                / (d_t * d_r).powf(alpha);
            worst_formula =
                worst_formula.max(rel_err(dbm_to_watts(rep.result.pr_mean_dbm), generic));
        }
        let flat = levels.iter().all(|&v| v == levels[0]);
        pass &= flat && worst_formula <= C4_FORMULA_REL_TOL;
        parts.push(format!(
            "{class}: {:.4} dBm, identical={flat}, vs generic formula {worst_formula:.1e}",
            levels[0]
        ));
    }
    verdict(4, "frequency invariance at N_max", pass, &parts.join("; "));
}

#[test]
fn criterion_5_fitted_model_spot_values() {
    let plos = plos_ntn(90.0, EnvKind::Rural);
    let scint = scintillation_loss(30.0, 10.0, 45.0);
    let loss = fspl(30.0, 20_000.0);
    let pass = (plos - 0.9705).abs() <= C5_PLOS_TOL
        && (scint - 1.074).abs() <= C5_SCINT_TOL_DB
        && (loss - 148.01).abs() <= C5_FSPL_TOL_DB;
    verdict(
        5,
        "fitted-model spot values",
        pass,
        &format!("P_LoS(rural, 90 deg)={plos:.6}, scintillation(30 GHz, 10 deg)={scint:.6} dB, FSPL(30 GHz, 20 km)={loss:.4} dB"),
    );
}

#[test]
fn criterion_6_outage_matches_monte_carlo() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut misses = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for i in 0..C6_TRIPLES {
        let mean = rng.random_range(-140.0..-60.0);
        let sigma = rng.random_range(0.5..15.0);
        let x = mean + sigma * rng.random_range(-3.0..3.0);
        let p = outage_probability(mean, sigma, x);
        let mc = outage_monte_carlo(mean, sigma, x, C6_SAMPLES, 600 + i as u64).unwrap();
        let bound = C6_SIGMAS * (p * (1.0 - p) / C6_SAMPLES as f64).sqrt();
        worst_ratio = worst_ratio.max((mc - p).abs() / bound);
        if (mc - p).abs() > bound {
            misses.push(format!(
                "#{i}: analytic {p:.6} mc {mc:.6} bound {bound:.2e}"
            ));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        6,
        "analytic vs Monte Carlo outage",
        misses.is_empty() && elapsed < C6_RUNTIME,
        &format!(
            "{} of {C6_TRIPLES} triples outside 3 sigma (largest |diff|/bound {worst_ratio:.2}) {misses:?}; {elapsed:?}",
            misses.len()
        ),
    );
}

#[test]
fn criterion_7_coverage_radius_ordering() {
    // The terrestrial model is urban-only, so all platforms are compared in
    // the urban environment.
    let radius = |class: PlatformClass| {
        let s = load_scenario(&format!(
            r#"{{"platform":"{}","environment":"urban","paradigm":"scattering","channel":"standards","threshold_dbm":{C7_THRESHOLD_DBM}}}"#,
            class.label()
        ))
        .unwrap();
        max_coverage_radius(&s, &GasAttenuationProvider::Zero, C7_OUTAGE_TARGET).unwrap()
    };
    let t = radius(PlatformClass::Terrestrial);
    let u = radius(PlatformClass::Uav);
    let h = radius(PlatformClass::Haps);
    let l = radius(PlatformClass::Leo);
    let pass = t < u
        && h >= C7_MUCH_LESS_FACTOR * u
        && (C7_HAPS_MIN_M..=C7_HAPS_MAX_M).contains(&h)
        && h >= C7_HAPS_OVER_TERRESTRIAL * t;
    verdict(
        7,
        "coverage radius ordering",
        pass,
        &format!(
            "terrestrial {t:.0} m < UAV {u:.0} m << HAPS {h:.0} m (HAPS/UAV {:.1}, HAPS/terrestrial {:.1}); LEO {l:.0} m",
            h / u,
            h / t
        ),
    );
}

/// Argmax of the rate over the normalized placement grid, and the closed-form
/// optima mapped to the same axis.
fn rate_optimal_placement(env: EnvKind) -> (f64, Vec<f64>) {
    let mut s: Scenario = load_scenario(&format!(
        r#"{{"platform":"haps","environment":"{}","paradigm":"scattering","channel":"standards"}}"#,
        env.label()
    ))
    .unwrap();
    s.platform.coverage_radius_m = C8_RADIUS_M;
    let spec = SweepSpec::new(
        SweepVariable::NormalizedPlacement,
        0.0,
        2.0,
        C8_GRID_POINTS,
        Scale::Linear,
    )
    .unwrap();
    let rows = run_sweep(
        &s,
        &spec,
        &GasAttenuationProvider::Zero,
        EvalOptions::default(),
    )
    .unwrap();
    let (nu, _) = rows.iter().map(|(x, r)| (*x, r.rate_bps)).fold(
        (f64::NAN, f64::NEG_INFINITY),
        |best, cur| if cur.1 > best.1 { cur } else { best },
    );
    let closed = optimal_placement_scattering(s.platform.altitude_m, C8_RADIUS_M)
        .positions()
        .into_iter()
        .map(|r| 2.0 - r / C8_RADIUS_M)
        .collect();
    (nu, closed)
}

fn nearest(values: &[f64], x: f64) -> f64 {
    values
        .iter()
        .copied()
        .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
        .unwrap()
}

#[test]
fn criterion_8_placement_drift() {
    let start = Instant::now();
    let step = 2.0 / (C8_GRID_POINTS - 1) as f64;

    let (rural_nu, rural_closed) = rate_optimal_placement(EnvKind::Rural);
    let rural_ref = nearest(&rural_closed, rural_nu);
    let rural_ok = (rural_nu - rural_ref).abs() <= step + 1e-12;

    let (du_nu, du_closed) = rate_optimal_placement(EnvKind::DenseUrban);
    let du_ref = nearest(&du_closed, du_nu);
    let du_ok = (du_nu - 1.0).abs() < (du_ref - 1.0).abs();

    let elapsed = start.elapsed();
    verdict(
        8,
        "placement drift",
        rural_ok && du_ok && elapsed < C8_RUNTIME,
        &format!(
            "rural optimum nu={rural_nu:.3} vs closed form {rural_ref:.3} (ok={rural_ok}); \
             dense urban optimum nu={du_nu:.3} vs closed form {du_ref:.3}, toward nu=1: {du_ok}; {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_9_absolute_levels_not_claimed() {
    // Nothing is asserted about absolute curve levels. The closed-form value
    // below is reported so the gap to published plot readings is visible.
    let p = LogDistanceParams::free_space(10.0, 0.01);
    let d_t = 20_000f64.hypot(50_000.0);
    let pr = watts_to_dbm(pr_specular_aerial(&p, d_t, d_t, 26_926));
    let pass = (pr - (-34.025_340_343_585_78)).abs() < 1e-9;
    verdict(
        9,
        "absolute figure levels (not claimed)",
        pass,
        &format!("HAPS mirror power at N_min evaluates to {pr:.2} dBm; absolute plot levels are not reproduced or claimed"),
    );
}

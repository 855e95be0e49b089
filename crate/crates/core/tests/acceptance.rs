//! End-to-end acceptance criteria. Each test prints one pass/fail line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.

use num_complex::Complex64;

use fzeta_core::checks::{self, ContentMatch};
use fzeta_core::contfrac::{irrationality_evidence, ExactReal};
use fzeta_core::merom::{self, residue_fit};
use fzeta_core::quasi;
use fzeta_core::sets::{make_astring, make_cantor, LengthModel};
use fzeta_core::spectrum;
use fzeta_core::tubes::{
    box_dimension_estimate, cantor_profile_max, cantor_profile_min, cantor_threshold,
    log_profile, minkowski_contents_estimate, unit_ball_volume, TubeModel,
};
use fzeta_core::zeta::{self, ZetaEvalConfig};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(criterion: &str, passed: bool, detail: String) {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{criterion}: {detail}");
}

#[test]
fn criterion_01_closed_form_agreement() {
    let start = std::time::Instant::now();
    let mut worst = 0.0f64;
    for (m, a) in [(2u32, 1.0 / 3.0), (3u32, 0.2)] {
        let delta = cantor_threshold(m, a);
        let model = merom::cantor_model(m, a, delta).unwrap();
        let tube = TubeModel::cantor_gapsum(m, a);
        let cfg = ZetaEvalConfig::with_delta(delta);
        let d = model.abscissa;
        for i in 0..5 {
            for j in 0..5 {
                let re = d + 0.05 + (1.0 - d - 0.05) * (i as f64 + 1.0) / 6.0;
                let im = -5.0 + 2.5 * j as f64;
                let s = c64(re, im);
                let numeric = zeta::distance_zeta(&tube, s, &cfg).unwrap().value;
                let closed = model.eval(s).unwrap();
                worst = worst.max((numeric - closed).norm() / closed.norm());
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "01 closed-form agreement",
        worst < 1e-7 && elapsed < 5.0,
        format!("max rel err {worst:.3e}, {elapsed:.2} s"),
    );
}

#[test]
fn criterion_02_functional_equation() {
    let mut worst = 0.0f64;
    for set in [make_cantor(2, 1.0 / 3.0).unwrap(), make_astring(1.0).unwrap()] {
        let cfg = ZetaEvalConfig {
            quad_tol: 1e-11,
            ..ZetaEvalConfig::with_delta(zeta::default_delta(&set))
        };
        for s in [c64(0.8, 0.0), c64(0.9, 0.0), c64(0.7, 2.0)] {
            let r = zeta::functional_equation_residual(&set, s, &cfg).unwrap();
            worst = worst.max(r);
        }
    }
    report("02 functional equation", worst < 1e-8, format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_03_scaling_law() {
    let set = make_cantor(2, 1.0 / 3.0).unwrap();
    let cfg = ZetaEvalConfig::with_delta(1.0 / 6.0);
    let mut worst = 0.0f64;
    for lambda in [2.0, 3.0, 0.5] {
        let r = zeta::scaling_residual(&set, lambda, c64(0.8, 0.0), &cfg).unwrap();
        worst = worst.max(r);
    }
    report("03 scaling law", worst < 1e-8, format!("max residual {worst:.3e}"));
}

#[test]
fn criterion_04_residue_content_squeeze() {
    let (m, a) = (2u32, 1.0 / 3.0);
    let d = 2f64.ln() / 3f64.ln();
    let tube = TubeModel::cantor_gapsum(m, a);
    let cfg = ZetaEvalConfig::with_delta(1.0 / 6.0);
    let fit = residue_fit(
        |s| zeta::distance_zeta(&tube, s, &cfg).map(|z| z.value),
        d,
        0.4,
        5,
    )
    .unwrap();
    let res = fit.residue.re;

    let lower = (1.0 - d) * cantor_profile_min(d);
    let upper = (1.0 - d) * cantor_profile_max(m, a);
    let contents = minkowski_contents_estimate(&tube, d, 1e-6, 1e-4, 1024).unwrap();
    let bar = 3.0 * (1.0 - d) * contents.residual_spread;
    let margin_lo = res - lower;
    let margin_hi = upper - res;
    let strict = margin_lo > bar && margin_hi > bar;

    let reference = 2.0 / 2f64.ln() * (0.5 - a).powf(d);
    let close = (res - reference).abs() < 1e-3;
    report(
        "04 residue-content squeeze",
        strict && close,
        format!(
            "res {res:.6} in ({lower:.6}, {upper:.6}), margins ({margin_lo:.2e}, {margin_hi:.2e}) > {bar:.2e}, |res-ref| = {:.2e}",
            (res - reference).abs()
        ),
    );
}

#[test]
fn criterion_05_sphere_tube_residue_equality() {
    let mut ok = true;
    let mut detail = String::new();
    for n in [1u32, 2, 3] {
        let d = n as f64 - 1.0;
        let exact = 2.0 * n as f64 * unit_ball_volume(n);
        let model = merom::sphere_model(n, 0.5).unwrap();
        let closed = model.residue_at(c64(d, 0.0)).unwrap().re;
        let closed_ok = (closed - exact).abs() <= 1e-12 * exact;

        let tube = TubeModel::sphere(n);
        let cfg = ZetaEvalConfig::with_delta(0.5);
        let fit = residue_fit(
            |s| zeta::tube_zeta(&tube, s, &cfg).map(|z| z.value),
            d,
            0.1,
            6,
        )
        .unwrap();
        let fit_ok = (fit.residue.re - exact).abs() < 1e-6;

        let contents = minkowski_contents_estimate(&tube, d, 1e-6, 1e-4, 512).unwrap();
        let mid = 0.5 * (contents.lower + contents.upper);
        let content_ok = (mid - exact).abs() < 0.005 * exact;

        ok &= closed_ok && fit_ok && content_ok;
        detail.push_str(&format!(
            "N={n}: closed {closed:.8}, fit err {:.2e}, content err {:.2e}; ",
            (fit.residue.re - exact).abs(),
            (mid - exact).abs() / exact
        ));
    }
    report("05 sphere tube-residue equality", ok, detail);
}

#[test]
fn criterion_06_sphere_pole_table() {
    let mut ok = true;
    let mut detail = String::new();
    for n in 1..=6u32 {
        let model = merom::sphere_model(n, 0.5).unwrap();
        let expected: Vec<f64> = (0..)
            .map(|j| n as f64 - (2 * j + 1) as f64)
            .take_while(|&d| d >= 0.0)
            .collect();
        let got: Vec<f64> = model.dims.isolated.iter().map(|p| p.location.re).collect();
        let mut exp_sorted = expected.clone();
        exp_sorted.sort_by(f64::total_cmp);
        let poles_ok = got == exp_sorted;
        let res_ok = expected.iter().all(|&dd| {
            let k = (n as f64 - dd) as u32;
            let r = model.residue_at(c64(dd, 0.0)).unwrap().re;
            (r - 2.0 * unit_ball_volume(n) * fzeta_core::tubes::binomial(n, k)).abs()
                <= 1e-13 * r.abs()
        });
        ok &= poles_ok && res_ok;
        detail.push_str(&format!("N={n}:{} ", if poles_ok && res_ok { "ok" } else { "BAD" }));
    }
    report("06 sphere pole table", ok, detail);
}

#[test]
fn criterion_07_residue_relation() {
    // closed forms: res(tube) = res(dist)/(N−D) to 1e-12
    let mut worst_closed = 0.0f64;
    for (m, a) in [(2u32, 1.0 / 3.0), (3u32, 0.2)] {
        let dist = merom::cantor_model(m, a, cantor_threshold(m, a)).unwrap();
        let tube = merom::cantor_tube_model(m, a).unwrap();
        let d = dist.abscissa;
        let rd = dist.residue_at(c64(d, 0.0)).unwrap().re;
        let rt = tube.residue_at(c64(d, 0.0)).unwrap().re;
        worst_closed = worst_closed.max(((rt - rd / (1.0 - d)) / rt).abs());
    }

    // numeric fits to 1e-3
    let (m, a) = (2u32, 1.0 / 3.0);
    let d = 2f64.ln() / 3f64.ln();
    let gaps = TubeModel::cantor_gapsum(m, a);
    let cfg = ZetaEvalConfig::with_delta(cantor_threshold(m, a));
    let fit_dist = residue_fit(
        |s| zeta::distance_zeta(&gaps, s, &cfg).map(|z| z.value),
        d,
        0.4,
        5,
    )
    .unwrap();
    let fit_tube = residue_fit(
        |s| zeta::tube_zeta(&gaps, s, &cfg).map(|z| z.value),
        d,
        0.4,
        5,
    )
    .unwrap();
    let numeric_gap = (fit_tube.residue.re - fit_dist.residue.re / (1.0 - d)).abs();

    report(
        "07 residue relation tube vs distance",
        worst_closed < 1e-12 && numeric_gap < 1e-3,
        format!("closed-form rel gap {worst_closed:.2e}, numeric gap {numeric_gap:.2e}"),
    );
}

#[test]
fn criterion_08_grill_shift() {
    let (m, a) = (2u32, 1.0 / 3.0);
    let d = 2f64.ln() / 3f64.ln();
    let delta = 1.0 / 6.0;
    let base = TubeModel::cantor_gapsum(m, a);
    let grill = TubeModel::grill_layer(base.clone(), 1.0, 1e-10);
    let embedded = TubeModel::embedded(base.clone(), 1, 1e-10);
    let cfg = ZetaEvalConfig::with_delta(delta);

    let mut worst = 0.0f64;
    for s in [c64(1.7, 0.0), c64(1.8, 0.0), c64(1.9, 0.0), c64(2.0, 1.0), c64(1.75, 2.0)] {
        let lhs = zeta::distance_zeta(&grill, s, &cfg).unwrap().value;
        let one_down = zeta::distance_zeta(&base, s - 1.0, &cfg).unwrap().value;
        let embedded_term = zeta::distance_zeta(&embedded, s, &cfg).unwrap().value;
        let rhs = one_down + embedded_term;
        worst = worst.max((lhs - rhs).norm() / rhs.norm());
    }

    // lattice algebra: dim_PC shifts by d exactly
    let model = merom::cantor_model(m, a, delta).unwrap();
    let g = merom::grill_shift(&model, 1);
    let pc = g.dims.principal();
    let lattice_ok = (g.abscissa - (d + 1.0)).abs() < 1e-12
        && pc.lattices.len() == 1
        && (pc.lattices[0].base.re - (d + 1.0)).abs() < 1e-12
        && (pc.lattices[0].period - 2.0 * std::f64::consts::PI / 3f64.ln()).abs() < 1e-12;

    report(
        "08 grill shift",
        worst < 1e-4 && lattice_ok,
        format!("max rel err {worst:.3e}, lattice shift exact: {lattice_ok}"),
    );
}

#[test]
fn criterion_09_box_dimension_regression() {
    let cases: Vec<(TubeModel, f64, &str)> = vec![
        (TubeModel::cantor_gapsum(2, 1.0 / 3.0), 2f64.ln() / 3f64.ln(), "cantor"),
        (TubeModel::string_gaps(LengthModel::PowerGaps { a: 1.0 }), 0.5, "a-string"),
        (TubeModel::sphere(2), 1.0, "sphere2"),
        (TubeModel::sphere(3), 2.0, "sphere3"),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (tube, expected, name) in cases {
        let est = box_dimension_estimate(&tube, 1e-6, 1e-2, 64).unwrap();
        let err = (est.dim - expected).abs();
        ok &= err < 0.02;
        detail.push_str(&format!("{name}: {:.4} vs {expected:.4}; ", est.dim));
    }
    report("09 box-dimension regression", ok, detail);
}

#[test]
fn criterion_10_quasiperiodic_certification() {
    let d = 2f64.ln() / 3f64.ln();
    let (_, r23) = quasi::build_quasiperiodic(d, &[2, 3]).unwrap();
    let (_, r235) = quasi::build_quasiperiodic(0.5, &[2, 3, 5]).unwrap();
    let (_, r24) = quasi::build_quasiperiodic(0.5, &[2, 4]).unwrap();
    let (_, r236) = quasi::build_quasiperiodic(0.5, &[2, 3, 6]).unwrap();
    let cert_ok = r23.certified && r235.certified && !r24.certified && !r236.certified;

    // periodogram of the exact union profile over 5·max T_i
    let (set, rec) = quasi::build_quasiperiodic(d, &[2, 3]).unwrap();
    let tube = TubeModel::for_set(&set).unwrap();
    let t_max = rec.periods.iter().cloned().fold(0.0, f64::max);
    let span = 5.0 * t_max;
    let n = 2048;
    let dt = span / n as f64;
    let taus: Vec<f64> = (0..n).map(|i| 2.3 + i as f64 * dt).collect();
    let g = log_profile(&tube, d, &taus).unwrap();
    let matches = spectrum::period_recover(&g, dt, &rec.periods).unwrap();
    let bins: Vec<f64> = matches.iter().map(|m| m.bins_off).collect();
    let recover_ok = bins.iter().all(|&b| b <= 2.0);

    let cf = irrationality_evidence(&ExactReal::LogRatio { m1: 2, m2: 3 }, 20).unwrap();
    let cf_ok = !cf.terminated && cf.certified_depth >= 20;

    report(
        "10 quasiperiodic certification",
        cert_ok && recover_ok && cf_ok,
        format!("certificates ok: {cert_ok}, period bins off {bins:?}, cf depth {}", cf.certified_depth),
    );
}

#[test]
fn criterion_11_dti_suite() {
    let items = checks::dti_items();
    let ok = items.iter().all(|i| i.passed);
    let detail = items
        .iter()
        .map(|i| format!("{}: {}", i.name, if i.passed { "ok" } else { "BAD" }))
        .collect::<Vec<_>>()
        .join("; ");
    report("11 dti suite", ok, detail);
}

#[test]
fn criterion_12_equivalence_relation() {
    // δ-independence
    let m1 = merom::cantor_model(2, 1.0 / 3.0, 1.0 / 6.0).unwrap();
    let m2 = merom::cantor_model(2, 1.0 / 3.0, 0.4).unwrap();
    let delta_ok = merom::equivalent(&m1, &m2, 1e-9).unwrap();

    // kernel form 1/(1 − m a^s)
    let kernel = merom::geometric_kernel_model(2.0, 1.0 / 3.0).unwrap();
    let kernel_ok = merom::equivalent(&m1, &kernel, 1e-9).unwrap();

    // distinct dimensions are inequivalent
    let other = merom::cantor_model(2, 0.25, cantor_threshold(2, 0.25)).unwrap();
    let distinct_ok = !merom::equivalent(&m1, &other, 1e-9).unwrap();

    // reflexive and symmetric across a 10-model corpus
    let corpus = vec![
        m1.clone(),
        m2.clone(),
        kernel.clone(),
        other.clone(),
        merom::cantor_model(3, 0.2, cantor_threshold(3, 0.2)).unwrap(),
        merom::cantor_tube_model(2, 1.0 / 3.0).unwrap(),
        merom::sphere_model(2, 0.5).unwrap(),
        merom::sphere_model(3, 0.5).unwrap(),
        merom::string_dictionary(LengthModel::PowerGaps { a: 1.0 }, 0.25).unwrap(),
        merom::string_dictionary(LengthModel::Geometric { first: 0.5, ratio: 0.5 }, 0.25).unwrap(),
    ];
    let mut relation_ok = true;
    for x in &corpus {
        relation_ok &= merom::equivalent(x, x, 1e-9).unwrap();
        for y in &corpus {
            relation_ok &=
                merom::equivalent(x, y, 1e-9).unwrap() == merom::equivalent(y, x, 1e-9).unwrap();
        }
    }

    report(
        "12 equivalence relation",
        delta_ok && kernel_ok && distinct_ok && relation_ok,
        format!("delta {delta_ok}, kernel {kernel_ok}, distinct {distinct_ok}, axioms {relation_ok}"),
    );
}

#[test]
fn criterion_13_astring_dual_content() {
    let rep = checks::astring_dual_content_report(1.0).unwrap();
    let full_ok = rep.full_matches != ContentMatch::Neither;
    let inner_ok = rep.inner_matches != ContentMatch::Neither;
    report(
        "13 a-string dual content",
        full_ok && inner_ok,
        format!(
            "full {:.6} -> {:?}, inner {:.6} -> {:?} (2sqrt2 = {:.6}, closed-form value = {:.6})",
            rep.full_constant,
            rep.full_matches,
            rep.inner_constant,
            rep.inner_matches,
            rep.two_sqrt2,
            rep.closed_form_value
        ),
    );
}

#[test]
fn criterion_summary_sphere_n1_is_point_pair() {
    // corollary frozen values used across criteria: N = 1 sphere is {−1, 1}
    let model = merom::sphere_model(1, 0.5).unwrap();
    let r = model.residue_at(c64(0.0, 0.0)).unwrap().re;
    report("xx two-point set content", (r - 4.0).abs() < 1e-14, format!("res {r}"));
}

#[test]
fn criterion_xx_sphere_n2_residue_4pi() {
    let model = merom::sphere_model(2, 0.5).unwrap();
    let r = model.residue_at(c64(1.0, 0.0)).unwrap().re;
    report(
        "xx circle residue",
        (r - 4.0 * std::f64::consts::PI).abs() < 1e-12,
        format!("res {r}"),
    );
}

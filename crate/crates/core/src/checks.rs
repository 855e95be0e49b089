//! Named verification suites over a set: functional equation, scaling law,
//! residue/content comparisons, closed-form agreement, quasiperiodic
//! certification, and the Dirichlet-type-integral battery. The CLI `check`
//! command and the acceptance tests drive these.

use num_complex::Complex64;

use crate::contfrac::{irrationality_evidence, ExactReal};
use crate::dti::{dti_eval, DtiDescriptor};
use crate::error::{Error, Result};
use crate::merom;
use crate::quasi;
use crate::sets::FractalSet;
use crate::spectrum;
use crate::tubes::{self, log_profile, minkowski_contents_estimate, TubeModel};
use crate::zeta::{self, ZetaEvalConfig};

#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CheckItem {
    fn residual(name: impl Into<String>, measured: f64, threshold: f64) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: measured.is_finite() && measured < threshold,
            measured,
            threshold,
            detail: String::new(),
        }
    }

    fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed,
            measured: if passed { 1.0 } else { 0.0 },
            threshold: 1.0,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub suite: String,
    pub set: String,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|i| i.passed)
    }
}

pub const SUITES: [&str; 6] =
    ["functional-eq", "scaling", "residue-content", "closed-form", "quasi", "dti"];

pub fn run_suite(set: &FractalSet, suite: &str) -> Result<CheckReport> {
    let items = match suite {
        "functional-eq" => functional_eq_items(set)?,
        "scaling" => scaling_items(set)?,
        "residue-content" => residue_content_items(set)?,
        "closed-form" => closed_form_items(set)?,
        "quasi" => quasi_items(set)?,
        "dti" => dti_items(),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite `{other}` (expected one of {SUITES:?})"
            )))
        }
    };
    Ok(CheckReport { suite: suite.to_string(), set: set.to_string(), items })
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn functional_eq_items(set: &FractalSet) -> Result<Vec<CheckItem>> {
    if set.ambient_dim() != 1 {
        return Err(Error::InvalidParameter(
            "functional-eq needs a 1-d set (both evaluators available)".into(),
        ));
    }
    let cfg = ZetaEvalConfig { quad_tol: 1e-11, ..ZetaEvalConfig::with_delta(zeta::default_delta(set)) };
    let mut items = Vec::new();
    for s in [c64(0.8, 0.0), c64(0.9, 0.0), c64(0.7, 2.0)] {
        let r = zeta::functional_equation_residual(set, s, &cfg)?;
        items.push(CheckItem::residual(format!("functional-eq s={s}"), r, 1e-8));
    }
    Ok(items)
}

fn scaling_items(set: &FractalSet) -> Result<Vec<CheckItem>> {
    let cfg = ZetaEvalConfig::with_delta(zeta::default_delta(set));
    let s = c64(0.8, 0.0);
    let mut items = Vec::new();
    for lambda in [2.0, 3.0, 0.5] {
        let r = zeta::scaling_residual(set, lambda, s, &cfg)?;
        items.push(CheckItem::residual(format!("scaling lambda={lambda}"), r, 1e-8));
    }
    Ok(items)
}

fn residue_content_items(set: &FractalSet) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    match set {
        FractalSet::GeneralizedCantor { m, a } => {
            let dist = merom::cantor_model(*m, *a, zeta::default_delta(set))?;
            let tube_form = merom::cantor_tube_model(*m, *a)?;
            let gaps = TubeModel::cantor_gapsum(*m, *a);
            let d = dist.abscissa;
            let contents = minkowski_contents_estimate(&gaps, d, 1e-6, 1e-4, 1024)?;
            let rep = merom::residue_content_report(Some(&dist), Some(&tube_form), &contents)?;
            items.push(CheckItem::flag(
                "squeeze (N-D)M_* <= res <= (N-D)M^*",
                rep.squeeze_ok == Some(true),
                format!("res={:?} lower={} upper={}", rep.res_distance, rep.content_lower, rep.content_upper),
            ));
            items.push(CheckItem::flag(
                "strict inequalities with 3x-spread margin",
                rep.strict_ok == Some(true),
                format!("margins={:?} spread={}", rep.strict_margins, rep.content_spread),
            ));
            items.push(CheckItem::flag(
                "res(tube) = res(dist)/(N-D)",
                rep.relation_ok == Some(true),
                String::new(),
            ));
        }
        FractalSet::Sphere { n } => {
            let model = merom::sphere_model(*n, 0.5)?;
            let gaps = TubeModel::sphere(*n);
            let d = model.abscissa;
            let contents = minkowski_contents_estimate(&gaps, d, 1e-6, 1e-4, 512)?;
            let rep = merom::residue_content_report(None, Some(&model), &contents)?;
            items.push(CheckItem::flag(
                "M_* <= res(tube) <= M^*",
                rep.squeeze_ok == Some(true),
                String::new(),
            ));
            items.push(CheckItem::flag(
                "measurable: res(tube) = content",
                rep.equality_ok == Some(true),
                format!("res={:?} content=[{}, {}]", rep.res_tube, rep.content_lower, rep.content_upper),
            ));
        }
        FractalSet::AString { a } => {
            let rep = astring_dual_content_report(*a)?;
            items.push(CheckItem::flag(
                "full-tube constant matches a paper value",
                rep.full_matches != ContentMatch::Neither,
                format!("measured {} vs 2sqrt2={} paper-form={}", rep.full_constant, rep.two_sqrt2, rep.closed_form_value),
            ));
            items.push(CheckItem::flag(
                "inner-tube constant matches a paper value",
                rep.inner_matches != ContentMatch::Neither,
                format!("measured {}", rep.inner_constant),
            ));
            items.push(CheckItem::flag(
                "res(dist) = (1-D)·measured content",
                rep.residue_relation_ok,
                String::new(),
            ));
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "residue-content suite supports cantor, sphere and astring sets, got `{other}`"
            )))
        }
    }
    Ok(items)
}

fn closed_form_items(set: &FractalSet) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    match set {
        FractalSet::GeneralizedCantor { m, a } => {
            let delta = zeta::default_delta(set);
            let model = merom::cantor_model(*m, *a, delta)?;
            let gaps = TubeModel::cantor_gapsum(*m, *a);
            let cfg = ZetaEvalConfig::with_delta(delta);
            let d = model.abscissa;
            let mut worst = 0.0f64;
            for i in 0..5 {
                for j in 0..5 {
                    let s = c64(
                        d + 0.05 + (1.0 - d - 0.05) * (i as f64 + 1.0) / 6.0,
                        -5.0 + 2.5 * j as f64,
                    );
                    let numeric = zeta::distance_zeta(&gaps, s, &cfg)?.value;
                    let closed = model.eval(s)?;
                    worst = worst.max((numeric - closed).norm() / closed.norm());
                }
            }
            items.push(CheckItem::residual("cantor closed form vs quadrature (rel)", worst, 1e-7));
        }
        FractalSet::Sphere { n } => {
            let model = merom::sphere_model(*n, 0.5)?;
            let gaps = TubeModel::sphere(*n);
            let cfg = ZetaEvalConfig::with_delta(0.5);
            let d = model.abscissa;
            let mut worst = 0.0f64;
            for i in 0..5 {
                for j in 0..3 {
                    let s = c64(d + 0.1 + 0.2 * i as f64, -2.0 + 2.0 * j as f64);
                    let numeric = zeta::tube_zeta(&gaps, s, &cfg)?.value;
                    let closed = model.eval(s)?;
                    worst = worst.max((numeric - closed).norm() / closed.norm().max(1e-300));
                }
            }
            items.push(CheckItem::residual("sphere tube form vs quadrature (rel)", worst, 1e-7));
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "closed-form suite supports cantor and sphere sets, got `{other}`"
            )))
        }
    }
    Ok(items)
}

/// Reconstruct the certification data from a union of Cantor sets and check
/// rank, period recovery and the continued-fraction evidence.
fn quasi_items(set: &FractalSet) -> Result<Vec<CheckItem>> {
    let FractalSet::DisjointUnion { components } = set else {
        return Err(Error::InvalidParameter("quasi suite needs a union of Cantor sets".into()));
    };
    let mut moduli = Vec::new();
    let mut dims = Vec::new();
    for (c, _) in components {
        match c {
            FractalSet::GeneralizedCantor { m, a: _ } => {
                moduli.push(*m);
                dims.push(c.dim_hint());
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "quasi suite needs Cantor components, got `{other}`"
                )))
            }
        }
    }
    let d0 = dims[0];
    let same_dim = dims.iter().all(|d| (d - d0).abs() < 1e-9);
    let mut items = vec![CheckItem::flag(
        "components share the box dimension",
        same_dim,
        format!("dims = {dims:?}"),
    )];
    if !same_dim {
        return Ok(items);
    }
    let (_, rec) = quasi::build_quasiperiodic(d0, &moduli)?;
    items.push(CheckItem::flag(
        "exponent vectors independent over Q (exact rank)",
        rec.certified,
        format!("moduli {:?}, rank certificate {}", rec.moduli, rec.certified),
    ));
    if rec.certified {
        items.push(CheckItem::flag(
            "pairwise period ratios certified irrational",
            quasi::periods_pairwise_irrational(&rec)?,
            String::new(),
        ));
        // recover the periods from the exact union profile
        let tube = TubeModel::for_set(set)?;
        let t_max = rec.periods.iter().cloned().fold(0.0, f64::max);
        let span = 5.0 * t_max;
        let n = 2048;
        let dt = span / n as f64;
        let tau0 = (1.0 / (0.9 * zeta::default_delta(set))).ln().max(2.0) + 0.3;
        let taus: Vec<f64> = (0..n).map(|i| tau0 + i as f64 * dt).collect();
        let g = log_profile(&tube, d0, &taus)?;
        match spectrum::period_recover(&g, dt, &rec.periods) {
            Ok(matches) => {
                for m in matches {
                    items.push(CheckItem::residual(
                        format!("period {:.4} recovered (bins off)", m.candidate),
                        m.bins_off,
                        2.0,
                    ));
                }
            }
            Err(e) => items.push(CheckItem::flag("period recovery", false, e.to_string())),
        }
        // continued fraction of each period ratio certified non-terminating
        for i in 0..moduli.len() {
            for j in i + 1..moduli.len() {
                let r = irrationality_evidence(
                    &ExactReal::LogRatio { m1: moduli[i] as u64, m2: moduli[j] as u64 },
                    20,
                )?;
                items.push(CheckItem::flag(
                    format!("cf(log {}/log {}) non-terminating to depth 20", moduli[i], moduli[j]),
                    !r.terminated && r.certified_depth >= 20,
                    format!("digits {:?}", &r.digits[..r.digits.len().min(8)]),
                ));
            }
        }
    }
    Ok(items)
}

/// Canonical Dirichlet-type-integral battery.
pub fn dti_items() -> Vec<CheckItem> {
    let mut items = Vec::new();
    let tol = 1e-10;

    let e = DtiDescriptor::elementary(c64(0.5, 0.0));
    let v = dti_eval(&e, c64(2.0, 0.0), tol);
    items.push(match v {
        Ok(v) => CheckItem::residual(
            "elementary(0.5) at s=2 vs 2/3",
            (v - c64(2.0 / 3.0, 0.0)).norm(),
            1e-8,
        ),
        Err(e) => CheckItem::flag("elementary(0.5) at s=2 vs 2/3", false, e.to_string()),
    });

    let t = DtiDescriptor::tensor(
        DtiDescriptor::elementary(c64(0.0, 0.0)),
        DtiDescriptor::elementary(c64(1.0, 0.0)),
    );
    let v = dti_eval(&t, c64(3.0, 0.0), tol);
    items.push(match v {
        Ok(v) => CheckItem::residual(
            "tensor product value vs product 1/6",
            (v - c64(1.0 / 6.0, 0.0)).norm(),
            1e-8,
        ),
        Err(e) => CheckItem::flag("tensor product value vs product 1/6", false, e.to_string()),
    });

    let p = DtiDescriptor::reciprocal_polynomial(vec![c64(0.0, 0.0), c64(1.0, 0.0)], c64(1.0, 0.0))
        .unwrap();
    let mut worst = 0.0f64;
    for i in 0..10 {
        let s = c64(1.4 + 0.2 * i as f64, ((i % 3) as f64 - 1.0) * 1.5);
        match dti_eval(&p, s, tol) {
            Ok(v) => {
                let exact = 1.0 / (s * (s - 1.0));
                worst = worst.max((v - exact).norm());
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    items.push(CheckItem::residual("1/(s(s-1)) at 10 points", worst, 1e-8));

    // abscissa probe brackets max Re a
    let grid: Vec<f64> = (0..30).map(|i| 2.0 - 0.045 * i as f64).collect();
    let probe = zeta::abscissa_probe(
        |s| {
            dti_eval(&p, c64(s, 0.0), tol)
                .map(|v| crate::zeta::ZetaValue { value: v, err_bound: 0.0 })
        },
        &grid,
    );
    items.push(match probe {
        Ok(zeta::AbscissaBracket::Bracket { lo, hi }) => CheckItem::flag(
            "abscissa bracket around max Re a = 1 within 0.05",
            hi - lo <= 0.05 && lo <= 1.0 + 0.05 && hi >= 1.0 - 0.05,
            format!("bracket [{lo:.4}, {hi:.4}]"),
        ),
        other => CheckItem::flag("abscissa bracket around max Re a = 1 within 0.05", false, format!("{other:?}")),
    });
    items
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContentMatch {
    TwoSqrtTwo,
    ClosedFormValue,
    Neither,
}

/// The dual content measurement for the a-string: both the full-neighborhood
/// and the inner-neighborhood constants, compared against the two published
/// values 2√2·(a^D-scaled) and 2^{1-D} a^D/(D(1−D)).
#[derive(Debug, Clone)]
pub struct AStringContentReport {
    pub a: f64,
    pub dim: f64,
    pub full_constant: f64,
    pub inner_constant: f64,
    /// 2√2 for a = 1; in general 2^{1-D} a^D/(1−D).
    pub two_sqrt2: f64,
    /// The alternative closed-form value 2^{1-D} a^D/(D(1−D)).
    pub closed_form_value: f64,
    pub full_matches: ContentMatch,
    pub inner_matches: ContentMatch,
    pub residue_relation_ok: bool,
}

fn classify(measured: f64, v1: f64, v2: f64) -> ContentMatch {
    if (measured - v1).abs() <= 0.01 * v1 {
        ContentMatch::TwoSqrtTwo
    } else if (measured - v2).abs() <= 0.01 * v2 {
        ContentMatch::ClosedFormValue
    } else {
        ContentMatch::Neither
    }
}

pub fn astring_dual_content_report(a: f64) -> Result<AStringContentReport> {
    let set = crate::sets::make_astring(a)?;
    let d = set.dim_hint();
    let lengths = crate::sets::LengthModel::PowerGaps { a };
    let full = TubeModel::string_gaps(lengths.clone());
    let inner = TubeModel::string_inner(lengths.clone());
    let cf = minkowski_contents_estimate(&full, d, 1e-9, 1e-7, 512)?;
    let ci = minkowski_contents_estimate(&inner, d, 1e-9, 1e-7, 512)?;
    let full_c = 0.5 * (cf.lower + cf.upper);
    let inner_c = 0.5 * (ci.lower + ci.upper);
    let reference = 2f64.powf(1.0 - d) * a.powf(d) / (1.0 - d);
    let closed_form_value = reference / d;
    // residue relation res(ζ_A, D) = (1−D)·M with the measured content
    let model = merom::string_dictionary(lengths, zeta::default_delta(&set))?;
    let res = model
        .residue_at(c64(d, 0.0))
        .ok_or_else(|| Error::MissingPoleData("a-string principal residue".into()))?
        .re;
    let relation_ok = (res - (1.0 - d) * full_c).abs() <= 0.01 * res;
    Ok(AStringContentReport {
        a,
        dim: d,
        full_constant: full_c,
        inner_constant: inner_c,
        two_sqrt2: reference,
        closed_form_value,
        full_matches: classify(full_c, reference, closed_form_value),
        inner_matches: classify(inner_c, reference, closed_form_value),
        residue_relation_ok: relation_ok,
    })
}

/// Box-dimension regression battery used by the CLI report.
pub fn box_dimension_items(set: &FractalSet) -> Result<Vec<CheckItem>> {
    let tube = TubeModel::for_set(set)?;
    let est = tubes::box_dimension_estimate(&tube, 1e-6, 1e-2, 64)?;
    let expected = set.dim_hint();
    Ok(vec![CheckItem::residual(
        format!("box dimension regression vs {expected:.4}"),
        (est.dim - expected).abs(),
        0.02,
    )])
}

//! Tube functions t ↦ |A_t| for the supported families: exact closed forms,
//! exact gap sums for 1-d sets, transverse-slicing quadrature for grills,
//! plus Minkowski-content and box-dimension estimators built on top of them.

use crate::error::{Error, Result};
use crate::quad::integrate_real_segmented;
use crate::sets::{FractalSet, LengthModel};

/// Volume of the unit ball in R^n, by the standard two-step recurrence
/// (equivalently π^{n/2}/Γ(n/2+1)).
pub fn unit_ball_volume(n: u32) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut v = 1.0f64;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

/// Half the largest hole of C^(m,a); the closed-form tube expression is valid
/// for t below this value.
pub fn cantor_threshold(m: u32, a: f64) -> f64 {
    let mf = m as f64;
    (1.0 - mf * a) / (2.0 * (mf - 1.0))
}

/// The bounded multiplicatively periodic profile G with |A_t| = t^{1-D} G(ln 1/t)
/// for the generalized Cantor set, minimal period T = ln(1/a).
pub fn cantor_profile(m: u32, a: f64, tau: f64) -> f64 {
    let mf = m as f64;
    let d = mf.ln() / (1.0 / a).ln();
    let c = cantor_threshold(m, a);
    let t_per = (1.0 / a).ln();
    let x = (tau - (1.0 / c).ln()) / t_per;
    let g = x.ceil() - x; // 1-periodic, equals 1-x on (0,1]
    c.powf(d - 1.0) * (mf * a).powf(g) + 2.0 * c.powf(d) * mf.powf(g)
}

/// Interior minimum of the Cantor profile: (1/D)(2D/(1-D))^{1-D}. Depends on
/// the dimension only.
pub fn cantor_profile_min(d: f64) -> f64 {
    (2.0 * d / (1.0 - d)).powf(1.0 - d) / d
}

/// Maximum of the Cantor profile, attained at the period wrap.
pub fn cantor_profile_max(m: u32, a: f64) -> f64 {
    let mf = m as f64;
    let d = mf.ln() / (1.0 / a).ln();
    cantor_threshold(m, a).powf(d - 1.0) * mf * (1.0 - a) / (mf - 1.0)
}

/// Closed-form Cantor tube volume for t in (0, c]; defers to the gap sum
/// beyond the validity threshold.
pub fn tube_exact_cantor(m: u32, a: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::OutOfRange(format!("tube radius must be > 0, got {t}")));
    }
    let c = cantor_threshold(m, a);
    if t > c {
        return Ok(cantor_gap_tube(m, a, t));
    }
    let mf = m as f64;
    let d = mf.ln() / (1.0 / a).ln();
    Ok(t.powf(1.0 - d) * cantor_profile(m, a, (1.0 / t).ln()))
}

/// Exact gap-sum tube volume of C^(m,a): hull plus 2t minus the uncovered
/// parts of gaps longer than 2t. The finite sum over construction levels
/// telescopes to 2t·m^k + (ma)^k with k the number of levels whose gaps
/// exceed 2t; that form is used because the naive subtraction cancels
/// catastrophically for small t.
fn cantor_gap_tube(m: u32, a: f64, t: f64) -> f64 {
    let mf = m as f64;
    let c = cantor_threshold(m, a);
    if t >= c {
        return 1.0 + 2.0 * t;
    }
    // k = smallest level index with gap 2c·a^k <= 2t
    let mut k = ((c / t).ln() / (1.0 / a).ln()).ceil();
    // guard the rounding: want a^{k-1} > t/c >= a^k
    while k > 0.0 && c * a.powf(k - 1.0) <= t {
        k -= 1.0;
    }
    while c * a.powf(k) > t {
        k += 1.0;
    }
    if k * mf.ln() < 700.0 {
        2.0 * t * mf.powf(k) + (mf * a).powf(k)
    } else {
        // same telescoped sum, in log space to dodge overflow of m^k
        ((2.0 * t).ln() + k * mf.ln()).exp() + (k * (mf * a).ln()).exp()
    }
}

/// Gap-sum tube volume of a string set {a_k} ∪ {0}: 2t(J+1) + a_{J+1} with
/// J the number of gaps longer than 2t.
fn string_gap_tube(lengths: &LengthModel, t: f64) -> f64 {
    let x = 2.0 * t;
    match lengths {
        LengthModel::Finite(v) => {
            let mut vol = lengths.total() + x;
            for &l in v {
                if l > x {
                    vol -= l - x;
                } else {
                    break;
                }
            }
            vol
        }
        LengthModel::Geometric { .. } => {
            let j = lengths.count_longer_than(x);
            x * (j + 1) as f64 + lengths.tail(j + 1)
        }
        LengthModel::PowerGaps { a } => {
            // ℓ_j ~ a j^{-(1+a)}: if the cut index fits an integer, count
            // exactly, otherwise solve on the real line.
            let approx = if x < lengths.length(1) {
                (a / x).powf(1.0 / (1.0 + a))
            } else {
                0.0
            };
            if approx < 4.0e15 {
                let j = lengths.count_longer_than(x);
                x * (j + 1) as f64 + lengths.tail(j + 1)
            } else {
                let j = approx;
                x * (j + 1.0) + (j + 1.0).powf(-a)
            }
        }
    }
}

/// Inner tube volume of the string realization: only the parts of the
/// neighborhood inside the complementary intervals, Σ_j min(ℓ_j, 2t).
pub fn string_inner_tube(lengths: &LengthModel, t: f64) -> f64 {
    string_gap_tube(lengths, t) - 2.0 * t
}

/// Sphere tube: ω_N((1+t)^N − (1−t)^N) for t < 1, expanded in odd powers for
/// stability at small t; beyond t = 1 the inner ball is swallowed and the
/// volume is ω_N (1+t)^N.
pub fn tube_sphere(n: u32, t: f64) -> f64 {
    let w = unit_ball_volume(n);
    if t >= 1.0 {
        return w * (1.0 + t).powi(n as i32);
    }
    let mut v = 0.0;
    let mut k = 1u32;
    while k <= n {
        v += 2.0 * binomial(n, k) * t.powi(k as i32);
        k += 2;
    }
    w * v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeSource {
    ClosedForm,
    GapSum,
    Sliced,
    Sampled,
}

#[derive(Debug, Clone)]
enum TubeKind {
    CantorClosed { m: u32, a: f64 },
    CantorGaps { m: u32, a: f64 },
    StringGaps { lengths: LengthModel },
    StringInner { lengths: LengthModel },
    SphereShell { n: u32 },
    /// base × [0, side] in one more dimension, via the slice identity
    /// |(A×[0,s])_t| = s·|A_t| + |(A×{0})_t|.
    Grill { base: Box<TubeModel>, side: f64, tol: f64 },
    /// A × {0}^1: the same set one dimension up.
    Codim { base: Box<TubeModel>, tol: f64 },
    Union { parts: Vec<TubeModel>, t_max: f64 },
    Scaled { base: Box<TubeModel>, factor: f64 },
    Sampled { log_t: Vec<f64>, log_v: Vec<f64> },
}

/// A tube-function model: evaluates |A_t| and carries the ambient dimension,
/// the dimension hint and the validity range of its expression.
#[derive(Debug, Clone)]
pub struct TubeModel {
    kind: TubeKind,
    pub ambient_dim: u32,
    pub dim_hint: f64,
    /// Upper end of the t-range on which the expression is trusted.
    pub t_max: f64,
    /// Multiplicative period T of t^{D-N}|A_t| when exactly log-periodic.
    pub period_hint: Option<f64>,
    pub source: TubeSource,
}

impl TubeModel {
    /// Default (exact) model for a set: gap sums for 1-d families, the shell
    /// formula for spheres, slicing for grills.
    pub fn for_set(set: &FractalSet) -> Result<TubeModel> {
        Self::for_set_tol(set, 1e-10)
    }

    pub fn for_set_tol(set: &FractalSet, slice_tol: f64) -> Result<TubeModel> {
        Ok(match set {
            FractalSet::GeneralizedCantor { m, a } => Self::cantor_gapsum(*m, *a),
            FractalSet::AString { a } => Self::string_gaps(LengthModel::PowerGaps { a: *a }),
            FractalSet::FractalString { lengths } => Self::string_gaps(lengths.clone()),
            FractalSet::Sphere { n } => Self::sphere(*n),
            FractalSet::Grill { base, d, side } => {
                let mut model = Self::for_set_tol(base, slice_tol)?;
                for _ in 0..*d {
                    model = Self::grill_layer(model, *side, slice_tol);
                }
                model
            }
            FractalSet::DisjointUnion { components } => {
                let parts: Result<Vec<TubeModel>> = components
                    .iter()
                    .map(|(c, _)| Self::for_set_tol(c, slice_tol))
                    .collect();
                let parts = parts?;
                let sep = set.union_separation().unwrap_or(f64::INFINITY);
                Self::union(parts, sep / 2.0)?
            }
            FractalSet::Scaled { base, factor } => {
                Self::scaled(Self::for_set_tol(base, slice_tol)?, *factor)
            }
        })
    }

    pub fn cantor_closed(m: u32, a: f64) -> TubeModel {
        let mf = m as f64;
        TubeModel {
            kind: TubeKind::CantorClosed { m, a },
            ambient_dim: 1,
            dim_hint: mf.ln() / (1.0 / a).ln(),
            t_max: cantor_threshold(m, a),
            period_hint: Some((1.0 / a).ln()),
            source: TubeSource::ClosedForm,
        }
    }

    pub fn cantor_gapsum(m: u32, a: f64) -> TubeModel {
        let mf = m as f64;
        TubeModel {
            kind: TubeKind::CantorGaps { m, a },
            ambient_dim: 1,
            dim_hint: mf.ln() / (1.0 / a).ln(),
            t_max: f64::INFINITY,
            period_hint: Some((1.0 / a).ln()),
            source: TubeSource::GapSum,
        }
    }

    pub fn string_gaps(lengths: LengthModel) -> TubeModel {
        let dim = match &lengths {
            LengthModel::PowerGaps { a } => 1.0 / (1.0 + a),
            _ => 0.0,
        };
        TubeModel {
            kind: TubeKind::StringGaps { lengths },
            ambient_dim: 1,
            dim_hint: dim,
            t_max: f64::INFINITY,
            period_hint: None,
            source: TubeSource::GapSum,
        }
    }

    /// Inner-neighborhood variant of a string tube.
    pub fn string_inner(lengths: LengthModel) -> TubeModel {
        let mut m = Self::string_gaps(lengths);
        if let TubeKind::StringGaps { lengths } = m.kind {
            m.kind = TubeKind::StringInner { lengths };
        }
        m
    }

    pub fn sphere(n: u32) -> TubeModel {
        TubeModel {
            kind: TubeKind::SphereShell { n },
            ambient_dim: n,
            dim_hint: n as f64 - 1.0,
            t_max: 1.0,
            period_hint: None,
            source: TubeSource::ClosedForm,
        }
    }

    pub fn grill_layer(base: TubeModel, side: f64, tol: f64) -> TubeModel {
        let ambient = base.ambient_dim + 1;
        let dim = base.dim_hint + 1.0;
        let t_max = base.t_max;
        let period = base.period_hint;
        TubeModel {
            kind: TubeKind::Grill { base: Box::new(base), side, tol },
            ambient_dim: ambient,
            dim_hint: dim,
            t_max,
            period_hint: period,
            source: TubeSource::Sliced,
        }
    }

    /// The same set viewed `extra` dimensions up (A × {0}^extra).
    pub fn embedded(base: TubeModel, extra: u32, tol: f64) -> TubeModel {
        let mut model = base;
        for _ in 0..extra {
            let ambient = model.ambient_dim + 1;
            let dim = model.dim_hint;
            let t_max = model.t_max;
            let period = model.period_hint;
            model = TubeModel {
                kind: TubeKind::Codim { base: Box::new(model), tol },
                ambient_dim: ambient,
                dim_hint: dim,
                t_max,
                period_hint: period,
                source: TubeSource::Sliced,
            };
        }
        model
    }

    pub fn union(parts: Vec<TubeModel>, t_max: f64) -> Result<TubeModel> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("union tube needs parts".into()));
        }
        let ambient = parts[0].ambient_dim;
        if parts.iter().any(|p| p.ambient_dim != ambient) {
            return Err(Error::InvalidParameter("union tube parts must share dimension".into()));
        }
        let dim = parts.iter().map(|p| p.dim_hint).fold(0.0, f64::max);
        let t_cap = parts.iter().map(|p| p.t_max).fold(t_max, f64::min);
        let periods: Vec<f64> = parts.iter().filter_map(|p| p.period_hint).collect();
        let period = if periods.len() == parts.len()
            && periods.iter().all(|p| (p - periods[0]).abs() < 1e-12)
        {
            Some(periods[0])
        } else {
            None
        };
        Ok(TubeModel {
            kind: TubeKind::Union { parts, t_max },
            ambient_dim: ambient,
            dim_hint: dim,
            t_max: t_cap,
            period_hint: period,
            source: TubeSource::GapSum,
        })
    }

    pub fn scaled(base: TubeModel, factor: f64) -> TubeModel {
        let ambient = base.ambient_dim;
        let dim = base.dim_hint;
        let t_max = base.t_max * factor;
        let period = base.period_hint;
        let source = base.source;
        TubeModel {
            kind: TubeKind::Scaled { base: Box::new(base), factor },
            ambient_dim: ambient,
            dim_hint: dim,
            t_max,
            period_hint: period,
            source,
        }
    }

    pub fn sampled(ts: &[f64], vols: &[f64], ambient: u32, dim_hint: f64) -> Result<TubeModel> {
        if ts.len() != vols.len() || ts.len() < 2 {
            return Err(Error::InvalidParameter("sampled tube needs matching samples".into()));
        }
        let log_t: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
        let log_v: Vec<f64> = vols.iter().map(|v| v.ln()).collect();
        if log_t.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("sample radii must increase".into()));
        }
        Ok(TubeModel {
            kind: TubeKind::Sampled { log_t, log_v },
            ambient_dim: ambient,
            dim_hint,
            t_max: *ts.last().unwrap(),
            period_hint: None,
            source: TubeSource::Sampled,
        })
    }

    /// Radii in `(lo, hi)` where the tube function has slope breaks, at most
    /// `cap` of them (largest first when thinning). Quadratures seed their
    /// panels here so each panel sees a smooth integrand.
    pub fn breakpoints(&self, lo: f64, hi: f64, cap: usize) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_breakpoints(lo, hi, cap, &mut out);
        out.retain(|r| *r > lo && *r < hi);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    fn collect_breakpoints(&self, lo: f64, hi: f64, cap: usize, out: &mut Vec<f64>) {
        if out.len() >= cap || !(hi > lo) {
            return;
        }
        match &self.kind {
            TubeKind::CantorClosed { m, a } | TubeKind::CantorGaps { m, a } => {
                // kinks where 2t crosses a gap length: t = c a^k
                let c = cantor_threshold(*m, *a);
                let mut r = c;
                while r >= hi {
                    r *= a;
                }
                while r > lo && out.len() < cap {
                    out.push(r);
                    r *= a;
                }
            }
            TubeKind::StringGaps { lengths } | TubeKind::StringInner { lengths } => {
                // kinks at t = ℓ_j / 2
                let mut j = lengths.count_longer_than(2.0 * hi) + 1;
                while out.len() < cap {
                    let l = lengths.length(j);
                    if l <= 2.0 * lo || l <= 0.0 {
                        break;
                    }
                    out.push(l / 2.0);
                    j += 1;
                }
            }
            TubeKind::SphereShell { .. } | TubeKind::Sampled { .. } => {}
            TubeKind::Grill { base, .. } | TubeKind::Codim { base, .. } => {
                // slicing smooths the base kinks to C^1; seed lightly anyway
                base.collect_breakpoints(lo, hi, cap.min(64), out);
            }
            TubeKind::Union { parts, .. } => {
                for p in parts {
                    p.collect_breakpoints(lo, hi, cap, out);
                }
            }
            TubeKind::Scaled { base, factor } => {
                let mut inner = Vec::new();
                base.collect_breakpoints(lo / factor, hi / factor, cap, &mut inner);
                out.extend(inner.into_iter().map(|r| r * factor));
            }
        }
    }

    /// |A_t|. Total in t > 0 for gap-sum and closed-form kinds; unions are
    /// rejected beyond their additivity threshold.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return if t == 0.0 { Ok(0.0) } else { Err(Error::OutOfRange(format!("t = {t}"))) };
        }
        match &self.kind {
            TubeKind::CantorClosed { m, a } => tube_exact_cantor(*m, *a, t),
            TubeKind::CantorGaps { m, a } => Ok(cantor_gap_tube(*m, *a, t)),
            TubeKind::StringGaps { lengths } => Ok(string_gap_tube(lengths, t)),
            TubeKind::StringInner { lengths } => Ok(string_inner_tube(lengths, t)),
            TubeKind::SphereShell { n } => Ok(tube_sphere(*n, t)),
            TubeKind::Grill { base, side, tol } => {
                Ok(side * base.eval(t)? + codim_slice(base, t, *tol)?)
            }
            TubeKind::Codim { base, tol } => codim_slice(base, t, *tol),
            TubeKind::Union { parts, t_max } => {
                if t >= *t_max {
                    return Err(Error::OutOfRange(format!(
                        "union tube additivity holds for t < {t_max}, got {t}"
                    )));
                }
                let mut v = 0.0;
                for p in parts {
                    v += p.eval(t)?;
                }
                Ok(v)
            }
            TubeKind::Scaled { base, factor } => {
                Ok(factor.powi(self.ambient_dim as i32) * base.eval(t / factor)?)
            }
            TubeKind::Sampled { log_t, log_v } => {
                let lt = t.ln();
                if lt < log_t[0] || lt > *log_t.last().unwrap() {
                    return Err(Error::OutOfRange(format!("sampled tube covers t in grid, got {t}")));
                }
                let i = match log_t.binary_search_by(|p| p.total_cmp(&lt)) {
                    Ok(i) => return Ok(log_v[i].exp()),
                    Err(i) => i.clamp(1, log_t.len() - 1),
                };
                let w = (lt - log_t[i - 1]) / (log_t[i] - log_t[i - 1]);
                Ok(((1.0 - w) * log_v[i - 1] + w * log_v[i]).exp())
            }
        }
    }
}

/// |(A×{0})_t| one dimension up from the base tube, by transverse slicing
/// with the substitution u = t sin θ that removes the endpoint singularity.
/// Panels are seeded at the angles where the slice radius crosses a kink of
/// the base tube function.
fn codim_slice(base: &TubeModel, t: f64, tol: f64) -> Result<f64> {
    // probe the largest slice radius so range errors surface instead of
    // being zeroed inside the integrand
    base.eval(t)?;
    let f = |theta: f64| -> f64 {
        let r = t * theta.cos();
        match base.eval(r) {
            Ok(v) => v * t * theta.cos(),
            Err(_) => 0.0,
        }
    };
    let mut edges = vec![0.0];
    for r in base.breakpoints(t * 1e-9, t, 512).iter().rev() {
        // θ = acos(r/t), increasing as r decreases
        edges.push((r / t).clamp(-1.0, 1.0).acos());
    }
    edges.push(std::f64::consts::FRAC_PI_2);
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    let (v, err) = integrate_real_segmented(&f, &edges, tol, 4000);
    if err > tol.max(1e-9 * v.abs()) * 100.0 {
        return Err(Error::NonConvergent { achieved: err, requested: tol });
    }
    Ok(2.0 * v)
}

/// Estimate of lower/upper r-dimensional Minkowski contents from a tube
/// model: extrema of |A_t|/t^{N-r} over the finest sampled decade.
#[derive(Debug, Clone)]
pub struct ContentEstimate {
    pub r: f64,
    pub lower: f64,
    pub upper: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    /// Grid-convergence uncertainty: change of the extrema when the grid is
    /// halved.
    pub residual_spread: f64,
}

fn content_extrema(tube: &TubeModel, r: f64, t_min: f64, t_max: f64, n: usize) -> Result<(f64, f64)> {
    let n_dim = tube.ambient_dim as f64;
    let lo_decade = (t_min * 10.0).min(t_max);
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    let lg_lo = t_min.ln();
    let lg_hi = t_max.ln();
    for i in 0..n {
        let t = (lg_lo + (lg_hi - lg_lo) * i as f64 / (n - 1) as f64).exp();
        if t > lo_decade * (1.0 + 1e-12) {
            continue;
        }
        let ratio = tube.eval(t)? / t.powf(n_dim - r);
        lower = lower.min(ratio);
        upper = upper.max(ratio);
    }
    Ok((lower, upper))
}

pub fn minkowski_contents_estimate(
    tube: &TubeModel,
    r: f64,
    t_min: f64,
    t_max: f64,
    n_samples: usize,
) -> Result<ContentEstimate> {
    if r > tube.ambient_dim as f64 {
        return Err(Error::InvalidParameter(format!(
            "content order r = {r} exceeds the ambient dimension"
        )));
    }
    if !(t_min > 0.0 && t_min < t_max) {
        return Err(Error::InvalidParameter("need 0 < t_min < t_max".into()));
    }
    if n_samples < 16 {
        return Err(Error::InvalidParameter("need at least 16 samples".into()));
    }
    let (lower, upper) = content_extrema(tube, r, t_min, t_max, n_samples)?;
    let (l2, u2) = content_extrema(tube, r, t_min, t_max, n_samples / 2)?;
    let spread = (lower - l2).abs().max((upper - u2).abs()).max(1e-12 * upper.abs());
    Ok(ContentEstimate {
        r,
        lower,
        upper,
        t_min,
        t_max,
        samples: n_samples,
        residual_spread: spread,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct BoxDimEstimate {
    pub dim: f64,
    /// RMS residual of the log-log fit.
    pub fit_residual: f64,
}

/// Least-squares slope of ln|A_t| against ln t over a geometric grid; the
/// slope is N − D.
pub fn box_dimension_estimate(
    tube: &TubeModel,
    t_min: f64,
    t_max: f64,
    samples_per_decade: usize,
) -> Result<BoxDimEstimate> {
    if !(t_min > 0.0 && t_min < t_max) {
        return Err(Error::InvalidParameter("need 0 < t_min < t_max".into()));
    }
    let decades = (t_max / t_min).log10();
    if decades < 2.0 {
        return Err(Error::InvalidParameter(format!(
            "slope fit needs at least 2 decades, got {decades:.2}"
        )));
    }
    let n = ((decades * samples_per_decade as f64).ceil() as usize).max(8);
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let lt = t_min.ln() + (t_max.ln() - t_min.ln()) * i as f64 / (n - 1) as f64;
        let t = lt.exp();
        xs.push(lt);
        ys.push(tube.eval(t)?.ln());
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for i in 0..n {
        let r = ys[i] - (slope * xs[i] + intercept);
        ss += r * r;
    }
    Ok(BoxDimEstimate { dim: tube.ambient_dim as f64 - slope, fit_residual: (ss / nf).sqrt() })
}

/// Samples of the normalized profile G(τ) = |A_t| / t^{N-D} at t = e^{-τ}.
pub fn log_profile(tube: &TubeModel, d: f64, taus: &[f64]) -> Result<Vec<f64>> {
    let n = tube.ambient_dim as f64;
    taus.iter()
        .map(|&tau| {
            let t = (-tau).exp();
            Ok(tube.eval(t)? * ((n - d) * tau).exp())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets;

    const TERNARY: (u32, f64) = (2, 1.0 / 3.0);

    #[test]
    fn gap_tube_frozen_values() {
        let (m, a) = TERNARY;
        // single gap 1/3 exceeds 2t = 1/6: (1 + 1/6) − (1/3 − 1/6) = 1
        assert!((cantor_gap_tube(m, a, 1.0 / 12.0) - 1.0).abs() < 1e-15);
        // all gaps filled: [−1/2, 3/2]
        assert!((cantor_gap_tube(m, a, 0.5) - 2.0).abs() < 1e-15);
        // a-string, a = 1, t = 1/4: largest gap 1/2 = 2t contributes 0
        let l = LengthModel::PowerGaps { a: 1.0 };
        assert!((string_gap_tube(&l, 0.25) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn gap_tube_matches_literal_sum() {
        // literal hull+2t−Σ(g−2t) evaluated level by level, moderate t only
        let (m, a) = (3u32, 0.2);
        let c = cantor_threshold(m, a);
        let mf = m as f64;
        for i in 1..400 {
            let t = c * 0.999_f64.powi(i) * 0.9;
            let mut sum = 0.0;
            let mut cnt = mf - 1.0;
            let mut gap = 2.0 * c;
            while gap > 2.0 * t {
                sum += cnt * (gap - 2.0 * t);
                cnt *= mf;
                gap *= a;
            }
            let literal = 1.0 + 2.0 * t - sum;
            let fast = cantor_gap_tube(m, a, t);
            assert!((literal - fast).abs() <= 1e-12 * literal, "t={t}: {literal} vs {fast}");
        }
    }

    #[test]
    fn closed_form_agrees_with_gap_sum() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (m, a) in [(2u32, 1.0 / 3.0), (3u32, 0.2), (2u32, 0.25)] {
            let c = cantor_threshold(m, a);
            for _ in 0..1000 {
                let t = c * rng.gen::<f64>().max(1e-12);
                let exact = tube_exact_cantor(m, a, t).unwrap();
                let gaps = cantor_gap_tube(m, a, t);
                assert!(
                    (exact - gaps).abs() <= 1e-12 * gaps,
                    "m={m} a={a} t={t}: {exact} vs {gaps}"
                );
            }
        }
    }

    #[test]
    fn closed_form_continuous_at_threshold() {
        let (m, a) = TERNARY;
        let c = cantor_threshold(m, a);
        let below = tube_exact_cantor(m, a, c * (1.0 - 1e-6)).unwrap();
        let at = tube_exact_cantor(m, a, c).unwrap();
        assert!((at - (1.0 + 2.0 * c)).abs() < 1e-14);
        assert!((below - at).abs() < 1e-4);
    }

    #[test]
    fn profile_is_log_periodic() {
        let (m, a) = TERNARY;
        let t_per = 3f64.ln();
        for i in 0..50 {
            let tau = 2.0 + 0.17 * i as f64;
            let g0 = cantor_profile(m, a, tau);
            let g1 = cantor_profile(m, a, tau + t_per);
            assert!((g0 - g1).abs() < 1e-10 * g0);
        }
        // extrema formulas bracket the sampled profile
        let lo = cantor_profile_min(2f64.ln() / 3f64.ln());
        let hi = cantor_profile_max(m, a);
        for i in 0..2000 {
            let g = cantor_profile(m, a, 2.0 + i as f64 * t_per / 2000.0);
            assert!(g >= lo - 1e-12 && g <= hi + 1e-12, "g = {g} not in [{lo}, {hi}]");
        }
    }

    #[test]
    fn sphere_tube_values() {
        // N = 2: exactly 4πt
        let t = 0.37;
        assert!((tube_sphere(2, t) - 4.0 * std::f64::consts::PI * t).abs() < 1e-14);
        // N = 1: two points, 4t
        assert!((tube_sphere(1, t) - 4.0 * t).abs() < 1e-15);
        // N = 3: (4π/3)((1+t)^3 − (1−t)^3)
        let w = 4.0 * std::f64::consts::PI / 3.0;
        let direct = w * ((1.0f64 + t).powi(3) - (1.0 - t).powi(3));
        assert!((tube_sphere(3, t) - direct).abs() < 1e-13);
        // tiny t keeps full precision
        let tiny = 1e-200;
        assert!((tube_sphere(3, tiny) / tiny - 2.0 * 3.0 * w).abs() < 1e-13);
    }

    #[test]
    fn grill_of_point_is_stadium() {
        // {0} × [0,1]: rectangle plus two half-disks
        let point = sets::make_fractal_string(LengthModel::Finite(vec![])).unwrap();
        let base = TubeModel::for_set(&point).unwrap();
        let grill = TubeModel::grill_layer(base, 1.0, 1e-11);
        for t in [0.05, 0.1, 0.3] {
            let v = grill.eval(t).unwrap();
            let exact = 2.0 * t + std::f64::consts::PI * t * t;
            assert!((v - exact).abs() < 1e-9, "t={t}: {v} vs {exact}");
        }
    }

    #[test]
    fn grill_dominates_base_layer() {
        let base = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
        let grill = TubeModel::grill_layer(base.clone(), 1.0, 1e-10);
        for t in [0.01, 0.05, 0.12] {
            assert!(grill.eval(t).unwrap() >= base.eval(t).unwrap());
        }
    }

    #[test]
    fn tube_monotone_on_grid() {
        let models = [
            TubeModel::cantor_gapsum(2, 1.0 / 3.0),
            TubeModel::string_gaps(LengthModel::PowerGaps { a: 1.0 }),
            TubeModel::sphere(3),
        ];
        for m in &models {
            let mut prev = 0.0;
            for i in 1..200 {
                let t = 1e-6 * 1.07f64.powi(i);
                let v = m.eval(t).unwrap();
                assert!(v >= prev, "{m:?} not monotone at t={t}");
                prev = v;
            }
        }
    }

    #[test]
    fn scaling_matches_similarity() {
        let set = sets::make_cantor(2, 1.0 / 3.0).unwrap();
        let base = TubeModel::for_set(&set).unwrap();
        let scaled = TubeModel::scaled(base.clone(), 3.0);
        for t in [1e-5, 1e-3, 0.04] {
            let lhs = scaled.eval(3.0 * t).unwrap();
            let rhs = 3.0 * base.eval(t).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs());
        }
    }

    #[test]
    fn union_additivity_threshold() {
        let c = sets::make_cantor(2, 1.0 / 3.0).unwrap();
        let u = sets::make_union(vec![(c.clone(), 0.0), (c, 2.0)]).unwrap();
        let tm = TubeModel::for_set(&u).unwrap();
        let one = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
        let t = 0.2;
        assert!((tm.eval(t).unwrap() - 2.0 * one.eval(t).unwrap()).abs() < 1e-13);
        assert!(tm.eval(0.6).is_err());
    }

    #[test]
    fn contents_ternary_cantor_brackets() {
        let tube = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
        let d = 2f64.ln() / 3f64.ln();
        let est = minkowski_contents_estimate(&tube, d, 1e-6, 1e-4, 1024).unwrap();
        let lo = cantor_profile_min(d);
        let hi = cantor_profile_max(2, 1.0 / 3.0);
        assert!((est.lower - lo).abs() < 0.01 * lo, "{} vs {}", est.lower, lo);
        assert!((est.upper - hi).abs() < 0.01 * hi, "{} vs {}", est.upper, hi);
        assert!(est.residual_spread < 0.01 * hi);
    }

    #[test]
    fn contents_sphere_and_point() {
        let tube = TubeModel::sphere(2);
        let est = minkowski_contents_estimate(&tube, 1.0, 1e-6, 1e-4, 256).unwrap();
        let exact = 4.0 * std::f64::consts::PI;
        assert!((est.lower - exact).abs() < 1e-6 && (est.upper - exact).abs() < 1e-6);

        let point = sets::make_fractal_string(LengthModel::Finite(vec![])).unwrap();
        let tube = TubeModel::for_set(&point).unwrap();
        let est = minkowski_contents_estimate(&tube, 0.0, 1e-6, 1e-4, 256).unwrap();
        assert!((est.lower - 2.0).abs() < 1e-12 && (est.upper - 2.0).abs() < 1e-12);

        assert!(minkowski_contents_estimate(&tube, 1.5, 1e-6, 1e-4, 256).is_err());
    }

    #[test]
    fn content_divergence_flip() {
        // below the dimension the ratio blows up along the grid, above it
        // tends to zero
        let tube = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
        let d = tube.dim_hint;
        for (r, expect_big) in [(d - 0.2, true), (d + 0.2, false)] {
            let coarse = tube.eval(1e-2).unwrap() / 1e-2f64.powf(1.0 - r);
            let fine = tube.eval(1e-8).unwrap() / 1e-8f64.powf(1.0 - r);
            if expect_big {
                assert!(fine / coarse > 10.0);
            } else {
                assert!(fine / coarse < 0.1);
            }
        }
    }

    #[test]
    fn box_dimension_fits() {
        let cantor = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
        let est = box_dimension_estimate(&cantor, 1e-6, 1e-2, 64).unwrap();
        assert!((est.dim - 2f64.ln() / 3f64.ln()).abs() < 0.02, "dim = {}", est.dim);

        let astr = TubeModel::string_gaps(LengthModel::PowerGaps { a: 1.0 });
        let est = box_dimension_estimate(&astr, 1e-6, 1e-2, 64).unwrap();
        assert!((est.dim - 0.5).abs() < 0.02);

        let sph = TubeModel::sphere(3);
        let est = box_dimension_estimate(&sph, 1e-6, 1e-2, 64).unwrap();
        assert!((est.dim - 2.0).abs() < 0.01);

        assert!(box_dimension_estimate(&cantor, 1e-3, 1e-2, 64).is_err());
    }

    #[test]
    fn log_profile_periodicity_and_constants() {
        let cantor = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
        let d = cantor.dim_hint;
        let taus: Vec<f64> = (0..100).map(|i| 3.0 + 0.05 * i as f64).collect();
        let shifted: Vec<f64> = taus.iter().map(|t| t + 3f64.ln()).collect();
        let g0 = log_profile(&cantor, d, &taus).unwrap();
        let g1 = log_profile(&cantor, d, &shifted).unwrap();
        for (a, b) in g0.iter().zip(&g1) {
            assert!((a - b).abs() < 1e-10 * a.abs());
        }

        let sph = TubeModel::sphere(2);
        let g = log_profile(&sph, 1.0, &taus).unwrap();
        for v in g {
            assert!((v - 4.0 * std::f64::consts::PI).abs() < 1e-4);
        }
    }

    #[test]
    fn union_profile_is_sum_of_parts() {
        let b = 3f64.powf(-(3f64.ln() / 2f64.ln()));
        let c1 = sets::make_cantor(2, 1.0 / 3.0).unwrap();
        let c2 = sets::make_cantor(3, b).unwrap();
        let u = sets::make_union(vec![(c1, 0.0), (c2, 2.0)]).unwrap();
        let d = 2f64.ln() / 3f64.ln();
        let tu = TubeModel::for_set(&u).unwrap();
        let t1 = TubeModel::cantor_gapsum(2, 1.0 / 3.0);
        let t2 = TubeModel::cantor_gapsum(3, b);
        let taus: Vec<f64> = (0..50).map(|i| 2.5 + 0.2 * i as f64).collect();
        let gu = log_profile(&tu, d, &taus).unwrap();
        let g1 = log_profile(&t1, d, &taus).unwrap();
        let g2 = log_profile(&t2, d, &taus).unwrap();
        for i in 0..taus.len() {
            assert!((gu[i] - g1[i] - g2[i]).abs() < 1e-12 * gu[i]);
        }
    }

    #[test]
    fn sampled_tube_interpolates() {
        let ts: Vec<f64> = (0..50).map(|i| 1e-4 * 1.2f64.powi(i)).collect();
        let vols: Vec<f64> = ts.iter().map(|&t| tube_sphere(2, t)).collect();
        let m = TubeModel::sampled(&ts, &vols, 2, 1.0).unwrap();
        let t = 3.3e-3;
        let v = m.eval(t).unwrap();
        assert!((v - tube_sphere(2, t)).abs() < 1e-3 * v);
        assert!(m.eval(1e-6).is_err());
    }
}

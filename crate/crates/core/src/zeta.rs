//! Numerical evaluation of the distance, tube and geometric zeta functions
//! as Dirichlet-type integrals, with certified tail bounds, plus residual
//! checks for the functional equation and the scaling law and a divergence
//! probe for the abscissa of convergence.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_complex, integrate_complex_segmented};
use crate::sets::{FractalSet, LengthModel};
use crate::tubes::{cantor_threshold, TubeModel};

/// Evaluation parameters shared by the integral evaluators.
#[derive(Debug, Clone, Copy)]
pub struct ZetaEvalConfig {
    /// Neighborhood radius δ of the defining integral.
    pub delta: f64,
    /// Absolute quadrature tolerance.
    pub quad_tol: f64,
    /// Hard cap on τ = ln(1/t); beyond it the tail enters the error bound.
    pub tau_cut: f64,
    /// Panel budget of the adaptive quadrature within one period panel.
    pub max_refine: u32,
}

impl ZetaEvalConfig {
    pub fn with_delta(delta: f64) -> Self {
        ZetaEvalConfig { delta, quad_tol: 1e-10, tau_cut: 600.0, max_refine: 240 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0) {
            return Err(Error::InvalidParameter("delta must be > 0".into()));
        }
        if !(self.quad_tol > 0.0) {
            return Err(Error::InvalidParameter("quad_tol must be > 0".into()));
        }
        if !(self.tau_cut > (1.0 / self.delta).ln()) {
            return Err(Error::InvalidParameter("tau_cut must exceed ln(1/delta)".into()));
        }
        Ok(())
    }
}

/// Natural δ per family: the closed-form threshold for Cantor sets, half the
/// first length for strings, 1/2 for spheres.
pub fn default_delta(set: &FractalSet) -> f64 {
    match set {
        FractalSet::GeneralizedCantor { m, a } => cantor_threshold(*m, *a),
        FractalSet::AString { a } => LengthModel::PowerGaps { a: *a }.length(1) / 2.0,
        FractalSet::FractalString { lengths } => {
            let l1 = lengths.length(1);
            if l1 > 0.0 {
                l1 / 2.0
            } else {
                0.5
            }
        }
        FractalSet::Sphere { .. } => 0.5,
        FractalSet::Grill { base, .. } => default_delta(base),
        FractalSet::DisjointUnion { components } => {
            let need: f64 = components
                .iter()
                .map(|(c, _)| default_delta(c))
                .fold(0.0, f64::max);
            let cap = set.union_separation().unwrap_or(f64::INFINITY) / 2.0;
            if need < cap {
                0.5 * (need + cap)
            } else {
                0.99 * cap
            }
        }
        FractalSet::Scaled { base, factor } => factor * default_delta(base),
    }
}

/// A value plus a certified absolute error bound (quadrature estimate plus
/// the analytic tail certificate).
#[derive(Debug, Clone, Copy)]
pub struct ZetaValue {
    pub value: Complex64,
    pub err_bound: f64,
}

/// Tube zeta function: ∫_0^δ t^{s-N-1} |A_t| dt, evaluated in τ = ln(1/t) as
/// ∫ e^{-(s-N)τ} |A_t| dτ over panels aligned to the oscillation period.
///
/// When the normalized profile is P-periodic in τ, consecutive panel
/// integrals satisfy I_{k+1} = ρ I_k with ρ = e^{-(s-D)P} exactly, so the
/// tail beyond the last panel is the geometric continuation I_k ρ/(1−ρ).
/// The certificate is the measured drift |I_k − ρ I_{k-1}| amplified by the
/// geometric factor; it is at quadrature level for exactly log-periodic
/// tube functions and decays with the profile convergence otherwise.
pub fn tube_zeta(tube: &TubeModel, s: Complex64, cfg: &ZetaEvalConfig) -> Result<ZetaValue> {
    cfg.validate()?;
    let n = tube.ambient_dim as f64;
    let d = tube.dim_hint;
    let sigma = s.re - d;
    let delta = cfg.delta;
    if delta > tube.t_max * (1.0 + 1e-12) {
        return Err(Error::OutOfRange(format!(
            "delta = {} beyond the tube validity bound {}",
            delta, tube.t_max
        )));
    }

    let tau0 = (1.0 / delta).ln();
    let panel = tube.period_hint.unwrap_or(1.0);
    let integrand = |tau: f64| -> Complex64 {
        let t = (-tau).exp();
        let v = tube.eval(t).unwrap_or(0.0);
        (-(s - n) * tau).exp() * v
    };

    let rho = (-(s - d) * panel).exp();
    let rho_mag = rho.norm();
    let mut value = Complex64::new(0.0, 0.0);
    let mut quad_err = 0.0;
    let mut tau = tau0;
    let mut panel_mags: Vec<f64> = Vec::new();
    let mut prev_panel: Option<Complex64> = None;
    let window = 8usize;
    let mut k = 0usize;
    let max_panels = ((cfg.tau_cut - tau0) / panel).ceil() as usize + 1;

    loop {
        let hi = tau + panel;
        // seed the panel at the tube-function kinks (τ = ln(1/r))
        let mut edges = vec![tau];
        for r in tube.breakpoints((-hi).exp(), (-tau).exp(), 128) {
            edges.push(-r.ln());
        }
        edges.push(hi);
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        let r = integrate_complex_segmented(
            &integrand,
            &edges,
            cfg.quad_tol / max_panels as f64,
            cfg.max_refine as usize,
        );
        value += r.value;
        quad_err += r.err;
        tau = hi;
        k += 1;
        panel_mags.push(r.value.norm());

        // partial integrals that stop decaying mean the defining integral
        // diverges at this s
        if k >= 2 * window {
            let head: f64 = panel_mags[k - 2 * window..k - window].iter().sum();
            let tail: f64 = panel_mags[k - window..].iter().sum();
            if tail >= head * (1.0 - 1e-9) && tail > 0.0 {
                return Err(Error::Divergent { abscissa_hint: d });
            }
        }

        if sigma > 0.0 && rho_mag < 1.0 {
            let drift = match prev_panel {
                Some(p) => (r.value - rho * p).norm() + r.err,
                None => f64::INFINITY,
            };
            let geo = rho_mag / (1.0 - rho_mag);
            let cert = drift * geo * (1.0 + geo);
            if (k >= 2 && cert < cfg.quad_tol) || tau >= cfg.tau_cut {
                let tail_est = r.value * rho / (1.0 - rho);
                value += tail_est;
                let fallback = tail_est.norm();
                return Ok(ZetaValue { value, err_bound: quad_err + cert.min(fallback) });
            }
        } else if tau >= cfg.tau_cut {
            return Err(Error::Divergent { abscissa_hint: d });
        }
        prev_panel = Some(r.value);
        if k >= max_panels + 2 {
            return Err(Error::NonConvergent { achieved: quad_err, requested: cfg.quad_tol });
        }
    }
}

/// Distance zeta function through the tube identity:
/// ζ_A(s) = δ^{s-N} |A_δ| + (N − s) ζ̃_A(s).
pub fn distance_zeta(tube: &TubeModel, s: Complex64, cfg: &ZetaEvalConfig) -> Result<ZetaValue> {
    let n = tube.ambient_dim as f64;
    let vol = tube.eval(cfg.delta)?;
    let t = tube_zeta(tube, s, cfg)?;
    let boundary = (s - n).exp_delta(cfg.delta) * vol;
    let value = boundary + (n - s) * t.value;
    Ok(ZetaValue { value, err_bound: (n - s).norm() * t.err_bound })
}

trait ExpDelta {
    /// δ^z computed as e^{z ln δ}.
    fn exp_delta(self, delta: f64) -> Complex64;
}

impl ExpDelta for Complex64 {
    fn exp_delta(self, delta: f64) -> Complex64 {
        (self * delta.ln()).exp()
    }
}

/// Complex power w^s for w > 0.
fn cpow(w: f64, s: Complex64) -> Complex64 {
    (s * w.ln()).exp()
}

/// Direct one-dimensional distance zeta by exact interval decomposition of
/// A_δ: each gap of width g contributes 2^{1-s} g^s / s when g ≤ 2δ and
/// 2 δ^s / s otherwise; the two hull ends contribute 2 δ^s / s. Used as an
/// independent oracle against the tube-identity path.
pub fn distance_zeta_direct_1d(
    set: &FractalSet,
    s: Complex64,
    cfg: &ZetaEvalConfig,
) -> Result<ZetaValue> {
    cfg.validate()?;
    if set.ambient_dim() != 1 {
        return Err(Error::InvalidParameter("direct decomposition needs a 1-d set".into()));
    }
    let delta = cfg.delta;
    let tol = cfg.quad_tol;
    let two_delta = 2.0 * delta;
    let hull_ends = 2.0 * cpow(delta, s) / s;

    match set {
        FractalSet::GeneralizedCantor { m, a } => {
            let mf = *m as f64;
            let c = cantor_threshold(*m, *a);
            let ratio = mf * a.powf(s.re);
            if ratio >= 1.0 {
                return Err(Error::Divergent { abscissa_hint: set.dim_hint() });
            }
            let mut acc = Complex64::new(0.0, 0.0);
            let mut count = mf - 1.0;
            let mut gap = 2.0 * c;
            let factor = Complex64::powc(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0) - s) / s;
            let err = loop {
                let term = if gap <= two_delta {
                    count * factor * cpow(gap, s)
                } else {
                    count * 2.0 * cpow(delta, s) / s
                };
                acc += term;
                // geometric envelope of the remaining series
                let tail = term.norm() * ratio / (1.0 - ratio);
                if (tail < tol && gap <= two_delta) || gap < 1e-280 {
                    break tail;
                }
                count *= mf;
                gap *= a;
            };
            Ok(ZetaValue { value: hull_ends + acc, err_bound: err })
        }
        FractalSet::AString { a } => {
            string_direct(&LengthModel::PowerGaps { a: *a }, s, delta, tol, hull_ends)
        }
        FractalSet::FractalString { lengths } => string_direct(lengths, s, delta, tol, hull_ends),
        FractalSet::DisjointUnion { components } => {
            let sep = set.union_separation().unwrap_or(f64::INFINITY);
            if delta >= sep / 2.0 {
                return Err(Error::OutOfRange(format!(
                    "delta = {delta} mixes union components (separation {sep})"
                )));
            }
            // neighborhoods are disjoint: the integral splits per component
            let mut total = Complex64::new(0.0, 0.0);
            let mut err = 0.0;
            for (c, _) in components {
                let z = distance_zeta_direct_1d(c, s, cfg)?;
                total += z.value;
                err += z.err_bound;
            }
            Ok(ZetaValue { value: total, err_bound: err })
        }
        FractalSet::Scaled { base, factor } => {
            // d(x, λA) integrates to λ^s times the base integral at δ/λ
            let inner = ZetaEvalConfig { delta: delta / factor, ..*cfg };
            let z = distance_zeta_direct_1d(base, s, &inner)?;
            let lam = cpow(*factor, s);
            Ok(ZetaValue { value: lam * z.value, err_bound: lam.norm() * z.err_bound })
        }
        _ => Err(Error::InvalidParameter("unsupported set for direct decomposition".into())),
    }
}

fn string_direct(
    lengths: &LengthModel,
    s: Complex64,
    delta: f64,
    tol: f64,
    hull_ends: Complex64,
) -> Result<ZetaValue> {
    let two_delta = 2.0 * delta;
    let big = lengths.count_longer_than(two_delta);
    let factor = Complex64::powc(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0) - s) / s;
    // gaps longer than 2δ contribute like hull ends
    let big_part = 2.0 * cpow(delta, s) / s * big as f64;
    // the rest is 2^{1-s}/s Σ_{j>big} ℓ_j^s
    let sum = power_sum_tail(lengths, s, big + 1, tol)?;
    Ok(ZetaValue {
        value: hull_ends + big_part + factor * sum.value,
        err_bound: factor.norm() * sum.err_bound,
    })
}

/// Σ_{j≥start} ℓ_j^s with a certified error bound.
fn power_sum_tail(
    lengths: &LengthModel,
    s: Complex64,
    start: u64,
    tol: f64,
) -> Result<ZetaValue> {
    match lengths {
        LengthModel::Finite(v) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in start..=(v.len() as u64) {
                acc += cpow(lengths.length(j), s);
            }
            Ok(ZetaValue { value: acc, err_bound: 0.0 })
        }
        LengthModel::Geometric { ratio, .. } => {
            let rs = ratio.powf(s.re);
            if rs >= 1.0 {
                return Err(Error::Divergent { abscissa_hint: 0.0 });
            }
            let mut acc = Complex64::new(0.0, 0.0);
            let mut j = start;
            loop {
                let term = cpow(lengths.length(j), s);
                acc += term;
                let tail = term.norm() * rs / (1.0 - rs);
                if tail < tol {
                    return Ok(ZetaValue { value: acc, err_bound: tail });
                }
                j += 1;
            }
        }
        LengthModel::PowerGaps { a } => {
            // ℓ_j ~ a j^{-(1+a)}: converges for (1+a) Re s > 1
            let p = (1.0 + a) * s.re;
            if p <= 1.0 {
                return Err(Error::Divergent { abscissa_hint: 1.0 / (1.0 + a) });
            }
            // partial sum to J, then Euler–Maclaurin over the real-variable
            // extension f(x) = (x^{-a} − (x+1)^{-a})^s
            let j_cut: u64 = 20_000.max(start + 8);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in start..j_cut {
                acc += cpow(lengths.length(j), s);
            }
            let f = |x: f64| -> Complex64 { cpow(crate::sets::power_gap_length(*a, x), s) };
            // ∫_{J}^∞ f dx via x = J e^y; the integrand decays like e^{-(p-1)y}
            let j0 = j_cut as f64;
            let rate = p - 1.0;
            let integ = |y: f64| -> Complex64 {
                let x = j0 * y.exp();
                f(x) * x
            };
            let mag0 = integ(0.0).norm().max(1e-300);
            let y_max = ((mag0 / (tol * 1e-2 * rate)).ln() / rate).max(10.0 / rate);
            let r = integrate_complex(&integ, 0.0, y_max, tol * 1e-2, 400);
            // Euler–Maclaurin endpoint corrections: Σ_{j≥J} f(j) ≈ ∫_J^∞ f + f(J)/2 − f'(J)/12
            let h = 1e-3;
            let fp = (f(j0 + h) - f(j0 - h)) / (2.0 * h);
            let em = r.value + 0.5 * f(j0) - fp / 12.0;
            // remainder of EM is O(f'''(J)) ~ p^3 J^{-p-3}: negligible at J = 1e5
            let rem = j0.powf(-(p + 3.0)) * (p + 3.0).powi(3) + r.err;
            let tail_cut = integ(y_max).norm() / rate;
            Ok(ZetaValue { value: acc + em, err_bound: rem + tail_cut })
        }
    }
}

/// Geometric zeta function of a fractal string: Σ_j ℓ_j^s with a certified
/// tail bound.
pub fn geometric_zeta(lengths: &LengthModel, s: Complex64, tol: f64) -> Result<ZetaValue> {
    power_sum_tail(lengths, s, 1, tol)
}

/// Residual of the functional equation between the direct 1-d evaluation and
/// the tube-identity path.
pub fn functional_equation_residual(
    set: &FractalSet,
    s: Complex64,
    cfg: &ZetaEvalConfig,
) -> Result<f64> {
    let tube = TubeModel::for_set(set)?;
    let direct = distance_zeta_direct_1d(set, s, cfg)?;
    let via_tube = distance_zeta(&tube, s, cfg)?;
    Ok((direct.value - via_tube.value).norm())
}

/// Residual of the scaling law ζ_{λA}(s, λ(A_δ)) = λ^s ζ_A(s, A_δ).
pub fn scaling_residual(
    set: &FractalSet,
    lambda: f64,
    s: Complex64,
    cfg: &ZetaEvalConfig,
) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter("lambda must be > 0".into()));
    }
    let base_tube = TubeModel::for_set(set)?;
    let scaled_tube = TubeModel::scaled(base_tube.clone(), lambda);
    let scaled_cfg = ZetaEvalConfig { delta: lambda * cfg.delta, ..*cfg };
    let lhs = distance_zeta(&scaled_tube, s, &scaled_cfg)?;
    let rhs = cpow(lambda, s) * distance_zeta(&base_tube, s, cfg)?.value;
    Ok((lhs.value - rhs).norm())
}

/// Result of a divergence scan: the abscissa lies in `[lo, hi]`, or above
/// `lo` when no divergence was seen on the grid.
#[derive(Debug, Clone, Copy)]
pub enum AbscissaBracket {
    Bracket { lo: f64, hi: f64 },
    LowerBoundOnly { lo: f64 },
}

/// Walk a descending real grid and bracket the abscissa of convergence by
/// bisection between the last convergent and first divergent point.
pub fn abscissa_probe<F>(eval: F, grid: &[f64]) -> Result<AbscissaBracket>
where
    F: Fn(f64) -> Result<ZetaValue>,
{
    if grid.len() < 2 {
        return Err(Error::InvalidParameter("probe needs at least two grid points".into()));
    }
    let diverged = |s: f64| -> bool {
        match eval(s) {
            Ok(z) => {
                !z.value.norm().is_finite()
                    || z.value.norm() > 1e12
                    || z.err_bound > 0.5 * z.value.norm() + 1e-9
            }
            Err(_) => true,
        }
    };
    let mut prev: Option<f64> = None;
    for &s in grid {
        if let Some(p) = prev {
            if s >= p {
                return Err(Error::InvalidParameter("grid must descend".into()));
            }
        }
        if diverged(s) {
            let hi = match prev {
                Some(p) => p,
                None => return Err(Error::Inconclusive("first grid point already diverges".into())),
            };
            let mut lo = s;
            let mut hi = hi;
            for _ in 0..20 {
                let mid = 0.5 * (lo + hi);
                if diverged(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(AbscissaBracket::Bracket { lo, hi });
        }
        prev = Some(s);
    }
    Ok(AbscissaBracket::LowerBoundOnly { lo: *grid.last().unwrap() })
}

/// Grid sweep of an evaluator over a rectangle in s, in parallel.
pub fn zeta_grid<F>(
    eval: F,
    re: (f64, f64, usize),
    im: (f64, f64, usize),
) -> Vec<(Complex64, Result<ZetaValue>)>
where
    F: Fn(Complex64) -> Result<ZetaValue> + Sync,
{
    use rayon::prelude::*;
    let mut points = Vec::new();
    for i in 0..re.2 {
        let x = if re.2 == 1 { re.0 } else { re.0 + (re.1 - re.0) * i as f64 / (re.2 - 1) as f64 };
        for j in 0..im.2 {
            let y =
                if im.2 == 1 { im.0 } else { im.0 + (im.1 - im.0) * j as f64 / (im.2 - 1) as f64 };
            points.push(Complex64::new(x, y));
        }
    }
    points.into_par_iter().map(|s| (s, eval(s))).collect()
}

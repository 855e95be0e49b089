//! Closed-form meromorphic continuations of the zeta functions of the
//! supported families, their complex-dimension sets (vertical pole lattices
//! plus isolated poles), residue extraction, the residue/content
//! comparisons, and the equivalence relations on zeta functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sets::LengthModel;
use crate::tubes::{binomial, cantor_threshold, unit_ball_volume, ContentEstimate, TubeModel};
use crate::zeta::{self, AbscissaBracket, ZetaEvalConfig, ZetaValue};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cpow(w: f64, s: Complex64) -> Complex64 {
    (s * w.ln()).exp()
}

/// A vertical arithmetic progression of poles {base + i·period·k : k ∈ Z}.
/// Canonical form keeps Im(base) in [0, period).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleLattice {
    pub base: Complex64,
    pub period: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolatedPole {
    pub location: Complex64,
    pub multiplicity: u32,
    /// Candidate poles are carried from the shift bookkeeping without an
    /// independent certification.
    pub candidate: bool,
}

/// Finite union of pole lattices plus isolated poles, with the abscissa of
/// convergence. Interpreted as a multiset.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexDimensions {
    pub lattices: Vec<PoleLattice>,
    pub isolated: Vec<IsolatedPole>,
    pub abscissa: f64,
}

impl ComplexDimensions {
    pub fn new(mut lattices: Vec<PoleLattice>, isolated: Vec<IsolatedPole>, abscissa: f64) -> Self {
        for l in &mut lattices {
            let p = l.period;
            let mut im = l.base.im % p;
            if im < 0.0 {
                im += p;
            }
            l.base = c64(l.base.re, im);
        }
        lattices.sort_by(|a, b| {
            (a.base.re, a.period, a.base.im)
                .partial_cmp(&(b.base.re, b.period, b.base.im))
                .unwrap()
        });
        let mut isolated = isolated;
        isolated.sort_by(|a, b| {
            (a.location.re, a.location.im)
                .partial_cmp(&(b.location.re, b.location.im))
                .unwrap()
        });
        ComplexDimensions { lattices, isolated, abscissa }
    }

    /// Entries on the critical line {Re s = abscissa}.
    pub fn principal(&self) -> ComplexDimensions {
        let tol = 1e-12 * (1.0 + self.abscissa.abs());
        ComplexDimensions::new(
            self.lattices
                .iter()
                .filter(|l| (l.base.re - self.abscissa).abs() <= tol)
                .cloned()
                .collect(),
            self.isolated
                .iter()
                .filter(|p| (p.location.re - self.abscissa).abs() <= tol)
                .cloned()
                .collect(),
            self.abscissa,
        )
    }

    /// Translate every pole by a real shift.
    pub fn shifted(&self, d: f64) -> ComplexDimensions {
        ComplexDimensions::new(
            self.lattices
                .iter()
                .map(|l| PoleLattice { base: l.base + d, ..*l })
                .collect(),
            self.isolated
                .iter()
                .map(|p| IsolatedPole { location: p.location + d, ..*p })
                .collect(),
            self.abscissa + d,
        )
    }

    pub fn merged(&self, other: &ComplexDimensions) -> ComplexDimensions {
        let mut lat = self.lattices.clone();
        lat.extend_from_slice(&other.lattices);
        let mut iso = self.isolated.clone();
        iso.extend_from_slice(&other.isolated);
        ComplexDimensions::new(lat, iso, self.abscissa.max(other.abscissa))
    }

    /// Multiset equality within a numeric tolerance on locations and
    /// periods; multiplicities exact.
    pub fn same_multiset(&self, other: &ComplexDimensions, tol: f64) -> bool {
        if self.lattices.len() != other.lattices.len()
            || self.isolated.len() != other.isolated.len()
        {
            return false;
        }
        let mut used = vec![false; other.lattices.len()];
        for l in &self.lattices {
            let mut found = false;
            for (j, m) in other.lattices.iter().enumerate() {
                if used[j] || m.multiplicity != l.multiplicity {
                    continue;
                }
                if (l.base - m.base).norm() <= tol && (l.period - m.period).abs() <= tol {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        let mut used = vec![false; other.isolated.len()];
        for p in &self.isolated {
            let mut found = false;
            for (j, q) in other.isolated.iter().enumerate() {
                if used[j] || q.multiplicity != p.multiplicity {
                    continue;
                }
                if (p.location - q.location).norm() <= tol {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        true
    }

    /// Enumerate the poles with |Im| ≤ im_cap, largest real part first.
    pub fn enumerate(&self, im_cap: f64) -> Vec<(Complex64, u32, bool)> {
        let mut out = Vec::new();
        for l in &self.lattices {
            let mut k = (-(im_cap + l.base.im) / l.period).floor() as i64;
            loop {
                let im = l.base.im + l.period * k as f64;
                if im > im_cap {
                    break;
                }
                if im >= -im_cap {
                    out.push((c64(l.base.re, im), l.multiplicity, false));
                }
                k += 1;
            }
        }
        for p in &self.isolated {
            if p.location.im.abs() <= im_cap {
                out.push((p.location, p.multiplicity, p.candidate));
            }
        }
        out.sort_by(|a, b| (b.0.re, a.0.im).partial_cmp(&(a.0.re, b.0.im)).unwrap());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    Distance,
    Tube,
}

#[derive(Debug, Clone)]
enum Kernel {
    /// c^{s-1}(1−ma)/(s(1−m a^s)) + 2δ^s/s, valid once δ ≥ c.
    CantorDistance { m: f64, a: f64, delta: f64 },
    /// Tube zeta of C^(m,a) at δ = c, summed level by level in closed form:
    /// [m a^s/(1−m a^s)]·[(2c^s/s)(a^{-s}−1) + (c^{s-1}/(s−1))(a^{1-s}−1)].
    CantorTube { m: f64, a: f64 },
    /// ω_N Σ_{k odd} 2 C(N,k) δ^{s-N+k}/(s−(N−k)).
    SphereTube { n: u32, delta: f64 },
    /// s^{-1} 2^{1-s} ζ_L(s) + 2 s^{-1} δ^s.
    StringDictionary { lengths: LengthModel, delta: f64 },
    /// Synthetic kernel 1/(1 − m a^s).
    GeometricKernel { m: f64, a: f64 },
    /// Sum of component models (disjoint unions).
    Sum(Vec<MeromorphicZeta>),
    /// Leading behavior of a grill: base evaluated at s − d.
    Shifted { base: Box<MeromorphicZeta>, d: u32 },
    /// λ·A with the scaling law ζ_{λA}(s, λA_δ) = λ^s ζ_A(s, A_δ): poles
    /// stay put, residues pick up λ^ω.
    ScaledSet { base: Box<MeromorphicZeta>, lambda: f64 },
    /// No closed form available; numeric quadrature on a tube model.
    NumericOnly { tube: TubeModel, cfg: ZetaEvalConfig },
}

/// A zeta function with an explicit meromorphic continuation and pole data.
#[derive(Debug, Clone)]
pub struct MeromorphicZeta {
    kernel: Kernel,
    pub dims: ComplexDimensions,
    pub abscissa: f64,
    pub ambient_dim: u32,
    pub kind: ZetaKind,
    pub delta: f64,
    /// True when `eval` is the exact continuation everywhere; false when it
    /// is numeric-only or a leading-term surrogate.
    pub closed_form: bool,
    /// Pole entries with real part below this value are bookkeeping
    /// candidates rather than certified poles.
    pub correction_below: Option<f64>,
}

fn cantor_lattice(m: f64, a: f64) -> (f64, f64) {
    let d = m.ln() / (1.0 / a).ln();
    let p = 2.0 * std::f64::consts::PI / (1.0 / a).ln();
    (d, p)
}

/// Distance zeta model of C^(m,a). The closed form needs δ ≥ c; for smaller
/// δ a numeric-only model (same pole data) is returned with the
/// `closed_form` flag cleared.
pub fn cantor_model(m: u32, a: f64, delta: f64) -> Result<MeromorphicZeta> {
    crate::sets::make_cantor(m, a)?;
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter("delta must be > 0".into()));
    }
    let mf = m as f64;
    let (d, p) = cantor_lattice(mf, a);
    // the candidate pole at 0 of the closed form is removable: the residues
    // of the two summands at 0 are −2 and +2 and cancel exactly
    let dims = ComplexDimensions::new(
        vec![PoleLattice { base: c64(d, 0.0), period: p, multiplicity: 1 }],
        vec![],
        d,
    );
    let c = cantor_threshold(m, a);
    if delta >= c * (1.0 - 1e-12) {
        Ok(MeromorphicZeta {
            kernel: Kernel::CantorDistance { m: mf, a, delta },
            dims,
            abscissa: d,
            ambient_dim: 1,
            kind: ZetaKind::Distance,
            delta,
            closed_form: true,
            correction_below: None,
        })
    } else {
        let tube = TubeModel::cantor_gapsum(m, a);
        let cfg = ZetaEvalConfig::with_delta(delta);
        Ok(MeromorphicZeta {
            kernel: Kernel::NumericOnly { tube, cfg },
            dims,
            abscissa: d,
            ambient_dim: 1,
            kind: ZetaKind::Distance,
            delta,
            closed_form: false,
            correction_below: None,
        })
    }
}

/// Tube zeta model of C^(m,a) at δ = c, derived by integrating the exact
/// piecewise tube function level by level.
pub fn cantor_tube_model(m: u32, a: f64) -> Result<MeromorphicZeta> {
    crate::sets::make_cantor(m, a)?;
    let mf = m as f64;
    let (d, p) = cantor_lattice(mf, a);
    let dims = ComplexDimensions::new(
        vec![PoleLattice { base: c64(d, 0.0), period: p, multiplicity: 1 }],
        vec![],
        d,
    );
    Ok(MeromorphicZeta {
        kernel: Kernel::CantorTube { m: mf, a },
        dims,
        abscissa: d,
        ambient_dim: 1,
        kind: ZetaKind::Tube,
        delta: cantor_threshold(m, a),
        closed_form: true,
        correction_below: None,
    })
}

/// Tube zeta model of the unit sphere in R^n: a finite-pole rational-type
/// form, exact on all of C.
pub fn sphere_model(n: u32, delta: f64) -> Result<MeromorphicZeta> {
    if n < 1 {
        return Err(Error::InvalidParameter("sphere needs N >= 1".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter("sphere tube form needs 0 < delta < 1".into()));
    }
    let mut iso = Vec::new();
    let mut k = 1u32;
    while k <= n {
        iso.push(IsolatedPole {
            location: c64((n - k) as f64, 0.0),
            multiplicity: 1,
            candidate: false,
        });
        k += 2;
    }
    let dims = ComplexDimensions::new(vec![], iso, n as f64 - 1.0);
    Ok(MeromorphicZeta {
        kernel: Kernel::SphereTube { n, delta },
        dims,
        abscissa: n as f64 - 1.0,
        ambient_dim: n,
        kind: ZetaKind::Tube,
        delta,
        closed_form: true,
        correction_below: None,
    })
}

/// Distance zeta model of a string set through the dictionary
/// ζ_A = s^{-1} 2^{1-s} ζ_L + 2 s^{-1} δ^s; needs δ ≥ ℓ_1/2 so every gap
/// integral takes the closed per-gap form.
pub fn string_dictionary(lengths: LengthModel, delta: f64) -> Result<MeromorphicZeta> {
    lengths.validate()?;
    let l1 = lengths.length(1);
    if delta < l1 / 2.0 {
        return Err(Error::OutOfRange(format!(
            "dictionary form needs delta >= l1/2 = {}",
            l1 / 2.0
        )));
    }
    let (dims, abscissa, closed) = match &lengths {
        LengthModel::Geometric { ratio, .. } => {
            let t = (1.0 / ratio).ln();
            let p = 2.0 * std::f64::consts::PI / t;
            // ζ_L has the full lattice on Re = 0; the dictionary factor 1/s
            // raises the multiplicity at 0 to 2
            let dims = ComplexDimensions::new(
                vec![PoleLattice { base: c64(0.0, 0.0), period: p, multiplicity: 1 }],
                vec![IsolatedPole { location: c64(0.0, 0.0), multiplicity: 1, candidate: false }],
                0.0,
            );
            (dims, 0.0, true)
        }
        LengthModel::PowerGaps { a } => {
            let rho = 1.0 / (1.0 + a);
            let mut iso = vec![
                IsolatedPole { location: c64(rho, 0.0), multiplicity: 1, candidate: false },
                IsolatedPole { location: c64(0.0, 0.0), multiplicity: 1, candidate: true },
            ];
            for k in 1..=8 {
                iso.push(IsolatedPole {
                    location: c64(-(k as f64) * rho, 0.0),
                    multiplicity: 1,
                    candidate: true,
                });
            }
            (ComplexDimensions::new(vec![], iso, rho), rho, false)
        }
        LengthModel::Finite(_) => {
            // ζ_L entire: only the dictionary pole at 0 remains
            let dims = ComplexDimensions::new(
                vec![],
                vec![IsolatedPole { location: c64(0.0, 0.0), multiplicity: 1, candidate: false }],
                0.0,
            );
            (dims, 0.0, true)
        }
    };
    Ok(MeromorphicZeta {
        kernel: Kernel::StringDictionary { lengths, delta },
        dims,
        abscissa,
        ambient_dim: 1,
        kind: ZetaKind::Distance,
        delta,
        closed_form: closed,
        correction_below: None,
    })
}

/// Synthetic model for the kernel 1/(1 − m a^s) with its lattice of simple
/// poles on {Re s = log_{1/a} m}.
pub fn geometric_kernel_model(m: f64, a: f64) -> Result<MeromorphicZeta> {
    if !(m > 0.0 && a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter("kernel needs m > 0 and a in (0,1)".into()));
    }
    let (d, p) = cantor_lattice(m, a);
    let dims = ComplexDimensions::new(
        vec![PoleLattice { base: c64(d, 0.0), period: p, multiplicity: 1 }],
        vec![],
        d,
    );
    Ok(MeromorphicZeta {
        kernel: Kernel::GeometricKernel { m, a },
        dims,
        abscissa: d,
        ambient_dim: 1,
        kind: ZetaKind::Distance,
        delta: f64::NAN,
        closed_form: true,
        correction_below: None,
    })
}

/// Sum model for a disjoint union; components must share δ and kind.
pub fn union_model(parts: Vec<MeromorphicZeta>) -> Result<MeromorphicZeta> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("union model needs parts".into()));
    }
    let kind = parts[0].kind;
    let delta = parts[0].delta;
    let ambient = parts[0].ambient_dim;
    if parts.iter().any(|p| p.kind != kind || p.ambient_dim != ambient) {
        return Err(Error::InvalidParameter("union parts must share kind and dimension".into()));
    }
    if parts.iter().any(|p| (p.delta - delta).abs() > 1e-12 * delta.abs()) {
        return Err(Error::InvalidParameter("union parts must share delta".into()));
    }
    let mut dims = parts[0].dims.clone();
    for p in &parts[1..] {
        dims = dims.merged(&p.dims);
    }
    let abscissa = dims.abscissa;
    let closed = parts.iter().all(|p| p.closed_form);
    Ok(MeromorphicZeta {
        kernel: Kernel::Sum(parts),
        dims,
        abscissa,
        ambient_dim: ambient,
        kind,
        delta,
        closed_form: closed,
        correction_below: None,
    })
}

/// Shift bookkeeping for products with [0,1]^d: the principal lattice moves
/// up by d exactly; for Cantor-family kernels the full pole set of the grill
/// is carried, for other kernels every pole is shifted and the entries below
/// D + d are kept as candidates.
pub fn grill_shift(model: &MeromorphicZeta, d: u32) -> MeromorphicZeta {
    if d == 0 {
        return model.clone();
    }
    let df = d as f64;
    let cantor_like = matches!(
        model.kernel,
        Kernel::CantorDistance { .. } | Kernel::CantorTube { .. } | Kernel::GeometricKernel { .. }
    );
    let dims = if cantor_like {
        // lattices at D + k for k = 0..d plus integer candidates 0..d
        let base = &model.dims.lattices[0];
        let mut lat = Vec::new();
        for k in 0..=d {
            lat.push(PoleLattice { base: base.base + k as f64, ..*base });
        }
        let iso = (0..=d)
            .map(|k| IsolatedPole { location: c64(k as f64, 0.0), multiplicity: 1, candidate: true })
            .collect();
        ComplexDimensions::new(lat, iso, model.abscissa + df)
    } else {
        model.dims.shifted(df)
    };
    let abscissa = model.abscissa + df;
    MeromorphicZeta {
        kernel: Kernel::Shifted { base: Box::new(model.clone()), d },
        dims,
        abscissa,
        ambient_dim: model.ambient_dim + d,
        kind: model.kind,
        delta: model.delta,
        closed_form: false,
        correction_below: Some(model.abscissa + df - 1.0),
    }
}

impl MeromorphicZeta {
    /// Evaluate the continuation (meaningless exactly at a pole).
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        match &self.kernel {
            Kernel::CantorDistance { m, a, delta } => {
                let c = (1.0 - m * a) / (2.0 * (m - 1.0));
                let kernel = cpow(c, s - 1.0) * (1.0 - m * a)
                    / (s * (1.0 - m * cpow(*a, s)));
                Ok(kernel + 2.0 * cpow(*delta, s) / s)
            }
            Kernel::CantorTube { m, a } => {
                let c = (1.0 - m * a) / (2.0 * (m - 1.0));
                let geo = m * cpow(*a, s) / (1.0 - m * cpow(*a, s));
                let one = c64(1.0, 0.0);
                let bracket = 2.0 * cpow(c, s) / s * (cpow(*a, -s) - one)
                    + cpow(c, s - 1.0) / (s - 1.0) * (cpow(*a, one - s) - one);
                Ok(geo * bracket)
            }
            Kernel::SphereTube { n, delta } => {
                let w = unit_ball_volume(*n);
                let nf = *n as f64;
                let mut acc = c64(0.0, 0.0);
                let mut k = 1u32;
                while k <= *n {
                    let kf = k as f64;
                    acc += 2.0 * binomial(*n, k) * cpow(*delta, s - nf + kf) / (s - (nf - kf));
                    k += 2;
                }
                Ok(w * acc)
            }
            Kernel::StringDictionary { lengths, delta } => {
                let u = Complex64::powc(c64(2.0, 0.0), c64(1.0, 0.0) - s) / s;
                let zl = match lengths {
                    LengthModel::Geometric { first, ratio } => {
                        cpow(*first, s) / (1.0 - cpow(*ratio, s))
                    }
                    LengthModel::Finite(v) => {
                        let mut acc = c64(0.0, 0.0);
                        for j in 1..=v.len() as u64 {
                            acc += cpow(lengths.length(j), s);
                        }
                        acc
                    }
                    LengthModel::PowerGaps { .. } => {
                        zeta::geometric_zeta(lengths, s, 1e-11)?.value
                    }
                };
                Ok(u * zl + 2.0 * cpow(*delta, s) / s)
            }
            Kernel::GeometricKernel { m, a } => Ok(1.0 / (1.0 - m * cpow(*a, s))),
            Kernel::Sum(parts) => {
                let mut acc = c64(0.0, 0.0);
                for p in parts {
                    acc += p.eval(s)?;
                }
                Ok(acc)
            }
            Kernel::Shifted { base, d } => base.eval(s - *d as f64),
            Kernel::ScaledSet { base, lambda } => Ok(cpow(*lambda, s) * base.eval(s)?),
            Kernel::NumericOnly { tube, cfg } => Ok(zeta::distance_zeta(tube, s, cfg)?.value),
        }
    }

    /// Closed-form residue at a pole, when a rule exists.
    pub fn residue_at(&self, pole: Complex64) -> Option<Complex64> {
        match &self.kernel {
            Kernel::CantorDistance { m, a, .. } => {
                let (d, p) = cantor_lattice(*m, *a);
                on_lattice(pole, d, p)?;
                let t = (1.0 / a).ln();
                let c = (1.0 - m * a) / (2.0 * (m - 1.0));
                // res of 1/(1−m a^s) at any lattice point is 1/T
                Some(cpow(c, pole - 1.0) * (1.0 - m * a) / (pole * t))
            }
            Kernel::CantorTube { m, a } => {
                let (d, p) = cantor_lattice(*m, *a);
                on_lattice(pole, d, p)?;
                let t = (1.0 / a).ln();
                let c = (1.0 - m * a) / (2.0 * (m - 1.0));
                let one = c64(1.0, 0.0);
                let bracket = 2.0 * cpow(c, pole) / pole * (cpow(*a, -pole) - one)
                    + cpow(c, pole - 1.0) / (pole - 1.0) * (cpow(*a, one - pole) - one);
                Some(bracket / t)
            }
            Kernel::SphereTube { n, .. } => {
                let nf = *n as f64;
                let k = (nf - pole.re).round();
                if pole.im.abs() > 1e-12 || (nf - pole.re - k).abs() > 1e-12 {
                    return None;
                }
                let k = k as i64;
                if !(1..=*n as i64).contains(&k) || k % 2 == 0 {
                    return None;
                }
                Some(c64(2.0 * unit_ball_volume(*n) * binomial(*n, k as u32), 0.0))
            }
            Kernel::StringDictionary { lengths, .. } => {
                let u = |s: Complex64| Complex64::powc(c64(2.0, 0.0), c64(1.0, 0.0) - s) / s;
                match lengths {
                    LengthModel::Geometric { first, ratio } => {
                        let t = (1.0 / ratio).ln();
                        let p = 2.0 * std::f64::consts::PI / t;
                        if pole.norm() < 1e-12 {
                            return None; // double pole at 0: no simple residue
                        }
                        on_lattice(pole, 0.0, p)?;
                        Some(u(pole) * cpow(*first, pole) / t)
                    }
                    LengthModel::PowerGaps { a } => {
                        let rho = 1.0 / (1.0 + a);
                        if (pole - c64(rho, 0.0)).norm() < 1e-12 {
                            // res(ζ_L, ρ) = ρ a^ρ exactly, from ζ_L(s) = a^s ζ((1+a)s) + holomorphic
                            Some(u(pole) * rho * cpow(*a, c64(rho, 0.0)))
                        } else {
                            None
                        }
                    }
                    LengthModel::Finite(v) => {
                        if pole.norm() < 1e-12 {
                            // res = 2(ζ_L(0) + 1) with ζ_L(0) = number of lengths
                            Some(c64(2.0 * (v.len() as f64 + 1.0), 0.0))
                        } else {
                            None
                        }
                    }
                }
            }
            Kernel::GeometricKernel { m, a } => {
                let (d, p) = cantor_lattice(*m, *a);
                on_lattice(pole, d, p)?;
                Some(c64(1.0 / (1.0 / a).ln(), 0.0))
            }
            Kernel::Sum(parts) => {
                let mut acc = c64(0.0, 0.0);
                let mut any = false;
                for part in parts {
                    if part.dims.enumerate(pole.im.abs() + 1.0).iter().any(|(loc, _, _)| {
                        (loc - pole).norm() < 1e-9
                    }) {
                        acc += part.residue_at(pole)?;
                        any = true;
                    }
                }
                if any {
                    Some(acc)
                } else {
                    None
                }
            }
            Kernel::Shifted { base, d } => {
                // corrections are holomorphic on the principal line, so
                // principal residues shift exactly
                let df = *d as f64;
                if (pole.re - self.abscissa).abs() < 1e-12 {
                    base.residue_at(pole - df)
                } else {
                    None
                }
            }
            Kernel::ScaledSet { base, lambda } => {
                Some(cpow(*lambda, pole) * base.residue_at(pole)?)
            }
            Kernel::NumericOnly { .. } => None,
        }
    }
}

/// Model of λ·A from the model of A by the scaling law.
pub fn scaled_model(base: MeromorphicZeta, lambda: f64) -> Result<MeromorphicZeta> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter("lambda must be > 0".into()));
    }
    let dims = base.dims.clone();
    let abscissa = base.abscissa;
    let ambient = base.ambient_dim;
    let kind = base.kind;
    let delta = base.delta * lambda;
    let closed = base.closed_form;
    let correction = base.correction_below;
    Ok(MeromorphicZeta {
        kernel: Kernel::ScaledSet { base: Box::new(base), lambda },
        dims,
        abscissa,
        ambient_dim: ambient,
        kind,
        delta,
        closed_form: closed,
        correction_below: correction,
    })
}

/// Closed-form (or best-available) zeta model of a set at its natural δ:
/// distance models for 1-d families and their unions, the tube model for
/// spheres, shift bookkeeping for grills.
pub fn model_for(set: &crate::sets::FractalSet) -> Result<MeromorphicZeta> {
    use crate::sets::FractalSet;
    match set {
        FractalSet::GeneralizedCantor { m, a } => {
            cantor_model(*m, *a, zeta::default_delta(set))
        }
        FractalSet::AString { a } => {
            string_dictionary(LengthModel::PowerGaps { a: *a }, zeta::default_delta(set))
        }
        FractalSet::FractalString { lengths } => {
            string_dictionary(lengths.clone(), zeta::default_delta(set))
        }
        FractalSet::Sphere { n } => sphere_model(*n, 0.5),
        FractalSet::Grill { base, d, .. } => Ok(grill_shift(&model_for(base)?, *d)),
        FractalSet::DisjointUnion { components } => {
            let delta = zeta::default_delta(set);
            let parts: Result<Vec<MeromorphicZeta>> = components
                .iter()
                .map(|(c, _)| match c {
                    FractalSet::GeneralizedCantor { m, a } => cantor_model(*m, *a, delta),
                    other => Err(Error::InvalidParameter(format!(
                        "union models need Cantor components, got `{other}`"
                    ))),
                })
                .collect();
            union_model(parts?)
        }
        FractalSet::Scaled { base, factor } => scaled_model(model_for(base)?, *factor),
    }
}

fn on_lattice(pole: Complex64, d: f64, p: f64) -> Option<()> {
    if (pole.re - d).abs() > 1e-9 {
        return None;
    }
    let k = pole.im / p;
    if (k - k.round()).abs() > 1e-9 {
        return None;
    }
    Some(())
}

/// Numeric residue of a simple pole on the real axis by Richardson
/// extrapolation of h·ζ(pole+h) along real h ↓ 0.
#[derive(Debug, Clone, Copy)]
pub struct ResidueFit {
    pub residue: Complex64,
    pub err_estimate: f64,
    pub levels: u32,
}

pub fn residue_fit<F>(eval: F, pole: f64, h0: f64, levels: u32) -> Result<ResidueFit>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if levels < 2 {
        return Err(Error::InvalidParameter("extrapolation needs >= 2 levels".into()));
    }
    let mut hs = Vec::with_capacity(levels as usize);
    let mut tab = Vec::with_capacity(levels as usize);
    for i in 0..levels {
        let h = h0 / 2f64.powi(i as i32);
        let z = eval(c64(pole + h, 0.0))?;
        hs.push(h);
        tab.push(z * h);
    }
    let n = tab.len();
    let mut corner = tab[0];
    let mut err = f64::INFINITY;
    for j in 1..n {
        for i in (j..n).rev() {
            tab[i] = (hs[i - j] * tab[i] - hs[i] * tab[i - 1]) / (hs[i - j] - hs[i]);
        }
        let new_err = (tab[n - 1] - corner).norm();
        corner = tab[n - 1];
        err = new_err;
    }
    if !corner.norm().is_finite() {
        return Err(Error::NonConvergent { achieved: f64::INFINITY, requested: 0.0 });
    }
    Ok(ResidueFit { residue: corner, err_estimate: err, levels })
}

/// Residue by the trapezoidal contour integral (1/2πi)∮ ζ, exponentially
/// accurate for closed forms that can be evaluated on a circle around the
/// pole.
pub fn residue_contour<F>(eval: F, center: Complex64, radius: f64, n: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if n < 8 {
        return Err(Error::InvalidParameter("contour needs >= 8 nodes".into()));
    }
    let mut acc = c64(0.0, 0.0);
    for k in 0..n {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let dir = c64(theta.cos(), theta.sin());
        acc += eval(center + radius * dir)? * dir;
    }
    Ok(acc * radius / n as f64)
}

/// Equivalence of zeta functions: same abscissa and the same multiset of
/// principal poles.
pub fn equivalent(a: &MeromorphicZeta, b: &MeromorphicZeta, tol: f64) -> Result<bool> {
    if a.dims.lattices.is_empty() && a.dims.isolated.is_empty() {
        return Err(Error::MissingPoleData("left model carries no pole data".into()));
    }
    if b.dims.lattices.is_empty() && b.dims.isolated.is_empty() {
        return Err(Error::MissingPoleData("right model carries no pole data".into()));
    }
    if (a.abscissa - b.abscissa).abs() > tol {
        return Ok(false);
    }
    Ok(a.dims.principal().same_multiset(&b.dims.principal(), tol.max(1e-9)))
}

/// Weak equivalence (D(f−g) < D(g)) decided from divergence brackets of the
/// difference h and of g. The difference must be supplied as an evaluator in
/// its own right: when f and g share the abscissa, only a formulation of
/// f − g as a single Dirichlet-type integral can be evaluated below it.
/// `None` when the brackets overlap and the order cannot be decided.
pub fn weakly_equivalent_with<H, G>(h: H, g: G, grid: &[f64]) -> Result<Option<bool>>
where
    H: Fn(f64) -> Result<ZetaValue>,
    G: Fn(f64) -> Result<ZetaValue>,
{
    let bg = zeta::abscissa_probe(&g, grid)?;
    let bh = zeta::abscissa_probe(&h, grid)?;
    // brackets within one grid step of each other are not resolved
    let step = ((grid[0] - *grid.last().unwrap()) / (grid.len() - 1) as f64).abs();
    match (bh, bg) {
        (AbscissaBracket::LowerBoundOnly { .. }, AbscissaBracket::Bracket { .. }) => Ok(Some(true)),
        (
            AbscissaBracket::Bracket { lo: hlo, hi: hhi },
            AbscissaBracket::Bracket { lo: glo, hi: ghi },
        ) => {
            if hhi < glo - step {
                Ok(Some(true))
            } else if hlo > ghi + step {
                Ok(Some(false))
            } else {
                Ok(None)
            }
        }
        (_, AbscissaBracket::LowerBoundOnly { .. }) => Ok(None),
    }
}

/// Weak equivalence with the difference formed pointwise from f and g. Works
/// whenever the two abscissae are separated; shared-abscissa pairs need
/// `weakly_equivalent_with`.
pub fn weakly_equivalent<F, G>(f: F, g: G, grid: &[f64]) -> Result<Option<bool>>
where
    F: Fn(f64) -> Result<ZetaValue>,
    G: Fn(f64) -> Result<ZetaValue>,
{
    let h = |s: f64| -> Result<ZetaValue> {
        let a = f(s)?;
        let b = g(s)?;
        Ok(ZetaValue { value: a.value - b.value, err_bound: a.err_bound + b.err_bound })
    };
    weakly_equivalent_with(&h, &g, grid)
}

/// Comparison of closed-form/numeric residues against content estimates.
#[derive(Debug, Clone)]
pub struct ResidueContentReport {
    pub dim: f64,
    pub ambient_dim: u32,
    pub res_distance: Option<f64>,
    pub res_tube: Option<f64>,
    pub content_lower: f64,
    pub content_upper: f64,
    pub content_spread: f64,
    /// (N−D)·M_* ≤ res(ζ_A, D) ≤ (N−D)·M^* (distance), M_* ≤ res(ζ̃_A, D) ≤ M^* (tube).
    pub squeeze_ok: Option<bool>,
    /// Strict inequalities certified with margin > 3× the estimate spread.
    pub strict_ok: Option<bool>,
    pub strict_margins: Option<(f64, f64)>,
    /// res(ζ̃_A, D) = res(ζ_A, D)/(N−D).
    pub relation_ok: Option<bool>,
    /// Minkowski-measurable case: res(ζ̃_A, D) equals the content.
    pub equality_ok: Option<bool>,
    pub skipped: Vec<String>,
}

pub fn residue_content_report(
    distance: Option<&MeromorphicZeta>,
    tube: Option<&MeromorphicZeta>,
    contents: &ContentEstimate,
) -> Result<ResidueContentReport> {
    let model = distance
        .or(tube)
        .ok_or_else(|| Error::MissingPoleData("need at least one model".into()))?;
    let d = model.abscissa;
    let n = model.ambient_dim;
    let nf = n as f64;
    if (contents.r - d).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "content estimate at r = {} does not match the model dimension {d}",
            contents.r
        )));
    }
    let pole = c64(d, 0.0);
    let res_d = distance.and_then(|m| m.residue_at(pole)).map(|z| z.re);
    let res_t = tube.and_then(|m| m.residue_at(pole)).map(|z| z.re);
    let mut skipped = Vec::new();

    // the grid extrema over-tighten the liminf/limsup by the estimate
    // uncertainty, so the squeeze is checked with that slack
    let slack = contents.residual_spread.max(1e-9 * contents.upper.abs());
    let squeeze_ok = if let Some(r) = res_d {
        if (nf - d).abs() < 1e-12 {
            skipped.push("distance squeeze needs D < N".into());
            None
        } else {
            Some(
                (nf - d) * (contents.lower - slack) <= r && r <= (nf - d) * (contents.upper + slack),
            )
        }
    } else if let Some(r) = res_t {
        Some(contents.lower - slack <= r && r <= contents.upper + slack)
    } else {
        skipped.push("no residue rule at D".into());
        None
    };

    let (strict_ok, strict_margins) = match (res_d, (nf - d).abs() > 1e-12) {
        (Some(r), true) => {
            let lo_margin = r - (nf - d) * contents.lower;
            let hi_margin = (nf - d) * contents.upper - r;
            let bar = 3.0 * (nf - d) * contents.residual_spread;
            (Some(lo_margin > bar && hi_margin > bar), Some((lo_margin, hi_margin)))
        }
        _ => (None, None),
    };

    let relation_ok = match (res_d, res_t) {
        (Some(rd), Some(rt)) => {
            if (nf - d).abs() < 1e-12 {
                skipped.push("residue relation inapplicable at D = N".into());
                None
            } else {
                Some((rt - rd / (nf - d)).abs() <= 1e-12 * rt.abs().max(1.0))
            }
        }
        _ => None,
    };

    let spread_rel = (contents.upper - contents.lower) / contents.upper.abs().max(1e-300);
    let equality_ok = match res_t {
        Some(rt) if spread_rel < 0.01 => {
            let mid = 0.5 * (contents.lower + contents.upper);
            Some((rt - mid).abs() <= 0.005 * mid.abs().max(1e-300))
        }
        Some(_) => None,
        None => None,
    };

    Ok(ResidueContentReport {
        dim: d,
        ambient_dim: n,
        res_distance: res_d,
        res_tube: res_t,
        content_lower: contents.lower,
        content_upper: contents.upper,
        content_spread: contents.residual_spread,
        squeeze_ok,
        strict_ok,
        strict_margins,
        relation_ok,
        equality_ok,
        skipped,
    })
}

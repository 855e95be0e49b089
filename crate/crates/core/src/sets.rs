//! The compact-set families: generalized Cantor sets, fractal strings and
//! a-strings, spheres, grills (products with cubes), disjoint unions and
//! rescalings. Each set carries exact gap data and an exact point-to-set
//! distance.

use crate::error::{Error, Result};
use std::fmt;
use std::path::{Path, PathBuf};

/// Sequence of lengths of a bounded fractal string, nonincreasing and
/// summable. `tail(k)` is the exact remainder `a_k = Σ_{j≥k} ℓ_j`.
#[derive(Debug, Clone, PartialEq)]
pub enum LengthModel {
    /// ℓ_j = first · ratio^{j-1}
    Geometric { first: f64, ratio: f64 },
    /// ℓ_j = j^{-a} − (j+1)^{-a}; remainders are a_k = k^{-a}
    PowerGaps { a: f64 },
    /// Finitely many lengths (a trivial string). Empty list is the single
    /// point {0}.
    Finite(Vec<f64>),
}

impl LengthModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            LengthModel::Geometric { first, ratio } => {
                if !(*first > 0.0) {
                    return Err(Error::InvalidParameter("geometric first length must be > 0".into()));
                }
                if !(*ratio > 0.0 && *ratio < 1.0) {
                    return Err(Error::NotSummable(format!(
                        "geometric ratio {ratio} must lie in (0,1) for a summable string"
                    )));
                }
                Ok(())
            }
            LengthModel::PowerGaps { a } => {
                if *a > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter("power-gap exponent must be > 0".into()))
                }
            }
            LengthModel::Finite(v) => {
                for w in v.windows(2) {
                    if w[1] > w[0] {
                        return Err(Error::InvalidParameter(
                            "string lengths must be nonincreasing".into(),
                        ));
                    }
                }
                if v.iter().any(|&l| !(l > 0.0)) {
                    return Err(Error::InvalidParameter("string lengths must be positive".into()));
                }
                Ok(())
            }
        }
    }

    /// ℓ_j, 1-based.
    pub fn length(&self, j: u64) -> f64 {
        debug_assert!(j >= 1);
        match self {
            LengthModel::Geometric { first, ratio } => first * ratio.powi((j - 1) as i32),
            LengthModel::PowerGaps { a } => power_gap_length(*a, j as f64),
            LengthModel::Finite(v) => v.get((j - 1) as usize).copied().unwrap_or(0.0),
        }
    }

    /// a_k = Σ_{j≥k} ℓ_j, exact per family.
    pub fn tail(&self, k: u64) -> f64 {
        debug_assert!(k >= 1);
        match self {
            LengthModel::Geometric { first, ratio } => {
                first * ratio.powi((k - 1) as i32) / (1.0 - ratio)
            }
            LengthModel::PowerGaps { a } => (k as f64).powf(-a),
            LengthModel::Finite(v) => v.iter().skip((k - 1) as usize).sum(),
        }
    }

    /// Total length a_1 = |Ω|.
    pub fn total(&self) -> f64 {
        self.tail(1)
    }

    /// Number of lengths strictly greater than `x` (finite since ℓ_j → 0).
    pub fn count_longer_than(&self, x: f64) -> u64 {
        if x <= 0.0 {
            return u64::MAX; // infinitely many; callers guard on x > 0
        }
        match self {
            LengthModel::Geometric { first, ratio } => {
                if *first <= x {
                    0
                } else {
                    // ℓ_j > x  ⇔  j − 1 < log(first/x)/log(1/ratio)
                    let b = (first / x).ln() / (1.0 / ratio).ln();
                    let mut j = b.ceil() as u64; // candidate count
                    // guard rounding at the boundary
                    while j > 0 && self.length(j) <= x {
                        j -= 1;
                    }
                    while self.length(j + 1) > x {
                        j += 1;
                    }
                    j
                }
            }
            LengthModel::PowerGaps { .. } => {
                if self.length(1) <= x {
                    return 0;
                }
                // ℓ_j is strictly decreasing; binary search for the cut
                let mut hi = 2u64;
                while self.length(hi) > x {
                    hi *= 2;
                }
                let mut lo = hi / 2; // ℓ_lo > x, ℓ_hi ≤ x
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if self.length(mid) > x {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
            LengthModel::Finite(v) => v.iter().take_while(|&&l| l > x).count() as u64,
        }
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, LengthModel::Finite(_))
    }
}

/// x^{-a} − (x+1)^{-a} on the real line, in a form that stays exact when
/// x + 1 is no longer representable.
pub fn power_gap_length(a: f64, x: f64) -> f64 {
    -x.powf(-a) * (-a * (1.0 / x).ln_1p()).exp_m1()
}

/// A compact set from one of the supported families.
#[derive(Debug, Clone, PartialEq)]
pub enum FractalSet {
    /// C^(m,a) ⊂ [0,1]: m children scaled by a, leftmost child at 0.
    GeneralizedCantor { m: u32, a: f64 },
    /// {j^{-a} : j ≥ 1} ∪ {0}
    AString { a: f64 },
    /// A_L = {a_k} for a summable nonincreasing length sequence.
    FractalString { lengths: LengthModel },
    /// Unit sphere ∂B_1(0) ⊂ R^n.
    Sphere { n: u32 },
    /// base × [0, side]^d.
    Grill { base: Box<FractalSet>, d: u32, side: f64 },
    /// Disjoint translated copies along the first axis.
    DisjointUnion { components: Vec<(FractalSet, f64)> },
    /// λ · base.
    Scaled { base: Box<FractalSet>, factor: f64 },
}

/// Exact gap statistics of a 1-dimensional set: distinct gap lengths with
/// multiplicities, largest first. Counts are stored as floats since the
/// level populations m^k(m-1) overflow any integer width within ~40 levels.
#[derive(Debug, Clone, PartialEq)]
pub struct GapTable {
    pub levels: Vec<(f64, f64)>,
    pub base_length: f64,
    /// True when the listed levels are only the head of an infinite table.
    pub truncated: bool,
}

pub fn make_cantor(m: u32, a: f64) -> Result<FractalSet> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("cantor needs m >= 2, got {m}")));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("cantor needs a > 0, got {a}")));
    }
    if m as f64 * a >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "cantor needs m*a < 1, got m*a = {}",
            m as f64 * a
        )));
    }
    Ok(FractalSet::GeneralizedCantor { m, a })
}

pub fn make_astring(a: f64) -> Result<FractalSet> {
    if a > 0.0 {
        Ok(FractalSet::AString { a })
    } else {
        Err(Error::InvalidParameter(format!("a-string needs a > 0, got {a}")))
    }
}

pub fn make_fractal_string(lengths: LengthModel) -> Result<FractalSet> {
    lengths.validate()?;
    Ok(match lengths {
        // the power-gap string is exactly the a-string
        LengthModel::PowerGaps { a } => FractalSet::AString { a },
        other => FractalSet::FractalString { lengths: other },
    })
}

pub fn make_sphere(n: u32) -> Result<FractalSet> {
    if n >= 1 {
        Ok(FractalSet::Sphere { n })
    } else {
        Err(Error::InvalidParameter("sphere needs ambient dimension N >= 1".into()))
    }
}

pub fn make_grill(base: FractalSet, d: u32) -> Result<FractalSet> {
    make_grill_sided(base, d, 1.0)
}

pub fn make_grill_sided(base: FractalSet, d: u32, side: f64) -> Result<FractalSet> {
    if d < 1 {
        return Err(Error::InvalidParameter("grill needs d >= 1".into()));
    }
    if !(side > 0.0) {
        return Err(Error::InvalidParameter("grill needs side > 0".into()));
    }
    Ok(FractalSet::Grill { base: Box::new(base), d, side })
}

pub fn make_union(components: Vec<(FractalSet, f64)>) -> Result<FractalSet> {
    if components.is_empty() {
        return Err(Error::InvalidParameter("union needs at least one component".into()));
    }
    let dim = components[0].0.ambient_dim();
    for (c, _) in &components {
        if c.ambient_dim() != dim {
            return Err(Error::InvalidParameter(
                "union components must share the ambient dimension".into(),
            ));
        }
    }
    // disjointness of the translated hulls along the first axis
    let mut spans: Vec<(f64, f64)> = components
        .iter()
        .map(|(c, off)| {
            let h = c.hull()[0];
            (h.0 + off, h.1 + off)
        })
        .collect();
    spans.sort_by(|p, q| p.0.total_cmp(&q.0));
    for w in spans.windows(2) {
        if w[1].0 <= w[0].1 {
            return Err(Error::OverlappingHulls(format!(
                "[{}, {}] meets [{}, {}]",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    Ok(FractalSet::DisjointUnion { components })
}

pub fn scale(set: FractalSet, factor: f64) -> Result<FractalSet> {
    if !(factor > 0.0) {
        return Err(Error::InvalidParameter(format!("scale factor must be > 0, got {factor}")));
    }
    Ok(match set {
        FractalSet::Scaled { base, factor: inner } => {
            FractalSet::Scaled { base, factor: factor * inner }
        }
        other => FractalSet::Scaled { base: Box::new(other), factor },
    })
}

impl FractalSet {
    pub fn ambient_dim(&self) -> u32 {
        match self {
            FractalSet::GeneralizedCantor { .. }
            | FractalSet::AString { .. }
            | FractalSet::FractalString { .. } => 1,
            FractalSet::Sphere { n } => *n,
            FractalSet::Grill { base, d, .. } => base.ambient_dim() + d,
            FractalSet::DisjointUnion { components } => components[0].0.ambient_dim(),
            FractalSet::Scaled { base, .. } => base.ambient_dim(),
        }
    }

    /// Bounding box, one closed interval per coordinate.
    pub fn hull(&self) -> Vec<(f64, f64)> {
        match self {
            FractalSet::GeneralizedCantor { .. } => vec![(0.0, 1.0)],
            FractalSet::AString { .. } => vec![(0.0, 1.0)],
            FractalSet::FractalString { lengths } => vec![(0.0, lengths.total())],
            FractalSet::Sphere { n } => vec![(-1.0, 1.0); *n as usize],
            FractalSet::Grill { base, d, side } => {
                let mut h = base.hull();
                h.extend(std::iter::repeat((0.0, *side)).take(*d as usize));
                h
            }
            FractalSet::DisjointUnion { components } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for (c, off) in components {
                    let h = c.hull()[0];
                    lo = lo.min(h.0 + off);
                    hi = hi.max(h.1 + off);
                }
                let mut h = components[0].0.hull();
                h[0] = (lo, hi);
                h
            }
            FractalSet::Scaled { base, factor } => {
                base.hull().into_iter().map(|(a, b)| (a * factor, b * factor)).collect()
            }
        }
    }

    /// Box dimension of the family (exact closed form per family).
    pub fn dim_hint(&self) -> f64 {
        match self {
            FractalSet::GeneralizedCantor { m, a } => (*m as f64).ln() / (1.0 / a).ln(),
            FractalSet::AString { a } => 1.0 / (1.0 + a),
            FractalSet::FractalString { lengths } => match lengths {
                LengthModel::Geometric { .. } => 0.0,
                LengthModel::PowerGaps { a } => 1.0 / (1.0 + a),
                LengthModel::Finite(_) => 0.0,
            },
            FractalSet::Sphere { n } => (*n as f64) - 1.0,
            FractalSet::Grill { base, d, .. } => base.dim_hint() + *d as f64,
            FractalSet::DisjointUnion { components } => {
                components.iter().map(|(c, _)| c.dim_hint()).fold(0.0, f64::max)
            }
            FractalSet::Scaled { base, .. } => base.dim_hint(),
        }
    }

    /// Minimal distance between consecutive component hulls; the tube of the
    /// union is additive for radii below half this value.
    pub fn union_separation(&self) -> Option<f64> {
        if let FractalSet::DisjointUnion { components } = self {
            let mut spans: Vec<(f64, f64)> = components
                .iter()
                .map(|(c, off)| {
                    let h = c.hull()[0];
                    (h.0 + off, h.1 + off)
                })
                .collect();
            spans.sort_by(|p, q| p.0.total_cmp(&q.0));
            let mut sep = f64::INFINITY;
            for w in spans.windows(2) {
                sep = sep.min(w[1].0 - w[0].1);
            }
            Some(sep)
        } else {
            None
        }
    }

    /// Exact Euclidean distance from `x` to the closure of the set.
    pub fn distance(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.ambient_dim() as usize, "point dimension mismatch");
        match self {
            FractalSet::GeneralizedCantor { m, a } => cantor_distance(*m, *a, x[0]),
            FractalSet::AString { a } => {
                string_distance(&LengthModel::PowerGaps { a: *a }, x[0])
            }
            FractalSet::FractalString { lengths } => string_distance(lengths, x[0]),
            FractalSet::Sphere { .. } => {
                let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                (r - 1.0).abs()
            }
            FractalSet::Grill { base, d, side } => {
                let nb = base.ambient_dim() as usize;
                let db = base.distance(&x[..nb]);
                let mut s = db * db;
                for &z in &x[nb..nb + *d as usize] {
                    let c = if z < 0.0 {
                        -z
                    } else if z > *side {
                        z - side
                    } else {
                        0.0
                    };
                    s += c * c;
                }
                s.sqrt()
            }
            FractalSet::DisjointUnion { components } => {
                let mut best = f64::INFINITY;
                let mut y = x.to_vec();
                for (c, off) in components {
                    y[0] = x[0] - off;
                    best = best.min(c.distance(&y));
                }
                best
            }
            FractalSet::Scaled { base, factor } => {
                let y: Vec<f64> = x.iter().map(|v| v / factor).collect();
                factor * base.distance(&y)
            }
        }
    }

    /// Head of the exact gap table for 1-d families.
    pub fn gap_table(&self, max_levels: usize) -> Option<GapTable> {
        match self {
            FractalSet::GeneralizedCantor { m, a } => {
                let mf = *m as f64;
                let hole = (1.0 - mf * a) / (mf - 1.0);
                let mut levels = Vec::with_capacity(max_levels);
                let mut count = mf - 1.0;
                let mut len = hole;
                for _ in 0..max_levels {
                    levels.push((len, count));
                    count *= mf;
                    len *= a;
                }
                Some(GapTable { levels, base_length: 1.0, truncated: true })
            }
            FractalSet::AString { a } => {
                gap_table_of_lengths(&LengthModel::PowerGaps { a: *a }, max_levels)
            }
            FractalSet::FractalString { lengths } => gap_table_of_lengths(lengths, max_levels),
            FractalSet::Scaled { base, factor } => base.gap_table(max_levels).map(|t| GapTable {
                levels: t.levels.iter().map(|&(l, c)| (l * factor, c)).collect(),
                base_length: t.base_length * factor,
                truncated: t.truncated,
            }),
            _ => None,
        }
    }
}

fn gap_table_of_lengths(lengths: &LengthModel, max_levels: usize) -> Option<GapTable> {
    let mut levels = Vec::with_capacity(max_levels);
    for j in 1..=max_levels as u64 {
        let l = lengths.length(j);
        if l <= 0.0 {
            break;
        }
        levels.push((l, 1.0));
    }
    let truncated = lengths.is_infinite() || levels.len() == max_levels;
    Some(GapTable { levels, base_length: lengths.total(), truncated })
}

/// Distance to C^(m,a) ⊂ [0,1] by interval descent. The descent stops once
/// the interval length is below machine resolution of the answer; from there
/// the nearest endpoint is exact.
fn cantor_distance(m: u32, a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return -x;
    }
    if x >= 1.0 {
        return x - 1.0;
    }
    let mf = m as f64;
    let step = a + (1.0 - mf * a) / (mf - 1.0); // child spacing
    let mut lo = 0.0f64; // left end of current interval, absolute
    let mut len = 1.0f64;
    let mut rel = x;
    loop {
        // children occupy [j*step, j*step + a] relative to the current interval
        let j = ((rel / len) / step).floor().clamp(0.0, mf - 1.0);
        let child_lo = j * step * len;
        let child_len = a * len;
        let within = rel - child_lo;
        if within < 0.0 {
            // in the hole left of child j: nearest points are child ends
            let left_child_hi = child_lo - (step - a) * len;
            return (lo + child_lo - x).min(x - (lo + left_child_hi)).max(0.0);
        }
        if within > child_len {
            // in the hole right of child j
            let right_child_lo = child_lo + step * len;
            return ((lo + right_child_lo) - x).min(x - (lo + child_lo + child_len)).max(0.0);
        }
        lo += child_lo;
        len = child_len;
        rel = within;
        if len < 1e-18 * (1.0 + x.abs()) || len < f64::MIN_POSITIVE * 8.0 {
            // endpoints of the current interval belong to the set
            return rel.min(len - rel).max(0.0);
        }
    }
}

/// Distance to {a_k} ∪ {0} for a length model.
fn string_distance(lengths: &LengthModel, x: f64) -> f64 {
    let a1 = lengths.total();
    if x <= 0.0 {
        return -x;
    }
    if x >= a1 {
        return x - a1;
    }
    // find k with a_{k+1} <= x <= a_k (a_k strictly decreasing to 0)
    match lengths {
        LengthModel::Finite(v) => {
            let mut prev = a1;
            let mut acc = a1;
            for &l in v {
                acc -= l;
                // points prev (= a_k) and acc (= a_{k+1})
                if x >= acc {
                    return (x - acc).min(prev - x);
                }
                prev = acc;
            }
            x // below the smallest point, nearest is 0 = acc
        }
        _ => {
            // binary search on k: a_k >= x
            let mut hi = 2u64;
            while lengths.tail(hi) > x {
                hi *= 2;
            }
            let mut lo = hi / 2;
            if lengths.tail(lo) < x {
                // x is above a_1? excluded; guard anyway
                return (lengths.tail(lo) - x).abs();
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if lengths.tail(mid) >= x {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let upper = lengths.tail(lo);
            let lower = lengths.tail(hi); // may be far smaller; 0 is in the set
            (x - lower).min(upper - x)
        }
    }
}

// ---------------------------------------------------------------------------
// Config format: whitespace-separated key=value pairs on one logical line,
// e.g. `kind=cantor m=2 a=1/3`. Values may be `{...}` inline specs or
// `@path` / `path` file references where a sub-set is expected; union
// components carry a translation suffix: `component=<spec>@<offset>`.
// ---------------------------------------------------------------------------

/// Parse a numeric value; accepts decimals, scientific notation and `p/q`.
pub fn parse_number(s: &str) -> Result<f64> {
    if let Some((p, q)) = s.split_once('/') {
        let p: f64 = p.trim().parse().map_err(|_| bad_num(s))?;
        let q: f64 = q.trim().parse().map_err(|_| bad_num(s))?;
        if q == 0.0 {
            return Err(bad_num(s));
        }
        Ok(p / q)
    } else {
        s.trim().parse().map_err(|_| bad_num(s))
    }
}

fn bad_num(s: &str) -> Error {
    Error::Parse { line: 0, message: format!("cannot parse number `{s}`") }
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '{' => {
                depth += 1;
                cur.push(ch);
            }
            '}' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

struct SpecCtx<'a> {
    base_dir: Option<&'a Path>,
    line: usize,
}

impl<'a> SpecCtx<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, message: message.into() }
    }

    fn sub_spec(&self, v: &str) -> Result<FractalSet> {
        if let Some(inner) = v.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            parse_spec_line(inner, self.base_dir, self.line)
        } else {
            let path = v.strip_prefix('@').unwrap_or(v);
            let full: PathBuf = match self.base_dir {
                Some(d) => d.join(path),
                None => PathBuf::from(path),
            };
            let text = std::fs::read_to_string(&full)?;
            parse_spec(&text, full.parent())
        }
    }
}

/// Parse a full config text: the first non-empty, non-comment line describes
/// the set.
pub fn parse_spec(text: &str, base_dir: Option<&Path>) -> Result<FractalSet> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        return parse_spec_line(line, base_dir, i + 1);
    }
    Err(Error::Parse { line: 0, message: "empty set spec".into() })
}

fn parse_spec_line(line: &str, base_dir: Option<&Path>, line_no: usize) -> Result<FractalSet> {
    let ctx = SpecCtx { base_dir, line: line_no };
    let mut kind = None;
    let mut kv: Vec<(String, String)> = Vec::new();
    for tok in split_top_level(line) {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| ctx.err(format!("expected key=value, got `{tok}`")))?;
        if k == "kind" {
            kind = Some(v.to_string());
        } else {
            kv.push((k.to_string(), v.to_string()));
        }
    }
    let kind = kind.ok_or_else(|| ctx.err("missing `kind=`"))?;
    let get = |key: &str| -> Option<&str> {
        kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    };
    let num = |key: &str| -> Result<f64> {
        parse_number(get(key).ok_or_else(|| ctx.err(format!("missing `{key}=`")))?)
            .map_err(|e| ctx.err(e.to_string()))
    };

    match kind.as_str() {
        "cantor" => {
            let m = num("m")? as u32;
            let a = num("a")?;
            make_cantor(m, a)
        }
        "astring" => make_astring(num("a")?),
        "string" => {
            let model = get("model").unwrap_or("geometric");
            let lengths = match model {
                "geometric" => LengthModel::Geometric { first: num("first")?, ratio: num("ratio")? },
                "powergap" | "astring" => LengthModel::PowerGaps { a: num("a")? },
                "finite" => {
                    let list = get("lengths").ok_or_else(|| ctx.err("missing `lengths=`"))?;
                    let vals: Result<Vec<f64>> =
                        list.split(',').filter(|s| !s.is_empty()).map(parse_number).collect();
                    LengthModel::Finite(vals.map_err(|e| ctx.err(e.to_string()))?)
                }
                other => return Err(ctx.err(format!("unknown string model `{other}`"))),
            };
            make_fractal_string(lengths)
        }
        "sphere" => {
            let n = get("N").or_else(|| get("n")).ok_or_else(|| ctx.err("missing `N=`"))?;
            make_sphere(parse_number(n)? as u32)
        }
        "grill" => {
            let base = ctx.sub_spec(get("base").ok_or_else(|| ctx.err("missing `base=`"))?)?;
            let d = num("d")? as u32;
            let side = match get("side") {
                Some(s) => parse_number(s)?,
                None => 1.0,
            };
            make_grill_sided(base, d, side)
        }
        "scaled" => {
            let base = ctx.sub_spec(get("base").ok_or_else(|| ctx.err("missing `base=`"))?)?;
            scale(base, num("lambda")?)
        }
        "union" => {
            let mut comps = Vec::new();
            for (k, v) in &kv {
                if k != "component" {
                    continue;
                }
                let (spec, off) = v
                    .rsplit_once('@')
                    .ok_or_else(|| ctx.err("component needs `<spec>@<offset>`"))?;
                let set = ctx.sub_spec(spec)?;
                comps.push((set, parse_number(off)?));
            }
            make_union(comps)
        }
        other => Err(ctx.err(format!("unknown kind `{other}`"))),
    }
}

impl fmt::Display for FractalSet {
    /// Inline config form; round-trips through `parse_spec`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FractalSet::GeneralizedCantor { m, a } => write!(f, "kind=cantor m={m} a={a}"),
            FractalSet::AString { a } => write!(f, "kind=astring a={a}"),
            FractalSet::FractalString { lengths } => match lengths {
                LengthModel::Geometric { first, ratio } => {
                    write!(f, "kind=string model=geometric first={first} ratio={ratio}")
                }
                LengthModel::PowerGaps { a } => write!(f, "kind=string model=powergap a={a}"),
                LengthModel::Finite(v) => {
                    let list: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    write!(f, "kind=string model=finite lengths={}", list.join(","))
                }
            },
            FractalSet::Sphere { n } => write!(f, "kind=sphere N={n}"),
            FractalSet::Grill { base, d, side } => {
                write!(f, "kind=grill d={d} side={side} base={{{base}}}")
            }
            FractalSet::DisjointUnion { components } => {
                write!(f, "kind=union")?;
                for (c, off) in components {
                    write!(f, " component={{{c}}}@{off}")?;
                }
                Ok(())
            }
            FractalSet::Scaled { base, factor } => {
                write!(f, "kind=scaled lambda={factor} base={{{base}}}")
            }
        }
    }
}

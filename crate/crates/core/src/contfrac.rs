//! Continued-fraction expansions with certified digits. Logarithm ratios
//! are bracketed by exact rational bounds computed in big-integer
//! fixed-point arithmetic, and digits are emitted only while the bounds
//! agree, so a reported non-terminating prefix is rigorous.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Inputs whose continued fraction can be certified exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactReal {
    /// p/q with q > 0.
    Rational { p: i64, q: i64 },
    /// ln(m1)/ln(m2) for integers m1, m2 >= 2.
    LogRatio { m1: u64, m2: u64 },
}

#[derive(Debug, Clone)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    /// |x − p/q| · q², the scaled approximation residual.
    pub scaled_residual: f64,
}

#[derive(Debug, Clone)]
pub struct IrrationalityReport {
    pub digits: Vec<u64>,
    pub convergents: Vec<Convergent>,
    /// True when the expansion terminated within the requested depth, i.e.
    /// the input is rational with a short expansion.
    pub terminated: bool,
    /// Number of digits certified by the interval arithmetic.
    pub certified_depth: usize,
    pub value: f64,
}

// Fixed-point scale for the logarithm brackets.
const SCALE_DIGITS: u32 = 80;

fn scale() -> BigInt {
    BigInt::from(10u32).pow(SCALE_DIGITS)
}

/// Bounds on SCALE · 2·atanh(num/den) for 0 < num < den, by the odd power
/// series with an explicit geometric tail bound.
fn atanh2_fixed(num: u64, den: u64) -> (BigInt, BigInt) {
    let num = BigInt::from(num);
    let den = BigInt::from(den);
    let num2 = &num * &num;
    let den2 = &den * &den;
    // term_k = SCALE · 2 · num^{2k+1} / (den^{2k+1} (2k+1))
    let mut power_num = num.clone();
    let mut power_den = den.clone();
    let mut acc = BigInt::from(0);
    let mut k = 0u32;
    let mut floors = 0u64;
    loop {
        let term = (scale() * 2 * &power_num) / (&power_den * BigInt::from(2 * k + 1));
        let done = term == BigInt::from(0);
        acc += &term;
        floors += 1;
        if done {
            break;
        }
        power_num *= &num2;
        power_den *= &den2;
        k += 1;
        if k > 4000 {
            break;
        }
    }
    // geometric tail of the series is below one more unit at this scale;
    // each floored division lost at most 1
    let lo = acc.clone();
    let hi = acc + BigInt::from(floors + 2);
    (lo, hi)
}

/// Bounds on SCALE · ln(n) for n >= 2, via ln(n) = j ln 2 + 2 atanh((r−1)/(r+1))
/// with r = n / 2^j in [1, 2).
fn ln_fixed(n: u64) -> Result<(BigInt, BigInt)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("log bracket needs n >= 2, got {n}")));
    }
    let mut j = 0u32;
    let mut pow2 = 1u64;
    while pow2.saturating_mul(2) <= n {
        pow2 *= 2;
        j += 1;
    }
    // ln 2 = 2 atanh(1/3)
    let (l2_lo, l2_hi) = atanh2_fixed(1, 3);
    // r = n / 2^j: 2 atanh((n − 2^j)/(n + 2^j))
    let (r_lo, r_hi) = if n == pow2 {
        (BigInt::from(0), BigInt::from(0))
    } else {
        atanh2_fixed(n - pow2, n + pow2)
    };
    Ok((&l2_lo * j + r_lo, &l2_hi * j + r_hi))
}

/// Simultaneous continued fraction of an interval [lo_num/lo_den, hi_num/hi_den];
/// digits are emitted while both endpoints agree.
fn interval_cf(
    mut lo_num: BigInt,
    mut lo_den: BigInt,
    mut hi_num: BigInt,
    mut hi_den: BigInt,
    depth: usize,
) -> (Vec<u64>, bool) {
    let mut digits = Vec::new();
    let zero = BigInt::from(0);
    for _ in 0..=depth {
        if lo_den == zero || hi_den == zero {
            // an endpoint terminated: cannot certify further digits
            return (digits, false);
        }
        let a_lo = lo_num.clone() / lo_den.clone();
        let a_hi = hi_num.clone() / hi_den.clone();
        if a_lo != a_hi {
            return (digits, false);
        }
        let a = a_lo;
        digits.push(u64::try_from(&a).unwrap_or(u64::MAX));
        // x ← 1/(x − a) swaps the interval orientation
        let new_lo_num = hi_den.clone();
        let new_lo_den = hi_num - &a * &hi_den;
        let new_hi_num = lo_den.clone();
        let new_hi_den = lo_num - &a * &lo_den;
        lo_num = new_lo_num;
        lo_den = new_lo_den;
        hi_num = new_hi_num;
        hi_den = new_hi_den;
    }
    (digits, false)
}

fn exact_cf(mut p: i64, mut q: i64, depth: usize) -> (Vec<u64>, bool) {
    let mut digits = Vec::new();
    for _ in 0..=depth {
        if q == 0 {
            return (digits, true);
        }
        let a = p.div_euclid(q);
        digits.push(a as u64);
        let r = p - a * q;
        p = q;
        q = r;
    }
    (digits, q == 0)
}

fn big_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Continued-fraction expansion to the requested depth with best rational
/// approximations and scaled residuals. Non-termination to the depth with
/// certified digits is evidence (not proof) of irrationality.
pub fn irrationality_evidence(x: &ExactReal, depth: usize) -> Result<IrrationalityReport> {
    if depth < 1 {
        return Err(Error::InvalidParameter("depth must be >= 1".into()));
    }
    let (digits, terminated, value) = match x {
        ExactReal::Rational { p, q } => {
            if *q <= 0 {
                return Err(Error::InvalidParameter("rational needs q > 0".into()));
            }
            let (d, t) = exact_cf(*p, *q, depth);
            (d, t, *p as f64 / *q as f64)
        }
        ExactReal::LogRatio { m1, m2 } => {
            let (n1_lo, n1_hi) = ln_fixed(*m1)?;
            let (n2_lo, n2_hi) = ln_fixed(*m2)?;
            // x ∈ [n1_lo/n2_hi, n1_hi/n2_lo]
            let (d, t) = interval_cf(n1_lo, n2_hi, n1_hi, n2_lo, depth);
            let v = (*m1 as f64).ln() / (*m2 as f64).ln();
            (d, t, v)
        }
    };
    let certified_depth = digits.len().saturating_sub(1);
    let digits: Vec<u64> = digits.into_iter().take(depth + 1).collect();

    // convergents p_k/q_k from the standard recurrence
    let mut convergents = Vec::new();
    let mut p_prev = BigInt::from(0);
    let mut p_cur = BigInt::from(1);
    let mut q_prev = BigInt::from(1);
    let mut q_cur = BigInt::from(0);
    for &a in &digits {
        let a = BigInt::from(a);
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        p_prev = p_cur;
        p_cur = p_next.clone();
        q_prev = q_cur;
        q_cur = q_next.clone();
        let pf = big_to_f64(&p_next);
        let qf = big_to_f64(&q_next);
        let scaled = (value - pf / qf).abs() * qf * qf;
        convergents.push(Convergent { p: p_next, q: q_next, scaled_residual: scaled });
    }

    Ok(IrrationalityReport { digits, convergents, terminated, certified_depth, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_terminates_quickly() {
        let r = irrationality_evidence(&ExactReal::Rational { p: 3, q: 7 }, 20).unwrap();
        assert!(r.terminated);
        assert_eq!(r.digits, vec![0, 2, 3]);
        // the last convergent is exact
        let last = r.convergents.last().unwrap();
        assert_eq!(last.p, BigInt::from(3));
        assert_eq!(last.q, BigInt::from(7));
    }

    #[test]
    fn log_ratio_prefix_is_certified() {
        // ln 2 / ln 3: the first partial quotients are frozen here and the
        // interval arithmetic must certify at least depth 20
        let r = irrationality_evidence(&ExactReal::LogRatio { m1: 2, m2: 3 }, 20).unwrap();
        assert!(!r.terminated);
        assert!(r.certified_depth >= 20, "certified only {}", r.certified_depth);
        assert_eq!(&r.digits[..11], &[0, 1, 1, 1, 2, 2, 3, 1, 5, 2, 23]);
        // convergent residuals stay bounded (Dirichlet: |x−p/q| q² < 1)
        for c in &r.convergents {
            assert!(c.scaled_residual < 1.0);
        }
    }

    #[test]
    fn log_brackets_are_tight_and_ordered() {
        for n in [2u64, 3, 5, 6, 7, 10, 12] {
            let (lo, hi) = ln_fixed(n).unwrap();
            assert!(lo <= hi);
            let width = hi - &lo;
            assert!(width < BigInt::from(100_000u64), "n = {n}: width {width}");
            let approx = big_to_f64(&lo) / 1e80;
            assert!((approx - (n as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn example_pair_ratio_is_the_log_ratio() {
        // T1/T2 for the certified (2,3) construction equals ln 2 / ln 3
        let t1 = 3f64.ln(); // period of C^(2,1/3)
        let d = 2f64.ln() / 3f64.ln();
        let t2 = 3f64.ln() / d;
        let ratio = t1 / t2;
        assert!((ratio - 2f64.ln() / 3f64.ln()).abs() < 1e-14);
        let r = irrationality_evidence(&ExactReal::LogRatio { m1: 2, m2: 3 }, 20).unwrap();
        assert!((r.value - ratio).abs() < 1e-14);
        assert!(!r.terminated);
    }
}

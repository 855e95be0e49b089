//! Construction and exact-arithmetic certification of quasiperiodic unions:
//! families of generalized Cantor sets with a common dimension whose
//! oscillation periods are rationally independent by the prime-exponent
//! criterion.

use crate::error::{Error, Result};
use crate::merom::{self, ComplexDimensions, MeromorphicZeta, PoleLattice};
use crate::sets::{make_cantor, make_grill_sided, make_union, FractalSet};
use crate::tubes::cantor_threshold;

/// Exact prime factorization by trial division (moduli are small).
pub fn factorize(m: u64) -> Result<Vec<(u64, u32)>> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("factorization needs m >= 2, got {m}")));
    }
    let mut out = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

/// Exact rank over Q of an integer matrix, by fraction-free (Bareiss)
/// Gaussian elimination in i128; no floating point anywhere.
pub fn rational_rank(matrix: &[Vec<i64>]) -> Result<usize> {
    if matrix.is_empty() || matrix[0].is_empty() {
        return Err(Error::InvalidParameter("rank of an empty matrix".into()));
    }
    let rows = matrix.len();
    let cols = matrix[0].len();
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidParameter("ragged matrix".into()));
    }
    let mut a: Vec<Vec<i128>> =
        matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0usize;
    let mut prev = 1i128;
    let mut row = 0usize;
    for col in 0..cols {
        // find a pivot in this column at or below `row`
        let Some(p) = (row..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[row][col];
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    Ok(rank)
}

/// A certified family of generalized Cantor sets with common dimension D:
/// moduli m_i, scales a_i = m_i^{-1/D}, periods T_i = ln(m_i)/D, and the
/// prime-exponent matrix whose rational rank certifies the independence of
/// the periods.
#[derive(Debug, Clone)]
pub struct QuasiConstruction {
    pub dim: f64,
    pub moduli: Vec<u32>,
    pub scales: Vec<f64>,
    pub periods: Vec<f64>,
    pub primes: Vec<u64>,
    pub exponent_matrix: Vec<Vec<i64>>,
    pub certified: bool,
    pub duplicate_moduli: bool,
    /// Spacing of the component hulls on the line.
    pub spacing: f64,
}

/// Build the disjoint union of C^(m_i, a_i) with a_i = m_i^{-1/D}, each
/// translated to [spacing·(i−1), spacing·(i−1)+1], spacing 2. Returns the
/// set together with the certification record; rank deficiency leaves the
/// construction intact with `certified = false`.
pub fn build_quasiperiodic(dim: f64, moduli: &[u32]) -> Result<(FractalSet, QuasiConstruction)> {
    if !(dim > 0.0 && dim < 1.0) {
        return Err(Error::InvalidParameter(format!("dimension must lie in (0,1), got {dim}")));
    }
    if moduli.is_empty() {
        return Err(Error::InvalidParameter("need at least one modulus".into()));
    }
    if moduli.iter().any(|&m| m < 2) {
        return Err(Error::InvalidParameter("moduli must be >= 2".into()));
    }
    let mut duplicate = false;
    let mut seen = std::collections::BTreeSet::new();
    for &m in moduli {
        if !seen.insert(m) {
            duplicate = true;
        }
    }

    let mut primes = std::collections::BTreeSet::new();
    let mut factored = Vec::new();
    for &m in moduli {
        let f = factorize(m as u64)?;
        for &(p, _) in &f {
            primes.insert(p);
        }
        factored.push(f);
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let exponent_matrix: Vec<Vec<i64>> = factored
        .iter()
        .map(|f| {
            primes
                .iter()
                .map(|p| f.iter().find(|(q, _)| q == p).map(|(_, e)| *e as i64).unwrap_or(0))
                .collect()
        })
        .collect();
    let certified = rational_rank(&exponent_matrix)? == moduli.len();

    let spacing = 2.0;
    let mut components = Vec::new();
    let mut scales = Vec::new();
    let mut periods = Vec::new();
    for (i, &m) in moduli.iter().enumerate() {
        let a = (-(m as f64).ln() / dim).exp();
        scales.push(a);
        periods.push((m as f64).ln() / dim);
        components.push((make_cantor(m, a)?, spacing * i as f64));
    }
    let set = make_union(components)?;
    let record = QuasiConstruction {
        dim,
        moduli: moduli.to_vec(),
        scales,
        periods,
        primes,
        exponent_matrix,
        certified,
        duplicate_moduli: duplicate,
        spacing,
    };
    Ok((set, record))
}

/// Complex dimensions of the union: one vertical lattice D + (2π/T_i)iZ per
/// component. The candidate pole at 0 of each closed form is removable
/// (its residues cancel exactly), so no isolated poles remain.
pub fn union_dims(construction: &QuasiConstruction) -> ComplexDimensions {
    let lattices = construction
        .periods
        .iter()
        .map(|t| PoleLattice {
            base: num_complex::Complex64::new(construction.dim, 0.0),
            period: 2.0 * std::f64::consts::PI / t,
            multiplicity: 1,
        })
        .collect();
    ComplexDimensions::new(lattices, vec![], construction.dim)
}

/// Closed-form distance zeta model of the union (sum of the component
/// closed forms at a common δ below half the separation).
pub fn union_zeta_model(construction: &QuasiConstruction) -> Result<MeromorphicZeta> {
    let max_c = construction
        .moduli
        .iter()
        .zip(&construction.scales)
        .map(|(&m, &a)| cantor_threshold(m, a))
        .fold(0.0, f64::max);
    let cap = (construction.spacing - 1.0) / 2.0;
    if max_c >= cap {
        return Err(Error::OutOfRange(
            "no admissible common delta: component threshold exceeds half the separation".into(),
        ));
    }
    let delta = 0.5 * (max_c + cap);
    let parts: Result<Vec<MeromorphicZeta>> = construction
        .moduli
        .iter()
        .zip(&construction.scales)
        .map(|(&m, &a)| merom::cantor_model(m, a, delta))
        .collect();
    merom::union_model(parts?)
}

/// Exact check that no two lattices share a nonreal pole: T_i/T_j = k/l with
/// small integers would force l·e_i = k·e_j on the exponent vectors, which
/// rank 2 of the pair excludes. Returns true when every pair is certified
/// irrational.
pub fn periods_pairwise_irrational(construction: &QuasiConstruction) -> Result<bool> {
    let n = construction.moduli.len();
    for i in 0..n {
        for j in i + 1..n {
            let pair = vec![
                construction.exponent_matrix[i].clone(),
                construction.exponent_matrix[j].clone(),
            ];
            if rational_rank(&pair)? < 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Product with [0, L]^d: same quasiperiodic structure, profile scaled by
/// L^d, dimensions shifted by d.
pub fn grill_quasi(set: &FractalSet, d: u32, side: f64) -> Result<FractalSet> {
    if d < 1 {
        return Err(Error::InvalidParameter("grill needs d >= 1".into()));
    }
    make_grill_sided(set.clone(), d, side)
}

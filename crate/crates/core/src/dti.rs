//! Dirichlet-type integral descriptors: the elementary kernel with
//! 1/(s−a) = ∫_1^∞ x^{a-s-1} dx, tensor products, reciprocal polynomials
//! built from elementary factors, and base-r rescalings with an entire
//! prefactor.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::integrate_complex;

/// Entire prefactor of a base-r descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum EntireFactor {
    One,
    Const(Complex64),
    /// e^{c s}
    ExpLinear(Complex64),
}

impl EntireFactor {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        match self {
            EntireFactor::One => Complex64::new(1.0, 0.0),
            EntireFactor::Const(c) => *c,
            EntireFactor::ExpLinear(c) => (c * s).exp(),
        }
    }
}

/// Symbolic (E, φ, μ) descriptor of a tamed Dirichlet-type integral.
#[derive(Debug, Clone, PartialEq)]
pub enum DtiDescriptor {
    /// E = [1,∞), φ(x) = 1/x, μ = x^a dx/x; evaluates to 1/(s−a).
    Elementary { a: Complex64 },
    /// Product kernel on the product space; evaluates to the product.
    TensorProduct(Box<DtiDescriptor>, Box<DtiDescriptor>),
    /// 1/P(s) for P with the given roots and leading coefficient.
    ReciprocalPolynomial { roots: Vec<Complex64>, leading: Complex64 },
    /// s ↦ ρ(s) · inner(r^{-s}), the base-r form.
    BaseR { inner: Box<DtiDescriptor>, r: f64, rho: EntireFactor },
}

impl DtiDescriptor {
    pub fn elementary(a: Complex64) -> Self {
        DtiDescriptor::Elementary { a }
    }

    pub fn tensor(left: DtiDescriptor, right: DtiDescriptor) -> Self {
        DtiDescriptor::TensorProduct(Box::new(left), Box::new(right))
    }

    pub fn reciprocal_polynomial(roots: Vec<Complex64>, leading: Complex64) -> Result<Self> {
        if leading.norm() == 0.0 {
            return Err(Error::InvalidParameter("leading coefficient must be nonzero".into()));
        }
        Ok(DtiDescriptor::ReciprocalPolynomial { roots, leading })
    }

    pub fn base_r(inner: DtiDescriptor, r: f64, rho: EntireFactor) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParameter("base r must lie in (0,1)".into()));
        }
        Ok(DtiDescriptor::BaseR { inner: Box::new(inner), r, rho })
    }

    /// Essential upper bound of the kernel function φ with respect to |μ|.
    pub fn tameness_bound(&self) -> f64 {
        match self {
            DtiDescriptor::Elementary { .. } => 1.0,
            DtiDescriptor::TensorProduct(l, r) => l.tameness_bound() * r.tameness_bound(),
            DtiDescriptor::ReciprocalPolynomial { .. } => 1.0,
            DtiDescriptor::BaseR { inner, .. } => inner.tameness_bound(),
        }
    }

    /// Upper bound on the abscissa of convergence. Base-r descriptors have
    /// no half-plane of convergence.
    pub fn abscissa_bound(&self) -> f64 {
        match self {
            DtiDescriptor::Elementary { a } => a.re,
            DtiDescriptor::TensorProduct(l, r) => l.abscissa_bound().max(r.abscissa_bound()),
            DtiDescriptor::ReciprocalPolynomial { roots, .. } => {
                roots.iter().map(|a| a.re).fold(f64::NEG_INFINITY, f64::max)
            }
            DtiDescriptor::BaseR { .. } => f64::INFINITY,
        }
    }
}

/// Numeric elementary evaluation: truncated ∫_1^X x^{a-s-1} dx plus the
/// analytic tail X^{a-s}/(s−a), with divergence detected by comparing
/// truncations at X and 2X.
fn elementary_eval(a: Complex64, s: Complex64, tol: f64) -> Result<Complex64> {
    let w = a - s;
    // substitution x = e^y turns the integrand into e^{w y}
    let f = |y: f64| (w * y).exp();
    let y1 = 6.0f64;
    let seg = |lo: f64, hi: f64| integrate_complex(&f, lo, hi, tol * 0.05, 400).value;
    let head = seg(0.0, y1);
    let inc1 = seg(y1, 2.0 * y1);
    let inc2 = seg(2.0 * y1, 3.0 * y1);
    // increments over equal log-windows must decay, otherwise the truncated
    // integrals grow without bound
    if inc1.norm() > 0.0 && inc2.norm() >= inc1.norm() * (1.0 - 1e-9) {
        return Err(Error::Divergent { abscissa_hint: a.re });
    }
    // analytic tail: ∫_X^∞ x^{w-1} dx = −X^w / w with X = e^{3 y1}
    let tail = -((w * 3.0 * y1).exp()) / w;
    Ok(head + inc1 + inc2 + tail)
}

/// Evaluate the descriptor at s.
pub fn dti_eval(d: &DtiDescriptor, s: Complex64, tol: f64) -> Result<Complex64> {
    match d {
        DtiDescriptor::Elementary { a } => elementary_eval(*a, s, tol),
        DtiDescriptor::TensorProduct(l, r) => Ok(dti_eval(l, s, tol)? * dti_eval(r, s, tol)?),
        DtiDescriptor::ReciprocalPolynomial { roots, leading } => {
            let mut v = Complex64::new(1.0, 0.0) / leading;
            for a in roots {
                v *= elementary_eval(*a, s, tol)?;
            }
            Ok(v)
        }
        DtiDescriptor::BaseR { inner, r, rho } => {
            let arg = (-s * r.ln()).exp(); // r^{-s}
            Ok(rho.eval(s) * dti_eval(inner, arg, tol)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn elementary_matches_simple_pole() {
        let d = DtiDescriptor::elementary(c64(0.5, 0.0));
        let v = dti_eval(&d, c64(2.0, 0.0), 1e-10).unwrap();
        assert!((v - c64(2.0 / 3.0, 0.0)).norm() < 1e-8, "{v}");
        // complex a
        let d = DtiDescriptor::elementary(c64(0.2, 1.0));
        let s = c64(1.5, -0.7);
        let v = dti_eval(&d, s, 1e-10).unwrap();
        assert!((v - 1.0 / (s - c64(0.2, 1.0))).norm() < 1e-8);
    }

    #[test]
    fn elementary_diverges_at_or_below_abscissa() {
        let d = DtiDescriptor::elementary(c64(0.5, 0.0));
        assert!(dti_eval(&d, c64(0.5, 0.0), 1e-10).is_err());
        assert!(dti_eval(&d, c64(0.3, 2.0), 1e-10).is_err());
    }

    #[test]
    fn tensor_product_multiplies() {
        let d = DtiDescriptor::tensor(
            DtiDescriptor::elementary(c64(0.0, 0.0)),
            DtiDescriptor::elementary(c64(1.0, 0.0)),
        );
        let v = dti_eval(&d, c64(3.0, 0.0), 1e-10).unwrap();
        assert!((v - c64(1.0 / 6.0, 0.0)).norm() < 1e-8);
        assert!((d.abscissa_bound() - 1.0).abs() < 1e-15);
        assert!((d.tameness_bound() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reciprocal_polynomial_is_product_of_factors() {
        let d = DtiDescriptor::reciprocal_polynomial(
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            c64(1.0, 0.0),
        )
        .unwrap();
        for i in 0..10 {
            let s = c64(1.3 + 0.25 * i as f64, (i % 3) as f64 - 1.0);
            let v = dti_eval(&d, s, 1e-10).unwrap();
            let exact = 1.0 / (s * (s - 1.0));
            assert!((v - exact).norm() < 1e-8 * exact.norm().max(1.0), "s = {s}");
        }
        assert!((d.abscissa_bound() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn base_r_composes() {
        let inner = DtiDescriptor::elementary(c64(0.0, 0.0));
        let d = DtiDescriptor::base_r(inner, 0.5, EntireFactor::One).unwrap();
        // eval = 1/(2^s − 0) at inner argument r^{-s} = 2^s
        let s = c64(1.2, 0.4);
        let v = dti_eval(&d, s, 1e-10).unwrap();
        let exact = 1.0 / (s * 2f64.ln()).exp();
        assert!((v - exact).norm() < 1e-8);
        assert_eq!(d.abscissa_bound(), f64::INFINITY);
        assert!(DtiDescriptor::base_r(DtiDescriptor::elementary(c64(0.0, 0.0)), 1.5, EntireFactor::One).is_err());
    }
}

//! Core vector types, inner products, norms, and scalar-sequence
//! summability diagnostics.
//!
//! Two concrete ambient spaces are provided. [`CoeffVector`] is a finite
//! complex coefficient vector against the reference orthonormal basis
//! `{e_n}`. [`GaussPolyVector`] denotes `x -> p(x) exp(-a x^2)` through the
//! monomial coefficients of `p` and the decay rate `a > 0`; inner products on
//! that class are exact up to rounding by Gauss–Hermite quadrature because
//! every integrand is a polynomial against a Gaussian.

use std::sync::Arc;

use num_complex::Complex64;

use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};
use crate::specfun::QuadratureRule;

pub type C64 = Complex64;

// ---------------------------------------------------------------------------
// CoeffVector
// ---------------------------------------------------------------------------

/// Finite complex coefficient vector `sum_k c_k e_k` against an orthonormal
/// reference basis. Mismatched dimensions are zero-padded in every
/// operation; the families are naturally nested.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector {
    coeffs: Vec<C64>,
}

impl CoeffVector {
    pub fn new(coeffs: Vec<C64>) -> Self {
        CoeffVector { coeffs }
    }

    pub fn from_reals(coeffs: &[f64]) -> Self {
        CoeffVector {
            coeffs: coeffs.iter().map(|&c| C64::new(c, 0.0)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        CoeffVector {
            coeffs: vec![C64::new(0.0, 0.0); dim],
        }
    }

    /// The k-th reference basis vector (1-indexed), padded to `dim`.
    pub fn basis(k: usize, dim: usize) -> Self {
        assert!(k >= 1, "reference basis is 1-indexed");
        let mut v = Self::zero(dim.max(k));
        v.coeffs[k - 1] = C64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient at 1-indexed position k (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> C64 {
        assert!(k >= 1);
        self.coeffs
            .get(k - 1)
            .copied()
            .unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    /// Truncate or zero-pad to exactly `dim` coefficients.
    pub fn resized(&self, dim: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(dim, C64::new(0.0, 0.0));
        CoeffVector { coeffs: c }
    }
}

/// Sesquilinear form `sum_k conj(u_k) v_k`, linear in the second entry,
/// zero-padding the shorter vector.
pub fn inner_coeff(u: &CoeffVector, v: &CoeffVector) -> C64 {
    u.coeffs
        .iter()
        .zip(v.coeffs.iter())
        .map(|(a, b)| a.conj() * b)
        .sum()
}

// ---------------------------------------------------------------------------
// GaussPolyVector
// ---------------------------------------------------------------------------

/// The function `x -> p(x) exp(-rate x^2)` with `rate > 0`, stored by the
/// monomial coefficients of `p` (ascending). Coefficients are carried in
/// double-double internally; the public views round to `Complex64`.
#[derive(Clone, Debug)]
pub struct GaussPolyVector {
    pub(crate) poly: Vec<CDd>,
    rate: f64,
}

impl GaussPolyVector {
    pub fn new(poly: Vec<C64>, rate: f64) -> Self {
        assert!(rate > 0.0, "decay rate must be strictly positive");
        let poly = poly
            .into_iter()
            .map(|c| CDd::from_f64(c.re, c.im))
            .collect();
        let mut v = GaussPolyVector { poly, rate };
        v.trim();
        v
    }

    pub(crate) fn from_dd(poly: Vec<CDd>, rate: f64) -> Self {
        assert!(rate > 0.0, "decay rate must be strictly positive");
        let mut v = GaussPolyVector { poly, rate };
        v.trim();
        v
    }

    pub fn zero(rate: f64) -> Self {
        assert!(rate > 0.0);
        GaussPolyVector { poly: vec![], rate }
    }

    fn trim(&mut self) {
        while self.poly.last().is_some_and(|c| c.is_zero()) {
            self.poly.pop();
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn degree(&self) -> usize {
        self.poly.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn poly_coeffs(&self) -> Vec<C64> {
        self.poly
            .iter()
            .map(|c| C64::new(c.re.to_f64(), c.im.to_f64()))
            .collect()
    }

    /// Same function with the decay rate shifted by `delta` (the polynomial
    /// part is untouched). Callers guard the domain.
    pub(crate) fn with_rate_shift(&self, delta: f64) -> Self {
        GaussPolyVector {
            poly: self.poly.clone(),
            rate: self.rate + delta,
        }
    }

    /// Multiply the polynomial part by x.
    pub(crate) fn mul_x(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut poly = vec![CDd::ZERO; self.poly.len() + 1];
        poly[1..].copy_from_slice(&self.poly);
        GaussPolyVector {
            poly,
            rate: self.rate,
        }
    }

    /// Exact derivative of the full function:
    /// `(p exp(-a x^2))' = (p' - 2 a x p) exp(-a x^2)`.
    pub(crate) fn derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.poly.len();
        let mut poly = vec![CDd::ZERO; n + 1];
        for (k, c) in self.poly.iter().enumerate() {
            if k >= 1 {
                poly[k - 1] = poly[k - 1].add(c.mul_real(Dd::from_f64(k as f64)));
            }
            poly[k + 1] = poly[k + 1].sub(c.mul_real(Dd::from_f64(2.0 * self.rate)));
        }
        GaussPolyVector::from_dd(poly, self.rate)
    }

    fn scaled_dd(&self, c: CDd) -> Self {
        GaussPolyVector::from_dd(self.poly.iter().map(|p| p.mul(c)).collect(), self.rate)
    }
}

/// Horner evaluation at a double-double node, entirely in double-double.
/// Plain f64 is not an option even at low degrees: a unit-mass factor
/// evaluated with 1e-16 relative error floors every inner product at
/// ~1e-16 absolute, and the eigenrelation contracts multiply such errors
/// by member norms that reach 1e7.
fn eval_poly(poly: &[CDd], x: Dd) -> CDd {
    let mut acc = CDd::ZERO;
    for c in poly.iter().rev() {
        acc = CDd {
            re: acc.re.mul(x),
            im: acc.im.mul(x),
        }
        .add(*c);
    }
    acc
}

/// Quadrature order selection for [`inner_gauss`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QuadraturePolicy {
    /// Order from the exactness bound: `(deg f + deg g)/2 + 1`.
    #[default]
    Exact,
    /// Exactness bound plus the given number of extra points. The result
    /// must agree with `Exact` to rounding; used by invariance checks.
    ExactPlus(usize),
}

pub(crate) fn inner_gauss_dd(
    f: &GaussPolyVector,
    g: &GaussPolyVector,
    policy: QuadraturePolicy,
) -> Result<CDd> {
    if f.is_zero() || g.is_zero() {
        return Ok(CDd::ZERO);
    }
    let extra = match policy {
        QuadraturePolicy::Exact => 0,
        QuadraturePolicy::ExactPlus(k) => k,
    };
    let order = (f.degree() + g.degree()) / 2 + 1 + extra;
    let rule = crate::specfun::cached_rule(order)?;
    Ok(inner_gauss_with_rule(f, g, &rule))
}

pub(crate) fn inner_gauss_with_rule(
    f: &GaussPolyVector,
    g: &GaussPolyVector,
    rule: &QuadratureRule,
) -> CDd {
    if f.is_zero() || g.is_zero() {
        return CDd::ZERO;
    }
    // substitution u = x sqrt(a_f + a_g)
    let c = Dd::from_f64(f.rate).add(Dd::from_f64(g.rate));
    let scale = Dd::ONE.div(c.sqrt());
    let mut acc = CDd::ZERO;
    for (&u, &w) in rule.nodes_dd.iter().zip(&rule.weights_dd) {
        let x = u.mul(scale);
        let pf = eval_poly(&f.poly, x);
        let pg = eval_poly(&g.poly, x);
        acc = acc.add(pf.conj().mul(pg).mul_real(w));
    }
    acc.mul_real(scale)
}

/// Inner product `∫ conj(p_f)(x) p_g(x) exp(-(a_f+a_g) x^2) dx`, linear in
/// the second entry, by Gauss–Hermite quadrature at the exactness order.
pub fn inner_gauss(
    f: &GaussPolyVector,
    g: &GaussPolyVector,
    policy: QuadraturePolicy,
) -> Result<C64> {
    inner_gauss_dd(f, g, policy).map(|v| C64::new(v.re.to_f64(), v.im.to_f64()))
}

// ---------------------------------------------------------------------------
// Ambient-space abstraction
// ---------------------------------------------------------------------------

/// Common surface of the two concrete ambient spaces, enough to drive the
/// truncated series operators generically.
pub trait AmbientVector: Clone {
    fn inner(&self, other: &Self) -> C64;
    fn scaled(&self, c: C64) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_sub(&self, other: &Self) -> Result<Self>;
    fn is_zero_vector(&self) -> bool;

    fn norm_sq(&self) -> f64 {
        self.inner(self).re.max(0.0)
    }

    fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `|self - other|`, overridable where plain subtraction loses accuracy.
    fn distance(&self, other: &Self) -> f64 {
        match self.try_sub(other) {
            Ok(d) => d.norm(),
            Err(_) => f64::NAN,
        }
    }
}

impl AmbientVector for CoeffVector {
    fn inner(&self, other: &Self) -> C64 {
        inner_coeff(self, other)
    }

    fn scaled(&self, c: C64) -> Self {
        CoeffVector {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        let dim = self.dim().max(other.dim());
        let mut coeffs = self.resized(dim).coeffs;
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        Ok(CoeffVector { coeffs })
    }

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    fn is_zero_vector(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }
}

impl AmbientVector for GaussPolyVector {
    fn inner(&self, other: &Self) -> C64 {
        inner_gauss(self, other, QuadraturePolicy::Exact)
            .expect("exact-order quadrature construction")
    }

    fn scaled(&self, c: C64) -> Self {
        self.scaled_dd(CDd::from_f64(c.re, c.im))
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.rate != other.rate {
            return Err(Error::RateMismatch {
                left: self.rate,
                right: other.rate,
            });
        }
        let len = self.poly.len().max(other.poly.len());
        let mut poly = vec![CDd::ZERO; len];
        for (k, c) in self.poly.iter().enumerate() {
            poly[k] = poly[k].add(*c);
        }
        for (k, c) in other.poly.iter().enumerate() {
            poly[k] = poly[k].add(*c);
        }
        Ok(GaussPolyVector::from_dd(poly, self.rate))
    }

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    fn is_zero_vector(&self) -> bool {
        self.is_zero()
    }

    fn norm_sq(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        inner_gauss_dd(self, self, QuadraturePolicy::Exact)
            .expect("exact-order quadrature construction")
            .re
            .to_f64()
            .max(0.0)
    }

    /// Gram combination `sqrt(<u,u> - 2Re<u,v> + <v,v>)` accumulated in
    /// double-double, so residuals between different-rate vectors are not
    /// drowned by the O(1) cancellation of the three terms.
    fn distance(&self, other: &Self) -> f64 {
        if self.rate == other.rate || self.is_zero() || other.is_zero() {
            return match self.try_sub(other) {
                Ok(d) => d.norm(),
                Err(_) => f64::NAN,
            };
        }
        let uu = inner_gauss_dd(self, self, QuadraturePolicy::Exact)
            .expect("exact-order quadrature construction");
        let vv = inner_gauss_dd(other, other, QuadraturePolicy::Exact)
            .expect("exact-order quadrature construction");
        let uv = inner_gauss_dd(self, other, QuadraturePolicy::Exact)
            .expect("exact-order quadrature construction");
        let d = uu.re.add(vv.re).sub(uv.re.mul_f64(2.0));
        d.to_f64().max(0.0).sqrt()
    }
}

// ---------------------------------------------------------------------------
// Scalar sequences and summability
// ---------------------------------------------------------------------------

/// Deterministic generator `k -> alpha_k` for `k >= 1`, with a display
/// label. Position k means the weight attached to the k-th family member in
/// order, whatever the family's base index is.
#[derive(Clone)]
pub struct ScalarSequence {
    label: String,
    gen: Arc<dyn Fn(usize) -> C64 + Send + Sync>,
}

impl std::fmt::Debug for ScalarSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarSequence")
            .field("label", &self.label)
            .finish()
    }
}

impl ScalarSequence {
    pub fn new(
        label: impl Into<String>,
        gen: impl Fn(usize) -> C64 + Send + Sync + 'static,
    ) -> Self {
        ScalarSequence {
            label: label.into(),
            gen: Arc::new(gen),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Value at position `k >= 1`.
    pub fn value(&self, k: usize) -> C64 {
        assert!(k >= 1, "scalar sequences are 1-indexed");
        (self.gen)(k)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("const:{c}"), move |_| C64::new(c, 0.0))
    }

    /// `1/n`.
    pub fn inv_n() -> Self {
        Self::new("inv_n", |n| C64::new(1.0 / n as f64, 0.0))
    }

    /// `1/n^2`.
    pub fn inv_n_sq() -> Self {
        Self::new("inv_n2", |n| C64::new(1.0 / (n * n) as f64, 0.0))
    }

    /// `1/n^p`.
    pub fn inv_n_pow(p: f64) -> Self {
        Self::new(format!("pow:{p}"), move |n| {
            C64::new((n as f64).powf(-p), 0.0)
        })
    }

    /// `r^n` for `0 < r`.
    pub fn geometric(r: f64) -> Self {
        Self::new(format!("geom:{r}"), move |n| {
            C64::new(r.powi(n as i32), 0.0)
        })
    }

    /// Ladder-ready shift of `n - 1`: 0, 1, 2, ... (so position 1 maps to 0).
    pub fn n_minus_one() -> Self {
        Self::new("n_minus_1", |n| C64::new((n - 1) as f64, 0.0))
    }

    /// Finite list; zero beyond the end.
    pub fn from_values(label: impl Into<String>, values: Vec<C64>) -> Self {
        Self::new(label, move |n| {
            values
                .get(n - 1)
                .copied()
                .unwrap_or_else(|| C64::new(0.0, 0.0))
        })
    }
}

/// Partial-sum summability diagnostics for a scalar sequence at a fixed
/// truncation, covering the summability classes the domain conditions
/// distinguish.
#[derive(Clone, Debug)]
pub struct SummabilityReport {
    pub truncation: usize,
    /// `sum |a_n|` (l^1)
    pub sum_abs: PartialSum,
    /// `sum |a_n|^2` (l^2)
    pub sum_abs_sq: PartialSum,
    /// `sum n^2 |a_n|^2` (weighted l^2)
    pub sum_n_sq_abs_sq: PartialSum,
    /// `sum |a_n| sqrt(n)` (weighted l^1)
    pub sum_abs_sqrt_n: PartialSum,
}

/// One partial sum at `N` with its half-truncation value and a heuristic
/// bounded/growing flag from comparing the two.
#[derive(Clone, Copy, Debug)]
pub struct PartialSum {
    pub at_half: f64,
    pub at_full: f64,
    pub growing: bool,
}

impl PartialSum {
    fn classify(at_half: f64, at_full: f64) -> Self {
        // relative second-half increment; 1e-3 separates the bounded tails
        // the conditions care about from logarithmic-or-worse growth
        let growing = (at_full - at_half) > 1e-3 * (1.0 + at_full);
        PartialSum {
            at_half,
            at_full,
            growing,
        }
    }
}

/// Evaluate the four partial sums at truncation `N` (and `N/2` for the
/// growth flags).
pub fn seq_diagnostics(s: &ScalarSequence, n: usize) -> SummabilityReport {
    assert!(n >= 1);
    let half = (n / 2).max(1);
    let mut sums = [0.0_f64; 4];
    let mut at_half = [0.0_f64; 4];
    for k in 1..=n {
        let a = s.value(k).norm();
        sums[0] += a;
        sums[1] += a * a;
        sums[2] += (k * k) as f64 * a * a;
        sums[3] += a * (k as f64).sqrt();
        if k == half {
            at_half = sums;
        }
    }
    SummabilityReport {
        truncation: n,
        sum_abs: PartialSum::classify(at_half[0], sums[0]),
        sum_abs_sq: PartialSum::classify(at_half[1], sums[1]),
        sum_n_sq_abs_sq: PartialSum::classify(at_half[2], sums[2]),
        sum_abs_sqrt_n: PartialSum::classify(at_half[3], sums[3]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn inner_coeff_orthonormality_and_biorthogonal_probes() {
        let e1 = CoeffVector::basis(1, 3);
        assert_eq!(inner_coeff(&e1, &e1), c(1.0, 0.0));
        // <x_2, y_2> = 1 and <x_2, y_1> = 0 from the first example's pair
        let u = CoeffVector::new(vec![c(1.0, 0.0), c(0.5, 0.0)]);
        let v = CoeffVector::new(vec![c(0.0, 0.0), c(2.0, 0.0), c(-3.0, 0.0)]);
        assert_eq!(inner_coeff(&u, &v), c(1.0, 0.0));
        let w = CoeffVector::new(vec![c(1.0, 0.0), c(-2.0, 0.0)]);
        assert_eq!(inner_coeff(&u, &w), c(0.0, 0.0));
    }

    #[test]
    fn inner_coeff_is_conjugate_symmetric_and_zero_pads() {
        let u = CoeffVector::new(vec![c(1.0, 2.0)]);
        let v = CoeffVector::new(vec![c(0.5, -1.0), c(3.0, 0.0)]);
        let uv = inner_coeff(&u, &v);
        let vu = inner_coeff(&v, &u);
        assert_abs_diff_eq!(uv.re, vu.conj().re, epsilon = 1e-15);
        assert_abs_diff_eq!(uv.im, vu.conj().im, epsilon = 1e-15);
    }

    #[test]
    fn inner_gauss_normalized_gaussian() {
        // e_0: p = pi^(-1/4), rate 1/2
        let p = std::f64::consts::PI.powf(-0.25);
        let e0 = GaussPolyVector::new(vec![c(p, 0.0)], 0.5);
        let v = inner_gauss(&e0, &e0, QuadraturePolicy::Exact).unwrap();
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inner_gauss_x0_squared_norm_is_sqrt_2() {
        // oracle: ∫ exp(-x^2/2) dx / sqrt(pi) = sqrt(2) by direct Gaussian integral
        let p = std::f64::consts::PI.powf(-0.25);
        let x0 = GaussPolyVector::new(vec![c(p, 0.0)], 0.25);
        let v = inner_gauss(&x0, &x0, QuadraturePolicy::Exact).unwrap();
        assert_abs_diff_eq!(v.re, 2.0_f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn inner_gauss_degenerate_zero() {
        let z = GaussPolyVector::zero(0.5);
        let v = inner_gauss(&z, &z, QuadraturePolicy::Exact).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn inner_gauss_stable_under_order_raise() {
        let f = GaussPolyVector::new(vec![c(0.3, 0.1), c(0.0, 0.0), c(-1.2, 0.4)], 0.25);
        let g = GaussPolyVector::new(vec![c(1.0, -0.5), c(2.0, 0.0)], 0.75);
        let a = inner_gauss(&f, &g, QuadraturePolicy::Exact).unwrap();
        let b = inner_gauss(&f, &g, QuadraturePolicy::ExactPlus(1)).unwrap();
        let d = (a - b).norm();
        assert!(d <= 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn gauss_distance_across_rates_matches_same_rate_limit() {
        let p = std::f64::consts::PI.powf(-0.25);
        let u = GaussPolyVector::new(vec![c(p, 0.0)], 0.5);
        let v = u.clone();
        assert_abs_diff_eq!(u.distance(&v), 0.0, epsilon = 1e-15);
        // distance between e_0-like functions at different rates, against a
        // closed-form Gram evaluation
        let w = GaussPolyVector::new(vec![c(p, 0.0)], 0.75);
        let uu = 1.0;
        let ww = inner_gauss(&w, &w, QuadraturePolicy::Exact).unwrap().re;
        let uw = inner_gauss(&u, &w, QuadraturePolicy::Exact).unwrap().re;
        let expected = (uu + ww - 2.0 * uw).sqrt();
        assert_abs_diff_eq!(u.distance(&w), expected, epsilon = 1e-12);
    }

    #[test]
    fn derivative_rule_on_plain_gaussian() {
        // (exp(-a x^2))' = -2 a x exp(-a x^2)
        let g = GaussPolyVector::new(vec![c(1.0, 0.0)], 0.25);
        let d = g.derivative();
        let coeffs = d.poly_coeffs();
        assert_eq!(coeffs.len(), 2);
        assert_abs_diff_eq!(coeffs[0].re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(coeffs[1].re, -0.5, epsilon = 1e-15);
    }

    #[test]
    fn seq_diagnostics_examples() {
        // n^2 |1/n^2|^2 = 1/n^2: bounded
        let r = seq_diagnostics(&ScalarSequence::inv_n_sq(), 1000);
        assert!(!r.sum_n_sq_abs_sq.growing);
        assert_abs_diff_eq!(
            r.sum_n_sq_abs_sq.at_full,
            (1..=1000).map(|n| 1.0 / (n * n) as f64).sum::<f64>(),
            epsilon = 1e-12
        );
        // n^2 |1/n|^2 = N: growing
        let r = seq_diagnostics(&ScalarSequence::inv_n(), 1000);
        assert!(r.sum_n_sq_abs_sq.growing);
        assert_abs_diff_eq!(r.sum_n_sq_abs_sq.at_full, 1000.0, epsilon = 1e-9);
        // 2^-n sqrt(n): bounded
        let r = seq_diagnostics(&ScalarSequence::geometric(0.5), 64);
        assert!(!r.sum_abs_sqrt_n.growing);
    }

    #[test]
    fn summability_partial_sums_monotone() {
        let s = ScalarSequence::inv_n();
        let mut prev = 0.0;
        for n in [4, 8, 16, 64, 256] {
            let r = seq_diagnostics(&s, n);
            assert!(r.sum_abs.at_full >= prev);
            prev = r.sum_abs.at_full;
        }
    }
}

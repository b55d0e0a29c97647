//! Hermite and Legendre polynomials, Gauss–Hermite quadrature, and log-domain
//! magnitudes for quantities that grow like 3^(n/2).
//!
//! Quadrature rules are built Golub–Welsch style (eigendecomposition of the
//! symmetric Jacobi matrix of the Hermite recurrence) and then the nodes are
//! refined by two Newton steps in double-double arithmetic. The refinement is
//! what pushes inner products of degree-40 integrands from ~1e-15 down to
//! ~1e-28 absolute, which the eigenrelation contracts need.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::dd::Dd;
use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// pi as an unevaluated double-double sum.
pub(crate) const PI_DD: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};

/// Largest Hermite index for which 2^n * n! stays comfortably inside the
/// double-double product range. Beyond this the log-domain routines apply.
pub(crate) const MAX_MONOMIAL_DEGREE: usize = 128;

/// Physicists' Hermite polynomial `H_n`, monomial coefficients in ascending
/// order, via `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite_coeffs(n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![1.0];
    }
    if n == 1 {
        return vec![0.0, 2.0];
    }
    let mut prev = vec![1.0];
    let mut cur = vec![0.0, 2.0];
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2.0 * k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Raw `H_n` coefficients through the integer recurrence carried in
/// double-double (the multipliers 2 and 2k are exact, so the coefficients
/// are exact until they outgrow the 106-bit mantissa).
pub(crate) fn hermite_coeffs_dd(n: usize) -> Vec<Dd> {
    let mut prev = vec![Dd::ONE];
    let mut cur = vec![Dd::ZERO, Dd::from_f64(2.0)];
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let mut next = vec![Dd::ZERO; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c.mul_f64(2.0));
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] = next[i].sub(c.mul_f64(2.0 * k as f64));
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of the normalized polynomial `H_n / sqrt(2^n n!)` in
/// double-double precision. These stay O(1)-ish in magnitude for all
/// representable degrees, unlike the raw coefficients.
pub(crate) fn hermite_normalized_coeffs_dd(n: usize) -> Result<Vec<Dd>> {
    if n > MAX_MONOMIAL_DEGREE {
        return Err(Error::DegreeOutOfRange { degree: n });
    }
    let raw = hermite_coeffs_dd(n);
    let mut norm_sq = Dd::ONE;
    for k in 1..=n {
        norm_sq = norm_sq.mul_f64(2.0 * k as f64);
    }
    let inv_norm = Dd::ONE.div(norm_sq.sqrt());
    Ok(raw.into_iter().map(|c| c.mul(inv_norm)).collect())
}

/// Legendre polynomial `P_n(x)` by the three-term recurrence
/// `(n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}`.
pub fn legendre_eval(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `log(P_n(x) / P_{n-1}(x))` for `x > 1`, computed through the ratio
/// recurrence so it never overflows. For fixed `x > 1` this converges to
/// `log(x + sqrt(x^2 - 1))` as `n` grows.
pub fn legendre_growth_rate(n: usize, x: f64) -> f64 {
    debug_assert!(n >= 2 && x > 1.0);
    // r_k = P_k / P_{k-1};  r_{k+1} = ((2k+1) x - k / r_k) / (k+1)
    let mut r = x; // r_1
    for k in 1..n {
        r = ((2 * k + 1) as f64 * x - k as f64 / r) / (k + 1) as f64;
    }
    r.ln()
}

/// A positive-weight Gauss–Hermite rule for the weight `exp(-x^2)`.
///
/// An `order`-point rule integrates polynomials of degree `<= 2*order - 1`
/// exactly. Nodes are ascending and symmetric about zero.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    pub(crate) nodes_dd: Vec<Dd>,
    pub(crate) weights_dd: Vec<Dd>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrate `f` against `exp(-x^2)` over the real line.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Normalized-Hermite recurrence multipliers `(sqrt(2/(k+1)), sqrt(k/(k+1)))`
/// for k = 0..m-1, in double-double.
fn phi_multipliers(m: usize) -> Vec<(Dd, Dd)> {
    (0..m)
        .map(|k| {
            let kp1 = Dd::from_f64((k + 1) as f64);
            let a = Dd::from_f64(2.0).div(kp1).sqrt();
            let b = Dd::from_f64(k as f64).div(kp1).sqrt();
            (a, b)
        })
        .collect()
}

/// Value of `phi_n(t) = H_n(t)/sqrt(2^n n!)` and of `phi_{n-1}(t)` at a
/// double-double argument, via `phi_{k+1} = t sqrt(2/(k+1)) phi_k -
/// sqrt(k/(k+1)) phi_{k-1}`.
fn phi_pair_dd(n: usize, t: Dd, mults: &[(Dd, Dd)]) -> (Dd, Dd) {
    let mut pm1 = Dd::ZERO;
    let mut p = Dd::ONE;
    for &(a, b) in &mults[..n] {
        let next = t.mul(a).mul(p).sub(pm1.mul(b));
        pm1 = p;
        p = next;
    }
    (p, pm1)
}

/// Gauss–Hermite rule of the given order: Jacobi-matrix eigendecomposition
/// for globally reliable starting values, then two double-double Newton
/// steps per node and closed-form weights `sqrt(pi) / (m phi_{m-1}(x)^2)`.
pub fn gauss_hermite(m: usize) -> Result<QuadratureRule> {
    assert!(m >= 1, "quadrature order must be at least 1");
    let mut jacobi = DMatrix::<f64>::zeros(m, m);
    for i in 0..m - 1 {
        let b = ((i + 1) as f64 / 2.0).sqrt();
        jacobi[(i, i + 1)] = b;
        jacobi[(i + 1, i)] = b;
    }
    let eigen = jacobi
        .try_symmetric_eigen(f64::EPSILON, 50_000)
        .ok_or(Error::EigenFailure { dim: m })?;
    let mut seeds: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    seeds.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Enforce the exact symmetry of the rule before refining.
    for i in 0..m / 2 {
        let s = 0.5 * (seeds[i] - seeds[m - 1 - i]);
        seeds[i] = s;
        seeds[m - 1 - i] = -s;
    }
    if m % 2 == 1 {
        seeds[m / 2] = 0.0;
    }

    let mults = phi_multipliers(m);
    let sqrt_pi = PI_DD.sqrt();
    let sqrt_2m = Dd::from_f64(2.0 * m as f64).sqrt();
    let mut nodes_dd: Vec<Dd> = Vec::with_capacity(m);
    let mut weights_dd: Vec<Dd> = Vec::with_capacity(m);
    for (i, &seed) in seeds.iter().enumerate() {
        let mut x = Dd::from_f64(seed);
        if i >= m.div_ceil(2) {
            // mirror of an already-refined node
            let partner = nodes_dd[m - 1 - i];
            nodes_dd.push(partner.neg());
            weights_dd.push(weights_dd[m - 1 - i]);
            continue;
        }
        if !(m % 2 == 1 && i == m / 2) {
            for _ in 0..2 {
                let (p, pm1) = phi_pair_dd(m, x, &mults);
                let deriv = sqrt_2m.mul(pm1);
                x = x.sub(p.div(deriv));
            }
        }
        let (_, pm1) = phi_pair_dd(m, x, &mults);
        let w = sqrt_pi.div(pm1.mul(pm1).mul_f64(m as f64));
        nodes_dd.push(x);
        weights_dd.push(w);
    }
    Ok(QuadratureRule {
        order: m,
        nodes: nodes_dd.iter().map(|d| d.to_f64()).collect(),
        weights: weights_dd.iter().map(|d| d.to_f64()).collect(),
        nodes_dd,
        weights_dd,
    })
}

/// Shared per-order rule cache. Rules are immutable once built; the lock
/// only guards the map itself.
pub(crate) fn cached_rule(m: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&m) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(gauss_hermite(m)?);
    cache
        .lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// Signed magnitude kept as `sign * exp(log_abs)`, for quantities like
/// `|x_n|^2 ~ 3^(n/2)` that outgrow f64 long before their ratios do.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogMagnitude {
    sign: i8,
    log_abs: f64,
}

impl LogMagnitude {
    pub fn zero() -> Self {
        LogMagnitude {
            sign: 0,
            log_abs: f64::NEG_INFINITY,
        }
    }

    pub fn from_sign_ln(sign: i8, log_abs: f64) -> Self {
        if sign == 0 {
            Self::zero()
        } else {
            LogMagnitude {
                sign: sign.signum(),
                log_abs,
            }
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self::zero()
        } else {
            LogMagnitude {
                sign: if v > 0.0 { 1 } else { -1 },
                log_abs: v.abs().ln(),
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the absolute value; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.log_abs
    }

    /// Base-3 log of the absolute value.
    pub fn log3_abs(&self) -> f64 {
        self.log_abs / 3.0_f64.ln()
    }

    /// The represented value; may overflow to `±inf`.
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_abs.exp()
    }

    pub fn mul(&self, other: &LogMagnitude) -> LogMagnitude {
        LogMagnitude::from_sign_ln(self.sign * other.sign, self.log_abs + other.log_abs)
    }

    pub fn div(&self, other: &LogMagnitude) -> LogMagnitude {
        debug_assert!(other.sign != 0, "division by zero magnitude");
        LogMagnitude::from_sign_ln(self.sign * other.sign, self.log_abs - other.log_abs)
    }
}

/// `phi_n(t) = H_n(t)/sqrt(2^n n!)` as a log magnitude, by the scaled
/// recurrence with on-the-fly renormalization.
pub fn hermite_function_log(n: usize, t: f64) -> LogMagnitude {
    let mut pm1 = 0.0_f64;
    let mut p = 1.0_f64;
    let mut log_scale = 0.0_f64;
    for k in 0..n {
        let a = (2.0 / (k + 1) as f64).sqrt();
        let b = (k as f64 / (k + 1) as f64).sqrt();
        let next = t * a * p - b * pm1;
        pm1 = p;
        p = next;
        let mag = p.abs().max(pm1.abs());
        if mag > 1e100 {
            p /= mag;
            pm1 /= mag;
            log_scale += mag.ln();
        }
    }
    if p == 0.0 {
        LogMagnitude::zero()
    } else {
        LogMagnitude::from_sign_ln(if p > 0.0 { 1 } else { -1 }, p.abs().ln() + log_scale)
    }
}

/// Squared L^2 norm of `H_n(x) exp(-rate x^2) / sqrt(2^n n! sqrt(pi))` as a
/// log magnitude. Exact up to rounding for `rule.order() > n` after the
/// substitution `x = u / sqrt(2 rate)`; terms are combined by log-sum-exp.
pub fn hermite_gauss_norm_sq_log(n: usize, rate: f64, rule: &QuadratureRule) -> LogMagnitude {
    assert!(rate > 0.0, "decay rate must be positive");
    assert!(
        rule.order() > n,
        "rule order {} insufficient for degree {}",
        rule.order(),
        n
    );
    let scale = 1.0 / (2.0 * rate).sqrt();
    let mut logs: Vec<f64> = Vec::with_capacity(rule.order());
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let phi = hermite_function_log(n, u * scale);
        if phi.sign() == 0 {
            continue;
        }
        logs.push(w.ln() + 2.0 * phi.ln_abs());
    }
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (l - max).exp()).sum();
    // prefactor scale / sqrt(pi)
    let ln = max + sum.ln() + scale.ln() - 0.5 * std::f64::consts::PI.ln();
    LogMagnitude::from_sign_ln(1, ln)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hermite_base_cases() {
        assert_eq!(hermite_coeffs(0), vec![1.0]);
        assert_eq!(hermite_coeffs(1), vec![0.0, 2.0]);
        // one recurrence step from H_0, H_1
        assert_eq!(hermite_coeffs(2), vec![-2.0, 0.0, 4.0]);
        assert_eq!(hermite_coeffs(3), vec![0.0, -12.0, 0.0, 8.0]);
    }

    #[test]
    fn hermite_leading_coefficient_is_2_pow_n() {
        for n in 0..20 {
            let c = hermite_coeffs(n);
            assert_eq!(*c.last().unwrap(), 2.0_f64.powi(n as i32));
        }
    }

    #[test]
    fn hermite_satisfies_its_differential_equation() {
        // |H_n'' - 2x H_n' + 2n H_n| <= 1e-8 * max(1, |H_n(x)|). Exact
        // polynomial differentiation; double-double evaluation, since near a
        // root of H_n the bound is tighter than f64 Horner can deliver.
        fn deriv(c: &[Dd]) -> Vec<Dd> {
            c.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &v)| v.mul_f64(k as f64))
                .collect()
        }
        fn eval(c: &[Dd], x: Dd) -> Dd {
            c.iter().rev().fold(Dd::ZERO, |acc, &v| acc.mul(x).add(v))
        }
        for n in 0..=25 {
            let h = hermite_coeffs_dd(n);
            let dh = deriv(&h);
            let ddh = deriv(&dh);
            for i in 0..20 {
                let x = -4.0 + 8.0 * i as f64 / 19.0;
                let xd = Dd::from_f64(x);
                let value = eval(&h, xd);
                let res = eval(&ddh, xd)
                    .sub(eval(&dh, xd).mul_f64(2.0 * x))
                    .add(value.mul_f64(2.0 * n as f64))
                    .to_f64();
                assert!(
                    res.abs() <= 1e-8 * value.to_f64().abs().max(1.0),
                    "ODE residual {res} at n={n}, x={x}"
                );
            }
        }
    }

    #[test]
    fn normalized_coeffs_match_raw_for_small_n() {
        for n in 0..=12 {
            let raw = hermite_coeffs(n);
            let norm: f64 = (1..=n).map(|k| 2.0 * k as f64).product::<f64>().sqrt();
            let got = hermite_normalized_coeffs_dd(n).unwrap();
            for (g, r) in got.iter().zip(&raw) {
                assert_abs_diff_eq!(g.to_f64(), r / norm.max(1.0), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn normalized_coeffs_reject_out_of_range_degree() {
        assert!(hermite_normalized_coeffs_dd(MAX_MONOMIAL_DEGREE + 1).is_err());
    }

    #[test]
    fn legendre_values() {
        let x = 2.0 / 3.0_f64.sqrt();
        assert_eq!(legendre_eval(0, 0.37), 1.0);
        assert_abs_diff_eq!(legendre_eval(1, x), x, epsilon = 1e-15);
        assert_abs_diff_eq!(legendre_eval(2, x), 1.5, epsilon = 1e-14);
    }

    #[test]
    fn legendre_is_one_at_one() {
        for n in 0..=100 {
            assert_abs_diff_eq!(legendre_eval(n, 1.0), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn legendre_growth_approaches_asymptotic_ratio() {
        // x + sqrt(x^2-1) evaluates to sqrt(3) at x = 2/sqrt(3), and 2+sqrt(3) at x = 2
        let x = 2.0 / 3.0_f64.sqrt();
        let target = 3.0_f64.sqrt().ln();
        assert!((legendre_growth_rate(200, x) - target).abs() / target < 0.01);
        let target2 = (2.0 + 3.0_f64.sqrt()).ln();
        assert!((legendre_growth_rate(200, 2.0) - target2).abs() / target2 < 0.01);
        // exact small-n value log(P_2/P_1) at x = 2/sqrt(3)
        let expected = (1.5 / x).ln();
        assert_abs_diff_eq!(legendre_growth_rate(2, x), expected, epsilon = 1e-14);
    }

    #[test]
    fn one_point_rule() {
        let r = gauss_hermite(1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert_abs_diff_eq!(r.weights()[0], std::f64::consts::PI.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn two_point_rule_closed_form() {
        let r = gauss_hermite(2).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert_abs_diff_eq!(r.nodes()[0], -inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(r.nodes()[1], inv_sqrt2, epsilon = 1e-15);
        let half_sqrt_pi = std::f64::consts::PI.sqrt() / 2.0;
        assert_abs_diff_eq!(r.weights()[0], half_sqrt_pi, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights()[1], half_sqrt_pi, epsilon = 1e-15);
        // integrates 1 and x^2 exactly
        assert_abs_diff_eq!(
            r.integrate(|_| 1.0),
            std::f64::consts::PI.sqrt(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            r.integrate(|x| x * x),
            std::f64::consts::PI.sqrt() / 2.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn five_point_rule_integrates_x8() {
        let r = gauss_hermite(5).unwrap();
        let expected = 105.0 * std::f64::consts::PI.sqrt() / 16.0;
        let got = r.integrate(|x| x.powi(8));
        assert!((got - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn rule_invariants_hold_up_to_order_60() {
        for m in [1, 2, 3, 7, 16, 33, 60] {
            let r = gauss_hermite(m).unwrap();
            let sum_w: f64 = r.weights().iter().sum();
            let sqrt_pi = std::f64::consts::PI.sqrt();
            assert!((sum_w - sqrt_pi).abs() / sqrt_pi < 1e-13, "order {m}");
            for i in 1..m {
                assert!(r.nodes()[i] > r.nodes()[i - 1], "not increasing at {m}");
                assert!(
                    (r.nodes()[i] + r.nodes()[m - 1 - i]).abs() < 1e-14,
                    "asymmetric at order {m}"
                );
            }
            // even moments up to exactness degree: (2k-1)!! sqrt(pi) / 2^k
            let mut double_fact = 1.0;
            for k in 1..=(2 * m - 1) / 2 {
                double_fact *= (2 * k - 1) as f64;
                let expected = double_fact * sqrt_pi / 2.0_f64.powi(k as i32);
                let got = r.integrate(|x| x.powi(2 * k as i32));
                assert!(
                    (got - expected).abs() / expected < 1e-12,
                    "moment 2k={} order {m}: got {got}, want {expected}",
                    2 * k
                );
            }
        }
    }

    #[test]
    fn log_magnitude_product_is_log_sum() {
        let a = LogMagnitude::from_sign_ln(1, 250.0 * 3.0_f64.ln());
        let b = LogMagnitude::from_sign_ln(1, -120.0 * 3.0_f64.ln());
        let p = a.mul(&b);
        assert_abs_diff_eq!(p.ln_abs(), a.ln_abs() + b.ln_abs(), epsilon = 1e-12);
        assert_abs_diff_eq!(p.log3_abs(), 130.0, epsilon = 1e-10);
        let v = LogMagnitude::from_value(-2.5);
        assert_eq!(v.sign(), -1);
        assert_abs_diff_eq!(v.value(), -2.5, epsilon = 1e-15);
    }

    #[test]
    fn hermite_function_log_matches_direct_eval() {
        // phi_4(1.3) directly from raw coefficients
        let raw = hermite_coeffs(4);
        let norm = (2.0_f64.powi(4) * 24.0).sqrt();
        let direct = raw.iter().rev().fold(0.0, |acc, &c| acc * 1.3 + c) / norm;
        let lm = hermite_function_log(4, 1.3);
        assert_abs_diff_eq!(lm.value(), direct, epsilon = 1e-12);
    }

    #[test]
    fn norm_sq_log_reproduces_known_values() {
        let rule = gauss_hermite(64).unwrap();
        // reference basis members have unit norm at every index
        for n in [0_usize, 1, 5, 40] {
            let v = hermite_gauss_norm_sq_log(n, 0.5, &rule).value();
            assert!((v - 1.0).abs() < 1e-12, "|e_{n}|^2 = {v}");
        }
        // |x_0|^2 = sqrt(2), |x_1|^2 = 2 sqrt(2)  (Gaussian-moment oracle)
        let x0 = hermite_gauss_norm_sq_log(0, 0.25, &rule).value();
        assert_abs_diff_eq!(x0, 2.0_f64.sqrt(), epsilon = 1e-13);
        let x1 = hermite_gauss_norm_sq_log(1, 0.25, &rule).value();
        assert_abs_diff_eq!(x1, 2.0 * 2.0_f64.sqrt(), epsilon = 1e-13);
        // |y_0|^2 = sqrt(2/3), |y_1|^2 = (2/3) sqrt(2/3)
        let y0 = hermite_gauss_norm_sq_log(0, 0.75, &rule).value();
        assert_abs_diff_eq!(y0, (2.0_f64 / 3.0).sqrt(), epsilon = 1e-13);
        let y1 = hermite_gauss_norm_sq_log(1, 0.75, &rule).value();
        assert_abs_diff_eq!(y1, (2.0 / 3.0) * (2.0_f64 / 3.0).sqrt(), epsilon = 1e-13);
    }
}

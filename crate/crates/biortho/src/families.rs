//! The three example biorthogonal pairs, the reference orthonormal family,
//! the integer change-of-basis matrices of the second example, and the
//! multiplication/differential operators acting on the Gaussian-polynomial
//! class.
//!
//! Index bases follow the sources: examples 1 and 2 are indexed from n = 1,
//! example 3 from n = 0.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational};

use crate::dd::{CDd, Dd};
use crate::error::{Error, Result};
use crate::seqspace::{AmbientVector, CoeffVector, GaussPolyVector, C64};
use crate::specfun::{hermite_normalized_coeffs_dd, PI_DD};

/// Which family a generator produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Ex1X,
    Ex1Y,
    Ex2X,
    Ex2Y,
    Ex3X,
    Ex3Y,
    RefECoeff,
    RefEGauss,
}

impl FamilyKind {
    /// First valid member index.
    pub fn base_index(self) -> usize {
        match self {
            FamilyKind::Ex1X
            | FamilyKind::Ex1Y
            | FamilyKind::Ex2X
            | FamilyKind::Ex2Y
            | FamilyKind::RefECoeff => 1,
            FamilyKind::Ex3X | FamilyKind::Ex3Y | FamilyKind::RefEGauss => 0,
        }
    }
}

/// A lazily evaluated, memoizing family `n -> member vector`.
#[derive(Clone)]
pub struct SequenceFamily<V> {
    kind: FamilyKind,
    base: usize,
    gen: Arc<dyn Fn(usize) -> Result<V> + Send + Sync>,
    cache: Arc<Mutex<HashMap<usize, V>>>,
}

impl<V> std::fmt::Debug for SequenceFamily<V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SequenceFamily")
            .field("kind", &self.kind)
            .finish()
    }
}

impl<V: AmbientVector> SequenceFamily<V> {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn base_index(&self) -> usize {
        self.base
    }

    pub fn member(&self, n: usize) -> Result<V> {
        if n < self.base {
            return Err(Error::IndexBelowBase {
                index: n,
                base: self.base,
            });
        }
        if let Some(v) = self.cache.lock().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let v = (self.gen)(n)?;
        self.cache.lock().unwrap().insert(n, v.clone());
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// Coefficient-space members
// ---------------------------------------------------------------------------

fn pad(len: usize, dim_hint: usize) -> usize {
    len.max(dim_hint)
}

/// `x_n = sum_{k<=n} e_k / k` of the first example.
pub fn ex1_x_member(n: usize, dim_hint: usize) -> CoeffVector {
    assert!(n >= 1);
    let mut v = vec![C64::new(0.0, 0.0); pad(n, dim_hint)];
    for (k, slot) in v.iter_mut().take(n).enumerate() {
        *slot = C64::new(1.0 / (k + 1) as f64, 0.0);
    }
    CoeffVector::new(v)
}

/// `y_n = n e_n - (n+1) e_{n+1}` of the first example.
pub fn ex1_y_member(n: usize, dim_hint: usize) -> CoeffVector {
    assert!(n >= 1);
    let mut v = vec![C64::new(0.0, 0.0); pad(n + 1, dim_hint)];
    v[n - 1] = C64::new(n as f64, 0.0);
    v[n] = C64::new(-((n + 1) as f64), 0.0);
    CoeffVector::new(v)
}

/// `x_n = sum_{k<=n} (-1)^(n+k) e_k` of the second example.
pub fn ex2_x_member(n: usize, dim_hint: usize) -> CoeffVector {
    assert!(n >= 1);
    let mut v = vec![C64::new(0.0, 0.0); pad(n, dim_hint)];
    for (k, slot) in v.iter_mut().take(n).enumerate() {
        let sign = if (n + k + 1).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        *slot = C64::new(sign, 0.0);
    }
    CoeffVector::new(v)
}

/// `y_n = e_n + e_{n+1}` of the second example.
pub fn ex2_y_member(n: usize, dim_hint: usize) -> CoeffVector {
    assert!(n >= 1);
    let mut v = vec![C64::new(0.0, 0.0); pad(n + 1, dim_hint)];
    v[n - 1] = C64::new(1.0, 0.0);
    v[n] = C64::new(1.0, 0.0);
    CoeffVector::new(v)
}

/// Truncated `h = sum_{k<=N} e_k / k`, the completeness witness of the
/// first example. Its squared norm is `sum_{k<=N} 1/k^2 -> pi^2/6`.
pub fn h_vector(n: usize) -> CoeffVector {
    ex1_x_member(n, 0)
}

// ---------------------------------------------------------------------------
// Gaussian-polynomial members
// ---------------------------------------------------------------------------

fn hermite_gauss_member(n: usize, rate: f64) -> Result<GaussPolyVector> {
    // H_n(x) exp(-rate x^2) / sqrt(2^n n! sqrt(pi))
    let phi = hermite_normalized_coeffs_dd(n)?;
    let inv_pi_quarter = Dd::ONE.div(PI_DD.sqrt().sqrt());
    let poly = phi
        .into_iter()
        .map(|c| CDd {
            re: c.mul(inv_pi_quarter),
            im: Dd::ZERO,
        })
        .collect();
    Ok(GaussPolyVector::from_dd(poly, rate))
}

/// `x_n(x) = H_n(x) e^{-x^2/4} / sqrt(2^n n! sqrt(pi))` of the third example.
pub fn ex3_x_member(n: usize) -> Result<GaussPolyVector> {
    hermite_gauss_member(n, 0.25)
}

/// `y_n(x) = H_n(x) e^{-3x^2/4} / sqrt(2^n n! sqrt(pi))` of the third example.
pub fn ex3_y_member(n: usize) -> Result<GaussPolyVector> {
    hermite_gauss_member(n, 0.75)
}

/// `e_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi))`, the harmonic
/// oscillator eigenfunctions.
pub fn ref_e_gauss_member(n: usize) -> Result<GaussPolyVector> {
    hermite_gauss_member(n, 0.5)
}

// ---------------------------------------------------------------------------
// Family and pair constructors
// ---------------------------------------------------------------------------

/// A family member in whichever ambient space the kind lives in.
#[derive(Clone, Debug)]
pub enum Member {
    Coeff(CoeffVector),
    Gauss(GaussPolyVector),
}

/// Generator entry point over all kinds. `dim_hint` pads coefficient-space
/// members (they are built at least as long as their natural support).
pub fn family_member(kind: FamilyKind, n: usize, dim_hint: usize) -> Result<Member> {
    let base = kind.base_index();
    if n < base {
        return Err(Error::IndexBelowBase { index: n, base });
    }
    Ok(match kind {
        FamilyKind::Ex1X => Member::Coeff(ex1_x_member(n, dim_hint)),
        FamilyKind::Ex1Y => Member::Coeff(ex1_y_member(n, dim_hint)),
        FamilyKind::Ex2X => Member::Coeff(ex2_x_member(n, dim_hint)),
        FamilyKind::Ex2Y => Member::Coeff(ex2_y_member(n, dim_hint)),
        FamilyKind::RefECoeff => Member::Coeff(CoeffVector::basis(n, dim_hint)),
        FamilyKind::Ex3X => Member::Gauss(ex3_x_member(n)?),
        FamilyKind::Ex3Y => Member::Gauss(ex3_y_member(n)?),
        FamilyKind::RefEGauss => Member::Gauss(ref_e_gauss_member(n)?),
    })
}

fn coeff_family(kind: FamilyKind, dim_hint: usize) -> SequenceFamily<CoeffVector> {
    SequenceFamily {
        kind,
        base: kind.base_index(),
        gen: Arc::new(move |n| match family_member(kind, n, dim_hint)? {
            Member::Coeff(v) => Ok(v),
            Member::Gauss(_) => unreachable!("coefficient kind"),
        }),
        cache: Arc::new(Mutex::new(HashMap::new())),
    }
}

fn gauss_family(kind: FamilyKind) -> SequenceFamily<GaussPolyVector> {
    SequenceFamily {
        kind,
        base: kind.base_index(),
        gen: Arc::new(move |n| match family_member(kind, n, 0)? {
            Member::Gauss(v) => Ok(v),
            Member::Coeff(_) => unreachable!("gauss kind"),
        }),
        cache: Arc::new(Mutex::new(HashMap::new())),
    }
}

/// Finite linear combination `sum_i c_i * member(k_i)` of family members.
pub fn family_combination<V: AmbientVector>(
    family: &SequenceFamily<V>,
    combo: &[(usize, C64)],
) -> Result<V> {
    assert!(!combo.is_empty(), "empty combination");
    let mut acc = family.member(combo[0].0)?.scaled(combo[0].1);
    for &(k, c) in &combo[1..] {
        acc = acc.try_add(&family.member(k)?.scaled(c))?;
    }
    Ok(acc)
}

/// A biorthogonal pair `(F_x, F_y)` sharing a base index.
#[derive(Clone, Debug)]
pub struct BiorthPair<V> {
    pub label: &'static str,
    pub x: SequenceFamily<V>,
    pub y: SequenceFamily<V>,
}

impl<V: AmbientVector> BiorthPair<V> {
    pub fn base_index(&self) -> usize {
        self.x.base_index()
    }

    /// The mirror pair with the roles of the families exchanged.
    pub fn swapped(&self) -> Self {
        BiorthPair {
            label: self.label,
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }
}

pub fn ex1_pair(dim_hint: usize) -> BiorthPair<CoeffVector> {
    BiorthPair {
        label: "ex1",
        x: coeff_family(FamilyKind::Ex1X, dim_hint),
        y: coeff_family(FamilyKind::Ex1Y, dim_hint),
    }
}

pub fn ex2_pair(dim_hint: usize) -> BiorthPair<CoeffVector> {
    BiorthPair {
        label: "ex2",
        x: coeff_family(FamilyKind::Ex2X, dim_hint),
        y: coeff_family(FamilyKind::Ex2Y, dim_hint),
    }
}

pub fn ex3_pair() -> BiorthPair<GaussPolyVector> {
    BiorthPair {
        label: "ex3",
        x: gauss_family(FamilyKind::Ex3X),
        y: gauss_family(FamilyKind::Ex3Y),
    }
}

pub fn ref_e_coeff_family(dim_hint: usize) -> SequenceFamily<CoeffVector> {
    coeff_family(FamilyKind::RefECoeff, dim_hint)
}

pub fn ref_e_gauss_family() -> SequenceFamily<GaussPolyVector> {
    gauss_family(FamilyKind::RefEGauss)
}

// ---------------------------------------------------------------------------
// Exact-rational members (first and second examples)
// ---------------------------------------------------------------------------

/// Exact-arithmetic twins of the coefficient-space members, for the checks
/// whose content is "exactly zero" or "exactly one".
pub mod exact {
    use super::*;

    pub type Rational = BigRational;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn ex1_x(n: usize) -> Vec<Rational> {
        (1..=n as i64).map(|k| rat(1, k)).collect()
    }

    pub fn ex1_y(n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::default(); n + 1];
        v[n - 1] = rat(n as i64, 1);
        v[n] = rat(-(n as i64 + 1), 1);
        v
    }

    pub fn ex2_x(n: usize) -> Vec<Rational> {
        (1..=n)
            .map(|k| {
                if (n + k).is_multiple_of(2) {
                    rat(1, 1)
                } else {
                    rat(-1, 1)
                }
            })
            .collect()
    }

    pub fn ex2_y(n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::default(); n + 1];
        v[n - 1] = rat(1, 1);
        v[n] = rat(1, 1);
        v
    }

    pub fn h_vector(n: usize) -> Vec<Rational> {
        ex1_x(n)
    }

    /// Real symmetric pairing (all exact members are real). Zero factors
    /// are skipped; the members are sparse.
    pub fn inner(u: &[Rational], v: &[Rational]) -> Rational {
        use num::Zero;
        let mut acc = Rational::zero();
        for (a, b) in u.iter().zip(v.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn norm_sq(u: &[Rational]) -> Rational {
        inner(u, u)
    }
}

// ---------------------------------------------------------------------------
// Triangular expansion matrix (second example)
// ---------------------------------------------------------------------------

/// The integer upper-triangular matrix `T_M` relating basis coefficients to
/// x-expansion coefficients, `c = T_M alpha`, with `T[k][n] = (-1)^(n+k)` for
/// `n >= k`. Unit diagonal, determinant exactly 1.
#[derive(Clone, Debug)]
pub struct TriangularExpansionMatrix {
    dim: usize,
    det: i128,
}

/// Build `T_M` for the second example's x-family.
pub fn expansion_matrix(dim: usize) -> TriangularExpansionMatrix {
    assert!(dim >= 1);
    let mut det: i128 = 1;
    for k in 1..=dim {
        det *= TriangularExpansionMatrix::entry_at(k, k);
    }
    TriangularExpansionMatrix { dim, det }
}

impl TriangularExpansionMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exact integer determinant (product of the diagonal; the matrix is
    /// upper triangular).
    pub fn det(&self) -> i128 {
        self.det
    }

    fn entry_at(row: usize, col: usize) -> i128 {
        if col < row {
            0
        } else if (row + col).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// 1-indexed entry.
    pub fn entry(&self, row: usize, col: usize) -> i128 {
        assert!(row >= 1 && row <= self.dim && col >= 1 && col <= self.dim);
        Self::entry_at(row, col)
    }

    /// `c = T alpha` in exact arithmetic.
    pub fn mul_exact(&self, alpha: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(alpha.len(), self.dim);
        (1..=self.dim)
            .map(|k| {
                (k..=self.dim)
                    .map(|n| BigRational::from(BigInt::from(Self::entry_at(k, n))) * &alpha[n - 1])
                    .sum()
            })
            .collect()
    }

    /// `alpha = T^{-1} c` by exact back-substitution.
    pub fn solve_exact(&self, c: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(c.len(), self.dim);
        let mut alpha = vec![BigRational::default(); self.dim];
        for k in (1..=self.dim).rev() {
            let mut acc = c[k - 1].clone();
            for n in k + 1..=self.dim {
                acc -= BigRational::from(BigInt::from(Self::entry_at(k, n))) * &alpha[n - 1];
            }
            alpha[k - 1] = acc; // unit diagonal
        }
        alpha
    }

    /// `c = T alpha` in floating point.
    pub fn mul_c64(&self, alpha: &[C64]) -> Vec<C64> {
        assert_eq!(alpha.len(), self.dim);
        (1..=self.dim)
            .map(|k| {
                (k..=self.dim)
                    .map(|n| C64::new(Self::entry_at(k, n) as f64, 0.0) * alpha[n - 1])
                    .sum()
            })
            .collect()
    }

    /// `alpha = T^{-1} c` by floating-point back-substitution.
    pub fn solve_c64(&self, c: &[C64]) -> Vec<C64> {
        assert_eq!(c.len(), self.dim);
        let mut alpha = vec![C64::new(0.0, 0.0); self.dim];
        for k in (1..=self.dim).rev() {
            let mut acc = c[k - 1];
            for n in k + 1..=self.dim {
                acc -= C64::new(Self::entry_at(k, n) as f64, 0.0) * alpha[n - 1];
            }
            alpha[k - 1] = acc;
        }
        alpha
    }
}

// ---------------------------------------------------------------------------
// Operators on the Gaussian-polynomial class
// ---------------------------------------------------------------------------

/// The multiplication and differential operators of the third example.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussOperator {
    /// `H_1 = (1/2)[-d^2/dx^2 - x d/dx + (1/2)(3x^2/2 - 1)]`; `H_1 y_n = (n + 1/2) y_n`.
    H1,
    /// `H_2 = (1/2)[-d^2/dx^2 + x d/dx + (1/2)(3x^2/2 + 1)]`; `H_2 x_n = (n + 1/2) x_n`.
    H2,
    /// Harmonic oscillator `(1/2)(-d^2/dx^2 + x^2)`; `h e_n = (n + 1/2) e_n`.
    Hosc,
    /// Multiplication by `exp(-x^2/4)`: adds 1/4 to the decay rate.
    TMult,
    /// Multiplication by `exp(x^2/4)`: subtracts 1/4; defined only on
    /// vectors with rate above 1/4 (the image must stay in L^2). The full
    /// operator's domain also holds every compactly supported smooth
    /// function, but those are not representable in this class, so here
    /// the rate bound is the whole domain story.
    TMultInv,
}

/// Apply one of the Gaussian-class operators by exact polynomial calculus.
pub fn apply_gauss_operator(tag: GaussOperator, f: &GaussPolyVector) -> Result<GaussPolyVector> {
    match tag {
        GaussOperator::TMult => Ok(f.with_rate_shift(0.25)),
        GaussOperator::TMultInv => {
            if f.rate() <= 0.25 {
                return Err(Error::RateDomain { rate: f.rate() });
            }
            Ok(f.with_rate_shift(-0.25))
        }
        GaussOperator::Hosc => {
            let second = f.derivative().derivative();
            let x2f = f.mul_x().mul_x();
            Ok(x2f.try_sub(&second)?.scaled(C64::new(0.5, 0.0)))
        }
        GaussOperator::H1 | GaussOperator::H2 => {
            let first = f.derivative();
            let second = first.derivative();
            let x_first = first.mul_x();
            let x2f = f.mul_x().mul_x();
            // +- (1/2) x f' and constant term -+ 1/4 f distinguish H1 from H2
            let drift_sign = if tag == GaussOperator::H1 { -0.5 } else { 0.5 };
            let const_term = if tag == GaussOperator::H1 {
                -0.25
            } else {
                0.25
            };
            second
                .scaled(C64::new(-0.5, 0.0))
                .try_add(&x_first.scaled(C64::new(drift_sign, 0.0)))?
                .try_add(&x2f.scaled(C64::new(0.375, 0.0)))?
                .try_add(&f.scaled(C64::new(const_term, 0.0)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqspace::{inner_coeff, inner_gauss, QuadraturePolicy};
    use approx::assert_abs_diff_eq;
    use num::One;

    #[test]
    fn ex1_members_match_definitions() {
        // x_3 = e_1 + e_2/2 + e_3/3
        let x3 = ex1_x_member(3, 0);
        assert_eq!(x3.dim(), 3);
        assert_abs_diff_eq!(x3.coeff(1).re, 1.0);
        assert_abs_diff_eq!(x3.coeff(2).re, 0.5);
        assert_abs_diff_eq!(x3.coeff(3).re, 1.0 / 3.0);
        let y2 = ex1_y_member(2, 0);
        assert_abs_diff_eq!(y2.coeff(2).re, 2.0);
        assert_abs_diff_eq!(y2.coeff(3).re, -3.0);
    }

    #[test]
    fn ex2_members_match_definitions() {
        // y_2 = e_2 + e_3
        let y2 = ex2_y_member(2, 0);
        assert_abs_diff_eq!(y2.coeff(2).re, 1.0);
        assert_abs_diff_eq!(y2.coeff(3).re, 1.0);
        // x_3 = e_1 - e_2 + e_3 ... sign (-1)^(n+k)
        let x3 = ex2_x_member(3, 0);
        assert_abs_diff_eq!(x3.coeff(1).re, 1.0);
        assert_abs_diff_eq!(x3.coeff(2).re, -1.0);
        assert_abs_diff_eq!(x3.coeff(3).re, 1.0);
    }

    #[test]
    fn member_below_base_index_is_refused() {
        assert!(family_member(FamilyKind::Ex1X, 0, 4).is_err());
        assert!(family_member(FamilyKind::Ex3X, 0, 0).is_ok());
    }

    #[test]
    fn h_vector_norms() {
        let h3 = h_vector(3);
        assert_abs_diff_eq!(h3.norm_sq(), 49.0 / 36.0, epsilon = 1e-15);
        let h1 = h_vector(1);
        assert_eq!(h1.coeffs(), CoeffVector::basis(1, 1).coeffs());
    }

    #[test]
    fn coefficient_biorthogonality_small() {
        for (xf, yf) in [
            (
                ex1_x_member as fn(usize, usize) -> CoeffVector,
                ex1_y_member as fn(usize, usize) -> CoeffVector,
            ),
            (ex2_x_member, ex2_y_member),
        ] {
            for k in 1..=12 {
                for l in 1..=12 {
                    let v = inner_coeff(&xf(k, 0), &yf(l, 0));
                    let expected = if k == l { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(v.re, expected, epsilon = 1e-13);
                    assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn ex3_member_shapes() {
        let y0 = ex3_y_member(0).unwrap();
        assert_eq!(y0.degree(), 0);
        assert_abs_diff_eq!(y0.rate(), 0.75);
        assert_abs_diff_eq!(
            y0.poly_coeffs()[0].re,
            std::f64::consts::PI.powf(-0.25),
            epsilon = 1e-15
        );
        let x5 = ex3_x_member(5).unwrap();
        assert_eq!(x5.degree(), 5);
        assert_abs_diff_eq!(x5.rate(), 0.25);
    }

    #[test]
    fn ex3_biorthogonality_small() {
        for m in 0..=8 {
            for n in 0..=8 {
                let v = inner_gauss(
                    &ex3_x_member(m).unwrap(),
                    &ex3_y_member(n).unwrap(),
                    QuadraturePolicy::Exact,
                )
                .unwrap();
                let expected = if m == n { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(v.re, expected, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn expansion_matrix_examples() {
        for m in [1, 2, 8, 20] {
            let t = expansion_matrix(m);
            assert_eq!(t.det(), 1);
            for k in 1..=m {
                assert_eq!(t.entry(k, k), 1);
            }
        }
        let t = expansion_matrix(1);
        assert_eq!(t.entry(1, 1), 1);
    }

    #[test]
    fn expansion_matrix_round_trip_exact() {
        let m = 12;
        let t = expansion_matrix(m);
        let alpha: Vec<BigRational> = (0..m)
            .map(|k| BigRational::new(BigInt::from(3 * k as i64 - 7), BigInt::from(2)))
            .collect();
        let c = t.mul_exact(&alpha);
        let back = t.solve_exact(&c);
        assert_eq!(alpha, back);
        // and T * solve(c) == c
        let rt = t.mul_exact(&back);
        assert_eq!(rt, c);
    }

    #[test]
    fn expansion_solver_reproduces_x_member_unit() {
        // coordinates of x_3 solve to the unit vector at 3
        let m = 6;
        let t = expansion_matrix(m);
        let x3 = ex2_x_member(3, m);
        let c: Vec<C64> = (1..=m).map(|k| x3.coeff(k)).collect();
        let alpha = t.solve_c64(&c);
        for (k, a) in alpha.iter().enumerate() {
            let expected = if k == 2 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(a.re, expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn exact_members_agree_with_float() {
        let xf = ex1_x_member(5, 0);
        let xr = exact::ex1_x(5);
        for k in 1..=5 {
            let r = xr[k - 1].numer().to_string().parse::<f64>().unwrap()
                / xr[k - 1].denom().to_string().parse::<f64>().unwrap();
            assert_abs_diff_eq!(xf.coeff(k).re, r, epsilon = 1e-15);
        }
        assert!(exact::norm_sq(&exact::h_vector(2)) == BigRational::new(5.into(), 4.into()));
        let one: BigRational = One::one();
        assert_eq!(exact::inner(&exact::ex1_x(4), &exact::ex1_y(4)), one);
    }

    #[test]
    fn harmonic_oscillator_ground_state() {
        // h e_0 = (1/2) e_0
        let e0 = ref_e_gauss_member(0).unwrap();
        let he0 = apply_gauss_operator(GaussOperator::Hosc, &e0).unwrap();
        let expected = e0.scaled(C64::new(0.5, 0.0));
        assert!(he0.distance(&expected) <= 1e-14);
    }

    #[test]
    fn t_maps_reference_to_y() {
        // y_n = T e_n
        for n in [0, 1, 4] {
            let en = ref_e_gauss_member(n).unwrap();
            let t_en = apply_gauss_operator(GaussOperator::TMult, &en).unwrap();
            let yn = ex3_y_member(n).unwrap();
            assert!(t_en.distance(&yn) <= 1e-13);
        }
    }

    #[test]
    fn t_inverse_rate_arithmetic() {
        let y0 = ex3_y_member(0).unwrap();
        let once = apply_gauss_operator(GaussOperator::TMultInv, &y0).unwrap();
        assert_abs_diff_eq!(once.rate(), 0.5);
        let twice = apply_gauss_operator(GaussOperator::TMultInv, &once).unwrap();
        assert_abs_diff_eq!(twice.rate(), 0.25);
        // a third application would leave L^2
        assert!(matches!(
            apply_gauss_operator(GaussOperator::TMultInv, &twice),
            Err(Error::RateDomain { .. })
        ));
    }

    #[test]
    fn eigenrelations_at_small_index() {
        for n in 0..=6 {
            let yn = ex3_y_member(n).unwrap();
            let h1y = apply_gauss_operator(GaussOperator::H1, &yn).unwrap();
            let e = C64::new(n as f64 + 0.5, 0.0);
            assert!(
                h1y.distance(&yn.scaled(e)) <= 1e-12 * yn.norm(),
                "H1 eigenrelation fails at n={n}"
            );
            let xn = ex3_x_member(n).unwrap();
            let h2x = apply_gauss_operator(GaussOperator::H2, &xn).unwrap();
            assert!(
                h2x.distance(&xn.scaled(e)) <= 1e-12 * xn.norm(),
                "H2 eigenrelation fails at n={n}"
            );
        }
    }
}

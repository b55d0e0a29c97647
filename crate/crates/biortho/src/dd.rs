//! Double-double arithmetic: unevaluated sums `hi + lo` of two `f64`s giving
//! roughly 106 bits of mantissa. Used wherever plain `f64` cannot meet the
//! library's residual contracts: high-degree polynomial coefficients and
//! their evaluation at quadrature nodes, node refinement, and cancellation-
//! prone Gram combinations.
//!
//! The primitives are the classic error-free transformations (Dekker's
//! product split, Knuth's two-sum); no FMA is assumed.

/// Double-double real number. Invariant: `hi` carries the leading bits and
/// `|lo| <= ulp(hi)/2` after every renormalizing operation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p, e) = two_prod(self.hi, other);
        let e = e + self.lo * other;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    /// Square root by one double-double Newton step from the f64 seed.
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "sqrt of negative double-double");
        let s = Dd::from_f64(self.hi.sqrt());
        // s' = (s + x/s) / 2
        s.add(self.div(s)).mul_f64(0.5)
    }
}

/// Complex number with double-double real and imaginary parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> CDd {
        CDd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    #[inline]
    pub fn add(self, other: CDd) -> CDd {
        CDd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn sub(self, other: CDd) -> CDd {
        CDd {
            re: self.re.sub(other.re),
            im: self.im.sub(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: CDd) -> CDd {
        CDd {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    #[inline]
    pub fn mul_real(self, other: Dd) -> CDd {
        CDd {
            re: self.re.mul(other),
            im: self.im.mul(other),
        }
    }

    #[inline]
    pub fn conj(self) -> CDd {
        CDd {
            re: self.re,
            im: self.im.neg(),
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.re.hi == 0.0 && self.re.lo == 0.0 && self.im.hi == 0.0 && self.im.lo == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_is_error_free() {
        let a = 1.0;
        let b = 1e-20;
        let s = Dd::from_f64(a).add(Dd::from_f64(b));
        assert_eq!(s.hi, 1.0);
        assert_eq!(s.lo, 1e-20);
    }

    #[test]
    fn mul_recovers_low_bits() {
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; the 2^-60 term is invisible to f64
        let x = Dd::from_f64(1.0 + (0.5f64).powi(30));
        let sq = x.mul(x);
        let expected_lo = (0.5f64).powi(60);
        assert_eq!(sq.hi, 1.0 + (0.5f64).powi(29));
        assert!((sq.lo - expected_lo).abs() < 1e-33);
    }

    #[test]
    fn div_then_mul_round_trips() {
        let a = Dd {
            hi: std::f64::consts::PI,
            lo: 1.2246467991473532e-16,
        };
        let b = Dd::from_f64(3.0);
        let q = a.div(b);
        let back = q.mul(b);
        assert!(back.sub(a).to_f64().abs() < 1e-30);
    }

    #[test]
    fn sqrt_squares_back() {
        let x = Dd::from_f64(2.0);
        let r = x.sqrt();
        let back = r.mul(r);
        assert!(back.sub(x).to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_product_matches_f64_to_leading_order() {
        let a = CDd::from_f64(1.5, -2.5);
        let b = CDd::from_f64(0.25, 4.0);
        let p = a.mul(b);
        assert!((p.re.to_f64() - (1.5 * 0.25 - (-2.5) * 4.0)).abs() < 1e-15);
        assert!((p.im.to_f64() - (1.5 * 4.0 + (-2.5) * 0.25)).abs() < 1e-15);
    }
}

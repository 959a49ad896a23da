//! Fixed-precision big-float arithmetic used by the hull.

use astro_float::{BigFloat, RoundingMode, Sign as FloatSign};

/// Arithmetic at a fixed binary precision with round-to-nearest-even.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Arith {
    pub p: usize,
}

const RM: RoundingMode = RoundingMode::ToEven;

impl Arith {
    pub fn new(p: usize) -> Self {
        Arith { p }
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_u64(0, self.p)
    }

    pub fn float(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn int(&self, x: u64) -> BigFloat {
        BigFloat::from_u64(x, self.p)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn dot(&self, a: &[BigFloat], b: &[BigFloat]) -> BigFloat {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }

    /// `|a|` against `|b|`, decided by the sign of their difference.
    pub fn abs_cmp(&self, a: &BigFloat, b: &BigFloat) -> std::cmp::Ordering {
        let d = self.sub(&a.abs(), &b.abs());
        if d.is_zero() {
            std::cmp::Ordering::Equal
        } else if d.is_positive() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Less
        }
    }

    /// `1/√k`.
    pub fn inv_sqrt(&self, k: u64) -> BigFloat {
        let one = self.int(1);
        self.div(&one, &self.sqrt(&self.int(k)))
    }
}

/// Nearest-ish `f64` (truncated mantissa; relative error below `2⁻⁵²`).
pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((mantissa, _, sign, exponent, _)) => {
            let top = *mantissa.last().expect("nonzero mantissa");
            let v = (top as f64) * 2f64.powi(exponent - 64);
            if sign == FloatSign::Neg {
                -v
            } else {
                v
            }
        }
        None => f64::NAN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magnitude_comparison() {
        use std::cmp::Ordering::*;
        let a = Arith::new(256);
        let minus_one = a.sub(&a.int(1), &a.int(2));
        let eps = a.float(2f64.powi(-64));
        assert_eq!(a.abs_cmp(&minus_one, &eps), Greater);
        assert_eq!(a.abs_cmp(&eps, &minus_one), Less);
        assert_eq!(a.abs_cmp(&a.float(1e-25), &eps), Less);
        assert_eq!(a.abs_cmp(&minus_one, &a.int(1)), Equal);
        assert_eq!(a.abs_cmp(&a.zero(), &a.zero()), Equal);
    }

    #[test]
    fn f64_conversion_round_trips_representable_values() {
        let a = Arith::new(256);
        for v in [1.0, -0.5, 3.75, 1e-30, -123456.789, 2f64.powi(-64)] {
            assert_eq!(to_f64(&a.float(v)), v);
        }
        assert_eq!(to_f64(&a.zero()), 0.0);
    }

    #[test]
    fn inverse_square_roots_square_back() {
        let a = Arith::new(256);
        for k in 1..=10u64 {
            let r = a.inv_sqrt(k);
            let back = a.mul(&a.mul(&r, &r), &a.int(k));
            let err = a.sub(&back, &a.int(1));
            assert!(to_f64(&err).abs() < 2f64.powi(-240), "k={k}");
        }
    }
}

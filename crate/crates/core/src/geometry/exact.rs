//! Exact values of the form `q / √r` with `q` rational and `r` a positive
//! square-free integer.
//!
//! Every inner product this crate compares exactly has that shape: two
//! normalized subset vectors give `±|A ∩ B| / √(|A|·|B|)`, and a rational
//! vector against a subset vector gives `(Σ_{i∈A} x_i) / √|A|`.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, RoundingMode};
use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Sign, SignedVertex};
use crate::error::{arg, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    numerator: BigRational,
    radicand: u64,
}

impl ExactScalar {
    /// `numerator / √radicand`, canonicalized so that the radicand is
    /// square-free (and 1 for zero).
    pub fn new(numerator: BigRational, radicand: u64) -> Self {
        assert!(radicand >= 1, "radicand must be positive");
        if numerator.is_zero() {
            return Self::zero();
        }
        let (square_part, free) = split_square(radicand);
        ExactScalar {
            numerator: numerator / BigRational::from_integer(BigInt::from(square_part)),
            radicand: free,
        }
    }

    pub fn zero() -> Self {
        ExactScalar {
            numerator: BigRational::zero(),
            radicand: 1,
        }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 1)
    }

    pub fn from_ratio(num: i64, den: i64, radicand: u64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), radicand)
    }

    pub fn numerator(&self) -> &BigRational {
        &self.numerator
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.numerator.numer().sign() {
            BigSign::Minus => -1,
            BigSign::NoSign => 0,
            BigSign::Plus => 1,
        }
    }

    /// The exact square `q² / r`.
    pub fn square(&self) -> BigRational {
        &self.numerator * &self.numerator / BigRational::from_integer(BigInt::from(self.radicand))
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator.to_f64().unwrap_or(f64::NAN) / (self.radicand as f64).sqrt()
    }

    /// Value rounded to `precision` bits.
    pub fn to_bigfloat(&self, precision: usize) -> BigFloat {
        let rm = RoundingMode::ToEven;
        let p = precision;
        let num = bigint_to_float(self.numerator.numer(), p);
        let den = bigint_to_float(self.numerator.denom(), p);
        let root = BigFloat::from_u64(self.radicand, p).sqrt(p, rm);
        num.div(&den.mul(&root, p, rm), p, rm)
    }
}

fn bigint_to_float(x: &BigInt, p: usize) -> BigFloat {
    let rm = RoundingMode::ToEven;
    let (sign, digits) = x.to_u64_digits();
    let base = BigFloat::from_u64(u64::MAX, p).add(&BigFloat::from_u64(1, p), p, rm);
    let mut acc = BigFloat::from_u64(0, p);
    for d in digits.iter().rev() {
        acc = acc.mul(&base, p, rm).add(&BigFloat::from_u64(*d, p), p, rm);
    }
    if sign == BigSign::Minus {
        acc.neg()
    } else {
        acc
    }
}

/// `r = s² · f` with `f` square-free; returns `(s, f)`.
fn split_square(mut r: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= r {
        let mut e = 0;
        while r.is_multiple_of(p) {
            r /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (square, free * r)
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        // Same nonzero sign: compare q_a²·r_b with q_b²·r_a.
        let lhs = &self.numerator * &self.numerator * BigRational::from_integer(BigInt::from(other.radicand));
        let rhs = &other.numerator * &other.numerator * BigRational::from_integer(BigInt::from(self.radicand));
        if sa > 0 {
            lhs.cmp(&rhs)
        } else {
            rhs.cmp(&lhs)
        }
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Neg for ExactScalar {
    type Output = ExactScalar;

    fn neg(self) -> ExactScalar {
        ExactScalar {
            numerator: -self.numerator,
            radicand: self.radicand,
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.numerator)
        } else if self.numerator.is_integer() {
            write!(f, "{}/√{}", self.numerator, self.radicand)
        } else {
            write!(f, "({})/√{}", self.numerator, self.radicand)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `⟨u, v⟩ = ±|U ∩ V| / √(|U|·|V|)`.
pub fn inner_vertices(u: &SignedVertex, v: &SignedVertex) -> ExactScalar {
    let common = u.subset.intersection(v.subset).len() as i64;
    let sign = u.sign.factor() * v.sign.factor();
    let radicand = (u.subset.len() * v.subset.len()) as u64;
    ExactScalar::new(BigRational::from_integer(BigInt::from(sign * common)), radicand)
}

/// `⟨x, v⟩ = ±(Σ_{i∈A} x_i) / √|A|` for a rational vector `x` (coordinate
/// `i` at index `i − 1`).
pub fn inner_rational(x: &[BigRational], v: &SignedVertex) -> Result<ExactScalar> {
    if v.subset.max_element() > x.len() {
        return arg(format!("vector of length {} too short for {}", x.len(), v.subset));
    }
    let mut sum: BigRational = v.subset.elements().map(|i| &x[i - 1]).sum();
    if v.sign == Sign::Minus {
        sum = -sum;
    }
    Ok(ExactScalar::new(sum, v.subset.len() as u64))
}

/// `⟨x, A⟩` for the positive vertex of `a`.
pub fn support_value(x: &[BigRational], a: crate::subset::Subset) -> Result<ExactScalar> {
    inner_rational(x, &SignedVertex::positive(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Subset;
    use proptest::prelude::*;

    fn sv(v: &[usize], sign: Sign) -> SignedVertex {
        SignedVertex::new(Subset::from_elements(v.iter().copied()).unwrap(), sign)
    }

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn canonical_form_extracts_squares() {
        assert_eq!(ExactScalar::from_ratio(1, 1, 4), ExactScalar::from_ratio(1, 2, 1));
        assert_eq!(ExactScalar::from_ratio(3, 1, 8), ExactScalar::from_ratio(3, 2, 2));
        assert_eq!(ExactScalar::from_ratio(0, 1, 7), ExactScalar::zero());
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(1), (1, 1));
        assert_eq!(split_square(97), (1, 97));
    }

    #[test]
    fn inner_vertex_examples() {
        let p = Sign::Plus;
        assert_eq!(
            inner_vertices(&sv(&[1, 2], p), &sv(&[2, 3], p)),
            ExactScalar::from_ratio(1, 2, 1)
        );
        for a in [&[1][..], &[1, 2], &[2, 4, 5], &[1, 2, 3, 4, 5, 6, 7]] {
            assert_eq!(inner_vertices(&sv(a, p), &sv(a, p)), ExactScalar::one());
        }
        assert_eq!(
            inner_vertices(&sv(&[1], p), &sv(&[1], Sign::Minus)),
            ExactScalar::from_ratio(-1, 1, 1)
        );
    }

    #[test]
    fn inner_rational_examples() {
        let a = sv(&[1, 2], Sign::Plus);
        assert_eq!(
            inner_rational(&q(&[1, 2, 3]), &a).unwrap(),
            ExactScalar::from_ratio(3, 1, 2)
        );
        assert!(inner_rational(&q(&[0, 0, 0]), &a).unwrap().is_zero());
        let full = sv(&[1, 2, 3, 4], Sign::Plus);
        assert_eq!(
            inner_rational(&q(&[1, 1, 1, 1]), &full).unwrap(),
            ExactScalar::from_ratio(2, 1, 1)
        );
        assert!(inner_rational(&q(&[1]), &a).is_err());
    }

    #[test]
    fn ordering_examples() {
        // √2 > 1 > 1/√2 > 0 > −1/√3 > −1.
        let vals = [
            ExactScalar::from_ratio(2, 1, 2),
            ExactScalar::one(),
            ExactScalar::from_ratio(1, 1, 2),
            ExactScalar::zero(),
            ExactScalar::from_ratio(-1, 1, 3),
            ExactScalar::from_ratio(-1, 1, 1),
        ];
        for w in vals.windows(2) {
            assert!(w[0] > w[1], "{} > {}", w[0], w[1]);
        }
        assert_eq!(ExactScalar::from_ratio(3, 1, 2).to_string(), "3/√2");
        assert_eq!(ExactScalar::from_ratio(3, 4, 1).to_string(), "3/4");
    }

    proptest! {
        #[test]
        fn symmetry_and_antipodality(a in 1u64..256, b in 1u64..256) {
            let u = SignedVertex::positive(Subset::from_bits(a));
            let v = SignedVertex::positive(Subset::from_bits(b));
            prop_assert_eq!(inner_vertices(&u, &v), inner_vertices(&v, &u));
            prop_assert_eq!(inner_vertices(&u, &v.opposite()), -inner_vertices(&u, &v));
        }

        #[test]
        fn order_agrees_with_high_precision(
            n1 in -1000i64..1000, d1 in 1i64..1000, r1 in 1u64..200,
            n2 in -1000i64..1000, d2 in 1i64..1000, r2 in 1u64..200,
        ) {
            let x = ExactScalar::from_ratio(n1, d1, r1);
            let y = ExactScalar::from_ratio(n2, d2, r2);
            let (fx, fy) = (x.to_bigfloat(256), y.to_bigfloat(256));
            let diff = crate::geometry::real::Arith::new(256).sub(&fx, &fy);
            let float_cmp = if diff.is_zero() { 0 } else if diff.is_positive() { 1 } else { -1 };
            let exact = x.cmp(&y);
            prop_assert_eq!(exact == Ordering::Equal, float_cmp == 0);
            if float_cmp != 0 {
                prop_assert_eq!(exact, if float_cmp > 0 { Ordering::Greater } else { Ordering::Less });
            }
        }
    }
}

//! Vertices that beat a supporting value, as used to show that two
//! orthogonal vertices never share a facet.
//!
//! Given disjoint members `A`, `B` and a nonnegative direction `x` with
//! `⟨A, x⟩ = ⟨B, x⟩`, some member `C` has `⟨C, x⟩ > ⟨A, x⟩`, so no facet with
//! outer normal `x` contains both `A` and `B`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exact::{support_value, ExactScalar};
use crate::error::{arg, Error, Result};
use crate::family::{exchange_witness, ExchangeCase, SubsetFamily};
use crate::subset::Subset;

/// Member `C` with `⟨C, x⟩ > ⟨A, x⟩ = ⟨B, x⟩`, found constructively:
///
/// 1. if `⟨A, x⟩ = 0`, the singleton `{k}` of the first `k` with `x_k > 0`;
/// 2. otherwise take the first exchange witness `(i, j)` for `(A, B)` and
///    orient it as `P ⊔ q ∈ V`, `Q ⊔ p ∖ q ∈ V` with `p ∈ P`, `q ∈ Q`;
///    if `x_p > x_q` then `C = Q ⊔ p ∖ q`;
/// 3. otherwise the better of `P ∖ {argmin_P x}` (when `|P| > 1`) and
///    `P ⊔ q`. With `g(β) = x_min·β + (Σ_P (x_i − x_min))/β`, the support
///    values of these sets and of `P` are `g` at `√(|P|−1)`, `√(|P|+1)`
///    (a lower bound) and `√|P|`; `g` is strictly convex or linear and
///    increasing, so one of them exceeds `g(√|P|)`.
///
/// The result is validated with exact arithmetic.
pub fn smaller_support_witness(a: Subset, b: Subset, x: &[BigRational], v: &SubsetFamily) -> Result<Subset> {
    if !v.contains(a) || !v.contains(b) {
        return arg(format!("{a} and {b} must both be members"));
    }
    if !a.is_disjoint(b) {
        return arg(format!("{a} and {b} are not disjoint"));
    }
    if x.len() != v.n() {
        return arg(format!("direction has {} coordinates, expected {}", x.len(), v.n()));
    }
    if x.iter().any(|xi| xi.is_negative()) {
        return arg("direction has a negative coordinate");
    }
    if x.iter().all(|xi| xi.is_zero()) {
        return arg("direction is zero");
    }
    let level = support_value(x, a)?;
    if level != support_value(x, b)? {
        return arg(format!("⟨{a}, x⟩ and ⟨{b}, x⟩ differ"));
    }

    let c = constructive(a, b, x, v, &level)?;
    let value = support_value(x, c)?;
    if !v.contains(c) || value <= level {
        return Err(Error::Internal(format!(
            "witness {c} for ({a}, {b}) fails validation: ⟨C, x⟩ = {value}, level {level}"
        )));
    }
    Ok(c)
}

fn constructive(a: Subset, b: Subset, x: &[BigRational], v: &SubsetFamily, level: &ExactScalar) -> Result<Subset> {
    let coord = |i: usize| &x[i - 1];
    if level.is_zero() {
        let k = (1..=v.n()).find(|&k| coord(k).is_positive()).expect("x is nonzero");
        return Ok(Subset::singleton(k));
    }
    let w = exchange_witness(v, a, b).ok_or_else(|| {
        Error::Internal(format!(
            "({a}, {b}) has no exchange witness; the family violates the exchange condition"
        ))
    })?;
    let (p_set, q_set, p, q) = match w.case {
        ExchangeCase::B | ExchangeCase::Both => (a, b, w.i, w.j),
        ExchangeCase::A => (b, a, w.j, w.i),
    };
    if coord(p) > coord(q) {
        return Ok(q_set.with(p).without(q));
    }
    let mut best: Option<(Subset, ExactScalar)> = None;
    let mut consider = |c: Subset| -> Result<()> {
        if !v.contains(c) {
            return Ok(());
        }
        let value = support_value(x, c)?;
        if best.as_ref().is_none_or(|(_, b)| value > *b) {
            best = Some((c, value));
        }
        Ok(())
    };
    consider(p_set.with(q))?;
    if p_set.len() > 1 {
        let argmin = p_set
            .elements()
            .min_by(|&i, &j| coord(i).cmp(coord(j)).then(i.cmp(&j)))
            .expect("nonempty");
        consider(p_set.without(argmin))?;
    }
    best.map(|(c, _)| c)
        .ok_or_else(|| Error::Internal(format!("no candidate witness for ({a}, {b}) is a member")))
}

/// Member with the largest `⟨C, x⟩`, if that value exceeds `⟨A, x⟩`; ties
/// resolve to the canonically first member.
pub fn exhaustive_support_witness(a: Subset, x: &[BigRational], v: &SubsetFamily) -> Result<Option<Subset>> {
    let level = support_value(x, a)?;
    if v.members().iter().any(|c| c.max_element() > x.len()) {
        return arg(format!("direction has {} coordinates, too few for the family", x.len()));
    }
    // A positive common multiple of the denominators leaves the order of the
    // values unchanged; each value becomes `sum / √|C|` with an integer sum.
    let scale = x.iter().fold(BigInt::one(), |acc, xi| acc.lcm(xi.denom()));
    let scaled: Vec<BigInt> = x.iter().map(|xi| (xi * &scale).to_integer()).collect();
    let mut best: Option<(Subset, BigInt)> = None;
    for &c in v.members() {
        let sum: BigInt = c.elements().map(|i| &scaled[i - 1]).sum();
        if best.as_ref().is_none_or(|(b, bs)| beats(&sum, c.len(), bs, b.len())) {
            best = Some((c, sum));
        }
    }
    Ok(best
        .map(|(c, _)| (c, support_value(x, c).expect("coordinates checked")))
        .filter(|(_, value)| *value > level)
        .map(|(c, _)| c))
}

/// `p / √r > q / √s` for integers `p`, `q`.
fn beats(p: &BigInt, r: usize, q: &BigInt, s: usize) -> bool {
    let (sp, sq) = (p.sign(), q.sign());
    if sp != sq {
        return sp > sq;
    }
    let lhs = p * p * BigInt::from(s);
    let rhs = q * q * BigInt::from(r);
    match sp {
        Sign::Plus => lhs > rhs,
        Sign::Minus => lhs < rhs,
        Sign::NoSign => false,
    }
}

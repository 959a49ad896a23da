//! Sizes of grouped families against the closed-form bound and the
//! single-group baseline.

use num_bigint::BigUint;
use rayon::prelude::*;
use rpforge_core::family::{
    build_grouped_family, default_k, grouped_count_for_sizes, make_partition, partition_sizes, size_bound,
};
use serde::{Serialize, Serializer};

use crate::error::{CliError, Result};

/// Rows up to this `n` are counted by building the family.
pub const ENUMERATION_MAX_N: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KPolicy {
    /// `k = ⌈√n⌉`.
    SquareRoot,
    /// `k = min(k, n)`.
    Fixed(usize),
}

impl KPolicy {
    pub fn k(self, n: usize) -> usize {
        match self {
            KPolicy::SquareRoot => default_k(n),
            KPolicy::Fixed(k) => k.min(n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Enumerated,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    #[serde(serialize_with = "decimal")]
    pub size: BigUint,
    #[serde(serialize_with = "decimal")]
    pub bound: BigUint,
    #[serde(serialize_with = "decimal")]
    pub baseline: BigUint,
    /// `ln|V| / (√n · ln n)`; undefined at `n = 1`.
    pub ratio: Option<f64>,
    pub method: CountMethod,
}

/// Numbers that fit in `u64` as JSON numbers, larger ones as strings.
pub(crate) fn decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(x) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_string().parse::<f64>().expect("decimal digits").ln();
    }
    let shift = bits - 64;
    let top: u64 = u64::try_from(x >> shift).expect("64 significant bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn bound_row(n: usize, policy: KPolicy) -> Result<BoundRow> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let k = policy.k(n);
    if k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let sizes = partition_sizes(n, k);
    let s = sizes[0];
    let closed = grouped_count_for_sizes(&sizes);
    let (size, method) = if n <= ENUMERATION_MAX_N {
        let p = make_partition(n, k).map_err(|e| CliError::Internal(e.to_string()))?;
        let counted = BigUint::from(build_grouped_family(&p).len());
        if counted != closed {
            return Err(CliError::Internal(format!(
                "n = {n}, k = {k}: enumerated {counted} members but the closed form gives {closed}"
            )));
        }
        (counted, CountMethod::Enumerated)
    } else {
        (closed, CountMethod::ClosedForm)
    };
    let ratio = (n >= 2).then(|| ln_big(&size) / ((n as f64).sqrt() * (n as f64).ln()));
    Ok(BoundRow {
        n,
        k,
        s,
        bound: size_bound(k, s),
        baseline: (BigUint::from(1u8) << n) - 1u8,
        size,
        ratio,
        method,
    })
}

/// Rows for `n = 1..=n_max`, with `|V| < bound`, `|V| ≤ baseline` and
/// monotonicity of `|V|` in `n` checked.
pub fn bound_table(n_max: usize, policy: KPolicy) -> Result<Vec<BoundRow>> {
    if n_max == 0 {
        return Err(CliError::Usage("--n-max must be at least 1".into()));
    }
    if let KPolicy::Fixed(0) = policy {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| bound_row(n, policy))
        .collect::<Result<Vec<_>>>()?;
    for r in &rows {
        if r.size >= r.bound || r.size > r.baseline {
            return Err(CliError::Internal(format!(
                "n = {}: |V| = {} against bound {} and baseline {}",
                r.n, r.size, r.bound, r.baseline
            )));
        }
    }
    if let Some(w) = rows.windows(2).find(|w| w[1].size < w[0].size) {
        return Err(CliError::Internal(format!(
            "|V| decreases from n = {} to n = {}",
            w[0].n, w[1].n
        )));
    }
    Ok(rows)
}

/// Exact below 10^24, otherwise `d.ddde±x`.
pub fn short(x: &BigUint) -> String {
    let digits = x.to_string();
    if digits.len() <= 24 {
        return digits;
    }
    format!("{}.{}e{}", &digits[..1], &digits[1..4], digits.len() - 1)
}

pub fn render_text(rows: &[BoundRow]) -> String {
    let mut out = format!(
        "{:>6} {:>4} {:>4} {:>24} {:>24} {:>24} {:>8}\n",
        "n", "k", "s", "|V|", "bound", "2^n-1", "ratio"
    );
    for r in rows {
        let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.4}"));
        out += &format!(
            "{:>6} {:>4} {:>4} {:>24} {:>24} {:>24} {:>8}\n",
            r.n,
            r.k,
            r.s,
            short(&r.size),
            short(&r.bound),
            short(&r.baseline),
            ratio
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let r1 = bound_row(1, KPolicy::SquareRoot).unwrap();
        assert_eq!(
            (r1.size.clone(), r1.baseline.clone(), r1.ratio),
            (1u8.into(), 1u8.into(), None)
        );
        let r4 = bound_row(4, KPolicy::SquareRoot).unwrap();
        assert_eq!((r4.k, r4.s), (2, 2));
        assert_eq!(r4.size, 14u8.into());
        assert_eq!(r4.bound, 24u8.into());
        assert_eq!(r4.baseline, 15u8.into());
        assert_eq!(r4.method, CountMethod::Enumerated);
    }

    #[test]
    fn hundred_uses_the_closed_form() {
        let r = bound_row(100, KPolicy::SquareRoot).unwrap();
        assert_eq!((r.k, r.s, r.method), (10, 10, CountMethod::ClosedForm));
        assert!(r.size < r.bound);
        assert!(r.size.bits() < 70);
        let ratio = r.ratio.unwrap();
        assert!((0.4..1.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn logarithms() {
        assert!((ln_big(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-12);
        let big = BigUint::from(3u8).pow(2000);
        assert!((ln_big(&big) / (2000.0 * 3f64.ln()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixed_policy_and_errors() {
        let rows = bound_table(8, KPolicy::Fixed(3)).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.k).collect::<Vec<_>>(),
            vec![1, 2, 3, 3, 3, 3, 3, 3]
        );
        assert!(bound_table(0, KPolicy::SquareRoot).is_err());
        assert!(bound_table(3, KPolicy::Fixed(0)).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(short(&BigUint::from(24u8)), "24");
        assert_eq!(short(&(BigUint::from(1u8) << 100)), "1.267e30");
        let text = render_text(&bound_table(2, KPolicy::SquareRoot).unwrap());
        assert_eq!(text.lines().count(), 3);
        let json = serde_json::to_value(bound_row(100, KPolicy::SquareRoot).unwrap()).unwrap();
        assert!(json["baseline"].is_string());
        assert_eq!(json["method"], "closed_form");
    }
}

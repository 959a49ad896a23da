use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use rpforge_core::family::{default_k, grouped_count_for_sizes, make_partition, partition_sizes};
use rpforge_core::geometry::{DEFAULT_EPS, DEFAULT_PRECISION};
use rpforge_core::subset::MAX_N;
use rpforge_core::{GroupPartition, HullOptions};
use serde::Serialize;

use crate::error::{CliError, Result};

/// Largest ground set the hull-based stages accept.
pub const HULL_LIMIT: usize = 7;

/// Generated families larger than this are refused.
pub const FAMILY_LIMIT: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Family,
    Verify,
    Hull,
    Triangulate,
    Quotient,
    Homology,
    All,
}

impl Stage {
    /// Exit status when this stage fails.
    pub fn exit_code(self) -> i32 {
        match self {
            Stage::Family => 10,
            Stage::Verify => 11,
            Stage::Hull => 12,
            Stage::Triangulate => 13,
            Stage::Quotient => 14,
            Stage::Homology | Stage::All => 15,
        }
    }

    pub fn needs_hull(self) -> bool {
        self >= Stage::Hull
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Where the subset family comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    /// Grouped family over `{1,…,n}`; `k` defaults to `⌈√n⌉`, and
    /// `single_group` means `k = 1` (every nonempty subset).
    Generated {
        n: usize,
        k: Option<usize>,
        single_group: bool,
    },
    File(PathBuf),
}

impl FamilySpec {
    /// Resolves the partition of a generated family, rejecting sizes the
    /// tools cannot hold.
    pub fn partition(&self) -> Result<Option<GroupPartition>> {
        let FamilySpec::Generated { n, k, single_group } = *self else {
            return Ok(None);
        };
        if n == 0 || n > MAX_N {
            return Err(CliError::Usage(format!("--n must lie in 1..={MAX_N}, got {n}")));
        }
        let k = match (k, single_group) {
            (Some(k), true) if k != 1 => {
                return Err(CliError::Usage(format!("--single-group conflicts with --k {k}")));
            }
            (_, true) => 1,
            (Some(k), false) => k,
            (None, false) => default_k(n),
        };
        if k == 0 || k > n {
            return Err(CliError::Usage(format!("--k must lie in 1..={n}, got {k}")));
        }
        let count = grouped_count_for_sizes(&partition_sizes(n, k));
        if count > FAMILY_LIMIT.into() {
            return Err(CliError::Usage(format!(
                "family for n = {n}, k = {k} has {count} members, above the limit of {FAMILY_LIMIT}"
            )));
        }
        make_partition(n, k)
            .map(Some)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub family: FamilySpec,
    pub precision: usize,
    pub eps: f64,
    pub out: Option<PathBuf>,
    /// Last stage to run.
    pub stage: Stage,
}

impl PipelineConfig {
    pub fn new(family: FamilySpec, stage: Stage) -> Self {
        PipelineConfig {
            family,
            precision: DEFAULT_PRECISION,
            eps: DEFAULT_EPS,
            out: None,
            stage,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 64 {
            return Err(CliError::Usage(format!(
                "--precision must be at least 64, got {}",
                self.precision
            )));
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(CliError::Usage(format!("--eps must be positive, got {}", self.eps)));
        }
        Ok(())
    }

    pub fn hull_options(&self) -> HullOptions {
        HullOptions {
            precision: self.precision,
            eps: self.eps,
        }
    }
}

/// Accepts `2^-64`, `1e-20` or a plain decimal.
pub fn parse_eps(s: &str) -> std::result::Result<f64, String> {
    let value = match s.split_once('^') {
        Some((base, exp)) => {
            let base: f64 = base.trim().parse().map_err(|_| format!("bad base in {s:?}"))?;
            let exp: i32 = exp.trim().parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            base.powi(exp)
        }
        None => s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("eps must be a positive finite number, got {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generated(n: usize, k: Option<usize>, single_group: bool) -> FamilySpec {
        FamilySpec::Generated { n, k, single_group }
    }

    #[test]
    fn eps_forms() {
        assert_eq!(parse_eps("2^-64"), Ok(2f64.powi(-64)));
        assert_eq!(parse_eps("1e-20"), Ok(1e-20));
        assert!(parse_eps("0").is_err());
        assert!(parse_eps("2^x").is_err());
    }

    #[test]
    fn partition_resolution() {
        assert_eq!(generated(4, None, false).partition().unwrap().unwrap().k(), 2);
        assert_eq!(generated(10, None, false).partition().unwrap().unwrap().k(), 4);
        assert_eq!(generated(3, None, true).partition().unwrap().unwrap().k(), 1);
        assert_eq!(generated(3, Some(1), true).partition().unwrap().unwrap().k(), 1);
        for bad in [
            generated(0, None, false),
            generated(3, Some(4), false),
            generated(3, Some(2), true),
        ] {
            assert!(matches!(bad.partition(), Err(CliError::Usage(_))), "{bad:?}");
        }
        // 2^40 − 1 members.
        assert!(matches!(generated(40, None, true).partition(), Err(CliError::Usage(_))));
        assert_eq!(FamilySpec::File("x".into()).partition().unwrap(), None);
    }

    #[test]
    fn validation() {
        let mut c = PipelineConfig::new(generated(3, None, false), Stage::All);
        assert!(c.validate().is_ok());
        c.precision = 32;
        assert!(c.validate().is_err());
        c.precision = 256;
        c.eps = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn stage_names_and_codes() {
        assert_eq!(Stage::Triangulate.to_string(), "triangulate");
        assert!(Stage::All > Stage::Homology);
        assert!(!Stage::Verify.needs_hull());
        let codes: Vec<i32> = [
            Stage::Family,
            Stage::Verify,
            Stage::Hull,
            Stage::Triangulate,
            Stage::Quotient,
            Stage::Homology,
        ]
        .iter()
        .map(|s| s.exit_code())
        .collect();
        assert_eq!(codes, vec![10, 11, 12, 13, 14, 15]);
    }
}

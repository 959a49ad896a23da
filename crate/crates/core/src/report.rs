//! Pass/fail reports shared by every checker in the crate.

use serde::Serialize;

use crate::subset::Subset;

/// Reports keep at most this many violations; the total is still counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 1024;

/// A single failed condition together with the data that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `{element}` is not a member of the family.
    MissingSingleton { element: usize },
    /// `set ∖ {element}` is not a member although `set` is.
    NotDownwardClosed { set: Subset, element: usize },
    /// No `(i, j) ∈ a × b` satisfies either exchange case.
    NoExchange { a: Subset, b: Subset },
    /// The facet's vertices carry both signs in `coordinate`.
    FacetOutsideOrthant { facet: usize, coordinate: usize },
    /// Facets through a vertex and through its antipode share a vertex.
    AntipodalFacetsMeet {
        vertex: usize,
        facet: usize,
        opposite_facet: usize,
        common_vertex: usize,
    },
    /// The involution maps a maximal face outside the complex.
    FaceNotMapped { face: Vec<usize> },
    /// The involution maps a maximal face to itself.
    FixedFace { face: Vec<usize> },
    /// A face contains a vertex and its antipode.
    AntipodalPairInFace { vertex: usize, face: Vec<usize> },
    /// The closed stars of `vertex` and `opposite` share `common`.
    StarsMeet {
        vertex: usize,
        opposite: usize,
        common: usize,
    },
    /// A codimension-one face lies in `count` maximal faces instead of 2.
    RidgeDegree { ridge: Vec<usize>, count: usize },
    /// The dual graph of maximal faces is disconnected.
    Disconnected { components: usize },
    /// The link of a vertex is not a sphere of the right dimension.
    BadVertexLink { vertex: usize, detail: String },
}

/// Outcome of one checker. `passed()` holds exactly when no violation was
/// found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    condition: String,
    passed: bool,
    checked: u64,
    violation_count: u64,
    violations: Vec<Violation>,
}

impl ConditionReport {
    /// `checked` is the number of elementary cases examined (members, pairs,
    /// facets, ...). `violation_count` may exceed `violations.len()` when the
    /// caller already truncated the list.
    pub fn new(
        condition: impl Into<String>,
        checked: u64,
        violation_count: u64,
        mut violations: Vec<Violation>,
    ) -> Self {
        let violation_count = violation_count.max(violations.len() as u64);
        violations.truncate(MAX_RECORDED_VIOLATIONS);
        ConditionReport {
            condition: condition.into(),
            passed: violation_count == 0,
            checked,
            violation_count,
            violations,
        }
    }

    pub fn from_violations(condition: impl Into<String>, checked: u64, violations: Vec<Violation>) -> Self {
        let count = violations.len() as u64;
        Self::new(condition, checked, count, violations)
    }

    pub fn condition(&self) -> &str {
        &self.condition
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn checked(&self) -> u64 {
        self.checked
    }

    pub fn violation_count(&self) -> u64 {
        self.violation_count
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

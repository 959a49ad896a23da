//! Stage-by-stage run: family → verify → hull → triangulate → quotient →
//! homology. Each stage writes its files; `summary.json` records the verdict.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rpforge_core::family::{
    build_grouped_family, check_downward_closed, check_exchange, check_singletons, disjoint_pair_count,
    exchange_witness_table, size_bound, ExchangeWitness,
};
use rpforge_core::geometry::{
    check_antipodal_disjoint, check_orthant_property, check_unit_norms, convex_hull, lattice_to_json, lattice_to_off,
};
use rpforge_core::homology::{
    boundary_matrices, check_pseudomanifold, classify_low_dimensional, expected_rp_homology, homology_from_chain,
};
use rpforge_core::triangulation::{
    check_equivariance, check_star_disjointness, lift_counts, pull_triangulate, quotient,
};
use rpforge_core::{Coefficients, ConditionReport, GroupPartition, HomologyResult, Subset, SubsetFamily};
use serde::Serialize;
use tracing::info;

use crate::bounds::decimal;
use crate::config::{FamilySpec, PipelineConfig, Stage, HULL_LIMIT};
use crate::error::{CliError, Result};
use crate::family_io::{read_family, FamilyDocument};

/// Exchange witnesses are listed in `verify.json` up to this many pairs.
pub const WITNESS_LIST_LIMIT: u64 = 4096;

/// Digits after the decimal point in OFF coordinates.
const OFF_DIGITS: usize = 17;

/// Pass/fail line of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub condition: String,
    pub passed: bool,
    pub checked: u64,
    pub violations: u64,
}

impl From<&ConditionReport> for Check {
    fn from(r: &ConditionReport) -> Self {
        Check {
            condition: r.condition().to_string(),
            passed: r.passed(),
            checked: r.checked(),
            violations: r.violation_count(),
        }
    }
}

impl Check {
    fn boolean(condition: &str, passed: bool, checked: u64) -> Self {
        Check {
            condition: condition.to_string(),
            passed,
            checked,
            violations: u64::from(!passed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySummary {
    pub n: usize,
    pub groups: Option<usize>,
    pub size: usize,
    #[serde(serialize_with = "optional_decimal")]
    pub bound: Option<BigUint>,
    #[serde(serialize_with = "decimal")]
    pub baseline: BigUint,
    /// Whether the family equals the grouped family of its partition.
    pub matches_partition: Option<bool>,
}

fn optional_decimal<S: serde::Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => decimal(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullSummary {
    pub vertices: usize,
    pub facets: usize,
    pub precision: usize,
    pub eps: f64,
    pub min_margin: f64,
    pub max_residual: f64,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub f_vector: Vec<u64>,
    pub euler_characteristic: i64,
    pub checks: Vec<Check>,
    pub classification: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub z: String,
    pub z2: String,
    pub expected_z: String,
    pub expected_z2: String,
    pub checks: Vec<Check>,
}

/// Everything a run established, in stage order. Contains no timestamps, so
/// equal configurations give byte-identical files.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub stage: Stage,
    pub family: Option<FamilySummary>,
    pub verify: Option<Vec<Check>>,
    pub hull: Option<HullSummary>,
    pub triangulation: Option<ComplexSummary>,
    pub quotient: Option<ComplexSummary>,
    pub homology: Option<HomologySummary>,
    /// First stage whose checks failed.
    pub failed_stage: Option<Stage>,
    pub passed: bool,
}

impl Summary {
    pub fn exit_code(&self) -> i32 {
        self.failed_stage.map_or(0, Stage::exit_code)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = |checks: &[Check]| -> String {
            checks
                .iter()
                .map(|c| {
                    if c.passed {
                        format!("{} pass", c.condition)
                    } else {
                        format!("{} FAIL ({} violations)", c.condition, c.violations)
                    }
                })
                .collect::<Vec<_>>()
                .join(", ")
        };
        if let Some(f) = &self.family {
            let k = f.groups.map_or("-".to_string(), |k| k.to_string());
            let bound = f.bound.as_ref().map_or("-".to_string(), |b| b.to_string());
            let _ = writeln!(
                out,
                "family: n={} k={k} |V|={} bound={bound} baseline={}",
                f.n, f.size, f.baseline
            );
        }
        if let Some(v) = &self.verify {
            let _ = writeln!(out, "verify: {}", verdict(v));
        }
        if let Some(h) = &self.hull {
            let _ = writeln!(
                out,
                "hull: {} vertices, {} facets, min margin {:.3e}; {}",
                h.vertices,
                h.facets,
                h.min_margin,
                verdict(&h.checks)
            );
        }
        for (name, c) in [("triangulation", &self.triangulation), ("quotient", &self.quotient)] {
            if let Some(c) = c {
                let f: Vec<String> = c.f_vector.iter().map(u64::to_string).collect();
                let _ = write!(
                    out,
                    "{name}: {} vertices, f-vector ({}), chi {}",
                    c.vertices,
                    f.join(", "),
                    c.euler_characteristic
                );
                if let Some(cl) = &c.classification {
                    let _ = write!(out, ", {cl}");
                }
                let _ = writeln!(out, "; {}", verdict(&c.checks));
            }
        }
        if let Some(h) = &self.homology {
            let _ = writeln!(out, "homology over Z: {} (expected {})", h.z, h.expected_z);
            let _ = writeln!(out, "homology over Z/2: {} (expected {})", h.z2, h.expected_z2);
        }
        let _ = match self.failed_stage {
            None => writeln!(out, "verdict: pass"),
            Some(s) => writeln!(out, "verdict: FAIL at {s}"),
        };
        out
    }
}

#[derive(Clone, Debug, Serialize)]
struct VerifyDocument {
    n: usize,
    size: usize,
    reports: Vec<ConditionReport>,
    /// Every ordered disjoint pair with its first exchange witness, when
    /// there are at most [`WITNESS_LIST_LIMIT`] pairs.
    witnesses: Option<Vec<WitnessEntry>>,
}

#[derive(Clone, Debug, Serialize)]
struct WitnessEntry {
    a: Subset,
    b: Subset,
    witness: Option<ExchangeWitness>,
}

#[derive(Clone, Debug, Serialize)]
struct HomologyDocument<'a> {
    computed: &'a HomologyResult,
    expected: &'a HomologyResult,
    matches: bool,
}

/// Output directory, or nothing when files are not wanted.
struct Sink(Option<PathBuf>);

impl Sink {
    fn new(dir: Option<&Path>) -> Result<Self> {
        if let Some(d) = dir {
            fs::create_dir_all(d).map_err(CliError::io(d))?;
        }
        Ok(Sink(dir.map(Path::to_path_buf)))
    }

    fn text(&self, name: &str, contents: &str) -> Result<()> {
        match &self.0 {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, contents).map_err(CliError::io(path))
            }
            None => Ok(()),
        }
    }

    fn json<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        if self.0.is_none() {
            return Ok(());
        }
        let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
        s.push('\n');
        self.text(name, &s)
    }
}

pub fn load_family(spec: &FamilySpec) -> Result<(SubsetFamily, Option<GroupPartition>)> {
    match spec {
        FamilySpec::File(path) => read_family(path),
        FamilySpec::Generated { .. } => {
            let p = spec.partition()?.expect("generated families have a partition");
            Ok((build_grouped_family(&p), Some(p)))
        }
    }
}

pub fn family_summary(v: &SubsetFamily, p: Option<&GroupPartition>) -> FamilySummary {
    FamilySummary {
        n: v.n(),
        groups: p.map(GroupPartition::k),
        size: v.len(),
        bound: p.map(|p| size_bound(p.k(), p.s())),
        baseline: (BigUint::from(1u8) << v.n()) - 1u8,
        matches_partition: p.map(|p| build_grouped_family(p) == *v),
    }
}

/// The three family conditions.
pub fn family_reports(v: &SubsetFamily) -> Vec<ConditionReport> {
    vec![check_singletons(v), check_downward_closed(v), check_exchange(v)]
}

fn sphere_euler(dim: usize) -> i64 {
    if dim.is_multiple_of(2) {
        2
    } else {
        0
    }
}

fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Runs the stages up to `cfg.stage`. Checks that fail end the run with
/// `failed_stage` set; errors raised inside a stage are returned as
/// [`CliError::Stage`].
pub fn run(cfg: &PipelineConfig) -> Result<Summary> {
    cfg.validate()?;
    let (family, partition) = load_family(&cfg.family)?;
    let n = family.n();
    if cfg.stage.needs_hull() && n > HULL_LIMIT {
        return Err(CliError::Usage(format!(
            "stage {} needs a convex hull, available for n <= {HULL_LIMIT}; got n = {n}",
            cfg.stage
        )));
    }
    let sink = Sink::new(cfg.out.as_deref())?;
    let mut summary = Summary {
        stage: cfg.stage,
        family: Some(family_summary(&family, partition.as_ref())),
        verify: None,
        hull: None,
        triangulation: None,
        quotient: None,
        homology: None,
        failed_stage: None,
        passed: false,
    };
    let result = stages(cfg, &family, partition.as_ref(), &sink, &mut summary);
    summary.passed = summary.failed_stage.is_none();
    sink.json("summary.json", &summary)?;
    result.map(|()| summary)
}

fn stages(
    cfg: &PipelineConfig,
    family: &SubsetFamily,
    partition: Option<&GroupPartition>,
    sink: &Sink,
    summary: &mut Summary,
) -> Result<()> {
    let n = family.n();
    info!(n, size = family.len(), "family");
    sink.json("family.json", &FamilyDocument::new(family, partition))?;
    if cfg.stage == Stage::Family {
        return Ok(());
    }

    let reports = family_reports(family);
    let witnesses = (disjoint_pair_count(family) <= WITNESS_LIST_LIMIT).then(|| {
        exchange_witness_table(family)
            .into_iter()
            .map(|(a, b, witness)| WitnessEntry { a, b, witness })
            .collect()
    });
    let checks: Vec<Check> = reports.iter().map(Check::from).collect();
    info!(passed = all_passed(&checks), "verify");
    sink.json(
        "verify.json",
        &VerifyDocument {
            n,
            size: family.len(),
            reports,
            witnesses,
        },
    )?;
    let ok = all_passed(&checks);
    summary.verify = Some(checks);
    if !ok {
        summary.failed_stage = Some(Stage::Verify);
        return Ok(());
    }
    if cfg.stage == Stage::Verify {
        return Ok(());
    }

    let lattice = convex_hull(family, &cfg.hull_options()).map_err(CliError::at(Stage::Hull))?;
    sink.json("lattice.json", &lattice_to_json(&lattice))?;
    sink.text("lattice.off", &lattice_to_off(&lattice, OFF_DIGITS))?;
    let off_norm = check_unit_norms(&lattice);
    let checks = vec![
        Check {
            condition: "unit_norms".into(),
            passed: off_norm.is_empty(),
            checked: lattice.vertex_count() as u64,
            violations: off_norm.len() as u64,
        },
        Check::from(&check_orthant_property(&lattice)),
        Check::from(&check_antipodal_disjoint(&lattice)),
        Check::boolean(
            "certification_margin",
            lattice.min_margin() > 1e3 * lattice.eps(),
            lattice.facets().len() as u64,
        ),
    ];
    info!(
        vertices = lattice.vertex_count(),
        facets = lattice.facets().len(),
        "hull"
    );
    let ok = all_passed(&checks);
    summary.hull = Some(HullSummary {
        vertices: lattice.vertex_count(),
        facets: lattice.facets().len(),
        precision: lattice.precision(),
        eps: lattice.eps(),
        min_margin: lattice.min_margin(),
        max_residual: lattice.max_residual(),
        checks,
    });
    if !ok {
        summary.failed_stage = Some(Stage::Hull);
        return Ok(());
    }
    if cfg.stage == Stage::Hull {
        return Ok(());
    }

    let at = CliError::at;
    let (s, inv) = pull_triangulate(&lattice).map_err(at(Stage::Triangulate))?;
    sink.json("complex.json", &s.to_document())?;
    sink.text("complex.txt", &s.to_text())?;
    let checks = vec![
        Check::from(&check_pseudomanifold(&s).map_err(at(Stage::Triangulate))?),
        Check::boolean(
            "sphere_euler_characteristic",
            s.euler_characteristic() == sphere_euler(n - 1),
            1,
        ),
        Check::from(&check_equivariance(&s, &inv).map_err(at(Stage::Triangulate))?),
        Check::from(&check_star_disjointness(&s, &inv).map_err(at(Stage::Triangulate))?),
    ];
    info!(faces = s.faces().len(), "triangulation");
    let ok = all_passed(&checks);
    summary.triangulation = Some(ComplexSummary {
        vertices: s.vertex_count(),
        f_vector: s.f_vector(),
        euler_characteristic: s.euler_characteristic(),
        checks,
        classification: None,
    });
    if !ok {
        summary.failed_stage = Some(Stage::Triangulate);
        return Ok(());
    }
    if cfg.stage == Stage::Triangulate {
        return Ok(());
    }

    let q = quotient(&s, &inv).map_err(at(Stage::Quotient))?;
    sink.json("quotient.json", &q.to_document())?;
    sink.text("quotient.txt", &q.to_text())?;
    let (fs, fq) = (s.f_vector(), q.f_vector());
    let halving = fs.len() == fq.len() && fs.iter().zip(&fq).all(|(a, b)| *a == 2 * b);
    let lifts = lift_counts(&s, &inv, &q).map_err(at(Stage::Quotient))?;
    let checks = vec![
        Check::boolean("vertex_count", q.vertex_count() == family.len(), 1),
        Check::boolean("f_vector_halving", halving, fq.len() as u64),
        Check::boolean("two_lifts", lifts.iter().all(|&c| c == 2), lifts.len() as u64),
        Check::from(&check_pseudomanifold(&q).map_err(at(Stage::Quotient))?),
    ];
    let ok = all_passed(&checks);
    let classification = if ok && n <= 3 {
        Some(classify_low_dimensional(&q).map_err(at(Stage::Quotient))?.to_string())
    } else {
        None
    };
    info!(vertices = q.vertex_count(), "quotient");
    summary.quotient = Some(ComplexSummary {
        vertices: q.vertex_count(),
        f_vector: fq,
        euler_characteristic: q.euler_characteristic(),
        checks,
        classification,
    });
    if !ok {
        summary.failed_stage = Some(Stage::Quotient);
        return Ok(());
    }
    if cfg.stage == Stage::Quotient {
        return Ok(());
    }

    let chain = boundary_matrices(&q).map_err(at(Stage::Homology))?;
    let mut results = Vec::new();
    let mut checks = Vec::new();
    for (coefficients, file) in [
        (Coefficients::Z, "homology_z.json"),
        (Coefficients::Z2, "homology_z2.json"),
    ] {
        let computed = homology_from_chain(&chain, coefficients).map_err(at(Stage::Homology))?;
        let expected = expected_rp_homology(n - 1, coefficients);
        let matches = computed == expected;
        sink.json(
            file,
            &HomologyDocument {
                computed: &computed,
                expected: &expected,
                matches,
            },
        )?;
        checks.push(Check::boolean(
            &format!("rp_homology_{coefficients}").to_lowercase(),
            matches,
            computed.dims.len() as u64,
        ));
        results.push((computed, expected));
    }
    info!(z = %results[0].0.summary(), "homology");
    let ok = all_passed(&checks);
    summary.homology = Some(HomologySummary {
        z: results[0].0.summary(),
        z2: results[1].0.summary(),
        expected_z: results[0].1.summary(),
        expected_z2: results[1].1.summary(),
        checks,
    });
    if !ok {
        summary.failed_stage = Some(Stage::Homology);
    }
    Ok(())
}

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{homology, Coefficients};
use crate::error::{arg, Error, Result};
use crate::report::{ConditionReport, Violation};
use crate::triangulation::SimplicialComplex;

fn pure_dimension(k: &SimplicialComplex) -> Result<usize> {
    match k.dimension() {
        None => arg("complex has no faces"),
        Some(_) if !k.is_pure() => arg("complex is not pure"),
        Some(d) => Ok(d),
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Every codimension-one face lies in exactly two maximal faces and the
/// maximal faces are connected through them. In dimension 0 this means a
/// single point.
pub fn check_pseudomanifold(k: &SimplicialComplex) -> Result<ConditionReport> {
    let m = pure_dimension(k)?;
    let faces = k.faces();
    if m == 0 {
        let violations = if faces.len() == 1 {
            Vec::new()
        } else {
            vec![Violation::Disconnected {
                components: faces.len(),
            }]
        };
        return Ok(ConditionReport::from_violations("pseudomanifold", 1, violations));
    }
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for omit in 0..f.len() {
            let mut r = f.clone();
            r.remove(omit);
            ridges.entry(r).or_default().push(fi);
        }
    }
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    let mut violations = Vec::new();
    for (ridge, around) in &ridges {
        if around.len() != 2 {
            violations.push(Violation::RidgeDegree {
                ridge: ridge.clone(),
                count: around.len(),
            });
        }
        for w in around.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let components = (0..faces.len()).filter(|&f| find(&mut parent, f) == f).count();
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }
    Ok(ConditionReport::from_violations(
        "pseudomanifold",
        ridges.len() as u64,
        violations,
    ))
}

/// For pure complexes of dimension `m ≤ 2`: every vertex lies in some face
/// and its link is a sphere of dimension `m − 1` (empty, two points, or a
/// single cycle).
pub fn check_vertex_links(k: &SimplicialComplex) -> Result<ConditionReport> {
    let m = pure_dimension(k)?;
    if m > 2 {
        return arg(format!("vertex links are only checked up to dimension 2, not {m}"));
    }
    let nv = k.vertex_count();
    let mut links: Vec<Vec<Vec<usize>>> = vec![Vec::new(); nv];
    for f in k.faces() {
        for &v in f {
            links[v].push(f.iter().copied().filter(|&w| w != v).collect());
        }
    }
    let violations = links
        .iter()
        .enumerate()
        .filter_map(|(v, link)| link_defect(m, link).map(|detail| Violation::BadVertexLink { vertex: v, detail }))
        .collect();
    Ok(ConditionReport::from_violations("vertex_links", nv as u64, violations))
}

fn link_defect(m: usize, link: &[Vec<usize>]) -> Option<String> {
    if link.is_empty() {
        return Some("vertex lies in no face".into());
    }
    match m {
        0 => None,
        1 => (link.len() != 2).then(|| format!("link has {} points, expected 2", link.len())),
        _ => {
            let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
            for e in link {
                adj.entry(e[0]).or_default().push(e[1]);
                adj.entry(e[1]).or_default().push(e[0]);
            }
            if let Some((w, nb)) = adj.iter().find(|(_, nb)| nb.len() != 2) {
                return Some(format!("link vertex {w} has degree {}", nb.len()));
            }
            let start = *adj.keys().next().expect("nonempty link");
            let mut seen = HashSet::from([start]);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[&x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            (seen.len() != adj.len()).then(|| {
                format!(
                    "link is not a single cycle ({} of {} vertices reached)",
                    seen.len(),
                    adj.len()
                )
            })
        }
    }
}

/// Closed connected manifolds of dimension at most 2, up to homeomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Point,
    Circle,
    Sphere,
    Orientable { genus: u64 },
    NonOrientable { crosscaps: u64 },
}

impl Classification {
    /// `RP^m` for `m ≤ 2`.
    pub fn projective(m: usize) -> Option<Self> {
        match m {
            0 => Some(Classification::Point),
            1 => Some(Classification::Circle),
            2 => Some(Classification::NonOrientable { crosscaps: 1 }),
            _ => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Point => write!(f, "point"),
            Classification::Circle => write!(f, "circle"),
            Classification::Sphere => write!(f, "2-sphere"),
            Classification::Orientable { genus } => write!(f, "orientable surface of genus {genus}"),
            Classification::NonOrientable { crosscaps: 1 } => write!(f, "projective plane"),
            Classification::NonOrientable { crosscaps } => {
                write!(f, "non-orientable surface with {crosscaps} crosscaps")
            }
        }
    }
}

/// Identifies a closed connected manifold of dimension at most 2 from
/// validated vertex links, the Euler characteristic and orientability.
pub fn classify_low_dimensional(k: &SimplicialComplex) -> Result<Classification> {
    let m = pure_dimension(k)?;
    if m > 2 {
        return arg(format!("classification is only available up to dimension 2, not {m}"));
    }
    for report in [check_pseudomanifold(k)?, check_vertex_links(k)?] {
        if !report.passed() {
            return Err(Error::Precondition(format!(
                "{} check failed with {} violations",
                report.condition(),
                report.violation_count()
            )));
        }
    }
    Ok(match m {
        0 => Classification::Point,
        1 => Classification::Circle,
        _ => {
            let h = homology(k, Coefficients::Z)?;
            let chi = h.euler;
            let orientable = h.dims[2].rank == 1;
            if orientable {
                match chi {
                    2 => Classification::Sphere,
                    c if c <= 0 && c % 2 == 0 => Classification::Orientable {
                        genus: ((2 - c) / 2) as u64,
                    },
                    c => {
                        return Err(Error::Internal(format!(
                            "orientable closed surface with Euler characteristic {c}"
                        )))
                    }
                }
            } else if chi <= 1 {
                Classification::NonOrientable {
                    crosscaps: (2 - chi) as u64,
                }
            } else {
                return Err(Error::Internal(format!(
                    "non-orientable closed surface with Euler characteristic {chi}"
                )));
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{rp2_six_vertex, simplex_boundary};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn triangle_boundary_passes() {
        let k = simplex_boundary(2);
        assert!(check_pseudomanifold(&k).unwrap().passed());
        assert_eq!(classify_low_dimensional(&k).unwrap(), Classification::Circle);
    }

    #[test]
    fn two_triangles_have_boundary() {
        let k = SimplicialComplex::new(labels(4), [vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let r = check_pseudomanifold(&k).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violation_count(), 4);
        assert_eq!(
            r.violations()[0],
            Violation::RidgeDegree {
                ridge: vec![0, 1],
                count: 1
            }
        );
        assert!(classify_low_dimensional(&k).is_err());
    }

    #[test]
    fn non_pure_is_an_argument_error() {
        let k = SimplicialComplex::new(labels(4), [vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(matches!(check_pseudomanifold(&k), Err(Error::Argument(_))));
    }

    #[test]
    fn disjoint_circles_are_disconnected() {
        let mut faces: Vec<Vec<usize>> = (0..3).map(|i| vec![i, (i + 1) % 3]).collect();
        faces.extend((0..3).map(|i| vec![3 + i, 3 + (i + 1) % 3]));
        let k = SimplicialComplex::new(labels(6), faces).unwrap();
        let r = check_pseudomanifold(&k).unwrap();
        assert_eq!(r.violations(), &[Violation::Disconnected { components: 2 }]);
    }

    #[test]
    fn points() {
        let one = SimplicialComplex::new(labels(1), [vec![0]]).unwrap();
        assert!(check_pseudomanifold(&one).unwrap().passed());
        assert_eq!(classify_low_dimensional(&one).unwrap(), Classification::Point);
        let two = SimplicialComplex::new(labels(2), [vec![0], vec![1]]).unwrap();
        assert!(!check_pseudomanifold(&two).unwrap().passed());
    }

    #[test]
    fn surfaces() {
        assert_eq!(
            classify_low_dimensional(&rp2_six_vertex()).unwrap(),
            Classification::NonOrientable { crosscaps: 1 }
        );
        assert_eq!(
            classify_low_dimensional(&rp2_six_vertex()).unwrap().to_string(),
            "projective plane"
        );
        assert_eq!(
            classify_low_dimensional(&simplex_boundary(3)).unwrap(),
            Classification::Sphere
        );
        // Two triangles meeting in a vertex.
        let bowtie = SimplicialComplex::new(labels(5), [vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        let r = check_vertex_links(&bowtie).unwrap();
        assert!(r
            .violations()
            .iter()
            .any(|v| matches!(v, Violation::BadVertexLink { vertex: 0, .. })));
    }

    #[test]
    fn torus() {
        // 7-vertex Möbius torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
        let faces = (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]);
        let k = SimplicialComplex::new(labels(7), faces).unwrap();
        assert_eq!(
            classify_low_dimensional(&k).unwrap(),
            Classification::Orientable { genus: 1 }
        );
    }
}

use std::collections::{HashMap, HashSet};

use super::{Involution, SimplicialComplex};
use crate::error::{arg, Error, Result};
use crate::report::{ConditionReport, Violation};

fn check_sizes(s: &SimplicialComplex, inv: &Involution) -> Result<()> {
    if inv.len() != s.vertex_count() {
        return arg(format!(
            "involution acts on {} vertices, complex has {}",
            inv.len(),
            s.vertex_count()
        ));
    }
    Ok(())
}

/// The involution maps every maximal face onto a maximal face other than
/// itself.
pub fn check_equivariance(s: &SimplicialComplex, inv: &Involution) -> Result<ConditionReport> {
    check_sizes(s, inv)?;
    let faces: HashSet<&[usize]> = s.faces().iter().map(Vec::as_slice).collect();
    let violations = s
        .faces()
        .iter()
        .filter_map(|f| {
            let image = inv.apply_face(f);
            if image == *f {
                Some(Violation::FixedFace { face: f.clone() })
            } else if !faces.contains(image.as_slice()) {
                Some(Violation::FaceNotMapped { face: f.clone() })
            } else {
                None
            }
        })
        .collect();
    Ok(ConditionReport::from_violations(
        "equivariance",
        s.faces().len() as u64,
        violations,
    ))
}

/// For every pair `{v, −v}`: no face contains both, and the closed stars
/// share no vertex, i.e. `v` and `−v` have no common neighbor.
pub fn check_star_disjointness(s: &SimplicialComplex, inv: &Involution) -> Result<ConditionReport> {
    check_sizes(s, inv)?;
    let nv = s.vertex_count();
    let mut neighbors: Vec<HashSet<usize>> = vec![HashSet::new(); nv];
    for f in s.faces() {
        for &a in f {
            neighbors[a].extend(f.iter().copied().filter(|&b| b != a));
        }
    }
    let mut violations = Vec::new();
    let mut checked = 0;
    for v in 0..nv {
        let w = inv.apply(v);
        if w < v {
            continue;
        }
        checked += 1;
        if neighbors[v].contains(&w) {
            let face = s
                .faces()
                .iter()
                .find(|f| f.contains(&v) && f.contains(&w))
                .expect("adjacent")
                .clone();
            violations.push(Violation::AntipodalPairInFace { vertex: v, face });
            continue;
        }
        if let Some(&common) = neighbors[v].intersection(&neighbors[w]).min() {
            violations.push(Violation::StarsMeet {
                vertex: v,
                opposite: w,
                common,
            });
        }
    }
    Ok(ConditionReport::from_violations(
        "star_disjointness",
        checked,
        violations,
    ))
}

/// The quotient `S/Z₂`: vertices are the pairs `{v, −v}`, represented by
/// their smaller index (the positive vertex for pulled triangulations) and
/// labeled as that representative. Both conditions above must pass.
pub fn quotient(s: &SimplicialComplex, inv: &Involution) -> Result<SimplicialComplex> {
    let equivariance = check_equivariance(s, inv)?;
    if !equivariance.passed() {
        return Err(Error::Precondition(format!(
            "triangulation is not equivariant ({} violations)",
            equivariance.violation_count()
        )));
    }
    let stars = check_star_disjointness(s, inv)?;
    if !stars.passed() {
        return Err(Error::Precondition(format!(
            "closed stars of opposite vertices meet ({} violations)",
            stars.violation_count()
        )));
    }
    identify(s, inv)
}

/// Maps faces to orbit representatives without checking the hypotheses;
/// detects repeated labels and collisions of unrelated faces.
pub(crate) fn identify(s: &SimplicialComplex, inv: &Involution) -> Result<SimplicialComplex> {
    check_sizes(s, inv)?;
    let reps: Vec<usize> = (0..s.vertex_count()).filter(|&v| v < inv.apply(v)).collect();
    let mut class = vec![0usize; s.vertex_count()];
    for (j, &r) in reps.iter().enumerate() {
        class[r] = j;
        class[inv.apply(r)] = j;
    }
    let mut seen: HashMap<Vec<usize>, &Vec<usize>> = HashMap::new();
    for f in s.faces() {
        let mut q: Vec<usize> = f.iter().map(|&v| class[v]).collect();
        q.sort_unstable();
        if q.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::QuotientNotSimplicial(format!(
                "face {f:?} contains two vertices of one orbit"
            )));
        }
        match seen.get(&q) {
            Some(&g) if g != f && inv.apply_face(g) != *f => {
                return Err(Error::QuotientNotSimplicial(format!(
                    "faces {g:?} and {f:?} are not paired but both map to {q:?}"
                )));
            }
            Some(_) => {}
            None => {
                seen.insert(q, f);
            }
        }
    }
    let labels = reps.iter().map(|&r| s.labels()[r].clone()).collect();
    SimplicialComplex::new(labels, seen.into_keys())
}

/// For every quotient face, the number of faces of `s` over it.
pub fn lift_counts(s: &SimplicialComplex, inv: &Involution, q: &SimplicialComplex) -> Result<Vec<usize>> {
    check_sizes(s, inv)?;
    let reps: Vec<usize> = (0..s.vertex_count()).filter(|&v| v < inv.apply(v)).collect();
    if reps.len() != q.vertex_count() {
        return arg("quotient vertex count does not match the involution");
    }
    let mut class = vec![0usize; s.vertex_count()];
    for (j, &r) in reps.iter().enumerate() {
        class[r] = j;
        class[inv.apply(r)] = j;
    }
    let index: HashMap<&[usize], usize> = q.faces().iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut counts = vec![0; q.faces().len()];
    for f in s.faces() {
        let mut img: Vec<usize> = f.iter().map(|&v| class[v]).collect();
        img.sort_unstable();
        match index.get(img.as_slice()) {
            Some(&i) => counts[i] += 1,
            None => return arg(format!("face {f:?} has no image in the quotient")),
        }
    }
    Ok(counts)
}

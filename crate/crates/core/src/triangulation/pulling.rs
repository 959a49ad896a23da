use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{Involution, SimplicialComplex};
use crate::error::{arg, Error, Result};
use crate::geometry::{check_antipodal_disjoint, FaceLattice};

/// Pulling triangulation of `∂P` for the order `+V[0], −V[0], +V[1], −V[1], …`.
///
/// Returns the triangulation, labeled by the signed vertices, together with
/// the antipodal involution. Requires that no face of `∂P` contain a vertex
/// and its antipode, which makes the result symmetric.
pub fn pull_triangulate(lattice: &FaceLattice) -> Result<(SimplicialComplex, Involution)> {
    let report = check_antipodal_disjoint(lattice);
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "faces through antipodal vertices meet ({} violations); the pulled triangulation would not be symmetric",
            report.violation_count()
        )));
    }
    let nv = lattice.vertex_count();
    let m = nv / 2;
    let order: Vec<usize> = (0..nv).map(|v| 2 * (v % m) + usize::from(v >= m)).collect();
    let facets = lattice.combinatorics();
    let simplices = pulling_triangulation(nv, &facets, lattice.n() - 1, &order)?;
    let labels = lattice.vertices().iter().map(ToString::to_string).collect();
    let complex = SimplicialComplex::new(labels, simplices)?;
    let inv = Involution::new((0..nv).map(|v| lattice.antipode(v)).collect())?;
    Ok((complex, inv))
}

/// Pulling triangulation of the boundary complex of a polytope given by its
/// facets (vertex index lists) of dimension `dim`. `order[v]` is the pulling
/// rank of vertex `v`; lower ranks are pulled first. Lower-dimensional faces
/// are obtained as maximal intersections with other facets.
///
/// Each face `F` is triangulated by coning its earliest vertex over the
/// triangulations of the facets of `F` that avoid it; simplices are kept as is.
pub fn pulling_triangulation(
    vertex_count: usize,
    facets: &[Vec<usize>],
    dim: usize,
    order: &[usize],
) -> Result<Vec<Vec<usize>>> {
    if order.len() != vertex_count {
        return arg(format!("order has {} ranks for {vertex_count} vertices", order.len()));
    }
    let sets: Vec<FixedBitSet> = facets
        .iter()
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(vertex_count);
            for &v in f {
                if v >= vertex_count {
                    return arg(format!("facet {f:?} references an unknown vertex"));
                }
                s.insert(v);
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    let ctx = Context { facets: &sets, order };
    let pieces: Vec<Vec<Vec<usize>>> = sets
        .par_iter()
        .map_init(HashMap::new, |memo, f| {
            ctx.pull(f, dim, memo).map(|r| r.as_ref().clone())
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Vec<usize>> = pieces.into_iter().flatten().collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

type Memo = HashMap<FixedBitSet, Arc<Vec<Vec<usize>>>>;

struct Context<'a> {
    facets: &'a [FixedBitSet],
    order: &'a [usize],
}

impl Context<'_> {
    fn pull(&self, face: &FixedBitSet, dim: usize, memo: &mut Memo) -> Result<Arc<Vec<Vec<usize>>>> {
        if let Some(r) = memo.get(face) {
            return Ok(r.clone());
        }
        let count = face.count_ones(..);
        let result = if count == dim + 1 {
            vec![face.ones().collect::<Vec<usize>>()]
        } else if count <= dim {
            return Err(Error::Internal(format!(
                "face {:?} has {count} vertices but dimension {dim}",
                face.ones().collect::<Vec<_>>()
            )));
        } else {
            let apex = face.ones().min_by_key(|&v| self.order[v]).expect("nonempty face");
            let mut out = Vec::new();
            for sub in self.subfacets(face, dim) {
                if sub.contains(apex) {
                    continue;
                }
                for s in self.pull(&sub, dim - 1, memo)?.iter() {
                    let mut t = s.clone();
                    let at = t.partition_point(|&v| v < apex);
                    t.insert(at, apex);
                    out.push(t);
                }
            }
            out
        };
        let result = Arc::new(result);
        memo.insert(face.clone(), result.clone());
        Ok(result)
    }

    /// Facets of `face`: the maximal sets among its intersections with the
    /// polytope's facets that do not contain it.
    fn subfacets(&self, face: &FixedBitSet, dim: usize) -> Vec<FixedBitSet> {
        let mut candidates: Vec<FixedBitSet> = self
            .facets
            .iter()
            .filter(|g| !face.is_subset(g))
            .map(|g| {
                let mut s = FixedBitSet::with_capacity(face.len());
                s.extend(face.intersection(g));
                s
            })
            .filter(|s| s.count_ones(..) >= dim)
            .collect();
        candidates.sort_by_key(|s| std::cmp::Reverse(s.count_ones(..)));
        let mut maximal: Vec<FixedBitSet> = Vec::new();
        for c in candidates {
            if !maximal.iter().any(|m| c.is_subset(m)) {
                maximal.push(c);
            }
        }
        maximal
    }
}

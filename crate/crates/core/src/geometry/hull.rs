//! Face lattice of `conv(V ⊔ −V)` by beneath-beyond insertion at a
//! configurable binary precision.
//!
//! The hull is grown as a simplicial complex: each cell stores `n` vertices,
//! the neighbour across each of its ridges and a unit outer normal. A point
//! within `eps` of a cell's hyperplane counts as on it, so coplanar points
//! never see the cell; the cone over the horizon then triangulates the
//! enlarged flat facet. After insertion, adjacent cells whose hyperplanes
//! agree within `eps` are merged into one facet, and every merged facet is
//! re-certified against all vertices.
//!
//! Signs are first decided in `f64` and only recomputed at full precision
//! when the `f64` value is within [`FILTER`] of zero.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;

use astro_float::BigFloat;
use rayon::prelude::*;
use tracing::debug;

use super::real::{to_f64, Arith};
use super::{FaceLattice, Facet, Sign, SignedVertex};
use crate::error::{arg, Error, Result};
use crate::family::{check_singletons, SubsetFamily};

pub const DEFAULT_PRECISION: usize = 256;

/// `2⁻⁶⁴`. Normals and points are unit vectors, so this is also relative.
pub const DEFAULT_EPS: f64 = 5.421010862427522e-20;

/// `f64` side values beyond this magnitude are trusted without refinement.
const FILTER: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HullOptions {
    /// Working precision in bits.
    pub precision: usize,
    /// Distance below which a point counts as on a hyperplane.
    pub eps: f64,
}

impl Default for HullOptions {
    fn default() -> Self {
        HullOptions {
            precision: DEFAULT_PRECISION,
            eps: DEFAULT_EPS,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Above,
    On,
    Below,
}

struct Plane {
    normal: Vec<BigFloat>,
    offset: BigFloat,
    normal64: Vec<f64>,
    offset64: f64,
}

struct Cell {
    verts: Vec<usize>,
    /// `nbr[i]` is the cell across the ridge omitting `verts[i]`.
    nbr: Vec<usize>,
    plane: Plane,
    alive: bool,
}

struct Points {
    precise: Vec<Vec<BigFloat>>,
    fast: Vec<Vec<f64>>,
}

struct Builder<'a> {
    n: usize,
    arith: Arith,
    eps: BigFloat,
    pts: &'a Points,
    interior: Vec<BigFloat>,
    cells: Vec<Cell>,
}

/// Computes the face lattice of `P(V)`.
///
/// Vertices are inserted by sign, then canonical subset order. Fails with
/// [`Error::Certification`] when a facet cannot be separated from the other
/// vertices by more than `eps`.
pub fn convex_hull(v: &SubsetFamily, opts: &HullOptions) -> Result<FaceLattice> {
    if opts.precision < 64 {
        return arg(format!("precision {} below 64 bits", opts.precision));
    }
    if !(opts.eps > 0.0 && opts.eps.is_finite()) {
        return arg(format!("eps {} must be positive", opts.eps));
    }
    if !check_singletons(v).passed() {
        return Err(Error::Precondition(
            "every singleton must be a member for P(V) to be full-dimensional".into(),
        ));
    }
    let n = v.n();
    let vertices: Vec<SignedVertex> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .flat_map(|s| v.members().iter().map(move |&a| SignedVertex::new(a, s)))
        .collect();

    if n == 1 {
        let facets = vec![
            Facet {
                vertices: vec![0],
                normal: vec![1.0],
                offset: 1.0,
            },
            Facet {
                vertices: vec![1],
                normal: vec![-1.0],
                offset: 1.0,
            },
        ];
        return FaceLattice::from_parts(n, vertices, facets, opts.precision, opts.eps, 2.0, 0.0);
    }

    let arith = Arith::new(opts.precision);
    let pts = Points {
        precise: vertices
            .iter()
            .map(|&v| super::embed_precise(v, n, opts.precision))
            .collect::<Result<_>>()?,
        fast: vertices.iter().map(|&v| super::embed(v, n)).collect::<Result<_>>()?,
    };
    let mut b = Builder {
        n,
        arith,
        eps: arith.float(opts.eps),
        pts: &pts,
        interior: Vec::new(),
        cells: Vec::new(),
    };
    let simplex = b.initial_simplex()?;
    let mut alive: Vec<usize> = (0..b.cells.len()).collect();
    for p in 0..vertices.len() {
        if simplex.contains(&p) {
            continue;
        }
        alive = b.insert(p, &alive)?;
    }
    debug!(n, vertices = vertices.len(), cells = alive.len(), "hull cells built");
    let facets = b.merge_and_certify(&alive, vertices.len())?;
    let (facets, min_margin, max_residual) = facets;
    FaceLattice::from_parts(n, vertices, facets, opts.precision, opts.eps, min_margin, max_residual)
}

impl Builder<'_> {
    fn side(&self, plane: &Plane, p: usize) -> Side {
        let fast: f64 = plane
            .normal64
            .iter()
            .zip(&self.pts.fast[p])
            .map(|(a, b)| a * b)
            .sum::<f64>()
            - plane.offset64;
        if fast > FILTER {
            return Side::Above;
        }
        if fast < -FILTER {
            return Side::Below;
        }
        let s = self
            .arith
            .sub(&self.arith.dot(&plane.normal, &self.pts.precise[p]), &plane.offset);
        if self.arith.abs_cmp(&s, &self.eps).is_le() {
            Side::On
        } else if s.is_positive() {
            Side::Above
        } else {
            Side::Below
        }
    }

    /// Signed distance of `p` from the plane, at full precision when small.
    fn distance(&self, plane: &Plane, p: usize) -> (f64, BigFloat) {
        let s = self
            .arith
            .sub(&self.arith.dot(&plane.normal, &self.pts.precise[p]), &plane.offset);
        (to_f64(&s), s)
    }

    /// Hyperplane through the given `n` points, oriented away from the
    /// interior reference point.
    fn plane(&self, verts: &[usize]) -> Result<Plane> {
        let a = &self.arith;
        let n = self.n;
        let base = &self.pts.precise[verts[0]];
        let mut rows: Vec<Vec<BigFloat>> = verts[1..]
            .iter()
            .map(|&v| (0..n).map(|c| a.sub(&self.pts.precise[v][c], &base[c])).collect())
            .collect();
        let degenerate = |reason: &str| Error::Certification {
            facet: verts.to_vec(),
            reason: reason.to_string(),
        };
        // Forward elimination with full pivoting; `cols[t]` is the pivot
        // column of row `t`, the remaining column is free.
        let mut cols: Vec<usize> = (0..n).collect();
        for t in 0..n - 1 {
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in rows.iter().enumerate().skip(t) {
                for ci in t..n {
                    let c = cols[ci];
                    let better = match best {
                        None => true,
                        Some((br, bci)) => a.abs_cmp(&row[c], &rows[br][cols[bci]]).is_gt(),
                    };
                    if better {
                        best = Some((r, ci));
                    }
                }
            }
            let (r, ci) = best.expect("nonempty pivot search");
            if a.abs_cmp(&rows[r][cols[ci]], &self.eps).is_le() {
                return Err(degenerate("points are affinely dependent"));
            }
            rows.swap(t, r);
            cols.swap(t, ci);
            let pc = cols[t];
            for r2 in t + 1..n - 1 {
                if rows[r2][pc].is_zero() {
                    continue;
                }
                let factor = a.div(&rows[r2][pc], &rows[t][pc]);
                for c in 0..n {
                    let delta = a.mul(&factor, &rows[t][c]);
                    rows[r2][c] = a.sub(&rows[r2][c], &delta);
                }
            }
        }
        let free = cols[n - 1];
        let mut x = vec![a.zero(); n];
        x[free] = a.int(1);
        for t in (0..n - 1).rev() {
            let pc = cols[t];
            let mut acc = a.zero();
            for &c in &cols[t + 1..] {
                acc = a.add(&acc, &a.mul(&rows[t][c], &x[c]));
            }
            x[pc] = a.div(&acc, &rows[t][pc]).neg();
        }
        let norm = a.sqrt(&a.dot(&x, &x));
        let mut normal: Vec<BigFloat> = x.iter().map(|xi| a.div(xi, &norm)).collect();
        let mut offset = a.dot(&normal, base);
        let inside = a.sub(&a.dot(&normal, &self.interior), &offset);
        if a.abs_cmp(&inside, &self.eps).is_le() {
            return Err(degenerate("hyperplane passes through the interior reference point"));
        }
        if inside.is_positive() {
            normal = normal.iter().map(BigFloat::neg).collect();
            offset = offset.neg();
        }
        Ok(Plane {
            normal64: normal.iter().map(to_f64).collect(),
            offset64: to_f64(&offset),
            normal,
            offset,
        })
    }

    /// Greedily picks `n + 1` affinely independent points and creates the
    /// boundary cells of their simplex.
    fn initial_simplex(&mut self) -> Result<Vec<usize>> {
        let n = self.n;
        let fast = &self.pts.fast;
        let mut chosen = vec![0usize];
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for q in 1..fast.len() {
            if chosen.len() == n + 1 {
                break;
            }
            let mut r: Vec<f64> = (0..n).map(|c| fast[q][c] - fast[0][c]).collect();
            for e in &basis {
                let d: f64 = r.iter().zip(e).map(|(x, y)| x * y).sum();
                r.iter_mut().zip(e).for_each(|(x, y)| *x -= d * y);
            }
            let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                basis.push(r.into_iter().map(|x| x / norm).collect());
                chosen.push(q);
            }
        }
        if chosen.len() < n + 1 {
            return Err(Error::Precondition("points do not span R^n".into()));
        }
        let a = self.arith;
        let mut centroid = vec![a.zero(); n];
        for &q in &chosen {
            for c in 0..n {
                centroid[c] = a.add(&centroid[c], &self.pts.precise[q][c]);
            }
        }
        let k = a.int(n as u64 + 1);
        self.interior = centroid.iter().map(|x| a.div(x, &k)).collect();

        // Cell `o` omits `chosen[o]`; the cell across the ridge omitting
        // vertex `w` is the one omitting `w`.
        let mut sorted = chosen.clone();
        sorted.sort_unstable();
        let omit_index: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for &o in &sorted {
            let verts: Vec<usize> = sorted.iter().copied().filter(|&v| v != o).collect();
            let nbr = verts.iter().map(|w| omit_index[w]).collect();
            let plane = self.plane(&verts)?;
            self.cells.push(Cell {
                verts,
                nbr,
                plane,
                alive: true,
            });
        }
        Ok(sorted)
    }

    fn insert(&mut self, p: usize, alive: &[usize]) -> Result<Vec<usize>> {
        let sides: Vec<Side> = alive.par_iter().map(|&c| self.side(&self.cells[c].plane, p)).collect();
        let mut visible = vec![false; self.cells.len()];
        let mut visible_list = Vec::new();
        for (&c, &s) in alive.iter().zip(&sides) {
            if s == Side::Above {
                visible[c] = true;
                visible_list.push(c);
            }
        }
        if visible_list.is_empty() {
            return Err(Error::Certification {
                facet: vec![p],
                reason: "vertex is not beyond any facet of the partial hull".into(),
            });
        }

        struct Pending {
            verts: Vec<usize>,
            nbr: Vec<usize>,
        }
        let first_new = self.cells.len();
        let mut pending: Vec<Pending> = Vec::new();
        let mut relink: Vec<(usize, usize, usize)> = Vec::new();
        let mut open: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for &f in &visible_list {
            for i in 0..self.n {
                let nb = self.cells[f].nbr[i];
                if visible[nb] {
                    continue;
                }
                let mut verts: Vec<usize> = self.cells[f]
                    .verts
                    .iter()
                    .copied()
                    .filter(|&w| w != self.cells[f].verts[i])
                    .collect();
                let pos = verts.partition_point(|&w| w < p);
                verts.insert(pos, p);
                let id = first_new + pending.len();
                let mut nbr = vec![usize::MAX; self.n];
                nbr[pos] = nb;
                relink.push((nb, f, id));
                for t in 0..self.n {
                    if t == pos {
                        continue;
                    }
                    let key: Vec<usize> = verts.iter().copied().filter(|&w| w != verts[t]).collect();
                    if let Some((other, slot)) = open.remove(&key) {
                        nbr[t] = other;
                        if other >= first_new {
                            pending[other - first_new].nbr[slot] = id;
                        }
                    } else {
                        open.insert(key, (id, t));
                    }
                }
                pending.push(Pending { verts, nbr });
            }
        }
        if !open.is_empty() || pending.iter().any(|c| c.nbr.contains(&usize::MAX)) {
            return Err(Error::Internal(format!(
                "horizon of vertex {p} is not a closed ridge cycle"
            )));
        }
        for (nb, old, new) in relink {
            let slot = self.cells[nb]
                .nbr
                .iter()
                .position(|&x| x == old)
                .ok_or_else(|| Error::Internal(format!("cell {nb} lost its link to {old}")))?;
            self.cells[nb].nbr[slot] = new;
        }
        let planes: Vec<Plane> = pending
            .par_iter()
            .map(|c| self.plane(&c.verts))
            .collect::<Result<_>>()?;
        for (c, plane) in pending.into_iter().zip(planes) {
            self.cells.push(Cell {
                verts: c.verts,
                nbr: c.nbr,
                plane,
                alive: true,
            });
        }
        for &f in &visible_list {
            let cell = &mut self.cells[f];
            cell.alive = false;
            cell.plane.normal = Vec::new();
        }
        let mut next: Vec<usize> = alive.iter().copied().filter(|&c| !visible[c]).collect();
        next.extend(first_new..self.cells.len());
        Ok(next)
    }

    fn same_plane(&self, a: &Plane, b: &Plane) -> bool {
        let close64 = (a.offset64 - b.offset64).abs() <= FILTER
            && a.normal64.iter().zip(&b.normal64).all(|(x, y)| (x - y).abs() <= FILTER);
        if !close64 {
            return false;
        }
        let within = |x: &BigFloat, y: &BigFloat| self.arith.abs_cmp(&self.arith.sub(x, y), &self.eps).is_le();
        within(&a.offset, &b.offset) && a.normal.iter().zip(&b.normal).all(|(x, y)| within(x, y))
    }

    /// Merges coplanar neighbouring cells and certifies each facet against
    /// every vertex. Returns the facets with the smallest margin and the
    /// largest on-plane residual.
    fn merge_and_certify(&self, alive: &[usize], vertex_count: usize) -> Result<(Vec<Facet>, f64, f64)> {
        let mut parent: HashMap<usize, usize> = alive.iter().map(|&c| (c, c)).collect();
        fn find(parent: &mut HashMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while parent[&r] != r {
                r = parent[&r];
            }
            let mut y = x;
            while parent[&y] != r {
                let next = parent[&y];
                parent.insert(y, r);
                y = next;
            }
            r
        }
        for &c in alive {
            for &nb in &self.cells[c].nbr {
                if nb > c && self.same_plane(&self.cells[c].plane, &self.cells[nb].plane) {
                    let (rc, rn) = (find(&mut parent, c), find(&mut parent, nb));
                    if rc != rn {
                        parent.insert(rc.max(rn), rc.min(rn));
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for &c in alive {
            let r = find(&mut parent, c);
            groups.entry(r).or_default().push(c);
        }
        let mut groups: Vec<(usize, Vec<usize>)> = groups.into_iter().collect();
        groups.sort_unstable_by_key(|(r, _)| *r);

        let certified: Vec<(Facet, f64, f64)> = groups
            .par_iter()
            .map(|(rep, members)| {
                let mut verts: Vec<usize> = members
                    .iter()
                    .flat_map(|&c| self.cells[c].verts.iter().copied())
                    .collect();
                verts.sort_unstable();
                verts.dedup();
                let plane = &self.cells[*rep].plane;
                let mut margin = f64::INFINITY;
                let mut residual = 0f64;
                let mut on_plane = verts.iter().peekable();
                for q in 0..vertex_count {
                    let member = on_plane.next_if_eq(&&q).is_some();
                    if member {
                        let (d, s) = self.distance(plane, q);
                        if self.arith.abs_cmp(&s, &self.eps).is_gt() {
                            return Err(Error::Certification {
                                facet: verts.clone(),
                                reason: format!("vertex {q} is {d:e} off the merged hyperplane"),
                            });
                        }
                        residual = residual.max(d.abs());
                    } else {
                        let side = self.side(plane, q);
                        if side != Side::Below {
                            return Err(Error::Certification {
                                facet: verts.clone(),
                                reason: format!("vertex {q} is not strictly below the hyperplane ({side:?})"),
                            });
                        }
                        let fast: f64 = plane
                            .normal64
                            .iter()
                            .zip(&self.pts.fast[q])
                            .map(|(a, b)| a * b)
                            .sum::<f64>()
                            - plane.offset64;
                        let d = if fast < -FILTER {
                            fast
                        } else {
                            self.distance(plane, q).0
                        };
                        margin = margin.min(-d);
                    }
                }
                Ok((
                    Facet {
                        vertices: verts,
                        normal: plane.normal64.clone(),
                        offset: plane.offset64,
                    },
                    margin,
                    residual,
                ))
            })
            .collect::<Result<_>>()?;

        let min_margin = certified.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        let max_residual = certified.iter().map(|c| c.2).fold(0.0, f64::max);
        let mut facets: Vec<Facet> = certified.into_iter().map(|c| c.0).collect();
        facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        if facets.windows(2).any(|w| w[0].vertices == w[1].vertices) {
            return Err(Error::Internal("two merged facets share a vertex set".into()));
        }
        let mut covered = vec![false; vertex_count];
        facets.iter().flat_map(|f| &f.vertices).for_each(|&v| covered[v] = true);
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::Internal(format!("vertex {v} lies on no facet")));
        }
        let m = vertex_count / 2;
        let keys: std::collections::HashSet<&Vec<usize>> = facets.iter().map(|f| &f.vertices).collect();
        for f in &facets {
            let mut mirrored: Vec<usize> = f.vertices.iter().map(|&v| (v + m) % vertex_count).collect();
            mirrored.sort_unstable();
            if !keys.contains(&mirrored) {
                return Err(Error::Internal(format!(
                    "facet {:?} has no antipodal facet",
                    f.vertices
                )));
            }
        }
        Ok((facets, min_margin, max_residual))
    }
}

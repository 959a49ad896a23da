//! Signed subset vertices on the unit sphere and the polytope `P(V)` they span.

mod checks;
mod exact;
mod export;
mod hull;
pub(crate) mod real;
mod witness;

use std::fmt;

use astro_float::BigFloat;
use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{arg, Result};
use crate::subset::Subset;

pub use checks::{check_antipodal_disjoint, check_orthant_property, check_unit_norms};
pub use exact::{inner_rational, inner_vertices, support_value, ExactScalar};
pub use export::{lattice_to_json, lattice_to_off, LatticeDocument, VertexRecord};
pub use hull::{convex_hull, HullOptions, DEFAULT_EPS, DEFAULT_PRECISION};
pub use witness::{exhaustive_support_witness, smaller_support_witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `±A` embedded as the unit vector with coordinates `±1/√|A|` on `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedVertex {
    pub subset: Subset,
    pub sign: Sign,
}

impl SignedVertex {
    pub fn new(subset: Subset, sign: Sign) -> Self {
        SignedVertex { subset, sign }
    }

    pub fn positive(subset: Subset) -> Self {
        Self::new(subset, Sign::Plus)
    }

    pub fn opposite(self) -> Self {
        Self::new(self.subset, self.sign.flip())
    }

    /// Sign of coordinate `i` (1-based): `0` off the support.
    pub fn coordinate_sign(self, i: usize) -> i64 {
        if self.subset.contains(i) {
            self.sign.factor()
        } else {
            0
        }
    }
}

impl fmt::Display for SignedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{s}{}", self.subset)
    }
}

/// Floating embedding of `v` in `R^n`.
pub fn embed(v: SignedVertex, n: usize) -> Result<Vec<f64>> {
    if v.subset.is_empty() || v.subset.max_element() > n {
        return arg(format!("{v} is not a nonempty subset of 1..={n}"));
    }
    let c = v.sign.factor() as f64 / (v.subset.len() as f64).sqrt();
    Ok((1..=n).map(|i| if v.subset.contains(i) { c } else { 0.0 }).collect())
}

/// Embedding at `precision` bits.
pub fn embed_precise(v: SignedVertex, n: usize, precision: usize) -> Result<Vec<BigFloat>> {
    if v.subset.is_empty() || v.subset.max_element() > n {
        return arg(format!("{v} is not a nonempty subset of 1..={n}"));
    }
    let a = real::Arith::new(precision);
    let mut c = a.inv_sqrt(v.subset.len() as u64);
    if v.sign == Sign::Minus {
        c = c.neg();
    }
    Ok((1..=n)
        .map(|i| if v.subset.contains(i) { c.clone() } else { a.zero() })
        .collect())
}

/// One facet of `P(V)`: its vertex indices (ascending) and supporting
/// hyperplane `⟨normal, x⟩ = offset` with unit outer normal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Facet {
    pub vertices: Vec<usize>,
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// Vertices and facets of `conv(V ⊔ −V)`.
///
/// Vertex `i < m` is `+V[i]` and vertex `m + i` is `−V[i]`, where `V` is in
/// canonical order and `m = |V|`.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    n: usize,
    vertices: Vec<SignedVertex>,
    facets: Vec<Facet>,
    facet_sets: Vec<FixedBitSet>,
    incidence: Vec<Vec<usize>>,
    precision: usize,
    eps: f64,
    min_margin: f64,
    max_residual: f64,
}

impl FaceLattice {
    /// Assembles a lattice from combinatorial data. The vertex list must be
    /// `+V` followed by `−V` in the same order. Facets are sorted; margins
    /// are recorded as given (NaN when unknown).
    pub fn from_parts(
        n: usize,
        vertices: Vec<SignedVertex>,
        mut facets: Vec<Facet>,
        precision: usize,
        eps: f64,
        min_margin: f64,
        max_residual: f64,
    ) -> Result<Self> {
        if !vertices.len().is_multiple_of(2) {
            return arg("vertex list must hold antipodal pairs");
        }
        let m = vertices.len() / 2;
        for i in 0..m {
            if vertices[i].sign != Sign::Plus || vertices[m + i] != vertices[i].opposite() {
                return arg(format!("vertex {i} and {} are not an antipodal pair", m + i));
            }
        }
        if let Some(v) = vertices
            .iter()
            .find(|v| v.subset.is_empty() || v.subset.max_element() > n)
        {
            return arg(format!("vertex {v} outside 1..={n}"));
        }
        for f in &mut facets {
            f.vertices.sort_unstable();
            f.vertices.dedup();
            if f.vertices.iter().any(|&v| v >= vertices.len()) {
                return arg("facet references an unknown vertex");
            }
        }
        facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        let facet_sets = facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(vertices.len());
                s.extend(f.vertices.iter().copied());
                s
            })
            .collect();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (fi, f) in facets.iter().enumerate() {
            for &v in &f.vertices {
                incidence[v].push(fi);
            }
        }
        Ok(FaceLattice {
            n,
            vertices,
            facets,
            facet_sets,
            incidence,
            precision,
            eps,
            min_margin,
            max_residual,
        })
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[SignedVertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_set(&self, facet: usize) -> &FixedBitSet {
        &self.facet_sets[facet]
    }

    pub fn facet_sets(&self) -> &[FixedBitSet] {
        &self.facet_sets
    }

    /// Facets containing vertex `v`.
    pub fn facets_at(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Index of `−v`.
    pub fn antipode(&self, v: usize) -> usize {
        let m = self.vertices.len() / 2;
        (v + m) % (2 * m)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Smallest distance by which a vertex off a facet lies below that
    /// facet's hyperplane.
    pub fn min_margin(&self) -> f64 {
        self.min_margin
    }

    /// Largest distance from a facet's hyperplane to one of its vertices.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    /// Facet vertex lists, for comparing combinatorial output.
    pub fn combinatorics(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.vertices.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[usize], sign: Sign) -> SignedVertex {
        SignedVertex::new(Subset::from_elements(v.iter().copied()).unwrap(), sign)
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed(sv(&[1], Sign::Plus), 2).unwrap(), vec![1.0, 0.0]);
        let h = 1.0 / 2f64.sqrt();
        assert_eq!(embed(sv(&[1, 2], Sign::Plus), 2).unwrap(), vec![h, h]);
        assert_eq!(embed(sv(&[1, 3], Sign::Minus), 3).unwrap(), vec![-h, 0.0, -h]);
        assert!(embed(sv(&[3], Sign::Plus), 2).is_err());
    }

    #[test]
    fn embedded_norm_is_one() {
        for bits in 1u64..128 {
            let v = SignedVertex::positive(Subset::from_bits(bits));
            let e = embed(v, 7).unwrap();
            let norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 2f64.powi(-40));

            let a = real::Arith::new(256);
            let p = embed_precise(v.opposite(), 7, 256).unwrap();
            let err = a.sub(&a.dot(&p, &p), &a.int(1));
            assert!(real::to_f64(&err).abs() < 2f64.powi(-240));
        }
    }

    #[test]
    fn display_shows_sign() {
        assert_eq!(sv(&[1, 3], Sign::Minus).to_string(), "-{1,3}");
    }
}

//! Integer and mod-2 simplicial homology, used to certify that quotient
//! complexes look like real projective space.

mod chain;
mod fixtures;
mod manifold;
mod matrix;
mod snf;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::triangulation::SimplicialComplex;

pub use chain::{boundary_matrices, ChainComplexData};
pub use fixtures::{rp2_six_vertex, simplex_boundary};
pub use manifold::{check_pseudomanifold, check_vertex_links, classify_low_dimensional, Classification};
pub use matrix::IntMatrix;
pub use snf::{dense_smith, rank_gf2, rank_mod_p, smith_normal_form, SmithForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    Z,
    Z2,
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Coefficients::Z => "Z",
            Coefficients::Z2 => "Z2",
        })
    }
}

/// `H_d ≅ Z^rank ⊕ ⨁ Z/t` (over `Z/2`, a vector space of dimension `rank`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDim {
    pub d: usize,
    pub rank: u64,
    #[serde(serialize_with = "integers")]
    pub torsion: Vec<BigInt>,
}

fn integers<S: Serializer>(values: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        match v.to_u64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub dims: Vec<HomologyDim>,
    pub euler: i64,
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<u64> {
        self.dims.iter().map(|d| d.rank).collect()
    }

    /// Compact form such as `Z, Z/2, 0, Z`.
    pub fn summary(&self) -> String {
        let ring = match self.coefficients {
            Coefficients::Z => "Z",
            Coefficients::Z2 => "Z/2",
        };
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|h| {
                let mut terms: Vec<String> = Vec::new();
                match h.rank {
                    0 => {}
                    1 => terms.push(ring.to_string()),
                    r => terms.push(format!("{ring}^{r}")),
                }
                terms.extend(h.torsion.iter().map(|t| format!("Z/{t}")));
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            })
            .collect();
        parts.join(", ")
    }
}

pub fn homology(k: &SimplicialComplex, coefficients: Coefficients) -> Result<HomologyResult> {
    homology_from_chain(&boundary_matrices(k)?, coefficients)
}

/// Homology from precomputed boundary maps. Ranks of the boundary maps are
/// computed concurrently; the Euler–Poincaré identity is verified.
pub fn homology_from_chain(chain: &ChainComplexData, coefficients: Coefficients) -> Result<HomologyResult> {
    let f = chain.f_vector();
    let top = f.len();
    // ranks[d] = rank ∂_d, with ∂_0 = ∂_{top} = 0.
    let forms: Vec<(usize, Vec<BigInt>)> = (1..top)
        .into_par_iter()
        .map(|d| {
            let m = chain.boundary(d).expect("boundary in range");
            match coefficients {
                Coefficients::Z => {
                    let snf = smith_normal_form(m);
                    (snf.rank(), snf.torsion())
                }
                Coefficients::Z2 => (rank_gf2(m), Vec::new()),
            }
        })
        .collect();
    let rank = |d: usize| if d == 0 || d >= top { 0 } else { forms[d - 1].0 as u64 };
    let mut dims = Vec::with_capacity(top);
    for d in 0..top {
        let betti = f[d]
            .checked_sub(rank(d) + rank(d + 1))
            .ok_or_else(|| Error::Internal(format!("boundary ranks exceed the chain group in dimension {d}")))?;
        let torsion = if d + 1 < top { forms[d].1.clone() } else { Vec::new() };
        dims.push(HomologyDim {
            d,
            rank: betti,
            torsion,
        });
    }
    let euler = crate::triangulation::euler_of(&f);
    let from_betti: i64 = dims
        .iter()
        .map(|h| if h.d % 2 == 0 { h.rank as i64 } else { -(h.rank as i64) })
        .sum();
    if euler != from_betti {
        return Err(Error::Internal(format!(
            "Euler–Poincaré identity fails: faces give {euler}, Betti numbers give {from_betti}"
        )));
    }
    Ok(HomologyResult {
        coefficients,
        dims,
        euler,
    })
}

/// Homology of `RP^m`.
pub fn expected_rp_homology(m: usize, coefficients: Coefficients) -> HomologyResult {
    let dims: Vec<HomologyDim> = (0..=m)
        .map(|d| {
            let (rank, torsion) = match coefficients {
                Coefficients::Z2 => (1, Vec::new()),
                Coefficients::Z if d == 0 => (1, Vec::new()),
                Coefficients::Z if d == m => (u64::from(d % 2 == 1), Vec::new()),
                Coefficients::Z if d % 2 == 1 => (0, vec![BigInt::from(2)]),
                Coefficients::Z => (0, Vec::new()),
            };
            HomologyDim { d, rank, torsion }
        })
        .collect();
    let euler = dims
        .iter()
        .map(|h| if h.d % 2 == 0 { h.rank as i64 } else { -(h.rank as i64) })
        .sum();
    HomologyResult {
        coefficients,
        dims,
        euler,
    }
}

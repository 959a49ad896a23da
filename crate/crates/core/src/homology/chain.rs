use std::collections::HashMap;

use rayon::prelude::*;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::triangulation::SimplicialComplex;

/// Simplicial chain complex of a complex: the faces of each dimension in
/// lexicographic order and the boundary maps between them.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    faces: Vec<Vec<Vec<usize>>>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplexData {
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<u64> {
        self.faces.iter().map(|f| f.len() as u64).collect()
    }

    /// `∂_d : C_d → C_{d−1}` for `1 ≤ d ≤ dim`.
    pub fn boundary(&self, d: usize) -> Option<&IntMatrix> {
        d.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }
}

/// Boundary matrices with `∂[v₀…v_d] = Σ (−1)^i [v₀…v̂ᵢ…v_d]`. Verifies
/// `∂_{d−1} ∂_d = 0`.
pub fn boundary_matrices(k: &SimplicialComplex) -> Result<ChainComplexData> {
    let faces = k.faces_by_dimension();
    let boundaries: Vec<IntMatrix> = (1..faces.len())
        .into_par_iter()
        .map(|d| {
            let index: HashMap<&[usize], usize> = faces[d - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            let columns = faces[d]
                .iter()
                .map(|f| {
                    (0..f.len())
                        .map(|i| {
                            let sub: Vec<usize> =
                                f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                            (index[sub.as_slice()], if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect();
            IntMatrix::from_columns(faces[d - 1].len(), columns)
        })
        .collect();
    let bad = (2..faces.len()).into_par_iter().find_any(|&d| {
        boundaries[d - 2]
            .checked_mul(&boundaries[d - 1])
            .is_none_or(|p| !p.is_zero())
    });
    if let Some(d) = bad {
        return Err(Error::Internal(format!(
            "boundary maps ∂{} ∂{d} do not compose to zero",
            d - 1
        )));
    }
    Ok(ChainComplexData { faces, boundaries })
}

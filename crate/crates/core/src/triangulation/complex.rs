use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{arg, Result};

/// A finite simplicial complex given by its maximal faces over labeled
/// vertices `0..labels.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Faces are sorted and deduplicated. Rejects empty faces, repeated or
    /// unknown vertices within a face, and faces contained in another.
    pub fn new(labels: Vec<String>, faces: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut faces: Vec<Vec<usize>> = faces.into_iter().collect();
        for f in &mut faces {
            f.sort_unstable();
            if f.is_empty() {
                return arg("empty face");
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return arg(format!("face {f:?} repeats a vertex"));
            }
            if f[f.len() - 1] >= labels.len() {
                return arg(format!("face {f:?} references a vertex beyond {}", labels.len()));
            }
        }
        faces.sort_unstable();
        faces.dedup();
        let pure = faces.windows(2).all(|w| w[0].len() == w[1].len());
        if !pure {
            for f in &faces {
                if let Some(g) = faces.iter().find(|g| g.len() > f.len() && is_sorted_subset(f, g)) {
                    return arg(format!("face {f:?} is contained in {g:?}"));
                }
            }
        }
        Ok(SimplicialComplex { labels, faces })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Maximal faces, each sorted, in lexicographic order.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// All maximal faces have the same cardinality.
    pub fn is_pure(&self) -> bool {
        self.faces.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Largest face dimension; `None` for the complex with no faces.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    /// Every face of the closure, grouped by dimension and sorted
    /// lexicographically within each dimension.
    pub fn faces_by_dimension(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(dim) = self.dimension() else { return Vec::new() };
        let mut sets: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); dim + 1];
        for f in &self.faces {
            let k = f.len();
            assert!(k < 64, "closure of a {k}-vertex face is not enumerable");
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                sets[sub.len() - 1].insert(sub);
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<Vec<usize>> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<u64> {
        self.faces_by_dimension().iter().map(|d| d.len() as u64).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    /// `{ "vertices": [labels], "facets": [[indices]] }` with 0-based indices.
    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.labels.clone(),
            facets: self.faces.clone(),
        }
    }

    /// One maximal face per line, space-separated 1-based indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.faces {
            let line: Vec<String> = f.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

pub(crate) fn alternating_sum(f: &[u64]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

/// Fixed-point-free pairing of vertex labels, `v ↔ image(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    image: Vec<usize>,
}

impl Involution {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        for (v, &w) in image.iter().enumerate() {
            if w >= image.len() {
                return arg(format!("vertex {v} maps to unknown vertex {w}"));
            }
            if w == v {
                return arg(format!("vertex {v} is fixed"));
            }
            if image[w] != v {
                return arg(format!("pairing is not an involution at vertex {v}"));
            }
        }
        Ok(Involution { image })
    }

    /// Builds the involution on `0..vertex_count` from unordered pairs; every
    /// vertex must occur in exactly one pair.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut image = vec![usize::MAX; vertex_count];
        for &(a, b) in pairs {
            if a >= vertex_count || b >= vertex_count {
                return arg(format!("pair ({a}, {b}) outside 0..{vertex_count}"));
            }
            if image[a] != usize::MAX || image[b] != usize::MAX {
                return arg(format!("pair ({a}, {b}) reuses a vertex"));
            }
            image[a] = b;
            image[b] = a;
        }
        if let Some(v) = image.iter().position(|&w| w == usize::MAX) {
            return arg(format!("vertex {v} is unpaired"));
        }
        Self::new(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    /// Sorted image of a face.
    pub fn apply_face(&self, face: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = face.iter().map(|&v| self.image[v]).collect();
        out.sort_unstable();
        out
    }
}

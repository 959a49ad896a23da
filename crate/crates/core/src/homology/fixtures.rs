use crate::triangulation::SimplicialComplex;

/// The 6-vertex triangulation of the real projective plane (the
/// hemi-icosahedron): vertex 0 is surrounded by the pentagon 1,2,3,4,5.
pub fn rp2_six_vertex() -> SimplicialComplex {
    let faces = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    let labels = (1..=6).map(|i| i.to_string()).collect();
    SimplicialComplex::new(labels, faces.iter().map(|f| f.to_vec())).expect("valid fixture")
}

/// Boundary of the `d`-simplex, a triangulated `(d−1)`-sphere.
///
/// # Panics
/// If `d` is zero.
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    assert!(d >= 1, "the 0-simplex has empty boundary");
    let labels = (0..=d).map(|i| i.to_string()).collect();
    let faces = (0..=d).map(|omit| (0..=d).filter(|&v| v != omit).collect::<Vec<_>>());
    SimplicialComplex::new(labels, faces).expect("valid simplex boundary")
}

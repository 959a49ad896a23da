use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::exact::{inner_vertices, ExactScalar};
use super::FaceLattice;
use crate::report::{ConditionReport, Violation};

/// Every facet lies in one closed coordinate orthant: no coordinate takes
/// both signs among the facet's vertices. Purely combinatorial, since the
/// sign of coordinate `i` of `±A` is `±[i ∈ A]`.
pub fn check_orthant_property(lattice: &FaceLattice) -> ConditionReport {
    let n = lattice.n();
    let vertices = lattice.vertices();
    let violations: Vec<Violation> = lattice
        .facets()
        .par_iter()
        .enumerate()
        .flat_map_iter(|(fi, facet)| {
            (1..=n).filter_map(move |i| {
                let mut pos = false;
                let mut neg = false;
                for &v in &facet.vertices {
                    match vertices[v].coordinate_sign(i) {
                        1 => pos = true,
                        -1 => neg = true,
                        _ => {}
                    }
                }
                (pos && neg).then_some(Violation::FacetOutsideOrthant {
                    facet: fi,
                    coordinate: i,
                })
            })
        })
        .collect();
    ConditionReport::from_violations("coordinate_orthant", lattice.facets().len() as u64, violations)
}

/// For every vertex `A`, no facet through `A` shares a vertex with a facet
/// through `−A`. Checking facets suffices: a common point of two faces
/// implies a common vertex of facets containing them.
pub fn check_antipodal_disjoint(lattice: &FaceLattice) -> ConditionReport {
    let nv = lattice.vertex_count();
    let star = |v: usize| {
        let mut s = FixedBitSet::with_capacity(nv);
        for &f in lattice.facets_at(v) {
            s.union_with(lattice.facet_set(f));
        }
        s
    };
    let violations: Vec<Violation> = (0..nv)
        .into_par_iter()
        .filter_map(|v| {
            let opposite = lattice.antipode(v);
            let common = star(v).intersection(&star(opposite)).next()?;
            // Name one offending facet pair.
            let facet = *lattice
                .facets_at(v)
                .iter()
                .find(|&&f| lattice.facet_set(f).contains(common))?;
            let opposite_facet = *lattice
                .facets_at(opposite)
                .iter()
                .find(|&&f| lattice.facet_set(f).contains(common))?;
            Some(Violation::AntipodalFacetsMeet {
                vertex: v,
                facet,
                opposite_facet,
                common_vertex: common,
            })
        })
        .collect();
    ConditionReport::from_violations("antipodal_disjoint", nv as u64, violations)
}

/// `⟨v, v⟩ = 1` exactly for every vertex. Returns the offending vertex
/// indices.
pub fn check_unit_norms(lattice: &FaceLattice) -> Vec<usize> {
    let one = ExactScalar::one();
    lattice
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| inner_vertices(v, v) != one)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SubsetFamily;
    use crate::geometry::{convex_hull, Facet, HullOptions, Sign, SignedVertex};
    use crate::subset::Subset;

    fn s(v: &[usize]) -> Subset {
        Subset::from_elements(v.iter().copied()).unwrap()
    }

    fn hexagon() -> FaceLattice {
        let v = SubsetFamily::new(2, [s(&[1]), s(&[2]), s(&[1, 2])]).unwrap();
        convex_hull(&v, &HullOptions::default()).unwrap()
    }

    #[test]
    fn hexagon_edges_lie_in_orthants() {
        let hex = hexagon();
        let r = check_orthant_property(&hex);
        assert!(r.passed());
        assert_eq!(r.checked(), 6);
        // The edge between +{1} (vertex 0) and +{1,2} (vertex 2).
        assert!(hex.combinatorics().contains(&vec![0, 2]));
    }

    #[test]
    fn facet_with_both_signs_of_a_coordinate_fails() {
        let vertices = vec![
            SignedVertex::new(s(&[1]), Sign::Plus),
            SignedVertex::new(s(&[1]), Sign::Minus),
        ];
        let bogus = Facet {
            vertices: vec![0, 1],
            normal: vec![0.0],
            offset: 0.0,
        };
        let lattice = FaceLattice::from_parts(1, vertices, vec![bogus], 256, 1e-20, f64::NAN, f64::NAN).unwrap();
        let r = check_orthant_property(&lattice);
        assert!(!r.passed());
        assert_eq!(
            r.violations(),
            &[Violation::FacetOutsideOrthant {
                facet: 0,
                coordinate: 1
            }]
        );
    }

    #[test]
    fn hexagon_is_antipodally_separated() {
        assert!(check_antipodal_disjoint(&hexagon()).passed());
    }

    #[test]
    fn square_fails_antipodal_disjointness() {
        // conv{±e1, ±e2}: edges {e1, e2} and {−e1, e2} share e2.
        let v = SubsetFamily::new(2, [s(&[1]), s(&[2])]).unwrap();
        let square = convex_hull(&v, &HullOptions::default()).unwrap();
        assert_eq!(square.facets().len(), 4);
        let r = check_antipodal_disjoint(&square);
        assert!(!r.passed());
        assert_eq!(r.violation_count(), 4);
        match &r.violations()[0] {
            Violation::AntipodalFacetsMeet {
                vertex: 0,
                common_vertex,
                ..
            } => {
                assert!(*common_vertex == 1 || *common_vertex == 3)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unit_norms_are_exact() {
        assert!(check_unit_norms(&hexagon()).is_empty());
    }
}

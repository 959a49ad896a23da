//! The hull against a brute-force facet enumeration in `f64`.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use rpforge_core::family::{build_grouped_family, make_partition};
use rpforge_core::geometry::{
    check_antipodal_disjoint, check_orthant_property, check_unit_norms, convex_hull, embed, lattice_to_off, HullOptions,
};
use rpforge_core::{Error, SubsetFamily};

/// Facets as the maximal vertex sets lying on a supporting hyperplane
/// spanned by `n` affinely independent vertices.
fn brute_force_facets(points: &[Vec<f64>]) -> BTreeSet<Vec<usize>> {
    let n = points[0].len();
    let mut out = BTreeSet::new();
    let mut combo: Vec<usize> = (0..n).collect();
    loop {
        if let Some(normal) = null_vector(&combo.iter().map(|&i| points[i].clone()).collect::<Vec<_>>()) {
            let offset: f64 = dot(&normal, &points[combo[0]]);
            let values: Vec<f64> = points.iter().map(|p| dot(&normal, p) - offset).collect();
            let above = values.iter().any(|&v| v > 1e-9);
            let below = values.iter().any(|&v| v < -1e-9);
            if above != below {
                let on: Vec<usize> = (0..points.len()).filter(|&i| values[i].abs() <= 1e-9).collect();
                out.insert(on);
            }
        }
        // Next combination in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] < points.len() - n + i {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..n {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Normal of the affine hull of `n` points in `R^n`, if it is a hyperplane.
fn null_vector(pts: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = pts[0].len();
    let mut rows: Vec<Vec<f64>> = pts[1..]
        .iter()
        .map(|p| (0..n).map(|c| p[c] - pts[0][c]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(best) = (r..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs())) else {
            break;
        };
        if rows[best][c].abs() < 1e-9 {
            continue;
        }
        rows.swap(r, best);
        for k in 0..rows.len() {
            if k != r {
                let f = rows[k][c] / rows[r][c];
                for j in 0..n {
                    rows[k][j] -= f * rows[r][j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut x = vec![0.0; n];
    x[free] = 1.0;
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = -rows[row][free] / rows[row][c];
    }
    Some(x)
}

fn families(n: usize) -> Vec<SubsetFamily> {
    let mut out: Vec<SubsetFamily> = (1..=n)
        .map(|k| build_grouped_family(&make_partition(n, k).unwrap()))
        .collect();
    out.dedup();
    out
}

#[test]
fn facets_match_brute_force_up_to_dimension_four() {
    for n in 2..=4 {
        for v in families(n) {
            let hull = convex_hull(&v, &HullOptions::default()).unwrap();
            let points: Vec<Vec<f64>> = hull.vertices().iter().map(|&s| embed(s, n).unwrap()).collect();
            let expected = brute_force_facets(&points);
            let got: BTreeSet<Vec<usize>> = hull.combinatorics().into_iter().collect();
            assert_eq!(got, expected, "n = {n}, |V| = {}", v.len());
        }
    }
}

#[test]
fn known_sizes() {
    let hex = convex_hull(&SubsetFamily::power_set(2).unwrap(), &HullOptions::default()).unwrap();
    assert_eq!(hex.facets().len(), 6);
    let p3 = convex_hull(&SubsetFamily::power_set(3).unwrap(), &HullOptions::default()).unwrap();
    assert_eq!(p3.vertex_count(), 14);
    // Every facet of the full power-set polytope is a simplex: (n+1)·n! of them.
    assert_eq!(p3.facets().len(), 24);
    assert!(p3.facets().iter().all(|f| f.vertices.len() == 3));
    let p4 = convex_hull(&SubsetFamily::power_set(4).unwrap(), &HullOptions::default()).unwrap();
    assert_eq!(p4.facets().len(), 120);
}

#[test]
fn facet_conditions_hold_for_grouped_families() {
    for n in 2..=5 {
        for v in families(n) {
            let hull = convex_hull(&v, &HullOptions::default()).unwrap();
            assert!(check_unit_norms(&hull).is_empty());
            assert!(check_orthant_property(&hull).passed(), "n = {n}");
            assert!(check_antipodal_disjoint(&hull).passed(), "n = {n}");
            assert!(hull.min_margin() > 1e3 * hull.eps());
        }
    }
}

#[test]
fn doubling_precision_keeps_the_combinatorics() {
    let v = build_grouped_family(&make_partition(5, 3).unwrap());
    let a = convex_hull(&v, &HullOptions::default()).unwrap();
    let b = convex_hull(
        &v,
        &HullOptions {
            precision: 512,
            eps: 2f64.powi(-128),
        },
    )
    .unwrap();
    assert_eq!(a.combinatorics(), b.combinatorics());
}

#[test]
fn invalid_options_and_families() {
    let v = SubsetFamily::power_set(3).unwrap();
    assert!(matches!(
        convex_hull(
            &v,
            &HullOptions {
                precision: 32,
                eps: 1e-20
            }
        ),
        Err(Error::Argument(_))
    ));
    assert!(matches!(
        convex_hull(
            &v,
            &HullOptions {
                precision: 256,
                eps: 0.0
            }
        ),
        Err(Error::Argument(_))
    ));
    let no_singleton = SubsetFamily::new(2, [rpforge_core::Subset::singleton(1)]).unwrap();
    assert!(matches!(
        convex_hull(&no_singleton, &HullOptions::default()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn one_dimensional_polytope() {
    let hull = convex_hull(&SubsetFamily::power_set(1).unwrap(), &HullOptions::default()).unwrap();
    assert_eq!(hull.combinatorics(), vec![vec![0], vec![1]]);
    assert!(check_antipodal_disjoint(&hull).passed());
}

#[test]
fn off_export_counts() {
    let v = build_grouped_family(&make_partition(4, 2).unwrap());
    let hull = convex_hull(&v, &HullOptions::default()).unwrap();
    let off = lattice_to_off(&hull, 10);
    let mut lines = off.lines();
    assert_eq!(lines.next(), Some("nOFF"));
    assert_eq!(lines.next(), Some("4"));
    assert_eq!(lines.next().unwrap(), format!("28 {} 0", hull.facets().len()));
}

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use super::{embed, FaceLattice, Sign};
use crate::subset::Subset;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VertexRecord {
    pub set: Subset,
    pub sign: i8,
}

/// JSON form of a face lattice: vertices as signed element sets, facets as
/// vertex index lists.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LatticeDocument {
    pub n: usize,
    pub vertices: Vec<VertexRecord>,
    pub facets: Vec<Vec<usize>>,
}

pub fn lattice_to_json(lattice: &FaceLattice) -> LatticeDocument {
    LatticeDocument {
        n: lattice.n(),
        vertices: lattice
            .vertices()
            .iter()
            .map(|v| VertexRecord {
                set: v.subset,
                sign: if v.sign == Sign::Plus { 1 } else { -1 },
            })
            .collect(),
        facets: lattice.combinatorics(),
    }
}

/// `±1/√k` rounded to `digits` decimal places, computed with integers.
fn coordinate(sign: Sign, k: usize, digits: usize) -> String {
    // floor(10^(d+1)/√k) = floor(√(floor(10^(2d+2)/k))), then round the last digit.
    let scale = BigUint::from(10u32).pow(2 * digits as u32 + 2);
    let truncated = (scale / BigUint::from(k)).sqrt();
    let rounded = (truncated + BigUint::from(5u32)) / BigUint::from(10u32);
    let raw = rounded.to_string();
    let raw = format!("{raw:0>width$}", width = digits + 1);
    let (int, frac) = raw.split_at(raw.len() - digits);
    let sign = if sign == Sign::Minus { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// OFF text (`nOFF` with a dimension line unless `n = 3`). Coordinates carry
/// `digits` decimal places. Facets of a 3-polytope are listed in cyclic order
/// around their centroid; elsewhere in ascending index order.
pub fn lattice_to_off(lattice: &FaceLattice, digits: usize) -> String {
    let n = lattice.n();
    let mut out = String::new();
    if n == 3 {
        out.push_str("OFF\n");
    } else {
        let _ = writeln!(out, "nOFF\n{n}");
    }
    let _ = writeln!(out, "{} {} 0", lattice.vertex_count(), lattice.facets().len());
    for v in lattice.vertices() {
        let k = v.subset.len();
        let coords: Vec<String> = (1..=n)
            .map(|i| {
                if v.subset.contains(i) {
                    coordinate(v.sign, k, digits)
                } else {
                    "0".into()
                }
            })
            .collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    for f in lattice.facets() {
        let order = if n == 3 {
            cyclic_order(lattice, &f.vertices, &f.normal)
        } else {
            f.vertices.clone()
        };
        let idx: Vec<String> = order.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{} {}", order.len(), idx.join(" "));
    }
    out
}

fn cyclic_order(lattice: &FaceLattice, verts: &[usize], normal: &[f64]) -> Vec<usize> {
    let pts: Vec<Vec<f64>> = verts
        .iter()
        .map(|&v| embed(lattice.vertices()[v], 3).expect("lattice vertices embed"))
        .collect();
    let centroid: Vec<f64> = (0..3)
        .map(|c| pts.iter().map(|p| p[c]).sum::<f64>() / pts.len() as f64)
        .collect();
    let e1: Vec<f64> = (0..3).map(|c| pts[0][c] - centroid[c]).collect();
    let e2 = [
        normal[1] * e1[2] - normal[2] * e1[1],
        normal[2] * e1[0] - normal[0] * e1[2],
        normal[0] * e1[1] - normal[1] * e1[0],
    ];
    let mut keyed: Vec<(f64, usize)> = verts
        .iter()
        .zip(&pts)
        .map(|(&v, p)| {
            let d: Vec<f64> = (0..3).map(|c| p[c] - centroid[c]).collect();
            let x: f64 = d.iter().zip(&e1).map(|(a, b)| a * b).sum();
            let y: f64 = d.iter().zip(&e2).map(|(a, b)| a * b).sum();
            (y.atan2(x), v)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, v)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SubsetFamily;
    use crate::geometry::{convex_hull, HullOptions};

    #[test]
    fn coordinates_are_correctly_rounded() {
        assert_eq!(coordinate(Sign::Plus, 1, 3), "1.000");
        assert_eq!(coordinate(Sign::Plus, 2, 5), "0.70711");
        assert_eq!(coordinate(Sign::Minus, 3, 17), "-0.57735026918962576");
        assert_eq!(coordinate(Sign::Plus, 4, 2), "0.50");
        assert_eq!(coordinate(Sign::Plus, 2, 30), "0.707106781186547524400844362105");
    }

    #[test]
    fn hexagon_exports() {
        let v = SubsetFamily::power_set(2).unwrap();
        let hull = convex_hull(&v, &HullOptions::default()).unwrap();
        let doc = lattice_to_json(&hull);
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["vertices"][2], serde_json::json!({"set": [1, 2], "sign": 1}));
        assert_eq!(json["facets"].as_array().unwrap().len(), 6);

        let off = lattice_to_off(&hull, 17);
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(&lines[..3], &["nOFF", "2", "6 6 0"]);
        assert_eq!(lines[3], "1.00000000000000000 0");
        assert_eq!(lines.len(), 3 + 6 + 6);
    }

    #[test]
    fn three_dimensional_off_lists_polygons_cyclically() {
        let v = SubsetFamily::power_set(3).unwrap();
        let hull = convex_hull(&v, &HullOptions::default()).unwrap();
        let off = lattice_to_off(&hull, 6);
        assert!(off.starts_with("OFF\n14 "));
        for line in off.lines().skip(2 + 14) {
            let idx: Vec<usize> = line.split(' ').skip(1).map(|t| t.parse().unwrap()).collect();
            // Consecutive vertices of a listed polygon are joined by an edge of
            // the facet, which for a triangle is automatic.
            assert!(idx.len() >= 3);
        }
    }
}

//! Periodic all-marked diagrams of orientable surface-unknots of odd genus.
//!
//! The shadow is a necklace of `2k` circles in which every circle clasps each of
//! its two neighbours once (two crossings per clasp). For `k = 1` this is the
//! `(2,4)` torus link shadow. Markers alternate by circle: all vertices owned by an
//! even circle get one marker type, those owned by an odd circle the other.

use thiserror::Error;

use crate::diagram::{Diagram, VertexKind};
use crate::epd::EpdCode;
use crate::planar_map::PlaneMap;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("the genus family starts at k = 1 (got {0})")]
pub struct FamilyError(pub usize);

/// Necklace of `circles >= 2` circles. Vertex `2i` is the outer and `2i + 1` the
/// inner crossing of circle `i` with circle `i + 1`; circle `i` uses slots 0 and 2
/// of the vertices it owns.
pub fn necklace_shadow(circles: usize) -> PlaneMap {
    assert!(circles >= 2);
    let n = circles;
    let outer = |i: usize| 2 * (i % n);
    let inner = |i: usize| 2 * (i % n) + 1;
    // secondary strand: outer vertices enter at slot 1, inner vertices at slot 3
    let sec_in = |v: usize| 4 * v + if v % 2 == 0 { 1 } else { 3 };
    let sec_out = |v: usize| 4 * v + if v % 2 == 0 { 3 } else { 1 };
    let prim_in = |v: usize| 4 * v;
    let prim_out = |v: usize| 4 * v + 2;
    let mut opp = vec![0; 8 * n];
    let mut link = |a: usize, b: usize| {
        opp[a] = b;
        opp[b] = a;
    };
    for i in 0..n {
        let p = (i + n - 1) % n;
        link(sec_out(outer(p)), prim_in(outer(i)));
        link(prim_out(outer(i)), prim_in(inner(i)));
        link(prim_out(inner(i)), sec_in(inner(p)));
        link(sec_out(inner(p)), sec_in(outer(p)));
    }
    PlaneMap::from_pairing(opp).expect("necklace is a connected spherical map")
}

/// Marked necklace with `4k` vertices; base surface of Euler characteristic `4 - 4k`.
pub fn higher_genus_diagram(k: usize) -> Result<Diagram, FamilyError> {
    if k == 0 {
        return Err(FamilyError(k));
    }
    let map = necklace_shadow(2 * k);
    let kinds = (0..4 * k)
        .map(|v| VertexKind::Marker { plus: ((v / 2) % 2 == 0) as u8 })
        .collect();
    Ok(Diagram::new(map, kinds))
}

pub fn higher_genus_hard_diagram(k: usize) -> Result<EpdCode, FamilyError> {
    Ok(higher_genus_diagram(k)?.to_epd().normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::is_hard;
    use crate::planar_map::canonical_code;
    use crate::surface::SurfaceClass;

    #[test]
    fn k_zero_rejected() {
        assert_eq!(higher_genus_hard_diagram(0), Err(FamilyError(0)));
    }

    #[test]
    fn two_circles_is_torus_link_shadow() {
        let shadow = necklace_shadow(2);
        let mut census: Vec<usize> = shadow.faces().iter().map(|f| f.size()).collect();
        census.sort_unstable();
        assert_eq!(census, vec![2, 2, 2, 2, 4, 4]);
        assert!(shadow.is_prime_reduced_shadow());
    }

    #[test]
    fn necklaces_are_prime() {
        for c in 2..8 {
            let s = necklace_shadow(c);
            assert!(s.is_prime_reduced_shadow(), "{c}");
            assert_eq!(s.circuits().len(), c);
        }
    }

    #[test]
    fn family_members() {
        for k in 1..=3 {
            let code = higher_genus_hard_diagram(k).unwrap();
            assert_eq!(code.len(), 4 * k);
            assert_eq!(code.marker_count(), 4 * k);
            assert!(is_hard(&code).unwrap());
            let class = SurfaceClass::of_code(&code);
            assert_eq!(class, SurfaceClass { components: 1, euler: 4 - 4 * k as i64, orientable: true });
        }
    }

    #[test]
    fn code_round_trips_to_same_map() {
        let d = higher_genus_diagram(2).unwrap();
        let code = higher_genus_hard_diagram(2).unwrap();
        assert_eq!(canonical_code(&code.to_map(), true), canonical_code(&d.map, true));
    }
}

//! Yoshikawa move opportunities that do not increase the crossing count, and
//! hardness.
//!
//! Two independent detector families are provided. The `detect_omega*` functions
//! read edge positions off the EPD records (after orienting every circuit so that
//! position 1 is an incoming edge). [`geometric_move_oracle`] matches the local
//! pictures directly on the plane map: faces, over/under data and marker corners.

use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, VertexKind};
use crate::epd::{EpdCode, Name};
use crate::invariants::InvariantError;
use crate::planar_map::{slot_of, vertex_of, FaceTable};
use crate::resolution::is_admissible_diagram;
use crate::surface::SurfaceClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    Omega2,
    Omega3,
    /// Covers both the primed and unprimed variants.
    Omega4,
    Omega5,
    Omega7,
}

impl Move {
    pub const ALL: [Move; 5] = [Move::Omega2, Move::Omega3, Move::Omega4, Move::Omega5, Move::Omega7];
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Move::Omega2 => "Ω2",
            Move::Omega3 => "Ω3",
            Move::Omega4 => "Ω4",
            Move::Omega5 => "Ω5",
            Move::Omega7 => "Ω7",
        };
        f.write_str(s)
    }
}

/// Crossing indices are record indices; edges are EPD labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveWitness {
    pub kind: Move,
    pub crossings: Vec<usize>,
    pub edges: Vec<u32>,
}

// ---------------------------------------------------------------------------
// Position rules on EPD records

/// Oriented view of a code: `rot[i]` is 0 or 2 so that position `rot[i]` of record
/// `i` carries an incoming edge.
struct Oriented<'a> {
    code: &'a EpdCode,
    rot: Vec<usize>,
    faces: FaceTable,
}

impl<'a> Oriented<'a> {
    fn new(code: &'a EpdCode) -> Self {
        let map = code.to_map();
        let mut rot = vec![0; code.len()];
        let mut incoming = vec![false; map.dart_count()];
        for circuit in map.circuits() {
            for d in circuit {
                incoming[map.opp(d)] = true;
            }
        }
        for (i, r) in rot.iter_mut().enumerate() {
            *r = if incoming[4 * i] { 0 } else { 2 };
        }
        Oriented { code, rot, faces: map.face_table() }
    }

    /// 1-based oriented position of dart `d`.
    fn pos(&self, d: usize) -> u8 {
        let (i, j) = (vertex_of(d), slot_of(d));
        ((j + 4 - self.rot[i]) % 4 + 1) as u8
    }

    fn name(&self, v: usize) -> Name {
        self.code.records()[v].name
    }

    fn label(&self, d: usize) -> u32 {
        self.code.records()[vertex_of(d)].quad[slot_of(d)]
    }

    /// Position pair of every boundary edge of face `f`, with the record indices.
    fn face_edges(&self, f: usize, opp: impl Fn(usize) -> usize) -> Vec<(usize, usize, [u8; 2], u32)> {
        self.faces.faces[f]
            .darts
            .iter()
            .map(|&d| {
                let t = opp(d);
                let mut p = [self.pos(d), self.pos(t)];
                p.sort_unstable();
                (vertex_of(d), vertex_of(t), p, self.label(d))
            })
            .collect()
    }
}

fn pair(a: u8, b: u8) -> [u8; 2] {
    [a.min(b), a.max(b)]
}

/// Triangle position patterns shared by the third and fourth move types.
fn triangle_patterns() -> [[[u8; 2]; 3]; 8] {
    let p = pair;
    [
        [p(1, 3), p(4, 4), p(1, 4)],
        [p(1, 3), p(2, 4), p(3, 4)],
        [p(1, 3), p(2, 2), p(2, 3)],
        [p(1, 3), p(2, 4), p(1, 2)],
        [p(1, 3), p(4, 4), p(3, 4)],
        [p(1, 3), p(2, 4), p(2, 3)],
        [p(1, 3), p(2, 2), p(1, 2)],
        [p(1, 3), p(2, 4), p(1, 4)],
    ]
}

/// `pairs[k]` joins triangle vertices `k` and `k + 1`. A pattern is read starting
/// from the two edges that meet at an `X` vertex, in either order.
fn matches_triangle(pairs: [[u8; 2]; 3], is_x: [bool; 3]) -> bool {
    let patterns = triangle_patterns();
    (0..3).filter(|&k| is_x[(k + 1) % 3]).any(|k| {
        let (a, b, c) = (pairs[k], pairs[(k + 1) % 3], pairs[(k + 2) % 3]);
        patterns.iter().any(|p| *p == [a, b, c] || *p == [b, a, c])
    })
}

fn witness(kind: Move, crossings: impl IntoIterator<Item = usize>, edges: impl IntoIterator<Item = u32>) -> MoveWitness {
    let mut crossings: Vec<usize> = crossings.into_iter().collect();
    crossings.sort_unstable();
    crossings.dedup();
    let mut edges: Vec<u32> = edges.into_iter().collect();
    edges.sort_unstable();
    MoveWitness { kind, crossings, edges }
}

fn detect_with(code: &EpdCode, kind: Move) -> Option<MoveWitness> {
    let o = Oriented::new(code);
    let map = code.to_map();
    let opp = |d| map.opp(d);
    match kind {
        Move::Omega2 | Move::Omega5 => {
            for f in 0..o.faces.faces.len() {
                if o.faces.faces[f].size() != 2 {
                    continue;
                }
                let e = o.face_edges(f, opp);
                let (u, v) = (e[0].0, e[0].1);
                if u == v {
                    continue;
                }
                let xs = [u, v].iter().filter(|&&w| o.name(w) == Name::X).count();
                let hit = match kind {
                    Move::Omega2 => {
                        xs == 2
                            && [[pair(2, 2), pair(1, 3)], [pair(1, 3), pair(4, 4)]].iter().any(|pat| {
                                let mut got = [e[0].2, e[1].2];
                                got.sort_unstable();
                                let mut pat = *pat;
                                pat.sort_unstable();
                                got == pat
                            })
                    }
                    _ => xs == 1,
                };
                if hit {
                    return Some(witness(kind, [u, v], [e[0].3, e[1].3]));
                }
            }
            None
        }
        Move::Omega3 | Move::Omega4 => {
            let want_marked = if kind == Move::Omega3 { 0 } else { 1 };
            for f in 0..o.faces.faces.len() {
                if o.faces.faces[f].size() != 3 {
                    continue;
                }
                let e = o.face_edges(f, opp);
                let verts = [e[0].0, e[1].0, e[2].0];
                let marked = verts.iter().filter(|&&w| o.name(w) != Name::X).count();
                if marked != want_marked {
                    continue;
                }
                let is_x = verts.map(|w| o.name(w) == Name::X);
                if matches_triangle([e[0].2, e[1].2, e[2].2], is_x) {
                    return Some(witness(kind, verts, e.iter().map(|x| x.3)));
                }
            }
            None
        }
        Move::Omega7 => {
            for (i, r) in code.records().iter().enumerate() {
                if !r.name.is_marked() {
                    continue;
                }
                for j in 0..4 {
                    let d = 4 * i + j;
                    let t = map.opp(d);
                    let k = vertex_of(t);
                    if k <= i || !o.name(k).is_marked() {
                        continue;
                    }
                    let same_name = r.name == o.name(k);
                    let same_parity = (j & 1) == (slot_of(t) & 1);
                    if same_name != same_parity {
                        return Some(witness(kind, [i, k], [r.quad[j]]));
                    }
                }
            }
            None
        }
    }
}

pub fn detect_omega2(code: &EpdCode) -> Option<MoveWitness> {
    detect_with(code, Move::Omega2)
}

pub fn detect_omega3(code: &EpdCode) -> Option<MoveWitness> {
    detect_with(code, Move::Omega3)
}

pub fn detect_omega4(code: &EpdCode) -> Option<MoveWitness> {
    detect_with(code, Move::Omega4)
}

pub fn detect_omega5(code: &EpdCode) -> Option<MoveWitness> {
    detect_with(code, Move::Omega5)
}

pub fn detect_omega7(code: &EpdCode) -> Option<MoveWitness> {
    detect_with(code, Move::Omega7)
}

/// First move found by the position rules, in the order Ω2, Ω3, Ω4, Ω5, Ω7.
pub fn detect_any(code: &EpdCode) -> Option<MoveWitness> {
    Move::ALL.iter().find_map(|&k| detect_with(code, k))
}

// ---------------------------------------------------------------------------
// Geometric matching on the plane map

/// Local move matcher over a decorated map with precomputed faces.
pub struct Geometry<'a> {
    diagram: &'a Diagram,
    faces: Cow<'a, FaceTable>,
}

impl<'a> Geometry<'a> {
    pub fn new(diagram: &'a Diagram) -> Self {
        Geometry { diagram, faces: Cow::Owned(diagram.face_table()) }
    }

    /// Reuses the faces of the underlying shadow (shared by all decorations).
    pub fn with_faces(diagram: &'a Diagram, faces: &'a FaceTable) -> Self {
        Geometry { diagram, faces: Cow::Borrowed(faces) }
    }

    fn kind(&self, v: usize) -> VertexKind {
        self.diagram.kinds[v]
    }

    fn over(&self, d: usize) -> bool {
        self.kind(vertex_of(d)).is_over(slot_of(d))
    }

    fn opp(&self, d: usize) -> usize {
        self.diagram.map.opp(d)
    }

    /// Corner at marked vertex `v` beside slot `s` in which the positive smoothing
    /// arc through `s` turns.
    fn plus_corner(&self, v: usize, s: usize) -> usize {
        match self.kind(v) {
            VertexKind::Marker { plus } => {
                let k = if (s & 1) as u8 == plus { s } else { (s + 3) & 3 };
                self.faces.corner(v, k)
            }
            _ => unreachable!("not a marked vertex"),
        }
    }

    /// Witness darts (one per boundary edge) for move `kind`, if any.
    pub fn find(&self, kind: Move) -> Option<Vec<usize>> {
        match kind {
            Move::Omega2 | Move::Omega5 => self.faces.faces.iter().find_map(|f| {
                if f.size() != 2 {
                    return None;
                }
                let (d0, d1) = (f.darts[0], f.darts[1]);
                let (u, v) = (vertex_of(d0), vertex_of(d1));
                if u == v {
                    return None;
                }
                let marked = [u, v].iter().filter(|&&w| self.kind(w).is_marker()).count();
                let hit = match kind {
                    // one strand passes over the other at both vertices
                    Move::Omega2 => marked == 0 && self.over(d0) == self.over(self.opp(d0)),
                    _ => marked == 1,
                };
                hit.then(|| vec![d0, d1])
            }),
            Move::Omega3 | Move::Omega4 => self.faces.faces.iter().find_map(|f| {
                if f.size() != 3 {
                    return None;
                }
                let marked: Vec<usize> =
                    (0..3).filter(|&i| self.kind(vertex_of(f.darts[i])).is_marker()).collect();
                let hit = match (kind, marked.len()) {
                    // some strand lies over (hence another under) both of its triangle crossings
                    (Move::Omega3, 0) => f.darts.iter().any(|&d| self.over(d) == self.over(self.opp(d))),
                    // the strand opposite the marked vertex passes over or under it
                    (Move::Omega4, 1) => {
                        let d = f.darts[(marked[0] + 1) % 3];
                        self.over(d) == self.over(self.opp(d))
                    }
                    _ => false,
                };
                hit.then(|| f.darts.clone())
            }),
            Move::Omega7 => {
                let n = self.diagram.crossing_count();
                (0..4 * n).find_map(|d| {
                    let t = self.opp(d);
                    let (u, v) = (vertex_of(d), vertex_of(t));
                    if u >= v || !self.kind(u).is_marker() || !self.kind(v).is_marker() {
                        return None;
                    }
                    // both markers open into the same region beside the edge
                    (self.plus_corner(u, slot_of(d)) == self.plus_corner(v, slot_of(t))).then(|| vec![d])
                })
            }
        }
    }

    pub fn any(&self) -> Option<(Move, Vec<usize>)> {
        // cheapest first
        [Move::Omega7, Move::Omega5, Move::Omega2, Move::Omega4, Move::Omega3]
            .iter()
            .find_map(|&k| self.find(k).map(|w| (k, w)))
    }
}

/// Geometric match of move `kind` on the code's plane map.
pub fn geometric_move_oracle(code: &EpdCode, kind: Move) -> Option<MoveWitness> {
    let diagram = code.to_diagram();
    let darts = Geometry::new(&diagram).find(kind)?;
    let map = &diagram.map;
    let label = |d: usize| code.records()[vertex_of(d)].quad[slot_of(d)];
    Some(witness(
        kind,
        darts.iter().flat_map(|&d| [vertex_of(d), vertex_of(map.opp(d))]),
        darts.iter().map(|&d| label(d)),
    ))
}

/// Standard surface-unlink diagrams on prime reduced shadows: only the two-vertex
/// torus (split unions are disconnected, connected sums are not prime, and the
/// sphere and projective plane diagrams have fewer than two vertices or a loop).
pub fn is_standard_unlink_diagram(diagram: &Diagram) -> bool {
    diagram.crossing_count() == 2
        && diagram.marker_count() == 2
        && SurfaceClass::of(diagram) == SurfaceClass { components: 1, euler: 0, orientable: true }
}

/// Admissible, free of non-increasing move opportunities, and not standard.
pub fn is_hard_diagram(diagram: &Diagram) -> Result<bool, InvariantError> {
    if diagram.map.has_loop() || Geometry::new(diagram).any().is_some() || is_standard_unlink_diagram(diagram) {
        return Ok(false);
    }
    is_admissible_diagram(diagram)
}

pub fn is_hard(code: &EpdCode) -> Result<bool, InvariantError> {
    is_hard_diagram(&code.to_diagram())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE_AND_P2: &str = "X[1, 5, 2, 4], X[18, 10, 19, 1], Y[5, 19, 6, 20], X[14, 2, 15, 3], X[3, 13, 4, 14], X[17, 12, 18, 13], X[9, 6, 10, 7], X[20, 16, 17, 15], X[7, 12, 8, 11], X[16, 9, 11, 8]";
    const TREFOIL: &str = "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]";

    fn code(s: &str) -> EpdCode {
        EpdCode::parse(s).unwrap()
    }

    #[test]
    fn sphere_and_p2_has_no_moves() {
        let c = code(SPHERE_AND_P2);
        for k in Move::ALL {
            assert_eq!(detect_with(&c, k), None, "{k}");
            assert_eq!(geometric_move_oracle(&c, k), None, "{k}");
        }
        assert!(is_hard(&c).unwrap());
    }

    #[test]
    fn trefoil_has_no_reducing_moves() {
        let c = code(TREFOIL);
        assert_eq!(detect_omega2(&c), None);
        assert_eq!(detect_omega3(&c), None);
        assert_eq!(geometric_move_oracle(&c, Move::Omega2), None);
        assert_eq!(geometric_move_oracle(&c, Move::Omega3), None);
    }

    #[test]
    fn changing_one_trefoil_crossing_gives_r2() {
        let t = code(TREFOIL);
        let changed = t.decorated(&[
            crate::epd::Decoration::Change,
            crate::epd::Decoration::Keep,
            crate::epd::Decoration::Keep,
        ]);
        assert!(detect_omega2(&changed).is_some());
        assert!(geometric_move_oracle(&changed, Move::Omega2).is_some());
        assert!(!is_hard(&changed).unwrap());
    }

    #[test]
    fn marker_counts_gate_detectors() {
        let t = code(TREFOIL);
        assert_eq!(detect_omega4(&t), None);
        assert_eq!(detect_omega5(&t), None);
        assert_eq!(detect_omega7(&t), None);
        let one = t.decorated(&[
            crate::epd::Decoration::MarkY,
            crate::epd::Decoration::Keep,
            crate::epd::Decoration::Keep,
        ]);
        assert_eq!(detect_omega7(&one), None);
        assert!(detect_omega5(&one).is_some());
    }

    #[test]
    fn omega7_position_rule() {
        assert!(detect_omega7(&code("Y[1,3,2,4],Y[2,3,1,4]")).is_none());
        // the same diagram written with the second record rotated by one
        let a = detect_omega7(&code("Y[1,3,2,4],Z[2,3,1,4]"));
        let b = detect_omega7(&code("Y[1,3,2,4],Y[3,1,4,2]"));
        assert!(a.is_some() && b.is_some());
    }

    #[test]
    fn torus_is_standard() {
        let found: Vec<bool> = ["Y[1,3,2,4],Y[2,3,1,4]", "Y[1,3,2,4],Z[2,3,1,4]"]
            .iter()
            .map(|s| is_standard_unlink_diagram(&code(s).to_diagram()))
            .collect();
        assert_eq!(found.iter().filter(|&&b| b).count(), 1);
        assert!(!is_standard_unlink_diagram(&code(SPHERE_AND_P2).to_diagram()));
    }
}

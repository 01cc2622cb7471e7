//! Rotation-system representation of connected 4-regular maps on the sphere.
//!
//! Dart `4 * v + k` is slot `k` of vertex `v`; slots are listed counterclockwise.
//! The only stored data is the edge involution pairing the two ends of each edge.

use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

pub type Dart = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("dart pairing is not a fixed-point-free involution at dart {0}")]
    BadPairing(Dart),
    #[error("map is disconnected")]
    Disconnected,
    #[error("map is not spherical (V - E + F = {0})")]
    NonSpherical(i64),
    #[error("map has no vertices")]
    Empty,
}

#[inline]
pub fn vertex_of(d: Dart) -> usize {
    d >> 2
}

#[inline]
pub fn slot_of(d: Dart) -> usize {
    d & 3
}

#[inline]
pub fn ccw_next(d: Dart) -> Dart {
    (d & !3) | ((d + 1) & 3)
}

#[inline]
pub fn ccw_prev(d: Dart) -> Dart {
    (d & !3) | ((d + 3) & 3)
}

/// The dart straight across the vertex (same transverse strand).
#[inline]
pub fn straight(d: Dart) -> Dart {
    (d & !3) | ((d + 2) & 3)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneMap {
    opp: Vec<u32>,
}

/// One region of the map, given by the darts whose clockwise-side corner it occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCycle {
    pub darts: Vec<Dart>,
}

impl FaceCycle {
    pub fn size(&self) -> usize {
        self.darts.len()
    }
}

/// Per-dart face membership, computed once and shared by the local move tests.
#[derive(Clone, Debug)]
pub struct FaceTable {
    pub faces: Vec<FaceCycle>,
    /// `face_of[d]`: the face containing dart `d` in its boundary cycle. This is the
    /// region lying in the corner between `ccw_prev(d)` and `d`.
    pub face_of: Vec<usize>,
}

impl FaceTable {
    /// Face filling the corner between slot `k` and slot `k + 1` of vertex `v`.
    pub fn corner(&self, v: usize, k: usize) -> usize {
        self.face_of[4 * v + ((k + 1) & 3)]
    }
}

impl PlaneMap {
    /// Builds a map from the dart involution, checking every structural invariant.
    pub fn from_pairing(opp: Vec<usize>) -> Result<Self, MapError> {
        if opp.is_empty() {
            return Err(MapError::Empty);
        }
        if opp.len() % 4 != 0 {
            return Err(MapError::BadPairing(opp.len()));
        }
        for (d, &t) in opp.iter().enumerate() {
            if t >= opp.len() || t == d || opp[t] != d {
                return Err(MapError::BadPairing(d));
            }
        }
        let map = PlaneMap {
            opp: opp.into_iter().map(|t| t as u32).collect(),
        };
        if !map.is_connected() {
            return Err(MapError::Disconnected);
        }
        let chi = map.euler_characteristic();
        if chi != 2 {
            return Err(MapError::NonSpherical(chi));
        }
        Ok(map)
    }

    pub(crate) fn from_pairing_unchecked(opp: Vec<u32>) -> Self {
        PlaneMap { opp }
    }

    pub fn vertex_count(&self) -> usize {
        self.opp.len() / 4
    }

    pub fn dart_count(&self) -> usize {
        self.opp.len()
    }

    pub fn edge_count(&self) -> usize {
        self.opp.len() / 2
    }

    #[inline]
    pub fn opp(&self, d: Dart) -> Dart {
        self.opp[d] as usize
    }

    pub fn pairing(&self) -> impl Iterator<Item = Dart> + '_ {
        self.opp.iter().map(|&t| t as usize)
    }

    /// Face successor: across the edge, then one step counterclockwise.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        ccw_next(self.opp(d))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for k in 0..4 {
                let w = vertex_of(self.opp(4 * v + k));
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertex_count() as i64;
        let e = self.edge_count() as i64;
        let f = self.face_table().faces.len() as i64;
        v - e + f
    }

    /// Faces sorted by their minimal dart; each face cycle starts at that dart.
    pub fn faces(&self) -> Vec<FaceCycle> {
        self.face_table().faces
    }

    pub fn face_table(&self) -> FaceTable {
        let nd = self.dart_count();
        let mut face_of = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                darts.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            faces.push(FaceCycle { darts });
        }
        FaceTable { faces, face_of }
    }

    /// Transverse circuits: sequences of darts leaving a vertex, each followed by
    /// continuing straight through the next vertex.
    pub fn circuits(&self) -> Vec<Vec<Dart>> {
        let nd = self.dart_count();
        let mut used = vec![false; nd];
        let mut out = Vec::new();
        for start in 0..nd {
            if used[start] || used[self.opp(start)] {
                continue;
            }
            let mut circuit = Vec::new();
            let mut d = start;
            loop {
                used[d] = true;
                circuit.push(d);
                d = straight(self.opp(d));
                if d == start {
                    break;
                }
            }
            out.push(circuit);
        }
        out
    }

    /// The same map seen from the other side of the sphere.
    pub fn reflected(&self) -> PlaneMap {
        // slot k -> slot (4 - k) % 4 reverses every rotation
        let r = |d: usize| (d & !3) | ((4 - (d & 3)) & 3);
        let mut opp = vec![0u32; self.opp.len()];
        for d in 0..self.opp.len() {
            opp[r(d)] = r(self.opp(d)) as u32;
        }
        PlaneMap { opp }
    }

    /// Relabels vertices by `perm` (old -> new) and rotates each vertex's slots by `shift[v]`.
    pub fn relabeled(&self, perm: &[usize], shift: &[usize]) -> PlaneMap {
        let map_dart = |d: usize| {
            let v = vertex_of(d);
            4 * perm[v] + ((slot_of(d) + shift[v]) & 3)
        };
        let mut opp = vec![0u32; self.opp.len()];
        for d in 0..self.opp.len() {
            opp[map_dart(d)] = map_dart(self.opp(d)) as u32;
        }
        PlaneMap { opp }
    }

    pub fn has_loop(&self) -> bool {
        (0..self.dart_count()).any(|d| vertex_of(self.opp(d)) == vertex_of(d))
    }

    /// Prime reduced shadow test: loop-free, no nugatory vertex, no disconnecting edge pair.
    pub fn is_prime_reduced_shadow(&self) -> bool {
        if self.vertex_count() < 2 || self.has_loop() {
            return false;
        }
        let table = self.face_table();
        // Nugatory: some face meets a vertex in two of its corners.
        for v in 0..self.vertex_count() {
            let c: [usize; 4] = std::array::from_fn(|k| table.corner(v, k));
            for i in 0..4 {
                for j in i + 1..4 {
                    if c[i] == c[j] {
                        return false;
                    }
                }
            }
        }
        // A disconnecting pair of edges is a pair of edges bordering the same two faces.
        let mut sides: HashMap<(usize, usize), usize> = HashMap::new();
        for d in 0..self.dart_count() {
            let t = self.opp(d);
            if d > t {
                continue;
            }
            let (a, b) = (table.face_of[d], table.face_of[t]);
            if a == b {
                return false;
            }
            let key = (a.min(b), a.max(b));
            let count = sides.entry(key).or_insert(0);
            *count += 1;
            if *count > 1 {
                return false;
            }
        }
        true
    }
}

/// Per-vertex decoration used by decorated canonical codes. `0` means undecorated.
pub trait VertexDecoration {
    /// Code byte for vertex `v` when it is entered through `entry_slot`; `reversed`
    /// selects clockwise traversal.
    fn relative(&self, v: usize, entry_slot: usize, reversed: bool) -> u8;
}

pub struct Plain;

impl VertexDecoration for Plain {
    fn relative(&self, _: usize, _: usize, _: bool) -> u8 {
        0
    }
}

struct CodeBuilder<'a, D: VertexDecoration> {
    map: &'a PlaneMap,
    deco: &'a D,
    number: Vec<u32>,
    entry: Vec<usize>,
    queue: Vec<usize>,
}

const UNSEEN: u32 = u32::MAX;

impl<'a, D: VertexDecoration> CodeBuilder<'a, D> {
    fn new(map: &'a PlaneMap, deco: &'a D) -> Self {
        let n = map.vertex_count();
        CodeBuilder {
            map,
            deco,
            number: vec![UNSEEN; n],
            entry: vec![0; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Emits the BFS code from `start` into `out`. When `best` is given, aborts as soon
    /// as the partial code is lexicographically larger, returning `Ordering::Greater`.
    fn run(&mut self, start: Dart, reversed: bool, best: Option<&[u8]>, out: &mut Vec<u8>) -> Ordering {
        out.clear();
        self.number.iter_mut().for_each(|x| *x = UNSEEN);
        self.queue.clear();
        let v0 = vertex_of(start);
        self.number[v0] = 0;
        self.entry[v0] = slot_of(start);
        self.queue.push(v0);
        let mut head = 0;
        let mut state = Ordering::Equal;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let e = self.entry[v];
            out.push(self.deco.relative(v, e, reversed));
            if !self.check(best, out, &mut state) {
                return Ordering::Greater;
            }
            for i in 0..4 {
                let k = if reversed { (e + 4 - i) & 3 } else { (e + i) & 3 };
                let t = self.map.opp(4 * v + k);
                let w = vertex_of(t);
                if self.number[w] == UNSEEN {
                    self.number[w] = self.queue.len() as u32;
                    self.entry[w] = slot_of(t);
                    self.queue.push(w);
                }
                let ew = self.entry[w];
                let off = if reversed {
                    (ew + 4 - slot_of(t)) & 3
                } else {
                    (slot_of(t) + 4 - ew) & 3
                };
                let num = self.number[w];
                debug_assert!(num < 64);
                out.push(((num as u8) << 2) | off as u8);
                if !self.check(best, out, &mut state) {
                    return Ordering::Greater;
                }
            }
        }
        match best {
            None => Ordering::Less,
            Some(_) => state,
        }
    }

    #[inline]
    fn check(&self, best: Option<&[u8]>, out: &[u8], state: &mut Ordering) -> bool {
        if *state != Ordering::Equal {
            return true;
        }
        if let Some(b) = best {
            let i = out.len() - 1;
            match out[i].cmp(&b[i]) {
                Ordering::Greater => return false,
                Ordering::Less => *state = Ordering::Less,
                Ordering::Equal => {}
            }
        }
        true
    }
}

/// Minimal BFS code over all start darts (and both orientations when
/// `include_reflection`), with per-vertex decorations.
pub fn canonical_code_decorated<D: VertexDecoration>(
    map: &PlaneMap,
    deco: &D,
    include_reflection: bool,
) -> Vec<u8> {
    assert!(map.vertex_count() <= 64, "canonical codes support at most 64 vertices");
    let mut builder = CodeBuilder::new(map, deco);
    let mut best: Vec<u8> = Vec::new();
    let mut scratch = Vec::new();
    let orientations: &[bool] = if include_reflection { &[false, true] } else { &[false] };
    for &rev in orientations {
        for start in 0..map.dart_count() {
            if best.is_empty() {
                builder.run(start, rev, None, &mut best);
                continue;
            }
            if builder.run(start, rev, Some(&best), &mut scratch) == Ordering::Less {
                std::mem::swap(&mut best, &mut scratch);
            }
        }
    }
    best
}

/// Isomorphism-invariant code of the undecorated map.
pub fn canonical_code(map: &PlaneMap, include_reflection: bool) -> Vec<u8> {
    canonical_code_decorated(map, &Plain, include_reflection)
}

/// Rebuilds a map from a canonical code (decoration bytes ignored). Vertex `i` of the
/// result is the `i`-th vertex of the traversal, slot 0 being its entry dart.
pub fn map_from_code(code: &[u8]) -> Result<PlaneMap, MapError> {
    if code.is_empty() || code.len() % 5 != 0 {
        return Err(MapError::Empty);
    }
    let n = code.len() / 5;
    let mut opp = vec![usize::MAX; 4 * n];
    for v in 0..n {
        for k in 0..4 {
            let b = code[5 * v + 1 + k] as usize;
            let t = 4 * (b >> 2) + (b & 3);
            if t >= 4 * n {
                return Err(MapError::BadPairing(4 * v + k));
            }
            opp[4 * v + k] = t;
        }
    }
    PlaneMap::from_pairing(opp)
}

pub fn to_hex(code: &[u8]) -> String {
    code.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn from_hex(s: &str) -> Option<Vec<u8>> {
    let s = s.trim();
    if s.len() % 2 != 0 {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
        .collect()
}

/// The unique prime reduced 2-vertex shadow (two vertices joined by four edges).
pub fn hopf_shadow() -> PlaneMap {
    PlaneMap::from_pairing(vec![7, 6, 5, 4, 3, 2, 1, 0]).expect("hopf shadow is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiset(map: &PlaneMap) -> Vec<usize> {
        let mut s: Vec<usize> = map.faces().iter().map(|f| f.size()).collect();
        s.sort();
        s
    }

    /// Standard trefoil shadow: vertices 0,1,2 on a circuit; two strands between consecutive vertices.
    pub(crate) fn trefoil() -> PlaneMap {
        crate::epd::EpdCode::parse("X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]")
            .unwrap()
            .to_map()
    }

    #[test]
    fn hopf_faces() {
        let m = hopf_shadow();
        assert_eq!(multiset(&m), vec![2, 2, 2, 2]);
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.is_prime_reduced_shadow());
    }

    #[test]
    fn trefoil_faces() {
        let m = trefoil();
        assert_eq!(multiset(&m), vec![2, 2, 2, 3, 3]);
        assert_eq!(m.faces().iter().map(|f| f.size()).sum::<usize>(), 2 * m.edge_count());
        assert!(m.is_prime_reduced_shadow());
    }

    #[test]
    fn faces_partition_darts() {
        let m = trefoil();
        let mut all: Vec<Dart> = m.faces().into_iter().flat_map(|f| f.darts).collect();
        all.sort();
        assert_eq!(all, (0..m.dart_count()).collect::<Vec<_>>());
    }

    #[test]
    fn kink_is_not_prime() {
        let m = crate::epd::EpdCode::parse("X[1,2,2,1]").unwrap().to_map();
        assert!(m.has_loop());
        assert!(!m.is_prime_reduced_shadow());
    }

    #[test]
    fn bad_pairings_rejected() {
        assert_eq!(PlaneMap::from_pairing(vec![1, 0, 3]), Err(MapError::BadPairing(3)));
        assert_eq!(PlaneMap::from_pairing(vec![0, 2, 1, 3]), Err(MapError::BadPairing(0)));
        // two disjoint figure-eight loops
        assert_eq!(
            PlaneMap::from_pairing(vec![1, 0, 3, 2, 5, 4, 7, 6]),
            Err(MapError::Disconnected)
        );
    }

    #[test]
    fn code_roundtrip_is_idempotent() {
        let m = trefoil();
        let c = canonical_code(&m, false);
        let rebuilt = map_from_code(&c).unwrap();
        assert_eq!(canonical_code(&rebuilt, false), c);
        assert_eq!(from_hex(&to_hex(&c)).unwrap(), c);
    }

    #[test]
    fn code_invariant_under_relabeling() {
        let m = trefoil();
        let c = canonical_code(&m, false);
        let r = m.relabeled(&[2, 0, 1], &[1, 3, 2]);
        assert_eq!(canonical_code(&r, false), c);
        assert_eq!(canonical_code(&m.reflected(), true), canonical_code(&m, true));
    }
}

//! Base-surface classification: components, Euler characteristic, orientability
//! and the `A^{B,C,D}_{E,F}` diagram name.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, VertexKind};
use crate::epd::EpdCode;
use crate::planar_map::{slot_of, vertex_of};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub components: usize,
    pub euler: i64,
    pub orientable: bool,
}

impl SurfaceClass {
    pub fn of(diagram: &Diagram) -> Self {
        SurfaceClass {
            components: surface_component_count(diagram),
            euler: euler_characteristic(diagram),
            orientable: is_orientable(diagram),
        }
    }

    pub fn of_code(code: &EpdCode) -> Self {
        Self::of(&code.to_diagram())
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = if self.orientable { "Ori" } else { "Non" };
        write!(f, "{{{},{},{}}}", self.components, self.euler, d)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Surface component of every dart: circuits pass straight through crossings and
/// marked vertices glue their four edges together.
fn dart_components(diagram: &Diagram) -> (Vec<usize>, usize) {
    let map = &diagram.map;
    let nd = map.dart_count();
    let mut uf = UnionFind::new(nd);
    for d in 0..nd {
        uf.union(d, map.opp(d));
    }
    for (v, kind) in diagram.kinds.iter().enumerate() {
        let d = 4 * v;
        uf.union(d, d + 2);
        uf.union(d + 1, d + 3);
        if kind.is_marker() {
            uf.union(d, d + 1);
        }
    }
    let mut index = vec![usize::MAX; nd];
    let mut count = 0;
    let comp = (0..nd)
        .map(|d| {
            let r = uf.find(d);
            if index[r] == usize::MAX {
                index[r] = count;
                count += 1;
            }
            index[r]
        })
        .collect();
    (comp, count)
}

pub fn surface_component_count(diagram: &Diagram) -> usize {
    dart_components(diagram).1
}

/// Circles of the resolution of sign `positive`, each given by its surface component.
fn resolution_circles(diagram: &Diagram, positive: bool, comp: &[usize]) -> Vec<usize> {
    let map = &diagram.map;
    let nd = map.dart_count();
    let mut visited = vec![false; nd];
    let mut circles = Vec::new();
    for start in 0..nd {
        if visited[start] {
            continue;
        }
        circles.push(comp[start]);
        let mut d = start;
        while !visited[d] {
            visited[d] = true;
            let t = map.opp(d);
            visited[t] = true;
            let v = vertex_of(t);
            let exit = match diagram.kinds[v].smoothing_partner(slot_of(t), positive) {
                Some(p) => 4 * v + p,
                None => 4 * v + ((slot_of(t) + 2) & 3),
            };
            d = exit;
        }
    }
    circles
}

/// Euler characteristic of the base surface: `c(L+) + c(L-) - m`.
pub fn euler_characteristic(diagram: &Diagram) -> i64 {
    component_euler(diagram).iter().map(|c| c.1).sum()
}

/// Per surface component: `(marked vertices, Euler characteristic)`.
pub fn component_euler(diagram: &Diagram) -> Vec<(usize, i64)> {
    let (comp, count) = dart_components(diagram);
    let mut out = vec![(0usize, 0i64); count];
    for positive in [true, false] {
        for c in resolution_circles(diagram, positive, &comp) {
            out[c].1 += 1;
        }
    }
    for (v, kind) in diagram.kinds.iter().enumerate() {
        if kind.is_marker() {
            let c = comp[4 * v];
            out[c].0 += 1;
            out[c].1 -= 1;
        }
    }
    out
}

/// Abstract orientation: `T` (true) on every dart whose edge is oriented toward its
/// vertex. At `X` opposite slots differ; at `Y`/`Z` opposite slots agree and adjacent
/// slots differ. Returns `None` when no consistent labeling exists.
pub fn abstract_orient(diagram: &Diagram) -> Option<Vec<bool>> {
    let map = &diagram.map;
    let nd = map.dart_count();
    // parity union-find: parent plus parity to parent
    let mut parent: Vec<usize> = (0..nd).collect();
    let mut parity = vec![false; nd];
    fn find(parent: &mut [usize], parity: &mut [bool], x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut r = x;
        while parent[r] != r {
            path.push(r);
            r = parent[r];
        }
        // compress
        for &p in path.iter().rev() {
            let q = parent[p];
            if q != r {
                parity[p] ^= parity[q];
            }
            parent[p] = r;
        }
        (r, if x == r { false } else { parity[x] })
    }
    let mut relate = |a: usize, b: usize, differ: bool| -> bool {
        let (ra, pa) = find(&mut parent, &mut parity, a);
        let (rb, pb) = find(&mut parent, &mut parity, b);
        if ra == rb {
            return (pa ^ pb) == differ;
        }
        parent[ra] = rb;
        parity[ra] = pa ^ pb ^ differ;
        true
    };
    for d in 0..nd {
        if !relate(d, map.opp(d), true) {
            return None;
        }
    }
    for (v, kind) in diagram.kinds.iter().enumerate() {
        let d = 4 * v;
        let ok = match kind {
            VertexKind::Marker { .. } => {
                relate(d, d + 2, false) && relate(d + 1, d + 3, false) && relate(d, d + 1, true)
            }
            _ => relate(d, d + 2, true) && relate(d + 1, d + 3, true),
        };
        if !ok {
            return None;
        }
    }
    Some((0..nd).map(|d| find(&mut parent, &mut parity, d).1).collect())
}

pub fn is_orientable(diagram: &Diagram) -> bool {
    abstract_orient(diagram).is_some()
}

/// Could the code present a nontrivial surface-link: `2 <= m <= c - 4`.
pub fn nontrivial_candidate_filter(crossings: usize, markers: usize) -> bool {
    markers >= 2 && markers + 4 <= crossings
}

/// `A^{B,C,D}_{E,F}` with `A` crossings, `E` marked vertices and family index `F`.
pub fn yoshikawa_name(crossings: usize, markers: usize, class: &SurfaceClass, index: usize) -> String {
    format!("{crossings}^{class}_{{{markers},{index}}}")
}

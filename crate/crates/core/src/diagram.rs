//! Decorated plane maps: every vertex is a flat vertex, a classical crossing, or a
//! marked vertex.

use crate::planar_map::{
    canonical_code_decorated, slot_of, vertex_of, FaceTable, PlaneMap, VertexDecoration,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Flat,
    /// Classical crossing; the under strand occupies the two slots of parity `under`.
    Crossing { under: u8 },
    /// Marked vertex; the positive resolution joins slot `k` with `k + 1` for every
    /// `k` of parity `plus` (the negative resolution joins the other two pairs).
    Marker { plus: u8 },
}

impl VertexKind {
    pub fn is_marker(self) -> bool {
        matches!(self, VertexKind::Marker { .. })
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, VertexKind::Crossing { .. })
    }

    /// Whether the strand through `slot` passes over at this crossing.
    pub fn is_over(self, slot: usize) -> bool {
        match self {
            VertexKind::Crossing { under } => (slot & 1) as u8 != under,
            _ => false,
        }
    }

    /// Partner slot of `slot` in the smoothing of sign `positive`.
    pub fn smoothing_partner(self, slot: usize, positive: bool) -> Option<usize> {
        match self {
            VertexKind::Marker { plus } => {
                let joins_next = ((slot & 1) as u8 == plus) == positive;
                Some(if joins_next { (slot + 1) & 3 } else { (slot + 3) & 3 })
            }
            _ => None,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            VertexKind::Crossing { under } => VertexKind::Crossing { under: under ^ 1 },
            VertexKind::Marker { plus } => VertexKind::Marker { plus: plus ^ 1 },
            k => k,
        }
    }

    pub fn switched(self) -> Self {
        match self {
            VertexKind::Marker { plus } => VertexKind::Marker { plus: plus ^ 1 },
            k => k,
        }
    }

    pub fn crossing_changed(self) -> Self {
        match self {
            VertexKind::Crossing { under } => VertexKind::Crossing { under: under ^ 1 },
            k => k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub map: PlaneMap,
    pub kinds: Vec<VertexKind>,
}

struct Kinds<'a>(&'a [VertexKind]);

impl VertexDecoration for Kinds<'_> {
    fn relative(&self, v: usize, entry: usize, reversed: bool) -> u8 {
        match self.0[v] {
            VertexKind::Flat => 0,
            VertexKind::Crossing { under } => 1 + ((entry & 1) as u8 == under) as u8,
            VertexKind::Marker { plus } => {
                let next = ((entry & 1) as u8 == plus) != reversed;
                3 + next as u8
            }
        }
    }
}

/// Edge labels along transverse circuits, plus which darts are traversed inward.
pub(crate) struct CircuitLabels {
    pub label: Vec<u32>,
    pub incoming: Vec<bool>,
}

pub(crate) fn circuit_labels(map: &PlaneMap) -> CircuitLabels {
    let mut label = vec![0u32; map.dart_count()];
    let mut incoming = vec![false; map.dart_count()];
    let mut next = 1u32;
    for circuit in map.circuits() {
        for d in circuit {
            let t = map.opp(d);
            label[d] = next;
            label[t] = next;
            incoming[t] = true;
            next += 1;
        }
    }
    CircuitLabels { label, incoming }
}

impl Diagram {
    pub fn new(map: PlaneMap, kinds: Vec<VertexKind>) -> Self {
        assert_eq!(map.vertex_count(), kinds.len());
        Diagram { map, kinds }
    }

    pub fn shadow(map: PlaneMap) -> Self {
        let n = map.vertex_count();
        Diagram::new(map, vec![VertexKind::Flat; n])
    }

    pub fn crossing_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn marker_count(&self) -> usize {
        self.kinds.iter().filter(|k| k.is_marker()).count()
    }

    pub fn mirror(&self) -> Diagram {
        Diagram::new(self.map.clone(), self.kinds.iter().map(|k| k.mirrored()).collect())
    }

    pub fn switch(&self) -> Diagram {
        Diagram::new(self.map.clone(), self.kinds.iter().map(|k| k.switched()).collect())
    }

    /// Reflection of the sphere; the surface-link type changes to its mirror.
    pub fn reflected(&self) -> Diagram {
        let kinds = self
            .kinds
            .iter()
            .map(|&k| match k {
                // slot s -> -s keeps parities but swaps "next" and "previous"
                VertexKind::Marker { plus } => VertexKind::Marker { plus: plus ^ 1 },
                k => k,
            })
            .collect();
        Diagram::new(self.map.reflected(), kinds)
    }

    /// Orientation-preserving isomorphism invariant (with reflection when asked).
    pub fn canonical_code(&self, include_reflection: bool) -> Vec<u8> {
        canonical_code_decorated(&self.map, &Kinds(&self.kinds), include_reflection)
    }

    pub fn face_table(&self) -> FaceTable {
        self.map.face_table()
    }

    /// Record view: one `(name, quad)` per vertex, labels increasing along circuits.
    pub fn to_epd(&self) -> crate::epd::EpdCode {
        use crate::epd::{CrossingRecord, EpdCode, Name};
        let cl = circuit_labels(&self.map);
        let records = (0..self.crossing_count())
            .map(|v| {
                let (parity, name) = match self.kinds[v] {
                    VertexKind::Flat => (0, Name::X),
                    VertexKind::Crossing { under } => (under as usize, Name::X),
                    VertexKind::Marker { plus } => (0, if plus == 0 { Name::Y } else { Name::Z }),
                };
                let s = if cl.incoming[4 * v + parity] { parity } else { parity + 2 };
                let quad = std::array::from_fn(|i| cl.label[4 * v + ((s + i) & 3)]);
                CrossingRecord { name, quad }
            })
            .collect();
        EpdCode::from_records_unchecked(records)
    }

    /// Darts of the positive (`true`) or negative smoothing of every marked vertex,
    /// as a classical diagram plus the number of crossingless circles produced.
    pub fn resolve(&self, positive: bool) -> (Diagram, usize) {
        let keep: Vec<usize> = (0..self.crossing_count())
            .filter(|&v| !self.kinds[v].is_marker())
            .collect();
        let mut new_index = vec![usize::MAX; self.crossing_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let nd = self.map.dart_count();
        let mut visited = vec![false; nd];
        let mut opp = vec![0u32; 4 * keep.len()];
        for &v in &keep {
            for k in 0..4 {
                let d = 4 * v + k;
                let mut t = self.map.opp(d);
                while let Some(p) = self.kinds[vertex_of(t)].smoothing_partner(slot_of(t), positive) {
                    visited[t] = true;
                    let pd = (t & !3) | p;
                    visited[pd] = true;
                    t = self.map.opp(pd);
                }
                let nd_ = 4 * new_index[vertex_of(t)] + slot_of(t);
                opp[4 * new_index[v] + k] = nd_ as u32;
            }
        }
        // Remaining marked-vertex darts lie on circles that avoid every crossing.
        let mut circles = 0;
        for d in 0..nd {
            if visited[d] || !self.kinds[vertex_of(d)].is_marker() {
                continue;
            }
            circles += 1;
            let mut t = d;
            loop {
                let p = self.kinds[vertex_of(t)].smoothing_partner(slot_of(t), positive).unwrap();
                let pd = (t & !3) | p;
                visited[t] = true;
                visited[pd] = true;
                t = self.map.opp(pd);
                if t == d {
                    break;
                }
            }
        }
        let kinds = keep.iter().map(|&v| self.kinds[v]).collect();
        (
            Diagram {
                map: PlaneMap::from_pairing_unchecked(opp),
                kinds,
            },
            circles,
        )
    }
}

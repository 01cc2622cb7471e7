//! EPD codes: crossing records `X[a,b,c,d]`, `Y[...]`, `Z[...]`, their text grammar,
//! conversion from shadows and exhaustive decoration of a base code.
//!
//! `X[a,b,c,d]` lists edge labels counterclockwise starting from the incoming lower
//! strand, so `a`-`c` is the under strand. Rotating a quad by one position changes
//! the crossing. `Y[a,b,c,d]` is a marked vertex whose positive resolution joins
//! `a`-`b` and `c`-`d`; `Z` is its switch (positive resolution joins `b`-`c`, `d`-`a`).

use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, VertexKind};
use crate::planar_map::{MapError, PlaneMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Name {
    X,
    Y,
    Z,
}

impl Name {
    pub fn is_marked(self) -> bool {
        self != Name::X
    }

    fn swapped(self) -> Name {
        match self {
            Name::X => Name::X,
            Name::Y => Name::Z,
            Name::Z => Name::Y,
        }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Name::X => "X",
            Name::Y => "Y",
            Name::Z => "Z",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingRecord {
    pub name: Name,
    pub quad: [u32; 4],
}

impl CrossingRecord {
    fn min_label(&self) -> u32 {
        *self.quad.iter().min().unwrap()
    }

    fn rotated(&self, by: usize) -> CrossingRecord {
        CrossingRecord {
            name: self.name,
            quad: std::array::from_fn(|i| self.quad[(i + by) & 3]),
        }
    }
}

impl fmt::Display for CrossingRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.quad;
        write!(f, "{}[{a},{b},{c},{d}]", self.name)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EpdError {
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: &'static str },
    #[error("edge label {label} appears {count} times (expected exactly twice)")]
    LabelMultiplicity { label: u32, count: usize },
    #[error("edge labels are not exactly 1..={expected_max}")]
    LabelRange { expected_max: u32 },
    #[error("invalid diagram: {0}")]
    Map(#[from] MapError),
}

/// Ordered list of crossing records; the universal diagram format.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpdCode {
    crossings: Vec<CrossingRecord>,
}

impl EpdCode {
    pub(crate) fn from_records_unchecked(crossings: Vec<CrossingRecord>) -> Self {
        EpdCode { crossings }
    }

    /// Validates label multiplicities, connectivity and sphericity.
    pub fn from_records(crossings: Vec<CrossingRecord>) -> Result<Self, EpdError> {
        let code = EpdCode { crossings };
        code.validate()?;
        Ok(code)
    }

    pub fn parse(text: &str) -> Result<Self, EpdError> {
        let records = Parser::new(text).parse()?;
        Self::from_records(records)
    }

    fn validate(&self) -> Result<(), EpdError> {
        let n = self.crossings.len();
        let max = self.crossings.iter().flat_map(|r| r.quad).max().unwrap_or(0);
        let mut counts = vec![0usize; max as usize + 1];
        for r in &self.crossings {
            for &l in &r.quad {
                counts[l as usize] += 1;
            }
        }
        for (label, &count) in counts.iter().enumerate().skip(1) {
            if count != 0 && count != 2 {
                return Err(EpdError::LabelMultiplicity { label: label as u32, count });
            }
        }
        let expected_max = 2 * n as u32;
        if max != expected_max || counts.iter().skip(1).any(|&c| c == 0) {
            return Err(EpdError::LabelRange { expected_max });
        }
        PlaneMap::from_pairing(self.pairing())?;
        Ok(())
    }

    fn pairing(&self) -> Vec<usize> {
        let n = self.crossings.len();
        let mut first = vec![usize::MAX; 2 * n + 1];
        let mut opp = vec![0usize; 4 * n];
        for (i, r) in self.crossings.iter().enumerate() {
            for (j, &l) in r.quad.iter().enumerate() {
                let d = 4 * i + j;
                let f = &mut first[l as usize];
                if *f == usize::MAX {
                    *f = d;
                } else {
                    opp[d] = *f;
                    opp[*f] = d;
                }
            }
        }
        opp
    }

    pub fn records(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    /// Total crossings `n`.
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Marked vertices `m`.
    pub fn marker_count(&self) -> usize {
        self.crossings.iter().filter(|r| r.name.is_marked()).count()
    }

    pub fn is_classical(&self) -> bool {
        self.marker_count() == 0
    }

    /// Underlying 4-valent map; dart `4 i + j` is position `j` of record `i`.
    pub fn to_map(&self) -> PlaneMap {
        PlaneMap::from_pairing(self.pairing()).expect("validated code")
    }

    pub fn to_diagram(&self) -> Diagram {
        let kinds = self
            .crossings
            .iter()
            .map(|r| match r.name {
                Name::X => VertexKind::Crossing { under: 0 },
                Name::Y => VertexKind::Marker { plus: 0 },
                Name::Z => VertexKind::Marker { plus: 1 },
            })
            .collect();
        Diagram::new(self.to_map(), kinds)
    }

    /// Whole-diagram mirror: every crossing changed and every marker switched.
    pub fn mirror(&self) -> EpdCode {
        EpdCode {
            crossings: self
                .crossings
                .iter()
                .map(|r| match r.name {
                    Name::X => r.rotated(1),
                    n => CrossingRecord { name: n.swapped(), quad: r.quad },
                })
                .collect(),
        }
    }

    /// Mirror with respect to marked vertices only.
    pub fn switch(&self) -> EpdCode {
        EpdCode {
            crossings: self
                .crossings
                .iter()
                .map(|r| CrossingRecord { name: r.name.swapped(), quad: r.quad })
                .collect(),
        }
    }

    /// Records sorted by minimal quad entry (ties by the full record).
    pub fn normalized(&self) -> EpdCode {
        let mut crossings = self.crossings.clone();
        crossings.sort_by_key(|r| (r.min_label(), r.quad, r.name));
        EpdCode { crossings }
    }

    /// Face sizes of the underlying map, ascending.
    pub fn gon_census(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.to_map().faces().iter().map(|f| f.size()).collect();
        sizes.sort_unstable();
        sizes
    }
}

impl fmt::Display for EpdCode {
    /// Serialized without whitespace, in stored order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for EpdCode {
    type Err = EpdError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EpdCode::parse(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { bytes: text.trim_end_matches(['\n', '\r']).as_bytes(), pos: 0 }
    }

    fn err(&self, expected: &'static str) -> EpdError {
        EpdError::Syntax { pos: self.pos, expected }
    }

    fn expect(&mut self, b: u8, expected: &'static str) -> Result<(), EpdError> {
        if self.bytes.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn comma(&mut self) -> Result<(), EpdError> {
        self.expect(b',', "','")?;
        while matches!(self.bytes.get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
        Ok(())
    }

    fn int(&mut self) -> Result<u32, EpdError> {
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(b'1'..=b'9') => self.pos += 1,
            _ => return Err(self.err("a nonzero integer")),
        }
        while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| EpdError::Syntax { pos: start, expected: "an integer below 2^32" })
    }

    fn entry(&mut self) -> Result<CrossingRecord, EpdError> {
        let name = match self.bytes.get(self.pos) {
            Some(b'X') => Name::X,
            Some(b'Y') => Name::Y,
            Some(b'Z') => Name::Z,
            _ => return Err(self.err("one of X, Y, Z")),
        };
        self.pos += 1;
        self.expect(b'[', "'['")?;
        let mut quad = [0u32; 4];
        for (i, slot) in quad.iter_mut().enumerate() {
            if i > 0 {
                self.comma()?;
            }
            *slot = self.int()?;
        }
        self.expect(b']', "']'")?;
        Ok(CrossingRecord { name, quad })
    }

    fn parse(mut self) -> Result<Vec<CrossingRecord>, EpdError> {
        let mut records = vec![self.entry()?];
        while self.pos < self.bytes.len() {
            self.comma()?;
            records.push(self.entry()?);
        }
        Ok(records)
    }
}

/// Base PD code of a shadow: all crossings `X`, labels increasing along circuits,
/// record `i` describing vertex `i` with its under strand on the even slots.
pub fn shadow_to_base_pd(shadow: &PlaneMap) -> EpdCode {
    let kinds = vec![VertexKind::Crossing { under: 0 }; shadow.vertex_count()];
    Diagram::new(shadow.clone(), kinds).to_epd()
}

/// Per-crossing decoration relative to a base record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Decoration {
    /// `X` with the base record's quad.
    Keep = 0,
    /// `X` with the quad rotated by one (crossing changed).
    Change = 1,
    /// `Y` on the base quad.
    MarkY = 2,
    /// `Z` on the base quad.
    MarkZ = 3,
}

impl Decoration {
    pub fn is_marked(self) -> bool {
        matches!(self, Decoration::MarkY | Decoration::MarkZ)
    }
}

/// Decoration vectors for `n` crossings with a marked count in `marker_counts`,
/// one per orbit of {identity, crossing change, switch, both}.
///
/// Within each orbit the representative leaves the first unmarked crossing unchanged
/// and marks the first marked crossing `Y`. Order: by marker count as given, then
/// by marked subset (as a bit mask), then classical and marker choices.
pub fn assignments(n: usize, marker_counts: &[usize]) -> impl Iterator<Item = Vec<Decoration>> + '_ {
    assert!(n < 32);
    marker_counts.iter().copied().filter(move |&m| m <= n).flat_map(move |m| {
        (0u32..(1 << n)).filter(move |mask| mask.count_ones() as usize == m).flat_map(move |mask| {
            let unmarked = n - m;
            let c_range = if unmarked == 0 { 1u32 } else { 1 << (unmarked - 1) };
            let z_range = if m == 0 { 1u32 } else { 1 << (m - 1) };
            (0..c_range).flat_map(move |c| {
                (0..z_range).map(move |z| {
                    let (mut ci, mut zi) = (0, 0);
                    (0..n)
                        .map(|i| {
                            if mask >> i & 1 == 1 {
                                // first marked crossing fixed to Y
                                let bit = if zi == 0 { 0 } else { z >> (zi - 1) & 1 };
                                zi += 1;
                                if bit == 0 { Decoration::MarkY } else { Decoration::MarkZ }
                            } else {
                                let bit = if ci == 0 { 0 } else { c >> (ci - 1) & 1 };
                                ci += 1;
                                if bit == 0 { Decoration::Keep } else { Decoration::Change }
                            }
                        })
                        .collect()
                })
            })
        })
    })
}

/// Number of decorated diagrams per shadow with `n` crossings, all marker counts.
pub fn diagrams_per_shadow(n: u32) -> u64 {
    4u64.pow(n - 1) + 2u64.pow(n - 1)
}

impl EpdCode {
    /// Applies one decoration per record (the code must be all `X`).
    pub fn decorated(&self, decorations: &[Decoration]) -> EpdCode {
        assert_eq!(decorations.len(), self.len());
        EpdCode {
            crossings: self
                .crossings
                .iter()
                .zip(decorations)
                .map(|(r, d)| match d {
                    Decoration::Keep => *r,
                    Decoration::Change => r.rotated(1),
                    Decoration::MarkY => CrossingRecord { name: Name::Y, quad: r.quad },
                    Decoration::MarkZ => CrossingRecord { name: Name::Z, quad: r.quad },
                })
                .collect(),
        }
    }
}

/// All decorated diagrams over `base` with a marked count in `marker_counts`,
/// one per mirror/switch orbit.
pub fn enumerate_diagrams<'a>(
    base: &'a EpdCode,
    marker_counts: &'a [usize],
) -> impl Iterator<Item = EpdCode> + 'a {
    assert!(base.is_classical());
    assignments(base.len(), marker_counts).map(move |a| base.decorated(&a))
}

/// Decorates a base diagram whose crossings all have their under strand on even slots.
pub fn decorate_diagram(base: &Diagram, decorations: &[Decoration]) -> Diagram {
    let kinds = decorations
        .iter()
        .map(|d| match d {
            Decoration::Keep => VertexKind::Crossing { under: 0 },
            Decoration::Change => VertexKind::Crossing { under: 1 },
            Decoration::MarkY => VertexKind::Marker { plus: 0 },
            Decoration::MarkZ => VertexKind::Marker { plus: 1 },
        })
        .collect();
    Diagram::new(base.map.clone(), kinds)
}

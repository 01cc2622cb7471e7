//! Enumeration driver: shadows → decorated diagrams → hard (or admissible)
//! records, plus summary tables and deduplication.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::Diagram;
use crate::epd::{assignments, decorate_diagram, diagrams_per_shadow, shadow_to_base_pd, EpdCode, EpdError};
use crate::invariants::{writhe, InvariantError, PdCode, UNLINK_TEST_MAX_CROSSINGS};
use crate::moves::{is_hard_diagram, is_standard_unlink_diagram, Geometry};
use crate::resolution::is_admissible_diagram;
use crate::shadows::{enumerate_shadows, ShadowError, ShadowSet};
use crate::surface::{yoshikawa_name, SurfaceClass};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Shadow(#[from] ShadowError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Epd(#[from] EpdError),
    #[error("resolutions of {n}-crossing diagrams with {m} marked vertices exceed the {UNLINK_TEST_MAX_CROSSINGS}-crossing unlink test")]
    Guardrail { n: usize, m: usize },
    #[error("record {epd}: stored fields differ from recomputation")]
    Verification { epd: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    /// Marked-vertex counts to enumerate; `None` means `0..=n`.
    pub markers: Option<Vec<usize>>,
    /// Emit every admissible diagram, not only hard ones.
    pub all_admissible: bool,
}

impl RunConfig {
    pub fn new(n: usize) -> Self {
        RunConfig { n, markers: None, all_admissible: false }
    }

    pub fn marker_counts(&self) -> Vec<usize> {
        let mut m: Vec<usize> = match &self.markers {
            Some(list) => list.iter().copied().filter(|&k| k <= self.n).collect(),
            None => (0..=self.n).collect(),
        };
        m.sort_unstable();
        m.dedup();
        m
    }

    fn check(&self) -> Result<(), PipelineError> {
        for m in self.marker_counts() {
            if self.n - m > UNLINK_TEST_MAX_CROSSINGS {
                return Err(PipelineError::Guardrail { n: self.n, m });
            }
        }
        Ok(())
    }
}

/// One output line. Every field is recomputable from `epd`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub epd: String,
    pub n: usize,
    pub m: usize,
    pub admissible: bool,
    pub hard: bool,
    pub components: usize,
    pub euler: i64,
    pub orientable: bool,
    pub name: String,
    pub gons: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub writhe: Option<i64>,
}

impl DiagramRecord {
    /// Classifies `code`; the name carries family index `index` (0 when unassigned).
    pub fn classify(code: &EpdCode, index: usize) -> Result<Self, InvariantError> {
        let code = code.normalized();
        let diagram = code.to_diagram();
        let admissible = is_admissible_diagram(&diagram)?;
        let hard = admissible && is_hard_diagram(&diagram)?;
        let class = SurfaceClass::of(&diagram);
        let (n, m) = (code.len(), code.marker_count());
        let writhe = (m == 0).then(|| writhe(&PdCode::from_epd(&code).expect("classical")));
        Ok(DiagramRecord {
            epd: code.to_string(),
            n,
            m,
            admissible,
            hard,
            components: class.components,
            euler: class.euler,
            orientable: class.orientable,
            name: yoshikawa_name(n, m, &class, index),
            gons: code.gon_census(),
            writhe,
        })
    }

    pub fn code(&self) -> Result<EpdCode, EpdError> {
        EpdCode::parse(&self.epd)
    }

    pub fn class(&self) -> SurfaceClass {
        SurfaceClass { components: self.components, euler: self.euler, orientable: self.orientable }
    }

    /// Recomputes every field from `epd`.
    pub fn verify(&self) -> Result<(), PipelineError> {
        let again = DiagramRecord::classify(&self.code()?, self.index())?;
        if &again != self {
            return Err(PipelineError::Verification { epd: self.epd.clone() });
        }
        Ok(())
    }

    /// Family index parsed back from the name.
    pub fn index(&self) -> usize {
        self.name
            .rsplit(',')
            .next()
            .and_then(|s| s.trim_end_matches('}').parse().ok())
            .unwrap_or(0)
    }
}

/// Hard and admissible counts for one crossing number, indexed by marker count.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub n: usize,
    pub shadows: usize,
    pub diagrams: u64,
    pub admissible: BTreeMap<usize, u64>,
    pub hard: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub records: Vec<DiagramRecord>,
    pub summary: Summary,
}

struct Found {
    code: EpdCode,
    canonical: Vec<u8>,
    hard: bool,
}

/// Result of one decorated diagram: `None` when not emitted.
fn examine(base: &EpdCode, base_diagram: &Diagram, faces: &crate::planar_map::FaceTable, decs: &[crate::epd::Decoration], all: bool) -> Result<(bool, Option<Found>), InvariantError> {
    let diagram = decorate_diagram(base_diagram, decs);
    let movable = Geometry::with_faces(&diagram, faces).any().is_some() || is_standard_unlink_diagram(&diagram);
    if movable && !all {
        return Ok((false, None));
    }
    if !is_admissible_diagram(&diagram)? {
        return Ok((false, None));
    }
    let found = Found { code: base.decorated(decs), canonical: diagram.canonical_code(true), hard: !movable };
    Ok((true, Some(found)))
}

/// Enumerates every decorated diagram over the shadows with `config.n` crossings.
pub fn run_enumeration(config: &RunConfig) -> Result<RunOutput, PipelineError> {
    config.check()?;
    let shadows = enumerate_shadows(config.n)?;
    run_on_shadows(config, &shadows)
}

pub fn run_on_shadows(config: &RunConfig, shadows: &ShadowSet) -> Result<RunOutput, PipelineError> {
    config.check()?;
    let n = config.n;
    let counts = config.marker_counts();
    let per_shadow: Vec<Result<(u64, BTreeMap<usize, u64>, Vec<Found>), InvariantError>> = shadows
        .shadows
        .par_iter()
        .map(|shadow| {
            let base = shadow_to_base_pd(shadow);
            let base_diagram = base.to_diagram();
            let faces = base_diagram.face_table();
            let mut total = 0u64;
            let mut admissible = BTreeMap::new();
            let mut found = Vec::new();
            for decs in assignments(n, &counts) {
                total += 1;
                let (adm, f) = examine(&base, &base_diagram, &faces, &decs, config.all_admissible)?;
                if adm {
                    let m = decs.iter().filter(|d| d.is_marked()).count();
                    *admissible.entry(m).or_insert(0) += 1;
                }
                found.extend(f);
            }
            Ok((total, admissible, found))
        })
        .collect();
    let mut summary = Summary { n, shadows: shadows.len(), ..Summary::default() };
    for &m in &counts {
        summary.hard.insert(m, 0);
    }
    let mut buckets: BTreeMap<usize, Vec<Found>> = BTreeMap::new();
    for r in per_shadow {
        let (total, admissible, found) = r?;
        summary.diagrams += total;
        for (m, c) in admissible {
            *summary.admissible.entry(m).or_insert(0) += c;
        }
        for f in found {
            let m = f.code.marker_count();
            if f.hard {
                *summary.hard.entry(m).or_insert(0) += 1;
            }
            buckets.entry(m).or_default().push(f);
        }
    }
    let mut records = Vec::new();
    for (_, mut bucket) in buckets {
        bucket.sort_by(|a, b| (!a.hard, &a.canonical, a.code.to_string()).cmp(&(!b.hard, &b.canonical, b.code.to_string())));
        let classified: Result<Vec<DiagramRecord>, InvariantError> = bucket
            .par_iter()
            .enumerate()
            .map(|(i, f)| DiagramRecord::classify(&f.code, if f.hard { i + 1 } else { 0 }))
            .collect();
        records.extend(classified?);
    }
    Ok(RunOutput { records, summary })
}

/// Number of decorated diagrams enumerated for `n` crossings over `shadows` shadows.
pub fn expected_diagram_count(n: usize, shadows: usize) -> u64 {
    shadows as u64 * diagrams_per_shadow(n as u32)
}

/// Tab-separated columns `n`, `S`, `DG`.
pub fn shadow_table(summaries: &[Summary]) -> String {
    let mut out = String::from("n\tS\tDG\n");
    for s in summaries {
        writeln!(out, "{}\t{}\t{}", s.n, s.shadows, s.diagrams).unwrap();
    }
    out
}

/// Tab-separated hard counts `M_k` per row, `-` above the diagonal.
pub fn hard_table(rows: &BTreeMap<usize, BTreeMap<usize, u64>>) -> String {
    let width = rows.keys().copied().max().unwrap_or(0);
    let mut out = String::from("n");
    for k in 0..=width {
        write!(out, "\tM{k}").unwrap();
    }
    out.push('\n');
    for (&n, row) in rows {
        write!(out, "{n}").unwrap();
        for k in 0..=width {
            match (k <= n, row.get(&k)) {
                (false, _) => out.push_str("\t-"),
                (true, Some(c)) => write!(out, "\t{c}").unwrap(),
                (true, None) => out.push('\t'),
            }
        }
        out.push('\n');
    }
    out
}

/// Hard counts per `(n, m)` from a set of records.
pub fn hard_rows(records: &[DiagramRecord]) -> BTreeMap<usize, BTreeMap<usize, u64>> {
    let mut rows: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.hard) {
        *rows.entry(r.n).or_default().entry(r.m).or_insert(0) += 1;
    }
    rows
}

/// Key identifying a diagram up to orientation-preserving homeomorphism of the
/// sphere, mirror image and switch. Reflection of the sphere is not included: it
/// changes the sign of the writhe.
pub fn dedup_key(code: &EpdCode) -> Vec<u8> {
    let d = code.to_diagram();
    [d.clone(), d.mirror(), d.switch(), d.mirror().switch()]
        .iter()
        .map(|v| v.canonical_code(false))
        .min()
        .unwrap()
}

/// Groups records into classes; each class is listed in input order and the
/// classes are ordered by their first member.
pub fn dedup_spherical_mirror(records: &[DiagramRecord]) -> Result<Vec<Vec<usize>>, EpdError> {
    let keys: Vec<Vec<u8>> = records
        .par_iter()
        .map(|r| r.code().map(|c| dedup_key(&c)))
        .collect::<Result<_, _>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index: BTreeMap<&[u8], usize> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        match index.get(k.as_slice()) {
            Some(&c) => classes[c].push(i),
            None => {
                index.insert(k, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let out = run_enumeration(&RunConfig::new(4)).unwrap();
        assert_eq!(out.summary.diagrams, 2 * diagrams_per_shadow(4));
        let hard: Vec<u64> = out.summary.hard.values().copied().collect();
        assert_eq!(hard, vec![0, 0, 0, 0, 1]);
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].name, "4^{1,0,Ori}_{4,1}");
    }

    #[test]
    fn marker_filter() {
        let cfg = RunConfig { n: 4, markers: Some(vec![4, 9, 4]), all_admissible: false };
        assert_eq!(cfg.marker_counts(), vec![4]);
        let out = run_enumeration(&cfg).unwrap();
        assert_eq!(out.summary.diagrams, 2 * 8);
    }

    #[test]
    fn guardrail() {
        let cfg = RunConfig { n: 13, markers: Some(vec![0]), all_admissible: false };
        assert!(matches!(run_enumeration(&cfg), Err(PipelineError::Guardrail { .. })));
    }

    #[test]
    fn records_verify() {
        let out = run_enumeration(&RunConfig { n: 5, markers: None, all_admissible: true }).unwrap();
        assert!(!out.records.is_empty());
        for r in &out.records {
            r.verify().unwrap();
        }
    }

    #[test]
    fn table_layout() {
        let mut rows = BTreeMap::new();
        rows.insert(3, (0..=3).map(|k| (k, 0)).collect());
        rows.insert(4, [(0, 0), (4, 1)].into_iter().collect());
        let t = hard_table(&rows);
        assert_eq!(t.lines().next().unwrap(), "n\tM0\tM1\tM2\tM3\tM4");
        assert_eq!(t.lines().nth(1).unwrap(), "3\t0\t0\t0\t0\t-");
    }
}

//! Exhaustive generation of prime reduced connected link shadows.
//!
//! Shadows with `n` vertices are grown from those with `n - 1` by pinching two
//! boundary edges of one face into a new vertex (the inverse of smoothing a
//! vertex). Every prime reduced shadow has a prime reduced parent, so level-wise
//! growth with reflection-inclusive canonical dedup reaches every class.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::planar_map::{canonical_code, from_hex, hopf_shadow, map_from_code, to_hex, PlaneMap};

#[derive(Debug, Error)]
pub enum ShadowError {
    #[error("no prime reduced shadow has {0} crossings (need at least 2)")]
    TooFewCrossings(usize),
    #[error("shadow cache line {line}: {reason}")]
    BadCache { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// All shadows with `n` crossings in canonical-code order.
#[derive(Clone, Debug)]
pub struct ShadowSet {
    pub n: usize,
    pub shadows: Vec<PlaneMap>,
    pub codes: Vec<Vec<u8>>,
}

impl ShadowSet {
    pub fn len(&self) -> usize {
        self.shadows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shadows.is_empty()
    }

    fn from_codes(n: usize, codes: BTreeMap<Vec<u8>, ()>) -> Self {
        let codes: Vec<Vec<u8>> = codes.into_keys().collect();
        let shadows = codes.iter().map(|c| map_from_code(c).expect("canonical code")).collect();
        ShadowSet { n, shadows, codes }
    }

    /// Writes one lowercase-hex canonical code per line.
    pub fn write_cache<W: Write>(&self, mut w: W) -> io::Result<()> {
        for c in &self.codes {
            writeln!(w, "{}", to_hex(c))?;
        }
        Ok(())
    }

    pub fn read_cache<R: BufRead>(n: usize, r: R) -> Result<Self, ShadowError> {
        let mut codes = BTreeMap::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |reason: &str| ShadowError::BadCache { line: i + 1, reason: reason.to_string() };
            let code = from_hex(&line).ok_or_else(|| bad("not lowercase hex"))?;
            let map = map_from_code(&code).map_err(|e| bad(&e.to_string()))?;
            if map.vertex_count() != n {
                return Err(bad("wrong crossing count"));
            }
            if canonical_code(&map, true) != code {
                return Err(bad("not a canonical code"));
            }
            codes.insert(code, ());
        }
        Ok(Self::from_codes(n, codes))
    }
}

/// Every map obtained from `map` by pinching two distinct edges of a common face.
pub fn pinches(map: &PlaneMap) -> Vec<PlaneMap> {
    let n = map.vertex_count();
    let w = 4 * n;
    let mut out = Vec::new();
    for face in map.faces() {
        let k = face.darts.len();
        for i in 0..k {
            for j in i + 1..k {
                let (di, dj) = (face.darts[i], face.darts[j]);
                let (ti, tj) = (map.opp(di), map.opp(dj));
                if di == tj {
                    // same edge traversed twice by one face
                    continue;
                }
                let mut opp: Vec<u32> = map.pairing().map(|t| t as u32).collect();
                opp.extend_from_slice(&[0; 4]);
                // new vertex, counterclockwise: tail of i, head of j, tail of j, head of i
                let link = |opp: &mut Vec<u32>, a: usize, b: usize| {
                    opp[a] = b as u32;
                    opp[b] = a as u32;
                };
                link(&mut opp, di, w);
                link(&mut opp, tj, w + 1);
                link(&mut opp, dj, w + 2);
                link(&mut opp, ti, w + 3);
                out.push(PlaneMap::from_pairing_unchecked(opp));
            }
        }
    }
    out
}

fn grow(level: &[PlaneMap]) -> BTreeMap<Vec<u8>, ()> {
    let codes: Vec<Vec<u8>> = level
        .par_iter()
        .flat_map_iter(|m| pinches(m).into_iter())
        .filter(|c| c.is_prime_reduced_shadow())
        .map(|c| canonical_code(&c, true))
        .collect();
    codes.into_iter().map(|c| (c, ())).collect()
}

/// Prime reduced shadows with `n` crossings, one per class under sphere
/// isomorphism and reflection.
pub fn enumerate_shadows(n: usize) -> Result<ShadowSet, ShadowError> {
    Ok(shadow_levels(n)?.pop().unwrap())
}

/// Shadow sets for every crossing count from 2 to `n`.
pub fn shadow_levels(n: usize) -> Result<Vec<ShadowSet>, ShadowError> {
    if n < 2 {
        return Err(ShadowError::TooFewCrossings(n));
    }
    let mut seed = BTreeMap::new();
    seed.insert(canonical_code(&hopf_shadow(), true), ());
    let mut levels = vec![ShadowSet::from_codes(2, seed)];
    for k in 3..=n {
        let next = grow(&levels.last().unwrap().shadows);
        levels.push(ShadowSet::from_codes(k, next));
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let levels = shadow_levels(6).unwrap();
        let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 9]);
    }

    #[test]
    fn below_two_is_error() {
        assert!(matches!(enumerate_shadows(1), Err(ShadowError::TooFewCrossings(1))));
    }

    #[test]
    fn pinches_stay_spherical() {
        for m in enumerate_shadows(4).unwrap().shadows {
            for p in pinches(&m) {
                assert_eq!(p.euler_characteristic(), 2);
            }
        }
    }

    #[test]
    fn cache_roundtrip() {
        let set = enumerate_shadows(5).unwrap();
        let mut buf = Vec::new();
        set.write_cache(&mut buf).unwrap();
        let back = ShadowSet::read_cache(5, &buf[..]).unwrap();
        assert_eq!(back.codes, set.codes);
        assert!(ShadowSet::read_cache(5, &b"zz\n"[..]).is_err());
    }
}

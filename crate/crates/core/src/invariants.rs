//! Classical link diagram invariants: Kauffman bracket, unlink test, writhe and
//! component count.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::Diagram;
use crate::epd::{EpdCode, Name};
use crate::poly::{DensePoly, LaurentPolynomial};

/// Largest crossing count accepted by the bracket.
pub const BRACKET_MAX_CROSSINGS: usize = 16;
/// Largest crossing count for which the Jones polynomial is known to detect unlinks.
pub const UNLINK_TEST_MAX_CROSSINGS: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has {0} crossings; the bracket is limited to {BRACKET_MAX_CROSSINGS}")]
    TooLarge(usize),
    #[error("diagram has {0} crossings, outside the validity domain of the Jones unlink test (at most {UNLINK_TEST_MAX_CROSSINGS})")]
    OutsideValidityDomain(usize),
    #[error("code contains marked vertices; a classical diagram is required")]
    NotClassical,
}

/// Classical link diagram: `X` quads (under strand first) plus crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PdCode {
    pub crossings: Vec<[u32; 4]>,
    pub circles: usize,
}

impl PdCode {
    pub fn unlink(circles: usize) -> Self {
        PdCode { crossings: Vec::new(), circles }
    }

    pub fn from_epd(code: &EpdCode) -> Result<Self, InvariantError> {
        if code.records().iter().any(|r| r.name != Name::X) {
            return Err(InvariantError::NotClassical);
        }
        Ok(PdCode {
            crossings: code.records().iter().map(|r| r.quad).collect(),
            circles: 0,
        })
    }

    /// Classical diagram (no marked vertices) plus extra circles.
    pub fn from_diagram(diagram: &Diagram, circles: usize) -> Self {
        debug_assert!(diagram.kinds.iter().all(|k| !k.is_marker()));
        PdCode {
            crossings: diagram.to_epd().records().iter().map(|r| r.quad).collect(),
            circles,
        }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn mirror(&self) -> PdCode {
        PdCode {
            crossings: self.crossings.iter().map(|&[a, b, c, d]| [b, c, d, a]).collect(),
            circles: self.circles,
        }
    }

    fn max_label(&self) -> usize {
        self.crossings.iter().flatten().copied().max().unwrap_or(0) as usize
    }

    /// Occurrences of each label as `(crossing, slot)`.
    fn occurrences(&self) -> Vec<[(usize, usize); 2]> {
        let mut occ = vec![[(usize::MAX, 0); 2]; self.max_label() + 1];
        for (i, q) in self.crossings.iter().enumerate() {
            for (j, &l) in q.iter().enumerate() {
                let slot = &mut occ[l as usize];
                if slot[0].0 == usize::MAX {
                    slot[0] = (i, j);
                } else {
                    slot[1] = (i, j);
                }
            }
        }
        occ
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Number of link components: transverse circuits plus crossingless circles.
pub fn component_count(code: &PdCode) -> usize {
    let n = code.max_label();
    let mut parent: Vec<usize> = (0..=n).collect();
    for &[a, b, c, d] in &code.crossings {
        for (x, y) in [(a, c), (b, d)] {
            let (rx, ry) = (find(&mut parent, x as usize), find(&mut parent, y as usize));
            parent[rx] = ry;
        }
    }
    let circuits = (1..=n).filter(|&l| find(&mut parent, l) == l).count();
    circuits + code.circles
}

/// Kauffman bracket in `A`, with loop value `-A^2 - A^-2` and the one-circle diagram
/// normalized to 1. Crossing `[a,b,c,d]` smooths to `A <a-b, c-d> + A^-1 <a-d, b-c>`.
pub fn kauffman_bracket(code: &PdCode) -> Result<LaurentPolynomial, InvariantError> {
    if code.len() > BRACKET_MAX_CROSSINGS {
        return Err(InvariantError::TooLarge(code.len()));
    }
    Ok(bracket_dense(code).to_sparse())
}

fn processing_order(code: &PdCode) -> Vec<usize> {
    let n = code.len();
    let mut done = vec![false; n];
    let mut seen = vec![false; code.max_label() + 1];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&i| !done[i])
            .max_by_key(|&i| {
                let shared = code.crossings[i].iter().filter(|&&l| seen[l as usize]).count();
                (shared, std::cmp::Reverse(i))
            })
            .unwrap();
        done[best] = true;
        for &l in &code.crossings[best] {
            seen[l as usize] = true;
        }
        order.push(best);
    }
    order
}

/// Frontier dynamic programme: states are pairings of open edge ends.
fn bracket_dense(code: &PdCode) -> DensePoly {
    let delta_pow = |p: DensePoly, k: usize| (0..k).fold(p, |acc, _| acc.times_delta());
    if code.is_empty() {
        return match code.circles {
            0 => DensePoly::monomial(0),
            c => delta_pow(DensePoly::monomial(0), c - 1),
        };
    }
    let labels = code.max_label() + 1;
    let mut states: HashMap<Vec<u8>, DensePoly> = HashMap::new();
    states.insert(vec![0u8; labels], DensePoly::monomial(0));
    let mut status = vec![0u8; labels]; // ends seen so far
    for i in processing_order(code) {
        let [a, b, c, d] = code.crossings[i].map(|l| l as usize);
        let smoothings = [([(a, b), (c, d)], 1i32), ([(a, d), (b, c)], -1i32)];
        let mut next: HashMap<Vec<u8>, DensePoly> = HashMap::with_capacity(states.len() * 2);
        for (state, poly) in &states {
            for (arcs, exp) in &smoothings {
                let mut partner = state.clone();
                let mut seen = status.clone();
                let mut loops = 0;
                for &(p, q) in arcs {
                    join(&mut partner, &mut seen, p, q, &mut loops);
                }
                let mut contribution = poly.clone();
                for _ in 0..loops {
                    contribution = contribution.times_delta();
                }
                next.entry(partner).or_default().add_shifted(&contribution, *exp);
            }
        }
        for l in [a, b, c, d] {
            status[l] += 1;
        }
        states = next;
    }
    let total = states.into_values().fold(DensePoly::default(), |mut acc, p| {
        acc.add_shifted(&p, 0);
        acc
    });
    let result = total
        .to_sparse()
        .div_exact(&LaurentPolynomial::delta())
        .expect("bracket state sum is divisible by the loop value");
    let mut dense = DensePoly::default();
    for (e, c) in result.terms() {
        let mut m = DensePoly::monomial(e);
        m.coeffs[0] = c;
        dense.add_shifted(&m, 0);
    }
    delta_pow(dense, code.circles)
}

/// Joins edge ends `p` and `q` by an arc. `partner[x]` is the open end at the other
/// extremity of the path currently ending at open label `x` (0 when not open).
fn join(partner: &mut [u8], seen: &mut [u8], p: usize, q: usize, loops: &mut usize) {
    if p == q {
        // both ends of one edge at this crossing, joined to each other
        debug_assert_eq!(seen[p], 0);
        seen[p] = 2;
        *loops += 1;
        return;
    }
    let p_open = seen[p] == 1;
    let q_open = seen[q] == 1;
    seen[p] += 1;
    seen[q] += 1;
    match (p_open, q_open) {
        (false, false) => {
            partner[p] = q as u8;
            partner[q] = p as u8;
        }
        (true, false) | (false, true) => {
            let (closed, fresh) = if p_open { (p, q) } else { (q, p) };
            let r = partner[closed] as usize;
            partner[closed] = 0;
            partner[fresh] = r as u8;
            partner[r] = fresh as u8;
        }
        (true, true) => {
            let (rp, rq) = (partner[p] as usize, partner[q] as usize);
            partner[p] = 0;
            partner[q] = 0;
            if rp == q {
                *loops += 1;
            } else {
                partner[rp] = rq as u8;
                partner[rq] = rp as u8;
            }
        }
    }
}

/// Orientation of every label: `head[l]` is the occurrence the edge points into.
/// Each component is oriented so that, leaving its smallest label, the next label
/// met is the smaller of its two neighbours.
fn orient(code: &PdCode) -> Vec<(usize, usize)> {
    let occ = code.occurrences();
    let n = code.max_label();
    let mut head = vec![(usize::MAX, 0); n + 1];
    let next_label = |(i, j): (usize, usize)| code.crossings[i][(j + 2) & 3] as usize;
    let other = |l: usize, o: (usize, usize)| if occ[l][0] == o { occ[l][1] } else { occ[l][0] };
    for l0 in 1..=n {
        if head[l0].0 != usize::MAX {
            continue;
        }
        let [o1, o2] = occ[l0];
        let (n1, n2) = (next_label(o1), next_label(o2));
        let h0 = if n1 < n2 || (n1 == n2 && o1 < o2) { o1 } else { o2 };
        let mut l = l0;
        let mut h = h0;
        loop {
            head[l] = h;
            let out = (h.0, (h.1 + 2) & 3);
            let nl = code.crossings[out.0][out.1] as usize;
            let nh = other(nl, out);
            if nl == l0 && nh == h0 {
                break;
            }
            if head[nl].0 != usize::MAX {
                break;
            }
            l = nl;
            h = nh;
        }
    }
    head
}

/// Sum of crossing signs with components oriented by increasing labels.
pub fn writhe(code: &PdCode) -> i64 {
    let head = orient(code);
    let mut w = 0;
    for (i, q) in code.crossings.iter().enumerate() {
        let under_in = if head[q[0] as usize] == (i, 0) { 0 } else { 2 };
        let over_in = if head[q[1] as usize] == (i, 1) { 1 } else { 3 };
        // positive when the over strand enters just clockwise of the under strand
        w += if over_in == (under_in + 3) & 3 { 1 } else { -1 };
    }
    w
}

/// Bracket of the `c`-component unlink diagram with writhe `w`: `(-A^3)^w d^(c-1)`.
pub fn unlink_bracket(components: usize, writhe: i64) -> LaurentPolynomial {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let d = LaurentPolynomial::delta().pow(components.saturating_sub(1) as u32);
    &LaurentPolynomial::monomial(sign, 3 * writhe as i32) * &d
}

/// Jones-polynomial unlink test: the writhe-normalized bracket equals that of the
/// unlink with the same number of components.
pub fn is_trivial_unlink(code: &PdCode) -> Result<bool, InvariantError> {
    if code.len() > UNLINK_TEST_MAX_CROSSINGS {
        return Err(InvariantError::OutsideValidityDomain(code.len()));
    }
    let c = component_count(code);
    let w = writhe(code);
    Ok(bracket_dense(code).to_sparse() == unlink_bracket(c, w))
}

/// Face sizes of the underlying map, ascending.
pub fn gon_census(code: &EpdCode) -> Vec<usize> {
    code.gon_census()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> PdCode {
        PdCode::from_epd(&EpdCode::parse(s).unwrap()).unwrap()
    }

    const TREFOIL: &str = "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]";
    const HOPF: &str = "X[4,1,3,2],X[2,3,1,4]";

    #[test]
    fn empty_and_circles() {
        assert_eq!(kauffman_bracket(&PdCode::unlink(1)).unwrap(), LaurentPolynomial::one());
        assert_eq!(kauffman_bracket(&PdCode::unlink(3)).unwrap(), LaurentPolynomial::delta().pow(2));
        assert!(is_trivial_unlink(&PdCode::unlink(3)).unwrap());
        assert_eq!(writhe(&PdCode::unlink(2)), 0);
    }

    #[test]
    fn trefoil_bracket() {
        // <trefoil> for this labeling: A^-7 - A^-3 - A^5
        let b = kauffman_bracket(&pd(TREFOIL)).unwrap();
        assert_eq!(b, LaurentPolynomial::from_terms([(-7, 1), (-3, -1), (5, -1)]));
        assert_eq!(kauffman_bracket(&pd(TREFOIL).mirror()).unwrap(), b.invert_variable());
        assert!(!is_trivial_unlink(&pd(TREFOIL)).unwrap());
        assert_eq!(writhe(&pd(TREFOIL)).abs(), 3);
    }

    #[test]
    fn components() {
        assert_eq!(component_count(&pd(TREFOIL)), 1);
        assert_eq!(component_count(&pd(HOPF)), 2);
        assert_eq!(component_count(&pd(TREFOIL).mirror()), 1);
    }

    #[test]
    fn kinks_are_unknots() {
        for s in ["X[1,1,2,2]", "X[1,2,2,1]", "X[2,1,1,2]", "X[2,2,1,1]"] {
            let c = pd(s);
            assert!(is_trivial_unlink(&c).unwrap(), "{s}");
            assert_eq!(writhe(&c).abs(), 1);
        }
    }

    #[test]
    fn hopf_is_not_unlink() {
        assert!(!is_trivial_unlink(&pd(HOPF)).unwrap());
    }

    #[test]
    fn writhe_flips_under_mirror() {
        for s in [TREFOIL, HOPF, "X[1,1,2,2]"] {
            assert_eq!(writhe(&pd(s).mirror()), -writhe(&pd(s)));
        }
    }

    #[test]
    fn guardrails() {
        let big = PdCode { crossings: vec![[1, 1, 2, 2]; 13], circles: 0 };
        assert_eq!(is_trivial_unlink(&big), Err(InvariantError::OutsideValidityDomain(13)));
        let huge = PdCode { crossings: vec![[1, 1, 2, 2]; 17], circles: 0 };
        assert_eq!(kauffman_bracket(&huge), Err(InvariantError::TooLarge(17)));
        assert_eq!(PdCode::from_epd(&EpdCode::parse("Y[1,2,2,1]").unwrap()), Err(InvariantError::NotClassical));
    }

    #[test]
    fn census_sums_to_twice_edges() {
        let c = EpdCode::parse(TREFOIL).unwrap();
        assert_eq!(gon_census(&c), vec![2, 2, 2, 3, 3]);
        assert_eq!(gon_census(&c).iter().sum::<usize>(), 12);
    }
}

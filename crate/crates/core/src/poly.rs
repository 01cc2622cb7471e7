//! Sparse Laurent polynomials in one variable with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in `A` and `A^-1`. Zero coefficients are never stored.
///
/// Coefficients are `i64` with checked arithmetic; overflow panics instead of wrapping.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = entry.checked_add(coeff).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    pub fn shift(&self, by: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + by, c)))
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (&dlead_e, &dlead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&e, &c)) = rem.terms.iter().next_back() {
            if c % dlead_c != 0 {
                return None;
            }
            let qe = e - dlead_e;
            let qc = c / dlead_c;
            // lowest exponent of the remainder must stay reachable
            if let (Some((&rl, _)), Some((&dl, _))) = (rem.terms.iter().next(), divisor.terms.iter().next()) {
                if qe + dl < rl {
                    return None;
                }
            }
            let step = Self::monomial(qc, qe);
            rem = &rem - &(&step * divisor);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.checked_neg().expect("coefficient overflow"));
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let abs = c.unsigned_abs();
            let coeff = if abs == 1 && *e != 0 { String::new() } else { abs.to_string() };
            let var = match *e {
                0 => String::new(),
                1 => "A".to_string(),
                e => format!("A^{e}"),
            };
            write!(f, "{sign}{coeff}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// Dense polynomial used on the bracket hot path; exponents offset by `min`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct DensePoly {
    pub min: i32,
    pub coeffs: Vec<i64>,
}

impl DensePoly {
    pub fn monomial(exp: i32) -> Self {
        DensePoly { min: exp, coeffs: vec![1] }
    }

    /// `self += other * A^shift`
    pub fn add_shifted(&mut self, other: &DensePoly, shift: i32) {
        if other.coeffs.is_empty() {
            return;
        }
        let omin = other.min + shift;
        if self.coeffs.is_empty() {
            self.min = omin;
            self.coeffs = other.coeffs.clone();
            return;
        }
        let lo = self.min.min(omin);
        let hi = (self.min + self.coeffs.len() as i32).max(omin + other.coeffs.len() as i32);
        if lo < self.min || hi > self.min + self.coeffs.len() as i32 {
            let mut c = vec![0i64; (hi - lo) as usize];
            let off = (self.min - lo) as usize;
            c[off..off + self.coeffs.len()].copy_from_slice(&self.coeffs);
            self.coeffs = c;
            self.min = lo;
        }
        let off = (omin - self.min) as usize;
        for (i, &x) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i] = self.coeffs[off + i].checked_add(x).expect("coefficient overflow");
        }
    }

    /// Multiplies by the loop value `-A^2 - A^-2`.
    pub fn times_delta(&self) -> DensePoly {
        let mut c = vec![0i64; self.coeffs.len() + 4];
        for (i, &x) in self.coeffs.iter().enumerate() {
            c[i] -= x;
            c[i + 4] -= x;
        }
        DensePoly { min: self.min - 2, coeffs: c }
    }

    pub fn to_sparse(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (self.min + i as i32, c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_squared() {
        let d = LaurentPolynomial::delta();
        assert_eq!(d.pow(2), LaurentPolynomial::from_terms([(4, 1), (0, 2), (-4, 1)]));
        assert_eq!(d.pow(2).div_exact(&d), Some(d.clone()));
        assert_eq!(LaurentPolynomial::one().div_exact(&d), None);
    }

    #[test]
    fn zero_terms_dropped() {
        let p = LaurentPolynomial::from_terms([(1, 2), (1, -2), (3, 1)]);
        assert_eq!(p.terms().count(), 1);
        assert_eq!(format!("{}", p), "A^3");
        assert_eq!(format!("{}", &p - &p), "0");
    }

    #[test]
    fn dense_matches_sparse() {
        let mut d = DensePoly::monomial(-3);
        d.add_shifted(&DensePoly::monomial(2), 1);
        let d = d.times_delta();
        let s = &LaurentPolynomial::from_terms([(-3, 1), (3, 1)]) * &LaurentPolynomial::delta();
        assert_eq!(d.to_sparse(), s);
    }
}

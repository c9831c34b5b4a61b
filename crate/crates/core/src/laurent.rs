//! Commutative Laurent polynomials over `Z`, the `q = 1` shadow of the
//! quantum torus. Used as an independent classical oracle for mutation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `Σ c_e y^e` with `e ∈ Z^m`; keys are ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    m: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(vec![0; m], BigInt::one())
    }

    pub fn monomial(e: Vec<i64>, c: BigInt) -> Self {
        let mut out = Self::zero(e.len());
        out.add_term(e, c);
        out
    }

    pub fn variable(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        debug_assert_eq!(e.len(), self.m);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        (0..k).fold(Self::one(self.m), |acc, _| &acc * self)
    }

    /// Exact commutative quotient `self / d`, or `None` if it is not Laurent.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (d_lead_e, d_lead_c) = d.terms.iter().next_back()?;
        let d_low = d.terms.keys().next()?;
        let mut quot = Self::zero(self.m);
        let Some(a_low) = self.terms.keys().next() else {
            return Some(quot);
        };
        let floor: Vec<i64> = a_low.iter().zip(d_low).map(|(a, b)| a - b).collect();
        let mut rem = self.clone();
        while let Some((top_e, top_c)) = rem.terms.iter().next_back() {
            let e: Vec<i64> = top_e.iter().zip(d_lead_e).map(|(a, b)| a - b).collect();
            let (c, r) = top_c.div_rem(d_lead_c);
            if e < floor || !r.is_zero() {
                return None;
            }
            let step = Self::monomial(e, c);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

// exponents add under multiplication
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.m);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*y^{e:?}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip_and_failure() {
        let y1 = LaurentPoly::variable(3, 0);
        let y2 = LaurentPoly::variable(3, 1);
        let one = LaurentPoly::one(3);
        let num = &one + &y2;
        let q = num.div_exact(&y1).unwrap();
        assert_eq!(&q * &y1, num);
        assert_eq!(y1.div_exact(&num), None);
        let sq = &num * &num;
        assert_eq!(sq.div_exact(&num), Some(num.clone()));
        assert_eq!(
            LaurentPoly::zero(3).div_exact(&num),
            Some(LaurentPoly::zero(3))
        );
    }
}

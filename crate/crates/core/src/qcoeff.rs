//! The scalar ring `Z[q^{±1/2}]`.
//!
//! Elements are stored as Laurent polynomials in `v = q^{1/2}`, so an
//! exponent `n` stands for `q^{n/2}`. Every twist `q^{Λ(e,f)/2}` of the
//! quantum torus is then an integer power of `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Laurent polynomial in `v = q^{1/2}` with integer coefficients.
///
/// The map never stores a zero coefficient, so structural equality is ring
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPowerLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl HalfPowerLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    /// The monomial `v^n = q^{n/2}`.
    pub fn q_pow(half_exponent: i64) -> Self {
        Self::monomial(half_exponent, BigInt::one())
    }

    pub fn monomial(half_exponent: i64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(half_exponent, coeff);
        }
        Self { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, BigInt::from(c))
    }

    /// Builds an element from `(half_exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, BigInt::from(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, half_exponent: i64) -> BigInt {
        self.terms.get(&half_exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Multiplies by `v^n`.
    pub fn shift(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + n, c.clone()))
                .collect(),
        }
    }

    /// Evaluates at `v = 1`, i.e. `q = 1`. This is a ring homomorphism to `Z`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Returns `(sign, n)` when the element is `±v^n`.
    pub fn as_unit(&self) -> Option<(i8, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some((1, e))
        } else if (-c).is_one() {
            Some((-1, e))
        } else {
            None
        }
    }

    /// Exact quotient `self / d`, if it exists in `Z[v^{±1}]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((sign, e)) = d.as_unit() {
            let q = self.shift(-e);
            return Some(if sign < 0 { -q } else { q });
        }
        let (d_top, d_lead) = d.terms.iter().next_back().map(|(&e, c)| (e, c.clone()))?;
        let floor = self.min_exponent()? - d.min_exponent()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((top, c)) = rem.terms.iter().next_back().map(|(&e, c)| (e, c.clone())) {
            let e = top - d_top;
            if e < floor || !(&c % &d_lead).is_zero() {
                return None;
            }
            let t = Self::monomial(e, c / &d_lead);
            rem -= &(&t * d);
            quot += &t;
        }
        Some(quot)
    }
}

impl AddAssign<&HalfPowerLaurent> for HalfPowerLaurent {
    fn add_assign(&mut self, rhs: &HalfPowerLaurent) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&HalfPowerLaurent> for HalfPowerLaurent {
    fn sub_assign(&mut self, rhs: &HalfPowerLaurent) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn add(self, rhs: &HalfPowerLaurent) -> HalfPowerLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn add(mut self, rhs: HalfPowerLaurent) -> HalfPowerLaurent {
        self += &rhs;
        self
    }
}

impl Sub for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn sub(self, rhs: &HalfPowerLaurent) -> HalfPowerLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn sub(mut self, rhs: HalfPowerLaurent) -> HalfPowerLaurent {
        self -= &rhs;
        self
    }
}

impl Mul for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn mul(self, rhs: &HalfPowerLaurent) -> HalfPowerLaurent {
        let mut out = HalfPowerLaurent::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn mul(self, rhs: HalfPowerLaurent) -> HalfPowerLaurent {
        &self * &rhs
    }
}

impl Neg for HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn neg(mut self) -> HalfPowerLaurent {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &HalfPowerLaurent {
    type Output = HalfPowerLaurent;
    fn neg(self) -> HalfPowerLaurent {
        -self.clone()
    }
}

impl From<i64> for HalfPowerLaurent {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

/// Renders `q^{n/2}`; the empty string for `n = 0`.
pub fn format_q_power(half_exponent: i64) -> String {
    match half_exponent {
        0 => String::new(),
        2 => "q".to_string(),
        n if n % 2 == 0 => format!("q^{{{}}}", n / 2),
        n => format!("q^{{{}/2}}", n),
    }
}

impl fmt::Display for HalfPowerLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let qp = format_q_power(e);
            if qp.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{qp}")?;
            } else {
                write!(f, "{abs}{qp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfPowerLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfPowerLaurent({self})")
    }
}

/// Integer wrapper that serializes as a bare JSON number of any size.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = self
            .0
            .to_string()
            .parse()
            .map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

pub(crate) fn parse_json_int(n: &serde_json::Number) -> Option<BigInt> {
    n.to_string().parse().ok()
}

impl Serialize for HalfPowerLaurent {
    /// `[[half_exponent, coeff], ...]` sorted by exponent.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, JsonInt(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for HalfPowerLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, serde_json::Number)> = Vec::deserialize(d)?;
        let mut out = Self::zero();
        for (e, c) in pairs {
            let c =
                parse_json_int(&c).ok_or_else(|| D::Error::custom("non-integer coefficient"))?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

//! The based quantum torus `T(Λ)`.
//!
//! Basis monomials `X^e` multiply as `X^e X^f = q^{Λ(e,f)/2} X^{e+f}`.
//! Elements are finite sums of basis monomials with coefficients in
//! `Z[q^{±1/2}]`, keyed by exponent vectors in graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qcoeff::{format_q_power, HalfPowerLaurent};

/// A skew-symmetric integer form on `Z^m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewForm {
    m: usize,
    entries: Vec<i64>,
}

impl SkewForm {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        let mut entries = Vec::with_capacity(m * m);
        for row in &rows {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        for i in 0..m {
            for j in i..m {
                if entries[i * m + j] != -entries[j * m + i] {
                    return Err(Error::NotSkewSymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(Self { m, entries })
    }

    pub fn zero(m: usize) -> Self {
        Self {
            m,
            entries: vec![0; m * m],
        }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    /// `λ_{ij}` with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.m + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.m.max(1))
            .take(self.m)
            .map(<[i64]>::to_vec)
            .collect()
    }

    /// `e^T Λ f`.
    pub fn bilinear(&self, e: &ExponentVector, f: &ExponentVector) -> Result<i64> {
        for v in [e, f] {
            if v.len() != self.m {
                return Err(Error::DimensionMismatch {
                    expected: self.m,
                    found: v.len(),
                });
            }
        }
        Ok(self.pairing(&e.0, &f.0))
    }

    fn pairing(&self, e: &[i64], f: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            let row = &self.entries[i * self.m..(i + 1) * self.m];
            acc += ei * row.iter().zip(f).map(|(l, fj)| l * fj).sum::<i64>();
        }
        acc
    }

    fn apply(&self, f: &[i64]) -> Vec<i64> {
        (0..self.m)
            .map(|i| {
                self.entries[i * self.m..(i + 1) * self.m]
                    .iter()
                    .zip(f)
                    .map(|(l, x)| l * x)
                    .sum()
            })
            .collect()
    }
}

impl fmt::Debug for SkewForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewForm{:?}", self.rows())
    }
}

/// A lattice point `e ∈ Z^m`.
///
/// Ordered graded-lexicographically: first by coordinate sum, then
/// lexicographically. The order is compatible with addition, which is what
/// leading-term division needs.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn grade(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn positive_part(&self) -> Self {
        Self(self.0.iter().map(|&x| x.max(0)).collect())
    }

    /// The componentwise `max(0, -x)`, so that `e = e.positive_part() - e.negative_part()`.
    pub fn negative_part(&self) -> Self {
        Self(self.0.iter().map(|&x| (-x).max(0)).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An element of the quantum torus `T(Λ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    form: Arc<SkewForm>,
    terms: BTreeMap<ExponentVector, HalfPowerLaurent>,
}

impl Ord for TorusElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .cmp(&other.terms)
            .then_with(|| self.form.cmp(&other.form))
    }
}

impl PartialOrd for TorusElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TorusElement {
    pub fn zero(form: &Arc<SkewForm>) -> Self {
        Self {
            form: Arc::clone(form),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(form: &Arc<SkewForm>) -> Self {
        Self::scalar(form, HalfPowerLaurent::one())
    }

    pub fn scalar(form: &Arc<SkewForm>, c: HalfPowerLaurent) -> Self {
        Self::term(form, ExponentVector::zero(form.rank()), c)
    }

    /// The basis element `X^e`.
    pub fn basis_monomial(form: &Arc<SkewForm>, e: ExponentVector) -> Result<Self> {
        if e.len() != form.rank() {
            return Err(Error::DimensionMismatch {
                expected: form.rank(),
                found: e.len(),
            });
        }
        Ok(Self::term(form, e, HalfPowerLaurent::one()))
    }

    /// The generator `Y_i = X^{e_i}` (0-based `i`).
    pub fn generator(form: &Arc<SkewForm>, i: usize) -> Self {
        Self::term(
            form,
            ExponentVector::unit(form.rank(), i),
            HalfPowerLaurent::one(),
        )
    }

    fn term(form: &Arc<SkewForm>, e: ExponentVector, c: HalfPowerLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self {
            form: Arc::clone(form),
            terms,
        }
    }

    pub fn from_terms<I>(form: &Arc<SkewForm>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, HalfPowerLaurent)>,
    {
        let mut out = Self::zero(form);
        for (e, c) in terms {
            if e.len() != form.rank() {
                return Err(Error::DimensionMismatch {
                    expected: form.rank(),
                    found: e.len(),
                });
            }
            out.add_term(e, &c);
        }
        Ok(out)
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
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

    /// Terms in ascending division order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &HalfPowerLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> HalfPowerLaurent {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The greatest term in graded-lexicographic order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &HalfPowerLaurent)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&ExponentVector, &HalfPowerLaurent)> {
        self.terms.iter().next()
    }

    /// The greatest term under an arbitrary monomial order.
    pub fn leading_term_by<F>(&self, mut cmp: F) -> Option<(&ExponentVector, &HalfPowerLaurent)>
    where
        F: FnMut(&ExponentVector, &ExponentVector) -> Ordering,
    {
        self.terms.iter().max_by(|a, b| cmp(a.0, b.0))
    }

    fn add_term(&mut self, e: ExponentVector, c: &HalfPowerLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_form(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.form, &other.form) || self.form == other.form {
            Ok(())
        } else {
            Err(Error::FormMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_form(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_form(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        Ok(out)
    }

    /// The twisted product, extended bilinearly from `X^e X^f = q^{Λ(e,f)/2} X^{e+f}`.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_form(rhs)?;
        let mut out = Self::zero(&self.form);
        let applied: Vec<(Vec<i64>, &ExponentVector, &HalfPowerLaurent)> = rhs
            .terms
            .iter()
            .map(|(f, c)| (self.form.apply(&f.0), f, c))
            .collect();
        for (e, a) in &self.terms {
            for (lf, f, b) in &applied {
                let twist: i64 = e.0.iter().zip(lf).map(|(x, y)| x * y).sum();
                out.add_term(e + f, &(a * b).shift(twist));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &HalfPowerLaurent) -> Self {
        let mut out = Self::zero(&self.form);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &(a * c));
        }
        out
    }

    /// Multiplies every coefficient by `q^{n/2}`.
    pub fn shift(&self, half_exponent: i64) -> Self {
        Self {
            form: Arc::clone(&self.form),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.shift(half_exponent)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.form);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Left-to-right product `f_1^{k_1} f_2^{k_2} ⋯`; the empty product is 1.
    pub fn ordered_product(form: &Arc<SkewForm>, factors: &[(TorusElement, u32)]) -> Result<Self> {
        let mut out = Self::one(form);
        for (f, k) in factors {
            out.check_form(f)?;
            for _ in 0..*k {
                out = out.checked_mul(f)?;
            }
        }
        Ok(out)
    }

    /// Returns `c` with `c · d = self`.
    ///
    /// Runs leading-term cancellation in graded-lexicographic order. Quotient
    /// terms come out in strictly decreasing order and can never drop below
    /// `low(self) - low(d)`, which gives a clean `NotDivisible` exit; an
    /// iteration cap backs this up.
    pub fn exact_right_divide(&self, d: &Self) -> Result<Self> {
        self.check_form(d)?;
        let (lead_e, lead_c) = d.leading_term().ok_or(Error::NotDivisible)?;
        let mut quotient = Self::zero(&self.form);
        let Some((low_a, _)) = self.trailing_term() else {
            return Ok(quotient);
        };
        let floor = low_a - d.trailing_term().expect("nonzero divisor").0;
        let lead_image = self.form.apply(&lead_e.0);
        let guard = self.terms.len().max(1) * 4096;
        let mut rem = self.clone();
        for _ in 0..guard {
            let Some((top_e, top_c)) = rem.leading_term() else {
                return Ok(quotient);
            };
            let e = top_e - lead_e;
            if e < floor {
                return Err(Error::NotDivisible);
            }
            let twist: i64 = e.0.iter().zip(&lead_image).map(|(x, y)| x * y).sum();
            let c = top_c
                .div_exact(&lead_c.shift(twist))
                .ok_or(Error::NotDivisible)?;
            let step = Self::term(&self.form, e, c);
            rem = rem.checked_sub(&step.checked_mul(d)?)?;
            quotient = quotient.checked_add(&step)?;
        }
        Err(Error::NotDivisible)
    }

    /// Returns `r` with `a·b = q^{r/2}·b·a`, or `None` when no such twist exists.
    pub fn quasi_commutation_exponent(a: &Self, b: &Self) -> Result<Option<i64>> {
        let ab = a.checked_mul(b)?;
        let ba = b.checked_mul(a)?;
        if ab.terms.len() != ba.terms.len() {
            return Ok(None);
        }
        let mut r = None;
        for ((e1, c1), (e2, c2)) in ab.terms.iter().zip(&ba.terms) {
            if e1 != e2 {
                return Ok(None);
            }
            let shift = c1.min_exponent().unwrap_or(0) - c2.min_exponent().unwrap_or(0);
            if *r.get_or_insert(shift) != shift || &c2.shift(shift) != c1 {
                return Ok(None);
            }
        }
        Ok(Some(r.unwrap_or(0)))
    }

    /// Sets `q = 1`, landing in the commutative Laurent ring.
    pub fn specialize_q1(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank());
        for (e, c) in &self.terms {
            out.add_term(e.0.clone(), c.eval_at_one());
        }
        out
    }

    /// The exponent `s(e) = Σ_{i<j} e_i e_j λ_{ij}` with
    /// `Y_1^{e_1} ⋯ Y_m^{e_m} = q^{s(e)/2} X^e`.
    pub fn ordered_twist(form: &SkewForm, e: &ExponentVector) -> i64 {
        let m = form.rank();
        let mut s = 0;
        for i in 0..m {
            for j in i + 1..m {
                s += e.0[i] * e.0[j] * form.get(i, j);
            }
        }
        s
    }

    /// Human-readable form `c·Y_1^{e_1}⋯Y_m^{e_m}` per term, in ascending
    /// division order, using the given variable name.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let c = c.shift(-Self::ordered_twist(&self.form, e));
            let mono: String =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("{var}_{}", i + 1)
                        } else {
                            format!("{var}_{}^{{{x}}}", i + 1)
                        }
                    })
                    .collect();
            let (neg, coeff) = match c.as_unit() {
                Some((sign, k)) => (sign < 0, format_q_power(k)),
                None => (false, format!("({c})")),
            };
            out.push_str(match (idx, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            out.push_str(&coeff);
            if mono.is_empty() && coeff.is_empty() {
                out.push('1');
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty("Y"))
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement({self})")
    }
}

impl Add for &TorusElement {
    type Output = TorusElement;
    /// # Panics
    /// If the operands carry different forms; use `checked_add` otherwise.
    fn add(self, rhs: &TorusElement) -> TorusElement {
        self.checked_add(rhs).expect("torus form mismatch")
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self.checked_sub(rhs).expect("torus form mismatch")
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.checked_mul(rhs).expect("torus form mismatch")
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.scale(&HalfPowerLaurent::from_int(-1))
    }
}

#[derive(Serialize, Deserialize)]
struct TorusWire {
    m: usize,
    lambda: Vec<Vec<i64>>,
    terms: Vec<(ExponentVector, HalfPowerLaurent)>,
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            m: usize,
            lambda: Vec<Vec<i64>>,
            terms: Vec<(&'a ExponentVector, &'a HalfPowerLaurent)>,
        }
        Wire {
            m: self.rank(),
            lambda: self.form.rows(),
            terms: self.terms.iter().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = TorusWire::deserialize(d)?;
        let form = SkewForm::new(wire.lambda).map_err(D::Error::custom)?;
        if form.rank() != wire.m {
            return Err(D::Error::custom("m does not match lambda"));
        }
        TorusElement::from_terms(&Arc::new(form), wire.terms).map_err(D::Error::custom)
    }
}

/// Convenience for building `c · X^e` from plain integers.
pub fn monomial(form: &Arc<SkewForm>, e: &[i64], coeff: HalfPowerLaurent) -> TorusElement {
    TorusElement::term(form, ExponentVector(e.to_vec()), coeff)
}

/// Integer coefficient helper used across tests and examples.
pub fn int_coeff(c: i64) -> HalfPowerLaurent {
    HalfPowerLaurent::monomial(0, BigInt::from(c))
}

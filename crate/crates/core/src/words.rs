//! Noncommutative polynomials in the generators `X_0, X_2, …, X_{2n}`.
//!
//! A word is a sequence of even labels `l` standing for `X_l`. No relations
//! are imposed here; [`crate::grothendieck`] adds them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::qcoeff::{format_q_power, HalfPowerLaurent};
use crate::torus::{SkewForm, TorusElement};

pub type Word = Vec<u32>;

/// A `Z[q^{±1/2}]`-linear combination of words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WordPoly {
    terms: BTreeMap<Word, HalfPowerLaurent>,
}

impl WordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new(), HalfPowerLaurent::one())
    }

    pub fn generator(l: u32) -> Self {
        Self::word(vec![l], HalfPowerLaurent::one())
    }

    pub fn word(w: Word, c: HalfPowerLaurent) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &HalfPowerLaurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &HalfPowerLaurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&HalfPowerLaurent::from_int(-1)))
    }

    pub fn scale(&self, c: &HalfPowerLaurent) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), &(a * c));
        }
        out
    }

    /// Free (concatenation) product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (w, b) in &other.terms {
                let mut uw = u.clone();
                uw.extend_from_slice(w);
                out.add_term(uw, &(a * b));
            }
        }
        out
    }

    pub(crate) fn from_map(terms: BTreeMap<Word, HalfPowerLaurent>) -> Self {
        Self { terms }
    }
}

impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word: String = w.iter().map(|l| format!("X_{l}")).collect();
            let (neg, coeff) = match c.as_unit() {
                Some((s, k)) => (s < 0, format_q_power(k)),
                None => (false, format!("({c})")),
            };
            f.write_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            })?;
            f.write_str(&coeff)?;
            if word.is_empty() && coeff.is_empty() {
                f.write_str("1")?;
            }
            f.write_str(&word)?;
        }
        Ok(())
    }
}

impl fmt::Debug for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordPoly({self})")
    }
}

/// Evaluates words as ordered products of fixed torus elements, caching
/// every prefix it has seen. Safe to share across threads.
#[derive(Debug)]
pub struct WordEvaluator {
    form: Arc<SkewForm>,
    generators: Vec<TorusElement>,
    cache: Mutex<HashMap<Word, TorusElement>>,
}

impl WordEvaluator {
    /// `generators[i]` is the image of the label `2i`.
    pub fn new(form: Arc<SkewForm>, generators: Vec<TorusElement>) -> Self {
        Self {
            form,
            generators,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    pub fn generator(&self, l: u32) -> Result<&TorusElement> {
        if !l.is_multiple_of(2) {
            return Err(Error::BadIndex(l));
        }
        self.generators
            .get((l / 2) as usize)
            .ok_or(Error::BadIndex(l))
    }

    /// The ordered product `X_{w_1} X_{w_2} ⋯`.
    pub fn image(&self, w: &[u32]) -> Result<TorusElement> {
        if w.is_empty() {
            return Ok(TorusElement::one(&self.form));
        }
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(w) {
            return Ok(hit.clone());
        }
        let (last, prefix) = w.split_last().expect("nonempty");
        let value = self.image(prefix)?.checked_mul(self.generator(*last)?)?;
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(w.to_vec(), value.clone());
        Ok(value)
    }

    pub fn evaluate(&self, p: &WordPoly) -> Result<TorusElement> {
        let mut out = TorusElement::zero(&self.form);
        for (w, c) in p.terms() {
            out = out.checked_add(&self.image(w)?.scale(c))?;
        }
        Ok(out)
    }
}

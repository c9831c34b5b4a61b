//! The deformed Grothendieck ring `Rep_{t,n}` as a presented algebra.
//!
//! Generators are `[W_{1,l}]` for even `l ∈ [0, 2n]`. For `l_1 > l_2`:
//!
//! - `l_1 = l_2 + 2`: `[W_{1,l_1}][W_{1,l_2}] = q^{-1}[W_{1,l_2}][W_{1,l_1}] + (1 - q^{-1})`
//! - otherwise: `[W_{1,l_1}][W_{1,l_2}] = q^r [W_{1,l_2}][W_{1,l_1}]`, `r = (-1)^{(l_1-l_2)/2}`
//!
//! Rewriting descents with these rules terminates in non-decreasing words,
//! which serve as the normal form.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcoeff::{format_q_power, HalfPowerLaurent};
use crate::sl2::{kr_top_word, parse_kr_label, Sl2Instance};
use crate::torus::{ExponentVector, TorusElement};
use crate::words::{Word, WordPoly};

/// A combination of non-decreasing generator words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrothElement {
    n: usize,
    terms: BTreeMap<Word, HalfPowerLaurent>,
}

impl GrothElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut out = Self::zero(n);
        out.terms.insert(Vec::new(), HalfPowerLaurent::one());
        out
    }

    pub fn generator(n: usize, l: u32) -> Result<Self> {
        reduce(n, &[l], HalfPowerLaurent::one())
    }

    /// Reduces every word of a free polynomial.
    pub fn from_word_poly(n: usize, p: &WordPoly) -> Result<Self> {
        let mut out = Self::zero(n);
        for (w, c) in p.terms() {
            out = out.add(&reduce(n, w, c.clone())?)?;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &HalfPowerLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u32]) -> HalfPowerLaurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn as_word_poly(&self) -> WordPoly {
        WordPoly::from_map(self.terms.clone())
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &HalfPowerLaurent) -> Self {
        let mut out = Self::zero(self.n);
        for (w, a) in &self.terms {
            add_into(&mut out.terms, w.clone(), &(a * c));
        }
        out
    }

    /// Concatenate pairwise, reduce, sum.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let mut out = Self::zero(self.n);
        for (u, a) in &self.terms {
            for (w, b) in &other.terms {
                let uw: Word = u.iter().chain(w).copied().collect();
                out = out.add(&reduce(self.n, &uw, a * b)?)?;
            }
        }
        Ok(out)
    }

    /// Sets `q = 1` in every coefficient, keeping the words.
    pub fn specialize_q1(&self) -> BTreeMap<Word, num_bigint::BigInt> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.eval_at_one()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

fn add_into(terms: &mut BTreeMap<Word, HalfPowerLaurent>, w: Word, c: &HalfPowerLaurent) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(w).or_default();
    *slot += c;
    if slot.is_zero() {
        terms.retain(|_, v| !v.is_zero());
    }
}

impl fmt::Display for GrothElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word: String = w.iter().map(|l| format!("[W_{{1,{l}}}]")).collect();
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

impl fmt::Debug for GrothElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrothElement(n={}, {self})", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct GrothTermWire {
    word: Word,
    coeff: HalfPowerLaurent,
}

impl Serialize for GrothElement {
    /// `[{"word": [...], "coeff": ...}]`, sorted by word.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire: Vec<GrothTermWire> = self
            .terms
            .iter()
            .map(|(w, c)| GrothTermWire {
                word: w.clone(),
                coeff: c.clone(),
            })
            .collect();
        wire.serialize(s)
    }
}

impl GrothElement {
    /// Parses the serialized form; words are reduced, so any input word is accepted.
    pub fn from_json(n: usize, json: &str) -> Result<Self> {
        let wire: Vec<GrothTermWire> =
            serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut out = Self::zero(n);
        for t in wire {
            out = out.add(&reduce(n, &t.word, t.coeff)?)?;
        }
        Ok(out)
    }
}

fn check_word(n: usize, word: &[u32]) -> Result<()> {
    match word.iter().find(|&&l| l % 2 != 0 || l as usize > 2 * n) {
        Some(&l) => Err(Error::BadIndex(l)),
        None => Ok(()),
    }
}

fn descents(word: &[u32]) -> Vec<usize> {
    (0..word.len().saturating_sub(1))
        .filter(|&p| word[p] > word[p + 1])
        .collect()
}

/// One rewrite at descent position `p`; returns the resulting terms.
fn rewrite(word: &[u32], p: usize, c: &HalfPowerLaurent) -> Vec<(Word, HalfPowerLaurent)> {
    let (l1, l2) = (word[p], word[p + 1]);
    let mut swapped = word.to_vec();
    swapped.swap(p, p + 1);
    if l1 == l2 + 2 {
        let mut deleted = word[..p].to_vec();
        deleted.extend_from_slice(&word[p + 2..]);
        let one_minus = HalfPowerLaurent::from_terms([(0, 1), (-2, -1)]);
        vec![(swapped, c.shift(-2)), (deleted, c * &one_minus)]
    } else {
        let r = if ((l1 - l2) / 2) % 2 == 0 { 2 } else { -2 };
        vec![(swapped, c.shift(r))]
    }
}

/// Normal form of `coeff · word`, always rewriting the leftmost descent.
pub fn reduce(n: usize, word: &[u32], coeff: HalfPowerLaurent) -> Result<GrothElement> {
    reduce_with(n, word, coeff, |_| 0)
}

/// Normal form of `coeff · word` where `choose` picks which of the current
/// descents (given as positions) to rewrite next.
pub fn reduce_with<F>(
    n: usize,
    word: &[u32],
    coeff: HalfPowerLaurent,
    mut choose: F,
) -> Result<GrothElement>
where
    F: FnMut(&[usize]) -> usize,
{
    check_word(n, word)?;
    let mut out = GrothElement::zero(n);
    let mut pending: BTreeMap<Word, HalfPowerLaurent> = BTreeMap::new();
    add_into(&mut pending, word.to_vec(), &coeff);
    while let Some((w, c)) = pending.pop_last() {
        let ds = descents(&w);
        if ds.is_empty() {
            add_into(&mut out.terms, w, &c);
            continue;
        }
        let p = ds[choose(&ds).min(ds.len() - 1)];
        for (w2, c2) in rewrite(&w, p, &c) {
            add_into(&mut pending, w2, &c2);
        }
    }
    Ok(out)
}

/// Leftmost-descent reduction with a shared cache of word normal forms.
#[derive(Debug)]
pub struct Reducer {
    n: usize,
    cache: Mutex<HashMap<Word, GrothElement>>,
}

impl Reducer {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn normal_form(&self, word: &[u32]) -> Result<GrothElement> {
        check_word(self.n, word)?;
        self.cached(word)
    }

    fn cached(&self, word: &[u32]) -> Result<GrothElement> {
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(word) {
            return Ok(hit.clone());
        }
        let nf = match descents(word).first() {
            None => reduce(self.n, word, HalfPowerLaurent::one())?,
            Some(&p) => {
                let mut acc = GrothElement::zero(self.n);
                for (w, c) in rewrite(word, p, &HalfPowerLaurent::one()) {
                    acc = acc.add(&self.cached(&w)?.scale(&c))?;
                }
                acc
            }
        };
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(word.to_vec(), nf.clone());
        Ok(nf)
    }

    pub fn mul(&self, a: &GrothElement, b: &GrothElement) -> Result<GrothElement> {
        a.check_size(b)?;
        let mut out = GrothElement::zero(self.n);
        for (u, x) in &a.terms {
            for (w, y) in &b.terms {
                let uw: Word = u.iter().chain(w).copied().collect();
                out = out.add(&self.cached(&uw)?.scale(&(x * y)))?;
            }
        }
        Ok(out)
    }
}

/// `ι_n^{-1}` direction: `[W_{1,l}] ↦ X_l`, products taken in word order.
pub fn iota(inst: &Sl2Instance, a: &GrothElement) -> Result<TorusElement> {
    if a.n != inst.n() {
        return Err(Error::SizeMismatch(a.n, inst.n()));
    }
    let ev = inst.evaluator();
    let mut out = TorusElement::zero(inst.form());
    for (w, c) in &a.terms {
        out = out.checked_add(&ev.image(w)?.scale(c))?;
    }
    Ok(out)
}

fn revlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.as_slice().iter().rev().cmp(b.as_slice().iter().rev())
}

/// Writes a torus element as a combination of normal-form words in the
/// generators, or fails with `NotInSubalgebra`.
///
/// Under reverse-lexicographic order the leading exponents of `X_0, …, X_{2n}`
/// are linearly independent, so distinct non-decreasing words have distinct
/// leading monomials and greedy leading-term cancellation recovers the
/// unique expression.
pub fn express_in_generators(inst: &Sl2Instance, z: &TorusElement) -> Result<GrothElement> {
    let labels: Vec<u32> = inst.labels().collect();
    let m = inst.form().rank();
    let leads: Vec<ExponentVector> = labels
        .iter()
        .map(|&l| {
            inst.generator(l).map(|x| {
                x.leading_term_by(revlex)
                    .expect("nonzero generator")
                    .0
                    .clone()
            })
        })
        .collect::<Result<_>>()?;
    let ev = inst.evaluator();
    let mut rem = z.clone();
    let mut out = GrothElement::zero(inst.n());
    let guard = 64 * (z.len() + 1) * (labels.len() + 1);
    for _ in 0..guard {
        let Some((e, c)) = rem.leading_term_by(revlex) else {
            return Ok(out);
        };
        let mult = solve_nonnegative(&leads, e, m).ok_or(Error::NotInSubalgebra)?;
        let word: Word = labels
            .iter()
            .zip(&mult)
            .flat_map(|(&l, &k)| std::iter::repeat_n(l, k))
            .collect();
        let image = ev.image(&word)?;
        let lead_c = image.leading_term_by(revlex).expect("nonzero image").1;
        let coeff = c.div_exact(lead_c).ok_or(Error::NotInSubalgebra)?;
        rem = rem.checked_sub(&image.scale(&coeff))?;
        add_into(&mut out.terms, word, &coeff);
    }
    Err(Error::NotInSubalgebra)
}

/// Solves `Σ_j k_j cols[j] = target` over nonnegative integers, assuming the
/// columns are linearly independent.
fn solve_nonnegative(
    cols: &[ExponentVector],
    target: &ExponentVector,
    m: usize,
) -> Option<Vec<usize>> {
    let k = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = cols
                .iter()
                .map(|c| BigRational::from_integer(c.0[i].into()))
                .collect();
            row.push(BigRational::from_integer(target.0[i].into()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let p = (r..m).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        let piv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    pivots
        .iter()
        .map(|&row| {
            let v = &a[row][k];
            if v.is_integer() && !v.is_negative() {
                v.to_integer().try_into().ok()
            } else {
                None
            }
        })
        .collect()
}

/// A cluster variable of the fully mutated seed with its `W_{i,j}` label.
#[derive(Clone, Debug, Serialize)]
pub struct LabelCheck {
    pub position: usize,
    pub label: String,
    pub longest_words: Vec<Word>,
    pub pass: bool,
}

/// Expands each variable of the seed reached by `μ_1, …, μ_n` in the
/// generators and checks that its unique longest word is
/// `(j, j+2, …, j+2i-2)` for the label `W_{i,j}`.
pub fn check_kr_labels(inst: &Sl2Instance) -> Result<Vec<LabelCheck>> {
    let labeled = inst.full_mutation_sequence()?;
    labeled
        .seed
        .vars()
        .iter()
        .zip(&labeled.labels)
        .enumerate()
        .map(|(idx, (var, label))| {
            let g = express_in_generators(inst, var)?;
            let top = g.max_word_len();
            let longest_words: Vec<Word> = g
                .terms()
                .filter(|(w, _)| w.len() == top)
                .map(|(w, _)| w.clone())
                .collect();
            let pass =
                parse_kr_label(label).is_some_and(|(i, j)| longest_words == [kr_top_word(i, j)]);
            Ok(LabelCheck {
                position: idx + 1,
                label: label.clone(),
                longest_words,
                pass,
            })
        })
        .collect()
}

/// Writes every variable in `vars` in the generators and re-expands it.
/// Returns the positions that fail either step.
pub fn check_subring(inst: &Sl2Instance, vars: &[TorusElement]) -> Result<Vec<usize>> {
    let results: Vec<bool> = vars
        .par_iter()
        .map(|v| match express_in_generators(inst, v) {
            Ok(g) => iota(inst, &g).map(|back| &back == v),
            Err(Error::NotInSubalgebra) => Ok(false),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    Ok(results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i)
        .collect())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HomomorphismReport {
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<(Word, Word)>,
}

impl HomomorphismReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

fn homomorphism_case(
    inst: &Sl2Instance,
    reducer: &Reducer,
    w1: &[u32],
    w2: &[u32],
) -> Result<bool> {
    let a = reducer.normal_form(w1)?;
    let b = reducer.normal_form(w2)?;
    let lhs = iota(inst, &reducer.mul(&a, &b)?)?;
    let rhs = iota(inst, &a)?.checked_mul(&iota(inst, &b)?)?;
    Ok(lhs == rhs)
}

fn summarize(inst: &Sl2Instance, cases: Vec<(Word, Word)>) -> Result<HomomorphismReport> {
    let reducer = Reducer::new(inst.n());
    let results: Vec<bool> = cases
        .par_iter()
        .map(|(a, b)| homomorphism_case(inst, &reducer, a, b))
        .collect::<Result<_>>()?;
    let first_failure = results.iter().position(|ok| !ok).map(|i| cases[i].clone());
    Ok(HomomorphismReport {
        cases: cases.len(),
        failures: results.iter().filter(|ok| !**ok).count(),
        first_failure,
    })
}

/// Random words `w1, w2` of length `≤ max_len`: checks
/// `ι(reduce(w1)·reduce(w2)) = ι(reduce(w1))·ι(reduce(w2))`.
///
/// Sample `i` draws from its own ChaCha stream, so results do not depend on
/// scheduling.
pub fn check_homomorphism(
    inst: &Sl2Instance,
    samples: usize,
    max_len: usize,
    rng_seed: u64,
) -> Result<HomomorphismReport> {
    let labels: Vec<u32> = inst.labels().collect();
    let cases: Vec<(Word, Word)> = (0..samples)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            rng.set_stream(i as u64);
            let word = |rng: &mut ChaCha8Rng| -> Word {
                let len = rng.gen_range(0..=max_len);
                (0..len)
                    .map(|_| labels[rng.gen_range(0..labels.len())])
                    .collect()
            };
            let a = word(&mut rng);
            let b = word(&mut rng);
            (a, b)
        })
        .collect();
    summarize(inst, cases)
}

/// All words of length `≤ max_len` over the generator labels.
pub fn all_words(labels: &[u32], max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Word| {
                labels.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The homomorphism check over every pair of words of length `≤ max_len`.
pub fn check_homomorphism_exhaustive(
    inst: &Sl2Instance,
    max_len: usize,
) -> Result<HomomorphismReport> {
    let labels: Vec<u32> = inst.labels().collect();
    let words = all_words(&labels, max_len);
    let cases = words
        .iter()
        .flat_map(|a| words.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    summarize(inst, cases)
}

/// Non-decreasing words of length `≤ max_len`.
pub fn normal_words(labels: &[u32], max_len: usize) -> Vec<Word> {
    all_words(labels, max_len)
        .into_iter()
        .filter(|w| descents(w).is_empty())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub words: usize,
    pub monomials: usize,
    pub rank: usize,
    pub independent: bool,
}

/// Checks that images of normal-form words of length `≤ max_degree` are
/// linearly independent over `Z[q^{±1/2}]`.
///
/// Computes the rank of the coefficient matrix (rows: words, columns: torus
/// monomials) by fraction-free Bareiss elimination. Every division is exact
/// in `Z[q^{±1/2}]`, so the rank equals the rank over the fraction field.
pub fn check_independence(inst: &Sl2Instance, max_degree: usize) -> Result<IndependenceReport> {
    let labels: Vec<u32> = inst.labels().collect();
    let words = normal_words(&labels, max_degree);
    let ev = inst.evaluator();
    let images: Vec<TorusElement> = words.iter().map(|w| ev.image(w)).collect::<Result<_>>()?;
    let monomials: BTreeSet<ExponentVector> = images
        .iter()
        .flat_map(|t| t.terms().map(|(e, _)| e.clone()))
        .collect();
    let monomials: Vec<ExponentVector> = monomials.into_iter().collect();
    let mut rows: Vec<Vec<HalfPowerLaurent>> = images
        .iter()
        .map(|t| monomials.iter().map(|e| t.coeff(e)).collect())
        .collect();
    let rank = bareiss_rank(&mut rows)?;
    Ok(IndependenceReport {
        words: words.len(),
        monomials: monomials.len(),
        rank,
        independent: rank == words.len(),
    })
}

/// Rank by fraction-free elimination; the matrix is overwritten.
pub fn bareiss_rank(a: &mut [Vec<HalfPowerLaurent>]) -> Result<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = HalfPowerLaurent::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for i in rank + 1..rows {
            let factor = a[i][c].clone();
            for j in c + 1..cols {
                let num = &(&pivot * &a[i][j]) - &(&factor * &a[rank][j]);
                a[i][j] = num.div_exact(&prev).ok_or(Error::NotDivisible)?;
            }
            a[i][c] = HalfPowerLaurent::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

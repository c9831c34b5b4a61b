//! Compatible pairs, matrix mutation, quantum seeds and exchange graphs.
//!
//! Indices in this API are 0-based row indices into `[0, m)`. Exchangeable
//! vertices are listed in [`ExchangeMatrix::ex`]. Serialized forms and error
//! values use 1-based vertex labels.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::torus::{ExponentVector, SkewForm, TorusElement};

/// An `m × n` integer matrix whose columns are labelled by the exchangeable
/// vertices `ex ⊂ [0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    m: usize,
    ex: Vec<usize>,
    entries: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(m: usize, ex: Vec<usize>, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: entries.len(),
            });
        }
        for row in &entries {
            if row.len() != ex.len() {
                return Err(Error::DimensionMismatch {
                    expected: ex.len(),
                    found: row.len(),
                });
            }
        }
        for (a, &i) in ex.iter().enumerate() {
            if i >= m || ex[..a].contains(&i) {
                return Err(Error::Malformed(format!(
                    "bad exchangeable vertex {}",
                    i + 1
                )));
            }
        }
        for (a, &i) in ex.iter().enumerate() {
            for (b, &j) in ex.iter().enumerate() {
                if entries[i][b] != -entries[j][a] {
                    return Err(Error::NotSkewSymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(Self { m, ex, entries })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.ex.len()
    }

    pub fn ex(&self) -> &[usize] {
        &self.ex
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `b_{ik}` for row `i` and exchangeable vertex `k`.
    pub fn get(&self, i: usize, k: usize) -> Option<i64> {
        Some(self.entries[i][self.column_of(k)?])
    }

    pub fn column_of(&self, vertex: usize) -> Option<usize> {
        self.ex.iter().position(|&v| v == vertex)
    }

    /// Column of vertex `k` as a vector over all `m` rows.
    pub fn column(&self, k: usize) -> Result<ExponentVector> {
        let col = self.column_of(k).ok_or(Error::NotExchangeable(k + 1))?;
        Ok(ExponentVector(
            self.entries.iter().map(|row| row[col]).collect(),
        ))
    }

    fn to_matrix(&self) -> DMatrix<i64> {
        DMatrix::from_fn(self.m, self.cols(), |i, j| self.entries[i][j])
    }
}

#[derive(Serialize, Deserialize)]
struct ExchangeMatrixWire {
    m: usize,
    ex: Vec<usize>,
    entries: Vec<Vec<i64>>,
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExchangeMatrixWire {
            m: self.m,
            ex: self.ex.iter().map(|v| v + 1).collect(),
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExchangeMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = ExchangeMatrixWire::deserialize(d)?;
        if w.ex.contains(&0) {
            return Err(D::Error::custom("ex labels are 1-based"));
        }
        ExchangeMatrix::new(w.m, w.ex.into_iter().map(|v| v - 1).collect(), w.entries)
            .map_err(D::Error::custom)
    }
}

/// A pair `(Λ, B̃)` with `Σ_k b_{kj} λ_{ki} = δ_{ij} d_j`, certified on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompatiblePair {
    form: Arc<SkewForm>,
    b: ExchangeMatrix,
    d: Vec<i64>,
}

impl CompatiblePair {
    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    pub fn exchange_matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    /// `d_j`, in the column order of `ex`.
    pub fn d(&self) -> &[i64] {
        &self.d
    }

    /// The mutated pair `(E^T Λ E, E B̃ F)` in direction `k`, re-certified.
    pub fn mutate(&self, k: usize, eps: i64) -> Result<CompatiblePair> {
        mutate_pair(self, k, eps)
    }
}

/// Certifies compatibility and extracts `d_j > 0`.
///
/// The first violation, scanning columns `j ∈ ex` then rows `i`, is reported.
pub fn check_compatible(form: &Arc<SkewForm>, b: &ExchangeMatrix) -> Result<CompatiblePair> {
    let m = form.rank();
    if b.rows() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.rows(),
        });
    }
    let mut d = Vec::with_capacity(b.cols());
    for (col, &j) in b.ex.iter().enumerate() {
        for i in 0..m {
            let value: i64 = (0..m).map(|k| b.entries[k][col] * form.get(k, i)).sum();
            let ok = if i == j { value > 0 } else { value == 0 };
            if !ok {
                return Err(Error::NotCompatible {
                    row: i + 1,
                    col: j + 1,
                    value,
                });
            }
            if i == j {
                d.push(value);
            }
        }
    }
    Ok(CompatiblePair {
        form: Arc::clone(form),
        b: b.clone(),
        d,
    })
}

/// Matrix mutation `B̃' = E_ε B̃ F_ε`, `Λ' = E_ε^T Λ E_ε` in direction `k`.
pub fn mutate_pair(p: &CompatiblePair, k: usize, eps: i64) -> Result<CompatiblePair> {
    let b = &p.b;
    let kc = b.column_of(k).ok_or(Error::NotExchangeable(k + 1))?;
    let m = b.rows();
    let n = b.cols();
    let bm = b.to_matrix();
    let e = DMatrix::from_fn(m, m, |i, j| match (i == k, j == k) {
        (true, true) => -1,
        (false, true) => (-eps * bm[(i, kc)]).max(0),
        _ => i64::from(i == j),
    });
    let f = DMatrix::from_fn(n, n, |i, j| match (i == kc, j == kc) {
        (true, true) => -1,
        (true, false) => (eps * bm[(k, j)]).max(0),
        _ => i64::from(i == j),
    });
    let lambda = DMatrix::from_fn(m, m, |i, j| p.form.get(i, j));
    let new_b = &e * &bm * &f;
    let new_l = e.transpose() * lambda * &e;
    let rows = |mat: &DMatrix<i64>| -> Vec<Vec<i64>> {
        (0..mat.nrows())
            .map(|i| (0..mat.ncols()).map(|j| mat[(i, j)]).collect())
            .collect()
    };
    let form = Arc::new(SkewForm::new(rows(&new_l))?);
    let b = ExchangeMatrix::new(m, b.ex.clone(), rows(&new_b))?;
    check_compatible(&form, &b)
}

/// A quantum seed: its own compatible pair and its cluster, written in the
/// fixed initial torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuantumSeed {
    pair: CompatiblePair,
    vars: Vec<TorusElement>,
    history: Vec<usize>,
}

impl QuantumSeed {
    /// The initial seed: cluster `X^{e_1}, …, X^{e_m}` in `T(Λ)`.
    pub fn initial(pair: CompatiblePair) -> Self {
        let vars = (0..pair.form.rank())
            .map(|i| TorusElement::generator(&pair.form, i))
            .collect();
        Self {
            pair,
            vars,
            history: Vec::new(),
        }
    }

    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    pub fn vars(&self) -> &[TorusElement] {
        &self.vars
    }

    /// Mutation directions applied since the initial seed (0-based).
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// The torus all variables live in.
    pub fn ambient_form(&self) -> &Arc<SkewForm> {
        self.vars[0].form()
    }

    /// `M(c) = q^{-(1/2)Σ_{i<j} c_i c_j λ_{ij}} X_1^{c_1} ⋯ X_m^{c_m}` for the
    /// seed's own `Λ`; negative parts are realized by exact right division.
    pub fn frame_monomial(&self, c: &ExponentVector) -> Result<TorusElement> {
        let form = &self.pair.form;
        if c.len() != form.rank() {
            return Err(Error::DimensionMismatch {
                expected: form.rank(),
                found: c.len(),
            });
        }
        let plus = c.positive_part();
        let minus = c.negative_part();
        let pos = self.nonnegative_frame(&plus)?;
        if minus.is_zero() {
            return Ok(pos);
        }
        let neg = self.nonnegative_frame(&minus)?;
        let twist = form.bilinear(&plus, &minus)?;
        Ok(pos.exact_right_divide(&neg)?.shift(twist))
    }

    fn nonnegative_frame(&self, c: &ExponentVector) -> Result<TorusElement> {
        let factors: Vec<(TorusElement, u32)> =
            c.0.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| (self.vars[i].clone(), x as u32))
                .collect();
        let prod = TorusElement::ordered_product(self.ambient_form(), &factors)?;
        Ok(prod.shift(-TorusElement::ordered_twist(&self.pair.form, c)))
    }

    /// The quantum exchange relation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<QuantumSeed> {
        let column = self.pair.b.column(k)?;
        let plus = column.positive_part();
        let minus = column.negative_part();
        let ek = ExponentVector::unit(column.len(), k);
        let form = &self.pair.form;
        let numerator = self
            .frame_monomial(&plus)?
            .shift(form.bilinear(&plus, &ek)?)
            .checked_add(
                &self
                    .frame_monomial(&minus)?
                    .shift(form.bilinear(&minus, &ek)?),
            )?;
        let fresh = numerator.exact_right_divide(&self.vars[k])?;
        let mut vars = self.vars.clone();
        vars[k] = fresh;
        let mut history = self.history.clone();
        history.push(k);
        Ok(QuantumSeed {
            pair: mutate_pair(&self.pair, k, 1)?,
            vars,
            history,
        })
    }

    /// Applies mutations left to right.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<QuantumSeed> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Pairs `(i, j)` (0-based) violating `X_i X_j = q^{λ_{ij}} X_j X_i`.
    pub fn quasi_commutation_violations(&self) -> Result<Vec<(usize, usize)>> {
        let m = self.vars.len();
        let mut bad = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let r = TorusElement::quasi_commutation_exponent(&self.vars[i], &self.vars[j])?;
                if r != Some(2 * self.pair.form.get(i, j)) {
                    bad.push((i, j));
                }
            }
        }
        Ok(bad)
    }

    /// The unordered cluster, as a sorted list.
    pub fn cluster_key(&self) -> Vec<TorusElement> {
        let mut key = self.vars.clone();
        key.sort();
        key
    }
}

impl Serialize for QuantumSeed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            lambda: Vec<Vec<i64>>,
            b: &'a ExchangeMatrix,
            vars: &'a [TorusElement],
            history: Vec<usize>,
        }
        Wire {
            lambda: self.pair.form.rows(),
            b: &self.pair.b,
            vars: &self.vars,
            history: self.history.iter().map(|k| k + 1).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuantumSeed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Wire {
            lambda: Vec<Vec<i64>>,
            b: ExchangeMatrix,
            vars: Vec<TorusElement>,
            history: Vec<usize>,
        }
        let w = Wire::deserialize(d)?;
        let form = Arc::new(SkewForm::new(w.lambda).map_err(D::Error::custom)?);
        let pair = check_compatible(&form, &w.b).map_err(D::Error::custom)?;
        if w.vars.len() != form.rank() || w.history.contains(&0) {
            return Err(D::Error::custom("bad cluster or history"));
        }
        Ok(QuantumSeed {
            pair,
            vars: w.vars,
            history: w.history.into_iter().map(|k| k - 1).collect(),
        })
    }
}

/// The exchange graph reachable from a seed.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub seeds: Vec<QuantumSeed>,
    /// `(from, k, to)` with `k` a 0-based vertex.
    pub edges: Vec<(usize, usize, usize)>,
    /// Every distinct cluster variable, frozen ones included, sorted.
    pub variables: Vec<TorusElement>,
    pub truncated: bool,
}

impl ExchangeGraph {
    pub fn cluster_count(&self) -> usize {
        self.seeds.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// Deterministic JSON: variables, then nodes referencing them by index.
    pub fn to_json(&self) -> serde_json::Value {
        let index: BTreeMap<&TorusElement, usize> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let nodes: Vec<serde_json::Value> = self
            .seeds
            .iter()
            .enumerate()
            .map(|(id, s)| {
                serde_json::json!({
                    "id": id,
                    "history": s.history.iter().map(|k| k + 1).collect::<Vec<_>>(),
                    "cluster": s.vars.iter().map(|v| index[v]).collect::<Vec<_>>(),
                })
            })
            .collect();
        let edges: Vec<[usize; 3]> = self.edges.iter().map(|&(a, k, b)| [a, k + 1, b]).collect();
        serde_json::json!({
            "truncated": self.truncated,
            "cluster_count": self.cluster_count(),
            "variable_count": self.variable_count(),
            "variables": self.variables,
            "nodes": nodes,
            "edges": edges,
        })
    }
}

/// Breadth-first closure under single mutations, deduplicated by unordered
/// cluster. Stops with `truncated = true` once `max_seeds` seeds are known
/// and another new one is found.
///
/// Each BFS level is mutated in parallel; insertion is sequential in a fixed
/// order so the output is deterministic.
pub fn enumerate_exchange_graph(initial: &QuantumSeed, max_seeds: usize) -> Result<ExchangeGraph> {
    let max_seeds = max_seeds.max(1);
    let ex = initial.pair.b.ex.clone();
    let mut seeds = vec![initial.clone()];
    let mut index: BTreeMap<Vec<TorusElement>, usize> = BTreeMap::new();
    index.insert(initial.cluster_key(), 0);
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut truncated = false;

    'bfs: while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&id| ex.iter().map(move |&k| (id, k)))
            .collect();
        let results: Vec<Result<QuantumSeed>> = jobs
            .par_iter()
            .map(|&(id, k)| seeds[id].mutate(k))
            .collect();
        let mut next = Vec::new();
        for ((from, k), result) in jobs.into_iter().zip(results) {
            let seed = result?;
            let key = seed.cluster_key();
            if let Some(&to) = index.get(&key) {
                check_same_lambda(&seeds[to], &seed)?;
                edges.push((from, k, to));
                continue;
            }
            if seeds.len() >= max_seeds {
                truncated = true;
                break 'bfs;
            }
            let to = seeds.len();
            index.insert(key, to);
            seeds.push(seed);
            edges.push((from, k, to));
            next.push(to);
        }
        frontier = next;
    }

    let mut variables: Vec<TorusElement> =
        seeds.iter().flat_map(|s| s.vars.iter().cloned()).collect();
    variables.sort();
    variables.dedup();
    Ok(ExchangeGraph {
        seeds,
        edges,
        variables,
        truncated,
    })
}

fn check_same_lambda(a: &QuantumSeed, b: &QuantumSeed) -> Result<()> {
    let pos: Vec<usize> = b
        .vars
        .iter()
        .map(|v| {
            a.vars
                .iter()
                .position(|w| w == v)
                .ok_or(Error::SeedCollision)
        })
        .collect::<Result<_>>()?;
    let m = b.vars.len();
    for i in 0..m {
        for j in 0..m {
            if b.pair.form.get(i, j) != a.pair.form.get(pos[i], pos[j]) {
                return Err(Error::SeedCollision);
            }
        }
    }
    Ok(())
}

/// Classical exchange `x_k' = (∏_{b_{ik}>0} x_i^{b_{ik}} + ∏_{b_{ik}<0} x_i^{-b_{ik}}) / x_k`.
pub fn classical_mutate(
    vars: &[LaurentPoly],
    b: &ExchangeMatrix,
    k: usize,
) -> Result<Vec<LaurentPoly>> {
    let column = b.column(k)?;
    let m = vars.len();
    let mut plus = LaurentPoly::one(vars[0].rank());
    let mut minus = LaurentPoly::one(vars[0].rank());
    for i in 0..m {
        let bik = column.0[i];
        if bik > 0 {
            plus = &plus * &vars[i].pow(bik as u64);
        } else if bik < 0 {
            minus = &minus * &vars[i].pow((-bik) as u64);
        }
    }
    let fresh = (&plus + &minus)
        .div_exact(&vars[k])
        .ok_or(Error::NotDivisible)?;
    let mut out = vars.to_vec();
    out[k] = fresh;
    Ok(out)
}

/// The classical initial cluster `y_1, …, y_m`.
pub fn classical_initial(m: usize) -> Vec<LaurentPoly> {
    (0..m).map(|i| LaurentPoly::variable(m, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::HalfPowerLaurent as H;
    use crate::torus::monomial;

    fn lambda2() -> Arc<SkewForm> {
        Arc::new(SkewForm::new(vec![vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap())
    }

    fn b2() -> ExchangeMatrix {
        ExchangeMatrix::new(3, vec![0, 1], vec![vec![0, -1], vec![1, 0], vec![0, 1]]).unwrap()
    }

    fn seed2() -> QuantumSeed {
        QuantumSeed::initial(check_compatible(&lambda2(), &b2()).unwrap())
    }

    /// Textbook mutation rule, independent of the E/F route.
    fn mutate_b_textbook(b: &ExchangeMatrix, k: usize) -> Vec<Vec<i64>> {
        let kc = b.column_of(k).unwrap();
        let e = b.entries();
        (0..b.rows())
            .map(|i| {
                (0..b.cols())
                    .map(|j| {
                        if i == k || j == kc {
                            -e[i][j]
                        } else {
                            e[i][j] + (e[i][kc].abs() * e[k][j] + e[i][kc] * e[k][j].abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn exchange_matrix_validation() {
        assert!(
            ExchangeMatrix::new(3, vec![0, 1], vec![vec![0, 1], vec![1, 0], vec![0, 1]]).is_err()
        );
        assert!(
            ExchangeMatrix::new(3, vec![0, 0], vec![vec![0, 0], vec![0, 0], vec![0, 0]]).is_err()
        );
        assert!(ExchangeMatrix::new(2, vec![0], vec![vec![0]]).is_err());
    }

    #[test]
    fn compatibility_examples() {
        let p = check_compatible(&lambda2(), &b2()).unwrap();
        assert_eq!(p.d(), &[1, 1]);
        assert_eq!(
            check_compatible(&Arc::new(SkewForm::zero(3)), &b2()),
            Err(Error::NotCompatible {
                row: 1,
                col: 1,
                value: 0
            })
        );
    }

    #[test]
    fn mutate_pair_example_and_involution() {
        let p = check_compatible(&lambda2(), &b2()).unwrap();
        let q = mutate_pair(&p, 0, 1).unwrap();
        assert_eq!(
            q.exchange_matrix().entries(),
            &[vec![0, 1], vec![-1, 0], vec![0, 1]]
        );
        assert_eq!(
            q.form().rows(),
            vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]]
        );
        assert_eq!(q, mutate_pair(&p, 0, -1).unwrap());
        assert_eq!(mutate_pair(&q, 0, 1).unwrap(), p);
        assert_eq!(q.d(), p.d());
        assert_eq!(mutate_pair(&p, 2, 1), Err(Error::NotExchangeable(3)));
    }

    #[test]
    fn matrix_mutation_matches_textbook_rule() {
        let p = check_compatible(&lambda2(), &b2()).unwrap();
        for seq in [
            vec![0],
            vec![1],
            vec![0, 1],
            vec![1, 0, 1],
            vec![0, 1, 0, 1, 0],
        ] {
            let mut cur = p.clone();
            for k in seq {
                let expect = mutate_b_textbook(cur.exchange_matrix(), k);
                cur = mutate_pair(&cur, k, 1).unwrap();
                assert_eq!(cur.exchange_matrix().entries(), expect.as_slice());
            }
        }
    }

    #[test]
    fn frame_monomial_examples() {
        let s = seed2();
        let l = lambda2();
        assert_eq!(
            s.frame_monomial(&ExponentVector::unit(3, 1)).unwrap(),
            s.vars()[1]
        );
        assert_eq!(
            s.frame_monomial(&ExponentVector::zero(3)).unwrap(),
            TorusElement::one(&l)
        );
        // q^{-1/2} Y_1^{-1} Y_2 = X^{(-1,1,0)}
        assert_eq!(
            s.frame_monomial(&vec![-1, 1, 0].into()).unwrap(),
            monomial(&l, &[-1, 1, 0], H::one())
        );
    }

    #[test]
    fn worked_example_mutations() {
        let l = lambda2();
        let s1 = seed2().mutate(0).unwrap();
        let y1p = &monomial(&l, &[-1, 0, 0], H::one()) + &monomial(&l, &[-1, 1, 0], H::one());
        assert_eq!(s1.vars()[0], y1p);
        let s2 = s1.mutate(1).unwrap();
        let y2p = &(&monomial(&l, &[-1, -1, 1], H::one()) + &monomial(&l, &[0, -1, 0], H::one()))
            + &monomial(&l, &[-1, 0, 1], H::one());
        assert_eq!(s2.vars()[1], y2p);
        let s3 = s2.mutate(0).unwrap();
        let y1pp = &monomial(&l, &[0, -1, 1], H::one()) + &monomial(&l, &[1, -1, 0], H::one());
        assert_eq!(s3.vars()[0], y1pp);
        assert_eq!(
            s3.vars()[0].to_string(),
            "Y_2^{-1}Y_3 + q^{-1/2}Y_1Y_2^{-1}"
        );
        for s in [&s1, &s2, &s3] {
            assert!(s.quasi_commutation_violations().unwrap().is_empty());
        }
        assert_eq!(seed2().mutate(2), Err(Error::NotExchangeable(3)));
    }

    #[test]
    fn mutation_is_an_involution() {
        let s = seed2();
        for seq in [vec![0], vec![1, 0], vec![0, 1, 0]] {
            let t = s.mutate_sequence(&seq).unwrap();
            let k = *seq.last().unwrap();
            let back = t.mutate(k).unwrap();
            let prev = s.mutate_sequence(&seq[..seq.len() - 1]).unwrap();
            assert_eq!(back.vars(), prev.vars());
            assert_eq!(back.pair(), prev.pair());
        }
    }

    #[test]
    fn enumeration_n2_counts() {
        let g = enumerate_exchange_graph(&seed2(), 100).unwrap();
        assert!(!g.truncated);
        assert_eq!(g.cluster_count(), 5);
        assert_eq!(g.variable_count(), 6);
        assert_eq!(g.edges.len(), 10);
        let t = enumerate_exchange_graph(&seed2(), 2).unwrap();
        assert!(t.truncated);
        assert_eq!(t.cluster_count(), 2);
    }

    #[test]
    fn classical_examples() {
        let vars = classical_initial(3);
        let out = classical_mutate(&vars, &b2(), 0).unwrap();
        let expected = (&LaurentPoly::one(3) + &vars[1])
            .div_exact(&vars[0])
            .unwrap();
        assert_eq!(out[0], expected);
        let p = mutate_pair(&check_compatible(&lambda2(), &b2()).unwrap(), 0, 1).unwrap();
        let back = classical_mutate(&out, p.exchange_matrix(), 0).unwrap();
        assert_eq!(back, vars);
    }

    #[test]
    fn specialization_commutes_with_mutation() {
        let s = seed2();
        for seq in [vec![0], vec![0, 1], vec![1, 0, 1]] {
            let mut cur = s.clone();
            for &k in &seq {
                let classical: Vec<LaurentPoly> =
                    cur.vars().iter().map(TorusElement::specialize_q1).collect();
                let expect = classical_mutate(&classical, cur.pair().exchange_matrix(), k).unwrap();
                cur = cur.mutate(k).unwrap();
                assert_eq!(cur.vars()[k].specialize_q1(), expect[k]);
            }
        }
    }

    #[test]
    fn seed_serialization_round_trip() {
        let s = seed2().mutate_sequence(&[0, 1]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with(r#"{"lambda":"#));
        assert!(json.ends_with(r#""history":[1,2]}"#));
        let back: QuantumSeed = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}

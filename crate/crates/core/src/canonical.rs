//! Canonical witnesses and exhaustive verification of canonical arrows.
//!
//! A witness for a coloring χ of hom(A, C) is a pair (w, P) with w in
//! hom(B, C) and P a set of positions of A such that, for f, g in hom(A, B),
//! χ(w∘f) = χ(w∘g) exactly when f and g agree on P. Both sides of that
//! equivalence are partitions of hom(A, B), so a witness check compares two
//! normalized partitions.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::category::{compose, compose_maps, enumerate_colorings, Coloring, Embedding, EmbeddingDoc, HomSet};
use crate::error::{CoreError, Result};
use crate::structures::{check_positions, OrderedStructure};

/// Default number of colorings a verification may examine.
pub const DEFAULT_COLORING_BUDGET: u64 = 1_000_000;

const BATCH: usize = 1 << 12;

/// The elements of `x` at the (increasing) positions `q`.
pub fn select<T: Clone>(x: &[T], q: &[usize]) -> Result<Vec<T>> {
    check_positions(q, x.len())?;
    Ok(q.iter().map(|&i| x[i].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalWitness {
    pub w: Embedding,
    /// Positions of A; the subobject is the substructure they induce.
    pub positions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub w: EmbeddingDoc,
    pub positions: Vec<usize>,
}

impl CanonicalWitness {
    pub fn to_doc(&self) -> WitnessDoc {
        WitnessDoc { w: self.w.to_doc(), positions: self.positions.clone() }
    }
}

fn restriction_partition(hom_ab: &HomSet, positions: &[usize]) -> Vec<usize> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    hom_ab
        .maps()
        .iter()
        .map(|f| {
            let key: Vec<usize> = positions.iter().map(|&p| f[p]).collect();
            let next = seen.len();
            *seen.entry(key).or_insert(next)
        })
        .collect()
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 0..=n {
        crate::category::for_each_subset(n, size, &mut |s| out.push(s.to_vec()));
    }
    out
}

/// Hom-sets and composition tables for one triple (A, B, C), shared by all
/// colorings of hom(A, C).
#[derive(Debug)]
pub struct CanProblem {
    pub hom_ab: HomSet,
    pub hom_bc: HomSet,
    pub hom_ac: HomSet,
    // comp[w][f] = position of w∘f in hom_ac
    comp: Vec<Vec<usize>>,
    candidates: Vec<Vec<usize>>,
    // normalized partition of hom_ab -> first candidate inducing it
    first_candidate: HashMap<Vec<usize>, usize>,
}

impl CanProblem {
    pub fn new(a: Arc<OrderedStructure>, b: Arc<OrderedStructure>, c: Arc<OrderedStructure>) -> Result<Self> {
        let hom_ab = HomSet::new(a.clone(), b.clone())?;
        if hom_ab.is_empty() {
            return Err(CoreError::EmptyHomSet("hom(A, B)"));
        }
        let hom_bc = HomSet::new(b, c.clone())?;
        let hom_ac = HomSet::new(a.clone(), c)?;
        let comp = hom_bc
            .maps()
            .iter()
            .map(|w| {
                hom_ab
                    .maps()
                    .iter()
                    .map(|f| hom_ac.position(&compose_maps(f, w)).expect("composite of embeddings is an embedding"))
                    .collect()
            })
            .collect();
        let candidates = subsets_by_size(a.n());
        let mut first_candidate = HashMap::new();
        for (i, p) in candidates.iter().enumerate() {
            first_candidate.entry(restriction_partition(&hom_ab, p)).or_insert(i);
        }
        Ok(CanProblem { hom_ab, hom_bc, hom_ac, comp, candidates, first_candidate })
    }

    /// Index of the first witness `(w, P)` for `colors`, if any.
    pub fn find(&self, colors: &[usize]) -> Option<(usize, usize)> {
        let mut scratch = vec![usize::MAX; self.hom_ac.len()];
        let mut labels = Vec::with_capacity(self.hom_ab.len());
        for (w, row) in self.comp.iter().enumerate() {
            labels.clear();
            let mut next = 0;
            for &h in row {
                let c = colors[h];
                if scratch[c] == usize::MAX {
                    scratch[c] = next;
                    next += 1;
                }
                labels.push(scratch[c]);
            }
            for &h in row {
                scratch[colors[h]] = usize::MAX;
            }
            if let Some(&p) = self.first_candidate.get(&labels) {
                return Some((w, p));
            }
        }
        None
    }

    pub fn witness(&self, (w, p): (usize, usize)) -> CanonicalWitness {
        CanonicalWitness { w: self.hom_bc.embedding(w), positions: self.candidates[p].clone() }
    }

    pub fn find_witness(&self, chi: &Coloring) -> Result<Option<CanonicalWitness>> {
        chi.check_len(self.hom_ac.len())?;
        Ok(self.find(chi.colors()).map(|ix| self.witness(ix)))
    }
}

/// Direct check of the witness condition over all pairs in hom(A, B).
pub fn is_canonical_witness(
    hom_ac: &HomSet,
    chi: &Coloring,
    wit: &CanonicalWitness,
    hom_ab: &HomSet,
) -> Result<bool> {
    chi.check_len(hom_ac.len())?;
    if hom_ab.source() != hom_ac.source()
        || wit.w.source().as_ref() != hom_ab.target().as_ref()
        || wit.w.target().as_ref() != hom_ac.target().as_ref()
    {
        return Err(CoreError::EndpointMismatch);
    }
    check_positions(&wit.positions, hom_ab.source().n())?;
    let color_of = |f: &Embedding| -> Result<usize> {
        let composite = compose(f, &wit.w)?;
        let i = hom_ac.position(composite.map()).ok_or(CoreError::NotAnEmbedding(format!("{:?}", composite.map())))?;
        Ok(chi.color(i))
    };
    let homs = hom_ab.embeddings();
    let colors = homs.iter().map(color_of).collect::<Result<Vec<_>>>()?;
    for (f, cf) in homs.iter().zip(&colors) {
        for (g, cg) in homs.iter().zip(&colors) {
            let agree = wit.positions.iter().all(|&p| f.map()[p] == g.map()[p]);
            if (cf == cg) != agree {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first witness for `chi` in the order (w, |P|, P).
pub fn find_canonical_witness(
    chi: &Coloring,
    a: &Arc<OrderedStructure>,
    b: &Arc<OrderedStructure>,
    c: &Arc<OrderedStructure>,
) -> Result<Option<CanonicalWitness>> {
    CanProblem::new(a.clone(), b.clone(), c.clone())?.find_witness(chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    /// The coloring budget ran out before a counterexample or the end.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub coloring: Coloring,
    pub witness: WitnessDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanStats {
    pub colorings_examined: u64,
    pub hom_ab: usize,
    pub hom_bc: usize,
    pub hom_ac: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanVerdict {
    pub outcome: Outcome,
    pub holds: bool,
    pub counterexample: Option<Coloring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessEntry>>,
    pub stats: CanStats,
}

/// Checks every coloring of hom(A, C) for a witness, stopping at the first
/// coloring (in enumeration order) that has none.
pub fn verify_can_arrow(
    a: &Arc<OrderedStructure>,
    b: &Arc<OrderedStructure>,
    c: &Arc<OrderedStructure>,
    budget: u64,
    collect_witnesses: bool,
) -> Result<CanVerdict> {
    let problem = CanProblem::new(a.clone(), b.clone(), c.clone())?;
    Ok(verify_problem(&problem, budget, collect_witnesses))
}

pub fn verify_problem(problem: &CanProblem, budget: u64, collect_witnesses: bool) -> CanVerdict {
    let mut stream = enumerate_colorings(problem.hom_ac.len(), budget);
    let mut examined = 0u64;
    let mut witnesses = collect_witnesses.then(Vec::new);
    let mut batch: Vec<Coloring> = Vec::with_capacity(BATCH);
    let stats = |examined| CanStats {
        colorings_examined: examined,
        hom_ab: problem.hom_ab.len(),
        hom_bc: problem.hom_bc.len(),
        hom_ac: problem.hom_ac.len(),
    };
    let mut exhausted = false;
    loop {
        batch.clear();
        while batch.len() < BATCH {
            match stream.next() {
                Some(Ok(chi)) => batch.push(chi),
                Some(Err(_)) => {
                    exhausted = true;
                    break;
                }
                None => break,
            }
        }
        if batch.is_empty() {
            break;
        }
        let found: Vec<Option<(usize, usize)>> = batch.par_iter().map(|chi| problem.find(chi.colors())).collect();
        if let Some(bad) = found.iter().position(Option::is_none) {
            examined += bad as u64 + 1;
            if let Some(ws) = witnesses.as_mut() {
                for (chi, ix) in batch.iter().zip(&found).take(bad) {
                    ws.push(WitnessEntry { coloring: chi.clone(), witness: problem.witness(ix.unwrap()).to_doc() });
                }
            }
            return CanVerdict {
                outcome: Outcome::Fails,
                holds: false,
                counterexample: Some(batch[bad].clone()),
                witnesses,
                stats: stats(examined),
            };
        }
        examined += batch.len() as u64;
        if let Some(ws) = witnesses.as_mut() {
            for (chi, ix) in batch.iter().zip(&found) {
                ws.push(WitnessEntry { coloring: chi.clone(), witness: problem.witness(ix.unwrap()).to_doc() });
            }
        }
        if exhausted {
            break;
        }
    }
    let outcome = if exhausted { Outcome::Inconclusive } else { Outcome::Holds };
    CanVerdict { outcome, holds: outcome == Outcome::Holds, counterexample: None, witnesses, stats: stats(examined) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErcRow {
    pub n: usize,
    pub outcome: Outcome,
    pub colorings_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErcReport {
    pub k: usize,
    pub m: usize,
    pub n_max: usize,
    /// Smallest n with a canonical arrow, when the search settled it.
    pub n: Option<usize>,
    pub budget_exhausted: bool,
    pub rows: Vec<ErcRow>,
}

/// Smallest n ≤ n_max such that every coloring of the k-subsets of an
/// n-chain has a canonical witness inside some m-subset.
pub fn erc_search(k: usize, m: usize, n_max: usize, budget: u64) -> Result<ErcReport> {
    if !(k <= m && m <= n_max) {
        return Err(CoreError::Malformed(format!("need k <= m <= n_max, got k={k}, m={m}, n_max={n_max}")));
    }
    let a = Arc::new(OrderedStructure::chain(k));
    let b = Arc::new(OrderedStructure::chain(m));
    let mut rows = Vec::new();
    for n in m..=n_max {
        let c = Arc::new(OrderedStructure::chain(n));
        let v = verify_can_arrow(&a, &b, &c, budget, false)?;
        rows.push(ErcRow { n, outcome: v.outcome, colorings_examined: v.stats.colorings_examined });
        match v.outcome {
            Outcome::Holds => return Ok(ErcReport { k, m, n_max, n: Some(n), budget_exhausted: false, rows }),
            Outcome::Inconclusive => return Ok(ErcReport { k, m, n_max, n: None, budget_exhausted: true, rows }),
            Outcome::Fails => {}
        }
    }
    Ok(ErcReport { k, m, n_max, n: None, budget_exhausted: false, rows })
}

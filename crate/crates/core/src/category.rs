//! Embeddings, hom-sets and colorings of hom-sets.
//!
//! Every morphism is a strictly increasing index map that preserves and
//! reflects the relations of its kind. Hom-sets are materialized as lists
//! sorted lexicographically by map, so a coloring can be stored as one color
//! id per hom-set position.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::structures::{check_positions, OrderedStructure, Payload};

pub type Map = Vec<usize>;

/// `true` iff the map extended by its last entry stays consistent with every
/// relation that involves the last source vertex. Earlier vertices are
/// assumed to have been checked already.
fn extends(a: &OrderedStructure, b: &OrderedStructure, map: &[usize]) -> bool {
    let k = map.len() - 1;
    let mk = map[k];
    match (a.payload(), b.payload()) {
        (Payload::Chain, Payload::Chain) => true,
        (Payload::OrderedGraph { .. }, Payload::OrderedGraph { .. }) => {
            (0..k).all(|j| a.has_edge(j, k) == b.has_edge(map[j], mk))
        }
        (Payload::OrderedMetric { d: da }, Payload::OrderedMetric { d: db }) => {
            (0..k).all(|j| da[j][k] == db[map[j]][mk])
        }
        (Payload::Hypergraph { families: fa, arities, .. }, Payload::Hypergraph { families: fb, .. }) => {
            let mut scratch = Vec::new();
            arities.iter().zip(fa.iter().zip(fb)).all(|(&r, (ea, eb))| {
                if r == 0 || r - 1 > k {
                    return true;
                }
                // every r-subset of 0..=k that contains k
                let mut ok = true;
                for_each_subset(k, r - 1, &mut |subset| {
                    if !ok {
                        return;
                    }
                    scratch.clear();
                    scratch.extend_from_slice(subset);
                    scratch.push(k);
                    let in_a = ea.contains(scratch.as_slice());
                    for v in scratch.iter_mut() {
                        *v = map[*v];
                    }
                    ok = in_a == eb.contains(scratch.as_slice());
                });
                ok
            })
        }
        (Payload::Relational { relations: ra, arities, .. }, Payload::Relational { relations: rb, .. }) => {
            let mut tuple = Vec::new();
            let mut image = Vec::new();
            arities.iter().zip(ra.iter().zip(rb)).all(|(&r, (ta, tb))| {
                if r == 0 {
                    return true;
                }
                let mut ok = true;
                for_each_tuple(k + 1, r, &mut tuple, &mut |t| {
                    if !ok || !t.contains(&k) {
                        return;
                    }
                    image.clear();
                    image.extend(t.iter().map(|&v| map[v]));
                    ok = ta.contains(t) == tb.contains(image.as_slice());
                });
                ok
            })
        }
        (pa, pb) => {
            let (Some(rel_a), Some(rel_b)) = (a.binary_relation(), b.binary_relation()) else {
                debug_assert!(false, "incompatible payloads {pa:?} / {pb:?}");
                return false;
            };
            (0..=k).all(|j| {
                let mj = map[j];
                rel_a.contains(&(j, k)) == rel_b.contains(&(mj, mk))
                    && rel_a.contains(&(k, j)) == rel_b.contains(&(mk, mj))
            })
        }
    }
}

/// Calls `f` on every increasing `size`-subset of `0..n`.
pub(crate) fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        let need = size - cur.len();
        for v in start..(n + 1).saturating_sub(need) {
            cur.push(v);
            rec(v + 1, n, size, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(size);
    rec(0, n, size, &mut cur, f);
}

fn for_each_tuple(n: usize, len: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for v in 0..n {
        cur.push(v);
        for_each_tuple(n, len, cur, f);
        cur.pop();
    }
}

/// Independent embedding test: `map` is an embedding iff it is strictly
/// increasing and the substructure it induces in `b` equals `a`.
pub fn is_embedding(a: &OrderedStructure, b: &OrderedStructure, map: &[usize]) -> bool {
    if a.check_compatible(b).is_err() || map.len() != a.n() {
        return false;
    }
    if check_positions(map, b.n()).is_err() {
        return false;
    }
    matches!(b.induced(map), Ok(sub) if sub == *a)
}

fn backtrack(a: &OrderedStructure, b: &OrderedStructure, map: &mut Map, out: &mut Vec<Map>) {
    let k = map.len();
    if k == a.n() {
        out.push(map.clone());
        return;
    }
    let start = map.last().map_or(0, |&v| v + 1);
    let remaining = a.n() - k;
    if b.n() < remaining {
        return;
    }
    for v in start..=b.n() - remaining {
        map.push(v);
        if extends(a, b, map) {
            backtrack(a, b, map, out);
        }
        map.pop();
    }
}

/// All embedding maps `a -> b`, lexicographically sorted.
pub fn embedding_maps(a: &OrderedStructure, b: &OrderedStructure) -> Result<Vec<Map>> {
    a.check_compatible(b)?;
    let mut out = Vec::new();
    backtrack(a, b, &mut Vec::with_capacity(a.n()), &mut out);
    Ok(out)
}

/// Same output as [`embedding_maps`], with the search split across the
/// current rayon pool by the image of the first vertex.
pub fn embedding_maps_par(a: &OrderedStructure, b: &OrderedStructure) -> Result<Vec<Map>> {
    a.check_compatible(b)?;
    if a.n() == 0 || b.n() < a.n() {
        return embedding_maps(a, b);
    }
    let chunks: Vec<Vec<Map>> = (0..=b.n() - a.n())
        .into_par_iter()
        .map(|first| {
            let mut map = vec![first];
            let mut out = Vec::new();
            if extends(a, b, &map) {
                backtrack(a, b, &mut map, &mut out);
            }
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<OrderedStructure>,
    target: Arc<OrderedStructure>,
    map: Map,
}

fn same_object(x: &Arc<OrderedStructure>, y: &Arc<OrderedStructure>) -> bool {
    Arc::ptr_eq(x, y) || x == y
}

impl PartialEq for Embedding {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_object(&self.source, &other.source) && same_object(&self.target, &other.target)
    }
}

impl Eq for Embedding {}

impl Embedding {
    /// Checks the map with [`is_embedding`].
    pub fn new(source: Arc<OrderedStructure>, target: Arc<OrderedStructure>, map: Map) -> Result<Self> {
        source.check_compatible(&target)?;
        if !is_embedding(&source, &target, &map) {
            return Err(CoreError::NotAnEmbedding(format!("{map:?}")));
        }
        Ok(Embedding { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<OrderedStructure>, target: Arc<OrderedStructure>, map: Map) -> Self {
        Embedding { source, target, map }
    }

    pub fn identity(a: Arc<OrderedStructure>) -> Self {
        let map = (0..a.n()).collect();
        Embedding { source: a.clone(), target: a, map }
    }

    pub fn source(&self) -> &Arc<OrderedStructure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OrderedStructure> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self` followed by `next`; as maps, `next.map ∘ self.map`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        compose(self, next)
    }

    pub fn to_doc(&self) -> EmbeddingDoc {
        EmbeddingDoc { map: self.map.clone() }
    }
}

/// `f: A -> B` followed by `g: B -> C`.
pub fn compose(f: &Embedding, g: &Embedding) -> Result<Embedding> {
    if !same_object(&f.target, &g.source) {
        return Err(CoreError::EndpointMismatch);
    }
    let map = compose_maps(&f.map, &g.map);
    Ok(Embedding { source: f.source.clone(), target: g.target.clone(), map })
}

pub fn compose_maps(first: &[usize], then: &[usize]) -> Map {
    first.iter().map(|&x| then[x]).collect()
}

pub fn identity(a: &Arc<OrderedStructure>) -> Embedding {
    Embedding::identity(a.clone())
}

/// Wire form of an embedding; source and target come from context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDoc {
    pub map: Map,
}

/// All embeddings `a -> b` in lexicographic order of their maps.
pub fn enumerate_embeddings(a: &Arc<OrderedStructure>, b: &Arc<OrderedStructure>) -> Result<Vec<Embedding>> {
    Ok(embedding_maps(a, b)?
        .into_iter()
        .map(|map| Embedding::new_unchecked(a.clone(), b.clone(), map))
        .collect())
}

/// A materialized hom-set with position lookup.
#[derive(Clone, Debug)]
pub struct HomSet {
    source: Arc<OrderedStructure>,
    target: Arc<OrderedStructure>,
    maps: Vec<Map>,
    index: HashMap<Map, usize>,
}

impl HomSet {
    pub fn new(source: Arc<OrderedStructure>, target: Arc<OrderedStructure>) -> Result<Self> {
        let maps = embedding_maps(&source, &target)?;
        Ok(Self::from_maps(source, target, maps))
    }

    pub(crate) fn from_maps(source: Arc<OrderedStructure>, target: Arc<OrderedStructure>, maps: Vec<Map>) -> Self {
        let index = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        HomSet { source, target, maps, index }
    }

    pub fn source(&self) -> &Arc<OrderedStructure> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OrderedStructure> {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Map] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &[usize] {
        &self.maps[i]
    }

    pub fn position(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }

    pub fn embedding(&self, i: usize) -> Embedding {
        Embedding::new_unchecked(self.source.clone(), self.target.clone(), self.maps[i].clone())
    }

    pub fn embeddings(&self) -> Vec<Embedding> {
        (0..self.len()).map(|i| self.embedding(i)).collect()
    }

    pub fn position_of(&self, e: &Embedding) -> Option<usize> {
        if !same_object(&e.source, &self.source) || !same_object(&e.target, &self.target) {
            return None;
        }
        self.position(&e.map)
    }
}

/// A set partition of a hom-set, stored as a restricted growth string
/// aligned with the hom-set order: the first occurrences of the color ids
/// are 0, 1, 2, ... in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    /// Normalizes arbitrary color labels; only the induced partition is kept.
    pub fn from_labels(labels: &[usize]) -> Self {
        Coloring { colors: normalize_labels(labels) }
    }

    pub fn constant(len: usize) -> Self {
        Coloring { colors: vec![0; len] }
    }

    pub fn injective(len: usize) -> Self {
        Coloring { colors: (0..len).collect() }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, i: usize) -> usize {
        self.colors[i]
    }

    pub fn num_classes(&self) -> usize {
        self.colors.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_classes()];
        for (i, &c) in self.colors.iter().enumerate() {
            classes[c].push(i);
        }
        classes
    }

    pub fn is_normalized(&self) -> bool {
        self.colors == normalize_labels(&self.colors)
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(CoreError::ColoringMismatch { expected, found: self.len() })
        }
    }
}

pub fn normalize_labels(labels: &[usize]) -> Vec<usize> {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = seen.len();
            *seen.entry(l).or_insert(next)
        })
        .collect()
}

/// Set partitions of `0..len` as restricted growth strings, in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct RgsIter {
    current: Vec<usize>,
    // prefix_max[i] = max(current[0..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl RgsIter {
    pub fn new(len: usize) -> Self {
        RgsIter { current: vec![0; len], prefix_max: vec![0; len], started: false, done: false }
    }

    /// Advances in place; returns `false` once exhausted.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let len = self.current.len();
        let mut i = len;
        while i > 1 {
            i -= 1;
            if self.current[i] <= self.prefix_max[i - 1] {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for j in i + 1..len {
                    self.current[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for RgsIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}

/// Streams all colorings of a hom-set of size `len`; past `cap` items it
/// yields one [`CoreError::BudgetExceeded`] and stops.
#[derive(Clone, Debug)]
pub struct ColoringStream {
    rgs: RgsIter,
    cap: u64,
    produced: u64,
    failed: bool,
}

impl Iterator for ColoringStream {
    type Item = Result<Coloring>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        if self.produced == self.cap {
            // only an error if there is something left to produce
            return match self.rgs.advance() {
                None => None,
                Some(_) => {
                    self.failed = true;
                    Some(Err(CoreError::BudgetExceeded { budget: self.cap, reached: self.produced }))
                }
            };
        }
        let colors = self.rgs.advance()?.to_vec();
        self.produced += 1;
        Some(Ok(Coloring { colors }))
    }
}

pub fn enumerate_colorings(len: usize, cap: u64) -> ColoringStream {
    ColoringStream { rgs: RgsIter::new(len), cap, produced: 0, failed: false }
}

/// Bell numbers by the Bell triangle; saturates at `u128::MAX`.
pub fn bell(n: usize) -> u128 {
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last.saturating_add(x));
        }
        row = next;
    }
    row[0]
}

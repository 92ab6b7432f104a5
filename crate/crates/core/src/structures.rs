//! Finite linearly ordered structures.
//!
//! Every structure lives on the vertex set `0..n`, and the linear order is
//! the natural order of the indices. Two structures are equal exactly when
//! they are structurally equal, so "isomorphic as ordered structures" and
//! `==` coincide.
//!
//! Constructors are permissive: they normalize representation (sorted
//! pairs, sorted hyperedges) but never reject data. Use
//! [`OrderedStructure::validate`] to check the axioms of each kind.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::rational::Rational;

pub type Pair = (usize, usize);
pub type Tuple = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Chain,
    OrderedGraph,
    Hypergraph,
    ReflexiveDigraphLe,
    Tournament,
    PosetLe,
    OrderedMetric,
    Relational,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = serde_json::to_value(self).ok();
        match name.as_ref().and_then(|v| v.as_str()) {
            Some(s) => f.write_str(s),
            None => write!(f, "{self:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    Chain,
    /// Unordered edges, stored with the smaller endpoint first.
    OrderedGraph { edges: BTreeSet<Pair> },
    /// One family of hyperedges per arity; each hyperedge is stored sorted.
    Hypergraph { arities: Vec<usize>, families: Vec<BTreeSet<Tuple>> },
    ReflexiveDigraphLe { rho: BTreeSet<Pair> },
    Tournament { arcs: BTreeSet<Pair> },
    PosetLe { leq: BTreeSet<Pair> },
    OrderedMetric { d: Vec<Vec<Rational>> },
    /// One relation per arity; tuples may repeat entries.
    Relational { arities: Vec<usize>, relations: Vec<BTreeSet<Tuple>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedStructure {
    n: usize,
    payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: &str, detail: impl Into<String>) {
        self.violations.push(Violation { axiom: axiom.to_owned(), detail: detail.into() });
    }

    /// Turns a failed report into an error naming the first violated axiom.
    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(CoreError::Invalid(format!("{}: {}", v.axiom, v.detail))),
        }
    }
}

fn sorted_pair(x: usize, y: usize) -> Pair {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

fn sorted_tuple(mut t: Tuple) -> Tuple {
    t.sort_unstable();
    t
}

impl OrderedStructure {
    pub fn chain(n: usize) -> Self {
        OrderedStructure { n, payload: Payload::Chain }
    }

    pub fn graph(n: usize, edges: impl IntoIterator<Item = Pair>) -> Self {
        let edges = edges.into_iter().map(|(x, y)| sorted_pair(x, y)).collect();
        OrderedStructure { n, payload: Payload::OrderedGraph { edges } }
    }

    pub fn hypergraph(n: usize, arities: Vec<usize>, families: Vec<Vec<Tuple>>) -> Self {
        let families = families
            .into_iter()
            .map(|fam| fam.into_iter().map(sorted_tuple).collect())
            .collect();
        OrderedStructure { n, payload: Payload::Hypergraph { arities, families } }
    }

    pub fn digraph(n: usize, rho: impl IntoIterator<Item = Pair>) -> Self {
        OrderedStructure { n, payload: Payload::ReflexiveDigraphLe { rho: rho.into_iter().collect() } }
    }

    /// The reflexive digraph whose only arcs are the loops.
    pub fn discrete_digraph(n: usize) -> Self {
        Self::digraph(n, (0..n).map(|x| (x, x)))
    }

    pub fn tournament(n: usize, arcs: impl IntoIterator<Item = Pair>) -> Self {
        OrderedStructure { n, payload: Payload::Tournament { arcs: arcs.into_iter().collect() } }
    }

    pub fn poset(n: usize, leq: impl IntoIterator<Item = Pair>) -> Self {
        OrderedStructure { n, payload: Payload::PosetLe { leq: leq.into_iter().collect() } }
    }

    /// The antichain: only the reflexive pairs.
    pub fn antichain(n: usize) -> Self {
        Self::poset(n, (0..n).map(|x| (x, x)))
    }

    /// The poset whose order agrees with the index order.
    pub fn poset_chain(n: usize) -> Self {
        Self::poset(n, (0..n).flat_map(|x| (x..n).map(move |y| (x, y))))
    }

    pub fn metric(d: Vec<Vec<Rational>>) -> Self {
        OrderedStructure { n: d.len(), payload: Payload::OrderedMetric { d } }
    }

    pub fn relational(n: usize, arities: Vec<usize>, relations: Vec<Vec<Tuple>>) -> Self {
        let relations = relations.into_iter().map(|r| r.into_iter().collect()).collect();
        OrderedStructure { n, payload: Payload::Relational { arities, relations } }
    }

    pub fn from_parts(n: usize, payload: Payload) -> Self {
        OrderedStructure { n, payload }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn into_payload(self) -> Payload {
        self.payload
    }

    pub fn kind(&self) -> Kind {
        match self.payload {
            Payload::Chain => Kind::Chain,
            Payload::OrderedGraph { .. } => Kind::OrderedGraph,
            Payload::Hypergraph { .. } => Kind::Hypergraph,
            Payload::ReflexiveDigraphLe { .. } => Kind::ReflexiveDigraphLe,
            Payload::Tournament { .. } => Kind::Tournament,
            Payload::PosetLe { .. } => Kind::PosetLe,
            Payload::OrderedMetric { .. } => Kind::OrderedMetric,
            Payload::Relational { .. } => Kind::Relational,
        }
    }

    /// Arities for the kinds that carry a signature.
    pub fn signature(&self) -> Option<&[usize]> {
        match &self.payload {
            Payload::Hypergraph { arities, .. } | Payload::Relational { arities, .. } => Some(arities),
            _ => None,
        }
    }

    /// The binary relation of a digraph, tournament or poset.
    pub fn binary_relation(&self) -> Option<&BTreeSet<Pair>> {
        match &self.payload {
            Payload::ReflexiveDigraphLe { rho } => Some(rho),
            Payload::Tournament { arcs } => Some(arcs),
            Payload::PosetLe { leq } => Some(leq),
            _ => None,
        }
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        match &self.payload {
            Payload::OrderedGraph { edges } => edges.contains(&sorted_pair(x, y)),
            _ => false,
        }
    }

    pub fn distance(&self, x: usize, y: usize) -> Option<Rational> {
        match &self.payload {
            Payload::OrderedMetric { d } => d.get(x).and_then(|row| row.get(y)).copied(),
            _ => None,
        }
    }

    /// Fails unless `self` has the given kind.
    pub fn expect_kind(&self, expected: Kind) -> Result<()> {
        if self.kind() == expected {
            Ok(())
        } else {
            Err(CoreError::KindMismatch { expected, found: self.kind() })
        }
    }

    /// Fails unless both structures live in the same category (same kind and,
    /// where applicable, the same signature).
    pub fn check_compatible(&self, other: &OrderedStructure) -> Result<()> {
        other.expect_kind(self.kind())?;
        if self.signature() != other.signature() {
            return Err(CoreError::SignatureMismatch(
                self.signature().unwrap_or_default().to_vec(),
                other.signature().unwrap_or_default().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.n;
        match &self.payload {
            Payload::Chain => {}
            Payload::OrderedGraph { edges } => {
                for &(x, y) in edges {
                    if y >= n {
                        report.push("vertex-range", format!("edge {{{x},{y}}}"));
                    }
                    if x == y {
                        report.push("no-loops", format!("edge {{{x},{y}}}"));
                    }
                }
            }
            Payload::Hypergraph { arities, families } => {
                if arities.len() != families.len() {
                    report.push(
                        "family-count",
                        format!("{} arities but {} families", arities.len(), families.len()),
                    );
                }
                for (i, &r) in arities.iter().enumerate() {
                    if r == 0 {
                        report.push("positive-arity", format!("family {i} has arity 0"));
                    }
                }
                for (i, (fam, &r)) in families.iter().zip(arities).enumerate() {
                    for e in fam {
                        if e.iter().any(|&v| v >= n) {
                            report.push("vertex-range", format!("family {i}, edge {e:?}"));
                        }
                        if e.windows(2).any(|w| w[0] == w[1]) {
                            report.push("distinct-vertices", format!("family {i}, edge {e:?}"));
                        }
                        if e.len() != r {
                            report.push("edge-size", format!("family {i} has arity {r}, edge {e:?}"));
                        }
                    }
                }
            }
            Payload::ReflexiveDigraphLe { rho } => {
                check_pairs_in_range(&mut report, rho, n);
                check_reflexive(&mut report, rho, n);
                check_linear_extension(&mut report, rho);
            }
            Payload::Tournament { arcs } => {
                check_pairs_in_range(&mut report, arcs, n);
                for &(x, y) in arcs {
                    if x == y {
                        report.push("irreflexivity", format!("loop ({x},{x})"));
                    }
                }
                for x in 0..n {
                    for y in x + 1..n {
                        let count = arcs.contains(&(x, y)) as usize + arcs.contains(&(y, x)) as usize;
                        if count != 1 {
                            report.push("exactly-one-arc", format!("pair {{{x},{y}}} carries {count} arcs"));
                        }
                    }
                }
            }
            Payload::PosetLe { leq } => {
                check_pairs_in_range(&mut report, leq, n);
                check_reflexive(&mut report, leq, n);
                check_linear_extension(&mut report, leq);
                for &(x, y) in leq {
                    if x != y && leq.contains(&(y, x)) && x < y {
                        report.push("antisymmetry", format!("({x},{y}) and ({y},{x})"));
                    }
                }
                for &(x, y) in leq {
                    for &(_, z) in leq.range((y, 0)..=(y, usize::MAX)) {
                        if !leq.contains(&(x, z)) {
                            report.push("transitivity", format!("({x},{y}),({y},{z}) without ({x},{z})"));
                        }
                    }
                }
            }
            Payload::OrderedMetric { d } => {
                if d.iter().any(|row| row.len() != n) {
                    report.push("matrix-shape", format!("distance matrix is not {n}x{n}"));
                    return report;
                }
                for x in 0..n {
                    if d[x][x] != Rational::ZERO {
                        report.push("zero diagonal", format!("d({x},{x}) = {}", d[x][x]));
                    }
                    for y in 0..n {
                        if x != y && !d[x][y].is_positive() {
                            report.push("positivity off diagonal", format!("d({x},{y}) = {}", d[x][y]));
                        }
                        if x < y && d[x][y] != d[y][x] {
                            report.push("symmetry", format!("d({x},{y}) = {} but d({y},{x}) = {}", d[x][y], d[y][x]));
                        }
                    }
                }
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            if d[x][z] > d[x][y] + d[y][z] {
                                report.push(
                                    "triangle inequality",
                                    format!("d({x},{z}) > d({x},{y}) + d({y},{z})"),
                                );
                            }
                        }
                    }
                }
            }
            Payload::Relational { arities, relations } => {
                if arities.len() != relations.len() {
                    report.push(
                        "family-count",
                        format!("{} arities but {} relations", arities.len(), relations.len()),
                    );
                }
                for (i, &r) in arities.iter().enumerate() {
                    if r == 0 {
                        report.push("positive-arity", format!("relation {i} has arity 0"));
                    }
                }
                for (i, (rel, &r)) in relations.iter().zip(arities).enumerate() {
                    for t in rel {
                        if t.len() != r {
                            report.push("tuple-arity", format!("relation {i} has arity {r}, tuple {t:?}"));
                        }
                        if t.iter().any(|&v| v >= n) {
                            report.push("vertex-range", format!("relation {i}, tuple {t:?}"));
                        }
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// The substructure on `positions`, re-indexed increasingly.
    pub fn induced(&self, positions: &[usize]) -> Result<OrderedStructure> {
        check_positions(positions, self.n)?;
        let m = positions.len();
        // new index of each old vertex, if kept
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &p) in positions.iter().enumerate() {
            new_index[p] = i;
        }
        let relabel_pairs = |set: &BTreeSet<Pair>| -> BTreeSet<Pair> {
            set.iter()
                .filter(|&&(x, y)| x < self.n && y < self.n)
                .filter_map(|&(x, y)| {
                    let (nx, ny) = (new_index[x], new_index[y]);
                    (nx != usize::MAX && ny != usize::MAX).then_some((nx, ny))
                })
                .collect()
        };
        let relabel_tuples = |set: &BTreeSet<Tuple>| -> BTreeSet<Tuple> {
            set.iter()
                .filter_map(|t| {
                    t.iter()
                        .map(|&v| new_index.get(v).copied().filter(|&i| i != usize::MAX))
                        .collect::<Option<Tuple>>()
                })
                .collect()
        };
        let payload = match &self.payload {
            Payload::Chain => Payload::Chain,
            Payload::OrderedGraph { edges } => Payload::OrderedGraph { edges: relabel_pairs(edges) },
            Payload::Hypergraph { arities, families } => Payload::Hypergraph {
                arities: arities.clone(),
                families: families.iter().map(relabel_tuples).collect(),
            },
            Payload::ReflexiveDigraphLe { rho } => Payload::ReflexiveDigraphLe { rho: relabel_pairs(rho) },
            Payload::Tournament { arcs } => Payload::Tournament { arcs: relabel_pairs(arcs) },
            Payload::PosetLe { leq } => Payload::PosetLe { leq: relabel_pairs(leq) },
            Payload::OrderedMetric { d } => Payload::OrderedMetric {
                d: positions
                    .iter()
                    .map(|&x| positions.iter().map(|&y| d[x][y]).collect())
                    .collect(),
            },
            Payload::Relational { arities, relations } => Payload::Relational {
                arities: arities.clone(),
                relations: relations.iter().map(relabel_tuples).collect(),
            },
        };
        Ok(OrderedStructure { n: m, payload })
    }

    /// The set of attained distances of a metric space.
    pub fn spectre(&self) -> Result<BTreeSet<Rational>> {
        match &self.payload {
            Payload::OrderedMetric { d } => Ok(d.iter().flatten().copied().collect()),
            _ => Err(CoreError::KindMismatch { expected: Kind::OrderedMetric, found: self.kind() }),
        }
    }

    /// Views a poset with a linear extension as a reflexive digraph with a
    /// linear extension (the inclusion of posets into digraphs).
    pub fn poset_as_digraph(&self) -> Result<OrderedStructure> {
        match &self.payload {
            Payload::PosetLe { leq } => Ok(Self::digraph(self.n, leq.iter().copied())),
            _ => Err(CoreError::KindMismatch { expected: Kind::PosetLe, found: self.kind() }),
        }
    }

    /// Reinterprets a reflexive digraph as a poset. The result is only valid
    /// when the relation is transitive.
    pub fn digraph_as_poset(&self) -> Result<OrderedStructure> {
        match &self.payload {
            Payload::ReflexiveDigraphLe { rho } => Ok(Self::poset(self.n, rho.iter().copied())),
            _ => Err(CoreError::KindMismatch { expected: Kind::ReflexiveDigraphLe, found: self.kind() }),
        }
    }
}

fn check_pairs_in_range(report: &mut ValidationReport, pairs: &BTreeSet<Pair>, n: usize) {
    for &(x, y) in pairs {
        if x >= n || y >= n {
            report.push("vertex-range", format!("pair ({x},{y})"));
        }
    }
}

fn check_reflexive(report: &mut ValidationReport, pairs: &BTreeSet<Pair>, n: usize) {
    for x in 0..n {
        if !pairs.contains(&(x, x)) {
            report.push("reflexivity", format!("missing ({x},{x})"));
        }
    }
}

fn check_linear_extension(report: &mut ValidationReport, pairs: &BTreeSet<Pair>) {
    for &(x, y) in pairs {
        if x > y {
            report.push("linear-extension", format!("({x},{y}) goes against the order"));
        }
    }
}

/// Checks that `positions` is strictly increasing and below `n`.
pub fn check_positions(positions: &[usize], n: usize) -> Result<()> {
    if let Some(&p) = positions.iter().find(|&&p| p >= n) {
        return Err(CoreError::OutOfRange { position: p, n });
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::NotIncreasing(positions.to_vec()));
    }
    Ok(())
}

//! JSON documents for structures.
//!
//! A structure is an object `{"kind": ..., "n": ..., <kind-specific arrays>}`.
//! Edge and tuple sets are written as sorted arrays of arrays. Inputs may
//! carry `"indexing": 1` to give vertex indices starting at 1; they are
//! shifted to 0-based on load.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{CoreError, Result};
use crate::rational::Rational;
use crate::structures::{OrderedStructure, Pair, Payload, Tuple};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum StructureDoc {
    Chain { n: usize },
    OrderedGraph { n: usize, edges: Vec<[usize; 2]> },
    Hypergraph { n: usize, arities: Vec<usize>, families: Vec<Vec<Tuple>> },
    ReflexiveDigraphLe { n: usize, rho: Vec<[usize; 2]> },
    Tournament { n: usize, arcs: Vec<[usize; 2]> },
    PosetLe { n: usize, leq: Vec<[usize; 2]> },
    OrderedMetric { n: usize, d: Vec<Vec<Rational>> },
    Relational { n: usize, arities: Vec<usize>, relations: Vec<Vec<Tuple>> },
}

fn pairs_out(set: &BTreeSet<Pair>) -> Vec<[usize; 2]> {
    set.iter().map(|&(x, y)| [x, y]).collect()
}

fn pairs_in(v: Vec<[usize; 2]>) -> impl Iterator<Item = Pair> {
    v.into_iter().map(|[x, y]| (x, y))
}

fn families_out(fams: &[BTreeSet<Tuple>]) -> Vec<Vec<Tuple>> {
    fams.iter().map(|f| f.iter().cloned().collect()).collect()
}

impl From<&OrderedStructure> for StructureDoc {
    fn from(s: &OrderedStructure) -> Self {
        let n = s.n();
        match s.payload() {
            Payload::Chain => StructureDoc::Chain { n },
            Payload::OrderedGraph { edges } => StructureDoc::OrderedGraph { n, edges: pairs_out(edges) },
            Payload::Hypergraph { arities, families } => StructureDoc::Hypergraph {
                n,
                arities: arities.clone(),
                families: families_out(families),
            },
            Payload::ReflexiveDigraphLe { rho } => StructureDoc::ReflexiveDigraphLe { n, rho: pairs_out(rho) },
            Payload::Tournament { arcs } => StructureDoc::Tournament { n, arcs: pairs_out(arcs) },
            Payload::PosetLe { leq } => StructureDoc::PosetLe { n, leq: pairs_out(leq) },
            Payload::OrderedMetric { d } => StructureDoc::OrderedMetric { n, d: d.clone() },
            Payload::Relational { arities, relations } => StructureDoc::Relational {
                n,
                arities: arities.clone(),
                relations: families_out(relations),
            },
        }
    }
}

impl TryFrom<StructureDoc> for OrderedStructure {
    type Error = CoreError;

    fn try_from(doc: StructureDoc) -> Result<Self> {
        Ok(match doc {
            StructureDoc::Chain { n } => OrderedStructure::chain(n),
            StructureDoc::OrderedGraph { n, edges } => OrderedStructure::graph(n, pairs_in(edges)),
            StructureDoc::Hypergraph { n, arities, families } => {
                OrderedStructure::hypergraph(n, arities, families)
            }
            StructureDoc::ReflexiveDigraphLe { n, rho } => OrderedStructure::digraph(n, pairs_in(rho)),
            StructureDoc::Tournament { n, arcs } => OrderedStructure::tournament(n, pairs_in(arcs)),
            StructureDoc::PosetLe { n, leq } => OrderedStructure::poset(n, pairs_in(leq)),
            StructureDoc::OrderedMetric { n, d } => {
                if d.len() != n {
                    return Err(CoreError::Malformed(format!(
                        "metric declares n = {n} but has {} rows",
                        d.len()
                    )));
                }
                OrderedStructure::metric(d)
            }
            StructureDoc::Relational { n, arities, relations } => {
                OrderedStructure::relational(n, arities, relations)
            }
        })
    }
}

impl Serialize for OrderedStructure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StructureDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrderedStructure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = StructureDoc::deserialize(deserializer)?;
        OrderedStructure::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// Index base of incoming vertex indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Indexing {
    #[default]
    Zero,
    One,
}

impl Indexing {
    pub fn from_base(base: u64) -> Result<Self> {
        match base {
            0 => Ok(Indexing::Zero),
            1 => Ok(Indexing::One),
            other => Err(CoreError::Malformed(format!("indexing must be 0 or 1, got {other}"))),
        }
    }

    /// Shifts a list of indices to 0-based.
    pub fn normalize(self, indices: &[usize]) -> Result<Vec<usize>> {
        match self {
            Indexing::Zero => Ok(indices.to_vec()),
            Indexing::One => indices
                .iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| CoreError::Malformed("index 0 under 1-based indexing".into()))
                })
                .collect(),
        }
    }
}

/// Parses one structure. An `"indexing"` field in the object overrides
/// `default_indexing`.
pub fn structure_from_value(mut value: Value, default_indexing: Indexing) -> Result<OrderedStructure> {
    let indexing = match value.as_object_mut().and_then(|o| o.remove("indexing")) {
        Some(v) => Indexing::from_base(
            v.as_u64().ok_or_else(|| CoreError::Malformed("indexing must be an integer".into()))?,
        )?,
        None => default_indexing,
    };
    let s: OrderedStructure = serde_json::from_value(value).map_err(|e| CoreError::Malformed(e.to_string()))?;
    match indexing {
        Indexing::Zero => Ok(s),
        Indexing::One => shift_down(s),
    }
}

/// Parses either a single structure or an array of structures.
pub fn structures_from_value(value: Value, default_indexing: Indexing) -> Result<Vec<OrderedStructure>> {
    match value {
        Value::Array(items) => items
            .into_iter()
            .map(|v| structure_from_value(v, default_indexing))
            .collect(),
        other => Ok(vec![structure_from_value(other, default_indexing)?]),
    }
}

fn shift_down(s: OrderedStructure) -> Result<OrderedStructure> {
    let n = s.n();
    let down = |v: usize| {
        v.checked_sub(1)
            .ok_or_else(|| CoreError::Malformed("vertex 0 under 1-based indexing".into()))
    };
    let pairs = |set: BTreeSet<Pair>| -> Result<Vec<Pair>> {
        set.into_iter().map(|(x, y)| Ok((down(x)?, down(y)?))).collect()
    };
    let tuples = |fams: Vec<BTreeSet<Tuple>>| -> Result<Vec<Vec<Tuple>>> {
        fams.into_iter()
            .map(|f| f.into_iter().map(|t| t.into_iter().map(down).collect()).collect())
            .collect()
    };
    Ok(match s.into_payload() {
        Payload::Chain => OrderedStructure::chain(n),
        Payload::OrderedMetric { d } => OrderedStructure::metric(d),
        Payload::OrderedGraph { edges } => OrderedStructure::graph(n, pairs(edges)?),
        Payload::ReflexiveDigraphLe { rho } => OrderedStructure::digraph(n, pairs(rho)?),
        Payload::Tournament { arcs } => OrderedStructure::tournament(n, pairs(arcs)?),
        Payload::PosetLe { leq } => OrderedStructure::poset(n, pairs(leq)?),
        Payload::Hypergraph { arities, families } => OrderedStructure::hypergraph(n, arities, tuples(families)?),
        Payload::Relational { arities, relations } => {
            OrderedStructure::relational(n, arities, tuples(relations)?)
        }
    })
}

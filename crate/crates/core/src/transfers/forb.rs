use crate::category::embedding_maps;
use crate::error::Result;
use crate::structures::{OrderedStructure, Payload};

/// Whether every two distinct vertices occur together in some edge, arc or
/// tuple. Metric spaces relate every pair and are always irreducible.
pub fn is_irreducible(s: &OrderedStructure) -> bool {
    let n = s.n();
    let mut together = vec![vec![false; n]; n];
    let mut mark = |vs: &[usize]| {
        for &x in vs {
            for &y in vs {
                if x < n && y < n {
                    together[x][y] = true;
                }
            }
        }
    };
    match s.payload() {
        Payload::Chain => {}
        Payload::OrderedMetric { .. } => return true,
        Payload::OrderedGraph { edges } => edges.iter().for_each(|&(x, y)| mark(&[x, y])),
        Payload::ReflexiveDigraphLe { rho: rel } | Payload::Tournament { arcs: rel } | Payload::PosetLe { leq: rel } => {
            rel.iter().for_each(|&(x, y)| mark(&[x, y]))
        }
        Payload::Hypergraph { families, .. } | Payload::Relational { relations: families, .. } => {
            families.iter().flatten().for_each(|t| mark(t))
        }
    }
    (0..n).all(|x| (x + 1..n).all(|y| together[x][y]))
}

/// Whether no structure of `forbidden` embeds into `a`.
pub fn forb_contains(a: &OrderedStructure, forbidden: &[OrderedStructure]) -> Result<bool> {
    for f in forbidden {
        if !embedding_maps(f, a)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

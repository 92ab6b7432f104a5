//! Reducts, polymers, order sums and signature compression of hypergraphs.
//!
//! Family indices are positions in the hypergraph's arity list.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::structures::{Kind, OrderedStructure, Payload, Tuple};

fn parts_of(h: &OrderedStructure) -> Result<(&[usize], &[BTreeSet<Tuple>])> {
    match h.payload() {
        Payload::Hypergraph { arities, families } => Ok((arities, families)),
        _ => Err(CoreError::KindMismatch { expected: Kind::Hypergraph, found: h.kind() }),
    }
}

fn build(n: usize, arities: Vec<usize>, families: Vec<BTreeSet<Tuple>>) -> OrderedStructure {
    OrderedStructure::from_parts(n, Payload::Hypergraph { arities, families })
}

/// Keeps only the families listed in `keep`, in increasing index order.
pub fn reduct(h: &OrderedStructure, keep: &BTreeSet<usize>) -> Result<OrderedStructure> {
    let (arities, families) = parts_of(h)?;
    if let Some(&i) = keep.iter().find(|&&i| i >= arities.len()) {
        return Err(CoreError::UnknownIndex(i));
    }
    Ok(build(
        h.n(),
        keep.iter().map(|&i| arities[i]).collect(),
        keep.iter().map(|&i| families[i].clone()).collect(),
    ))
}

/// The `g`-polymer of `h0`: family `i` is family `g[i]` of `h0`, declared
/// with arity `arities[i]`.
///
/// A declared arity may differ from the source arity only when the copied
/// family is empty.
pub fn polymer(h0: &OrderedStructure, g: &[usize], arities: &[usize]) -> Result<OrderedStructure> {
    let (src_arities, families) = parts_of(h0)?;
    if g.len() != arities.len() {
        return Err(CoreError::SizeMismatch { expected: arities.len(), found: g.len() });
    }
    if let Some(&j) = g.iter().find(|&&j| j >= src_arities.len()) {
        return Err(CoreError::UnknownIndex(j));
    }
    let hit: BTreeSet<usize> = g.iter().copied().collect();
    if let Some(j) = (0..src_arities.len()).find(|j| !hit.contains(j)) {
        return Err(CoreError::NotSurjective(j));
    }
    for (i, (&j, &r)) in g.iter().zip(arities).enumerate() {
        if r != src_arities[j] && !families[j].is_empty() {
            return Err(CoreError::ArityClash { index: i, declared: r, source_arity: src_arities[j] });
        }
    }
    Ok(build(h0.n(), arities.to_vec(), g.iter().map(|&j| families[j].clone()).collect()))
}

/// Order sum of hypergraphs over one signature: the blocks are laid out left
/// to right in list order.
pub fn disjoint_union(parts: &[OrderedStructure]) -> Result<OrderedStructure> {
    let first = parts.first().ok_or_else(|| CoreError::Malformed("disjoint union of no parts".into()))?;
    let (arities, _) = parts_of(first)?;
    let mut families = vec![BTreeSet::new(); arities.len()];
    let mut offset = 0;
    for part in parts {
        let (a, fams) = parts_of(part)?;
        if a != arities {
            return Err(CoreError::SignatureMismatch(arities.to_vec(), a.to_vec()));
        }
        for (out, fam) in families.iter_mut().zip(fams) {
            out.extend(fam.iter().map(|e| e.iter().map(|&v| v + offset).collect::<Tuple>()));
        }
        offset += part.n();
    }
    Ok(build(offset, arities.to_vec(), families))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompressionResult {
    /// Representatives, increasing; each is the smallest index of its class.
    pub kept: Vec<usize>,
    /// `g[i]` is the representative of `i`.
    pub g: Vec<usize>,
    pub union: OrderedStructure,
    /// The reduct of each part to `kept`.
    pub reducts: Vec<OrderedStructure>,
}

impl CompressionResult {
    /// `g` as positions into `kept`, the form [`polymer`] expects.
    pub fn g_positions(&self) -> Vec<usize> {
        self.g.iter().map(|r| self.kept.binary_search(r).expect("representative is kept")).collect()
    }

    /// Rebuilds every part as the polymer of its reduct.
    pub fn expand(&self) -> Result<Vec<OrderedStructure>> {
        let (arities, _) = parts_of(&self.union)?;
        let g = self.g_positions();
        self.reducts.iter().map(|r| polymer(r, &g, arities)).collect()
    }
}

/// Merges indices whose families coincide in the order sum of `parts`.
pub fn compress_signature(parts: &[OrderedStructure]) -> Result<CompressionResult> {
    let union = disjoint_union(parts)?;
    let (_, families) = parts_of(&union)?;
    let mut kept: Vec<usize> = Vec::new();
    let mut g = Vec::with_capacity(families.len());
    for (i, fam) in families.iter().enumerate() {
        match kept.iter().find(|&&k| &families[k] == fam) {
            Some(&k) => g.push(k),
            None => {
                kept.push(i);
                g.push(i);
            }
        }
    }
    let keep: BTreeSet<usize> = kept.iter().copied().collect();
    let reducts = parts.iter().map(|p| reduct(p, &keep)).collect::<Result<_>>()?;
    Ok(CompressionResult { kept, g, union, reducts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, arities: &[usize], families: &[&[&[usize]]]) -> OrderedStructure {
        OrderedStructure::hypergraph(
            n,
            arities.to_vec(),
            families.iter().map(|f| f.iter().map(|e| e.to_vec()).collect()).collect(),
        )
    }

    #[test]
    fn reduct_extremes() {
        let x = h(3, &[2, 3], &[&[&[0, 1]], &[&[0, 1, 2]]]);
        assert_eq!(reduct(&x, &[0, 1].into()).unwrap(), x);
        assert_eq!(reduct(&x, &BTreeSet::new()).unwrap(), h(3, &[], &[]));
        assert_eq!(reduct(&x, &[1].into()).unwrap(), h(3, &[3], &[&[&[0, 1, 2]]]));
        assert_eq!(reduct(&x, &[2].into()), Err(CoreError::UnknownIndex(2)));
    }

    #[test]
    fn polymer_cases() {
        let x = h(3, &[2], &[&[&[0, 2]]]);
        assert_eq!(polymer(&x, &[0], &[2]).unwrap(), x);
        let doubled = polymer(&x, &[0, 0], &[2, 2]).unwrap();
        assert_eq!(doubled, h(3, &[2, 2], &[&[&[0, 2]], &[&[0, 2]]]));
        let two = h(3, &[2, 1], &[&[], &[]]);
        assert_eq!(polymer(&two, &[0, 0], &[2, 2]), Err(CoreError::NotSurjective(1)));
        assert!(matches!(polymer(&x, &[0], &[3]), Err(CoreError::ArityClash { .. })));
        assert!(polymer(&h(3, &[2], &[&[]]), &[0], &[3]).is_ok());
    }

    #[test]
    fn union_blocks() {
        let a = h(2, &[2], &[&[&[0, 1]]]);
        let b = h(3, &[2], &[&[&[1, 2]]]);
        let u = disjoint_union(&[a.clone(), b]).unwrap();
        assert_eq!(u, h(5, &[2], &[&[&[0, 1], &[3, 4]]]));
        assert_eq!(disjoint_union(&[a.clone(), h(0, &[2], &[&[]])]).unwrap(), a);
        assert!(matches!(disjoint_union(&[a, h(1, &[1], &[&[]])]), Err(CoreError::SignatureMismatch(..))));
    }

    #[test]
    fn compression_merges_equal_families() {
        let part = h(2, &[2, 2], &[&[&[0, 1]], &[&[0, 1]]]);
        let c = compress_signature(&[part.clone(), part.clone()]).unwrap();
        assert_eq!(c.kept, vec![0]);
        assert_eq!(c.g, vec![0, 0]);
        assert_eq!(c.expand().unwrap(), vec![part.clone(), part]);
    }

    #[test]
    fn compression_of_empty_families() {
        let part = h(2, &[3, 4, 5], &[&[], &[], &[]]);
        let c = compress_signature(&[part.clone()]).unwrap();
        assert_eq!(c.kept, vec![0]);
        assert_eq!(c.expand().unwrap(), vec![part]);
    }

    #[test]
    fn compression_keeps_distinct_families() {
        let part = h(3, &[1, 2], &[&[&[0]], &[&[1, 2]]]);
        let c = compress_signature(&[part.clone()]).unwrap();
        assert_eq!(c.g, vec![0, 1]);
        assert_eq!(c.reducts, vec![part]);
    }
}

//! Encoding relational structures with repeated entries as hypergraphs.
//!
//! A relation tuple is split into its type (a total quasiorder on its
//! positions) and its set of distinct entries. The hypergraph has one family
//! per pair (relation index, type).

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::quasiorder::{enumerate_total_quasiorders, mat, tp, tup, TotalQuasiorder};
use crate::error::{CoreError, Result};
use crate::structures::{Kind, OrderedStructure, Payload, Tuple};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EncodingItem {
    pub rel: usize,
    pub sigma: TotalQuasiorder,
}

impl EncodingItem {
    /// Arity of the hyperedge family: the number of classes of `sigma`.
    pub fn arity(&self) -> usize {
        self.sigma.classes()
    }
}

#[derive(Serialize, Deserialize)]
struct ItemDoc {
    rel: usize,
    sigma: String,
}

impl Serialize for EncodingItem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ItemDoc { rel: self.rel, sigma: self.sigma.code() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EncodingItem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = ItemDoc::deserialize(deserializer)?;
        let sigma = TotalQuasiorder::from_code(&doc.sigma).map_err(serde::de::Error::custom)?;
        Ok(EncodingItem { rel: doc.rel, sigma })
    }
}

/// The index family of the encoding, one item per relation and type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EncodingSignature {
    items: Vec<EncodingItem>,
}

impl EncodingSignature {
    /// Items for the relational signature `arities`, grouped by relation and
    /// ordered by quasiorder enumeration order within each relation.
    pub fn for_arities(arities: &[usize], cap: usize) -> Result<Self> {
        let mut items = Vec::new();
        for (rel, &r) in arities.iter().enumerate() {
            for sigma in enumerate_total_quasiorders(r, cap)? {
                items.push(EncodingItem { rel, sigma });
            }
        }
        Ok(EncodingSignature { items })
    }

    pub fn items(&self) -> &[EncodingItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The hypergraph arities s_j.
    pub fn arities(&self) -> Vec<usize> {
        self.items.iter().map(EncodingItem::arity).collect()
    }

    pub fn index_of(&self, rel: usize, sigma: &TotalQuasiorder) -> Option<usize> {
        self.items.iter().position(|it| it.rel == rel && &it.sigma == sigma)
    }

    /// Arities of the relational signature the items were built from.
    pub fn relation_arities(&self) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = Vec::new();
        for it in &self.items {
            match it.rel.cmp(&out.len()) {
                std::cmp::Ordering::Less => {
                    if out[it.rel] != it.sigma.arity() {
                        return Err(CoreError::Malformed(format!(
                            "relation {} appears with arities {} and {}",
                            it.rel,
                            out[it.rel],
                            it.sigma.arity()
                        )));
                    }
                }
                std::cmp::Ordering::Equal => out.push(it.sigma.arity()),
                std::cmp::Ordering::Greater => {
                    return Err(CoreError::Malformed(format!("relation indices skip to {}", it.rel)))
                }
            }
        }
        Ok(out)
    }
}

/// A hypergraph together with the encoding signature labelling its families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodedHypergraph {
    pub signature: EncodingSignature,
    pub hypergraph: OrderedStructure,
}

/// Encodes a relational structure as a hypergraph over its encoding
/// signature.
pub fn dagger(a: &OrderedStructure, cap: usize) -> Result<EncodedHypergraph> {
    let Payload::Relational { arities, relations } = a.payload() else {
        return Err(CoreError::KindMismatch { expected: Kind::Relational, found: a.kind() });
    };
    let signature = EncodingSignature::for_arities(arities, cap)?;
    let mut families: Vec<Vec<Tuple>> = vec![Vec::new(); signature.len()];
    for (rel, tuples) in relations.iter().enumerate() {
        for t in tuples {
            let sigma = tp(t)?;
            let j = signature.index_of(rel, &sigma).ok_or_else(|| {
                CoreError::Malformed(format!("tuple {t:?} has length {} but relation {rel} has arity {}", t.len(), arities[rel]))
            })?;
            families[j].push(mat(t)?);
        }
    }
    let hypergraph = OrderedStructure::hypergraph(a.n(), signature.arities(), families);
    Ok(EncodedHypergraph { signature, hypergraph })
}

/// Decodes a hypergraph over an encoding signature back into a relational
/// structure.
pub fn star(b: &EncodedHypergraph) -> Result<OrderedStructure> {
    let Payload::Hypergraph { arities, families } = b.hypergraph.payload() else {
        return Err(CoreError::KindMismatch { expected: Kind::Hypergraph, found: b.hypergraph.kind() });
    };
    let expected = b.signature.arities();
    if arities != &expected {
        return Err(CoreError::SignatureMismatch(expected, arities.clone()));
    }
    let rel_arities = b.signature.relation_arities()?;
    let mut relations: Vec<BTreeSet<Tuple>> = vec![BTreeSet::new(); rel_arities.len()];
    for (item, fam) in b.signature.items().iter().zip(families) {
        for e in fam {
            if e.len() != item.arity() {
                return Err(CoreError::SizeMismatch { expected: item.arity(), found: e.len() });
            }
            relations[item.rel].insert(tup(&item.sigma, e)?);
        }
    }
    Ok(OrderedStructure::relational(
        b.hypergraph.n(),
        rel_arities,
        relations.into_iter().map(|s| s.into_iter().collect()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfers::DEFAULT_QUASIORDER_CAP;

    fn binary(n: usize, tuples: &[[usize; 2]]) -> OrderedStructure {
        OrderedStructure::relational(n, vec![2], vec![tuples.iter().map(|t| t.to_vec()).collect()])
    }

    fn families(h: &EncodedHypergraph) -> Vec<BTreeSet<Tuple>> {
        match h.hypergraph.payload() {
            Payload::Hypergraph { families, .. } => families.clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn binary_signature() {
        let sig = EncodingSignature::for_arities(&[2], 4).unwrap();
        let codes: Vec<String> = sig.items().iter().map(|it| it.sigma.code()).collect();
        assert_eq!(codes, ["00/0", "01/01", "01/10"]);
        assert_eq!(sig.arities(), vec![1, 2, 2]);
        assert_eq!(sig.relation_arities().unwrap(), vec![2]);
    }

    #[test]
    fn single_increasing_pair() {
        let h = dagger(&binary(2, &[[0, 1]]), DEFAULT_QUASIORDER_CAP).unwrap();
        let expected_sigma = tp(&[0, 1]).unwrap();
        let j = h.signature.index_of(0, &expected_sigma).unwrap();
        for (i, fam) in families(&h).iter().enumerate() {
            if i == j {
                assert_eq!(fam, &BTreeSet::from([vec![0, 1]]));
            } else {
                assert!(fam.is_empty());
            }
        }
    }

    #[test]
    fn loop_becomes_singleton_edge() {
        let h = dagger(&binary(1, &[[0, 0]]), DEFAULT_QUASIORDER_CAP).unwrap();
        let j = h.signature.index_of(0, &tp(&[0, 0]).unwrap()).unwrap();
        assert_eq!(h.signature.items()[j].arity(), 1);
        assert_eq!(families(&h)[j], BTreeSet::from([vec![0]]));
        assert!(h.hypergraph.is_valid());
    }

    #[test]
    fn empty_relations() {
        let a = binary(3, &[]);
        let h = dagger(&a, DEFAULT_QUASIORDER_CAP).unwrap();
        assert!(families(&h).iter().all(BTreeSet::is_empty));
        assert_eq!(star(&h).unwrap(), a);
    }

    #[test]
    fn star_rejects_wrong_edge_size() {
        let signature = EncodingSignature::for_arities(&[2], 4).unwrap();
        let hypergraph = OrderedStructure::hypergraph(2, signature.arities(), vec![vec![vec![0, 1]], vec![], vec![]]);
        let err = star(&EncodedHypergraph { signature, hypergraph }).unwrap_err();
        assert!(matches!(err, CoreError::SizeMismatch { expected: 1, found: 2 }));
    }

    #[test]
    fn arity_cap() {
        let a = OrderedStructure::relational(1, vec![5], vec![vec![]]);
        assert!(matches!(dagger(&a, 4), Err(CoreError::ArityCap { .. })));
    }

    #[test]
    fn signature_serializes_as_items() {
        let sig = EncodingSignature::for_arities(&[1], 4).unwrap();
        let v = serde_json::to_value(&sig).unwrap();
        assert_eq!(v, serde_json::json!([{"rel": 0, "sigma": "0/0"}]));
        let back: EncodingSignature = serde_json::from_value(v).unwrap();
        assert_eq!(back, sig);
    }
}

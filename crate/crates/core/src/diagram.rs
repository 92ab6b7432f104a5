//! Binary diagrams built from hom(B, C), their cocones, the poset closure of
//! a digraph cocone, and the transfer of colorings and witnesses along it.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::canonical::{is_canonical_witness, CanProblem, CanonicalWitness};
use crate::category::{compose_maps, Coloring, Embedding, HomSet, Map};
use crate::error::{CoreError, Result};
use crate::structures::{Kind, OrderedStructure};

/// A bottom object (u, v, i, j): legs i ≠ j (0-based) with e_i∘u = e_j∘v.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BottomNode {
    pub u: Map,
    pub v: Map,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryDiagram {
    #[serde(rename = "n")]
    pub top_count: usize,
    pub bottom: Vec<BottomNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocone {
    pub tip: Arc<OrderedStructure>,
    pub legs: Vec<Embedding>,
}

/// The diagram with one copy of B per embedding B → C, and the cocone
/// formed by those embeddings.
pub fn build_binary_diagram(
    a: &Arc<OrderedStructure>,
    b: &Arc<OrderedStructure>,
    c: &Arc<OrderedStructure>,
) -> Result<(BinaryDiagram, Cocone)> {
    let hom_ab = HomSet::new(a.clone(), b.clone())?;
    if hom_ab.is_empty() {
        return Err(CoreError::EmptyHomSet("hom(A, B)"));
    }
    let hom_bc = HomSet::new(b.clone(), c.clone())?;
    // composite map -> every (leg, u) producing it
    let mut by_composite: BTreeMap<Map, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, e) in hom_bc.maps().iter().enumerate() {
        for (ui, u) in hom_ab.maps().iter().enumerate() {
            by_composite.entry(compose_maps(u, e)).or_default().push((i, ui));
        }
    }
    let mut keyed = Vec::new();
    for pairs in by_composite.values() {
        for &(i, ui) in pairs {
            for &(j, vi) in pairs {
                if i != j {
                    keyed.push((i, j, ui, vi));
                }
            }
        }
    }
    keyed.sort_unstable();
    let bottom = keyed
        .into_iter()
        .map(|(i, j, ui, vi)| BottomNode { u: hom_ab.map(ui).to_vec(), v: hom_ab.map(vi).to_vec(), i, j })
        .collect();
    let diagram = BinaryDiagram { top_count: hom_bc.len(), bottom };
    Ok((diagram, Cocone { tip: c.clone(), legs: hom_bc.embeddings() }))
}

/// Whether legs\[i\]∘u = legs\[j\]∘v at every bottom node.
pub fn check_cocone(d: &BinaryDiagram, c: &Cocone) -> Result<bool> {
    if c.legs.len() != d.top_count {
        return Err(CoreError::SizeMismatch { expected: d.top_count, found: c.legs.len() });
    }
    Ok(d.bottom.iter().all(|node| {
        compose_maps(&node.u, c.legs[node.i].map()) == compose_maps(&node.v, c.legs[node.j].map())
    }))
}

/// The first bottom node at which the cocone fails to commute.
pub fn failing_node<'a>(d: &'a BinaryDiagram, c: &Cocone) -> Option<&'a BottomNode> {
    d.bottom.iter().find(|node| {
        compose_maps(&node.u, c.legs[node.i].map()) != compose_maps(&node.v, c.legs[node.j].map())
    })
}

fn transitive_closure(n: usize, rel: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut m = vec![vec![false; n]; n];
    for &(x, y) in rel {
        m[x][y] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| m[i][j]).collect()
}

/// Restricts a digraph cocone to the union of its leg images, closes the
/// relation transitively and reads the result as a poset cocone over B.
///
/// Fails when the closure is not a poset or when some leg stops being an
/// embedding after the closure added comparabilities between its points.
pub fn pos_closure_cocone(b: &Arc<OrderedStructure>, edig: &Cocone) -> Result<Cocone> {
    b.expect_kind(Kind::PosetLe)?;
    edig.tip.expect_kind(Kind::ReflexiveDigraphLe)?;
    let image: BTreeSet<usize> = edig.legs.iter().flat_map(|e| e.map().iter().copied()).collect();
    let points: Vec<usize> = image.into_iter().collect();
    let restricted = edig.tip.induced(&points)?;
    let closed = transitive_closure(points.len(), restricted.binary_relation().unwrap());
    let tip = OrderedStructure::poset(points.len(), closed);
    if let Some(v) = tip.validate().violations.first() {
        return Err(CoreError::Inconsistency(format!("closure is not a poset ({}): {}", v.axiom, v.detail)));
    }
    let tip = Arc::new(tip);
    let legs = edig
        .legs
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let map: Map = e.map().iter().map(|x| points.binary_search(x).unwrap()).collect();
            Embedding::new(b.clone(), tip.clone(), map).map_err(|_| {
                CoreError::NotAnEmbedding(format!("leg {i} {:?} after closing the relation on {points:?}", e.map()))
            })
        })
        .collect::<Result<_>>()?;
    Ok(Cocone { tip, legs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferredColoring {
    /// Class of each element of hom(A, C): 1 + χ(f_s∘u) when it factors as
    /// e_s∘u, else 0.
    pub labels: Vec<usize>,
    pub coloring: Coloring,
}

/// Moves a coloring χ of hom(A, D) to hom(A, C) through the two cocones.
pub fn transfer_coloring(
    chi: &Coloring,
    hom_ab: &HomSet,
    pos_legs: &[Embedding],
    edig_legs: &[Embedding],
    hom_ad: &HomSet,
    hom_ac: &HomSet,
) -> Result<TransferredColoring> {
    chi.check_len(hom_ad.len())?;
    if pos_legs.len() != edig_legs.len() {
        return Err(CoreError::SizeMismatch { expected: edig_legs.len(), found: pos_legs.len() });
    }
    let mut labels = vec![0; hom_ac.len()];
    let mut source: Vec<Option<(usize, usize)>> = vec![None; hom_ac.len()];
    for (s, (f, e)) in pos_legs.iter().zip(edig_legs).enumerate() {
        for (ui, u) in hom_ab.maps().iter().enumerate() {
            let h = hom_ac
                .position(&compose_maps(u, e.map()))
                .ok_or(CoreError::NotAnEmbedding(format!("leg {s} after u = {u:?}")))?;
            let g = hom_ad
                .position(&compose_maps(u, f.map()))
                .ok_or(CoreError::NotAnEmbedding(format!("closed leg {s} after u = {u:?}")))?;
            let label = chi.color(g) + 1;
            match source[h] {
                Some((s0, u0)) if labels[h] != label => {
                    return Err(CoreError::Inconsistency(format!(
                        "e_{s0}∘{:?} = e_{s}∘{u:?} but their colors differ",
                        hom_ab.map(u0)
                    )))
                }
                Some(_) => {}
                None => {
                    labels[h] = label;
                    source[h] = Some((s, ui));
                }
            }
        }
    }
    let coloring = Coloring::from_labels(&labels);
    Ok(TransferredColoring { labels, coloring })
}

/// Replaces the leg e_ℓ of a witness over C by the closed leg f_ℓ.
pub fn transfer_witness(wit: &CanonicalWitness, edig: &Cocone, pos: &Cocone) -> Result<CanonicalWitness> {
    let l = edig
        .legs
        .iter()
        .position(|e| e.map() == wit.w.map())
        .ok_or_else(|| CoreError::Malformed(format!("{:?} is not a leg of the cocone", wit.w.map())))?;
    Ok(CanonicalWitness { w: pos.legs[l].clone(), positions: wit.positions.clone() })
}

/// Posets A, B and a digraph tip C, with everything needed to move
/// witnesses from hom(A, C) back to the closed poset tip D.
pub struct PosTransfer {
    pub a: Arc<OrderedStructure>,
    pub b: Arc<OrderedStructure>,
    pub diagram: BinaryDiagram,
    pub edig: Cocone,
    pub pos: Cocone,
    pub hom_ab: HomSet,
    pub hom_ad: HomSet,
    digraph_side: CanProblem,
}

#[derive(Clone, Debug)]
pub struct TransferOutcome {
    pub chi_prime: TransferredColoring,
    /// Found over C for χ′, then the transferred one over D and its check.
    pub witnesses: Option<(CanonicalWitness, CanonicalWitness, bool)>,
}

impl PosTransfer {
    pub fn new(a: OrderedStructure, b: OrderedStructure, c: OrderedStructure) -> Result<Self> {
        let (a, b, c) = (Arc::new(a), Arc::new(b), Arc::new(c));
        let a_dig = Arc::new(a.poset_as_digraph()?);
        let b_dig = Arc::new(b.poset_as_digraph()?);
        let (diagram, edig) = build_binary_diagram(&a_dig, &b_dig, &c)?;
        let pos = pos_closure_cocone(&b, &edig)?;
        let hom_ab = HomSet::new(a.clone(), b.clone())?;
        let hom_ad = HomSet::new(a.clone(), pos.tip.clone())?;
        let digraph_side = CanProblem::new(a_dig, b_dig, c)?;
        Ok(PosTransfer { a, b, diagram, edig, pos, hom_ab, hom_ad, digraph_side })
    }

    pub fn hom_ac(&self) -> &HomSet {
        &self.digraph_side.hom_ac
    }

    pub fn run(&self, chi: &Coloring) -> Result<TransferOutcome> {
        let chi_prime =
            transfer_coloring(chi, &self.hom_ab, &self.pos.legs, &self.edig.legs, &self.hom_ad, self.hom_ac())?;
        let witnesses = match self.digraph_side.find_witness(&chi_prime.coloring)? {
            None => None,
            Some(found) => {
                let moved = transfer_witness(&found, &self.edig, &self.pos)?;
                let ok = is_canonical_witness(&self.hom_ad, chi, &moved, &self.hom_ab)?;
                Some((found, moved, ok))
            }
        };
        Ok(TransferOutcome { chi_prime, witnesses })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Arc<OrderedStructure> {
        Arc::new(OrderedStructure::chain(n))
    }

    #[test]
    fn single_point_diagram() {
        let (d, c) = build_binary_diagram(&chain(1), &chain(1), &chain(1)).unwrap();
        assert_eq!(d.top_count, 1);
        assert!(d.bottom.is_empty());
        assert!(check_cocone(&d, &c).unwrap());
    }

    #[test]
    fn chain_diagram() {
        let (d, c) = build_binary_diagram(&chain(1), &chain(2), &chain(3)).unwrap();
        assert_eq!(d.top_count, 3);
        assert_eq!(d.bottom.len(), 6);
        assert!(check_cocone(&d, &c).unwrap());
        let mut swapped = c.clone();
        swapped.legs.swap(0, 2);
        assert!(!check_cocone(&d, &swapped).unwrap());
        assert!(failing_node(&d, &swapped).is_some());
    }

    #[test]
    fn closure_of_single_leg() {
        let b = Arc::new(OrderedStructure::poset(2, [(0, 0), (1, 1), (0, 1)]));
        let c = Arc::new(OrderedStructure::digraph(3, [(0, 0), (1, 1), (2, 2), (0, 2)]));
        let (_, edig) = build_binary_diagram(&Arc::new(b.poset_as_digraph().unwrap()), &Arc::new(b.poset_as_digraph().unwrap()), &c).unwrap();
        assert_eq!(edig.legs.len(), 1);
        let pos = pos_closure_cocone(&b, &edig).unwrap();
        assert_eq!(pos.tip.as_ref(), b.as_ref());
        assert_eq!(pos.legs[0].map(), &[0, 1]);
    }

    #[test]
    fn closure_can_break_a_leg() {
        let b = Arc::new(OrderedStructure::antichain(2));
        let c = Arc::new(OrderedStructure::digraph(4, [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 3)]));
        let a = Arc::new(OrderedStructure::discrete_digraph(1));
        let (_, edig) = build_binary_diagram(&a, &Arc::new(b.poset_as_digraph().unwrap()), &c).unwrap();
        let err = pos_closure_cocone(&b, &edig).unwrap_err();
        assert!(matches!(err, CoreError::NotAnEmbedding(ref m) if m.contains("[0, 3]")));
    }

    #[test]
    fn constant_coloring_transfer() {
        let a = OrderedStructure::poset_chain(1);
        let b = OrderedStructure::antichain(2);
        let c = OrderedStructure::digraph(3, [(0, 0), (1, 1), (2, 2), (0, 1)]);
        let t = PosTransfer::new(a, b, c).unwrap();
        let chi = Coloring::constant(t.hom_ad.len());
        let out = t.run(&chi).unwrap();
        assert!(out.chi_prime.coloring.num_classes() <= 2);
        let (_, moved, ok) = out.witnesses.unwrap();
        assert!(moved.positions.is_empty());
        assert!(ok);
    }
}

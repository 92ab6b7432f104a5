//! Exhaustive generators of small structures, in a fixed order.

use std::collections::BTreeSet;

use crate::rational::Rational;
use crate::structures::{OrderedStructure, Pair, Tuple};

fn upper_pairs(n: usize) -> Vec<Pair> {
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
}

fn subsets_of<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    assert!(items.len() < 64, "too many items to enumerate subsets");
    (0u64..1 << items.len())
        .map(move |mask| items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, t)| t.clone()).collect())
}

/// All ordered graphs on `n` vertices.
pub fn graphs(n: usize) -> Vec<OrderedStructure> {
    subsets_of(&upper_pairs(n)).map(|edges| OrderedStructure::graph(n, edges)).collect()
}

/// All reflexive digraphs on `n` vertices whose arcs go up the order.
pub fn digraphs(n: usize) -> Vec<OrderedStructure> {
    let loops: Vec<Pair> = (0..n).map(|x| (x, x)).collect();
    subsets_of(&upper_pairs(n))
        .map(|arcs| OrderedStructure::digraph(n, loops.iter().copied().chain(arcs)))
        .collect()
}

/// All tournaments on `n` vertices; a set bit reverses the arc.
pub fn tournaments(n: usize) -> Vec<OrderedStructure> {
    let pairs = upper_pairs(n);
    subsets_of(&pairs)
        .map(|flipped| {
            let flipped: BTreeSet<Pair> = flipped.into_iter().collect();
            OrderedStructure::tournament(
                n,
                pairs.iter().map(|&(x, y)| if flipped.contains(&(x, y)) { (y, x) } else { (x, y) }),
            )
        })
        .collect()
}

/// All posets on `n` vertices for which the index order is a linear
/// extension. Vertex `n - 1` is added on top of a poset on `n - 1` vertices
/// with an arbitrary down-closed set below it.
pub fn posets(n: usize) -> Vec<OrderedStructure> {
    let mut level: Vec<BTreeSet<Pair>> = vec![BTreeSet::new()];
    for m in 0..n {
        let mut next = Vec::new();
        for leq in &level {
            let vertices: Vec<usize> = (0..m).collect();
            for below in subsets_of(&vertices) {
                let below: BTreeSet<usize> = below.into_iter().collect();
                let closed = below.iter().all(|&y| leq.iter().all(|&(x, z)| z != y || below.contains(&x)));
                if !closed {
                    continue;
                }
                let mut extended = leq.clone();
                extended.insert((m, m));
                extended.extend(below.iter().map(|&x| (x, m)));
                next.push(extended);
            }
        }
        level = next;
    }
    level.into_iter().map(|leq| OrderedStructure::poset(n, leq)).collect()
}

/// All structures with one binary relation on `n` vertices.
pub fn binary_structures(n: usize) -> Vec<OrderedStructure> {
    let cells: Vec<Tuple> = (0..n).flat_map(|x| (0..n).map(move |y| vec![x, y])).collect();
    subsets_of(&cells).map(|rel| OrderedStructure::relational(n, vec![2], vec![rel])).collect()
}

/// All hypergraphs on `n` vertices with the given arities.
pub fn hypergraphs(n: usize, arities: &[usize]) -> Vec<OrderedStructure> {
    let edge_lists: Vec<Vec<Tuple>> = arities
        .iter()
        .map(|&r| {
            let mut out = Vec::new();
            crate::category::for_each_subset(n, r, &mut |s| out.push(s.to_vec()));
            out
        })
        .collect();
    let mut families: Vec<Vec<Vec<Tuple>>> = vec![Vec::new()];
    for edges in &edge_lists {
        let choices: Vec<Vec<Tuple>> = subsets_of(edges).collect();
        families = families
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    families.into_iter().map(|f| OrderedStructure::hypergraph(n, arities.to_vec(), f)).collect()
}

/// All metric spaces on `n` points with distances in `scale` (which must
/// contain 0).
pub fn metric_spaces(n: usize, scale: &[Rational]) -> Vec<OrderedStructure> {
    let values: Vec<Rational> = scale.iter().copied().filter(Rational::is_positive).collect();
    let pairs = upper_pairs(n);
    let mut out = Vec::new();
    let mut choice = vec![0usize; pairs.len()];
    if !pairs.is_empty() && values.is_empty() {
        return out;
    }
    loop {
        let mut d = vec![vec![Rational::ZERO; n]; n];
        for (&(x, y), &c) in pairs.iter().zip(&choice) {
            d[x][y] = values[c];
            d[y][x] = values[c];
        }
        let m = OrderedStructure::metric(d);
        if m.is_valid() {
            out.push(m);
        }
        // odometer, last pair fastest
        let mut i = pairs.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < values.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::structures::{Kind, OrderedStructure, Payload};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DigraphDirection {
    ToDigraph,
    ToGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TournamentDirection {
    ToTournament,
    ToGraph,
}

/// Graphs and reflexive digraphs with a linear extension: an edge `{x, y}`
/// with `x < y` becomes the arc `(x, y)`, and every vertex gets a loop.
/// Both functors act as the identity on embedding maps.
pub fn graph_digraph_iso(direction: DigraphDirection, s: &OrderedStructure) -> Result<OrderedStructure> {
    let n = s.n();
    match direction {
        DigraphDirection::ToDigraph => {
            s.expect_kind(Kind::OrderedGraph)?;
            let Payload::OrderedGraph { edges } = s.payload() else { unreachable!() };
            let arcs = edges.iter().copied().filter(|&(x, y)| x < y);
            Ok(OrderedStructure::digraph(n, arcs.chain((0..n).map(|x| (x, x)))))
        }
        DigraphDirection::ToGraph => {
            s.expect_kind(Kind::ReflexiveDigraphLe)?;
            let Payload::ReflexiveDigraphLe { rho } = s.payload() else { unreachable!() };
            Ok(OrderedStructure::graph(n, rho.iter().copied().filter(|&(x, y)| x != y)))
        }
    }
}

/// Graphs and tournaments: an edge `{x, y}` with `x < y` becomes `(x, y)`,
/// a non-edge becomes `(y, x)`.
pub fn graph_tournament_iso(direction: TournamentDirection, s: &OrderedStructure) -> Result<OrderedStructure> {
    let n = s.n();
    match direction {
        TournamentDirection::ToTournament => {
            s.expect_kind(Kind::OrderedGraph)?;
            let mut arcs = Vec::new();
            for x in 0..n {
                for y in x + 1..n {
                    arcs.push(if s.has_edge(x, y) { (x, y) } else { (y, x) });
                }
            }
            Ok(OrderedStructure::tournament(n, arcs))
        }
        TournamentDirection::ToGraph => {
            s.expect_kind(Kind::Tournament)?;
            let Payload::Tournament { arcs } = s.payload() else { unreachable!() };
            Ok(OrderedStructure::graph(n, arcs.iter().copied().filter(|&(x, y)| x < y)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::CoreError;
    use crate::structures::OrderedStructure as S;

    #[test]
    fn single_edge_to_digraph() {
        let g = S::graph(2, [(0, 1)]);
        let d = graph_digraph_iso(DigraphDirection::ToDigraph, &g).unwrap();
        assert_eq!(d, S::digraph(2, [(0, 0), (1, 1), (0, 1)]));
        assert!(d.is_valid());
    }

    #[test]
    fn edgeless_to_digraph_has_only_loops() {
        let d = graph_digraph_iso(DigraphDirection::ToDigraph, &S::graph(2, [])).unwrap();
        assert_eq!(d, S::discrete_digraph(2));
    }

    #[test]
    fn tournament_arcs() {
        let t = graph_tournament_iso(TournamentDirection::ToTournament, &S::graph(2, [(0, 1)])).unwrap();
        assert_eq!(t, S::tournament(2, [(0, 1)]));
        let t = graph_tournament_iso(TournamentDirection::ToTournament, &S::graph(2, [])).unwrap();
        assert_eq!(t, S::tournament(2, [(1, 0)]));
        assert!(t.is_valid());
    }

    #[test]
    fn wrong_kind() {
        let err = graph_digraph_iso(DigraphDirection::ToGraph, &S::graph(1, [])).unwrap_err();
        assert!(matches!(err, CoreError::KindMismatch { expected: Kind::ReflexiveDigraphLe, .. }));
        assert!(graph_tournament_iso(TournamentDirection::ToTournament, &S::chain(2)).is_err());
    }
}

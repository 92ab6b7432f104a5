//! Structure-to-structure translations: the graph/digraph and
//! graph/tournament isomorphisms, the relational/hypergraph encoding,
//! hypergraph reducts, polymers and signature compression, irreducibility
//! and forbidden-substructure classes.

mod encoding;
mod forb;
mod functors;
mod hypergraphs;
mod quasiorder;

pub use encoding::{dagger, star, EncodedHypergraph, EncodingItem, EncodingSignature};
pub use forb::{forb_contains, is_irreducible};
pub use functors::{graph_digraph_iso, graph_tournament_iso, DigraphDirection, TournamentDirection};
pub use hypergraphs::{compress_signature, disjoint_union, polymer, reduct, CompressionResult};
pub use quasiorder::{
    enumerate_total_quasiorders, mat, tp, tup, TotalQuasiorder, DEFAULT_QUASIORDER_CAP,
};

//! Finite canonical Ramsey toolkit for linearly ordered structures.

pub mod canonical;
pub mod category;
pub mod diagram;
pub mod error;
pub mod generate;
pub mod io;
pub mod preadjunction;
pub mod rational;
pub mod structures;
pub mod sweeps;
pub mod transfers;

pub use category::{
    bell, compose, embedding_maps, enumerate_colorings, enumerate_embeddings, is_embedding, Coloring, Embedding,
    HomSet, Map,
};
pub use error::{CoreError, Result};
pub use rational::Rational;
pub use structures::{Kind, OrderedStructure, Payload};

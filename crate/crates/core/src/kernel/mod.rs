//! Exact scalar arithmetic and sparse linear combinations over tensor words.
//!
//! Every other module computes by rewriting [`Element`]s: finite maps from
//! basis keys (words, pairs of words, cotensor words, ...) to [`Scalar`]s.
//! All values are immutable after construction and `Send + Sync`.

mod element;
pub mod matrix;
mod scalar;

pub use element::{
    apply_local, Alphabet, AlphabetId, Element, Letter, LocalMap, Render, Word, WordPair,
    WordTensor,
};
pub use matrix::Matrix;
pub use scalar::Scalar;

//! Exact computation in cofree Hopf algebras on Hopf bimodule algebras over
//! abelian group algebras.
//!
//! The crate is layered bottom-up:
//!
//! - [`kernel`]: Laurent-polynomial scalars and sparse linear combinations.
//! - [`braid`]: permutations, reduced words, braid lifts and the Yang-Baxter check.
//! - [`qalg`]: braided algebras and the quantum quasi-shuffle algebra.
//! - [`grouphopf`]: abelian group algebras and Yetter-Drinfeld modules over them.
//! - [`cotensor`]: the cotensor coalgebra of `M = V ⊗ H`, its star product,
//!   the Radford projection and the bosonization isomorphism.
//! - [`rotabaxter`]: weight-1 Rota-Baxter operators on all of the above.
//! - [`presets`]: the universal Clifford algebra and universal quantum group.

pub mod braid;
pub mod cotensor;
mod error;
pub mod grouphopf;
pub mod kernel;
pub mod presets;
pub mod qalg;
pub mod rotabaxter;

pub use error::{Counterexample, Error, Verdict};

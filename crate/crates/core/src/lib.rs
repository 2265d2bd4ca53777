//! Priority channel systems: fifo machines whose messages carry priorities,
//! where a message may supersede lower-or-equal priority messages ahead of it.
//!
//! The crate covers the priority embedding and its decision procedure
//! ([`order`]), the machine model and its step semantics ([`pcs`]),
//! backward coverability and tree-based decision procedures ([`verify`]),
//! ordinal terms with Hardy evaluation ([`ordinals`]), proper codes and
//! bounded-depth trees ([`encodings`]), and gadget constructions
//! ([`gadgets`]).

pub mod automata;
pub mod encodings;
pub mod gadgets;
pub mod order;
pub mod ordinals;
pub mod pcs;
pub mod verify;
pub mod word;

pub use word::{Letter, Word, WordError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/embedding.md")]
    mod embedding {}
    #[doc = include_str!("../../../book/src/machines.md")]
    mod machines {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/ordinals.md")]
    mod ordinals {}
    #[doc = include_str!("../../../book/src/gadgets.md")]
    mod gadgets {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

//! Programmatic PCS constructions: Hardy-step gadgets, weak Hardy computers,
//! the Turing-machine reduction, and translations from channel systems.

mod builder;
mod hardy;
mod lang;
mod reduction;
mod translate;

pub use builder::{rwb, Builder, MetaMode, Step};
pub use hardy::{
    build_s1, build_s2, build_s3, build_s4, build_weak_hardy, hardy_config, read_hardy_config, Direction, C,
    HARDY_CHANNELS, O, T,
};
pub use lang::Lang;
pub use reduction::{block_of, build_reduction, Move, Reduction, ReductionOptions, TinyTm, TmOutcome, TmRule};
pub use translate::{
    build_strict_reliable_sim, translate_lcs, ChannelSystem, CsConfig, CsOp, CsRule, Encoding, Flavor, SourceSemantics,
    Translation,
};

use thiserror::Error;

use crate::encodings::EncodingError;
use crate::pcs::{Pcs, PcsError};
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Pcs(#[from] PcsError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error("cannot parse language {text:?}: {reason}")]
    Syntax { text: String, reason: String },
    #[error("letter {letter} exceeds level {level}")]
    LetterOutOfRange { letter: Letter, level: Letter },
    #[error("invalid Turing machine: {0}")]
    Tm(String),
    #[error("invalid channel system: {0}")]
    Source(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
}

/// A generated machine with its entry and exit states.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub pcs: Pcs,
    pub entry: String,
    pub exit: String,
}

//! Function-correcting codes over finite fields.
//!
//! A systematic encoder `u -> (u, p(u))` is an (f, t)-FCC when messages with
//! different values of `f` are mapped at least `2t + 1` apart. This crate
//! builds such encoders (Reed-Solomon, shortened binary BCH, the OR scheme),
//! checks the distance condition, decodes function values, evaluates the
//! redundancy bounds, and finds the exact optimal redundancy of small
//! functions by exhaustive search.

pub mod bounds;
pub mod channel;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod fcc;
pub mod formats;
pub mod gf;
pub mod grid;
pub mod message;
pub mod search;

pub use codes::{CodeSummary, GeneratorMatrix, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use fcc::{
    builtin_function, fcc_decode, find_critical_pair, verify_fcc, DecodeMode, DecodeOutcome,
    Decoder, FccScheme, FunctionTable, VerificationResult,
};
pub use gf::{Elem, Field, Polynomial};
pub use search::{exact_redundancy, RedundancySearchResult};

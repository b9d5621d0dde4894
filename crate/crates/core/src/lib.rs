//! Correspondence compiler for Sahlqvist modal reduction principles (MRPs).
//!
//! An MRP is an inequality `s(p) <= t(p)` where both sides are chains of unary
//! boxes and diamonds applied to a single proposition letter. This crate
//! classifies such inequalities, computes their relation-algebra correspondents
//! in three semantic settings, and certifies every emitted correspondent
//! against brute-force validity oracles on finite frames:
//!
//! * [`kripke`] — finite Kripke frames; correspondents are `KRel` term
//!   inequalities over `Δ`, relation symbols, composition `∘` and the
//!   pseudo-composition `⋆`;
//! * [`polarity`] — finite polarity-based frames (enriched formal contexts);
//!   correspondents are sorted `PRel` term inequalities over `I`, `J`,
//!   relation symbols, the `I`-mediated composition `;_I` and the non-mediated
//!   composition `;`;
//! * [`mv`] — many-valued polarity-based frames over a finite Heyting algebra
//!   ([`heyting`]); the same `PRel` inequalities are reinterpreted there.
//!
//! The [`verify`] module runs oracle-vs-correspondent equivalence campaigns,
//! the lifting transfer checks between the Kripke and polarity settings, and a
//! set of pinned counterexample regressions.

pub mod error;
pub mod frame_io;
pub mod heyting;
pub mod kripke;
pub mod mrp;
pub mod mv;
pub mod polarity;
pub mod term;
pub mod verify;

pub use error::{EvalError, LiftError, ParseError, ShapeError, TermError};
pub use heyting::HeytingAlgebra;
pub use kripke::{BinRel, KripkeFrame};
pub use mrp::{Mrp, ModKind, ModToken, ModalChain, PureInequality, Shape, ShapeDecomposition, ShapeTag, Signature};
pub use mv::{MvConcept, MvPolarityFrame, MvRel};
pub use polarity::{Concept, Polarity, PolarityFrame, TypedRel};
pub use term::{KRelTerm, PRelTerm, RelSymbol, Semantics, Sort, TermInequality};

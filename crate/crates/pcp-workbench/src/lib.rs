//! A workbench for word problems around the Post correspondence problem.
//!
//! The crate makes a chain of reductions executable at desk scale:
//! deterministic Turing machines compile to semi-Thue systems whose circular
//! derivations encode halting ([`tm2st`]), those systems compile to
//! conjugate-PCP instances ([`st2cpcp`]), bounded solvers and verifiers
//! handle conjugate and permutational PCPs ([`cpcp`]), and a bi-infinite
//! variant with shift-tolerant equality lives in [`zpcp`]. [`wordcore`] and
//! [`rewriting`] provide the underlying words, morphisms, and rewriting
//! searches; [`formats`] the textual file formats; [`samples`] small
//! ready-made fixtures.

pub mod cpcp;
pub mod formats;
pub mod machine;
pub mod rewriting;
pub mod samples;
pub mod st2cpcp;
pub mod tm2st;
pub mod wordcore;
pub mod zpcp;

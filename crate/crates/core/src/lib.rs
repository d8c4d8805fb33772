//! Identity edge colorings of complete bipartite graphs `K_{s,t}`.
//!
//! A c-edge-coloring of `K_{s,t}` is a `t x s` matrix over `0..c` ([`matrix`]).
//! [`decide`] answers whether an identity coloring exists, [`construct`]
//! builds one, [`autocheck`] verifies a given matrix by exhaustive
//! automorphism search, and [`oracle`] provides brute-force ground truth for
//! small cases. The same machinery yields the distinguishing number of the
//! rook's graph `K_s □ K_t`.

pub mod autocheck;
pub mod cli;
pub mod construct;
pub mod count;
pub mod decide;
pub mod matrix;
pub mod oracle;

pub use autocheck::{analyze, is_identity_coloring, AutoReport, Automorphism};
pub use construct::identity_coloring;
pub use decide::{distinguishing_number, has_identity_coloring, Verdict};
pub use matrix::ColorMatrix;

//! Aperiodic tile sets from degree-0 coarse homology over Z_p.
//!
//! The pipeline runs on Cayley graphs of self-similar groups (the first
//! Grigorchuk group and the Fabrykowski–Gupta group are built in):
//!
//! 1. [`cayley::build_ball`] enumerates a ball with exact deduplication.
//! 2. [`solver::solve_on_ball`] finds a 1-chain `ψ` with `∂ψ = 1` away from
//!    the sphere, using the spanning-tree/ray construction.
//! 3. [`tiles::decorate`] turns `ψ` into a finite alphabet of tiles whose
//!    faces carry `ψ(e)` bumps or matching dents.
//! 4. [`quotient::aperiodicity_certificate`] checks that `p` divides no
//!    level-quotient order, so no periodic tiling can exist on those
//!    quotients: on a closed graph `Σ_v (∂ψ)(v) = 0`, while the all-ones
//!    chain sums to `|V|`.

pub mod automaton;
pub mod cayley;
pub mod chain;
pub mod error;
pub mod export;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod perm;
pub mod quotient;
pub mod solver;
pub mod tiles;

pub use automaton::{parse_automaton, AutomatonSpec, GroupWord, Preset};
pub use cayley::{build_ball, CayleyBall};
pub use chain::{boundary, residual, Chain0, Chain1, Modulus};
pub use error::{Error, Result};
pub use graph::{Edge, Genset, ToyGraph};
pub use oracle::oracle_solve_finite;
pub use perm::Perm;
pub use solver::{solve_on_ball, spanning_tree, EdgeClass, SpanningTree};

//! The root game: a combinatorial test for vanishing of Schubert intersection
//! numbers and branching coefficients, with a search solver and an exact
//! cohomology oracle to check it against.

pub mod embedding;
pub mod game;
pub mod oracle;
pub mod root_system;
pub mod rootset;
pub mod solver;
pub mod sweep;
pub mod weyl;

pub use root_system::{Family, Root, RootId, RootSystem, RootSystemError, SimpleType, Square};
pub use rootset::RootSet;
pub use weyl::{FactorElement, SignedRoot, WeylElement, WeylError, WeylGroup};
pub use embedding::{Atom, Embedding, EmbeddingError, InjectivityWitness};
pub use game::{GameError, Mode, Position, PositionRecord, Status, Step};
pub use solver::{replay, solve, solve_position, SolverConfig, SplittingPolicy, Verdict, VerdictKind};

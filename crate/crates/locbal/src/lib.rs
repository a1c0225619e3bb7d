//! Simultaneous locally balanced 2-partitions of forest pairs.
//!
//! Given two forests over one shared vertex set, [`solve`] splits the
//! vertices into two parts so that in *both* forests, every vertex sees the
//! two parts in near-equal numbers among its neighbors: the difference
//! never exceeds 2. The constant is tight; [`oracle::oracle_min_k`] proves
//! it exhaustively on the built-in 5-vertex instance, where no partition
//! achieves 1.
//!
//! ```
//! use locbal::{paper_example, solve, verify, SolveConfig};
//!
//! let pair = paper_example();
//! let solution = solve(&pair, &SolveConfig::default())?;
//! assert!(solution.report().achieved_k <= 2);
//!
//! // Recheck the claim from the raw adjacency and bits alone.
//! let report = verify(&pair, solution.partition())?;
//! assert_eq!(&report, solution.report());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The guide under `book/` walks through the construction: rooting each
//! forest into sibling groups, joining the group families into a bipartite
//! multigraph, and balancing that graph's edges along Euler circuits.

pub mod cli;
pub mod coloring;
pub mod decompose;
pub mod experiment;
pub mod gen;
pub mod graph;
pub mod io;
pub mod multigraph;
pub mod oracle;
pub mod solver;

pub use coloring::{balanced_two_coloring, ColoringError, EdgeColoring};
pub use decompose::{choose_roots, decompose, DecomposeError, RootStrategy, RootedDecomposition};
pub use gen::{gen_forest, paper_example, GenConfig, GenError, GenModel};
pub use graph::{discrepancy, Forest, ForestPair, GraphError, VertexId, VertexPartition};
pub use multigraph::{
    build_aux, AuxBipartiteMultigraph, BipartiteMultigraph, MultigraphError, Side,
};
pub use oracle::{oracle_min_k, OracleError, OracleResult, DEFAULT_ORACLE_LIMIT};
pub use solver::{
    solve, verify, BalanceReport, Certificate, ForestSide, Solution, SolveConfig, SolveError,
};

// The guide's code blocks double as doctests; `cargo test --doc` keeps the
// book and the library in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/forests-and-imbalance.md")]
    pub struct ForestsAndImbalance;
    #[doc = include_str!("../../../book/src/rooted-decomposition.md")]
    pub struct RootedDecompositionChapter;
    #[doc = include_str!("../../../book/src/auxiliary-multigraph.md")]
    pub struct AuxiliaryMultigraph;
    #[doc = include_str!("../../../book/src/balanced-coloring.md")]
    pub struct BalancedColoring;
    #[doc = include_str!("../../../book/src/solving-and-certificates.md")]
    pub struct SolvingAndCertificates;
    #[doc = include_str!("../../../book/src/oracle-and-experiments.md")]
    pub struct OracleAndExperiments;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct CommandLine;
}

//! Exact all-pairs two-terminal reliability for binary-state undirected
//! networks.
//!
//! All `2^m` arc-state vectors are enumerated once by binary addition. Each
//! vector's working subgraph is split into connected groups by a layered
//! search, so every node pair is classified in the same pass. With a common
//! arc probability the per-vector probability depends only on the number of
//! working arcs and is applied from a precomputed table at the end.
//!
//! ```
//! use netrel::graph::{parse_graph, ParseOptions};
//! use netrel::relia::{all_pairs, AllPairsOptions};
//!
//! let g = parse_graph(
//!     "4 5\n1 2\n1 3\n2 3\n2 4\n3 4\n",
//!     ParseOptions { p: Some(0.9), allow_disconnected: false },
//! )?;
//! let r = all_pairs(&g, AllPairsOptions::default())?;
//! assert!((r.reliability(0, 3) - 0.97848).abs() < 1e-9);
//! assert_eq!(r.count(1, 2), 23);
//! # Ok::<(), netrel::Error>(())
//! ```

pub mod cli;
pub mod connect;
pub mod enumerate;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod relia;

pub use error::{Error, Result};
pub use graph::{ArcProbabilities, Graph};
pub use relia::{all_pairs, AllPairsOptions, ReliabilityResult};

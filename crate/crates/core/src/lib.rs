//! Power-law multigraphs with certified-small independent sets, and the two
//! embeddings of arbitrary graphs into (α,β) power-law graphs: one for β<1
//! built on vertex doubling, one for β=1 built on expander walk products.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] and [`io`]: the multigraph type, independence semantics and the
//!   `p plg` edge-list format.
//! * [`model`]: degree counts, totals and interval size/volume brackets.
//! * [`realize`]: greedy clique-cover realization of degree sequences.
//! * [`sublinear`]: the β<1 embedding.
//! * [`beta1`]: expanders, walk products and the β=1 embedding.
//! * [`mis`] and [`verify`]: exact/heuristic solvers and the end-to-end checker.
//!
//! Data-parallel kernels go through [`Exec`]; with the `parallel` feature
//! disabled every mode runs sequentially.

pub mod beta1;
mod bits;
pub mod embed;
mod error;
pub mod graph;
pub mod io;
pub mod json;
pub mod mis;
pub mod model;
mod par;
pub mod realize;
pub mod report;
pub mod sublinear;
pub mod verify;

pub use error::{PlgError, Result};
pub use graph::{MultiGraph, VertexSet};
pub use model::{BoundPair, DegreeInterval, PowerLawParams};
pub use par::Exec;
pub use realize::{CliqueCoverCertificate, DegreeSeq};
pub use report::EmbeddingReport;

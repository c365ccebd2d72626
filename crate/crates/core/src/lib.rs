//! Exact-arithmetic analysis of rigid electrical multiports.
//!
//! The crate implements implicit linear algebra over ℚ on labeled column
//! sets, directed multigraphs with their Kirchhoff spaces, independence
//! oracle matroids with the Edmonds union algorithm, rigidity tests for
//! pairs and families of spaces and matroids, electrical multiports with
//! controlled sources (topological and matroidal rigidity, exact solve,
//! hybrid port representations), and port transformation / minimization.

pub mod colspace;
pub mod graph;
pub mod label;
pub mod matroid;
pub mod multiport;
pub mod netlist;
pub mod portxform;
pub mod ratio;
pub mod report;
pub mod rigidity;

pub use colspace::{affine_matched, affine_skewed, AffineSpace, AssocFamily, VectorSpace};
pub use graph::{Forest, Graph};
pub use label::{Decoration, Label};
pub use matroid::Matroid;
pub use multiport::{DeviceSpec, Multiport};
pub use ratio::Q;

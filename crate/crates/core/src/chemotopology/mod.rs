//! Property vectors to distances, distances to a dendrogram, and the
//! dendrogram's branches to a finite topology on the element set.

mod dendrogram;
mod distance;
mod linkage;
mod topology;

pub use dendrogram::{select_cut, CutSelection, Dendrogram, Merge, Partition};
pub use distance::{distance_matrix, DistanceMatrix, DistanceOutcome, Metric};
pub use linkage::{agglomerative_cluster, Linkage};
pub use topology::{branch_basis, minimal_neighborhoods, Basis, FiniteSpace, SetOperator};

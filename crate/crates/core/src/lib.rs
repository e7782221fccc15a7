//! Odd K3,3 subdivisions ("odd hexes") in internally 4-connected non-planar
//! bipartite graphs, with certificates that can be checked independently.

pub mod connectivity;
pub mod graph;
pub mod path;
pub mod hex;
pub mod planarity;
pub mod cancel;
pub mod seed;
pub mod generators;
pub mod augment;
pub mod oracle;
pub mod improver;
pub mod certificate;
pub mod dot;

//! Slow, independent reference implementations used to cross-check the
//! fast algorithms on small graphs. Only basic graph and path primitives
//! are shared with the rest of the crate.

mod extensions;
mod hexes;
mod sequences;

pub use extensions::{search_extensions_bruteforce, validate_extension, Shape};
pub use hexes::{enumerate_hexes, odd_hex_exists_bruteforce};
pub use sequences::{check_augmenting_sequence, enumerate_augmenting_sequences};

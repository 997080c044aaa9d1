//! Variable words, OVW-trees, bounded-horizon largeness notions and the
//! partition searches built on them.

pub mod bitset;
pub mod cert;
pub mod henson;
pub mod io;
pub mod largeness;
pub mod search;
pub mod space;
pub mod tree;
pub mod word;

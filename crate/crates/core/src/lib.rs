pub mod bitset;
pub mod catalog;
pub mod classify;
pub mod group;
pub mod set;
pub mod structure;
pub mod tpp;

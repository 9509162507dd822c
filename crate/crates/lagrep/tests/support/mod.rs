//! Helpers shared by the integration tests.
pub mod gram_oracles;
pub mod laws;
pub mod words;

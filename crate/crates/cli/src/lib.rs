//! Library surface of the batch front end; the binary is a thin wrapper.

pub mod engine;
pub mod session;
pub mod svg;

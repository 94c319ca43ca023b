//! C ABI for the fanwalk solver.
//!
//! Handles are opaque pointers; every constructor has a matching `_free`.
//! Functions return [`FwStatus`]; on failure the thread-local message from
//! [`fw_last_error`] explains what went wrong. Structured results cross
//! the boundary as JSON strings in the same schemas the CLI writes.

#![warn(unsafe_op_in_unsafe_fn)]

pub mod ffi;

pub use ffi::*;

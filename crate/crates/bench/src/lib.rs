//! Benchmark-only crate; see benches/core_ops.rs.

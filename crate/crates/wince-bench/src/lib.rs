//! Benchmark harness crate; see benches/solver.rs.

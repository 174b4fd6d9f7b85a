//! Criterion benchmarks for `sturm-core`; see `benches/`.

/// Slopes shared by the benchmark groups.
pub const SLOPES: [&str; 3] = ["[0;2,(1)]", "[0;2,(1,2)]", "[0;3,(1,3)]"];

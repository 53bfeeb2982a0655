//! Benchmark fixtures shared by the criterion targets.

use calkit_core::exactcore::{integer, rational};
use calkit_core::ModelParams;

/// Parameter points the benchmarks sweep over.
pub fn fixtures() -> Vec<(&'static str, ModelParams)> {
    vec![
        ("A_N N=2 alpha=2", ModelParams::a_n(2, integer(2)).unwrap()),
        ("A_N N=3 alpha=1/2", ModelParams::a_n(3, rational(1, 2)).unwrap()),
        ("A_N N=4 alpha=7/3", ModelParams::a_n(4, rational(7, 3)).unwrap()),
    ]
}

//! Fixed inputs shared by the benchmarks.

use seaweed_core::exact::{rat, RatMatrix};
use seaweed_core::seaweed::SeaweedSpec;

/// Index-one seaweeds of increasing size, covering both meander shapes.
pub fn index_one_specs() -> Vec<SeaweedSpec> {
    [
        "1|4 / 3|1|1",
        "2|6 / 8",
        "1|1|3 / 5",
        "2|4|4 / 10",
        "1|1|1|2|4 / 9",
    ]
    .iter()
    .map(|s| s.parse().expect("valid spec"))
    .collect()
}

/// Deterministic dense integer matrix with entries in `[-9, 9]`.
pub fn dense_matrix(n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
    for i in 0..n {
        for j in 0..n {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            m.set(i, j, rat((x % 19) as i64 - 9));
        }
    }
    m
}

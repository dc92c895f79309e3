//! Input fixtures shared by the benchmarks.

use q2scaling::RationalMatrix;

/// Deterministic dense integer matrix with entries in `-9..=9`.
pub fn dense(n: usize, seed: u64) -> RationalMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    RationalMatrix::from_integer_rows(&rows).expect("square")
}

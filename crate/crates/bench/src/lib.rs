//! Fixed inputs shared by the benchmarks.

use kuga_core::{Cone, QuadForm};

/// Gram matrices of a few root and shifted lattices, dimensions 2 to 6.
pub fn forms() -> Vec<QuadForm> {
    vec![
        QuadForm::from_i64(&[&[2, -1], &[-1, 2]]),
        QuadForm::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]),
        QuadForm::from_i64(&[
            &[2, -1, 0, 0],
            &[-1, 2, -1, -1],
            &[0, -1, 2, 0],
            &[0, -1, 0, 2],
        ]),
        QuadForm::from_i64(&[
            &[4, 1, 0, 0, 1],
            &[1, 4, 1, 0, 0],
            &[0, 1, 4, 1, 0],
            &[0, 0, 1, 4, 1],
            &[1, 0, 0, 1, 4],
        ]),
        QuadForm::from_i64(&[
            &[2, -1, 0, 0, 0, 0],
            &[-1, 2, -1, 0, 0, 0],
            &[0, -1, 2, -1, 0, -1],
            &[0, 0, -1, 2, -1, 0],
            &[0, 0, 0, -1, 2, 0],
            &[0, 0, -1, 0, 0, 2],
        ]),
    ]
}

/// Simplicial cones of rank 3 with growing index.
pub fn cones() -> Vec<Cone> {
    [
        [[1, 0, 0], [0, 1, 0], [1, 1, 2]],
        [[1, 0, 0], [0, 1, 0], [1, 2, 5]],
        [[1, 0, 0], [0, 1, 0], [3, 4, 11]],
        [[2, 1, 0], [0, 3, 1], [1, 0, 7]],
    ]
    .iter()
    .map(|g| Cone::from_i64(3, &[&g[0], &g[1], &g[2]]).expect("valid cone"))
    .collect()
}

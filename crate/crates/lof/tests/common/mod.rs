//! Seeded random expression generators shared by the integration tests.

use lof::syntax::{ground_pair, Expr};
use rand::Rng;

/// A random ground expression of the primary arithmetic: marks and
/// juxtapositions only.
pub fn ground_pa_expr<R: Rng>(rng: &mut R, depth: u32, max_width: usize) -> Expr {
    if depth == 0 {
        return if rng.gen_bool(0.5) {
            Expr::empty()
        } else {
            Expr::cross(Expr::empty())
        };
    }
    match rng.gen_range(0..10) {
        0..=4 => {
            let width = rng.gen_range(0..=max_width);
            Expr::juxt(
                (0..width)
                    .map(|_| ground_pa_expr(rng, depth - 1, max_width))
                    .collect(),
            )
        }
        5..=8 => Expr::cross(ground_pa_expr(rng, depth - 1, max_width)),
        _ => Expr::empty(),
    }
}

/// A random ground BF expression: marks, imaginary marks, juxtapositions
/// and pair literals with ground primary-arithmetic components.
pub fn ground_bf_expr<R: Rng>(rng: &mut R, depth: u32, max_width: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => Expr::empty(),
            1 => Expr::cross(Expr::empty()),
            2 => Expr::cross_i(Expr::empty(), rng.gen_range(1..=3)),
            _ => ground_pair(rng.gen_range(0..4)),
        };
    }
    match rng.gen_range(0..10) {
        0..=3 => {
            let width = rng.gen_range(0..=max_width);
            Expr::juxt(
                (0..width)
                    .map(|_| ground_bf_expr(rng, depth - 1, max_width))
                    .collect(),
            )
        }
        4..=5 => Expr::cross(ground_bf_expr(rng, depth - 1, max_width)),
        6..=7 => Expr::cross_i(ground_bf_expr(rng, depth - 1, max_width), rng.gen_range(1..=3)),
        8 => Expr::pair(
            ground_pa_expr(rng, depth.min(2), 2),
            ground_pa_expr(rng, depth.min(2), 2),
        ),
        _ => ground_pair(rng.gen_range(0..4)),
    }
}

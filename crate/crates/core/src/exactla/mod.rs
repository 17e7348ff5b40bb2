//! Exact rational arithmetic and dense linear algebra.

mod matrix;
mod rational;

pub use matrix::{det_of, ExactMatrix, RowSpace};
pub use rational::{ParseRationalError, Rational};

/// Rank of a list of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let mut rs = RowSpace::new(first.len());
    for v in vectors {
        rs.insert(v);
    }
    rs.rank()
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let width = a.first().or(b.first()).map_or(0, Vec::len);
    let mut ra = RowSpace::new(width);
    for v in a {
        ra.insert(v);
    }
    let mut rb = RowSpace::new(width);
    for v in b {
        rb.insert(v);
    }
    ra.rank() == rb.rank() && b.iter().all(|v| ra.contains(v))
}

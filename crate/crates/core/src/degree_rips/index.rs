use std::cmp::Ordering;

use crate::error::{domain, Result};

/// Squared pairwise distances of a planar cloud, with the sorted views the
/// bifiltration needs. All comparisons against a scale `s` are done on
/// squared values, `d² < s²`.
#[derive(Debug, Clone)]
pub struct DistanceIndex {
    n: usize,
    sq: Vec<f64>,
    /// Pairs `i < j` sorted by `(d², i, j)`.
    pairs: Vec<(f64, u32, u32)>,
    /// Per point, squared distances to every point (itself included) in
    /// ascending order.
    neighbours: Vec<Vec<f64>>,
}

fn squared_distance(p: &[f64; 2], q: &[f64; 2]) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    dx * dx + dy * dy
}

impl DistanceIndex {
    pub fn new(points: &[[f64; 2]]) -> Result<Self> {
        if points.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) {
            return Err(domain("point coordinates must be finite"));
        }
        let n = points.len();
        if n > u32::MAX as usize {
            return Err(domain("too many points"));
        }
        let mut sq = vec![0.0; n * n];
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let d = squared_distance(&points[i], &points[j]);
                sq[i * n + j] = d;
                sq[j * n + i] = d;
                pairs.push((d, i as u32, j as u32));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let neighbours = (0..n)
            .map(|i| {
                let mut row = sq[i * n..(i + 1) * n].to_vec();
                row.sort_by(f64::total_cmp);
                row
            })
            .collect();
        Ok(DistanceIndex { n, sq, pairs, neighbours })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn sq_dist(&self, i: usize, j: usize) -> f64 {
        self.sq[i * self.n + j]
    }

    pub fn pairs(&self) -> &[(f64, u32, u32)] {
        &self.pairs
    }

    /// Pairs with `d² < s_sq`, in sorted order.
    pub fn pairs_below(&self, s_sq: f64) -> &[(f64, u32, u32)] {
        let end = self.pairs.partition_point(|p| p.0 < s_sq);
        &self.pairs[..end]
    }

    /// Sorted squared distances from point `i`, starting with `0` for itself.
    pub fn neighbour_distances(&self, i: usize) -> &[f64] {
        &self.neighbours[i]
    }

    /// `|B(i, s)|`: points at squared distance `< s_sq`, `i` included.
    pub fn ball_count(&self, i: usize, s_sq: f64) -> usize {
        self.neighbours[i].partition_point(|&d| d < s_sq)
    }

    /// Smallest squared scale strictly above which point `i` has at least
    /// `m` points in its ball: the `m`-th smallest squared distance.
    ///
    /// `None` when `m` exceeds the cloud size; `m = 0` behaves like `m = 1`
    /// since every ball contains its centre.
    pub fn appearance_sq(&self, i: usize, m: usize) -> Option<f64> {
        self.neighbours[i].get(m.max(1) - 1).copied()
    }
}

pub(crate) fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.total_cmp(&b)
}

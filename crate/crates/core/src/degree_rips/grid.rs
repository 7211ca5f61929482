//! Hilbert functions of `H₀` and `H₁` over an `(s, k)` grid.
//!
//! For a fixed threshold `k` the frames form a one-parameter filtration in
//! `s`: a vertex enters once its ball count reaches `m = ⌈k·n⌉`, an edge at
//! the larger of its length and its endpoints' entry scales, a triangle with
//! its last edge. One persistence computation per distinct `m` then yields
//! every cell of that row:
//!
//! ```text
//! h0(s) = #vertices(s) − #merging edges(s)
//! h1(s) = #cycle edges(s) − #paired triangles(s)
//! ```
//!
//! Edge/triangle pairs come from reducing the coboundary matrix in reverse
//! filtration order, skipping edges already used by the union-find merge
//! (they cannot start a cycle). [`hilbert_grid_naive`] builds every frame
//! independently and is kept as the reference for this path.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::frame::{build_frame, min_count};
use super::homology::{homology_ranks, xor_sorted};
use super::index::{cmp_f64, DistanceIndex};
use crate::error::{domain, Result};

/// Ranks over a grid; matrices are indexed `[s index][k index]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HilbertGrid {
    pub s_values: Vec<f64>,
    pub k_values: Vec<f64>,
    pub h0: Vec<Vec<usize>>,
    pub h1: Vec<Vec<usize>>,
    pub vertices: Vec<Vec<usize>>,
}

fn check_axes(s_values: &[f64], k_values: &[f64]) -> Result<()> {
    if s_values.is_empty() || k_values.is_empty() {
        return Err(domain("grid axes must be non-empty"));
    }
    if s_values.windows(2).any(|w| !(w[0] <= w[1])) || k_values.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(domain("grid axes must be sorted ascending"));
    }
    if !(s_values[0] > 0.0) || !s_values[s_values.len() - 1].is_finite() {
        return Err(domain("scales must be positive and finite"));
    }
    if !(k_values[0] >= 0.0 && k_values[k_values.len() - 1] <= 1.0) {
        return Err(domain("thresholds must lie in [0, 1]"));
    }
    Ok(())
}

/// Per-`s` values for one threshold row.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Row {
    vertices: Vec<usize>,
    h0: Vec<usize>,
    h1: Vec<usize>,
}

fn count_below(sorted: &[f64], s_sq: f64) -> usize {
    sorted.partition_point(|&v| v < s_sq)
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

fn threshold_row(index: &DistanceIndex, m: usize, s_values: &[f64]) -> Row {
    let n = index.len();
    let zeros = vec![0; s_values.len()];
    if m > n || n == 0 {
        return Row { vertices: zeros.clone(), h0: zeros.clone(), h1: zeros };
    }
    let s_max = s_values[s_values.len() - 1];
    let cutoff = s_max * s_max;
    let appear: Vec<f64> = (0..n).map(|i| index.appearance_sq(i, m).expect("m ≤ n")).collect();

    let mut vertex_values: Vec<f64> = appear.iter().copied().filter(|&a| a < cutoff).collect();
    vertex_values.sort_by(|a, b| cmp_f64(*a, *b));

    // edges in filtration order
    let mut edges: Vec<(f64, u32, u32)> = index
        .pairs_below(cutoff)
        .iter()
        .map(|&(d, i, j)| (d.max(appear[i as usize]).max(appear[j as usize]), i, j))
        .filter(|e| e.0 < cutoff)
        .collect();
    edges.sort_by(|a, b| cmp_f64(a.0, b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut uf = UnionFind::new(n);
    let merging: Vec<bool> = edges.iter().map(|&(_, i, j)| uf.union(i, j)).collect();

    // triangles keyed by their edge indices, largest first
    let mut adjacency: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for (e, &(_, i, j)) in edges.iter().enumerate() {
        adjacency[i as usize].push((j, e as u32));
        adjacency[j as usize].push((i, e as u32));
    }
    for list in adjacency.iter_mut() {
        list.sort_unstable();
    }
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    for (e, &(_, i, j)) in edges.iter().enumerate() {
        let (ni, nj) = (&adjacency[i as usize], &adjacency[j as usize]);
        let (mut a, mut b) = (ni.partition_point(|x| x.0 <= j), nj.partition_point(|x| x.0 <= j));
        while a < ni.len() && b < nj.len() {
            match ni[a].0.cmp(&nj[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    let mut key = [e as u32, ni[a].1, nj[b].1];
                    key.sort_unstable_by(|x, y| y.cmp(x));
                    triangles.push(key);
                    a += 1;
                    b += 1;
                }
            }
        }
    }
    triangles.sort_unstable();

    let mut coboundary: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
    for (t, tri) in triangles.iter().enumerate() {
        for &e in tri {
            coboundary[e as usize].push(t as u32);
        }
    }

    // cohomology reduction: pivot is the earliest cofacet
    let mut owner: Vec<u32> = vec![u32::MAX; triangles.len()];
    let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
    let mut paired_triangle_values = Vec::new();
    let mut cycle_edge_values = Vec::new();
    let mut merging_edge_values = Vec::new();
    let mut scratch = Vec::new();
    for e in (0..edges.len()).rev() {
        if merging[e] {
            merging_edge_values.push(edges[e].0);
            continue;
        }
        cycle_edge_values.push(edges[e].0);
        let mut col = std::mem::take(&mut coboundary[e]);
        while let Some(&pivot) = col.first() {
            let other = owner[pivot as usize];
            if other == u32::MAX {
                owner[pivot as usize] = e as u32;
                let last_edge = triangles[pivot as usize][0] as usize;
                paired_triangle_values.push(edges[last_edge].0);
                break;
            }
            xor_sorted(&mut col, &reduced[other as usize], &mut scratch);
        }
        reduced[e] = col;
    }
    for v in [&mut paired_triangle_values, &mut cycle_edge_values, &mut merging_edge_values] {
        v.sort_by(|a, b| cmp_f64(*a, *b));
    }

    let mut row = Row {
        vertices: Vec::with_capacity(s_values.len()),
        h0: Vec::with_capacity(s_values.len()),
        h1: Vec::with_capacity(s_values.len()),
    };
    for &s in s_values {
        let s_sq = s * s;
        let v = count_below(&vertex_values, s_sq);
        row.vertices.push(v);
        row.h0.push(v - count_below(&merging_edge_values, s_sq));
        row.h1.push(
            count_below(&cycle_edge_values, s_sq) - count_below(&paired_triangle_values, s_sq),
        );
    }
    row
}

/// Hilbert functions over the grid, one filtration per distinct threshold count.
pub fn hilbert_grid(index: &DistanceIndex, s_values: &[f64], k_values: &[f64]) -> Result<HilbertGrid> {
    check_axes(s_values, k_values)?;
    let n = index.len();
    let counts = k_values.iter().map(|&k| min_count(k, n)).collect::<Result<Vec<_>>>()?;
    let distinct: Vec<usize> = counts.iter().copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let rows: BTreeMap<usize, Row> = distinct
        .par_iter()
        .map(|&m| (m, threshold_row(index, m, s_values)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let pick = |f: &dyn Fn(&Row) -> &Vec<usize>| -> Vec<Vec<usize>> {
        (0..s_values.len())
            .map(|si| counts.iter().map(|m| f(&rows[m])[si]).collect())
            .collect()
    };
    Ok(HilbertGrid {
        s_values: s_values.to_vec(),
        k_values: k_values.to_vec(),
        h0: pick(&|r| &r.h0),
        h1: pick(&|r| &r.h1),
        vertices: pick(&|r| &r.vertices),
    })
}

/// Reference path: every cell gets its own frame and rank computation.
pub fn hilbert_grid_naive(
    index: &DistanceIndex,
    s_values: &[f64],
    k_values: &[f64],
) -> Result<HilbertGrid> {
    check_axes(s_values, k_values)?;
    let cells: Vec<(usize, usize)> = (0..s_values.len())
        .flat_map(|si| (0..k_values.len()).map(move |ki| (si, ki)))
        .collect();
    let results = cells
        .par_iter()
        .map(|&(si, ki)| {
            let frame = build_frame(index, s_values[si], k_values[ki])?;
            let (h0, h1) = homology_ranks(&frame);
            Ok((frame.vertices.len(), h0, h1))
        })
        .collect::<Result<Vec<_>>>()?;
    let nk = k_values.len();
    let take = |f: fn(&(usize, usize, usize)) -> usize| -> Vec<Vec<usize>> {
        results.chunks(nk).map(|row| row.iter().map(f).collect()).collect()
    };
    Ok(HilbertGrid {
        s_values: s_values.to_vec(),
        k_values: k_values.to_vec(),
        h0: take(|r| r.1),
        h1: take(|r| r.2),
        vertices: take(|r| r.0),
    })
}

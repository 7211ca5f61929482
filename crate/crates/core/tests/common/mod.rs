//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dra_core::AnnulusModel;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn reference_models() -> [AnnulusModel; 2] {
    [
        AnnulusModel::new(0.4, 0.5, 0.05).unwrap(),
        AnnulusModel::new(0.4, 0.5, 0.0).unwrap(),
    ]
}

pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![min];
    }
    (0..steps).map(|i| min + (max - min) * i as f64 / (steps - 1) as f64).collect()
}

/// Midpoints of `steps` equal cells covering `[min, max]`.
pub fn cell_centres(min: f64, max: f64, steps: usize) -> Vec<f64> {
    (0..steps).map(|i| min + (max - min) * (i as f64 + 0.5) / steps as f64).collect()
}

/// Points from the weighted annulus by rejection against the density on the
/// bounding square of the outer disc; shares no code with the crate sampler.
pub fn rejection_sample(model: &AnnulusModel, n: usize, seed: u64) -> Vec<[f64; 2]> {
    let (r, q) = (model.inner_radius, model.outer_radius);
    let a = model.inner_mass / (PI * r * r);
    let b = (1.0 - model.inner_mass) / (PI * (q * q - r * r));
    let top = a.max(b);
    let mut g = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = g.gen_range(-q..q);
        let y = g.gen_range(-q..q);
        let d2 = x * x + y * y;
        if d2 >= q * q {
            continue;
        }
        let density = if d2 < r * r { a } else { b };
        if g.gen::<f64>() * top < density {
            out.push([x, y]);
        }
    }
    out
}

/// Monte Carlo area of `B(O, r) ∩ B((c, 0), s)` from `samples` uniform
/// points in the bounding box of the offset disc. Returns `(estimate, σ)`.
pub fn mc_lens_area(r: f64, s: f64, c: f64, samples: usize, seed: u64) -> (f64, f64) {
    let mut g = rng(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let x = c + g.gen_range(-s..s);
        let y = g.gen_range(-s..s);
        if x * x + y * y < r * r && (x - c) * (x - c) + y * y < s * s {
            hits += 1;
        }
    }
    let box_area = 4.0 * s * s;
    let p = hits as f64 / samples as f64;
    (p * box_area, box_area * (p * (1.0 - p) / samples as f64).sqrt())
}

/// Rank over Z/2 of a dense matrix, one `Vec<bool>` per column.
pub fn dense_rank(mut cols: Vec<Vec<bool>>) -> usize {
    let Some(rows) = cols.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for row in 0..rows {
        let Some(p) = (rank..cols.len()).find(|&j| cols[j][row]) else {
            continue;
        };
        cols.swap(rank, p);
        let pivot = cols[rank].clone();
        for j in 0..cols.len() {
            if j != rank && cols[j][row] {
                for (x, &y) in cols[j].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteRanks {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub h0: usize,
    pub h1: usize,
    /// Of the 2-skeleton.
    pub h2: usize,
}

/// Degree-Rips 2-skeleton homology straight from the definitions: a point
/// survives when its open `s`-ball holds at least `k·n` points (compared
/// exactly), simplices are cliques of pairwise distance `< s`.
pub fn brute_force_ranks(points: &[[f64; 2]], s: f64, k: f64) -> BruteRanks {
    let n = points.len();
    let near = |i: usize, j: usize| (points[i][0] - points[j][0]).powi(2) + (points[i][1] - points[j][1]).powi(2) < s * s;
    let need = BigRational::from_float(k).unwrap() * BigRational::from_integer(BigInt::from(n));
    let alive: Vec<usize> = (0..n)
        .filter(|&i| {
            let count = (0..n).filter(|&j| near(i, j)).count();
            BigRational::from_integer(BigInt::from(count)) >= need
        })
        .collect();
    let mut edges = Vec::new();
    for (a, &i) in alive.iter().enumerate() {
        for &j in &alive[a + 1..] {
            if near(i, j) {
                edges.push((i, j));
            }
        }
    }
    let mut triangles = Vec::new();
    for &(i, j) in &edges {
        for &l in &alive {
            if l > j && near(i, l) && near(j, l) {
                triangles.push((i, j, l));
            }
        }
    }
    let vpos = |v: usize| alive.iter().position(|&x| x == v).unwrap();
    let epos = |e: (usize, usize)| edges.iter().position(|&x| x == e).unwrap();
    let d1: Vec<Vec<bool>> = edges
        .iter()
        .map(|&(i, j)| {
            let mut col = vec![false; alive.len()];
            col[vpos(i)] = true;
            col[vpos(j)] = true;
            col
        })
        .collect();
    let d2: Vec<Vec<bool>> = triangles
        .iter()
        .map(|&(i, j, l)| {
            let mut col = vec![false; edges.len()];
            for e in [(i, j), (i, l), (j, l)] {
                col[epos(e)] = true;
            }
            col
        })
        .collect();
    let r1 = dense_rank(d1);
    let r2 = dense_rank(d2);
    BruteRanks {
        vertices: alive.len(),
        edges: edges.len(),
        triangles: triangles.len(),
        h0: alive.len() - r1,
        h1: edges.len() - r1 - r2,
        h2: triangles.len() - r2,
    }
}

pub fn random_cloud(g: &mut ChaCha8Rng, n: usize) -> Vec<[f64; 2]> {
    (0..n).map(|_| [g.gen::<f64>(), g.gen::<f64>()]).collect()
}

pub fn unit_square() -> Vec<[f64; 2]> {
    vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
}

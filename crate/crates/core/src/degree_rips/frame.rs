use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::index::{cmp_f64, DistanceIndex};
use crate::error::{domain, Result};

/// Smallest ball count that passes the normalised threshold `k`, i.e. the
/// least integer `m` with `m ≥ k·n`, decided in exact arithmetic.
pub fn min_count(k: f64, n: usize) -> Result<usize> {
    if !(0.0..=1.0).contains(&k) {
        return Err(domain(format!("threshold k must lie in [0, 1], got {k}")));
    }
    let k = BigRational::from_float(k).ok_or_else(|| domain("threshold k is not finite"))?;
    let need = (k * BigRational::from_integer(BigInt::from(n))).ceil();
    Ok(need.to_integer().to_usize().expect("k·n ≤ n fits in usize"))
}

/// `DR(X)(s, k)`: the Rips 2-skeleton on the points whose open `s`-ball holds
/// at least `k·n` points.
///
/// Simplices are listed in `(scale of appearance, lexicographic)` order
/// within each dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeRipsFrame {
    pub s: f64,
    pub k: f64,
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    pub triangles: Vec<[u32; 3]>,
}

impl DegreeRipsFrame {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

pub fn build_frame(index: &DistanceIndex, s: f64, k: f64) -> Result<DegreeRipsFrame> {
    if !(s > 0.0) {
        return Err(domain(format!("scale must be positive, got {s}")));
    }
    let n = index.len();
    let m = min_count(k, n)?;
    let s_sq = s * s;
    let alive: Vec<bool> = (0..n).map(|i| index.ball_count(i, s_sq) >= m).collect();
    let vertices: Vec<u32> = (0..n as u32).filter(|&i| alive[i as usize]).collect();

    let edges: Vec<(u32, u32)> = index
        .pairs_below(s_sq)
        .iter()
        .filter(|&&(_, i, j)| alive[i as usize] && alive[j as usize])
        .map(|&(_, i, j)| (i, j))
        .collect();

    let mut adjacency = vec![Vec::new(); n];
    for &(i, j) in &edges {
        adjacency[i as usize].push(j);
    }
    for list in adjacency.iter_mut() {
        list.sort_unstable();
    }
    let mut triangles: Vec<(f64, [u32; 3])> = Vec::new();
    for &(i, j) in &edges {
        let (ni, nj) = (&adjacency[i as usize], &adjacency[j as usize]);
        // common neighbours l > j
        let (mut a, mut b) = (ni.partition_point(|&x| x <= j), 0);
        while a < ni.len() && b < nj.len() {
            match ni[a].cmp(&nj[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    let l = ni[a];
                    let (iu, ju, lu) = (i as usize, j as usize, l as usize);
                    let value = index
                        .sq_dist(iu, ju)
                        .max(index.sq_dist(iu, lu))
                        .max(index.sq_dist(ju, lu));
                    triangles.push((value, [i, j, l]));
                    a += 1;
                    b += 1;
                }
            }
        }
    }
    triangles.sort_by(|x, y| cmp_f64(x.0, y.0).then(x.1.cmp(&y.1)));
    Ok(DegreeRipsFrame {
        s,
        k,
        vertices,
        edges,
        triangles: triangles.into_iter().map(|t| t.1).collect(),
    })
}

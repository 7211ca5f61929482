//! Ranks of simplicial boundary matrices over Z/2.

use std::collections::HashMap;

use super::frame::DegreeRipsFrame;

/// Replaces `acc` with the symmetric difference `acc Δ other`. Both inputs
/// are sorted and duplicate-free; so is the result.
pub(crate) fn xor_sorted(acc: &mut Vec<u32>, other: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut a, mut b) = (0, 0);
    while a < acc.len() && b < other.len() {
        match acc[a].cmp(&other[b]) {
            std::cmp::Ordering::Less => {
                scratch.push(acc[a]);
                a += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(other[b]);
                b += 1;
            }
            std::cmp::Ordering::Equal => {
                a += 1;
                b += 1;
            }
        }
    }
    scratch.extend_from_slice(&acc[a..]);
    scratch.extend_from_slice(&other[b..]);
    std::mem::swap(acc, scratch);
}

/// Rank over Z/2 of the matrix whose columns are the given sorted row sets.
///
/// Standard left-to-right column reduction keyed on the largest row index.
pub fn z2_rank<I>(columns: I) -> usize
where
    I: IntoIterator<Item = Vec<u32>>,
{
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut scratch = Vec::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(reduced) => xor_sorted(&mut col, reduced, &mut scratch),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivots.insert(low, col);
            rank += 1;
        }
    }
    rank
}

/// Ranks of `H₀` and `H₁` of a frame with Z/2 coefficients.
pub fn homology_ranks(frame: &DegreeRipsFrame) -> (usize, usize) {
    let mut vertex_pos = HashMap::with_capacity(frame.vertices.len());
    for (pos, &v) in frame.vertices.iter().enumerate() {
        vertex_pos.insert(v, pos as u32);
    }
    let mut edge_pos = HashMap::with_capacity(frame.edges.len());
    for (pos, &(i, j)) in frame.edges.iter().enumerate() {
        edge_pos.insert((i, j), pos as u32);
    }
    let boundary_1 = frame.edges.iter().map(|&(i, j)| {
        let mut col = vec![vertex_pos[&i], vertex_pos[&j]];
        col.sort_unstable();
        col
    });
    let rank_1 = z2_rank(boundary_1);
    let boundary_2 = frame.triangles.iter().map(|&[i, j, l]| {
        let mut col = vec![edge_pos[&(i, j)], edge_pos[&(i, l)], edge_pos[&(j, l)]];
        col.sort_unstable();
        col
    });
    let rank_2 = z2_rank(boundary_2);
    let h0 = frame.vertices.len() - rank_1;
    let h1 = frame.edges.len() - rank_1 - rank_2;
    (h0, h1)
}

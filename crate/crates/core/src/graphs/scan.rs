//! Exploratory scan of colouring numbers of graphs and their
//! complements.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graphs::colouring::colouring_number;
use crate::graphs::{FiniteGraph, GraphError};

/// Index of the unordered pair `(i, j)`, `i < j`, in the fixed edge
/// enumeration used by graph bitmasks.
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn graph_from_mask(n: usize, mask: u64) -> FiniteGraph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask & (1 << pair_index(i, j)) != 0 {
                edges.push((i, j));
            }
        }
    }
    FiniteGraph::new(n, edges).expect("mask edges in range")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(current.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, current, out);
            if k % 2 == 0 {
                current.swap(i, k - 1);
            } else {
                current.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut current, &mut out);
    out
}

/// Least edge bitmask over all relabellings of the graph.
pub fn canonical_mask(n: usize, mask: u64) -> u64 {
    let mut best = u64::MAX;
    for perm in permutations(n) {
        let mut m = 0u64;
        for j in 1..n {
            for i in 0..j {
                if mask & (1 << pair_index(i, j)) != 0 {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    m |= 1 << pair_index(a, b);
                }
            }
        }
        best = best.min(m);
        if best == 0 {
            break;
        }
    }
    best
}

/// Canonical masks of all graphs on `n` vertices up to isomorphism,
/// ascending. Built by extending each smaller representative with a
/// fresh vertex and every possible neighbourhood.
pub fn catalog_up_to_iso(n: usize) -> Result<Vec<u64>, GraphError> {
    if n > 7 {
        return Err(GraphError::TooLarge(format!("catalog for n = {n}")));
    }
    if n == 0 {
        return Ok(vec![0]);
    }
    let mut reps: Vec<u64> = vec![0]; // the single graph on one vertex
    for k in 2..=n {
        let mut next: Vec<u64> = Vec::new();
        for &rep in &reps {
            for nbhd in 0u64..(1 << (k - 1)) {
                let mut mask = rep;
                for i in 0..k - 1 {
                    if nbhd & (1 << i) != 0 {
                        mask |= 1 << pair_index(i, k - 1);
                    }
                }
                let canon = canonical_mask(k, mask);
                if !next.contains(&canon) {
                    next.push(canon);
                }
            }
        }
        next.sort_unstable();
        reps = next;
    }
    Ok(reps)
}

/// One row of the complement scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    /// 1-based row index.
    pub id: usize,
    /// Canonical edge bitmask of the graph.
    pub mask: u64,
    pub col: usize,
    pub col_complement: usize,
}

/// Colouring numbers of every graph on `n ≤ 6` vertices up to
/// isomorphism, or of a seeded random sample for `n ∈ {7, 8}`, paired
/// with the colouring numbers of the complements. No bound is
/// asserted; the table is for inspection.
pub fn complement_scan(n: usize, seed: u64) -> Result<Vec<ScanRow>, GraphError> {
    if n > 8 {
        return Err(GraphError::TooLarge(format!("complement scan for n = {n}")));
    }
    let masks: Vec<u64> = if n <= 6 {
        catalog_up_to_iso(n)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits = n * (n - 1) / 2;
        let sample = if n == 7 { 100 } else { 50 };
        let mut masks: Vec<u64> = (0..sample)
            .map(|_| {
                let mask: u64 = rng.gen::<u64>() & ((1u64 << bits) - 1);
                canonical_mask(n, mask)
            })
            .collect();
        masks.sort_unstable();
        masks.dedup();
        masks
    };
    Ok(masks
        .into_iter()
        .enumerate()
        .map(|(i, mask)| {
            let g = graph_from_mask(n, mask);
            let (col, _) = colouring_number(&g);
            let (col_complement, _) = colouring_number(&g.complement());
            ScanRow {
                id: i + 1,
                mask,
                col,
                col_complement,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts_match_oeis() {
        // Numbers of graphs up to isomorphism: 1, 2, 4, 11, 34, 156.
        assert_eq!(catalog_up_to_iso(1).unwrap().len(), 1);
        assert_eq!(catalog_up_to_iso(2).unwrap().len(), 2);
        assert_eq!(catalog_up_to_iso(3).unwrap().len(), 4);
        assert_eq!(catalog_up_to_iso(4).unwrap().len(), 11);
        assert_eq!(catalog_up_to_iso(5).unwrap().len(), 34);
        assert_eq!(catalog_up_to_iso(6).unwrap().len(), 156);
    }

    #[test]
    fn scan_single_vertex() {
        let rows = complement_scan(1, 0).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].id, rows[0].col, rows[0].col_complement), (1, 1, 1));
    }

    #[test]
    fn scan_two_vertices() {
        let rows = complement_scan(2, 0).unwrap();
        assert_eq!(rows.len(), 2);
        // Non-edge first (mask 0), then the edge.
        assert_eq!((rows[0].col, rows[0].col_complement), (1, 2));
        assert_eq!((rows[1].col, rows[1].col_complement), (2, 1));
    }

    #[test]
    fn scan_rejects_large_n() {
        assert!(matches!(
            complement_scan(9, 0),
            Err(GraphError::TooLarge(_))
        ));
    }

    #[test]
    fn scan_is_deterministic() {
        assert_eq!(complement_scan(7, 5).unwrap(), complement_scan(7, 5).unwrap());
    }
}

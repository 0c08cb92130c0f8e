//! Exhaustive catalogs of small spaces, one representative per
//! isomorphism class, in a fixed order.

use std::collections::HashSet;
use std::sync::Arc;

use crate::enriched::Space;
use crate::quantale::{Base, QValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogParams {
    pub max_points: usize,
    /// Off-diagonal distances for R̄₊ spaces.
    pub grid: Vec<QValue>,
    pub symmetric_only: bool,
    /// Seeds the sampled quantale laws; the catalog itself is exhaustive.
    pub seed: u64,
    /// Largest preorder in the Bool catalog.
    pub max_preorder: usize,
}

impl Default for CatalogParams {
    fn default() -> CatalogParams {
        CatalogParams {
            max_points: 3,
            grid: vec![QValue::ZERO, QValue::int(1), QValue::int(2), QValue::Infinity],
            symmetric_only: false,
            seed: 0,
            max_preorder: 4,
        }
    }
}

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest relabelling of an index matrix; equal for isomorphic spaces.
fn canonical(n: usize, cells: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| (0..n * n).map(|i| cells[p[i / n] * n + p[i % n]]).collect::<Vec<_>>())
        .min()
        .expect("at least the identity permutation")
}

/// Every valid space with `1..=n` points and off-diagonal entries drawn
/// from `values` (indices into it), one per isomorphism class.
fn enumerate(prefix: &str, base: Base, max_points: usize, values: &[QValue], symmetric_only: bool) -> Vec<Arc<Space>> {
    assert!(max_points <= NAMES.len(), "catalog is limited to {} points", NAMES.len());
    let unit = base.unit();
    let mut out = Vec::new();
    for n in 1..=max_points {
        let perms = permutations(n);
        let off: Vec<(usize, usize)> =
            (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut idx = vec![0usize; off.len()];
        let mut count = 0;
        loop {
            // Index `values.len()` marks the diagonal.
            let mut cells = vec![values.len(); n * n];
            for (k, &(x, y)) in off.iter().enumerate() {
                cells[x * n + y] = idx[k];
            }
            let symmetric = off.iter().all(|&(x, y)| cells[x * n + y] == cells[y * n + x]);
            if !symmetric_only || symmetric {
                let key = canonical(n, &cells, &perms);
                if !seen.contains(&key) {
                    let dist = cells.iter().map(|&c| if c == values.len() { unit } else { values[c] }).collect();
                    let points = NAMES[..n].iter().map(|s| s.to_string()).collect();
                    let name = format!("{prefix}{n}-{count}");
                    if let Ok(space) = Space::new(name, base, points, dist) {
                        seen.insert(key);
                        out.push(space.into_ref());
                        count += 1;
                    }
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out
}

/// R̄₊ spaces with up to `max_points` points and distances in the grid.
pub fn rplus_spaces(params: &CatalogParams) -> Vec<Arc<Space>> {
    enumerate("R", Base::RPlus, params.max_points, &params.grid, params.symmetric_only)
}

/// Preorders with up to `max_points` elements.
pub fn bool_preorders(max_points: usize) -> Vec<Arc<Space>> {
    enumerate("B", Base::Bool, max_points, &[QValue::FALSE, QValue::TRUE], false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts() {
        // Preorders up to isomorphism: 1, 3, 9, 33 on 1..4 points.
        let counts: Vec<usize> =
            (1..=4).map(|n| bool_preorders(n).iter().filter(|s| s.len() == n).count()).collect();
        assert_eq!(counts, [1, 3, 9, 33]);
    }

    #[test]
    fn rplus_catalog_is_pruned() {
        let spaces = rplus_spaces(&CatalogParams::default());
        for (i, s) in spaces.iter().enumerate() {
            assert!(s.violations().is_empty());
            for t in &spaces[..i] {
                assert!(!s.is_isomorphic(t), "{} and {}", s.name(), t.name());
            }
        }
        let two: Vec<_> = spaces.iter().filter(|s| s.len() == 2).collect();
        // Unordered pairs of {0,1,2,∞} up to swapping: 4 + 6.
        assert_eq!(two.len(), 10);
        let sym = rplus_spaces(&CatalogParams { symmetric_only: true, ..CatalogParams::default() });
        assert!(sym.iter().all(|s| s.is_symmetric()));
        assert!(sym.len() < spaces.len());
    }
}

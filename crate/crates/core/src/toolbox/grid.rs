//! Hamiltonian paths and cycles in grid graphs.
//!
//! Vertices are pairs `(x, y)` with `0 <= x < k`, `0 <= y < l`. The path
//! builder produces a corner-to-target path for any target at odd distance
//! from the corner, provided `k*l` is even and `k, l >= 2`, by strip
//! splitting with explicit two-row bases.

use crate::error::{Error, Result};

pub type Cell = (usize, usize);

fn transpose(path: Vec<Cell>) -> Vec<Cell> {
    path.into_iter().map(|(x, y)| (y, x)).collect()
}

/// Corner-to-target hamiltonian path in the `k x l` grid.
pub fn grid_ham_path(k: usize, l: usize, target: Cell) -> Result<Vec<Cell>> {
    let (p, q) = target;
    if k < 2 || l < 2 {
        return Err(Error::BadInput(format!("grid {k}x{l} is too thin")));
    }
    if (k * l) % 2 != 0 {
        return Err(Error::BadParity(format!("grid {k}x{l} has odd size")));
    }
    if p >= k || q >= l {
        return Err(Error::BadInput(format!("target {target:?} outside {k}x{l}")));
    }
    if (p + q) % 2 != 1 {
        return Err(Error::BadParity(format!(
            "target {target:?} is at even distance from the corner"
        )));
    }
    let path = build(k, l, p, q);
    // cheap full check; the recursion is fiddly enough to deserve it
    if !valid_path(k, l, &path, (0, 0), target) {
        return Err(Error::Inconsistency(format!(
            "grid path construction broke for {k}x{l} -> {target:?}"
        )));
    }
    Ok(path)
}

fn build(k: usize, l: usize, p: usize, q: usize) -> Vec<Cell> {
    if l == 2 || l == 1 {
        return two_rows(k, l, p, q);
    }
    if k == 2 || k == 1 {
        return transpose(two_rows(l, k, q, p));
    }
    if q >= 2 && l >= 4 {
        // peel the top two rows with a serpentine ending at (0,1), then descend
        let mut path: Vec<Cell> = (0..k).map(|x| (x, 0)).collect();
        path.extend((0..k).rev().map(|x| (x, 1)));
        let rest = build(k, l - 2, p, q - 2);
        path.extend(rest.into_iter().map(|(x, y)| (x, y + 2)));
        return path;
    }
    if p >= 2 && k >= 4 {
        let mut path: Vec<Cell> = (0..l).map(|y| (0, y)).collect();
        path.extend((0..l).rev().map(|y| (1, y)));
        let rest = build(k - 2, l, p - 2, q);
        path.extend(rest.into_iter().map(|(x, y)| (x + 2, y)));
        return path;
    }
    if q == 2 && l == 3 {
        // parity forces p = 1 here, and k is even
        return three_rows_bottom(k);
    }
    if p == 2 && k == 3 {
        return transpose(three_rows_bottom(l));
    }
    // k, l >= 3 and the target is (1,0) or (0,1)
    if (p, q) == (0, 1) {
        return transpose(corner_adjacent(l, k));
    }
    corner_adjacent(k, l)
}

/// Path from (0,0) to (1,2) in a `k x 3` grid with `k >= 4` even.
fn three_rows_bottom(k: usize) -> Vec<Cell> {
    let mut path: Vec<Cell> = (0..k).map(|x| (x, 0)).collect();
    path.push((k - 1, 1));
    path.push((k - 1, 2));
    for x in (2..k - 1).rev() {
        if (k - 2 - x) % 2 == 0 {
            path.push((x, 2));
            path.push((x, 1));
        } else {
            path.push((x, 1));
            path.push((x, 2));
        }
    }
    path.extend([(1, 1), (0, 1), (0, 2), (1, 2)]);
    path
}

/// Path from (0,0) to (1,0) in a `k x l` grid with `k, l >= 3`, `k*l` even.
fn corner_adjacent(k: usize, l: usize) -> Vec<Cell> {
    let mut path: Vec<Cell> = Vec::with_capacity(k * l);
    if l % 2 == 0 {
        // column 0 down, then row-snake the rest back up to (1,0)
        path.extend((0..l).map(|y| (0, y)));
        for j in (0..l).rev() {
            if (l - 1 - j) % 2 == 0 {
                path.extend((1..k).map(|x| (x, j)));
            } else {
                path.extend((1..k).rev().map(|x| (x, j)));
            }
        }
    } else {
        // l odd forces k even: column 0 down, column-snake rows 1..l-1,
        // then return along row 0
        path.extend((0..l).map(|y| (0, y)));
        for i in 1..k {
            if i % 2 == 1 {
                path.extend((1..l).rev().map(|y| (i, y)));
            } else {
                path.extend((1..l).map(|y| (i, y)));
            }
        }
        path.extend((1..k).rev().map(|x| (x, 0)));
    }
    path
}

fn two_rows(k: usize, l: usize, p: usize, q: usize) -> Vec<Cell> {
    debug_assert!(l == 1 || l == 2);
    if l == 1 {
        // only the far end is a valid odd target
        debug_assert_eq!(p, k - 1);
        return (0..k).map(|x| (x, 0)).collect();
    }
    let mut path: Vec<Cell> = Vec::with_capacity(2 * k);
    if p == 0 {
        debug_assert_eq!(q, 1);
        path.extend((0..k).map(|x| (x, 0)));
        path.extend((0..k).rev().map(|x| (x, 1)));
        return path;
    }
    // vertical snake through columns 0..p-1, then loop out and back
    for x in 0..p {
        if x % 2 == 0 {
            path.push((x, 0));
            path.push((x, 1));
        } else {
            path.push((x, 1));
            path.push((x, 0));
        }
    }
    let r = 1 - q; // row on which we leave column p (parity makes this match)
    debug_assert_eq!(p % 2, r);
    path.extend((p..k).map(|x| (x, r)));
    path.extend((p..k).rev().map(|x| (x, q)));
    path
}

/// A hamiltonian cycle of the `k x l` grid (`k*l` even, both >= 2).
pub fn grid_ham_cycle(k: usize, l: usize) -> Result<Vec<Cell>> {
    if k < 2 || l < 2 {
        return Err(Error::BadInput(format!("grid {k}x{l} is too thin")));
    }
    if (k * l) % 2 != 0 {
        return Err(Error::BadParity(format!("grid {k}x{l} has odd size")));
    }
    if k % 2 != 0 {
        // l must be even; build transposed
        return Ok(transpose(grid_ham_cycle(l, k)?));
    }
    // row 0 rightward, then comb back through rows 1..l-1
    let mut cycle: Vec<Cell> = (0..k).map(|x| (x, 0)).collect();
    for i in (0..k).rev() {
        if (k - 1 - i) % 2 == 0 {
            cycle.extend((1..l).map(|y| (i, y)));
        } else {
            cycle.extend((1..l).rev().map(|y| (i, y)));
        }
    }
    debug_assert_eq!(cycle.len(), k * l);
    Ok(cycle)
}

fn valid_path(k: usize, l: usize, path: &[Cell], from: Cell, to: Cell) -> bool {
    if path.len() != k * l || path.first() != Some(&from) || path.last() != Some(&to) {
        return false;
    }
    let mut seen = vec![false; k * l];
    let mut prev: Option<Cell> = None;
    for &(x, y) in path {
        if x >= k || y >= l || seen[x * l + y] {
            return false;
        }
        seen[x * l + y] = true;
        if let Some((px, py)) = prev {
            if px.abs_diff(x) + py.abs_diff(y) != 1 {
                return false;
            }
        }
        prev = Some((x, y));
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_grid() {
        let p = grid_ham_path(2, 2, (1, 0)).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p[0], (0, 0));
        assert_eq!(p[3], (1, 0));
    }

    #[test]
    fn parity_violations_rejected() {
        assert!(matches!(grid_ham_path(2, 2, (1, 1)), Err(Error::BadParity(_))));
        assert!(matches!(grid_ham_path(3, 3, (1, 0)), Err(Error::BadParity(_))));
        assert!(matches!(grid_ham_path(4, 4, (0, 0)), Err(Error::BadParity(_))));
    }

    #[test]
    fn exhaustive_small_grids_against_brute_force() {
        // brute force: DFS over all simple paths, small sizes only
        fn exists_brute(k: usize, l: usize, target: Cell) -> bool {
            fn dfs(k: usize, l: usize, v: Cell, target: Cell, seen: &mut Vec<bool>, left: usize) -> bool {
                if left == 0 {
                    return v == target;
                }
                let (x, y) = v;
                let mut next = Vec::new();
                if x + 1 < k {
                    next.push((x + 1, y));
                }
                if x > 0 {
                    next.push((x - 1, y));
                }
                if y + 1 < l {
                    next.push((x, y + 1));
                }
                if y > 0 {
                    next.push((x, y - 1));
                }
                for w in next {
                    let id = w.0 * l + w.1;
                    if !seen[id] {
                        seen[id] = true;
                        if dfs(k, l, w, target, seen, left - 1) {
                            return true;
                        }
                        seen[id] = false;
                    }
                }
                false
            }
            let mut seen = vec![false; k * l];
            seen[0] = true;
            dfs(k, l, (0, 0), target, &mut seen, k * l - 1)
        }

        for k in 2..=4usize {
            for l in 2..=4usize {
                if (k * l) % 2 != 0 {
                    continue;
                }
                for p in 0..k {
                    for q in 0..l {
                        if (p + q) % 2 != 1 {
                            continue;
                        }
                        let built = grid_ham_path(k, l, (p, q));
                        assert!(built.is_ok(), "no path for {k}x{l} -> ({p},{q})");
                        assert!(exists_brute(k, l, (p, q)));
                    }
                }
            }
        }
    }

    #[test]
    fn larger_grids_all_odd_targets() {
        for k in 2..=8usize {
            for l in 2..=8usize {
                if (k * l) % 2 != 0 {
                    continue;
                }
                for p in 0..k {
                    for q in 0..l {
                        if (p + q) % 2 == 1 {
                            grid_ham_path(k, l, (p, q)).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cycles() {
        for (k, l) in [(2, 2), (2, 5), (5, 2), (4, 4), (6, 3), (3, 6), (8, 7)] {
            let c = grid_ham_cycle(k, l).unwrap();
            assert_eq!(c.len(), k * l);
            // closed and unit steps
            let mut seen = std::collections::HashSet::new();
            for i in 0..c.len() {
                let a = c[i];
                let b = c[(i + 1) % c.len()];
                assert_eq!(a.0.abs_diff(b.0) + a.1.abs_diff(b.1), 1);
                assert!(seen.insert(a));
            }
        }
        assert!(grid_ham_cycle(3, 3).is_err());
    }
}

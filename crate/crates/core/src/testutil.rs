//! Hand-rolled presentation tables used by unit tests. These deliberately do
//! not share code with the catalog builders, so the two act as cross-checks.

use crate::group::GroupTable;

/// Z_n with element k at index k.
pub fn cyclic(n: usize) -> GroupTable {
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    GroupTable::from_rows(format!("Z{n}"), &rows).unwrap()
}

/// Dihedral group of order 2n: r^k at index k, s r^k at index n + k,
/// with s r s = r^{-1}.
pub fn dihedral(n: usize) -> GroupTable {
    let order = 2 * n;
    let mut rows = vec![vec![0usize; order]; order];
    for i in 0..order {
        for j in 0..order {
            let (si, ri) = (i >= n, i % n);
            let (sj, rj) = (j >= n, j % n);
            // (s^a r^i)(s^b r^j) = s^{a+b} r^{(-1)^b i + j}
            let flip = sj;
            let ri_signed = if flip { (n - ri) % n } else { ri };
            let r = (ri_signed + rj) % n;
            let s = si ^ sj;
            rows[i][j] = if s { n + r } else { r };
        }
    }
    GroupTable::from_rows(format!("D{n}"), &rows).unwrap()
}

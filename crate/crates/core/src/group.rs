//! Finite groups as explicit multiplication tables.
//!
//! Every group in this crate is a table of element indices with the identity
//! at index 0. Structural queries (orders, centers, conjugation) are plain
//! table scans; the orders involved are small enough that nothing cleverer
//! is warranted.

use crate::error::{Error, Result};

/// An element of a [`GroupTable`], stored as its index.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elem(pub u16);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

/// Largest group order the crate accepts.
pub const MAX_ORDER: usize = 2048;

/// Orders up to this bound get an exhaustive associativity check on load.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;

/// Number of random triples checked when the order is above the exhaustive limit.
const SAMPLED_ASSOC_TRIPLES: usize = 1_000_000;

/// A finite group given by its full multiplication table.
///
/// `table[i * order + j]` is the index of the product of elements `i` and `j`.
/// The identity is always element 0 and `inv[g]` is the inverse of `g`.
#[derive(Clone, Debug)]
pub struct GroupTable {
    name: String,
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
}

impl GroupTable {
    /// Builds a group from explicit rows, verifying the group axioms.
    ///
    /// Identity and inverse checks are exhaustive. Associativity is exhaustive
    /// up to order 512 and sampled on a million deterministic triples above.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::CapExceeded(order, MAX_ORDER));
        }
        let mut table = vec![0u16; order * order];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {} but order is {order}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::InvalidTable(format!(
                        "entry ({i},{j}) = {v} out of range"
                    )));
                }
                table[i * order + j] = v as u16;
            }
        }

        // Identity at index 0.
        for g in 0..order {
            if table[g] as usize != g || table[g * order] as usize != g {
                return Err(Error::InvalidTable(format!(
                    "element 0 is not a two-sided identity at {g}"
                )));
            }
        }

        // Rows and columns must be permutations (cancellation).
        let mut seen = vec![false; order];
        for i in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..order {
                let v = table[i * order + j] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!("row {i} repeats {v}")));
                }
                seen[v] = true;
            }
        }
        for j in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..order {
                let v = table[i * order + j] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!("column {j} repeats {v}")));
                }
                seen[v] = true;
            }
        }

        // Two-sided inverses.
        let mut inv = vec![0u16; order];
        for g in 0..order {
            let mut found = None;
            for h in 0..order {
                if table[g * order + h] == 0 {
                    found = Some(h);
                    break;
                }
            }
            let h = found.ok_or_else(|| {
                Error::InvalidTable(format!("element {g} has no right inverse"))
            })?;
            if table[h * order + g] != 0 {
                return Err(Error::InvalidTable(format!(
                    "inverse of {g} is not two-sided"
                )));
            }
            inv[g] = h as u16;
        }

        let gt = GroupTable {
            name: name.into(),
            order,
            table,
            inv,
        };

        if order <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = gt.table[a * order + b] as usize;
                    for c in 0..order {
                        let bc = gt.table[b * order + c] as usize;
                        if gt.table[ab * order + c] != gt.table[a * order + bc] {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Deterministic splitmix sampling; corrupt big tables must still fail fast.
            let mut state = 0x9e3779b97f4a7c15u64 ^ (order as u64);
            let mut next = || {
                state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                (z ^ (z >> 31)) as usize
            };
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = next() % order;
                let b = next() % order;
                let c = next() % order;
                let ab = gt.table[a * order + b] as usize;
                let bc = gt.table[b * order + c] as usize;
                if gt.table[ab * order + c] != gt.table[a * order + bc] {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }

        Ok(gt)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as u16).map(Elem)
    }

    /// Checks the index is valid, for inputs that cross an API boundary.
    pub fn check(&self, g: Elem) -> Result<Elem> {
        if g.idx() < self.order {
            Ok(g)
        } else {
            Err(Error::BadElement(g.idx(), self.order))
        }
    }

    #[inline]
    pub fn mul(&self, g: Elem, h: Elem) -> Elem {
        debug_assert!(g.idx() < self.order && h.idx() < self.order);
        Elem(self.table[g.idx() * self.order + h.idx()])
    }

    #[inline]
    pub fn inv(&self, g: Elem) -> Elem {
        debug_assert!(g.idx() < self.order);
        Elem(self.inv[g.idx()])
    }

    /// Product of a slice of elements, left to right.
    pub fn product(&self, elems: &[Elem]) -> Elem {
        elems.iter().fold(Elem::IDENTITY, |acc, &e| self.mul(acc, e))
    }

    /// `g^h = h^{-1} g h`.
    #[inline]
    pub fn conjugate(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// Left conjugate `h g h^{-1}`.
    #[inline]
    pub fn lconjugate(&self, g: Elem, h: Elem) -> Elem {
        self.conjugate(g, self.inv(h))
    }

    /// `[g,h] = g^{-1} h^{-1} g h`.
    #[inline]
    pub fn commutator(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(self.mul(self.inv(g), self.inv(h)), g), h)
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: Elem, k: i64) -> Elem {
        let (mut base, mut k) = if k < 0 { (self.inv(g), -k) } else { (g, k) };
        let mut acc = Elem::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut n = 1;
        while !x.is_identity() {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                if self.table[i * self.order + j] != self.table[j * self.order + i] {
                    return false;
                }
            }
        }
        true
    }

    /// Elements commuting with everything.
    pub fn center_elems(&self) -> Vec<Elem> {
        self.elems()
            .filter(|&z| self.elems().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn commutes(&self, g: Elem, h: Elem) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    /// Rows of the table, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| self.table[i * self.order + j] as usize)
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::dihedral;

    #[test]
    fn cyclic_axioms() {
        let n = 7;
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let g = GroupTable::from_rows("Z7", &rows).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.element_order(Elem(1)), 7);
        assert!(g.is_abelian());
    }

    #[test]
    fn identity_and_inverse() {
        let g = dihedral(12);
        for x in g.elems() {
            assert_eq!(g.mul(Elem::IDENTITY, x), x);
            assert_eq!(g.mul(x, g.inv(x)), Elem::IDENTITY);
        }
        // r * r^11 = e under the r^k = k encoding.
        assert_eq!(g.mul(Elem(1), Elem(11)), Elem::IDENTITY);
    }

    #[test]
    fn dihedral_relations() {
        let g = dihedral(12);
        let r = Elem(1);
        let s = Elem(12);
        // s r s = r^{-1}
        assert_eq!(g.conjugate(r, s), Elem(11));
        // [r, s] = r^{-2}, an element of order 6
        let c = g.commutator(r, s);
        assert_eq!(c, Elem(10));
        assert_eq!(g.element_order(c), 6);
        assert_eq!(g.center_elems(), vec![Elem(0), Elem(6)]);
    }

    #[test]
    fn rejects_corrupt_table() {
        let mut rows: Vec<Vec<usize>> = (0..6).map(|i| (0..6).map(|j| (i + j) % 6).collect()).collect();
        rows[3][4] = 2; // break the latin square
        assert!(GroupTable::from_rows("bad", &rows).is_err());
    }

    #[test]
    fn rejects_nonassociative_latin_square() {
        // A quasigroup with identity that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            GroupTable::from_rows("loop5", &rows),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn pow_and_order() {
        let g = dihedral(12);
        let r = Elem(1);
        assert_eq!(g.pow(r, 12), Elem::IDENTITY);
        assert_eq!(g.pow(r, -1), Elem(11));
        assert_eq!(g.element_order(Elem(12)), 2);
    }
}

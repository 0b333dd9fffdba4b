//! Subgroups as explicit element sets, plus closure and reduction helpers.

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};

/// A subgroup stored as its sorted element list with a membership bitmap.
#[derive(Clone, Debug)]
pub struct Subgrp {
    elems: Vec<Elem>,
    member: Vec<bool>,
    normal: bool,
}

impl Subgrp {
    fn from_members(gt: &GroupTable, member: Vec<bool>) -> Subgrp {
        let elems: Vec<Elem> = gt.elems().filter(|e| member[e.idx()]).collect();
        let normal = elems.iter().all(|&h| {
            gt.elems().all(|g| member[gt.conjugate(h, g).idx()])
        });
        Subgrp {
            elems,
            member,
            normal,
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    #[inline]
    pub fn contains(&self, g: Elem) -> bool {
        self.member[g.idx()]
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    /// Whether this subgroup contains every element of `other`.
    pub fn contains_all(&self, other: &Subgrp) -> bool {
        other.elems.iter().all(|&e| self.contains(e))
    }

    /// `|K : H|` where `self = H` must be contained in `K`.
    pub fn index_in(&self, k: &Subgrp) -> Result<usize> {
        if !k.contains_all(self) {
            return Err(Error::NotSubgroup);
        }
        Ok(k.order() / self.order())
    }

    /// Extracts the subgroup as a standalone group table.
    ///
    /// Returns the new table together with the map from new indices back to
    /// parent elements. The identity stays at index 0.
    pub fn as_group(&self, gt: &GroupTable, name: &str) -> Result<(GroupTable, Vec<Elem>)> {
        let to_parent = self.elems.clone();
        debug_assert_eq!(to_parent[0], Elem::IDENTITY);
        let mut to_sub = vec![usize::MAX; gt.order()];
        for (i, &e) in to_parent.iter().enumerate() {
            to_sub[e.idx()] = i;
        }
        let n = to_parent.len();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| to_sub[gt.mul(to_parent[i], to_parent[j]).idx()])
                    .collect()
            })
            .collect();
        Ok((GroupTable::from_rows(name, &rows)?, to_parent))
    }
}

/// Least subgroup containing `gens`, by breadth-first closure.
pub fn subgroup_generated(gt: &GroupTable, gens: &[Elem]) -> Subgrp {
    let mut member = vec![false; gt.order()];
    member[0] = true;
    let mut frontier: Vec<Elem> = vec![Elem::IDENTITY];
    let mut all_gens: Vec<Elem> = Vec::new();
    for &g in gens {
        all_gens.push(g);
        all_gens.push(gt.inv(g));
    }
    while let Some(x) = frontier.pop() {
        for &g in &all_gens {
            let y = gt.mul(x, g);
            if !member[y.idx()] {
                member[y.idx()] = true;
                frontier.push(y);
            }
        }
    }
    Subgrp::from_members(gt, member)
}

/// The commutator subgroup `[G,G]`.
pub fn commutator_subgroup(gt: &GroupTable) -> Subgrp {
    let mut comm_gens: Vec<Elem> = Vec::new();
    let mut seen = vec![false; gt.order()];
    for g in gt.elems() {
        for h in gt.elems() {
            let c = gt.commutator(g, h);
            if !seen[c.idx()] {
                seen[c.idx()] = true;
                comm_gens.push(c);
            }
        }
    }
    subgroup_generated(gt, &comm_gens)
}

/// The center `Z(G)` as a subgroup.
pub fn center(gt: &GroupTable) -> Subgrp {
    subgroup_generated(gt, &gt.center_elems())
}

pub fn generates(gt: &GroupTable, gens: &[Elem]) -> bool {
    subgroup_generated(gt, gens).order() == gt.order()
}

/// Greedily removes elements (ascending index order) while the rest still
/// generates. The result is an irredundant generating set.
pub fn irredundant_reduce(gt: &GroupTable, gens: &[Elem]) -> Result<Vec<Elem>> {
    let mut set: Vec<Elem> = gens.to_vec();
    set.sort_unstable();
    set.dedup();
    set.retain(|e| !e.is_identity());
    if !generates(gt, &set) {
        return Err(Error::NotGenerating);
    }
    let mut i = 0;
    while i < set.len() {
        let mut reduced = set.clone();
        reduced.remove(i);
        if generates(gt, &reduced) {
            set = reduced;
        } else {
            i += 1;
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::dihedral;

    #[test]
    fn closure_basics() {
        let g = dihedral(12);
        assert_eq!(subgroup_generated(&g, &[]).order(), 1);
        // <r^2> is the six even rotations
        let h = subgroup_generated(&g, &[Elem(2)]);
        assert_eq!(h.elems(), &[Elem(0), Elem(2), Elem(4), Elem(6), Elem(8), Elem(10)]);
        assert!(h.is_normal());
        let c = subgroup_generated(&g, &[Elem(1)]);
        assert_eq!(c.order(), 12);
    }

    #[test]
    fn commutator_subgroup_dihedral() {
        let g = dihedral(12);
        let gp = commutator_subgroup(&g);
        assert_eq!(gp.order(), 6);
        assert!(gp.contains(Elem(2)));
        assert!(gp.is_normal());
    }

    #[test]
    fn commutator_subgroup_abelian_is_trivial() {
        let rows: Vec<Vec<usize>> = (0..9).map(|i| (0..9).map(|j| (i + j) % 9).collect()).collect();
        let g = GroupTable::from_rows("Z9", &rows).unwrap();
        assert!(commutator_subgroup(&g).is_trivial());
    }

    #[test]
    fn center_of_dihedral() {
        let g = dihedral(12);
        let z = center(&g);
        assert_eq!(z.elems(), &[Elem(0), Elem(6)]);
    }

    #[test]
    fn irredundant_reduction_is_greedy_ascending() {
        let g = dihedral(12);
        let r = Elem(1);
        let s = Elem(12);
        let rs = g.mul(r, s);
        // r (the least index) is removable first, leaving {s, rs}.
        let reduced = irredundant_reduce(&g, &[r, s, rs]).unwrap();
        assert_eq!(reduced, vec![s, rs]);
        assert!(generates(&g, &reduced));
        // already irredundant set is unchanged
        let same = irredundant_reduce(&g, &[r, s]).unwrap();
        assert_eq!(same, vec![r, s]);
        // duplicates collapse
        assert_eq!(
            irredundant_reduce(&g, &[r, r]).unwrap_err().to_string(),
            Error::NotGenerating.to_string()
        );
    }

    #[test]
    fn index_and_as_group() {
        let g = dihedral(12);
        let h = subgroup_generated(&g, &[Elem(2)]);
        let k = subgroup_generated(&g, &[Elem(1)]);
        assert_eq!(h.index_in(&k).unwrap(), 2);
        assert!(k.index_in(&h).is_err());
        let (hg, back) = h.as_group(&g, "rot6").unwrap();
        assert_eq!(hg.order(), 6);
        assert_eq!(back[0], Elem(0));
        assert_eq!(hg.element_order(Elem(1)), 6);
    }
}

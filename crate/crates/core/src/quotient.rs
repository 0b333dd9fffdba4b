//! Quotients by normal subgroups, with a deterministic section.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::subgrp::Subgrp;

/// A normal subgroup together with the quotient group it defines.
///
/// `project` maps parent elements to quotient indices and `section` picks the
/// minimum-index representative of each coset, so every downstream
/// construction is deterministic and replayable.
#[derive(Clone, Debug)]
pub struct QuotientView {
    parent: Arc<GroupTable>,
    normal: Subgrp,
    quotient: Arc<GroupTable>,
    project: Vec<Elem>,
    section: Vec<Elem>,
    normal_abelian: bool,
}

impl QuotientView {
    pub fn new(parent: Arc<GroupTable>, normal: Subgrp) -> Result<QuotientView> {
        if !normal.is_normal() {
            return Err(Error::NotNormal);
        }
        let n = parent.order();
        // Enumerate cosets; representative = minimum element index.
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<Elem> = Vec::new();
        for g in parent.elems() {
            if coset_of[g.idx()] != usize::MAX {
                continue;
            }
            let q = reps.len();
            reps.push(g);
            for &h in normal.elems() {
                coset_of[parent.mul(g, h).idx()] = q;
            }
        }
        let m = reps.len();
        let rows: Vec<Vec<usize>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| coset_of[parent.mul(reps[i], reps[j]).idx()])
                    .collect()
            })
            .collect();
        let name = format!("{}/N{}", parent.name(), normal.order());
        let quotient = Arc::new(GroupTable::from_rows(name, &rows)?);
        let project: Vec<Elem> = (0..n).map(|g| Elem(coset_of[g] as u16)).collect();
        let normal_abelian = {
            let es = normal.elems();
            es.iter()
                .all(|&a| es.iter().all(|&b| parent.mul(a, b) == parent.mul(b, a)))
        };
        Ok(QuotientView {
            parent,
            normal,
            quotient,
            project,
            section: reps,
            normal_abelian,
        })
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn normal(&self) -> &Subgrp {
        &self.normal
    }

    pub fn quotient(&self) -> &Arc<GroupTable> {
        &self.quotient
    }

    pub fn normal_is_abelian(&self) -> bool {
        self.normal_abelian
    }

    #[inline]
    pub fn project(&self, g: Elem) -> Elem {
        self.project[g.idx()]
    }

    #[inline]
    pub fn section(&self, q: Elem) -> Elem {
        self.section[q.idx()]
    }

    /// Identity-kernel view of a group, useful when a construction wants a
    /// quotient interface over the group itself.
    pub fn identity_view(parent: Arc<GroupTable>) -> QuotientView {
        let normal = crate::subgrp::subgroup_generated(&parent, &[]);
        QuotientView::new(parent, normal).expect("trivial subgroup is normal")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgrp::subgroup_generated;
    use crate::testutil::dihedral;

    #[test]
    fn quotient_by_rotations_is_klein() {
        let g = Arc::new(dihedral(12));
        let n = subgroup_generated(&g, &[Elem(2)]);
        let qv = QuotientView::new(g.clone(), n).unwrap();
        let q = qv.quotient();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert!(q.elems().all(|x| q.mul(x, x).is_identity()));
        // projection is a homomorphism
        for a in g.elems() {
            for b in g.elems() {
                assert_eq!(
                    qv.project(g.mul(a, b)),
                    q.mul(qv.project(a), qv.project(b))
                );
            }
        }
        // section is a right inverse of project
        for x in q.elems() {
            assert_eq!(qv.project(qv.section(x)), x);
        }
    }

    #[test]
    fn degenerate_quotients() {
        let g = Arc::new(dihedral(12));
        let triv = QuotientView::identity_view(g.clone());
        assert_eq!(triv.quotient().order(), 24);
        let full = subgroup_generated(&g, &[Elem(1), Elem(12)]);
        let qv = QuotientView::new(g.clone(), full).unwrap();
        assert_eq!(qv.quotient().order(), 1);
    }

    #[test]
    fn non_normal_rejected() {
        let g = Arc::new(dihedral(12));
        let h = subgroup_generated(&g, &[Elem(12)]);
        assert!(!h.is_normal());
        assert!(QuotientView::new(g, h).is_err());
    }
}

//! The classified setting the case machine works in: the group, a reduced
//! generating set, the commutator decomposition, cached quotient views, and
//! per-generator conjugation flags.

use std::sync::Arc;

use crate::comm::{decompose_comm, CommStructure, ZpAction};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::quotient::QuotientView;
use crate::subgrp::subgroup_generated;
use crate::view::View;
use crate::words::GenSet;

#[derive(Clone)]
pub struct Scene {
    pub gt: Arc<GroupTable>,
    pub gens: Arc<GenSet>,
    pub comm: CommStructure,
    /// G -> G/G'
    pub q_comm: Arc<QuotientView>,
    /// G -> G/Z2
    pub q_z2: Arc<QuotientView>,
    /// G -> G/Zp
    pub q_zp: Arc<QuotientView>,
    /// conjugation action of each generator on the odd part
    pub action: Vec<ZpAction>,
}

impl Scene {
    pub fn new(gt: Arc<GroupTable>, gen_elems: Vec<Elem>) -> Result<Scene> {
        let comm = decompose_comm(&gt)?;
        let q_comm = Arc::new(QuotientView::new(gt.clone(), comm.gprime.clone())?);
        let q_z2 = Arc::new(QuotientView::new(gt.clone(), comm.z2.clone())?);
        let q_zp = Arc::new(QuotientView::new(gt.clone(), comm.zp.clone())?);
        let gens = Arc::new(GenSet::new(&gt, gen_elems));
        let action = gens
            .elems()
            .iter()
            .map(|&e| comm.action_on_zp(&gt, e))
            .collect();
        Ok(Scene {
            gt,
            gens,
            comm,
            q_comm,
            q_z2,
            q_zp,
            action,
        })
    }

    /// `Z_p <= <[x, y]>`.
    pub fn zp_in_bracket(&self, x: Elem, y: Elem) -> bool {
        self.comm.zp_part_nontrivial(self.gt.commutator(x, y))
    }

    /// `Z_2 <= <[x, y]>`.
    pub fn z2_in_bracket(&self, x: Elem, y: Elem) -> bool {
        self.comm.z2_part_nontrivial(self.gt.commutator(x, y))
    }

    pub fn centralizes(&self, x: Elem) -> bool {
        self.comm.centralizes_gprime(&self.gt, x)
    }

    pub fn inverts(&self, x: Elem) -> bool {
        self.comm.inverts_gprime(&self.gt, x)
    }

    /// Order of the image of `x` in the abelianization.
    pub fn bar_order(&self, x: Elem) -> usize {
        self.q_comm
            .quotient()
            .element_order(self.q_comm.project(x))
    }

    /// Whether the image of `x` lies in the subgroup of the abelianization
    /// generated by the images of `gens`.
    pub fn bar_in_span(&self, x: Elem, gens: &[Elem]) -> bool {
        let q = self.q_comm.quotient();
        let imgs: Vec<Elem> = gens.iter().map(|&g| self.q_comm.project(g)).collect();
        subgroup_generated(q, &imgs).contains(self.q_comm.project(x))
    }

    /// Index `|Gbar : <images of gens>|`.
    pub fn bar_index(&self, gens: &[Elem]) -> usize {
        let q = self.q_comm.quotient();
        let imgs: Vec<Elem> = gens.iter().map(|&g| self.q_comm.project(g)).collect();
        q.order() / subgroup_generated(q, &imgs).order()
    }

    /// The construction view one level down: `Cay(Gbar; S)`.
    pub fn bar_view(&self) -> View {
        View::of_quotient(&self.q_comm, &self.gens)
    }

    /// A view of `Gbar / <images of mods>` for path-finding, together with
    /// the quotient map from `Gbar`.
    pub fn bar_sub_quotient(&self, mods: &[Elem]) -> Result<(Arc<QuotientView>, View)> {
        let q = self.q_comm.quotient();
        let imgs: Vec<Elem> = mods.iter().map(|&g| self.q_comm.project(g)).collect();
        let sub = subgroup_generated(q, &imgs);
        let qv = Arc::new(QuotientView::new(q.clone(), sub)?);
        let view = self.bar_view().through(&qv);
        Ok((qv, view))
    }

    /// All elements of `S u S^{-1}`, deduplicated, in index order.
    pub fn labels(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        for &e in self.gens.elems() {
            if !out.contains(&e) {
                out.push(e);
            }
            let i = self.gt.inv(e);
            if !out.contains(&i) {
                out.push(i);
            }
        }
        out
    }

    /// Generator indices other than those resolving to the given elements.
    pub fn gens_without(&self, excluded: &[Elem]) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| !excluded.contains(&self.gens.get(i)))
            .collect()
    }

    pub fn gen_elems_without(&self, excluded: &[Elem]) -> Vec<Elem> {
        self.gens
            .elems()
            .iter()
            .copied()
            .filter(|e| !excluded.contains(e))
            .collect()
    }

    /// Fails loudly: these mark spots where a property the construction
    /// relies on did not hold, which is a bug signal, not a wrong answer.
    pub fn ensure(&self, cond: bool, what: &str) -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(Error::Inconsistency(format!("expected {what}")))
        }
    }
}

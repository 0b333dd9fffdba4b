//! Lifting a quotient hamiltonian cycle through a normal cyclic `<s>` with
//! `s` a generator: the easy cases (central `s`, trivial central overlap, or
//! prime order). Every candidate word is verified; candidates are tried in a
//! fixed order and the first one that checks out wins.

use std::sync::Arc;

use crate::cycles::{verify_hamiltonian, QCycle};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::oracle::{Search, SearchBudget};
use crate::quotient::QuotientView;
use crate::subgrp::{center, subgroup_generated};
use crate::toolbox::double_edge::is_prime;
use crate::toolbox::fgl::fgl_lift;
use crate::words::{GenSet, GenWord};

/// Lifts `quot_cycle` (a hamiltonian cycle of `Cay(G/<s>; S)`) to a verified
/// hamiltonian word of `Cay(G; S)`. Exactly one of the side conditions must
/// hold: `s` central, `Z(G) n <s> = 1`, or `|s|` prime.
///
/// `log` records whether the bounded fallback search had to finish the job.
pub fn normal_easy(
    gt: &Arc<GroupTable>,
    gens: &Arc<GenSet>,
    s: Elem,
    quot_cycle: &GenWord,
    log: &mut Vec<String>,
) -> Result<GenWord> {
    let s_sub = subgroup_generated(gt, &[s]);
    if !s_sub.is_normal() {
        return Err(Error::BadInput("the chosen generator must be normal".into()));
    }
    let z = center(gt);
    let s_central = z.contains(s);
    let overlap_trivial = s_sub.elems().iter().all(|&e| e.is_identity() || !z.contains(e));
    let prime_order = is_prime(gt.element_order(s));
    if !(s_central || overlap_trivial || prime_order) {
        return Err(Error::BadInput(
            "none of the side conditions hold for the chosen generator".into(),
        ));
    }
    let qv = Arc::new(QuotientView::new(gt.clone(), s_sub)?);
    let c = QCycle::new(qv.clone(), gens.clone(), Elem::IDENTITY, quot_cycle.clone())?;
    if !c.is_hamiltonian() {
        return Err(Error::BadInput("need a hamiltonian cycle of the quotient".into()));
    }

    // direct factor-group lift whenever the voltage happens to generate
    if let Ok(w) = fgl_lift(&c) {
        return Ok(w);
    }

    let d = gt.element_order(s) as i64;
    let sg_s = gens.signed_for(s)?;
    let sg_s_inv = gens.signed_for(gt.inv(s))?;
    let n = quot_cycle.len();

    let mut candidates: Vec<GenWord> = Vec::new();
    // interleave: each quotient step followed by a full fibre run, both
    // uniform directions
    for dir in [sg_s, sg_s_inv] {
        let mut w = GenWord::empty();
        for &step in &quot_cycle.0 {
            w.0.push(step);
            for _ in 0..d - 1 {
                w.0.push(dir);
            }
        }
        candidates.push(w);
    }
    // boustrophedon: alternate the fibre direction per column
    if n % 2 == 0 {
        for first in [sg_s, sg_s_inv] {
            let mut w = GenWord::empty();
            let mut dir = first;
            for &step in &quot_cycle.0 {
                w.0.push(step);
                for _ in 0..d - 1 {
                    w.0.push(dir);
                }
                dir = if dir == sg_s { sg_s_inv } else { sg_s };
            }
            candidates.push(w);
        }
    }
    for w in candidates {
        if verify_hamiltonian(gt, gens, &w).ok {
            return Ok(w);
        }
    }

    // the patterned candidates missed; a bounded constrained search finishes
    log.push("normal-easy:search".into());
    let w = Search::in_group(gt, gens)
        .with_budget(SearchBudget::default())
        .run()?;
    let report = verify_hamiltonian(gt, gens, &w);
    if !report.ok {
        return Err(Error::Inconsistency(format!(
            "search produced an invalid cycle: {:?}",
            report.reason
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FamilySpec};
    use crate::oracle;

    #[test]
    fn central_involution_prism() {
        // Z2 x Z6 x Z2-ish: central s of order 2 doubles the quotient cycle
        let gt = Arc::new(
            build(&FamilySpec::Semidirect {
                m: 2,
                ns: vec![6, 2],
                action: vec![vec![-1, 0], vec![0, 1]],
            })
            .unwrap(),
        );
        let r = Elem(2);
        let z = Elem(1);
        let a = Elem(12);
        let gens = Arc::new(GenSet::new(&gt, vec![r, z, a]));
        let s_sub = subgroup_generated(&gt, &[z]);
        let qv = Arc::new(QuotientView::new(gt.clone(), s_sub).unwrap());
        let quot = oracle::Search::in_quotient(&qv, &gens).run().unwrap();
        let mut log = Vec::new();
        let w = normal_easy(&gt, &gens, z, &quot, &mut log).unwrap();
        assert!(verify_hamiltonian(&gt, &gens, &w).ok);
    }

    #[test]
    fn no_side_condition_rejected() {
        // dicyclic: b^2 generates a normal Z6 that is neither central nor
        // prime-order, and meets the center in the unique involution
        let gt = Arc::new(build(&FamilySpec::Dicyclic { n: 6 }).unwrap());
        let b = Elem(1);
        let a = Elem(12);
        let b2 = gt.mul(b, b);
        assert_eq!(gt.element_order(b2), 6);
        assert!(subgroup_generated(&gt, &[b2]).is_normal());
        let gens = Arc::new(GenSet::new(&gt, vec![b, a]));
        let mut log = Vec::new();
        let err = normal_easy(&gt, &gens, b2, &GenWord::empty(), &mut log).unwrap_err();
        assert!(matches!(err, Error::BadInput(_)));
    }
}

//! The factor-group lift: a hamiltonian cycle of `Cay(G/N; S)` whose voltage
//! generates the cyclic normal subgroup `N`, repeated `|N|` times, is a
//! hamiltonian cycle of `Cay(G; S)`.

use crate::cycles::{verify_hamiltonian, QCycle};
use crate::error::{Error, Result};
use crate::words::GenWord;

/// Lifts `c` through its quotient view. The output is re-verified against the
/// parent table before being returned.
pub fn fgl_lift(c: &QCycle) -> Result<GenWord> {
    let qv = c.qv();
    let n = qv.normal();
    let gt = qv.parent();
    let cyclic = n.elems().iter().any(|&e| gt.element_order(e) == n.order());
    if !cyclic {
        return Err(Error::BadInput("factor-group lift needs a cyclic kernel".into()));
    }
    if !c.is_hamiltonian() {
        return Err(Error::BadInput(
            "factor-group lift needs a hamiltonian cycle of the quotient".into(),
        ));
    }
    let volt = c.voltage()?;
    if gt.element_order(volt) != n.order() {
        return Err(Error::VoltageInsufficient);
    }
    let word = c.word().power(n.order());
    let report = verify_hamiltonian(gt, c.gens(), &word);
    if !report.ok {
        return Err(Error::Inconsistency(format!(
            "factor-group lift failed verification: {:?}",
            report.reason
        )));
    }
    Ok(word)
}

/// Picks whichever of the two cycles has voltage generating the full kernel
/// and lifts it; the pair construction lemmas guarantee one of them works.
pub fn lift_best(c0: &QCycle, c1: &QCycle) -> Result<GenWord> {
    let gt = c0.qv().parent();
    let n = c0.qv().normal().order();
    for c in [c0, c1] {
        if let Ok(v) = c.voltage() {
            if gt.element_order(v) == n {
                return fgl_lift(c);
            }
        }
    }
    Err(Error::VoltageInsufficient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Elem;
    use crate::quotient::QuotientView;
    use crate::subgrp::subgroup_generated;
    use crate::testutil::dihedral;
    use crate::words::{GenSet, SignedGen};
    use std::sync::Arc;

    #[test]
    fn lift_through_trivial_kernel_is_identity() {
        let gt = Arc::new(dihedral(6));
        let qv = Arc::new(QuotientView::identity_view(gt.clone()));
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(1), Elem(6)]));
        let w = crate::oracle::find_ham_cycle(&gt, &gens, Default::default()).unwrap();
        let c = QCycle::new(qv, gens, Elem::IDENTITY, w.clone()).unwrap();
        assert_eq!(fgl_lift(&c).unwrap(), w);
    }

    #[test]
    fn lift_over_rotation_kernel() {
        let gt = Arc::new(dihedral(12));
        let n = subgroup_generated(&gt, &[Elem(2)]);
        let qv = Arc::new(QuotientView::new(gt.clone(), n).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(1), Elem(12)]));
        // Klein quotient 4-cycle (r, s, r^{-1}, s^{-1}) with voltage r^2,
        // a generator of the kernel.
        let word = GenWord(vec![
            SignedGen::fwd(0),
            SignedGen::fwd(1),
            SignedGen::bwd(0),
            SignedGen::bwd(1),
        ]);
        let c = QCycle::new(qv, gens.clone(), Elem::IDENTITY, word).unwrap();
        let lifted = fgl_lift(&c).unwrap();
        assert_eq!(lifted.len(), 24);
        assert!(verify_hamiltonian(&gt, &gens, &lifted).ok);
    }

    #[test]
    fn insufficient_voltage_is_rejected() {
        let gt = Arc::new(dihedral(12));
        let n = subgroup_generated(&gt, &[Elem(2)]);
        let qv = Arc::new(QuotientView::new(gt.clone(), n).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(3), Elem(12)]));
        // (r^3, s, r^{-3}, s^{-1}) has voltage r^6 of order 2, not 6.
        let word = GenWord(vec![
            SignedGen::fwd(0),
            SignedGen::fwd(1),
            SignedGen::bwd(0),
            SignedGen::bwd(1),
        ]);
        let c = QCycle::new(qv, gens, Elem::IDENTITY, word).unwrap();
        assert!(matches!(fgl_lift(&c), Err(Error::VoltageInsufficient)));
    }
}

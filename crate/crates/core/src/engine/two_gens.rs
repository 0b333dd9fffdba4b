//! Two generators with the non-centralizing one of image order two: a
//! coprime power cycle, the generalized-Petersen reduction, or the split
//! lift through the squared-partner kernel.

use std::sync::Arc;

use crate::cycles::CycleCertificate;
use crate::error::Result;
use crate::group::Elem;
use crate::quotient::QuotientView;
use crate::subgrp::subgroup_generated;
use crate::toolbox::fgl::fgl_lift;
use crate::words::GenWord;

use super::context::Scene;
use super::util::{bar_cycle_word, certify, oracle_full, quot_cycle, voltage_generates};

pub fn two_gens(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    scene.ensure(gt.element_order(a) == 2, "short generator is an involution")?;

    if !scene.centralizes(b) {
        // both images have order two, so the group is small
        scene.ensure(scene.q_comm.quotient().order() == 4, "tiny abelianization")?;
        return oracle_full(scene, "small-order");
    }
    let n = scene.bar_order(b);
    scene.ensure(n == scene.q_comm.quotient().order() / 2, "partner spans half")?;
    scene.ensure(n % 2 == 0, "even partner order")?;

    if n % scene.comm.p != 1 {
        let ni = n as i64;
        let mut w = GenWord::empty();
        w.0.extend(scene.gens.run(gt.inv(a), 1)?.0);
        w.0.extend(scene.gens.run(b, -(ni - 1))?.0);
        w.0.extend(scene.gens.run(a, 1)?.0);
        w.0.extend(scene.gens.run(b, ni - 1)?.0);
        let c = bar_cycle_word(scene, Elem::IDENTITY, w)?;
        scene.ensure(c.is_hamiltonian(), "power cycle covers")?;
        scene.ensure(voltage_generates(&c), "coprime power voltage generates")?;
        let lifted = fgl_lift(&c)?;
        return certify(scene, lifted, "two-gens:coprime", vec![]);
    }

    // n = 1 mod p: the odd part sits inside <b>
    let b_span = subgroup_generated(gt, &[b]);
    scene.ensure(
        scene.comm.zp.elems().iter().all(|&e| b_span.contains(e)),
        "odd part inside the partner span",
    )?;
    if b_span.contains(scene.comm.z) {
        // the whole graph is a generalized Petersen graph
        return oracle_full(scene, "petersen");
    }

    // split case: lift through <b^2>
    let b2 = gt.mul(b, b);
    let n_sub = subgroup_generated(gt, &[b2]);
    scene.ensure(n_sub.is_normal(), "squared partner spans a normal subgroup")?;
    let qv = Arc::new(QuotientView::new(gt.clone(), n_sub)?);
    scene.ensure(qv.quotient().order() == 8, "order-eight quotient")?;
    let mut w = GenWord::empty();
    for _ in 0..3 {
        w.0.push(scene.gens.signed_for(a)?);
        w.0.push(scene.gens.signed_for(b)?);
    }
    w.0.push(scene.gens.signed_for(a)?);
    w.0.push(scene.gens.signed_for(gt.inv(b))?);
    let c = quot_cycle(scene, &qv, Elem::IDENTITY, w)?;
    scene.ensure(c.is_hamiltonian(), "eight-cycle covers the quotient")?;
    scene.ensure(voltage_generates(&c), "eight-cycle voltage generates the kernel")?;
    let lifted = fgl_lift(&c)?;
    certify(scene, lifted, "two-gens:split-b", vec![])
}

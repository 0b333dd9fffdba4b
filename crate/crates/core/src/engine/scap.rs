//! A generator inside the commutator subgroup: quotient by its span and lift
//! through one of the easy side conditions, or — when it spans the whole
//! commutator subgroup off-center — interleave fibre runs along a quotient
//! cycle whose voltage survives into the halved group.

use std::sync::Arc;

use crate::cycles::CycleCertificate;
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::oracle::Search;
use crate::quotient::QuotientView;
use crate::subgrp::subgroup_generated;
use crate::toolbox::abelian::abelian_ham_cycle;
use crate::toolbox::fgl::fgl_lift;
use crate::toolbox::normal_easy::normal_easy;
use crate::words::GenWord;

use super::context::Scene;
use super::util::{certify, quot_cycle, voltage_generates};

pub fn in_derived(scene: &Scene, s: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let span = subgroup_generated(gt, &[s]);
    scene.ensure(span.is_normal(), "cyclic span of a derived generator is normal")?;
    let mut log: Vec<String> = Vec::new();
    let order = gt.element_order(s);

    if order == 2 || order == scene.comm.p {
        // prime order: the easy lift applies directly
        let qv = Arc::new(QuotientView::new(gt.clone(), span)?);
        let quot = if qv.quotient().is_abelian() {
            let view = crate::view::View::of_quotient(&qv, &scene.gens);
            let all: Vec<usize> = (0..scene.gens.len()).collect();
            abelian_ham_cycle(&view, &all)?
        } else {
            log.push("oracle:prime-commutator".into());
            Search::in_quotient(&qv, &scene.gens).run()?
        };
        let word = normal_easy(gt, &scene.gens, s, &quot, &mut log)?;
        return certify(scene, word, "in-derived:easy", log);
    }

    // the generator spans the whole commutator subgroup
    scene.ensure(order == 2 * scene.comm.p, "derived generator spans everything")?;

    // a quotient cycle whose voltage survives modulo the odd part
    let mut base_cycle: Option<GenWord> = None;
    log.push("oracle:kw-quotient".into());
    for seed in 0..64u64 {
        let search = Search::in_quotient(&scene.q_comm, &scene.gens);
        let search = if seed == 0 { search } else { search.shuffled(seed) };
        let Ok(word) = search.run() else { continue };
        let c = quot_cycle(scene, &scene.q_comm, Elem::IDENTITY, word.clone())?;
        let v = c.voltage()?;
        if scene.comm.z2_part_nontrivial(v) {
            base_cycle = Some(word);
            break;
        }
    }
    let base = base_cycle.ok_or_else(|| {
        Error::NoCycleFound("no abelianization cycle with surviving voltage".into())
    })?;

    // interleave full fibre runs of the generator after every step
    let p = scene.comm.p;
    let sg_s = scene.gens.signed_for(s)?;
    let sg_s_inv = scene.gens.signed_for(gt.inv(s))?;
    let mut candidates: Vec<GenWord> = Vec::new();
    for dir in [sg_s, sg_s_inv] {
        let mut w = GenWord::empty();
        for &step in &base.0 {
            w.0.push(step);
            w.0.extend(vec![dir; p - 1]);
        }
        candidates.push(w);
    }
    if base.len() % 2 == 0 {
        for firstdir in [sg_s, sg_s_inv] {
            let mut w = GenWord::empty();
            let mut dir = firstdir;
            for &step in &base.0 {
                w.0.push(step);
                w.0.extend(vec![dir; p - 1]);
                dir = if dir == sg_s { sg_s_inv } else { sg_s };
            }
            candidates.push(w);
        }
    }
    for w in candidates {
        let Ok(c) = quot_cycle(scene, &scene.q_z2, Elem::IDENTITY, w) else {
            continue;
        };
        if c.is_hamiltonian() && voltage_generates(&c) {
            let lifted = fgl_lift(&c)?;
            return certify(scene, lifted, "in-derived:kw", log);
        }
    }
    // interleave patterns missed: search the halved graph directly
    log.push("search:halved".into());
    let word = Search::in_quotient(&scene.q_z2, &scene.gens).run()?;
    let c = quot_cycle(scene, &scene.q_z2, Elem::IDENTITY, word)?;
    scene.ensure(c.is_hamiltonian(), "halved search cycle covers")?;
    if voltage_generates(&c) {
        let lifted = fgl_lift(&c)?;
        return certify(scene, lifted, "in-derived:kw", log);
    }
    // voltage trivial: look for one that generates
    for seed in 1..64u64 {
        let Ok(word) = Search::in_quotient(&scene.q_z2, &scene.gens)
            .shuffled(seed)
            .run()
        else {
            continue;
        };
        let Ok(c) = quot_cycle(scene, &scene.q_z2, Elem::IDENTITY, word) else { continue };
        if c.is_hamiltonian() && voltage_generates(&c) {
            let lifted = fgl_lift(&c)?;
            return certify(scene, lifted, "in-derived:kw", log);
        }
    }
    Err(Error::NoCycleFound("no halved cycle with generating voltage".into()))
}

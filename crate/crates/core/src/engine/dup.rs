//! The case of two distinct labels with the same image in the
//! abelianization: substitute one for the other inside an explicit cycle
//! until the voltage generates, or reduce through a prime-order kernel when
//! their quotient has prime order.

use crate::cycles::{CycleCertificate, QCycle};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::oracle::Search;
use crate::quotient::QuotientView;
use crate::subgrp::subgroup_generated;
use crate::toolbox::abelian::abelian_ham_cycle;
use crate::toolbox::double_edge::{double_edge, is_prime};
use crate::toolbox::fgl::fgl_lift;
use crate::words::{GenWord, SignedGen};

use super::context::Scene;
use super::util::{bar_cycle_word, certify, oracle_quotient_cycle, voltage_generates};

/// Finds the least pair of distinct labels with equal images, if any.
pub fn find_dup_pair(scene: &Scene) -> Option<(Elem, Elem)> {
    let labels = scene.labels();
    for (i, &u) in labels.iter().enumerate() {
        for &v in &labels[i + 1..] {
            if u != v && scene.q_comm.project(u) == scene.q_comm.project(v) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn dup_case(scene: &Scene, s: Elem, t: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let gamma = gt.mul(gt.inv(s), t);
    scene.ensure(
        scene.comm.gprime.contains(gamma) && !gamma.is_identity(),
        "duplicate pair differs by a commutator element",
    )?;
    let mut log = Vec::new();
    if !scene.comm.generates_gprime(gt, gamma) {
        // gamma has prime order: reduce through its span
        scene.ensure(is_prime(gt.element_order(gamma)), "prime-order gamma")?;
        let n = subgroup_generated(gt, &[gamma]);
        let qv = std::sync::Arc::new(QuotientView::new(gt.clone(), n)?);
        let word = oracle_quotient_cycle(scene, &qv, "oracle:prime-commutator", &mut log)?;
        let c = QCycle::new(qv, scene.gens.clone(), Elem::IDENTITY, word)?;
        let lifted = double_edge(&c, s, t)?;
        return certify(scene, lifted, "dup:prime-gamma", log);
    }
    // gamma generates the whole commutator subgroup
    for (s, t) in [(s, t), (t, s)] {
        let m = scene.bar_order(t);
        let out = if m > 2 {
            deep_dup(scene, s, t, &mut log)
        } else {
            flat_dup(scene, s, t, &mut log)
        };
        match out {
            Ok(cert) => return Ok(cert),
            Err(Error::Exhausted { .. }) | Err(e @ Error::Inconsistency(_)) => return Err(e),
            Err(_) => continue,
        }
    }
    Err(Error::Inconsistency(
        "duplicate-label case found no working substitution".into(),
    ))
}

/// Positions whose step resolves to `t`, in order.
fn t_positions(scene: &Scene, word: &GenWord, t: Elem) -> Vec<usize> {
    word.0
        .iter()
        .enumerate()
        .filter(|(_, &sg)| scene.gens.resolve(sg) == t)
        .map(|(i, _)| i)
        .collect()
}

/// Substitutes `s` at the chosen positions and lifts if the voltage
/// generates.
fn try_substitutions(
    scene: &Scene,
    c: &QCycle,
    positions: &[usize],
    s: Elem,
    preferred: &[Vec<usize>],
    tag: &str,
    log: Vec<String>,
) -> Result<CycleCertificate> {
    let sg_s = scene.gens.signed_for(s)?;
    let mut patterns: Vec<Vec<usize>> = preferred.to_vec();
    // bounded exhaustive fallback over the first few occurrences
    let bits = positions.len().min(12);
    for mask in 1u64..(1 << bits) {
        let subset: Vec<usize> = (0..bits).filter(|b| mask & (1 << b) != 0).collect();
        if !patterns.contains(&subset) {
            patterns.push(subset);
        }
    }
    for pat in patterns {
        if pat.iter().any(|&i| i >= positions.len()) {
            continue;
        }
        let mut word = c.word().clone();
        for &i in &pat {
            word.0[positions[i]] = sg_s;
        }
        let Ok(cand) = bar_cycle_word(scene, c.base(), word) else {
            continue;
        };
        if voltage_generates(&cand) {
            let lifted = fgl_lift(&cand)?;
            return certify(scene, lifted, tag, log);
        }
    }
    Err(Error::PatternNotFound(format!("{tag}: substitutions exhausted")))
}

/// `|tbar| > 2`: start with a fibre cycle whose first `m - 1` steps are `t`.
fn deep_dup(
    scene: &Scene,
    s: Elem,
    t: Elem,
    log: &mut Vec<String>,
) -> Result<CycleCertificate> {
    let m = scene.bar_order(t);
    let qbar = scene.q_comm.quotient();
    let n = qbar.order() / m;
    let s_gen_elem = underlying(scene, s);
    let t_gen_elem = underlying(scene, t);
    let rest: Vec<Elem> = scene.gen_elems_without(&[s_gen_elem, t_gen_elem]);

    let word = if n == 1 {
        scene.gens.run(t, m as i64)?
    } else {
        // inner cycle over the quotient by <tbar>
        let rest_idx = scene.gens_without(&[s_gen_elem, t_gen_elem]);
        let (_qv2, deep_view) = scene.bar_sub_quotient(&[t])?;
        let inner = abelian_ham_cycle(&deep_view, &rest_idx)?;
        scene.ensure(inner.len() == n, "inner cycle covers the t-quotient")?;
        if n % 2 == 0 {
            let sg_t = scene.gens.signed_for(t)?;
            let sg_t_inv = scene.gens.signed_for(scene.gt.inv(t))?;
            let mut w = GenWord(vec![sg_t]);
            for (i, &step) in inner.0.iter().enumerate() {
                if i + 1 == inner.len() {
                    break; // the block construction drops the last label
                }
                if i % 2 == 0 {
                    w.0.extend(vec![sg_t; m - 2]);
                } else {
                    w.0.extend(vec![sg_t_inv; m - 2]);
                }
                w.0.push(step);
            }
            // descending rail: t^{-(m-2)} then t^{-1}, then the reversed rest
            w.0.extend(vec![sg_t_inv; m - 2]);
            w.0.push(sg_t_inv);
            let back: Vec<SignedGen> = inner.0[..inner.len() - 1]
                .iter()
                .rev()
                .map(|sg| sg.flipped())
                .collect();
            w.0.extend(back);
            w
        } else {
            // odd quotient: search with a forced t-rail prefix
            let sg_t = scene.gens.signed_for(t)?;
            let _ = &rest;
            Search::in_quotient(&scene.q_comm, &scene.gens)
                .with_prefix(vec![sg_t; m - 1])
                .run()?
        }
    };
    let c = bar_cycle_word(scene, Elem::IDENTITY, word)?;
    scene.ensure(c.is_hamiltonian(), "rail cycle is hamiltonian in the abelianization")?;
    let positions = t_positions(scene, c.word(), t);
    scene.ensure(positions.len() >= m - 1, "enough substitutable steps")?;
    let preferred: Vec<Vec<usize>> = vec![vec![0], vec![0, 1], vec![0, 2]];
    try_substitutions(scene, &c, &positions, s, &preferred, "dup:deep", log.clone())
}

/// `|tbar| = 2`: alternate `t` with a cycle of the halved quotient.
fn flat_dup(
    scene: &Scene,
    s: Elem,
    t: Elem,
    log: &mut Vec<String>,
) -> Result<CycleCertificate> {
    let qbar = scene.q_comm.quotient();
    let n = qbar.order() / 2;
    if n < 6 {
        // the group is small enough for the catalogued-order results
        log.push("oracle:small-order".into());
        let word = crate::oracle::find_ham_cycle(&scene.gt, &scene.gens, Default::default())?;
        return certify(scene, word, "fallback:small-order", log.clone());
    }
    let s_gen_elem = underlying(scene, s);
    let t_gen_elem = underlying(scene, t);
    let rest_idx = scene.gens_without(&[s_gen_elem, t_gen_elem]);
    let (_qv2, deep_view) = scene.bar_sub_quotient(&[t])?;
    let inner = abelian_ham_cycle(&deep_view, &rest_idx)?;
    scene.ensure(inner.len() == n, "inner cycle covers the halved quotient")?;
    let sg_t = scene.gens.signed_for(t)?;
    let mut w = GenWord::empty();
    for &step in &inner.0 {
        w.0.push(sg_t);
        w.0.push(step);
    }
    let c = bar_cycle_word(scene, Elem::IDENTITY, w)?;
    scene.ensure(c.is_hamiltonian(), "alternating cycle is hamiltonian")?;
    let positions = t_positions(scene, c.word(), t);
    let volt = c.voltage()?;
    let preferred: Vec<Vec<usize>> = if volt.is_identity() {
        vec![vec![0], vec![0, 2]]
    } else {
        vec![vec![0, 2], vec![0]]
    };
    try_substitutions(scene, &c, &positions, s, &preferred, "dup:flat", log.clone())
}

/// The generator element a label came from (the label or its inverse).
fn underlying(scene: &Scene, label: Elem) -> Elem {
    for &e in scene.gens.elems() {
        if e == label || scene.gt.inv(e) == label {
            return e;
        }
    }
    label
}

//! Branches for a generator of image order above two whose partner lies
//! outside its span: rail cycles over the fibres, one local alteration to
//! swing the odd part, and translate ladders when a bridging generator is
//! needed.

use crate::cycles::{CycleCertificate, QCycle};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::oracle::Search;
use crate::toolbox::alteration::{standard_alteration, AlterVariant, AlterationSpec};
use crate::toolbox::connsum::{EdgePick, Ladder};
use crate::toolbox::fgl::fgl_lift;
use crate::words::{GenWord, SignedGen};

use super::context::Scene;
use super::util::{bar_cycle_word, certify, lift_one_of, voltage_generates};

/// Builds the standard fibre-rail cycle: one step of `rail`, then alternating
/// full rail runs interleaved with the inner labels, then the return path.
/// `inner` must be a closed cycle word at the quotient-by-rail level with an
/// even number of steps.
pub fn rail_cycle_word(
    scene: &Scene,
    rail: Elem,
    m: usize,
    inner: &[SignedGen],
) -> Result<GenWord> {
    let n = inner.len();
    scene.ensure(n >= 2 && n % 2 == 0, "rail cycle needs an even inner cycle")?;
    let sg_r = scene.gens.signed_for(rail)?;
    let sg_r_inv = scene.gens.signed_for(scene.gt.inv(rail))?;
    let mut w = GenWord(vec![sg_r]);
    for (i, &step) in inner.iter().enumerate() {
        if i + 1 == n {
            break;
        }
        if i % 2 == 0 {
            w.0.extend(vec![sg_r; m - 2]);
        } else {
            w.0.extend(vec![sg_r_inv; m - 2]);
        }
        w.0.push(step);
    }
    w.0.extend(vec![sg_r_inv; m - 2]);
    w.0.push(sg_r_inv);
    let back: Vec<SignedGen> = inner[..n - 1].iter().rev().map(|sg| sg.flipped()).collect();
    w.0.extend(back);
    Ok(w)
}

pub fn wide_outside(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let c_opt = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&c| scene.z2_in_bracket(a, c));
    match c_opt {
        Some(c) => with_pair(scene, a, b, c),
        None => without_pair(scene, a, b),
    }
}

/// Some generator has a two-part bracket against `a`: a single rail cycle
/// plus one alteration settles it.
fn with_pair(scene: &Scene, a: Elem, b: Elem, c: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a);
    let (qv2, _) = scene.bar_sub_quotient(&[a])?;
    let n = qv2.quotient().order();
    scene.ensure(m % 2 == 0 && n % 2 == 0, "even fibre and base orders")?;

    // hamiltonian cycle of the quotient by <abar> ending with a c-edge and
    // using b on the way
    let inner = inner_cycle_last_c(scene, &[a], c, Some(b))?;
    let word = rail_cycle_word(scene, a, m, &inner.0)?;
    let c0 = bar_cycle_word(scene, Elem::IDENTITY, word)?;
    scene.ensure(c0.is_hamiltonian(), "rail cycle covers the abelianization")?;
    scene.ensure(
        scene.comm.z2_part_nontrivial(c0.voltage()?),
        "rail cycle voltage has a two-part",
    )?;

    // position of the b-step among the inner labels
    let labels: Vec<Elem> = inner.0.iter().map(|&sg| scene.gens.resolve(sg)).collect();
    let k = labels
        .iter()
        .position(|&l| l == b)
        .ok_or_else(|| Error::Inconsistency("inner cycle lost its b-step".into()))?;
    let g = gt.product(&labels[..k]);
    let delta_pos = (k + 1) % 2 == 0; // 1-based position parity
    let a_delta = if delta_pos { gt.inv(a) } else { a };

    let spec = AlterationSpec {
        s: a_delta,
        t: b,
        u: a_delta,
        h: g,
        variant: AlterVariant::EdgeAtHT,
    };
    let c1 = standard_alteration(&c0, &spec)?;
    let lifted = lift_one_of(scene, &[&c0, &c1], "wide-out pair")?;
    certify(scene, lifted, "wide-out:z2pair", vec![])
}

/// Ham cycle of the quotient by the given fibre generators whose final edge
/// is labelled `c` or `c^{-1}`, optionally containing `want` strictly before
/// the end.
fn inner_cycle_last_c(
    scene: &Scene,
    mods: &[Elem],
    c: Elem,
    want: Option<Elem>,
) -> Result<GenWord> {
    let (qv2, view) = scene.bar_sub_quotient(mods)?;
    let q2 = qv2.quotient();
    for c_lab in [c, scene.gt.inv(c)] {
        let Some(step) = view.step(scene.gens.signed_for(c_lab)?) else {
            continue;
        };
        if step.is_identity() {
            continue;
        }
        // edge into the identity labelled c_lab: source is its inverse coset
        let src = q2.inv(step);
        let search = Search::in_view(&view).require_edge(src, step)?;
        if let Some(wv) = want {
            // try forcing a w-edge somewhere; iterate over candidate sources
            let wstep = view.step(scene.gens.signed_for(wv)?);
            if let Some(ws) = wstep.filter(|s| !s.is_identity()) {
                let mut found = None;
                for cand in q2.elems() {
                    if cand == src {
                        continue;
                    }
                    let Ok(s2) = Search::in_view(&view)
                        .require_edge(src, step)
                        .and_then(|s| s.require_edge(cand, ws))
                    else {
                        continue;
                    };
                    if let Ok(w) = s2.run() {
                        found = Some(w);
                        break;
                    }
                }
                if let Some(w) = found {
                    return Ok(w);
                }
                continue;
            }
        }
        if let Ok(w) = search.run() {
            return Ok(w);
        }
    }
    Err(Error::NoCycleFound("no inner cycle with the required edges".into()))
}

/// No generator pairs with `a`: borrow a two-part bracket from a `(c, d)`
/// pair and ladder the `d`-direction across.
fn without_pair(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    // least pair with a two-part bracket, avoiding d = b when possible
    let mut pair = None;
    'outer: for &c in scene.gens.elems() {
        for &d in scene.gens.elems() {
            if c != d && scene.z2_in_bracket(c, d) {
                pair = Some((c, d));
                break 'outer;
            }
        }
    }
    let (mut c, mut d) = pair.ok_or_else(|| {
        Error::Inconsistency("no generator pair with a two-part bracket".into())
    })?;
    if d == b {
        std::mem::swap(&mut c, &mut d);
    }
    scene.ensure(d != b, "bridge generator differs from b")?;
    scene.ensure(a != c && a != d, "bracket pair avoids a")?;

    let m = scene.bar_order(a);
    let n = scene.bar_index(&[a]) / scene.bar_index(&[a, d]);
    let r = scene.q_comm.quotient().order() / (m * n);
    scene.ensure(r > 1, "bridge leaves room to ladder")?;
    scene.ensure(n % 2 == 0, "even d-span")?;

    // protected patterns for the later alteration
    let abar = scene.q_comm.project(a);
    let bbar = scene.q_comm.project(b);
    let qb = scene.q_comm.quotient();
    let a_inv2 = qb.mul(qb.inv(abar), qb.inv(abar));
    let protected = vec![
        (bbar, gt.inv(b)),
        (a_inv2, a),
        (qb.inv(abar), b),
        (qb.mul(qb.inv(abar), bbar), gt.inv(a)),
    ];

    let spec = AlterationSpec {
        s: a,
        t: b,
        u: a,
        h: Elem::IDENTITY,
        variant: AlterVariant::EdgeAtHT,
    };

    if n > 2 {
        // inner cycle of <span of S minus d> / <abar> starting with b and
        // meeting c in the middle
        let inner = inner_for_tall(scene, a, b, c, d, n)?;
        let word = rail_cycle_word(scene, a, m, &inner.0)?;
        let c0 = bar_cycle_word(scene, Elem::IDENTITY, word)?;

        let k = inner
            .0
            .iter()
            .map(|&sg| scene.gens.resolve(sg))
            .position(|l| l == c || l == gt.inv(c))
            .unwrap_or(0);
        let labels: Vec<Elem> = inner.0.iter().map(|&sg| scene.gens.resolve(sg)).collect();
        let g = gt.product(&labels[..=k]);
        let first_candidates = vec![
            EdgePick { labels: vec![], exact: Some((scene.q_comm.project(Elem::IDENTITY), a)) },
            EdgePick { labels: vec![], exact: Some((scene.q_comm.project(g), gt.inv(labels[k]))) },
        ];
        return ladder_and_alter(scene, &c0, d, r, first_candidates, protected, spec, "wide-out:tall");
    }

    // n == 2 forces S = {a, b, d}
    scene.ensure(scene.gens.len() == 3, "three generators in the tight case")?;
    scene.ensure(scene.z2_in_bracket(b, d), "b carries the two-part bracket")?;

    if r > 2 {
        let mut w = GenWord::empty();
        w.0.extend(scene.gens.run(a, m as i64 - 1)?.0);
        w.0.push(scene.gens.signed_for(b)?);
        w.0.extend(scene.gens.run(a, -(m as i64 - 1))?.0);
        w.0.push(scene.gens.signed_for(gt.inv(b))?);
        let c0 = bar_cycle_word(scene, Elem::IDENTITY, w)?;
        let first_candidates = vec![EdgePick {
            labels: vec![],
            exact: Some((scene.q_comm.project(Elem::IDENTITY), a)),
        }];
        let mut with_second = Vec::new();
        for t2 in [a, b] {
            with_second.push((first_candidates.clone(), Some(t2)));
        }
        for (firsts, second) in with_second {
            let out = ladder_and_alter_second(
                scene, &c0, d, r, firsts, second, protected.clone(), spec, "wide-out:flat",
            );
            if out.is_ok() {
                return out;
            }
        }
        return Err(Error::Inconsistency("tight ladder found no working pair".into()));
    }

    // n = r = 2
    tight_cases(scene, a, b, d)
}

fn inner_for_tall(
    scene: &Scene,
    a: Elem,
    b: Elem,
    c: Elem,
    d: Elem,
    n: usize,
) -> Result<GenWord> {
    let gt = &scene.gt;
    let (qv2, view) = scene.bar_sub_quotient(&[a])?;
    let q2 = qv2.quotient();
    // restrict to the span of everything except d
    let others: Vec<Elem> = scene.gen_elems_without(&[d]);
    let imgs: Vec<Elem> = others
        .iter()
        .map(|&e| qv2.project(scene.q_comm.project(e)))
        .collect();
    let span = crate::subgrp::subgroup_generated(q2, &imgs);
    scene.ensure(span.order() == n, "inner span matches the expected order")?;
    let mut allowed = vec![false; q2.order()];
    for &e in span.elems() {
        allowed[e.idx()] = true;
    }
    let sg_b = scene.gens.signed_for(b)?;
    for c_lab in [c, gt.inv(c)] {
        let Some(cstep) = view.step(scene.gens.signed_for(c_lab)?) else { continue };
        if cstep.is_identity() {
            continue;
        }
        for cand in q2.elems() {
            if !allowed[cand.idx()] {
                continue;
            }
            let Ok(search) = Search::in_view(&view)
                .restrict(allowed.clone())
                .with_prefix(vec![sg_b])
                .require_edge(cand, cstep)
            else {
                continue;
            };
            if let Ok(w) = search.run() {
                // the c-edge must be strictly inside
                let labels: Vec<Elem> = w.0.iter().map(|&sg| scene.gens.resolve(sg)).collect();
                if let Some(k) = labels.iter().position(|&l| l == c_lab) {
                    if k != 0 && k + 1 != labels.len() {
                        return Ok(w);
                    }
                }
            }
        }
    }
    Err(Error::NoCycleFound("no inner cycle for the tall case".into()))
}

#[allow(clippy::too_many_arguments)]
fn ladder_and_alter(
    scene: &Scene,
    c0: &QCycle,
    d: Elem,
    r: usize,
    first_candidates: Vec<EdgePick>,
    protected: Vec<(Elem, Elem)>,
    spec: AlterationSpec,
    tag: &str,
) -> Result<CycleCertificate> {
    for first in first_candidates {
        let mut ladder = Ladder::new(c0, vec![d; r - 1]);
        ladder.first = first;
        ladder.protected = protected.clone();
        let Ok(cc) = ladder.run() else { continue };
        if !cc.is_hamiltonian() {
            continue;
        }
        let Ok(v) = cc.voltage() else { continue };
        if !scene.comm.z2_part_nontrivial(v) {
            continue;
        }
        let Ok(altered) = standard_alteration(&cc, &spec) else { continue };
        if let Ok(lifted) = lift_one_of(scene, &[&cc, &altered], tag) {
            return certify(scene, lifted, tag, vec![]);
        }
    }
    Err(Error::Inconsistency(format!("{tag}: ladder candidates exhausted")))
}

#[allow(clippy::too_many_arguments)]
fn ladder_and_alter_second(
    scene: &Scene,
    c0: &QCycle,
    d: Elem,
    r: usize,
    first_candidates: Vec<EdgePick>,
    second_label: Option<Elem>,
    protected: Vec<(Elem, Elem)>,
    spec: AlterationSpec,
    tag: &str,
) -> Result<CycleCertificate> {
    for first in first_candidates {
        let mut ladder = Ladder::new(c0, vec![d; r - 1]);
        ladder.first = first;
        ladder.protected = protected.clone();
        if let Some(lab) = second_label {
            ladder.picks = vec![(
                1,
                EdgePick {
                    labels: vec![lab, scene.gt.inv(lab)],
                    exact: None,
                },
            )];
        }
        let Ok(cc) = ladder.run() else { continue };
        if !cc.is_hamiltonian() {
            continue;
        }
        let Ok(v) = cc.voltage() else { continue };
        if !scene.comm.z2_part_nontrivial(v) {
            continue;
        }
        let Ok(altered) = standard_alteration(&cc, &spec) else { continue };
        if let Ok(lifted) = lift_one_of(scene, &[&cc, &altered], tag) {
            return certify(scene, lifted, tag, vec![]);
        }
    }
    Err(Error::Inconsistency(format!("{tag}: ladder candidates exhausted")))
}

/// The fully pinned case: three generators, both indices two.
fn tight_cases(scene: &Scene, a: Elem, b: Elem, d: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a);
    if m != 3 {
        scene.ensure(m >= 4, "image order at least four")?;
        let labels = [
            vec![(d, 1i64), (b, 1), (a, 1), (b, -1), (d, -1)],
            vec![(a, m as i64 - 2), (d, 1), (a, -(m as i64 - 3)), (b, 1)],
            vec![(a, m as i64 - 3), (d, -1), (a, -(m as i64 - 1)), (b, -1)],
        ];
        let mut w = GenWord::empty();
        for seg in labels.iter().flatten() {
            w.0.extend(scene.gens.run(seg.0, seg.1)?.0);
        }
        let c0 = bar_cycle_word(scene, Elem::IDENTITY, w)?;
        scene.ensure(c0.is_hamiltonian(), "pinned twelve-step cycle covers")?;
        scene.ensure(
            scene.comm.z2_part_nontrivial(c0.voltage()?),
            "pinned cycle voltage has a two-part",
        )?;
        let spec = AlterationSpec {
            s: gt.inv(a),
            t: b,
            u: gt.inv(a),
            h: gt.mul(d, a),
            variant: AlterVariant::EdgeAtHT,
        };
        let c1 = standard_alteration(&c0, &spec)?;
        let lifted = lift_one_of(scene, &[&c0, &c1], "wide-out tight")?;
        return certify(scene, lifted, "wide-out:tight", vec![]);
    }

    // m = 3
    if !scene.centralizes(d) {
        return tri_skew(scene, a, b, d, "wide-out:tri-skew");
    }
    if !scene.comm.zp_part_nontrivial(gt.commutator(b, d)) {
        return tri_two_part(scene, a, b, d);
    }
    if gt.commutator(a, d).is_identity() {
        return super::dispatch::durnberger_escape(scene, d, a, "wide-out:tri-durnberger");
    }
    scene.ensure(
        scene.comm.zp.contains(gt.commutator(a, d)),
        "odd-part-only bracket before swapping roles",
    )?;
    scene.ensure(!scene.centralizes(b), "b ready for the skew role")?;
    tri_skew(scene, a, d, b, "wide-out:tri-swap")
}

fn tri_skew(scene: &Scene, a: Elem, b: Elem, d: Elem, tag: &str) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    for aa in [a, gt.inv(a)] {
        let mut w = GenWord::empty();
        for (e, k) in [
            (aa, -2i64),
            (b, -1),
            (aa, 2),
            (d, -1),
            (aa, -2),
            (b, 1),
            (aa, 2),
            (d, 1),
        ] {
            w.0.extend(scene.gens.run(e, k)?.0);
        }
        let Ok(c0) = bar_cycle_word(scene, Elem::IDENTITY, w) else { continue };
        if !c0.is_hamiltonian() || !voltage_generates(&c0) {
            continue;
        }
        let lifted = fgl_lift(&c0)?;
        return certify(scene, lifted, tag, vec![]);
    }
    Err(Error::Inconsistency("skew twelve-cycle never generated".into()))
}

/// `[b, d]` lies in the two-part: work one level down, over the halved group.
fn tri_two_part(scene: &Scene, a: Elem, b: Elem, d: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let qv = &scene.q_z2;
    let qk = qv.quotient();
    // hamiltonian cycle of the halved <a, b> subgraph
    let span = crate::subgrp::subgroup_generated(
        gt,
        &[a, b, scene.comm.z],
    );
    let mut allowed = vec![false; qk.order()];
    for &e in span.elems() {
        allowed[qv.project(e).idx()] = true;
    }
    let mut log = Vec::new();
    log.push("oracle:prime-commutator".into());
    let sub = Search::in_quotient(qv, &scene.gens)
        .restrict(allowed)
        .run()?;
    // extract a path from the identity to the image of b
    let l_path = path_with_displacement(scene, qv, &sub, b)?;
    for (mid, last) in [(gt.inv(d), d), (d, gt.inv(d))] {
        let mut w = l_path.reversed();
        w.0.push(scene.gens.signed_for(mid)?);
        w.0.extend_from_slice(&l_path.0);
        w.0.push(scene.gens.signed_for(last)?);
        let Ok(c) = crate::cycles::QCycle::new(
            qv.clone(),
            scene.gens.clone(),
            Elem::IDENTITY,
            w,
        ) else {
            continue;
        };
        if !c.is_hamiltonian() || !voltage_generates(&c) {
            continue;
        }
        let lifted = fgl_lift(&c)?;
        return certify(scene, lifted, "wide-out:tri-z2", log);
    }
    Err(Error::Inconsistency("halved pair cycle never closed".into()))
}

/// Rotates/reverses a cycle word into a path whose displacement is `delta`.
pub fn path_with_displacement(
    scene: &Scene,
    qv: &std::sync::Arc<crate::quotient::QuotientView>,
    cycle: &GenWord,
    delta: Elem,
) -> Result<GenWord> {
    let want = qv.project(delta);
    let q = qv.quotient();
    let labels: Vec<Elem> = cycle
        .0
        .iter()
        .map(|&sg| qv.project(scene.gens.resolve(sg)))
        .collect();
    let inv = q.inv(want);
    if let Some(pos) = labels.iter().position(|&l| l == inv) {
        let mut w: Vec<SignedGen> = cycle.0[pos + 1..].to_vec();
        w.extend_from_slice(&cycle.0[..pos]);
        return Ok(GenWord(w));
    }
    if labels.contains(&want) {
        return path_with_displacement(scene, qv, &cycle.reversed(), delta);
    }
    Err(Error::PatternNotFound("no edge with the wanted displacement".into()))
}

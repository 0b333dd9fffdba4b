//! Four or more generators, every non-centralizing image of order two. The
//! subcases: all generators inverting, a generator with a mixed bracket
//! against `a`, a centralizing partner, and the residual configurations
//! ending in the central-column grid.

use std::sync::Arc;

use crate::cycles::{CycleCertificate, QCycle};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::oracle::Search;
use crate::quotient::QuotientView;
use crate::subgrp::{commutator_subgroup, subgroup_generated};
use crate::toolbox::alteration::{standard_alteration, AlterVariant, AlterationSpec};
use crate::toolbox::fgl::fgl_lift;
use crate::toolbox::usual::{shared_edge, usual_conn_sum, BarCtx};
use crate::view::View;
use crate::words::{GenWord, SignedGen};

use super::context::Scene;
use super::util::{bar_cycle_word, certify, lift_one_of, quot_cycle, voltage_generates};

fn bar_ctx(scene: &Scene) -> BarCtx<'_> {
    BarCtx {
        gt: &scene.gt,
        gens: &scene.gens,
        comm: &scene.comm,
        q_comm: &scene.q_comm,
    }
}

fn word_of_runs(scene: &Scene, runs: &[(Elem, i64)]) -> Result<GenWord> {
    let mut w = GenWord::empty();
    for &(e, k) in runs {
        w.0.extend(scene.gens.run(e, k)?.0);
    }
    Ok(w)
}

pub fn many_gens(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    scene.ensure(
        scene.bar_index(&[a, b]) >= 4,
        "outside generators leave a full quotient layer",
    )?;

    if scene.gens.elems().iter().all(|&s| !scene.centralizes(s)) {
        return all_inverting(scene, a, b);
    }

    // a mixed bracket against the short generator
    let s_mixed = scene.gens.elems().iter().copied().find(|&s| {
        scene.comm.z2_part_nontrivial(gt.commutator(a, s))
    });
    if let Some(s) = s_mixed {
        let s0: Vec<Elem> = scene.gen_elems_without(&[a]);
        let h0 = subgroup_generated(gt, &s0);
        let (h0_table, _) = h0.as_group(gt, "h0")?;
        let h0_comm_has_zp = {
            let cz = commutator_subgroup(&h0_table);
            // the odd part is inside the sub-commutator iff its order is
            // divisible by p
            cz.order() % scene.comm.p == 0
        };
        if s == b || scene.centralizes(b) || h0_comm_has_zp {
            if !h0_comm_has_zp {
                return skew_flat(scene, a, s);
            }
            return skew_deep(scene, a, s);
        }
    }

    if scene.centralizes(b) {
        return b_central(scene, a, b);
    }
    residual(scene, a, b)
}

/// Every generator inverts the commutator subgroup.
fn all_inverting(scene: &Scene, a: Elem, _b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    // a commuting pair lets the subgroup lift finish immediately
    for &s in scene.gens.elems() {
        for &t in scene.gens.elems() {
            if s != t && gt.commutes(s, t) {
                let others = scene.gen_elems_without(&[s]);
                let h = subgroup_generated(gt, &others);
                if h.is_normal() {
                    if let Ok(cert) =
                        super::dispatch::durnberger_escape(scene, s, t, "many-gens:durnberger")
                    {
                        return Ok(cert);
                    }
                }
            }
        }
    }

    let others: Vec<Elem> = scene.gen_elems_without(&[a]);
    scene.ensure(others.len() >= 3, "enough inverting partners")?;

    // choose roles so that the transform shift escapes the involution
    let mut assignments: Vec<(Elem, Elem, Elem)> = Vec::new();
    for &bb in &others {
        for &cc in &others {
            for &dd in &others {
                if bb != cc && bb != dd && cc != dd {
                    assignments.push((bb, cc, dd));
                }
            }
        }
    }

    if scene.gens.len() == 4 {
        return inverting_four(scene, a, &assignments);
    }

    // five or more: assemble the sixteen-cycle pair and ladder it across
    for &(bb, cc, dd) in &assignments {
        if !scene.comm.z2_part_nontrivial(gt.commutator(bb, dd)) {
            continue;
        }
        let gamma = gt.mul(gt.commutator(a, bb), gt.commutator(a, cc));
        if scene.comm.z2.contains(gamma) {
            continue;
        }
        let Ok((c_cycle, c_alt)) = sixteen_pair(scene, a, bb, cc, dd) else {
            continue;
        };
        // a bracket with a two-part from outside the four chosen roles
        let s0 = vec![a, bb, cc, dd];
        for &s_out in scene.gens.elems() {
            if s0.contains(&s_out) {
                continue;
            }
            for &t_par in scene.gens.elems() {
                if t_par == s_out || !scene.comm.z2_part_nontrivial(gt.commutator(s_out, t_par)) {
                    continue;
                }
                let Some((src, lab)) = shared_edge(&c_cycle, &c_alt, &[s_out, gt.inv(s_out)])
                else {
                    continue;
                };
                let ctx = bar_ctx(scene);
                let mut log = Vec::new();
                if let Ok(lifted) = usual_conn_sum(
                    &ctx, &s0, s_out, lab, t_par, &c_cycle, &c_alt, src, &mut log, 0,
                ) {
                    return certify(scene, lifted, "many-gens:inv-big", log);
                }
            }
        }
    }
    Err(Error::Inconsistency("inverting family found no ladder".into()))
}

/// The sixteen-step base cycle over four inverting generators and its
/// double-transform partner.
fn sixteen_pair(
    scene: &Scene,
    a: Elem,
    bb: Elem,
    cc: Elem,
    dd: Elem,
) -> Result<(QCycle, QCycle)> {
    let gt = &scene.gt;
    let runs = [
        (cc, 1i64),
        (a, 1),
        (cc, 1),
        (bb, 1),
        (cc, 1),
        (a, 1),
        (cc, 1),
        (dd, 1),
        (cc, 1),
        (a, 1),
        (cc, 1),
        (bb, 1),
        (cc, 1),
        (a, 1),
        (cc, 1),
        (dd, 1),
    ];
    let w = word_of_runs(scene, &runs)?;
    let c0 = bar_cycle_word(scene, Elem::IDENTITY, w)?;
    let spec1 = AlterationSpec {
        s: cc,
        t: a,
        u: bb,
        h: gt.mul(bb, cc),
        variant: AlterVariant::EdgeAtHT,
    };
    let c1 = standard_alteration(&c0, &spec1)?;
    let spec2 = AlterationSpec {
        s: cc,
        t: a,
        u: bb,
        h: gt.mul(cc, dd),
        variant: AlterVariant::EdgeAtHT,
    };
    let c2 = standard_alteration(&c1, &spec2)?;
    Ok((c0, c2))
}

/// Exactly four generators, all inverting.
fn inverting_four(
    scene: &Scene,
    a: Elem,
    assignments: &[(Elem, Elem, Elem)],
) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    for &(bb, cc, dd) in assignments {
        if !scene.comm.z2_part_nontrivial(gt.commutator(bb, dd)) {
            continue;
        }
        let Ok(w) = word_of_runs(
            scene,
            &[
                (cc, 1),
                (a, 1),
                (cc, 1),
                (bb, 1),
                (cc, 1),
                (a, 1),
                (cc, 1),
                (dd, 1),
                (cc, 1),
                (a, 1),
                (cc, 1),
                (bb, 1),
                (cc, 1),
                (a, 1),
                (cc, 1),
                (dd, 1),
            ],
        ) else {
            continue;
        };
        let Ok(c0) = bar_cycle_word(scene, Elem::IDENTITY, w) else { continue };
        if !c0.is_hamiltonian() {
            continue;
        }
        if voltage_generates(&c0) {
            let lifted = fgl_lift(&c0)?;
            return certify(scene, lifted, "many-gens:inv-four", vec![]);
        }
        let gamma = gt.mul(gt.commutator(a, bb), gt.commutator(a, cc));
        if !scene.comm.z2.contains(gamma) {
            if let Ok((base, alt)) = sixteen_pair(scene, a, bb, cc, dd) {
                if let Ok(lifted) = lift_one_of(scene, &[&base, &alt], "inverting four") {
                    return certify(scene, lifted, "many-gens:inv-four", vec![]);
                }
            }
        }
    }
    // every shift collapsed into the involution: the swapped cycle works for
    // the remaining prime
    scene.ensure(scene.comm.p == 3, "collapsed shifts force the smallest prime")?;
    for &(bb, cc, dd) in assignments {
        let gamma_star = gt.mul(gt.commutator(bb, a), gt.commutator(bb, dd));
        if gt.element_order(gamma_star) != 2 * scene.comm.p {
            continue;
        }
        let Ok(w) = word_of_runs(
            scene,
            &[
                (dd, 1),
                (bb, 1),
                (dd, 1),
                (a, 1),
                (dd, 1),
                (bb, 1),
                (dd, 1),
                (cc, 1),
                (dd, 1),
                (bb, 1),
                (dd, 1),
                (a, 1),
                (dd, 1),
                (bb, 1),
                (dd, 1),
                (cc, 1),
            ],
        ) else {
            continue;
        };
        let Ok(c_star) = bar_cycle_word(scene, Elem::IDENTITY, w) else { continue };
        if !c_star.is_hamiltonian() {
            continue;
        }
        let spec = AlterationSpec {
            s: dd,
            t: bb,
            u: a,
            h: gt.mul(a, dd),
            variant: AlterVariant::EdgeAtHT,
        };
        let Ok(c_alt) = standard_alteration(&c_star, &spec) else { continue };
        if let Ok(lifted) = lift_one_of(scene, &[&c_alt, &c_star], "swapped sixteen") {
            return certify(scene, lifted, "many-gens:inv-four-p3", vec![]);
        }
    }
    Err(Error::Inconsistency("inverting four-set exhausted".into()))
}

/// Mixed bracket against `a`, subgroup commutators missing the odd part:
/// a product-controlled path conjugated by `a`.
fn skew_flat(scene: &Scene, a: Elem, s: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let s0: Vec<Elem> = scene.gen_elems_without(&[a]);
    // the endpoint target
    let g = if scene.comm.z2_part_nontrivial(gt.commutator(s, a)) {
        s
    } else {
        let b = s0
            .iter()
            .copied()
            .find(|&x| scene.zp_in_bracket(a, x))
            .ok_or_else(|| Error::Inconsistency("no odd partner for the target".into()))?;
        gt.mul(s, gt.mul(b, b))
    };
    scene.ensure(
        scene.comm.generates_gprime(gt, gt.commutator(g, a)),
        "target bracket generates",
    )?;

    // groups: H = <S0, z>, its halves
    let mut h_gens = s0.clone();
    h_gens.push(scene.comm.z);
    let h_sub = subgroup_generated(gt, &h_gens);
    let (h_table, to_parent) = h_sub.as_group(gt, "h")?;
    let h_table = Arc::new(h_table);
    let mut to_sub = vec![usize::MAX; gt.order()];
    for (i, &e) in to_parent.iter().enumerate() {
        to_sub[e.idx()] = i;
    }
    let sub_of = |e: Elem| -> Option<Elem> {
        let i = to_sub[e.idx()];
        (i != usize::MAX).then_some(Elem(i as u16))
    };
    // product-control quotient: H / <z>
    let z_sub = subgroup_generated(&h_table, &[sub_of(scene.comm.z).unwrap()]);
    let q2 = Arc::new(QuotientView::new(h_table.clone(), z_sub)?);
    // geometry quotient: H / (H n G')
    let gp_in_h: Vec<Elem> = scene
        .comm
        .gprime
        .elems()
        .iter()
        .filter_map(|&e| sub_of(e))
        .collect();
    let gp_sub = subgroup_generated(&h_table, &gp_in_h);
    let qg = Arc::new(QuotientView::new(h_table.clone(), gp_sub)?);

    let geom_view = View::new(qg.quotient().clone(), &scene.gens, |_, e| {
        sub_of(e).map(|x| qg.project(x))
    });
    let prod_view = View::new(q2.quotient().clone(), &scene.gens, |_, e| {
        sub_of(e).map(|x| q2.project(x))
    });
    let g_prod = prod_view
        .signed_for(q2.project(sub_of(g).ok_or_else(|| {
            Error::Inconsistency("target escapes the subgroup".into())
        })?))
        .map(|_| ());
    let _ = g_prod;
    let g_in_prod = q2.project(sub_of(g).unwrap());

    // choose the two grid generators and the exponents
    let s0_idx: Vec<usize> = scene.gens_without(&[a]);
    for &xi in &s0_idx {
        for &yi in &s0_idx {
            if xi == yi {
                continue;
            }
            let Some(xg) = geom_view.step(SignedGen::fwd(xi)) else { continue };
            let Some(yg) = geom_view.step(SignedGen::fwd(yi)) else { continue };
            let k = qg.quotient().element_order(xg);
            if k < 2 {
                continue;
            }
            let span_x = subgroup_generated(qg.quotient(), &[xg]);
            let span_xy = subgroup_generated(qg.quotient(), &[xg, yg]);
            let l = span_xy.order() / span_x.order();
            if l < 2 || (k * l) % 2 != 0 {
                continue;
            }
            let xp = prod_view.step(SignedGen::fwd(xi)).unwrap_or(Elem::IDENTITY);
            let yp = prod_view.step(SignedGen::fwd(yi)).unwrap_or(Elem::IDENTITY);
            for p_exp in 0..k {
                for q_exp in 0..l {
                    if (p_exp + q_exp) % 2 != 1 {
                        continue;
                    }
                    let got = q2.quotient().mul(
                        q2.quotient().pow(xp, p_exp as i64),
                        q2.quotient().pow(yp, q_exp as i64),
                    );
                    if got != g_in_prod {
                        continue;
                    }
                    let rest: Vec<usize> = s0_idx
                        .iter()
                        .copied()
                        .filter(|&i| i != xi && i != yi)
                        .collect();
                    let Ok(path) = crate::toolbox::abelian::path_with_product(
                        &geom_view,
                        xi,
                        yi,
                        &rest,
                        k,
                        l,
                        (p_exp, q_exp),
                    ) else {
                        continue;
                    };
                    // C = (L^{-1}, a, L, a)
                    let mut w = path.reversed();
                    w.0.push(scene.gens.signed_for(a)?);
                    w.0.extend_from_slice(&path.0);
                    w.0.push(scene.gens.signed_for(a)?);
                    let Ok(cyc) = bar_cycle_word(scene, Elem::IDENTITY, w) else {
                        continue;
                    };
                    if !cyc.is_hamiltonian() || !voltage_generates(&cyc) {
                        continue;
                    }
                    let lifted = fgl_lift(&cyc)?;
                    return certify(scene, lifted, "many-gens:skew-flat", vec![]);
                }
            }
        }
    }
    Err(Error::Inconsistency("no product-controlled path materialized".into()))
}

/// Mixed bracket against `a` with the odd part inside the subgroup
/// commutators: the ascending-span alteration on a constrained cycle.
fn skew_deep(scene: &Scene, a: Elem, s: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let s0: Vec<Elem> = scene.gen_elems_without(&[a]);
    let qb = scene.q_comm.quotient();
    let span0 = {
        let imgs: Vec<Elem> = s0.iter().map(|&e| scene.q_comm.project(e)).collect();
        subgroup_generated(qb, &imgs)
    };
    scene.ensure(
        span0.order() * 2 == qb.order(),
        "subgroup fills half the abelianization",
    )?;
    let mut allowed = vec![false; qb.order()];
    for &e in span0.elems() {
        allowed[e.idx()] = true;
    }

    let mut labels: Vec<Elem> = Vec::new();
    for &e in &s0 {
        labels.push(e);
        let i = gt.inv(e);
        if !labels.contains(&i) {
            labels.push(i);
        }
    }
    let big = qb.order() > 16;
    for &w_lab in &labels {
        for &x_lab in &labels {
            for &y_lab in &labels {
                let ws = subgroup_generated(qb, &[scene.q_comm.project(w_lab)]);
                let wx = subgroup_generated(
                    qb,
                    &[scene.q_comm.project(w_lab), scene.q_comm.project(x_lab)],
                );
                let wxy = subgroup_generated(
                    qb,
                    &[
                        scene.q_comm.project(w_lab),
                        scene.q_comm.project(x_lab),
                        scene.q_comm.project(y_lab),
                    ],
                );
                if !(ws.order() < wx.order() && wx.order() < wxy.order()) {
                    continue;
                }
                if !big && (x_lab == s || x_lab == gt.inv(s)) {
                    continue;
                }
                // the transform shift must move the odd part
                let shift = gt.mul(
                    gt.commutator(gt.inv(x_lab), y_lab),
                    gt.conjugate(gt.commutator(w_lab, gt.inv(x_lab)), y_lab),
                );
                if !scene.comm.zp_part_nontrivial(shift) {
                    continue;
                }
                if let Ok(cert) =
                    skew_deep_with(scene, a, s, &s0, &allowed, w_lab, x_lab, y_lab)
                {
                    return Ok(cert);
                }
            }
        }
    }
    Err(Error::Inconsistency("no ascending triple worked".into()))
}

#[allow(clippy::too_many_arguments)]
fn skew_deep_with(
    scene: &Scene,
    a: Elem,
    s: Elem,
    _s0: &[Elem],
    allowed: &[bool],
    w_lab: Elem,
    x_lab: Elem,
    y_lab: Elem,
) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let qb = scene.q_comm.quotient();
    let pr = |e: Elem| scene.q_comm.project(e);
    for eps in [1i64, -1] {
        let s_eps = gt.pow(s, eps);
        let s_edge_src = pr(s_eps);
        let s_edge_lab = gt.inv(s_eps);
        if !allowed[s_edge_src.idx()] {
            continue;
        }
        for h_coset in qb.elems() {
            if !allowed[h_coset.idx()] {
                continue;
            }
            let h = scene.q_comm.section(h_coset);
            let path_src = qb.mul(h_coset, qb.inv(qb.mul(pr(w_lab), pr(y_lab))));
            let edge_src = qb.mul(h_coset, pr(x_lab));
            // keep the s-edge clear of the surgery zone
            let spec = AlterationSpec {
                s: w_lab,
                t: x_lab,
                u: y_lab,
                h,
                variant: AlterVariant::EdgeAtHT,
            };
            let mut search = Search::in_quotient(&scene.q_comm, &scene.gens)
                .restrict(allowed.to_vec());
            search = match search
                .require_path(path_src, &[w_lab, x_lab, gt.inv(w_lab)].map(|e| pr(e)))
                .and_then(|s2| s2.require_edge(edge_src, pr(gt.inv(x_lab))))
                .and_then(|s2| s2.require_edge(s_edge_src, pr(s_edge_lab)))
            {
                Ok(s2) => s2,
                Err(_) => continue,
            };
            let Ok(word) = search.run() else { continue };
            let Ok(c0) = QCycle::new(
                scene.q_comm.clone(),
                scene.gens.clone(),
                Elem::IDENTITY,
                word,
            ) else {
                continue;
            };
            let Ok(c1) = standard_alteration(&c0, &spec) else { continue };
            // drop the s-edge from both, conjugate by a, and compare
            let mut outs: Vec<QCycle> = Vec::new();
            for ck in [&c0, &c1] {
                let Some(pos) = ck.find_edge(s_edge_src, s_edge_lab) else { continue };
                let rot = ck.rotated((pos + 1) % ck.len());
                let Ok(path) = rot.word().drop_last() else { continue };
                let mut w = path.clone();
                w.0.push(scene.gens.signed_for(a)?);
                w.0.extend(path.reversed().0);
                w.0.push(scene.gens.signed_for(a)?);
                if let Ok(cyc) = bar_cycle_word(scene, Elem::IDENTITY, w) {
                    if cyc.is_hamiltonian() {
                        outs.push(cyc);
                    }
                }
            }
            let refs: Vec<&QCycle> = outs.iter().collect();
            if let Ok(lifted) = lift_one_of(scene, &refs, "ascending pair") {
                return certify(scene, lifted, "many-gens:skew-deep", vec![]);
            }
        }
    }
    Err(Error::PatternNotFound("ascending survey found nothing".into()))
}

/// The partner centralizes the commutator subgroup.
fn b_central(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let c_opt = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&c| scene.comm.z2_part_nontrivial(gt.commutator(c, b)));
    if let Some(c) = c_opt {
        return b_central_skew(scene, a, b, c);
    }
    b_central_flat(scene, a, b)
}

fn b_central_skew(scene: &Scene, a: Elem, b_in: Elem, c: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    scene.ensure(c != a, "bracket partner differs from the short generator")?;
    let (qv2, _) = scene.bar_sub_quotient(&[a])?;
    let q2 = qv2.quotient();
    let pr2 = |e: Elem| qv2.project(scene.q_comm.project(e));

    for b in [b_in, gt.inv(b_in)] {
        let target = pr2(b);
        // path from the identity to the b-image, entering on c and leaving
        // on c (as an inverse label), carrying the transform pattern
        for delta in [1i64, -1] {
            for eps in [1i64, -1] {
                let pat = [gt.pow(c, -eps), gt.pow(b, delta), gt.pow(c, eps)];
                for g_coset in q2.elems() {
                    let pat_src = q2.mul(g_coset, pr2(gt.pow(c, eps)));
                    // the pattern must avoid the frame corners
                    let corners = [
                        pr2(Elem::IDENTITY),
                        pr2(c),
                        pr2(b),
                        q2.mul(pr2(b), pr2(c)),
                    ];
                    let mut pat_verts = vec![pat_src];
                    let mut v = pat_src;
                    for &lab in &pat {
                        v = q2.mul(v, pr2(lab));
                        pat_verts.push(v);
                    }
                    if pat_verts.iter().any(|x| corners.contains(x)) {
                        continue;
                    }
                    let last_src = q2.mul(target, pr2(c));
                    let Ok(search) = Search::in_view(&View::of_quotient(&qv2, &scene.gens))
                        .mode(crate::oracle::SearchMode::PathTo(target))
                        .with_prefix(vec![scene.gens.signed_for(c)?])
                        .require_path(pat_src, &pat.map(|e| pr2(e)))
                        .and_then(|s| s.require_edge(last_src, pr2(gt.inv(c))))
                    else {
                        continue;
                    };
                    let Ok(l_word) = search.run() else { continue };
                    // frame it
                    let mut w = l_word.clone();
                    w.0.push(scene.gens.signed_for(a)?);
                    w.0.extend(l_word.reversed().0);
                    w.0.push(scene.gens.signed_for(a)?);
                    let Ok(cyc) = bar_cycle_word(scene, Elem::IDENTITY, w) else { continue };
                    if !cyc.is_hamiltonian() {
                        continue;
                    }
                    let g_par = scene.q_comm.section(
                        scene
                            .q_comm
                            .project(gt.mul(qv_section(scene, &qv2, g_coset), Elem::IDENTITY)),
                    );
                    let mut pool: Vec<QCycle> = vec![cyc.clone()];
                    let b_spec = AlterationSpec {
                        s: gt.pow(c, -eps),
                        t: gt.pow(b, delta),
                        u: a,
                        h: gt.mul(g_par, a),
                        variant: AlterVariant::EdgeAtHT,
                    };
                    if let Ok(x) = standard_alteration(&cyc, &b_spec) {
                        pool.push(x);
                    }
                    let snapshot = pool.clone();
                    for host in &snapshot {
                        for c_sign in [c, gt.inv(c)] {
                            let a_spec = AlterationSpec {
                                s: gt.inv(c_sign),
                                t: a,
                                u: b,
                                h: gt.mul(a, b),
                                variant: AlterVariant::EdgeAtHT,
                            };
                            if let Ok(x) = standard_alteration(host, &a_spec) {
                                pool.push(x);
                            }
                        }
                    }
                    let refs: Vec<&QCycle> = pool.iter().collect();
                    if let Ok(lifted) = lift_one_of(scene, &refs, "central-partner frame") {
                        return certify(scene, lifted, "many-gens:bcent-skew", vec![]);
                    }
                }
            }
        }
    }
    Err(Error::Inconsistency("central-partner frame exhausted".into()))
}

fn qv_section(scene: &Scene, qv2: &Arc<QuotientView>, coset: Elem) -> Elem {
    // a parent-group representative of a coset of the double quotient
    let mid = qv2.section(coset);
    scene.q_comm.section(mid)
}

fn b_central_flat(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    // a bracket outside the odd part exists somewhere
    let mut pair = None;
    'outer: for &c in scene.gens.elems() {
        for &d in scene.gens.elems() {
            if c != d
                && d != a
                && d != b
                && c != a
                && c != b
                && scene.comm.z2_part_nontrivial(gt.commutator(c, d))
            {
                pair = Some((c, d));
                break 'outer;
            }
        }
    }
    let (c, d) = pair.ok_or_else(|| {
        Error::Inconsistency("no outside bracket with a two-part".into())
    })?;
    for b_sign in [b, gt.inv(b)] {
        let gamma = gt.mul(
            gt.commutator(a, b_sign),
            gt.commutator(gt.inv(d), a),
        );
        if !scene.comm.zp.contains(gamma) || gamma.is_identity() {
            continue;
        }
        let s0 = vec![a, b, d];
        // constrained cycle of the subgraph with the transform patterns
        let qb = scene.q_comm.quotient();
        let span = {
            let imgs: Vec<Elem> = s0.iter().map(|&e| scene.q_comm.project(e)).collect();
            subgroup_generated(qb, &imgs)
        };
        let mut allowed = vec![false; qb.order()];
        for &e in span.elems() {
            allowed[e.idx()] = true;
        }
        let pr = |e: Elem| scene.q_comm.project(e);
        let dbar = pr(d);
        let spec = AlterationSpec {
            s: gt.inv(d),
            t: a,
            u: b_sign,
            h: b_sign,
            variant: AlterVariant::EdgeAtHT,
        };
        let Ok(search) = Search::in_quotient(&scene.q_comm, &scene.gens)
            .restrict(allowed.clone())
            .require_path(dbar, &[gt.inv(d), a, d].map(pr))
            .and_then(|s| s.require_edge(qb.mul(pr(a), pr(b_sign)), pr(gt.inv(a))))
        else {
            continue;
        };
        let Ok(word) = search.run() else { continue };
        let Ok(c0) = QCycle::new(
            scene.q_comm.clone(),
            scene.gens.clone(),
            Elem::IDENTITY,
            word,
        ) else {
            continue;
        };
        // two edges per label keeps the ladder audit happy
        let enough = s0.iter().all(|&x| {
            let xi = gt.inv(x);
            c0.edges().iter().filter(|&&(_, l, _)| l == x || l == xi).count() >= 2
        });
        if !enough {
            continue;
        }
        let Ok(c1) = standard_alteration(&c0, &spec) else { continue };
        let Some((src, lab)) = shared_edge(&c0, &c1, &[c, gt.inv(c)]) else {
            continue;
        };
        let ctx = bar_ctx(scene);
        let mut log = Vec::new();
        if let Ok(lifted) =
            usual_conn_sum(&ctx, &s0, c, lab, d, &c0, &c1, src, &mut log, 0)
        {
            return certify(scene, lifted, "many-gens:bcent-flat", log);
        }
    }
    Err(Error::Inconsistency("flat central-partner route exhausted".into()))
}

/// None of the earlier shapes: a centralizing generator exists and every
/// bracket against it collapses; finish on a pair ladder or the grid.
fn residual(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let c = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&x| scene.centralizes(x))
        .ok_or_else(|| Error::Inconsistency("residual case needs a centralizer".into()))?;

    let wild = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&x| x != c && {
            let br = gt.commutator(x, c);
            !(scene.comm.z2.contains(br) && !br.is_identity())
        });

    if let Some(s) = wild {
        let br = gt.commutator(s, c);
        if scene.centralizes(s) && br.is_identity() {
            // both central directions commute: subgroup lift on either side
            for (drop, tt) in [(c, s), (s, c)] {
                let others = scene.gen_elems_without(&[drop]);
                let h = subgroup_generated(gt, &others);
                if h.is_normal() {
                    if let Ok(cert) = super::dispatch::durnberger_escape(
                        scene,
                        drop,
                        tt,
                        "many-gens:residual-durnberger",
                    ) {
                        return Ok(cert);
                    }
                }
            }
        }
        // treat the wild generator as the short one
        let aa = if scene.centralizes(s) { a } else { s };
        if gt.commutator(aa, c).is_identity() {
            let others = scene.gen_elems_without(&[c]);
            let h = subgroup_generated(gt, &others);
            if h.contains(scene.comm.z) && h.is_normal() {
                return super::dispatch::durnberger_escape(
                    scene,
                    c,
                    aa,
                    "many-gens:residual-durnberger",
                );
            }
            let others_a = scene.gen_elems_without(&[aa]);
            let ha = subgroup_generated(gt, &others_a);
            if ha.elems().iter().any(|&e| scene.comm.zp.contains(e) && !e.is_identity())
                && ha.is_normal()
            {
                return super::dispatch::durnberger_escape(
                    scene,
                    aa,
                    c,
                    "many-gens:residual-durnberger",
                );
            }
            return residual_pair(scene, aa, b, c);
        }
        return residual_pair(scene, aa, b, c);
    }
    residual_grid(scene, c)
}

/// The paired-ladder finish of the residual case.
fn residual_pair(scene: &Scene, a: Elem, b: Elem, c: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let d = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&d| d != c && scene.comm.z2_part_nontrivial(gt.commutator(c, d)))
        .ok_or_else(|| Error::Inconsistency("no bridge with a two-part bracket".into()))?;
    let s0: Vec<Elem> = scene.gen_elems_without(&[c]);
    let qb = scene.q_comm.quotient();
    let span = {
        let imgs: Vec<Elem> = s0.iter().map(|&e| scene.q_comm.project(e)).collect();
        subgroup_generated(qb, &imgs)
    };
    let mut allowed = vec![false; qb.order()];
    for &e in span.elems() {
        allowed[e.idx()] = true;
    }
    let pr = |e: Elem| scene.q_comm.project(e);
    for b_sign in [b, gt.inv(b)] {
        let spec = AlterationSpec {
            s: gt.inv(d),
            t: b_sign,
            u: a,
            h: a,
            variant: AlterVariant::EdgeAtHT,
        };
        let path_src = pr(d);
        let edge_src = qb.mul(pr(a), pr(b_sign));
        let Ok(search) = Search::in_quotient(&scene.q_comm, &scene.gens)
            .restrict(allowed.clone())
            .require_path(path_src, &[gt.inv(d), b_sign, d].map(pr))
            .and_then(|s| s.require_edge(edge_src, pr(gt.inv(b_sign))))
        else {
            continue;
        };
        let Ok(word) = search.run() else { continue };
        let Ok(c0) = QCycle::new(
            scene.q_comm.clone(),
            scene.gens.clone(),
            Elem::IDENTITY,
            word,
        ) else {
            continue;
        };
        let Ok(c1) = standard_alteration(&c0, &spec) else { continue };
        let Some((src, lab)) = shared_edge(&c0, &c1, &[c, gt.inv(c)]) else { continue };
        let ctx = bar_ctx(scene);
        let mut log = Vec::new();
        if let Ok(lifted) = usual_conn_sum(&ctx, &s0, c, lab, d, &c0, &c1, src, &mut log, 0) {
            return certify(scene, lifted, "many-gens:residual-pair", log);
        }
    }
    Err(Error::Inconsistency("residual pair ladder exhausted".into()))
}

/// Every bracket against the central generator is the involution: cross a
/// subgraph hamiltonian path with the central column and take a grid cycle.
fn residual_grid(scene: &Scene, c: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let qv = &scene.q_z2;
    let qk = qv.quotient();
    let others: Vec<Elem> = scene.gen_elems_without(&[c]);
    let h = subgroup_generated(gt, &[others.clone(), vec![scene.comm.z]].concat());
    let mut allowed = vec![false; qk.order()];
    for &e in h.elems() {
        allowed[qv.project(e).idx()] = true;
    }
    let h_ord = h.order() / 2;
    let ell = qk.order() / h_ord;
    scene.ensure(ell >= 2, "central column has height")?;
    let mut log = vec!["oracle:prime-commutator".to_string()];
    let cyc_word = Search::in_quotient(qv, &scene.gens)
        .restrict(allowed)
        .run()?;
    let l_word = cyc_word.drop_last()?;
    let rows = l_word.len() + 1;
    scene.ensure(rows == h_ord, "subgraph path covers its rows")?;

    let cells = crate::toolbox::grid::grid_ham_cycle(rows, ell)?;
    let mut w = GenWord::empty();
    let sg_c = scene.gens.signed_for(c)?;
    let sg_c_inv = scene.gens.signed_for(gt.inv(c))?;
    for i in 0..cells.len() {
        let (x0, y0) = cells[i];
        let (x1, y1) = cells[(i + 1) % cells.len()];
        if y1 == y0 + 1 {
            w.0.push(sg_c);
        } else if y0 == y1 + 1 {
            w.0.push(sg_c_inv);
        } else if x1 == x0 + 1 {
            w.0.push(l_word.0[x0]);
        } else {
            w.0.push(l_word.0[x1].flipped());
        }
    }
    let cyc = quot_cycle(scene, qv, Elem::IDENTITY, w)?;
    scene.ensure(cyc.is_hamiltonian(), "grid cycle covers the halved group")?;
    scene.ensure(voltage_generates(&cyc), "grid voltage generates the involution")?;
    let lifted = fgl_lift(&cyc)?;
    certify(scene, lifted, "many-gens:residual-grid", log.drain(..).collect())
}

//! Branches where the partner generator lies inside the span of the wide
//! generator (`b = a^k * gamma` up to inversion): splice tricks on the rail
//! prefix when `a` preserves orientation, and the five classical subcases
//! when `a` inverts the commutator subgroup.

use std::sync::Arc;

use crate::cycles::{CycleCertificate, QCycle};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::quotient::QuotientView;
use crate::subgrp::subgroup_generated;
use crate::toolbox::abelian::abelian_ham_path;
use crate::toolbox::alteration::{standard_alteration, AlterVariant, AlterationSpec};
use crate::toolbox::connsum::{EdgePick, Ladder};
use crate::toolbox::double_edge::{double_edge, is_prime};
use crate::toolbox::fgl::fgl_lift;
use crate::toolbox::usual::{shared_edge, usual_conn_sum, usual_conn_sum_cor, BarCtx};
use crate::words::{GenWord, SignedGen};

use super::context::Scene;
use super::util::{
    bar_cycle_word, certify, lift_one_of, oracle_quotient_cycle, quot_cycle, voltage_generates,
};
use super::wide_out::rail_cycle_word;

fn bar_ctx(scene: &Scene) -> BarCtx<'_> {
    BarCtx {
        gt: &scene.gt,
        gens: &scene.gens,
        comm: &scene.comm,
        q_comm: &scene.q_comm,
    }
}

pub fn wide_inside(scene: &Scene, a: Elem, b_in: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a);
    // write b = a^k gamma with k at most m/2, replacing b by its inverse if
    // needed
    let qb = scene.q_comm.quotient();
    let abar = scene.q_comm.project(a);
    let bbar = scene.q_comm.project(b_in);
    let mut k = None;
    for j in 0..m {
        if qb.pow(abar, j as i64) == bbar {
            k = Some(j);
            break;
        }
    }
    let mut k = k.ok_or_else(|| Error::Inconsistency("partner image not in the span".into()))?;
    let mut b = b_in;
    if 2 * k > m {
        b = gt.inv(b);
        k = m - k;
    }
    scene.ensure(k >= 2, "unit offset would be a duplicate pair")?;
    scene.ensure(m >= k + 2, "offset leaves prefix room")?;
    let gamma = gt.mul(gt.pow(a, -(k as i64)), b);

    if !scene.inverts(a) {
        return straight(scene, a, b, k, gamma);
    }
    flip(scene, a, b, k, gamma)
}

/// The prefix splice: replaces the opening `a^{k+1}` of a rail cycle with
/// `(b, a^{-(k-1)}, b)`.
fn splice_prefix(scene: &Scene, c0: &QCycle, a: Elem, b: Elem, k: usize) -> Result<QCycle> {
    let gt = &scene.gt;
    let w = c0.word();
    scene.ensure(
        w.0.len() > k + 1
            && w.0[..k + 1]
                .iter()
                .all(|&sg| scene.gens.resolve(sg) == a),
        "rail cycle starts with enough a-steps",
    )?;
    let sg_b = scene.gens.signed_for(b)?;
    let sg_a_inv = scene.gens.signed_for(gt.inv(a))?;
    let mut out = vec![sg_b];
    out.extend(vec![sg_a_inv; k - 1]);
    out.push(sg_b);
    out.extend_from_slice(&w.0[k + 1..]);
    c0.with_word(c0.base(), GenWord(out))
}

/// `a` does not invert the commutator subgroup.
fn straight(scene: &Scene, a: Elem, b: Elem, k: usize, _gamma: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a);
    let c_opt = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&c| scene.z2_in_bracket(a, c));

    if let Some(c) = c_opt {
        let (qv2, _) = scene.bar_sub_quotient(&[a])?;
        let n = qv2.quotient().order();
        scene.ensure(m % 2 == 0 && n % 2 == 0, "even fibre and base")?;
        scene.ensure(!scene.bar_in_span(c, &[a]), "pair generator leaves the span")?;
        let inner = super::wide_out::inner_cycle_last_c_pub(scene, &[a], c, None)?;
        let word = rail_cycle_word(scene, a, m, &inner.0)?;
        let c0 = bar_cycle_word(scene, Elem::IDENTITY, word)?;
        scene.ensure(c0.is_hamiltonian(), "rail cycle covers")?;
        scene.ensure(
            scene.comm.z2_part_nontrivial(c0.voltage()?),
            "rail voltage carries the two-part",
        )?;
        let c1 = splice_prefix(scene, &c0, a, b, k)?;
        let lifted = lift_one_of(scene, &[&c0, &c1], "straight splice")?;
        return certify(scene, lifted, "wide-in:straight-z2", vec![]);
    }

    // no two-part bracket against a: borrow one from (c, d)
    let mut pair = None;
    'outer: for &c in scene.gens.elems() {
        for &d in scene.gens.elems() {
            if c != d && scene.z2_in_bracket(c, d) {
                let d_ok = !scene.bar_in_span(d, &[a]);
                let c_ok = !scene.bar_in_span(c, &[a]);
                if d_ok {
                    pair = Some((c, d));
                    break 'outer;
                } else if c_ok {
                    pair = Some((d, c));
                    break 'outer;
                }
            }
        }
    }
    let (c, d) = pair.ok_or_else(|| {
        Error::Inconsistency("no usable two-part bracket pair".into())
    })?;
    let n = scene.bar_index(&[a]) / scene.bar_index(&[a, d]);
    scene.ensure(n % 2 == 0 && n >= 2, "even d-span")?;
    let sg_d = scene.gens.signed_for(d)?;
    let inner = GenWord(vec![sg_d; n]);
    let word = rail_cycle_word(scene, a, m, &inner.0)?;
    let c0 = bar_cycle_word(scene, Elem::IDENTITY, word)?;
    let c1 = splice_prefix(scene, &c0, a, b, k)?;
    let dv = gt.mul(gt.inv(c0.voltage()?), c1.voltage()?);
    scene.ensure(
        scene.comm.zp.contains(dv) && !dv.is_identity(),
        "splice shifts the voltage inside the odd part",
    )?;
    // the lemma wants the cycle with two edges of every label first
    let ctx = bar_ctx(scene);
    let s0 = vec![a, b, d];
    let mut log = Vec::new();
    let (e_src, e_lab) = shared_edge(&c1, &c0, &[c, gt.inv(c)])
        .ok_or_else(|| Error::PatternNotFound("no shared ladder edge".into()))?;
    let lifted = usual_conn_sum(&ctx, &s0, c, e_lab, d, &c1, &c0, e_src, &mut log, 0)?;
    certify(scene, lifted, "wide-in:straight-ladder", log)
}

/// `a` inverts the commutator subgroup: the five offset subcases.
fn flip(scene: &Scene, a: Elem, b: Elem, k: usize, gamma: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a);
    let half = 2 * k == m;

    if !half && k % 2 == 0 {
        return flip_even(scene, a, b, k, gamma);
    }
    if !half && k % 2 == 1 {
        return flip_odd(scene, a, b, k);
    }
    // k = m/2: try the squared-partner reduction first
    let b2 = gt.mul(b, b);
    if !b2.is_identity() {
        scene.ensure(
            is_prime(gt.element_order(b2)),
            "squared partner has prime order",
        )?;
        let n = subgroup_generated(gt, &[b2]);
        let qv = Arc::new(QuotientView::new(gt.clone(), n)?);
        let mut log = Vec::new();
        let word = oracle_quotient_cycle(scene, &qv, "oracle:prime-commutator", &mut log)?;
        let c = quot_cycle(scene, &qv, Elem::IDENTITY, word)?;
        let lifted = double_edge(&c, b, gt.inv(b))?;
        return certify(scene, lifted, "wide-in:flip-half-square", log);
    }
    if k % 2 == 0 {
        return Err(Error::Inconsistency(
            "half offset, even k, trivial square: squared partner cannot vanish".into(),
        ));
    }
    flip_half_odd(scene, a, b, k)
}

fn word_of_runs(scene: &Scene, runs: &[(Elem, i64)]) -> Result<GenWord> {
    let mut w = GenWord::empty();
    for &(e, k) in runs {
        w.0.extend(scene.gens.run(e, k)?.0);
    }
    Ok(w)
}

/// `2 < k < m/2`, `k` even.
fn flip_even(scene: &Scene, a: Elem, b: Elem, k: usize, _gamma: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a) as i64;
    let k = k as i64;
    let c1w = word_of_runs(scene, &[(a, m)])?;
    let c0w = word_of_runs(
        scene,
        &[
            (b, 1),
            (a, -(k - 4)),
            (b, 1),
            (a, m - 2 * k - 2),
            (b, 1),
            (a, -1),
            (b, 1),
            (a, 2),
            (b, -2),
            (a, k - 3),
        ],
    )?;
    let c1 = bar_cycle_word(scene, Elem::IDENTITY, c1w)?;
    let c0 = bar_cycle_word(scene, Elem::IDENTITY, c0w)?;
    let dv = gt.mul(gt.inv(c0.voltage()?), c1.voltage()?);
    scene.ensure(
        scene.comm.zp.contains(dv) && !dv.is_identity(),
        "offset pair differs inside the odd part",
    )?;
    let ctx = bar_ctx(scene);
    let mut log = Vec::new();
    let (src, lab) = shared_edge(&c0, &c1, &[])
        .ok_or_else(|| Error::PatternNotFound("offset pair shares no edge".into()))?;
    let lifted = usual_conn_sum_cor(&ctx, &[a, b], &c0, &c1, src, lab, &mut log)?;
    certify(scene, lifted, "wide-in:flip-even", log)
}

/// `2 < k < m/2`, `k` odd.
fn flip_odd(scene: &Scene, a: Elem, b: Elem, k: usize) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a) as i64;
    let k = k as i64;
    let mut c0_runs: Vec<(Elem, i64)> = Vec::new();
    for _ in 0..(k - 1) / 2 {
        c0_runs.extend([(b, 1), (a, 1), (b, -1), (a, 1)]);
    }
    c0_runs.extend([(b, 1), (a, m - 2 * k + 1)]);
    let mut c1_runs: Vec<(Elem, i64)> = Vec::new();
    for _ in 0..(k - 1) / 2 {
        c1_runs.extend([(b, 1), (a, -1), (b, -1), (a, -1)]);
    }
    c1_runs.extend([(b, 2), (a, m - 2 * k - 1), (b, 1)]);
    let c0 = bar_cycle_word(scene, Elem::IDENTITY, word_of_runs(scene, &c0_runs)?)?;
    let c1 = bar_cycle_word(scene, Elem::IDENTITY, word_of_runs(scene, &c1_runs)?)?;
    let dv = gt.mul(gt.inv(c0.voltage()?), c1.voltage()?);
    scene.ensure(
        scene.comm.zp.contains(dv) && !dv.is_identity(),
        "offset pair differs inside the odd part",
    )?;
    let ctx = bar_ctx(scene);
    let mut log = Vec::new();
    let (src, lab) = shared_edge(&c0, &c1, &[])
        .ok_or_else(|| Error::PatternNotFound("offset pair shares no edge".into()))?;
    let lifted = usual_conn_sum_cor(&ctx, &[a, b], &c0, &c1, src, lab, &mut log)?;
    certify(scene, lifted, "wide-in:flip-odd", log)
}

/// `k = m/2` odd with the partner an involution.
fn flip_half_odd(scene: &Scene, a: Elem, b: Elem, k: usize) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    // pick the auxiliary generator
    let c = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&c| scene.z2_in_bracket(a, c))
        .or_else(|| {
            scene.gens.elems().iter().copied().find(|&c| {
                scene
                    .gens
                    .elems()
                    .iter()
                    .any(|&d| d != c && scene.z2_in_bracket(c, d))
            })
        })
        .ok_or_else(|| Error::Inconsistency("no auxiliary generator".into()))?;
    scene.ensure(c != a && c != b, "auxiliary generator is fresh")?;
    let outer = scene.bar_index(&[a]);

    if outer > 2 {
        return flip_half_odd_big(scene, a, b, k, c);
    }

    scene.ensure(scene.gens.len() == 3, "three generators at index two")?;
    scene.ensure(
        scene.z2_in_bracket(a, c) && !scene.zp_in_bracket(a, c),
        "auxiliary bracket is exactly the involution",
    )?;
    if !scene.centralizes(c) && !scene.inverts(c) {
        // exchange roles: the auxiliary generator is wide
        return exchange_roles(scene, c);
    }

    let p = scene.comm.p;
    let ki = k as i64;
    if scene.inverts(c) {
        let l_runs: Vec<(Elem, i64)> = if k % p == 0 {
            pairs_run(a, b, k)
        } else {
            pairs_run(b, a, k)
        };
        let l = word_of_runs(scene, &l_runs)?.drop_last()?;
        let mut w = l.reversed();
        w.0.push(scene.gens.signed_for(gt.inv(c))?);
        w.0.extend_from_slice(&l.0);
        w.0.push(scene.gens.signed_for(c)?);
        let cyc = bar_cycle_word(scene, Elem::IDENTITY, w)?;
        scene.ensure(cyc.is_hamiltonian() && voltage_generates(&cyc), "inverting pair cycle")?;
        let lifted = fgl_lift(&cyc)?;
        return certify(scene, lifted, "wide-in:flip-half-odd-cinv", vec![]);
    }

    // c centralizes
    if k >= 5 {
        let l = word_of_runs(scene, &pairs_run(b, a, k))?.drop_last()?;
        let mut w = l.clone();
        w.0.push(scene.gens.signed_for(c)?);
        w.0.extend(l.reversed().0);
        w.0.push(scene.gens.signed_for(gt.inv(c))?);
        let c0 = bar_cycle_word(scene, Elem::IDENTITY, w)?;
        scene.ensure(c0.is_hamiltonian(), "paired rail covers")?;
        let spec1 = AlterationSpec {
            s: b,
            t: a,
            u: c,
            h: gt.mul(b, c),
            variant: AlterVariant::EdgeAtHT,
        };
        let c1 = standard_alteration(&c0, &spec1)?;
        let spec2 = AlterationSpec {
            s: b,
            t: a,
            u: c,
            h: gt.mul(gt.pow(a, 2), gt.mul(b, c)),
            variant: AlterVariant::EdgeAtHT,
        };
        let c2 = standard_alteration(&c1, &spec2)?;
        let lifted = lift_one_of(scene, &[&c2, &c1, &c0], "double alteration")?;
        return certify(scene, lifted, "wide-in:flip-half-odd-hi", vec![]);
    }

    scene.ensure(k == 3, "half offset of three")?;
    let gamma = gt.mul(gt.pow(a, -ki), b);
    if scene.comm.z2_part_nontrivial(gamma) {
        let w = word_of_runs(
            scene,
            &[
                (c, 1),
                (b, 1),
                (c, -1),
                (a, 1),
                (b, -1),
                (c, 1),
                (b, 1),
                (a, 1),
                (b, -1),
                (c, -1),
                (b, 1),
                (a, 1),
            ],
        )?;
        let cyc = bar_cycle_word(scene, Elem::IDENTITY, w)?;
        scene.ensure(cyc.is_hamiltonian() && voltage_generates(&cyc), "mixed-offset cycle")?;
        let lifted = fgl_lift(&cyc)?;
        return certify(scene, lifted, "wide-in:flip-half-odd-k3", vec![]);
    }
    if p >= 5 {
        let w = word_of_runs(
            scene,
            &[(b, 1), (a, 1), (b, -1), (a, 1), (b, 1), (c, 1), (a, -5), (c, -1)],
        )?;
        let cyc = bar_cycle_word(scene, Elem::IDENTITY, w)?;
        scene.ensure(cyc.is_hamiltonian() && voltage_generates(&cyc), "odd-offset cycle")?;
        let lifted = fgl_lift(&cyc)?;
        return certify(scene, lifted, "wide-in:flip-half-odd-k3p5", vec![]);
    }
    // p = 3, |G| = 72: work over the halved-by-odd-part quotient
    let w = word_of_runs(
        scene,
        &[
            (a, 2),
            (c, 1),
            (a, 5),
            (c, -1),
            (a, -2),
            (b, 1),
            (a, 2),
            (c, 1),
            (a, -5),
            (c, -1),
            (a, -2),
            (b, 1),
        ],
    )?;
    let cyc = quot_cycle(scene, &scene.q_zp, Elem::IDENTITY, w)?;
    scene.ensure(cyc.is_hamiltonian(), "order-24 quotient cycle covers")?;
    scene.ensure(voltage_generates(&cyc), "order-24 quotient voltage generates")?;
    let lifted = fgl_lift(&cyc)?;
    certify(scene, lifted, "wide-in:flip-half-odd-k3p3", vec![])
}

fn pairs_run(x: Elem, y: Elem, k: usize) -> Vec<(Elem, i64)> {
    let mut runs = Vec::new();
    for _ in 0..k {
        runs.push((x, 1));
        runs.push((y, 1));
    }
    runs
}

/// `k = m/2` odd, abelianization index above two: cover two fibre cosets and
/// ladder the rest.
fn flip_half_odd_big(scene: &Scene, a: Elem, b: Elem, k: usize, c: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let ki = k as i64;
    let base = word_of_runs(
        scene,
        &[
            (a, ki - 2),
            (b, 1),
            (a, -(ki - 2)),
            (c, 1),
            (a, ki - 1),
            (c, -1),
            (b, -1),
            (c, 1),
            (a, -(ki - 1)),
            (c, -1),
        ],
    )?;
    let cyc = bar_cycle_word(scene, Elem::IDENTITY, base)?;

    // alteration patterns to keep intact, in base coordinates
    let qb = scene.q_comm.quotient();
    let pr = |e: Elem| scene.q_comm.project(e);
    let ak3 = qb.pow(pr(a), ki - 3);
    let ak2 = qb.pow(pr(a), ki - 2);
    let akb = qb.mul(qb.pow(pr(a), ki - 2), pr(b));
    let akb1 = qb.mul(qb.pow(pr(a), ki - 1), pr(b));
    let protected = vec![
        (ak3, a),
        (ak2, b),
        (akb, gt.inv(a)),
        (akb1, gt.inv(b)),
    ];

    // bridges: a hamiltonian path of the quotient by <abar, cbar>
    let (qv2, deep) = scene.bar_sub_quotient(&[a, c])?;
    let rest: Vec<usize> = scene.gens_without(&[a, c]);
    let bridge_word = abelian_ham_path(&deep, &rest, Elem::IDENTITY)?;
    scene.ensure(
        bridge_word.len() + 1 == qv2.quotient().order(),
        "bridge path covers the outer quotient",
    )?;
    let bridges: Vec<Elem> = bridge_word
        .0
        .iter()
        .map(|&sg| scene.gens.resolve(sg))
        .collect();

    let spec = AlterationSpec {
        s: a,
        t: b,
        u: a,
        h: gt.pow(a, ki - 1),
        variant: AlterVariant::EdgeAtHT,
    };

    let mut candidates: Vec<QCycle> = Vec::new();
    if bridges.is_empty() {
        candidates.push(cyc.clone());
    } else {
        for first_label in [None, Some(a), Some(b), Some(c), Some(gt.inv(c))] {
            let mut ladder = Ladder::new(&cyc, bridges.clone());
            ladder.protected = protected.clone();
            if let Some(lab) = first_label {
                ladder.first = EdgePick {
                    labels: vec![lab],
                    exact: None,
                };
            }
            if let Ok(big) = ladder.run() {
                if big.is_hamiltonian() {
                    candidates.push(big);
                }
            }
        }
    }
    // prefer a candidate whose voltage already carries the two-part
    candidates.sort_by_key(|cand| {
        let z2 = cand
            .voltage()
            .map(|v| scene.comm.z2_part_nontrivial(v))
            .unwrap_or(false);
        !z2 as u8
    });
    // the alternate final copy for the two-part swing
    let alt_word = word_of_runs(
        scene,
        &[
            (a, ki - 1),
            (b, 1),
            (a, -(ki - 1)),
            (c, 1),
            (a, ki - 1),
            (b, -1),
            (a, -(ki - 1)),
            (c, -1),
        ],
    )?;
    for cand in &candidates {
        let mut pool: Vec<QCycle> = vec![cand.clone()];
        if let Ok(alt) = bar_cycle_word(scene, Elem::IDENTITY, alt_word.clone()) {
            if !bridges.is_empty() {
                if let Some((src, lab)) = shared_edge(&cyc, &alt, &[]) {
                    let mut ladder = Ladder::new(&cyc, bridges.clone());
                    ladder.protected = protected.clone();
                    ladder.last_attach = Some((scene.q_comm.section(src), lab));
                    ladder.last_copy = Some(&alt);
                    if let Ok(sw) = ladder.run() {
                        pool.push(sw);
                    }
                }
            }
        }
        for star in &pool {
            if let Ok(v) = star.voltage() {
                if scene.comm.z2_part_nontrivial(v) {
                    if let Ok(altered) = standard_alteration(star, &spec) {
                        if let Ok(lifted) = lift_one_of(scene, &[star, &altered], "half-odd big") {
                            return certify(scene, lifted, "wide-in:flip-half-odd-big", vec![]);
                        }
                    }
                }
            }
        }
    }
    Err(Error::Inconsistency("half-odd ladder found no working cycle".into()))
}

/// `k = 2 < m/2`.
pub fn flip_k2(scene: &Scene, a: Elem, b: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a) as i64;
    let outer = scene.bar_index(&[a]);
    if outer > 2 {
        let c = scene
            .gens
            .elems()
            .iter()
            .copied()
            .find(|&c| !scene.bar_in_span(c, &[a]))
            .ok_or_else(|| Error::Inconsistency("no generator outside the span".into()))?;
        let mut runs: Vec<(Elem, i64)> = vec![
            (b, 1),
            (a, 1),
            (b, -1),
            (c, 1),
            (b, 1),
            (a, -1),
            (b, 1),
            (c, -1),
        ];
        for _ in 0..(m - 4) / 2 {
            runs.extend([(a, 1), (c, 1), (a, 1), (c, -1)]);
        }
        let cyc = bar_cycle_word(scene, Elem::IDENTITY, word_of_runs(scene, &runs)?)?;
        let qb = scene.q_comm.quotient();
        let pr = |e: Elem| scene.q_comm.project(e);
        let b2 = qb.mul(pr(b), pr(b));
        let protected = vec![
            (pr(Elem::IDENTITY), b),
            (pr(b), a),
            (qb.mul(pr(b), pr(a)), gt.inv(b)),
            (b2, a),
        ];
        let (qv2, deep) = scene.bar_sub_quotient(&[a, c])?;
        let rest: Vec<usize> = scene.gens_without(&[a, c]);
        let bridge_word = abelian_ham_path(&deep, &rest, Elem::IDENTITY)?;
        scene.ensure(
            bridge_word.len() + 1 == qv2.quotient().order(),
            "bridge path covers the outer quotient",
        )?;
        let bridges: Vec<Elem> = bridge_word
            .0
            .iter()
            .map(|&sg| scene.gens.resolve(sg))
            .collect();
        let spec = AlterationSpec {
            s: b,
            t: a,
            u: b,
            h: gt.mul(b, b),
            variant: AlterVariant::EdgeAtH,
        };
        if bridges.is_empty() {
            return Err(Error::Inconsistency("index above two needs bridges".into()));
        }
        for first_label in [None, Some(a), Some(b), Some(c), Some(gt.inv(c))] {
            let mut ladder = Ladder::new(&cyc, bridges.clone());
            ladder.protected = protected.clone();
            if let Some(lab) = first_label {
                ladder.first = EdgePick {
                    labels: vec![lab],
                    exact: None,
                };
            }
            let Ok(big) = ladder.run() else { continue };
            if !big.is_hamiltonian() {
                continue;
            }
            let Ok(v) = big.voltage() else { continue };
            if !scene.comm.z2_part_nontrivial(v) {
                continue;
            }
            let Ok(altered) = standard_alteration(&big, &spec) else { continue };
            if let Ok(lifted) = lift_one_of(scene, &[&big, &altered], "k2 ladder") {
                return certify(scene, lifted, "wide-in:flip-k2-big", vec![]);
            }
        }
        return Err(Error::Inconsistency("k2 ladder found no working cycle".into()));
    }

    // index two: three pinned generators
    scene.ensure(scene.gens.len() == 3, "three generators at index two")?;
    let c = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&x| x != a && x != b)
        .expect("third generator exists");
    if !scene.centralizes(c) && !scene.inverts(c) {
        return exchange_roles(scene, c);
    }
    let w = word_of_runs(
        scene,
        &[
            (b, 2),
            (a, m - 5),
            (c, 1),
            (a, -(m - 4)),
            (c, -1),
            (b, -1),
            (c, 1),
            (a, 1),
            (b, -1),
            (c, -1),
        ],
    )?;
    let cyc = bar_cycle_word(scene, Elem::IDENTITY, w)?;
    scene.ensure(cyc.is_hamiltonian(), "pinned k2 cycle covers")?;
    scene.ensure(voltage_generates(&cyc), "pinned k2 voltage generates")?;
    let lifted = fgl_lift(&cyc)?;
    certify(scene, lifted, "wide-in:flip-k2-tight", vec![])
}

/// A generator with a higher-order action takes over the wide role.
fn exchange_roles(scene: &Scene, c: Elem) -> Result<CycleCertificate> {
    scene.ensure(scene.bar_order(c) > 2, "replacement generator is wide")?;
    let x = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&x| x != c && scene.zp_in_bracket(c, x))
        .ok_or_else(|| Error::Inconsistency("no partner for the exchanged role".into()))?;
    if scene.bar_in_span(x, &[c]) {
        wide_inside(scene, c, x)
    } else {
        super::wide_out::wide_outside(scene, c, x)
    }
}

/// Entry used by the dispatcher: routes k = 2 separately since its
/// constructions differ.
pub fn wide_inside_entry(scene: &Scene, a: Elem, b_in: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let m = scene.bar_order(a);
    let qb = scene.q_comm.quotient();
    let abar = scene.q_comm.project(a);
    let bbar = scene.q_comm.project(b_in);
    let mut k = 0;
    for j in 0..m {
        if qb.pow(abar, j as i64) == bbar {
            k = j;
            break;
        }
    }
    let (b, k) = if 2 * k > m { (gt.inv(b_in), m - k) } else { (b_in, k) };
    if scene.inverts(a) && k == 2 && 2 * k < m {
        return flip_k2(scene, a, b);
    }
    wide_inside(scene, a, b_in)
}

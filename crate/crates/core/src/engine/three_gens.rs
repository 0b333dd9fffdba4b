//! Three generators with every non-centralizing image of order two: paired
//! rail cycles `(L, a, L^{-1}, a)` with one or two local transforms, plus the
//! pinned constructions at small indices.

use crate::cycles::{CycleCertificate, QCycle};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::toolbox::alteration::{standard_alteration, AlterVariant, AlterationSpec};
use crate::toolbox::fgl::fgl_lift;
use crate::words::GenWord;

use super::context::Scene;
use super::util::{bar_cycle_word, certify, lift_one_of, oracle_full, quot_cycle, voltage_generates};

fn word_of_runs(scene: &Scene, runs: &[(Elem, i64)]) -> Result<GenWord> {
    let mut w = GenWord::empty();
    for &(e, k) in runs {
        w.0.extend(scene.gens.run(e, k)?.0);
    }
    Ok(w)
}

pub fn three_gens(scene: &Scene, a: Elem, b: Elem, depth: usize) -> Result<CycleCertificate> {
    if depth > 4 {
        return Err(Error::Inconsistency("three-generator role swaps ran away".into()));
    }
    let c = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&x| x != a && x != b)
        .ok_or_else(|| Error::Inconsistency("third generator missing".into()))?;
    let n = scene.bar_order(b);
    let ell = scene.q_comm.quotient().order() / (2 * n);
    scene.ensure(ell >= 2, "third generator leaves the pair span")?;

    if n == 3 {
        return partner_three(scene, a, b, c);
    }
    if ell == 2 {
        if n == 2 {
            return oracle_full(scene, "small-order");
        }
        return index_two(scene, a, b, c, depth);
    }
    general(scene, a, b, c, n, ell, depth)
}

/// `|bbar| = 3`.
fn partner_three(scene: &Scene, a: Elem, b: Elem, c: Elem) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    scene.ensure(scene.centralizes(b), "order-three partner centralizes")?;
    let n = 3usize;
    let ell = scene.q_comm.quotient().order() / (2 * n);
    scene.ensure(ell % 2 == 0, "even outer index")?;
    scene.ensure(scene.z2_in_bracket(a, c), "two-part bracket lands on the third generator")?;

    let li = ell as i64;
    let l_runs = [(c, li - 1), (b, 1), (c, -(li - 1)), (b, 1), (c, li - 1)];
    let l = word_of_runs(scene, &l_runs)?;
    let mut w = l.clone();
    w.0.push(scene.gens.signed_for(a)?);
    w.0.extend(l.reversed().0);
    w.0.push(scene.gens.signed_for(a)?);
    let cyc = bar_cycle_word(scene, Elem::IDENTITY, w)?;
    scene.ensure(cyc.is_hamiltonian(), "three-layer cycle covers")?;
    scene.ensure(
        scene.comm.z2_part_nontrivial(cyc.voltage()?),
        "three-layer voltage carries the two-part",
    )?;

    // transform against either sign of c
    let mut pool: Vec<QCycle> = vec![cyc.clone()];
    for c_sign in [c, gt.inv(c)] {
        let h = gt.mul(gt.pow(c, ell as i64 - 1), a);
        let spec = AlterationSpec {
            s: c_sign,
            t: b,
            u: a,
            h,
            variant: AlterVariant::EdgeAtHT,
        };
        if let Ok(alt) = standard_alteration(&cyc, &spec) {
            pool.push(alt);
        }
    }
    let refs: Vec<&QCycle> = pool.iter().collect();
    if let Ok(lifted) = lift_one_of(scene, &refs, "three-layer") {
        return certify(scene, lifted, "three-gens:b3", vec![]);
    }

    // the ratio cancelled: fall to the pinned ten-step cycle
    scene.ensure(!scene.centralizes(c), "third generator moves the odd part")?;
    scene.ensure(scene.bar_order(c) == 2, "third generator image is short")?;
    let w = word_of_runs(
        scene,
        &[
            (b, 2),
            (a, 1),
            (b, 2),
            (c, 1),
            (a, 1),
            (b, 1),
            (a, 1),
            (b, 1),
            (a, 1),
            (c, 1),
        ],
    )?;
    let c0 = bar_cycle_word(scene, Elem::IDENTITY, w)?;
    scene.ensure(c0.is_hamiltonian(), "pinned ten-step cycle covers")?;
    let spec = AlterationSpec {
        s: a,
        t: b,
        u: c,
        h: b,
        variant: AlterVariant::EdgeAtH,
    };
    let c1 = standard_alteration(&c0, &spec)?;
    let lifted = lift_one_of(scene, &[&c0, &c1], "pinned ten-step")?;
    certify(scene, lifted, "three-gens:b3-skew", vec![])
}

/// The third generator closes an index-two step.
fn index_two(scene: &Scene, a: Elem, b: Elem, c: Elem, depth: usize) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let n = scene.bar_order(b);
    scene.ensure(n >= 4, "long partner in the index-two case")?;
    let ni = n as i64;
    let l = word_of_runs(
        scene,
        &[(a, 1), (b, 1), (a, 1), (b, ni - 2), (a, 1), (b, -(ni - 3))],
    )?;
    let mut w = l.clone();
    w.0.push(scene.gens.signed_for(c)?);
    w.0.extend(l.reversed().0);
    w.0.push(scene.gens.signed_for(gt.inv(c))?);
    let cyc = bar_cycle_word(scene, Elem::IDENTITY, w)?;
    scene.ensure(cyc.is_hamiltonian(), "index-two frame covers")?;

    let ac = gt.commutator(a, c);
    let abbc = gt.mul(gt.commutator(a, b), gt.commutator(b, c));
    let both_odd = scene.comm.zp.contains(ac) && scene.comm.zp.contains(abbc);

    if !both_odd {
        let mut star = cyc.clone();
        if !scene.comm.z2_part_nontrivial(star.voltage()?) {
            let spec = AlterationSpec {
                s: a,
                t: b,
                u: c,
                h: gt.mul(a, c),
                variant: AlterVariant::EdgeAtHT,
            };
            star = standard_alteration(&cyc, &spec)?;
            scene.ensure(
                scene.comm.z2_part_nontrivial(star.voltage()?),
                "frame transform recovers the two-part",
            )?;
        }
        let spec = AlterationSpec {
            s: b,
            t: a,
            u: b,
            h: gt.mul(a, c),
            variant: AlterVariant::EdgeAtH,
        };
        let swung = standard_alteration(&star, &spec)?;
        let lifted = lift_one_of(scene, &[&star, &swung], "index-two frame")?;
        return certify(scene, lifted, "three-gens:index2", vec![]);
    }

    // both brackets in the odd part
    if ac.is_identity() {
        return super::dispatch::durnberger_escape(scene, c, a, "three-gens:index2-durnberger");
    }
    if gt.commutator(b, c).is_identity() {
        return super::dispatch::durnberger_escape(scene, c, b, "three-gens:index2-durnberger");
    }
    let c0w = word_of_runs(
        scene,
        &[
            (b, ni - 1),
            (c, 1),
            (b, -(ni - 2)),
            (a, 1),
            (b, ni - 2),
            (c, -1),
            (b, -(ni - 1)),
            (c, 1),
            (a, 1),
            (c, -1),
        ],
    )?;
    let c0 = bar_cycle_word(scene, Elem::IDENTITY, c0w)?;
    scene.ensure(c0.is_hamiltonian(), "index-two braid covers")?;
    if voltage_generates(&c0) {
        let lifted = fgl_lift(&c0)?;
        return certify(scene, lifted, "three-gens:index2-braid", vec![]);
    }
    // the exponent degenerated; the shortened braid shifts it off zero
    let c1w = word_of_runs(
        scene,
        &[
            (b, ni - 3),
            (c, 1),
            (b, -(ni - 4)),
            (a, 1),
            (b, ni - 4),
            (c, -1),
            (b, -(ni - 3)),
            (c, 1),
            (b, -1),
            (c, 1),
            (b, -1),
            (c, 1),
            (a, 1),
            (c, 1),
            (b, 1),
            (c, 1),
            (b, 1),
            (c, -1),
        ],
    )?;
    let c1 = bar_cycle_word(scene, Elem::IDENTITY, c1w)?;
    scene.ensure(c1.is_hamiltonian(), "shortened braid covers")?;
    if voltage_generates(&c1) {
        let lifted = fgl_lift(&c1)?;
        return certify(scene, lifted, "three-gens:index2-braid", vec![]);
    }
    let _ = depth;
    Err(Error::Inconsistency("index-two braids never generated".into()))
}

/// `|bbar| != 3` and the outer index is above two.
fn general(
    scene: &Scene,
    a: Elem,
    b: Elem,
    c: Elem,
    n: usize,
    ell: usize,
    depth: usize,
) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    scene.ensure(scene.centralizes(c), "wide third generator centralizes")?;
    scene.ensure(n % 2 == 0 || ell % 2 == 0, "not both indices odd")?;
    let ni = n as i64;
    let li = ell as i64;

    let l = if n % 2 == 1 {
        let mut runs: Vec<(Elem, i64)> = vec![(c, li - 1), (b, 1), (c, -1), (b, 1), (c, 1), (b, 1)];
        let mut blocks: Vec<(Elem, i64)> = Vec::new();
        for _ in 0..ell / 2 {
            blocks.extend([(b, ni - 4), (c, -1), (b, -(ni - 4)), (c, -1)]);
        }
        let mut bw = word_of_runs(scene, &blocks)?;
        bw = bw.drop_last()?;
        let mut w = word_of_runs(scene, &runs)?;
        w.0.extend(bw.0);
        runs = vec![(b, -1), (c, li - 3), (b, -1), (c, -(li - 3))];
        w.0.extend(word_of_runs(scene, &runs)?.0);
        w
    } else {
        let mut w = word_of_runs(scene, &[(c, li - 1), (b, ni - 1), (c, -1)])?;
        let mut blocks: Vec<(Elem, i64)> = Vec::new();
        for _ in 0..(n - 2) / 2 {
            blocks.extend([(c, -(li - 2)), (b, -1), (c, li - 2), (b, -1)]);
        }
        w.0.extend(word_of_runs(scene, &blocks)?.0);
        w.0.extend(word_of_runs(scene, &[(c, -(li - 2))])?.0);
        w
    };
    let mut frame = l.clone();
    frame.0.push(scene.gens.signed_for(a)?);
    frame.0.extend(l.reversed().0);
    frame.0.push(scene.gens.signed_for(a)?);
    let cyc = bar_cycle_word(scene, Elem::IDENTITY, frame)?;
    scene.ensure(cyc.is_hamiltonian(), "layered frame covers")?;

    // the two transforms, tried with both signs of c where the text allows
    // replacing c by its inverse
    let mut pool: Vec<QCycle> = vec![cyc.clone()];
    let mut extend_pool = |host: &QCycle, pool: &mut Vec<QCycle>| {
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
        for eps in [1i64, -1] {
            for delta in [1i64, -1] {
                // locate the b-transform pattern anywhere along the frame
                for g in gt.elems() {
                    let spec = AlterationSpec {
                        s: gt.pow(c, -eps),
                        t: gt.pow(b, delta),
                        u: a,
                        h: gt.mul(g, gt.pow(b, delta)),
                        variant: AlterVariant::EdgeAtHT,
                    };
                    if let Ok(x) = standard_alteration(host, &spec) {
                        pool.push(x);
                        break;
                    }
                }
            }
        }
    };
    extend_pool(&cyc, &mut pool);
    let snapshot: Vec<QCycle> = pool.clone();
    for host in &snapshot {
        extend_pool(host, &mut pool);
        if pool.len() > 24 {
            break;
        }
    }
    let refs: Vec<&QCycle> = pool.iter().collect();
    if let Ok(lifted) = lift_one_of(scene, &refs, "layered transforms") {
        return certify(scene, lifted, "three-gens:main", vec![]);
    }

    if scene.centralizes(b) {
        // the voltage collapsed to [a, b]; the doubled layer path shifts it
        if n >= 4 && ell % 2 == 0 {
            let mut w = word_of_runs(
                scene,
                &[(c, li - 1), (b, 1), (c, -(li - 1)), (b, 2)],
            )?;
            let mut blocks: Vec<(Elem, i64)> = Vec::new();
            for _ in 0..ell / 2 {
                blocks.extend([(b, ni - 4), (c, 1), (b, -(ni - 4)), (c, 1)]);
            }
            let mut bw = word_of_runs(scene, &blocks)?;
            bw = bw.drop_last()?;
            w.0.extend(bw.0);
            w.0.extend(word_of_runs(scene, &[(b, -1), (c, -(li - 2))])?.0);
            let mut frame = w.clone();
            frame.0.push(scene.gens.signed_for(a)?);
            frame.0.extend(w.reversed().0);
            frame.0.push(scene.gens.signed_for(a)?);
            let c0 = bar_cycle_word(scene, Elem::IDENTITY, frame)?;
            scene.ensure(c0.is_hamiltonian(), "doubled layer frame covers")?;
            if voltage_generates(&c0) {
                let lifted = fgl_lift(&c0)?;
                return certify(scene, lifted, "three-gens:main-shift", vec![]);
            }
        }
        // a two-part bracket concentrated on [a, c] means the roles of b and
        // c should swap
        if scene.comm.generates_gprime(gt, gt.commutator(a, c)) {
            return three_gens(scene, a, c, depth + 1);
        }
        return Err(Error::Inconsistency("centralizing partner exhausted".into()));
    }

    // b does not centralize: its image is short, and both other brackets are
    // pinned involutions
    scene.ensure(n == 2, "non-centralizing partner has a short image")?;
    let ac = gt.commutator(a, c);
    if !scene.comm.z2.contains(ac) {
        return three_gens(scene, a, c, depth + 1);
    }
    if ac.is_identity() {
        return super::dispatch::durnberger_escape(scene, c, a, "three-gens:durnberger");
    }
    let bc = gt.commutator(b, c);
    if !scene.comm.z2.contains(bc) {
        return three_gens(scene, b, a, depth + 1);
    }
    if bc.is_identity() {
        return super::dispatch::durnberger_escape(scene, c, b, "three-gens:durnberger");
    }
    scene.ensure(
        scene.comm.zp.contains(gt.commutator(a, b)),
        "pair bracket confined to the odd part",
    )?;

    // dihedral-image construction over the halved group
    let p = scene.comm.p as i64;
    let lhat = (scene.gt.order() / 2) / (2 * scene.comm.p);
    let lh = lhat as i64;
    scene.ensure(lhat >= 2, "halved outer index makes room")?;
    let mut w = word_of_runs(scene, &[(c, 1)])?;
    let mut blocks: Vec<(Elem, i64)> = Vec::new();
    for _ in 0..p {
        blocks.extend([(c, lh - 2), (a, 1), (c, -(lh - 2)), (b, 1)]);
    }
    let mut bw = word_of_runs(scene, &blocks)?;
    bw = bw.drop_last()?;
    w.0.extend(bw.0);
    w.0.extend(word_of_runs(scene, &[(c, -1)])?.0);
    let mut tail: Vec<(Elem, i64)> = Vec::new();
    for _ in 0..p {
        tail.extend([(a, -1), (b, -1)]);
    }
    let mut tw = word_of_runs(scene, &tail)?;
    tw = tw.drop_last()?;
    w.0.extend(tw.0);
    let cyc = quot_cycle(scene, &scene.q_z2, Elem::IDENTITY, w)?;
    scene.ensure(cyc.is_hamiltonian(), "halved dihedral frame covers")?;
    scene.ensure(voltage_generates(&cyc), "halved frame voltage generates")?;
    let lifted = fgl_lift(&cyc)?;
    certify(scene, lifted, "three-gens:dihedral-image", vec![])
}

//! Lifting a hamiltonian cycle of a normal subgroup graph to the whole group
//! when some generator outside commutes with one inside: a coset ladder whose
//! rung displacements are solved over the labels of the subgroup cycle.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::cycles::verify_hamiltonian;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::subgrp::{generates, subgroup_generated, Subgrp};
use crate::words::{GenSet, GenWord, SignedGen};

/// `s, t` are distinct commuting members of `S`, `<S \ {s}>` is normal, and
/// `sub_cycle` is a hamiltonian cycle word of `Cay(<S \ {s}>; S \ {s})`
/// (over the same generator indexing). Returns a verified hamiltonian word
/// for `Cay(G; S)`.
pub fn durnberger_commuting(
    gt: &Arc<GroupTable>,
    gens: &Arc<GenSet>,
    s: Elem,
    t: Elem,
    sub_cycle: &GenWord,
) -> Result<GenWord> {
    if s == t {
        return Err(Error::BadInput("the two generators must differ".into()));
    }
    if !gt.commutes(s, t) {
        return Err(Error::BadInput("the generators must commute".into()));
    }
    let others: Vec<Elem> = gens.elems().iter().copied().filter(|&e| e != s).collect();
    if !others.contains(&t) {
        return Err(Error::BadInput("t must lie in S minus s".into()));
    }
    let h = subgroup_generated(gt, &others);
    if !h.is_normal() {
        return Err(Error::BadInput("the complement subgroup must be normal".into()));
    }
    if !generates(gt, gens.elems()) {
        return Err(Error::NotGenerating);
    }
    let r = gt.order() / h.order();
    if r < 2 {
        return Err(Error::BadInput("s already lies in the complement subgroup".into()));
    }
    // check the sub-cycle covers H
    {
        let mut seen = vec![false; gt.order()];
        let mut v = Elem::IDENTITY;
        let mut count = 0;
        for &sg in &sub_cycle.0 {
            if seen[v.idx()] || !h.contains(v) {
                return Err(Error::BadInput("sub-cycle is not hamiltonian in the complement".into()));
            }
            seen[v.idx()] = true;
            count += 1;
            v = gt.mul(v, gens.resolve(sg));
        }
        if v != Elem::IDENTITY || count != h.order() {
            return Err(Error::BadInput("sub-cycle is not hamiltonian in the complement".into()));
        }
    }

    // rung displacements come from rotations of the sub-cycle
    let mut labels: Vec<Elem> = Vec::new();
    for &sg in &sub_cycle.0 {
        for e in [gens.resolve(sg), gt.inv(gens.resolve(sg))] {
            if !labels.contains(&e) {
                labels.push(e);
            }
        }
    }
    // closure: d_1 s d_2 s ... d_r x = e with x any label returning to e
    let closers: Vec<Elem> = closer_labels(gt, gens, &h, s, r);
    let seq = solve_rungs(gt, &h, &labels, s, r, &closers)
        .ok_or_else(|| Error::NoCycleFound("no rung assignment closes the ladder".into()))?;

    let mut word = GenWord::empty();
    for (i, &delta) in seq.displacements.iter().enumerate() {
        let rung = rung_word(gt, gens, sub_cycle, delta)?;
        word.0.extend_from_slice(&rung.0);
        if i + 1 < r {
            word.0.push(gens.signed_for(s)?);
        }
    }
    word.0.push(gens.signed_for(seq.closer)?);

    let report = verify_hamiltonian(gt, gens, &word);
    if !report.ok {
        return Err(Error::Inconsistency(format!(
            "ladder failed verification: {:?}",
            report.reason
        )));
    }
    Ok(word)
}

struct RungSolution {
    displacements: Vec<Elem>,
    closer: Elem,
}

/// Labels in `S u S^{-1}` whose inverse lies in the top coset, i.e. that can
/// close the ladder back to the identity.
fn closer_labels(
    gt: &GroupTable,
    gens: &GenSet,
    h: &Subgrp,
    s: Elem,
    r: usize,
) -> Vec<Elem> {
    let top = gt.pow(s, r as i64 - 1); // representative of the final coset
    let mut out = Vec::new();
    for sg in gens.signed_all() {
        let x = gens.resolve(sg);
        let xi = gt.inv(x);
        // x^{-1} in coset s^{r-1} H
        if h.contains(gt.mul(gt.inv(top), xi)) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Depth-first solve of `d_1 s d_2 s ... d_r x = e` over the displacement
/// alphabet (the final `s` is replaced by the closing label `x`); the search
/// space is tiny for the coset counts that occur here.
fn solve_rungs(
    gt: &GroupTable,
    h: &Subgrp,
    labels: &[Elem],
    s: Elem,
    r: usize,
    closers: &[Elem],
) -> Option<RungSolution> {
    fn rec(
        gt: &GroupTable,
        h: &Subgrp,
        labels: &[Elem],
        s: Elem,
        left: usize,
        acc: Elem,
        chosen: &mut Vec<Elem>,
        closers: &[Elem],
    ) -> Option<Elem> {
        if left == 0 {
            return closers
                .iter()
                .copied()
                .find(|&x| gt.mul(acc, x).is_identity());
        }
        for &d in labels {
            if !h.contains(d) {
                continue;
            }
            // after this rung: acc * d, then an s-step unless it is the last rung
            let next = if left == 1 {
                gt.mul(acc, d)
            } else {
                gt.mul(gt.mul(acc, d), s)
            };
            chosen.push(d);
            if let Some(x) = rec(gt, h, labels, s, left - 1, next, chosen, closers) {
                return Some(x);
            }
            chosen.pop();
        }
        None
    }
    let mut chosen = Vec::new();
    let closer = rec(gt, h, labels, s, r, Elem::IDENTITY, &mut chosen, closers)?;
    Some(RungSolution {
        displacements: chosen,
        closer,
    })
}

/// Hamiltonian path of `H` (from any start, as a word) with the given net
/// displacement: the sub-cycle rotated to end at a matching edge, dropped.
fn rung_word(
    gt: &GroupTable,
    gens: &GenSet,
    cycle: &GenWord,
    delta: Elem,
) -> Result<GenWord> {
    let inv = gt.inv(delta);
    let resolved: Vec<Elem> = cycle.0.iter().map(|&sg| gens.resolve(sg)).collect();
    if let Some(pos) = resolved.iter().position(|&l| l == inv) {
        let mut w: Vec<SignedGen> = cycle.0[pos + 1..].to_vec();
        w.extend_from_slice(&cycle.0[..pos]);
        return Ok(GenWord(w));
    }
    if resolved.contains(&delta) {
        return rung_word(gt, gens, &cycle.reversed(), delta);
    }
    Err(Error::PatternNotFound(format!(
        "no rung with displacement {}",
        delta.0
    )))
}

/// Parity-aware reachability used when planning displacement targets.
#[allow(dead_code)]
pub(crate) fn reachable_with_parity(
    gt: &GroupTable,
    h: &Subgrp,
    labels: &[Elem],
    target: Elem,
    count: usize,
) -> bool {
    let mut dist = vec![[usize::MAX; 2]; gt.order()];
    dist[0][0] = 0;
    let mut q = VecDeque::new();
    q.push_back((Elem::IDENTITY, 0usize));
    while let Some((v, par)) = q.pop_front() {
        let d = dist[v.idx()][par];
        for &l in labels {
            let w = gt.mul(v, l);
            if h.contains(w) && dist[w.idx()][1 - par] == usize::MAX {
                dist[w.idx()][1 - par] = d + 1;
                q.push_back((w, 1 - par));
            }
        }
    }
    let par = count % 2;
    dist[target.idx()][par] != usize::MAX && dist[target.idx()][par] <= count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FamilySpec};
    use crate::oracle;

    #[test]
    fn direct_product_ladder() {
        // G = Z2 x D6 realized as a semidirect product with trivial action on
        // the Z2 part; s = the central involution, t = anything commuting.
        let gt = Arc::new(
            build(&FamilySpec::Semidirect {
                m: 2,
                ns: vec![6, 2],
                action: vec![vec![-1, 0], vec![0, 1]],
            })
            .unwrap(),
        );
        // base = Z6 x Z2 at indices: (x, y) -> 2x + y; a at offset 12
        let r = Elem(2); // (1,0) of order 6
        let z = Elem(1); // (0,1) central of order 2
        let a = Elem(12); // the inverting involution
        let gens = Arc::new(GenSet::new(&gt, vec![r, z, a]));
        // H = <r, a> is dihedral of order 12, normal, and z commutes with r
        let sub_gens = Arc::new(GenSet::new(&gt, vec![r, z, a]));
        let h = subgroup_generated(&gt, &[r, a]);
        let mut allowed = vec![false; gt.order()];
        for &e in h.elems() {
            allowed[e.idx()] = true;
        }
        let sub_cycle = oracle::Search::in_group(&gt, &sub_gens)
            .restrict(allowed)
            .run()
            .unwrap();
        let w = durnberger_commuting(&gt, &gens, z, r, &sub_cycle).unwrap();
        assert!(verify_hamiltonian(&gt, &gens, &w).ok);
    }

    #[test]
    fn non_commuting_rejected() {
        let gt = Arc::new(build(&FamilySpec::Dihedral { n: 6 }).unwrap());
        let r = Elem(1);
        let a = Elem(6);
        let gens = Arc::new(GenSet::new(&gt, vec![r, a]));
        let err = durnberger_commuting(&gt, &gens, a, r, &GenWord::empty()).unwrap_err();
        assert!(matches!(err, Error::BadInput(_)));
    }
}

//! The front door: classify the instance and route it through the case
//! branches, falling back to the search oracle exactly where the argument
//! leans on an externally established result.

use std::sync::Arc;

use crate::catalog;
use crate::comm::decompose_comm;
use crate::cycles::{verify_hamiltonian, CycleCertificate};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable, MAX_ORDER};
use crate::subgrp::{generates, irredundant_reduce, subgroup_generated};
use crate::toolbox::abelian::abelian_ham_cycle;
use crate::toolbox::durnberger::durnberger_commuting;
use crate::view::View;
use crate::words::{GenSet, GenWord};

use super::context::Scene;
use super::dup;
use super::many_gens::many_gens;
use super::scap::in_derived;
use super::three_gens::three_gens;
use super::two_gens::two_gens;
use super::util::{certify, oracle_full};
use super::wide_in::wide_inside_entry;
use super::wide_out::wide_outside;

/// Where the classification lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseTag {
    Tiny,
    Abelian,
    FallbackPrime,
    FallbackNilpotent,
    FallbackUnsupported,
    InDerived(Elem),
    Dup(Elem, Elem),
    WideOutside(Elem, Elem),
    WideInside(Elem, Elem),
    Short(Elem, Elem, usize),
}

/// Deterministic classification of a prepared scene.
pub fn classify(scene: &Scene) -> CaseTag {
    let gt = &scene.gt;
    // a generator inside the commutator subgroup preempts everything
    if let Some(&s) = scene
        .gens
        .elems()
        .iter()
        .find(|&&s| scene.comm.gprime.contains(s))
    {
        return CaseTag::InDerived(s);
    }
    if let Some((u, v)) = dup::find_dup_pair(scene) {
        return CaseTag::Dup(u, v);
    }
    // a wide non-centralizing generator routes to the splice cases
    if let Some(&a) = scene
        .gens
        .elems()
        .iter()
        .find(|&&s| !scene.centralizes(s) && scene.bar_order(s) > 2)
    {
        let b = scene
            .gens
            .elems()
            .iter()
            .copied()
            .find(|&t| scene.zp_in_bracket(a, t))
            .expect("a partner with an odd-part bracket always exists");
        if scene.bar_in_span(b, &[a]) {
            return CaseTag::WideInside(a, b);
        }
        return CaseTag::WideOutside(a, b);
    }
    // all non-centralizing generators have image order two
    let a = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&s| !scene.centralizes(s))
        .expect("a non-centralizing generator exists off the nilpotent branch");
    let b = scene
        .gens
        .elems()
        .iter()
        .copied()
        .find(|&t| scene.zp_in_bracket(a, t))
        .expect("a partner with an odd-part bracket always exists");
    let _ = gt;
    CaseTag::Short(a, b, scene.gens.len())
}

/// Constructs a verified hamiltonian-cycle certificate for `Cay(G; S)`.
pub fn construct(gt: &Arc<GroupTable>, gens_in: &[Elem]) -> Result<CycleCertificate> {
    construct_depth(gt, gens_in, 0)
}

pub(crate) fn construct_depth(
    gt: &Arc<GroupTable>,
    gens_in: &[Elem],
    depth: usize,
) -> Result<CycleCertificate> {
    if depth > 6 {
        return Err(Error::Inconsistency("construction recursion ran away".into()));
    }
    if gt.order() > MAX_ORDER {
        return Err(Error::CapExceeded(gt.order(), MAX_ORDER));
    }
    for &g in gens_in {
        gt.check(g)?;
    }
    if !generates(gt, gens_in) {
        return Err(Error::NotGenerating);
    }
    let reduced = irredundant_reduce(gt, gens_in)?;

    // degenerate orders
    if gt.order() == 1 {
        return Ok(CycleCertificate {
            group: gt.name().to_string(),
            gens: reduced,
            word: GenWord::empty(),
            method: "tiny".into(),
            verified: true,
            fallbacks: vec![],
        });
    }
    if gt.order() == 2 {
        let gens = Arc::new(GenSet::new(gt, reduced.clone()));
        let word = GenWord(vec![crate::words::SignedGen::fwd(0); 2]);
        let report = verify_hamiltonian(gt, &gens, &word);
        if !report.ok {
            return Err(Error::Inconsistency("two-element cycle failed".into()));
        }
        return Ok(CycleCertificate {
            group: gt.name().to_string(),
            gens: reduced,
            word,
            method: "tiny".into(),
            verified: true,
            fallbacks: vec![],
        });
    }

    if gt.is_abelian() {
        let gens = Arc::new(GenSet::new(gt, reduced.clone()));
        let view = View::of_group(gt, &gens);
        let all: Vec<usize> = (0..gens.len()).collect();
        let word = abelian_ham_cycle(&view, &all)?;
        let scene_like = CycleCertificate {
            group: gt.name().to_string(),
            gens: reduced,
            word: word.clone(),
            method: "abelian".into(),
            verified: verify_hamiltonian(gt, &gens, &word).ok,
            fallbacks: vec![],
        };
        if !scene_like.verified {
            return Err(Error::Inconsistency("abelian cycle failed verification".into()));
        }
        return Ok(scene_like);
    }

    // commutator-subgroup shape gate
    let scene = match Scene::new(gt.clone(), reduced.clone()) {
        Ok(scene) => scene,
        Err(Error::UnsupportedGroup(_)) => {
            let gp = crate::subgrp::commutator_subgroup(gt);
            let reason = if crate::toolbox::double_edge::is_prime(gp.order()) {
                "prime-commutator"
            } else {
                "unsupported"
            };
            let gens = Arc::new(GenSet::new(gt, reduced));
            let word = crate::oracle::find_ham_cycle(gt, &gens, Default::default())?;
            let report = verify_hamiltonian(gt, &gens, &word);
            if !report.ok {
                return Err(Error::Inconsistency("oracle cycle failed verification".into()));
            }
            return Ok(CycleCertificate {
                group: gt.name().to_string(),
                gens: gens.elems().to_vec(),
                word,
                method: format!("fallback:{reason}"),
                verified: true,
                fallbacks: vec![format!("oracle:{reason}")],
            });
        }
        Err(e) => return Err(e),
    };

    // nilpotent instances go to the oracle standing in for the cited result
    if scene.gens.elems().iter().all(|&s| scene.centralizes(s)) {
        return oracle_full(&scene, "nilpotent");
    }

    match classify(&scene) {
        CaseTag::InDerived(s) => in_derived(&scene, s),
        CaseTag::Dup(u, v) => dup::dup_case(&scene, u, v),
        CaseTag::WideOutside(a, b) => wide_outside(&scene, a, b),
        CaseTag::WideInside(a, b) => wide_inside_entry(&scene, a, b),
        CaseTag::Short(a, b, 2) => two_gens(&scene, a, b),
        CaseTag::Short(a, b, 3) => three_gens(&scene, a, b, 0),
        CaseTag::Short(a, b, _) => many_gens(&scene, a, b),
        CaseTag::Tiny | CaseTag::Abelian => unreachable!("handled before classification"),
        CaseTag::FallbackPrime | CaseTag::FallbackNilpotent | CaseTag::FallbackUnsupported => {
            unreachable!("handled before classification")
        }
    }
}

/// The subgroup-lift escape: drop `s`, solve the complement recursively, and
/// run the commuting ladder. Records the inner certificate's substitutions.
pub fn durnberger_escape(
    scene: &Scene,
    s: Elem,
    t: Elem,
    tag: &str,
) -> Result<CycleCertificate> {
    let gt = &scene.gt;
    let others: Vec<Elem> = scene.gen_elems_without(&[s]);
    let h = subgroup_generated(gt, &others);
    if !h.is_normal() || h.order() == gt.order() {
        return Err(Error::BadInput("complement subgroup unusable".into()));
    }
    let (h_table, to_parent) = h.as_group(gt, &format!("{}#sub", gt.name()))?;
    let h_table = Arc::new(h_table);
    let mut to_sub = vec![usize::MAX; gt.order()];
    for (i, &e) in to_parent.iter().enumerate() {
        to_sub[e.idx()] = i;
    }
    let sub_gens: Vec<Elem> = others.iter().map(|&e| Elem(to_sub[e.idx()] as u16)).collect();
    let inner = construct_depth(&h_table, &sub_gens, 7)?;

    // map the inner word back: the inner generator list may be a reduced
    // subset of `others`
    let inner_elems: Vec<Elem> = inner
        .gens
        .iter()
        .map(|&e| to_parent[e.idx()])
        .collect();
    let full = Arc::new(GenSet::new(gt, scene.gens.elems().to_vec()));
    let mut mapped = GenWord::empty();
    for sg in inner.word.0 {
        let elem = inner_elems[sg.gen as usize];
        let parent_label = if sg.inverse { gt.inv(elem) } else { elem };
        mapped.0.push(full.signed_for(parent_label)?);
    }
    // the ladder needs a t-labelled edge in the sub-cycle
    let has_t = mapped
        .0
        .iter()
        .any(|&sg| full.resolve(sg) == t || full.resolve(sg) == gt.inv(t));
    let sub_cycle = if has_t {
        mapped
    } else {
        // search one that uses t
        let mut allowed = vec![false; gt.order()];
        for &e in h.elems() {
            allowed[e.idx()] = true;
        }
        let t_img = t;
        crate::oracle::Search::in_group(gt, &full)
            .restrict(allowed)
            .require_edge(Elem::IDENTITY, t_img)?
            .run()?
    };
    let word = durnberger_commuting(gt, &scene.gens, s, t, &sub_cycle)?;
    let mut log = inner.fallbacks;
    certify(scene, word, tag, log.drain(..).collect())
}

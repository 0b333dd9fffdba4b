//! Shared helpers for the case branches: cycle wrappers over the
//! abelianization, lift-and-verify plumbing, and quotient cycle search.

use std::sync::Arc;

use crate::cycles::{verify_hamiltonian, CycleCertificate, QCycle};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::oracle::{find_ham_cycle, Search, SearchBudget};
use crate::quotient::QuotientView;
use crate::toolbox::fgl::fgl_lift;
use crate::words::GenWord;

use super::context::Scene;

/// A quotient cycle over the abelianization, from a word of labels.
pub fn bar_cycle(scene: &Scene, base: Elem, labels: &[Elem]) -> Result<QCycle> {
    let word = scene.gens.word(labels)?;
    QCycle::new(scene.q_comm.clone(), scene.gens.clone(), base, word)
}

pub fn bar_cycle_word(scene: &Scene, base: Elem, word: GenWord) -> Result<QCycle> {
    QCycle::new(scene.q_comm.clone(), scene.gens.clone(), base, word)
}

/// A cycle over an arbitrary parent-level quotient.
pub fn quot_cycle(
    scene: &Scene,
    qv: &Arc<QuotientView>,
    base: Elem,
    word: GenWord,
) -> Result<QCycle> {
    QCycle::new(qv.clone(), scene.gens.clone(), base, word)
}

/// Whether the voltage of `c` generates the full kernel.
pub fn voltage_generates(c: &QCycle) -> bool {
    match c.voltage() {
        Ok(v) => c.qv().parent().element_order(v) == c.qv().normal().order(),
        Err(_) => false,
    }
}

/// Lifts whichever cycle has a generating voltage.
pub fn lift_one_of(scene: &Scene, cands: &[&QCycle], tag: &str) -> Result<GenWord> {
    for c in cands {
        if voltage_generates(c) {
            return fgl_lift(c);
        }
    }
    Err(Error::Inconsistency(format!(
        "{tag}: no candidate cycle had a generating voltage"
    )))
}

/// Certifies a finished word against the full group.
pub fn certify(
    scene: &Scene,
    word: GenWord,
    method: impl Into<String>,
    fallbacks: Vec<String>,
) -> Result<CycleCertificate> {
    let report = verify_hamiltonian(&scene.gt, &scene.gens, &word);
    if !report.ok {
        return Err(Error::Inconsistency(format!(
            "constructed word failed verification: {:?}",
            report.reason
        )));
    }
    Ok(CycleCertificate {
        group: scene.gt.name().to_string(),
        gens: scene.gens.elems().to_vec(),
        word,
        method: method.into(),
        verified: true,
        fallbacks,
    })
}

/// Oracle bridge for quotient graphs standing in for externally cited
/// hamiltonicity results: finds a hamiltonian cycle of `Cay(G/N; S)` by
/// backtracking and records the substitution.
pub fn oracle_quotient_cycle(
    scene: &Scene,
    qv: &Arc<QuotientView>,
    reason: &str,
    log: &mut Vec<String>,
) -> Result<GenWord> {
    log.push(reason.to_string());
    Search::in_quotient(qv, &scene.gens)
        .with_budget(SearchBudget::default())
        .run()
}

/// Oracle on the full group, for the top-level fallback branches.
pub fn oracle_full(scene: &Scene, reason: &str) -> Result<CycleCertificate> {
    let word = find_ham_cycle(&scene.gt, &scene.gens, SearchBudget::default())?;
    certify(scene, word, format!("fallback:{reason}"), vec![format!("oracle:{reason}")])
}

/// Deterministic search for a hamiltonian cycle of the abelianization with
/// required oriented edges, used where a construction says such a cycle is
/// easy to find. Constraints are quotient-level (coset, label-element) pairs.
pub fn bar_search_with_edges(
    scene: &Scene,
    required: &[(Elem, Elem)],
    prefix: &[crate::words::SignedGen],
) -> Result<QCycle> {
    let mut search = Search::in_quotient(&scene.q_comm, &scene.gens);
    for &(src, lab) in required {
        search = search.require_edge(src, scene.q_comm.project(lab))?;
    }
    if !prefix.is_empty() {
        search = search.with_prefix(prefix.to_vec());
    }
    let word = search.run()?;
    bar_cycle_word(scene, Elem::IDENTITY, word)
}

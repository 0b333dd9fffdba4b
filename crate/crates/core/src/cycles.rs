//! Oriented cycles in quotient Cayley graphs, voltages, and the verifier.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::quotient::QuotientView;
use crate::words::{GenSet, GenWord, SignedGen};

/// An oriented, vertex-simple closed cycle in `Cay(G/N; S)`.
///
/// The word stores parent-level generators; adjacency is read through the
/// projection, so the voltage needs no un-projection step.
#[derive(Clone, Debug)]
pub struct QCycle {
    qv: Arc<QuotientView>,
    gens: Arc<GenSet>,
    /// Parent-level basepoint; its coset is the starting vertex.
    base: Elem,
    word: GenWord,
}

impl QCycle {
    pub fn new(
        qv: Arc<QuotientView>,
        gens: Arc<GenSet>,
        base: Elem,
        word: GenWord,
    ) -> Result<QCycle> {
        if word.is_empty() {
            return Err(Error::BadInput("a cycle needs at least one edge".into()));
        }
        let c = QCycle {
            qv,
            gens,
            base,
            word,
        };
        let q = c.qv.quotient();
        let start = c.qv.project(c.base);
        let mut seen = vec![false; q.order()];
        let mut v = start;
        for &sg in &c.word.0 {
            if seen[v.idx()] {
                return Err(Error::NotSimple);
            }
            seen[v.idx()] = true;
            v = q.mul(v, c.qv.project(c.gens.resolve(sg)));
        }
        if v != start {
            return Err(Error::NotClosed);
        }
        Ok(c)
    }

    pub fn qv(&self) -> &Arc<QuotientView> {
        &self.qv
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn base(&self) -> Elem {
        self.base
    }

    pub fn word(&self) -> &GenWord {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The visited cosets, one per edge, starting at the base coset.
    pub fn quotient_vertices(&self) -> Vec<Elem> {
        let q = self.qv.quotient();
        let mut out = Vec::with_capacity(self.word.len());
        let mut v = self.qv.project(self.base);
        for &sg in &self.word.0 {
            out.push(v);
            v = q.mul(v, self.qv.project(self.gens.resolve(sg)));
        }
        out
    }

    /// Oriented edges as (source coset, label element, word position).
    pub fn edges(&self) -> Vec<(Elem, Elem, usize)> {
        self.quotient_vertices()
            .into_iter()
            .zip(self.word.0.iter())
            .enumerate()
            .map(|(i, (v, &sg))| (v, self.gens.resolve(sg), i))
            .collect()
    }

    pub fn find_edge(&self, src: Elem, label: Elem) -> Option<usize> {
        self.edges()
            .into_iter()
            .find(|&(v, l, _)| v == src && l == label)
            .map(|(_, _, i)| i)
    }

    /// Position where the oriented path `[src](labels...)` starts, if present
    /// (indices wrap around the cycle).
    pub fn find_path(&self, src: Elem, labels: &[Elem]) -> Option<usize> {
        let n = self.word.len();
        if labels.len() > n {
            return None;
        }
        let verts = self.quotient_vertices();
        let resolved: Vec<Elem> = self.word.0.iter().map(|&sg| self.gens.resolve(sg)).collect();
        'outer: for start in 0..n {
            if verts[start] != src {
                continue;
            }
            for (k, &lab) in labels.iter().enumerate() {
                if resolved[(start + k) % n] != lab {
                    continue 'outer;
                }
            }
            return Some(start);
        }
        None
    }

    pub fn contains_edge(&self, src: Elem, label: Elem) -> bool {
        self.find_edge(src, label).is_some()
    }

    /// True when the cycle visits every coset of the quotient.
    pub fn is_hamiltonian(&self) -> bool {
        self.word.len() == self.qv.quotient().order()
    }

    /// Voltage: the conjugated product of the lifted word, an element of `N`.
    pub fn voltage(&self) -> Result<Elem> {
        if !self.qv.normal_is_abelian() {
            return Err(Error::UnsupportedGroup(
                "voltage requires an abelian normal subgroup".into(),
            ));
        }
        let gt = self.qv.parent();
        let prod = self
            .word
            .0
            .iter()
            .fold(Elem::IDENTITY, |acc, &sg| gt.mul(acc, self.gens.resolve(sg)));
        let v = self.base;
        let volt = gt.mul(gt.mul(v, prod), gt.inv(v));
        if !self.qv.normal().contains(volt) {
            return Err(Error::NotClosed);
        }
        Ok(volt)
    }

    /// The translate `g * C`.
    pub fn translate(&self, g: Elem) -> QCycle {
        QCycle {
            qv: self.qv.clone(),
            gens: self.gens.clone(),
            base: self.qv.parent().mul(g, self.base),
            word: self.word.clone(),
        }
    }

    /// The same cycle with the opposite orientation.
    pub fn reversed(&self) -> QCycle {
        QCycle {
            qv: self.qv.clone(),
            gens: self.gens.clone(),
            base: self.base,
            word: self.word.reversed(),
        }
    }

    /// Rotates the starting point forward by `k` edges. The new base is the
    /// old base times the consumed prefix, so it stays a parent element of the
    /// right coset.
    pub fn rotated(&self, k: usize) -> QCycle {
        let n = self.word.len();
        let k = k % n;
        let gt = self.qv.parent();
        let mut base = self.base;
        for &sg in &self.word.0[..k] {
            base = gt.mul(base, self.gens.resolve(sg));
        }
        let mut w = self.word.0[k..].to_vec();
        w.extend_from_slice(&self.word.0[..k]);
        QCycle {
            qv: self.qv.clone(),
            gens: self.gens.clone(),
            base,
            word: GenWord(w),
        }
    }

    /// Replaces the word wholesale (revalidating).
    pub fn with_word(&self, base: Elem, word: GenWord) -> Result<QCycle> {
        QCycle::new(self.qv.clone(), self.gens.clone(), base, word)
    }

    pub fn vertex_bitmap(&self) -> Vec<bool> {
        let mut seen = vec![false; self.qv.quotient().order()];
        for v in self.quotient_vertices() {
            seen[v.idx()] = true;
        }
        seen
    }

    pub fn is_vertex_disjoint_from(&self, other: &QCycle) -> bool {
        let mine = self.vertex_bitmap();
        other.quotient_vertices().iter().all(|v| !mine[v.idx()])
    }
}

/// Outcome of a hamiltonicity check, with enough detail to name the defect.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ok: bool,
    pub reason: Option<String>,
    pub first_repeat: Option<Elem>,
    pub closure_end: Option<Elem>,
    pub expected_len: usize,
    pub actual_len: usize,
}

impl VerifyReport {
    fn pass(len: usize) -> VerifyReport {
        VerifyReport {
            ok: true,
            reason: None,
            first_repeat: None,
            closure_end: None,
            expected_len: len,
            actual_len: len,
        }
    }
}

fn verify_cycle_steps(order: usize, base: usize, steps: &[usize], mul: impl Fn(usize, usize) -> usize) -> VerifyReport {
    if steps.len() != order {
        return VerifyReport {
            ok: false,
            reason: Some("length".into()),
            first_repeat: None,
            closure_end: None,
            expected_len: order,
            actual_len: steps.len(),
        };
    }
    let mut seen = vec![false; order];
    let mut v = base;
    for &s in steps {
        if seen[v] {
            return VerifyReport {
                ok: false,
                reason: Some("repeat".into()),
                first_repeat: Some(Elem(v as u16)),
                closure_end: None,
                expected_len: order,
                actual_len: steps.len(),
            };
        }
        seen[v] = true;
        v = mul(v, s);
    }
    if v != base {
        return VerifyReport {
            ok: false,
            reason: Some("not-closed".into()),
            first_repeat: None,
            closure_end: Some(Elem(v as u16)),
            expected_len: order,
            actual_len: steps.len(),
        };
    }
    VerifyReport::pass(order)
}

/// Checks that `word`, walked from the identity, traces a hamiltonian cycle
/// of `Cay(G; S)`.
pub fn verify_hamiltonian(gt: &GroupTable, gens: &GenSet, word: &GenWord) -> VerifyReport {
    let steps: Vec<usize> = word.0.iter().map(|&sg| gens.resolve(sg).idx()).collect();
    verify_cycle_steps(gt.order(), 0, &steps, |v, s| {
        gt.mul(Elem(v as u16), Elem(s as u16)).idx()
    })
}

/// Checks that `word` from `base` is a hamiltonian path (all vertices once,
/// no closure required). Returns the report and the endpoint reached.
pub fn verify_ham_path(
    gt: &GroupTable,
    gens: &GenSet,
    base: Elem,
    word: &GenWord,
) -> (bool, Elem) {
    if word.len() + 1 != gt.order() {
        // An empty word on the trivial group is the one degenerate pass.
        if !(gt.order() == 1 && word.is_empty()) {
            return (false, base);
        }
    }
    let mut seen = vec![false; gt.order()];
    let mut v = base;
    for &sg in &word.0 {
        if seen[v.idx()] {
            return (false, v);
        }
        seen[v.idx()] = true;
        v = gt.mul(v, gens.resolve(sg));
    }
    if seen[v.idx()] {
        return (false, v);
    }
    (true, v)
}

/// Hamiltonicity of a word read in a quotient graph.
pub fn verify_hamiltonian_in_quotient(
    qv: &QuotientView,
    gens: &GenSet,
    base: Elem,
    word: &GenWord,
) -> VerifyReport {
    let q = qv.quotient();
    let steps: Vec<usize> = word
        .0
        .iter()
        .map(|&sg| qv.project(gens.resolve(sg)).idx())
        .collect();
    verify_cycle_steps(q.order(), qv.project(base).idx(), &steps, |v, s| {
        q.mul(Elem(v as u16), Elem(s as u16)).idx()
    })
}

/// A verified (or not) hamiltonian-cycle witness for one Cayley graph.
#[derive(Clone, Debug)]
pub struct CycleCertificate {
    pub group: String,
    pub gens: Vec<Elem>,
    pub word: GenWord,
    pub method: String,
    pub verified: bool,
    /// Oracle or external-result substitutions used along the way.
    pub fallbacks: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CertWire {
    group: String,
    gens: Vec<usize>,
    word: Vec<[i64; 2]>,
    method: String,
    verified: bool,
}

impl CycleCertificate {
    pub fn to_json(&self) -> String {
        let wire = CertWire {
            group: self.group.clone(),
            gens: self.gens.iter().map(|e| e.idx()).collect(),
            word: self
                .word
                .0
                .iter()
                .map(|sg| [sg.gen as i64, if sg.inverse { -1 } else { 1 }])
                .collect(),
            method: self.method.clone(),
            verified: self.verified,
        };
        serde_json::to_string_pretty(&wire).expect("certificate serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<CycleCertificate> {
        let wire: CertWire = serde_json::from_str(s)?;
        let mut word = Vec::with_capacity(wire.word.len());
        for [g, sign] in wire.word {
            if g < 0 || (sign != 1 && sign != -1) {
                return Err(Error::InvalidFormat(format!("bad word entry [{g}, {sign}]")));
            }
            word.push(SignedGen {
                gen: g as u16,
                inverse: sign == -1,
            });
        }
        Ok(CycleCertificate {
            group: wire.group,
            gens: wire.gens.into_iter().map(|i| Elem(i as u16)).collect(),
            word: GenWord(word),
            method: wire.method,
            verified: wire.verified,
            fallbacks: Vec::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::QuotientView;
    use crate::subgrp::subgroup_generated;
    use crate::testutil::{cyclic, dihedral};

    #[test]
    fn verify_small_cycles() {
        let z5 = cyclic(5);
        let gens = GenSet::new(&z5, vec![Elem(1)]);
        let word = GenWord(vec![SignedGen::fwd(0); 5]);
        assert!(verify_hamiltonian(&z5, &gens, &word).ok);
        let short = GenWord(vec![SignedGen::fwd(0); 4]);
        let rep = verify_hamiltonian(&z5, &gens, &short);
        assert!(!rep.ok);
        assert_eq!(rep.reason.as_deref(), Some("length"));
        let bad = GenWord(vec![
            SignedGen::fwd(0),
            SignedGen::bwd(0),
            SignedGen::fwd(0),
            SignedGen::bwd(0),
            SignedGen::fwd(0),
        ]);
        let rep = verify_hamiltonian(&z5, &gens, &bad);
        assert_eq!(rep.reason.as_deref(), Some("repeat"));
        assert_eq!(rep.first_repeat, Some(Elem(0)));
    }

    #[test]
    fn qcycle_voltage_basics() {
        let gt = Arc::new(dihedral(12));
        let n = subgroup_generated(&gt, &[Elem(2)]);
        let qv = Arc::new(QuotientView::new(gt.clone(), n).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(1), Elem(12)]));
        // In the Klein quotient, (r, s, r^{-1}, s^{-1}) is a 4-cycle.
        let word = GenWord(vec![
            SignedGen::fwd(0),
            SignedGen::fwd(1),
            SignedGen::bwd(0),
            SignedGen::bwd(1),
        ]);
        let c = QCycle::new(qv.clone(), gens.clone(), Elem::IDENTITY, word).unwrap();
        assert!(c.is_hamiltonian());
        let v = c.voltage().unwrap();
        // r s r^{-1} s^{-1} = [r^{-1}, s^{-1}] = r^2-power; lies in N
        assert!(qv.normal().contains(v));
        assert_eq!(v, gt.mul(gt.mul(Elem(1), Elem(12)), gt.mul(Elem(11), Elem(12))));
    }

    #[test]
    fn qcycle_rejects_bad_words() {
        let gt = Arc::new(dihedral(12));
        let n = subgroup_generated(&gt, &[Elem(2)]);
        let qv = Arc::new(QuotientView::new(gt.clone(), n).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(1), Elem(12)]));
        let open = GenWord(vec![SignedGen::fwd(0), SignedGen::fwd(1)]);
        assert!(matches!(
            QCycle::new(qv.clone(), gens.clone(), Elem::IDENTITY, open),
            Err(Error::NotClosed)
        ));
        let revisits = GenWord(vec![
            SignedGen::fwd(0),
            SignedGen::bwd(0),
            SignedGen::fwd(1),
            SignedGen::bwd(1),
        ]);
        assert!(matches!(
            QCycle::new(qv, gens, Elem::IDENTITY, revisits),
            Err(Error::NotSimple)
        ));
    }

    #[test]
    fn rotation_preserves_voltage() {
        let gt = Arc::new(dihedral(12));
        let n = subgroup_generated(&gt, &[Elem(2)]);
        let qv = Arc::new(QuotientView::new(gt.clone(), n).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(1), Elem(12)]));
        let word = GenWord(vec![
            SignedGen::fwd(0),
            SignedGen::fwd(1),
            SignedGen::bwd(0),
            SignedGen::bwd(1),
        ]);
        let c = QCycle::new(qv, gens, Elem::IDENTITY, word).unwrap();
        let v0 = c.voltage().unwrap();
        for k in 1..4 {
            assert_eq!(c.rotated(k).voltage().unwrap(), v0);
        }
        assert_eq!(c.reversed().voltage().unwrap(), c.qv.parent().inv(v0));
    }

    #[test]
    fn certificate_round_trip() {
        let cert = CycleCertificate {
            group: "Z5".into(),
            gens: vec![Elem(1)],
            word: GenWord(vec![SignedGen::fwd(0), SignedGen::bwd(0)]),
            method: "test".into(),
            verified: true,
            fallbacks: vec![],
        };
        let s = cert.to_json();
        let back = CycleCertificate::from_json(&s).unwrap();
        assert_eq!(back.word, cert.word);
        assert_eq!(back.method, "test");
        assert!(s.contains("\"word\""));
    }
}

//! Connected sums of cycles in abelian quotients: the edge-swap merge, its
//! voltage law, and iterated ladders over signed translates.

use crate::cycles::QCycle;
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::words::{GenWord, SignedGen};

/// Merges two vertex-disjoint cycles by removing `[g](t)` from `c1` and
/// `[g s t](t^{-1})` from `c2`, bridging with `s` and `s^{-1}`. `src` is the
/// coset of `g` in the quotient.
pub fn connected_sum(c1: &QCycle, c2: &QCycle, src: Elem, t: Elem, s: Elem) -> Result<QCycle> {
    let qv = c1.qv();
    if !std::sync::Arc::ptr_eq(qv, c2.qv()) {
        return Err(Error::BadInput("connected sum across different quotients".into()));
    }
    if !c1.is_vertex_disjoint_from(c2) {
        return Err(Error::NotDisjoint);
    }
    let q = qv.quotient();
    let t_inv = qv.parent().inv(t);
    let s_inv = qv.parent().inv(s);
    let pos1 = c1
        .find_edge(src, t)
        .ok_or_else(|| Error::PatternNotFound("first cycle lacks the attach edge".into()))?;
    let src2 = q.mul(q.mul(src, qv.project(s)), qv.project(t));
    let pos2 = c2
        .find_edge(src2, t_inv)
        .ok_or_else(|| Error::PatternNotFound("second cycle lacks the reversed edge".into()))?;

    let gens = c1.gens();
    let sg_s: SignedGen = gens.signed_for(s).map_err(|_| {
        Error::BadInput("bridge label outside S u S^-1".into())
    })?;
    let sg_s_inv: SignedGen = gens.signed_for(s_inv).map_err(|_| {
        Error::BadInput("bridge label outside S u S^-1".into())
    })?;

    // rotate c1 so its removed edge is step 0, c2 so its removed edge is step 0
    let r1 = c1.rotated(pos1);
    let r2 = c2.rotated(pos2);
    // new cycle from src: s, (c2 from after its removed edge, wrapping), s^{-1},
    // then the rest of c1
    let mut w: Vec<SignedGen> = Vec::with_capacity(c1.len() + c2.len() + 2);
    w.push(sg_s);
    w.extend_from_slice(&r2.word().0[1..]);
    w.push(sg_s_inv);
    w.extend_from_slice(&r1.word().0[1..]);
    let merged = QCycle::new(qv.clone(), gens.clone(), r1.base(), GenWord(w))?;
    debug_assert_eq!(merged.len(), c1.len() + c2.len());
    Ok(merged)
}

/// One rung choice for a ladder step.
#[derive(Clone, Debug, Default)]
pub struct EdgePick {
    /// Only consider removed edges with these labels (any label if empty).
    pub labels: Vec<Elem>,
    /// Require exactly this edge, in base-cycle coordinates (src, label).
    pub exact: Option<(Elem, Elem)>,
}

/// An iterated connected sum of signed translates of a base cycle along a
/// list of bridge labels. The k-th sum merges the accumulated cycle with
/// `±(s_k ... s_1) C`, choosing the removed edge inside the most recent copy.
pub struct Ladder<'a> {
    pub base: &'a QCycle,
    pub bridges: Vec<Elem>,
    /// Constraint for the edge removed from the base copy at the first sum.
    pub first: EdgePick,
    /// Extra constraints for specific later steps (step index, pick).
    pub picks: Vec<(usize, EdgePick)>,
    /// Pins the last sum to the image of the base-coordinates oriented edge
    /// `[g](label)`; the matching removed edges are then fully determined.
    pub last_attach: Option<(Elem, Elem)>,
    /// Edges of the base copy (base coordinates) that must stay intact.
    pub protected: Vec<(Elem, Elem)>,
    /// Replaces the final translate with this cycle (for voltage-difference
    /// pairs); it must contain the same attach edge.
    pub last_copy: Option<&'a QCycle>,
    /// Source cycle for the translated copies (defaults to `base`); setting
    /// `base` to a different cycle swaps the leftmost copy instead.
    pub copy_source: Option<&'a QCycle>,
}

impl<'a> Ladder<'a> {
    pub fn new(base: &'a QCycle, bridges: Vec<Elem>) -> Ladder<'a> {
        Ladder {
            base,
            bridges,
            first: EdgePick::default(),
            picks: Vec::new(),
            last_attach: None,
            protected: Vec::new(),
            last_copy: None,
            copy_source: None,
        }
    }

    pub fn run(&self) -> Result<QCycle> {
        let qv = self.base.qv();
        let gt = qv.parent();
        let q = qv.quotient();
        let mut acc = self.base.clone();
        let mut cum = Elem::IDENTITY; // product s_k ... s_1 at parent level
        // vertex set of the most recent copy, for edge selection
        let mut copy_cycle = self.base.clone();
        let mut prev_src: Option<Elem> = None;
        let k_total = self.bridges.len();
        for (k, &s) in self.bridges.iter().enumerate() {
            let cum_prev = cum;
            cum = gt.mul(s, cum);
            let reversed = k % 2 == 0; // first translate comes in reversed
            let copies = self.copy_source.unwrap_or(self.base);
            let source = if k + 1 == k_total {
                self.last_copy.unwrap_or(copies)
            } else {
                copies
            };
            let translate = if reversed {
                source.translate(cum).reversed()
            } else {
                source.translate(cum)
            };
            let (src, t) = if k + 1 == k_total && self.last_attach.is_some() {
                // the removed edges are forced by the required attach edge
                let (g, lab) = self.last_attach.unwrap();
                let gq = qv.project(g);
                if reversed {
                    (q.mul(qv.project(cum_prev), gq), lab)
                } else {
                    (
                        q.mul(q.mul(qv.project(cum_prev), gq), qv.project(lab)),
                        gt.inv(lab),
                    )
                }
            } else {
                let pick = if k == 0 {
                    Some(&self.first)
                } else {
                    self.picks.iter().find(|&&(i, _)| i == k).map(|(_, p)| p)
                };
                self.choose_edge(&acc, &copy_cycle, pick, prev_src, k == 0)?
            };
            acc = connected_sum(&acc, &translate, src, t, s)?;
            prev_src = Some(src);
            copy_cycle = translate;
        }
        Ok(acc)
    }

    fn choose_edge(
        &self,
        acc: &QCycle,
        copy: &QCycle,
        pick: Option<&EdgePick>,
        prev_src: Option<Elem>,
        is_base_copy: bool,
    ) -> Result<(Elem, Elem)> {
        let qv = acc.qv();
        // candidate edges: edges of the copy that still exist in acc
        let acc_edges: std::collections::HashSet<(Elem, Elem)> =
            acc.edges().into_iter().map(|(v, l, _)| (v, l)).collect();
        if let Some(EdgePick { exact: Some((src, lab)), .. }) = pick {
            return if acc_edges.contains(&(*src, *lab)) && copy.contains_edge(*src, *lab) {
                Ok((*src, *lab))
            } else {
                Err(Error::PatternNotFound("requested ladder edge is gone".into()))
            };
        }
        let labels: &[Elem] = pick.map(|p| p.labels.as_slice()).unwrap_or(&[]);
        let mut candidates: Vec<(Elem, Elem)> = copy
            .edges()
            .into_iter()
            .map(|(v, l, _)| (v, l))
            .filter(|e| acc_edges.contains(e))
            .filter(|&(v, _)| Some(v) != prev_src)
            .filter(|&(v, l)| {
                if !is_base_copy || self.protected.is_empty() {
                    true
                } else {
                    !self.protected.contains(&(v, l))
                        && !self
                            .protected
                            .contains(&(qv.quotient().mul(v, qv.project(l)), qv.parent().inv(l)))
                }
            })
            .filter(|&(_, l)| labels.is_empty() || labels.contains(&l))
            .collect();
        candidates.sort_unstable();
        candidates
            .into_iter()
            .next()
            .ok_or_else(|| Error::PatternNotFound("no usable ladder edge".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FamilySpec};
    use crate::comm::decompose_comm;
    use crate::oracle::{self, brute_voltage};
    use crate::quotient::QuotientView;
    use crate::words::GenSet;
    use std::sync::Arc;

    fn setup() -> (Arc<crate::group::GroupTable>, Arc<QuotientView>, Arc<GenSet>) {
        let gt = Arc::new(build(&FamilySpec::Dihedral { n: 12 }).unwrap());
        let comm = decompose_comm(&gt).unwrap();
        let qv = Arc::new(QuotientView::new(gt.clone(), comm.gprime.clone()).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(12), Elem(1)]));
        (gt, qv, gens)
    }

    #[test]
    fn merge_two_klein_squares() {
        let (gt, qv, gens) = setup();
        // the Klein quotient of D12 on labels a (reflection), b (rotation):
        // 2-cycles (digons) merged into the 4-cycle
        let a = Elem(12);
        let digon = |base: Elem| {
            let w = GenWord(vec![
                gens.signed_for(a).unwrap(),
                gens.signed_for(gt.inv(a)).unwrap(),
            ]);
            QCycle::new(qv.clone(), gens.clone(), base, w).unwrap()
        };
        let c1 = digon(Elem::IDENTITY);
        let c2 = digon(Elem(1));
        let merged = connected_sum(&c1, &c2, qv.project(Elem::IDENTITY), a, Elem(1)).unwrap();
        assert_eq!(merged.len(), 4);
        assert!(merged.is_hamiltonian());
    }

    #[test]
    fn voltage_law_exact() {
        let (gt, qv, gens) = setup();
        let a = Elem(12);
        let b = Elem(1);
        // c1: digon on a at e; c2 = -(b c1) contains the matching edge
        let w = GenWord(vec![
            gens.signed_for(a).unwrap(),
            gens.signed_for(gt.inv(a)).unwrap(),
        ]);
        let c1 = QCycle::new(qv.clone(), gens.clone(), Elem::IDENTITY, w).unwrap();
        let c2 = c1.translate(b).reversed();
        let src = qv.project(Elem::IDENTITY);
        let merged = connected_sum(&c1, &c2, src, a, b).unwrap();
        let got = merged.voltage().unwrap();
        // law: volt(c1) * conj_g([s^{-1}, t^{-1}]) * volt(c2), with g any
        // parent representative of the attach-edge source
        let g = Elem::IDENTITY;
        let comm = gt.commutator(gt.inv(b), gt.inv(a));
        let expect = gt.mul(
            gt.mul(c1.voltage().unwrap(), gt.mul(gt.mul(g, comm), gt.inv(g))),
            c2.voltage().unwrap(),
        );
        assert_eq!(got, expect);
        assert_eq!(got, brute_voltage(&merged).unwrap());
    }

    #[test]
    fn ladder_covers_the_quotient() {
        let (_gt, qv, gens) = setup();
        let a = Elem(12);
        let b = Elem(1);
        let w = GenWord(vec![
            gens.signed_for(a).unwrap(),
            gens.signed_for(a).unwrap(),
        ]);
        let c = QCycle::new(qv.clone(), gens.clone(), Elem::IDENTITY, w).unwrap();
        // two rungs of b-translates cover the four cosets
        let ladder = Ladder::new(&c, vec![b]);
        let big = ladder.run().unwrap();
        assert!(big.is_hamiltonian());
    }

    #[test]
    fn disjointness_is_checked() {
        let (_gt, qv, gens) = setup();
        let a = Elem(12);
        let w = GenWord(vec![
            gens.signed_for(a).unwrap(),
            gens.signed_for(a).unwrap(),
        ]);
        let c = QCycle::new(qv.clone(), gens.clone(), Elem::IDENTITY, w).unwrap();
        let overlapping = c.clone();
        assert!(matches!(
            connected_sum(&c, &overlapping, qv.project(Elem::IDENTITY), a, a),
            Err(Error::NotDisjoint)
        ));
    }

    #[test]
    fn oracle_cycles_voltage_law_random() {
        use rand::SeedableRng;
        let gt = Arc::new(
            build(&FamilySpec::Semidirect {
                m: 2,
                ns: vec![2, 3, 4],
                action: vec![vec![1, 0, 1], vec![0, -1, 0], vec![0, 0, 1]],
            })
            .unwrap(),
        );
        let comm = decompose_comm(&gt).unwrap();
        let qv = Arc::new(QuotientView::new(gt.clone(), comm.gprime.clone()).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(24), Elem(5), Elem(1)]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut done = 0;
        let mut rounds = 0;
        while done < 40 && rounds < 20_000 {
            rounds += 1;
            let Some(c1) = oracle::random_simple_cycle(&qv, &gens, &mut rng) else {
                continue;
            };
            // pick a translate disjoint from c1
            for g in gt.elems() {
                let c2 = c1.translate(g).reversed();
                if !c1.is_vertex_disjoint_from(&c2) {
                    continue;
                }
                // try to match any edge of c1
                let Some((src, t, _)) = c1.edges().into_iter().next() else { break };
                let qsrc2 = qv
                    .quotient()
                    .mul(qv.quotient().mul(src, qv.project(g)), qv.project(t));
                if c2.find_edge(qsrc2, gt.inv(t)).is_none() {
                    continue;
                }
                let Ok(m) = connected_sum(&c1, &c2, src, t, g) else { continue };
                let got = m.voltage().unwrap();
                let rep = qv.section(src);
                let comm = gt.commutator(gt.inv(g), gt.inv(t));
                let expect = gt.mul(
                    gt.mul(c1.voltage().unwrap(), gt.lconjugate(comm, rep)),
                    c2.voltage().unwrap(),
                );
                assert_eq!(got, expect);
                done += 1;
                break;
            }
        }
        assert!(done >= 30);
    }
}

//! The local rerouting that swaps an edge for a conjugated detour: given a
//! cycle containing the path `[h s^{-1} u^{-1}](s, t, s^{-1})` and a nearby
//! `t`-edge, produce a second hamiltonian cycle differing only inside six
//! vertices, with a voltage shift given by an explicit commutator product.

use crate::cycles::QCycle;
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::words::SignedGen;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum AlterVariant {
    /// The host contains the oriented edge `[h](t)`.
    EdgeAtH,
    /// The host contains the oriented edge `[h t](t^{-1})`.
    EdgeAtHT,
}

/// Labels are elements of `S u S^{-1}`; `h` is a parent-group element.
#[derive(Copy, Clone, Debug)]
pub struct AlterationSpec {
    pub s: Elem,
    pub t: Elem,
    pub u: Elem,
    pub h: Elem,
    pub variant: AlterVariant,
}

impl AlterationSpec {
    /// The six cosets outside of which the edge sets of host and result agree.
    pub fn affected_vertices(&self, c: &QCycle) -> Vec<Elem> {
        let gt = c.qv().parent();
        let qv = c.qv();
        let h = self.h;
        let hu = gt.mul(h, gt.inv(self.u));
        let hsu = gt.mul(hu, gt.inv(self.s));
        let ht = gt.mul(h, self.t);
        let htu = gt.mul(ht, gt.inv(self.u));
        let htsu = gt.mul(htu, gt.inv(self.s));
        let mut v: Vec<Elem> = [h, hu, hsu, ht, htu, htsu]
            .into_iter()
            .map(|e| qv.project(e))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The displayed voltage-ratio value: `((volt C0)^{-1} (volt C1))^h`.
    pub fn expected_ratio(&self, c: &QCycle) -> Elem {
        let gt = c.qv().parent();
        let t_inv = gt.inv(self.t);
        let st = gt.commutator(self.s, t_inv);
        let st_u = gt.conjugate(st, self.u);
        match self.variant {
            AlterVariant::EdgeAtH => gt.mul(gt.commutator(self.u, t_inv), st_u),
            AlterVariant::EdgeAtHT => gt.mul(gt.commutator(t_inv, self.u), st_u),
        }
    }
}

/// Applies the alteration to a host cycle. Both required patterns are located
/// by edge scan; missing patterns are an error, never assumed.
pub fn standard_alteration(c0: &QCycle, spec: &AlterationSpec) -> Result<QCycle> {
    let qv = c0.qv();
    let gt = qv.parent();
    if !qv.normal_is_abelian() || !qv.quotient().is_abelian() {
        return Err(Error::BadInput(
            "alteration needs an abelian kernel and abelian quotient".into(),
        ));
    }
    let n = c0.len();
    let gens = c0.gens();

    // locate the path [h s^{-1} u^{-1}](s, t, s^{-1})
    let path_start = qv.project(gt.mul(gt.mul(spec.h, gt.inv(spec.s)), gt.inv(spec.u)));
    let s_inv = gt.inv(spec.s);
    let path_pos = c0
        .find_path(path_start, &[spec.s, spec.t, s_inv])
        .ok_or_else(|| Error::PatternNotFound("alteration detour path".into()))?;

    // locate the t-edge
    let (edge_src, edge_label, detour_mid) = match spec.variant {
        AlterVariant::EdgeAtH => (qv.project(spec.h), spec.t, spec.t),
        AlterVariant::EdgeAtHT => (qv.project(gt.mul(spec.h, spec.t)), gt.inv(spec.t), gt.inv(spec.t)),
    };
    let edge_pos = c0
        .find_edge(edge_src, edge_label)
        .ok_or_else(|| Error::PatternNotFound("alteration host edge".into()))?;

    // the path must not contain the edge
    let overlap = (0..3).any(|k| (path_pos + k) % n == edge_pos);
    if overlap {
        return Err(Error::PatternNotFound(
            "alteration edge lies on the detour path".into(),
        ));
    }

    // rotate so the host edge is step 0; the path then sits wholly inside
    let rot = c0.rotated(edge_pos);
    let j = (path_pos + n - edge_pos) % n;
    debug_assert!(j >= 1 && j + 3 <= n);

    let sg_u_inv: SignedGen = gens.signed_for(gt.inv(spec.u)).map_err(bad_label)?;
    let sg_u: SignedGen = gens.signed_for(spec.u).map_err(bad_label)?;
    let sg_mid: SignedGen = gens.signed_for(detour_mid).map_err(bad_label)?;
    let sg_t: SignedGen = gens.signed_for(spec.t).map_err(bad_label)?;

    let w = &rot.word().0;
    let mut out: Vec<SignedGen> = Vec::with_capacity(n);
    out.extend([sg_u_inv, sg_mid, sg_u]);
    out.extend_from_slice(&w[1..j]);
    out.push(sg_t);
    out.extend_from_slice(&w[j + 3..]);
    debug_assert_eq!(out.len(), n);

    rot.with_word(rot.base(), crate::words::GenWord(out))
}

fn bad_label(e: Error) -> Error {
    Error::BadInput(format!("alteration label outside S u S^-1: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FamilySpec};
    use crate::comm::decompose_comm;
    use crate::oracle;
    use crate::quotient::QuotientView;
    use crate::words::GenSet;
    use std::sync::Arc;

    /// Host cycles come from the oracle; specs are scanned from the cycle.
    #[test]
    fn ratio_formula_and_locality() {
        let specs = [
            FamilySpec::Semidirect {
                m: 2,
                ns: vec![2, 3, 4],
                action: vec![vec![1, 0, 1], vec![0, -1, 0], vec![0, 0, 1]],
            },
            FamilySpec::Semidirect {
                m: 4,
                ns: vec![4, 3],
                action: vec![vec![-1, 0], vec![0, -1]],
            },
        ];
        let mut checked = 0;
        for fam in specs {
            let gt = Arc::new(build(&fam).unwrap());
            let comm = decompose_comm(&gt).unwrap();
            let qv = Arc::new(QuotientView::new(gt.clone(), comm.gprime.clone()).unwrap());
            let gen_elems = crate::catalog::enumerate_gensets(&gt, 3, 4);
            for set in gen_elems {
                let gens = Arc::new(GenSet::new(&gt, set.clone()));
                let Ok(word) = oracle::Search::in_quotient(&qv, &gens).run() else {
                    continue;
                };
                let Ok(c0) = QCycle::new(qv.clone(), gens.clone(), Elem::IDENTITY, word) else {
                    continue;
                };
                if !c0.is_hamiltonian() {
                    continue;
                }
                let mut labels: Vec<Elem> = Vec::new();
                for &e in &set {
                    labels.push(e);
                    labels.push(gt.inv(e));
                }
                for &s_lab in &labels {
                    for &t_lab in &labels {
                        for &u_lab in &labels {
                            for h in gt.elems() {
                                for variant in [AlterVariant::EdgeAtH, AlterVariant::EdgeAtHT] {
                                    let spec = AlterationSpec {
                                        s: s_lab,
                                        t: t_lab,
                                        u: u_lab,
                                        h,
                                        variant,
                                    };
                                    let Ok(c1) = standard_alteration(&c0, &spec) else {
                                        continue;
                                    };
                                    checked += 1;
                                    assert!(c1.is_hamiltonian());
                                    // voltage ratio identity
                                    let v0 = c0.voltage().unwrap();
                                    let v1 = c1.voltage().unwrap();
                                    let ratio = gt.conjugate(gt.mul(gt.inv(v0), v1), h);
                                    assert_eq!(ratio, spec.expected_ratio(&c0));
                                    // locality: differences confined to six vertices
                                    let allowed = spec.affected_vertices(&c0);
                                    let e0: std::collections::HashSet<_> =
                                        c0.edges().into_iter().map(|(v, l, _)| (v, l)).collect();
                                    let e1: std::collections::HashSet<_> =
                                        c1.edges().into_iter().map(|(v, l, _)| (v, l)).collect();
                                    for d in e0.symmetric_difference(&e1) {
                                        let (src, lab) = *d;
                                        let dst = qv.quotient().mul(src, qv.project(lab));
                                        assert!(allowed.contains(&src) && allowed.contains(&dst));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 20, "too few applicable alterations found: {checked}");
    }
}

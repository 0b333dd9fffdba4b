//! A graph level for word construction: a group table (the vertices) plus the
//! projected step element of every signed generator at that level.
//!
//! Words always index the top-level generating set; a `View` just says where
//! each step lands. This lets one word be built in `Cay(G/N; S)` three
//! quotients deep and still be read back in `Cay(G; S)` unchanged.

use std::sync::Arc;

use crate::group::{Elem, GroupTable};
use crate::quotient::QuotientView;
use crate::words::{GenSet, GenWord, SignedGen};

#[derive(Clone)]
pub struct View {
    pub table: Arc<GroupTable>,
    /// Step element per signed slot (`2 * gen + inverse`); `None` excludes the
    /// generator at this level.
    step: Vec<Option<Elem>>,
}

impl View {
    pub fn new(
        table: Arc<GroupTable>,
        gens: &GenSet,
        mut f: impl FnMut(SignedGen, Elem) -> Option<Elem>,
    ) -> View {
        let mut step = vec![None; 2 * gens.len()];
        for sg in gens.signed_all() {
            step[Self::slot(sg)] = f(sg, gens.resolve(sg));
        }
        View { table, step }
    }

    fn slot(sg: SignedGen) -> usize {
        2 * sg.gen as usize + sg.inverse as usize
    }

    /// The group itself.
    pub fn of_group(gt: &Arc<GroupTable>, gens: &GenSet) -> View {
        View::new(gt.clone(), gens, |_, e| Some(e))
    }

    /// One quotient down.
    pub fn of_quotient(qv: &QuotientView, gens: &GenSet) -> View {
        View::new(qv.quotient().clone(), gens, |_, e| Some(qv.project(e)))
    }

    /// A further quotient of this view's group.
    pub fn through(&self, qv: &QuotientView) -> View {
        View {
            table: qv.quotient().clone(),
            step: self.step.iter().map(|s| s.map(|e| qv.project(e))).collect(),
        }
    }

    /// Restricts to a subset of generators (by index into the generating set).
    pub fn with_gens(&self, keep: &[usize]) -> View {
        let mut step = vec![None; self.step.len()];
        for &i in keep {
            step[2 * i] = self.step[2 * i];
            step[2 * i + 1] = self.step[2 * i + 1];
        }
        View {
            table: self.table.clone(),
            step,
        }
    }

    #[inline]
    pub fn step(&self, sg: SignedGen) -> Option<Elem> {
        self.step[Self::slot(sg)]
    }

    /// Identity-free steps deduplicated by target element, in deterministic
    /// order.
    pub fn steps_dedup(&self) -> Vec<(SignedGen, Elem)> {
        let mut out: Vec<(SignedGen, Elem)> = Vec::new();
        for (slot, &s) in self.step.iter().enumerate() {
            let Some(e) = s else { continue };
            if e.is_identity() {
                continue;
            }
            if !out.iter().any(|&(_, l)| l == e) {
                out.push((
                    SignedGen {
                        gen: (slot / 2) as u16,
                        inverse: slot % 2 == 1,
                    },
                    e,
                ));
            }
        }
        out
    }

    /// A signed generator stepping by `e` at this level, if any.
    pub fn signed_for(&self, e: Elem) -> Option<SignedGen> {
        for (slot, &s) in self.step.iter().enumerate() {
            if s == Some(e) {
                return Some(SignedGen {
                    gen: (slot / 2) as u16,
                    inverse: slot % 2 == 1,
                });
            }
        }
        None
    }

    pub fn end(&self, base: Elem, word: &GenWord) -> Option<Elem> {
        let mut v = base;
        for &sg in &word.0 {
            v = self.table.mul(v, self.step(sg)?);
        }
        Some(v)
    }

    /// Vertices visited before each step (length = word length).
    pub fn vertices(&self, base: Elem, word: &GenWord) -> Option<Vec<Elem>> {
        let mut out = Vec::with_capacity(word.len());
        let mut v = base;
        for &sg in &word.0 {
            out.push(v);
            v = self.table.mul(v, self.step(sg)?);
        }
        Some(out)
    }

    /// Closed, simple, and covering the whole table.
    pub fn is_ham_cycle(&self, base: Elem, word: &GenWord) -> bool {
        self.is_ham_cycle_over(base, word, self.table.order(), |_| true)
    }

    /// Closed, simple, and covering exactly the `allowed` subset of vertices.
    pub fn is_ham_cycle_over(
        &self,
        base: Elem,
        word: &GenWord,
        count: usize,
        allowed: impl Fn(Elem) -> bool,
    ) -> bool {
        if word.len() != count {
            return false;
        }
        let mut seen = vec![false; self.table.order()];
        let mut v = base;
        for &sg in &word.0 {
            if !allowed(v) || seen[v.idx()] {
                return false;
            }
            seen[v.idx()] = true;
            let Some(e) = self.step(sg) else { return false };
            v = self.table.mul(v, e);
        }
        v == base
    }

    /// Simple path from `base` covering `count` vertices of `allowed`,
    /// returning its endpoint.
    pub fn check_path_over(
        &self,
        base: Elem,
        word: &GenWord,
        count: usize,
        allowed: impl Fn(Elem) -> bool,
    ) -> Option<Elem> {
        if word.len() + 1 != count {
            return None;
        }
        let mut seen = vec![false; self.table.order()];
        let mut v = base;
        for &sg in &word.0 {
            if !allowed(v) || seen[v.idx()] {
                return None;
            }
            seen[v.idx()] = true;
            v = self.table.mul(v, self.step(sg)?);
        }
        if !allowed(v) || seen[v.idx()] {
            return None;
        }
        Some(v)
    }

    pub fn is_ham_path(&self, base: Elem, word: &GenWord, target: Elem) -> bool {
        self.check_path_over(base, word, self.table.order(), |_| true) == Some(target)
    }
}

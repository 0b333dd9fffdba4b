//! Generator words and walks.
//!
//! A word is a sequence of signed references into a generating set, never a
//! sequence of raw elements. This keeps edge labels intact for the local
//! surgery operations, which match edges by label.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};

/// One step of a walk: a generator index and a direction.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedGen {
    pub gen: u16,
    pub inverse: bool,
}

impl SignedGen {
    pub fn fwd(gen: usize) -> SignedGen {
        SignedGen {
            gen: gen as u16,
            inverse: false,
        }
    }

    pub fn bwd(gen: usize) -> SignedGen {
        SignedGen {
            gen: gen as u16,
            inverse: true,
        }
    }

    pub fn flipped(self) -> SignedGen {
        SignedGen {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A sequence of signed generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GenWord(pub Vec<SignedGen>);

impl GenWord {
    pub fn empty() -> GenWord {
        GenWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation of `k` copies.
    pub fn power(&self, k: usize) -> GenWord {
        let mut out = Vec::with_capacity(self.0.len() * k);
        for _ in 0..k {
            out.extend_from_slice(&self.0);
        }
        GenWord(out)
    }

    /// Removes the final step (the paper's `#` operator).
    pub fn drop_last(&self) -> Result<GenWord> {
        if self.0.is_empty() {
            return Err(Error::EmptyWord);
        }
        GenWord(self.0[..self.0.len() - 1].to_vec()).pipe_ok()
    }

    /// The word traversing the same steps backwards.
    pub fn reversed(&self) -> GenWord {
        GenWord(self.0.iter().rev().map(|sg| sg.flipped()).collect())
    }

    pub fn concat(parts: &[&GenWord]) -> GenWord {
        let mut out = Vec::new();
        for p in parts {
            out.extend_from_slice(&p.0);
        }
        GenWord(out)
    }

    fn pipe_ok(self) -> Result<GenWord> {
        Ok(self)
    }
}

/// A generating set: parent-group elements plus a label-resolution map.
#[derive(Clone, Debug)]
pub struct GenSet {
    elems: Vec<Elem>,
    /// Element of `S u S^{-1}` for each signed generator, cached.
    resolved: Vec<[Elem; 2]>,
    /// Preferred signed generator for each element it can denote.
    by_elem: HashMap<Elem, SignedGen>,
}

impl GenSet {
    pub fn new(gt: &GroupTable, elems: Vec<Elem>) -> GenSet {
        let resolved: Vec<[Elem; 2]> = elems.iter().map(|&e| [e, gt.inv(e)]).collect();
        let mut by_elem = HashMap::new();
        for (i, r) in resolved.iter().enumerate() {
            by_elem.entry(r[0]).or_insert_with(|| SignedGen::fwd(i));
        }
        for (i, r) in resolved.iter().enumerate() {
            by_elem.entry(r[1]).or_insert_with(|| SignedGen::bwd(i));
        }
        GenSet {
            elems,
            resolved,
            by_elem,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> Elem {
        self.elems[i]
    }

    #[inline]
    pub fn resolve(&self, sg: SignedGen) -> Elem {
        self.resolved[sg.gen as usize][sg.inverse as usize]
    }

    /// A signed generator denoting the given element of `S u S^{-1}`.
    pub fn signed_for(&self, e: Elem) -> Result<SignedGen> {
        self.by_elem
            .get(&e)
            .copied()
            .ok_or_else(|| Error::BadInput(format!("element {} is not a generator label", e.0)))
    }

    /// All signed generators, in deterministic order.
    pub fn signed_all(&self) -> Vec<SignedGen> {
        (0..self.elems.len())
            .flat_map(|i| [SignedGen::fwd(i), SignedGen::bwd(i)])
            .collect()
    }

    /// Word made of `k` copies of the label for `e` (inverse label if `k < 0`).
    pub fn run(&self, e: Elem, k: i64) -> Result<GenWord> {
        let sg = self.signed_for(e)?;
        let step = if k < 0 { sg.flipped() } else { sg };
        Ok(GenWord(vec![step; k.unsigned_abs() as usize]))
    }

    /// Word for a sequence of labels (each an element of `S u S^{-1}`).
    pub fn word(&self, labels: &[Elem]) -> Result<GenWord> {
        Ok(GenWord(
            labels
                .iter()
                .map(|&e| self.signed_for(e))
                .collect::<Result<_>>()?,
        ))
    }
}

/// A walk `[base](s_1, ..., s_n)` in a Cayley graph.
#[derive(Clone, Debug)]
pub struct Walk {
    pub ambient: Arc<GroupTable>,
    pub gens: Arc<GenSet>,
    pub base: Elem,
    pub word: GenWord,
}

impl Walk {
    pub fn new(ambient: Arc<GroupTable>, gens: Arc<GenSet>, base: Elem, word: GenWord) -> Walk {
        Walk {
            ambient,
            gens,
            base,
            word,
        }
    }

    /// The endpoint `base * s_1 ... s_n`.
    pub fn evaluate(&self) -> Elem {
        let gt = &self.ambient;
        self.word
            .0
            .iter()
            .fold(self.base, |acc, &sg| gt.mul(acc, self.gens.resolve(sg)))
    }

    /// The `n + 1` visited vertices, in order.
    pub fn vertices(&self) -> Vec<Elem> {
        let gt = &self.ambient;
        let mut out = Vec::with_capacity(self.word.len() + 1);
        let mut v = self.base;
        out.push(v);
        for &sg in &self.word.0 {
            v = gt.mul(v, self.gens.resolve(sg));
            out.push(v);
        }
        out
    }

    /// The translate `h * walk`.
    pub fn translate(&self, h: Elem) -> Walk {
        Walk {
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            base: self.ambient.mul(h, self.base),
            word: self.word.clone(),
        }
    }

    /// The same trail walked backwards from the endpoint.
    pub fn reverse(&self) -> Walk {
        Walk {
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            base: self.evaluate(),
            word: self.word.reversed(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::dihedral;

    fn setup() -> (Arc<GroupTable>, Arc<GenSet>) {
        let gt = Arc::new(dihedral(12));
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(1), Elem(12)]));
        (gt, gens)
    }

    #[test]
    fn evaluate_and_vertices() {
        let (gt, gens) = setup();
        let w = Walk::new(gt.clone(), gens.clone(), Elem::IDENTITY, GenWord::empty());
        assert_eq!(w.evaluate(), Elem::IDENTITY);
        // (r, r, s) from e lands on r^2 * s = s r^{-2} -> index 12 + 10
        let word = GenWord(vec![SignedGen::fwd(0), SignedGen::fwd(0), SignedGen::fwd(1)]);
        let w = Walk::new(gt.clone(), gens.clone(), Elem::IDENTITY, word);
        assert_eq!(w.evaluate(), Elem(22));
        assert_eq!(w.vertices(), vec![Elem(0), Elem(1), Elem(2), Elem(22)]);
        // (s, s^{-1}) returns to base
        let word = GenWord(vec![SignedGen::fwd(1), SignedGen::bwd(1)]);
        let w = Walk::new(gt, gens, Elem(3), word);
        assert_eq!(w.evaluate(), Elem(3));
    }

    #[test]
    fn translate_reverse_power_droplast() {
        let (gt, gens) = setup();
        let word = GenWord(vec![SignedGen::fwd(0), SignedGen::fwd(1)]);
        let w = Walk::new(gt.clone(), gens.clone(), Elem(2), word.clone());
        assert_eq!(w.translate(Elem::IDENTITY).vertices(), w.vertices());
        let rr = w.reverse().reverse();
        assert_eq!(rr.base, w.base);
        assert_eq!(rr.word, w.word);
        let mut rev = w.reverse().vertices();
        rev.reverse();
        assert_eq!(rev, w.vertices());

        let p = word.power(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.0[4], SignedGen::fwd(0));
        assert_eq!(p.drop_last().unwrap().len(), 5);
        assert!(GenWord::empty().drop_last().is_err());
    }

    #[test]
    fn genset_resolution() {
        let (gt, gens) = setup();
        assert_eq!(gens.resolve(SignedGen::fwd(0)), Elem(1));
        assert_eq!(gens.resolve(SignedGen::bwd(0)), Elem(11));
        // s is an involution: both signs resolve to the same element
        assert_eq!(gens.resolve(SignedGen::bwd(1)), Elem(12));
        assert_eq!(gens.signed_for(Elem(11)).unwrap(), SignedGen::bwd(0));
        assert!(gens.signed_for(Elem(5)).is_err());
        let run = gens.run(Elem(1), -3).unwrap();
        let w = Walk::new(gt, gens, Elem::IDENTITY, run);
        assert_eq!(w.evaluate(), Elem(9));
    }
}

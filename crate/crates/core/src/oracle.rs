//! Brute-force ground truth: backtracking hamiltonian-cycle search and an
//! independent voltage evaluator.
//!
//! The searcher doubles as the constrained searcher used by the case engine
//! wherever a construction needs "some hamiltonian cycle containing these
//! oriented edges". Neighbor order is deterministic (generator index, then
//! sign), so failures and traces replay exactly.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cycles::{verify_hamiltonian, QCycle};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::quotient::QuotientView;
use crate::words::{GenSet, GenWord, SignedGen};

/// Limits for one search run.
#[derive(Copy, Clone, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 10_000_000 }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> SearchBudget {
        SearchBudget { max_nodes }
    }
}

/// What the searcher is asked to produce.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SearchMode {
    /// Closed cycle through every allowed vertex, starting and ending at `start`.
    Cycle,
    /// Path through every allowed vertex ending at the given vertex.
    PathTo(Elem),
}

/// Unvisited-subgraph connectivity is rechecked every this many levels.
const CONNECTIVITY_STRIDE: usize = 4;

/// A hamiltonian search instance over a group table (or a quotient read
/// through parent generators).
pub struct Search {
    order: usize,
    /// Outgoing steps over the whole graph: (word step, target-offset element).
    steps: Vec<(SignedGen, Elem)>,
    mul: Arc<GroupTable>,
    start: Elem,
    mode: SearchMode,
    allowed: Vec<bool>,
    /// Forced outgoing label per source vertex, from required oriented edges.
    required_out: Vec<Option<Elem>>,
    required_total: usize,
    prefix: Vec<SignedGen>,
    pub budget: SearchBudget,
}

impl Search {
    /// Search in `Cay(G; S)` itself.
    pub fn in_group(gt: &Arc<GroupTable>, gens: &GenSet) -> Search {
        let steps = dedup_steps(gens.signed_all().into_iter().map(|sg| (sg, gens.resolve(sg))));
        Search::raw(gt.clone(), steps, gt.order())
    }

    /// Search in `Cay(G/N; S)`, with words still over the parent generators.
    pub fn in_quotient(qv: &QuotientView, gens: &GenSet) -> Search {
        let steps = dedup_steps(
            gens.signed_all()
                .into_iter()
                .map(|sg| (sg, qv.project(gens.resolve(sg)))),
        );
        Search::raw(qv.quotient().clone(), steps, qv.quotient().order())
    }

    /// Search at an arbitrary word-construction level.
    pub fn in_view(view: &crate::view::View) -> Search {
        let steps = view.steps_dedup();
        let order = view.table.order();
        Search::raw(view.table.clone(), steps, order)
    }

    fn raw(mul: Arc<GroupTable>, steps: Vec<(SignedGen, Elem)>, order: usize) -> Search {
        Search {
            order,
            steps,
            mul,
            start: Elem::IDENTITY,
            mode: SearchMode::Cycle,
            allowed: vec![true; order],
            required_out: vec![None; order],
            required_total: 0,
            prefix: Vec::new(),
            budget: SearchBudget::default(),
        }
    }

    pub fn start_at(mut self, v: Elem) -> Search {
        self.start = v;
        self
    }

    pub fn mode(mut self, mode: SearchMode) -> Search {
        self.mode = mode;
        self
    }

    /// Restrict the vertex set, e.g. to a subgroup and one of its cosets.
    pub fn restrict(mut self, allowed: Vec<bool>) -> Search {
        self.allowed = allowed;
        self
    }

    /// Requires the oriented edge `[src](label)` to be traversed.
    pub fn require_edge(mut self, src: Elem, label: Elem) -> Result<Search> {
        match self.required_out[src.idx()] {
            Some(l) if l != label => Err(Error::BadInput(format!(
                "conflicting required edges out of vertex {}",
                src.0
            ))),
            Some(_) => Ok(self),
            None => {
                self.required_out[src.idx()] = Some(label);
                self.required_total += 1;
                Ok(self)
            }
        }
    }

    /// Requires the oriented path `[src](labels...)` to be traversed.
    pub fn require_path(mut self, src: Elem, labels: &[Elem]) -> Result<Search> {
        let mut v = src;
        for &l in labels {
            self = self.require_edge(v, l)?;
            v = self.mul.mul(v, l);
        }
        Ok(self)
    }

    /// Forces the first steps of the word.
    pub fn with_prefix(mut self, prefix: Vec<SignedGen>) -> Search {
        self.prefix = prefix;
        self
    }

    pub fn with_budget(mut self, budget: SearchBudget) -> Search {
        self.budget = budget;
        self
    }

    /// Randomizes neighbor order (still deterministic for a fixed seed).
    pub fn shuffled(mut self, seed: u64) -> Search {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.steps.shuffle(&mut rng);
        self
    }

    /// Runs the search. `Ok(word)` traces the requested cycle or path.
    pub fn run(&self) -> Result<GenWord> {
        let n = self.allowed.iter().filter(|&&a| a).count();
        if !self.allowed[self.start.idx()] {
            return Err(Error::BadInput("start vertex is not allowed".into()));
        }
        if let SearchMode::PathTo(t) = self.mode {
            if !self.allowed[t.idx()] {
                return Err(Error::BadInput("target vertex is not allowed".into()));
            }
            // The final vertex has no outgoing edge, so a required edge there
            // can never be satisfied.
            if self.required_out[t.idx()].is_some() {
                return Err(Error::PatternNotFound(
                    "required edge leaves the path endpoint".into(),
                ));
            }
            if n == 1 {
                return if t == self.start {
                    Ok(GenWord::empty())
                } else {
                    Err(Error::NoCycleFound("unreachable target".into()))
                };
            }
        }
        if n == 1 && self.mode == SearchMode::Cycle {
            return Ok(GenWord::empty());
        }

        let mut state = State {
            visited: vec![false; self.order],
            word: Vec::with_capacity(n),
            satisfied: 0,
            nodes: 0,
        };
        // Walk the forced prefix first.
        let mut v = self.start;
        state.visited[v.idx()] = true;
        for &sg in &self.prefix {
            let lab = self
                .steps
                .iter()
                .find(|&&(s, _)| s == sg)
                .map(|&(_, l)| l)
                .ok_or_else(|| Error::BadInput("prefix step not in generator set".into()))?;
            if let Some(req) = self.required_out[v.idx()] {
                if req != lab {
                    return Err(Error::PatternNotFound(
                        "prefix conflicts with a required edge".into(),
                    ));
                }
                state.satisfied += 1;
            }
            let w = self.mul.mul(v, lab);
            if !self.allowed[w.idx()] || state.visited[w.idx()] {
                return Err(Error::BadInput("prefix leaves the allowed region".into()));
            }
            state.word.push(sg);
            state.visited[w.idx()] = true;
            v = w;
        }

        if self.dfs(v, n, &mut state)? {
            Ok(GenWord(state.word))
        } else {
            Err(Error::NoCycleFound(format!(
                "search space exhausted after {} nodes",
                state.nodes
            )))
        }
    }

    fn dfs(&self, v: Elem, n: usize, state: &mut State) -> Result<bool> {
        state.nodes += 1;
        if state.nodes > self.budget.max_nodes {
            return Err(Error::Exhausted { nodes: state.nodes });
        }
        let depth = state.word.len() + 1; // vertices on the path so far
        if depth == n {
            return Ok(match self.mode {
                SearchMode::Cycle => {
                    if state.satisfied == self.required_total {
                        // close the cycle if some generator leads home
                        if let Some(&(sg, _)) = self
                            .steps
                            .iter()
                            .find(|&&(_, l)| {
                                self.mul.mul(v, l) == self.start
                                    && self.required_out[v.idx()].map_or(true, |req| req == l)
                            })
                        {
                            state.word.push(sg);
                            true
                        } else {
                            false
                        }
                    } else {
                        false
                    }
                }
                SearchMode::PathTo(t) => v == t && state.satisfied == self.required_total,
            });
        }

        if depth % CONNECTIVITY_STRIDE == 0 && !self.frontier_connected(v, state) {
            return Ok(false);
        }

        let forced = self.required_out[v.idx()];
        for &(sg, lab) in &self.steps {
            if let Some(req) = forced {
                if lab != req {
                    continue;
                }
            }
            let w = self.mul.mul(v, lab);
            if w == v || !self.allowed[w.idx()] || state.visited[w.idx()] {
                continue;
            }
            if let SearchMode::PathTo(t) = self.mode {
                if w == t && depth + 1 != n {
                    continue;
                }
            }
            state.visited[w.idx()] = true;
            state.word.push(sg);
            if forced.is_some() {
                state.satisfied += 1;
            }
            if self.dfs(w, n, state)? {
                return Ok(true);
            }
            if forced.is_some() {
                state.satisfied -= 1;
            }
            state.word.pop();
            state.visited[w.idx()] = false;
        }
        Ok(false)
    }

    /// All unvisited allowed vertices must be reachable from the current head
    /// through unvisited vertices.
    fn frontier_connected(&self, head: Elem, state: &State) -> bool {
        let remaining = self
            .allowed
            .iter()
            .zip(state.visited.iter())
            .filter(|&(&a, &vis)| a && !vis)
            .count();
        if remaining == 0 {
            return true;
        }
        let mut seen = vec![false; self.order];
        let mut queue = vec![head];
        seen[head.idx()] = true;
        let mut found = 0;
        while let Some(x) = queue.pop() {
            for &(_, lab) in &self.steps {
                let y = self.mul.mul(x, lab);
                if !seen[y.idx()] && self.allowed[y.idx()] && !state.visited[y.idx()] {
                    seen[y.idx()] = true;
                    found += 1;
                    queue.push(y);
                }
            }
        }
        found == remaining
    }
}

struct State {
    visited: Vec<bool>,
    word: Vec<SignedGen>,
    satisfied: usize,
    nodes: u64,
}

fn dedup_steps(it: impl Iterator<Item = (SignedGen, Elem)>) -> Vec<(SignedGen, Elem)> {
    let mut out: Vec<(SignedGen, Elem)> = Vec::new();
    for (sg, e) in it {
        if e.is_identity() {
            continue;
        }
        if !out.iter().any(|&(_, l)| l == e) {
            out.push((sg, e));
        }
    }
    out
}

/// Backtracking hamiltonian-cycle search in `Cay(G; S)` from the identity.
/// The result is verified before being returned.
pub fn find_ham_cycle(
    gt: &Arc<GroupTable>,
    gens: &GenSet,
    budget: SearchBudget,
) -> Result<GenWord> {
    let word = Search::in_group(gt, gens).with_budget(budget).run()?;
    let report = verify_hamiltonian(gt, gens, &word);
    if !report.ok {
        return Err(Error::Inconsistency(format!(
            "oracle produced an invalid cycle: {:?}",
            report.reason
        )));
    }
    Ok(word)
}

/// Like [`find_ham_cycle`] but with a seeded neighbor order, for sampling
/// distinct cycles in tests.
pub fn find_ham_cycle_seeded(
    gt: &Arc<GroupTable>,
    gens: &GenSet,
    budget: SearchBudget,
    seed: u64,
) -> Result<GenWord> {
    let word = Search::in_group(gt, gens)
        .shuffled(seed)
        .with_budget(budget)
        .run()?;
    let report = verify_hamiltonian(gt, gens, &word);
    if !report.ok {
        return Err(Error::Inconsistency(format!(
            "oracle produced an invalid cycle: {:?}",
            report.reason
        )));
    }
    Ok(word)
}

/// Voltage recomputed from scratch: explicit element-by-element products and
/// a table-scan inverse, sharing no code with [`QCycle::voltage`].
pub fn brute_voltage(c: &QCycle) -> Result<Elem> {
    let gt = c.qv().parent();
    let norm = c.qv().normal();
    for &a in norm.elems() {
        for &b in norm.elems() {
            if gt.mul(a, b) != gt.mul(b, a) {
                return Err(Error::UnsupportedGroup(
                    "voltage requires an abelian normal subgroup".into(),
                ));
            }
        }
    }
    let mut prod = Elem::IDENTITY;
    for &sg in &c.word().0 {
        let mut step = c.gens().get(sg.gen as usize);
        if sg.inverse {
            // scan for the inverse instead of using the cached table
            step = gt
                .elems()
                .find(|&h| gt.mul(step, h).is_identity())
                .expect("every element has an inverse");
        }
        prod = gt.mul(prod, step);
    }
    let v = c.base();
    let v_inv = gt
        .elems()
        .find(|&h| gt.mul(v, h).is_identity())
        .expect("every element has an inverse");
    let volt = gt.mul(gt.mul(v, prod), v_inv);
    if !norm.contains(volt) {
        return Err(Error::NotClosed);
    }
    Ok(volt)
}

/// A random vertex-simple closed cycle in the quotient graph, for the
/// voltage-law test batteries. Returns `None` when the walk fails to close.
pub fn random_simple_cycle(
    qv: &Arc<QuotientView>,
    gens: &Arc<GenSet>,
    rng: &mut ChaCha8Rng,
) -> Option<QCycle> {
    use rand::Rng;
    let q = qv.quotient();
    let steps: Vec<(SignedGen, Elem)> = dedup_steps(
        gens.signed_all()
            .into_iter()
            .map(|sg| (sg, qv.project(gens.resolve(sg)))),
    );
    if steps.is_empty() {
        return None;
    }
    let base_q = Elem(rng.gen_range(0..q.order()) as u16);
    let base = qv.section(base_q);
    let mut visited = vec![false; q.order()];
    let mut v = base_q;
    visited[v.idx()] = true;
    let mut word = Vec::new();
    for _ in 0..4 * q.order() {
        let &(sg, lab) = &steps[rng.gen_range(0..steps.len())];
        let w = q.mul(v, lab);
        if w == base_q && !word.is_empty() {
            word.push(sg);
            return QCycle::new(qv.clone(), gens.clone(), base, GenWord(word)).ok();
        }
        if visited[w.idx()] {
            continue;
        }
        visited[w.idx()] = true;
        word.push(sg);
        v = w;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgrp::subgroup_generated;
    use crate::testutil::{cyclic, dihedral};

    #[test]
    fn cyclic_cycle() {
        let gt = Arc::new(cyclic(5));
        let gens = GenSet::new(&gt, vec![Elem(1)]);
        let w = find_ham_cycle(&gt, &gens, SearchBudget::default()).unwrap();
        assert_eq!(w.len(), 5);
        assert!(w.0.iter().all(|sg| !sg.inverse));
    }

    #[test]
    fn budget_exhaustion() {
        let gt = Arc::new(cyclic(5));
        let gens = GenSet::new(&gt, vec![Elem(1)]);
        let err = find_ham_cycle(&gt, &gens, SearchBudget::nodes(1)).unwrap_err();
        assert!(matches!(err, Error::Exhausted { .. }));
    }

    #[test]
    fn dihedral_cycle_and_verify() {
        let gt = Arc::new(dihedral(12));
        let gens = GenSet::new(&gt, vec![Elem(1), Elem(12)]);
        let w = find_ham_cycle(&gt, &gens, SearchBudget::default()).unwrap();
        assert!(verify_hamiltonian(&gt, &gens, &w).ok);
    }

    #[test]
    fn required_edges_are_respected() {
        let gt = Arc::new(dihedral(12));
        let gens = GenSet::new(&gt, vec![Elem(1), Elem(12)]);
        let search = Search::in_group(&gt, &gens)
            .require_edge(Elem(3), Elem(12))
            .unwrap()
            .require_path(Elem(7), &[Elem(1), Elem(1)])
            .unwrap();
        let w = search.run().unwrap();
        assert!(verify_hamiltonian(&gt, &gens, &w).ok);
        // check the required edge is really used
        let mut v = Elem::IDENTITY;
        let mut used = false;
        for &sg in &w.0 {
            let lab = gens.resolve(sg);
            if v == Elem(3) {
                used = lab == Elem(12);
            }
            v = gt.mul(v, lab);
        }
        assert!(used);
    }

    #[test]
    fn path_mode_reaches_target() {
        let gt = Arc::new(cyclic(6));
        let gens = GenSet::new(&gt, vec![Elem(1)]);
        let w = Search::in_group(&gt, &gens)
            .mode(SearchMode::PathTo(Elem(5)))
            .run()
            .unwrap();
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn brute_voltage_matches() {
        let gt = Arc::new(dihedral(12));
        let n = subgroup_generated(&gt, &[Elem(2)]);
        let qv = Arc::new(crate::quotient::QuotientView::new(gt.clone(), n).unwrap());
        let gens = Arc::new(GenSet::new(&gt, vec![Elem(1), Elem(12)]));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        let mut rounds = 0;
        while tested < 50 && rounds < 10_000 {
            rounds += 1;
            if let Some(c) = random_simple_cycle(&qv, &gens, &mut rng) {
                assert_eq!(c.voltage().unwrap(), brute_voltage(&c).unwrap());
                tested += 1;
            }
        }
        assert!(tested >= 50);
    }

    #[test]
    fn subgroup_restricted_search() {
        let gt = Arc::new(dihedral(12));
        let gens = GenSet::new(&gt, vec![Elem(2), Elem(12)]);
        // restrict to the order-12 subgroup <r^2, s>
        let h = subgroup_generated(&gt, &[Elem(2), Elem(12)]);
        let mut allowed = vec![false; gt.order()];
        for &e in h.elems() {
            allowed[e.idx()] = true;
        }
        let w = Search::in_group(&gt, &gens).restrict(allowed).run().unwrap();
        assert_eq!(w.len(), 12);
    }
}

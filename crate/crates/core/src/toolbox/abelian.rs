//! Hamiltonian paths and cycles in abelian Cayley graphs, built by nested
//! boustrophedon over a subgroup chain, plus the grid-based path with a
//! prescribed endpoint product.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::Elem;
use crate::subgrp::subgroup_generated;
use crate::toolbox::grid;
use crate::view::View;
use crate::words::{GenWord, SignedGen};

/// Effective generators at this view level: identity steps dropped,
/// duplicates by step element removed, one per underlying generator.
fn effective_gens(view: &View, use_gens: &[usize]) -> Vec<(SignedGen, Elem)> {
    let mut out: Vec<(SignedGen, Elem)> = Vec::new();
    for &i in use_gens {
        let sg = SignedGen::fwd(i);
        if let Some(e) = view.step(sg) {
            if !e.is_identity() && !out.iter().any(|&(_, l)| l == e || view.table.inv(l) == e) {
                out.push((sg, e));
            }
        }
    }
    out
}

/// Hamiltonian path from `base` in the subgroup of the view generated by the
/// given generators, by nested snaking. Always succeeds in an abelian view.
pub fn abelian_ham_path(view: &View, use_gens: &[usize], base: Elem) -> Result<GenWord> {
    if !view.table.is_abelian() {
        return Err(Error::BadInput("nested snake path needs an abelian group".into()));
    }
    let gens = effective_gens(view, use_gens);
    let mut word = GenWord::empty();
    let mut members = subgroup_generated(&view.table, &[]);
    let mut gen_elems: Vec<Elem> = Vec::new();
    for (sg, e) in gens {
        gen_elems.push(e);
        let bigger = subgroup_generated(&view.table, &gen_elems);
        let d = bigger.order() / members.order();
        if d == 1 {
            continue;
        }
        let mut w = word.clone();
        for j in 1..d {
            w.0.push(sg);
            let copy = if j % 2 == 1 { word.reversed() } else { word.clone() };
            w.0.extend_from_slice(&copy.0);
        }
        word = w;
        members = bigger;
    }
    // sanity: the snake really is a path over the generated subgroup
    let count = members.order();
    if view
        .check_path_over(base, &word, count, |v| {
            members.contains(view.table.mul(view.table.inv(base), v))
        })
        .is_none()
    {
        return Err(Error::Inconsistency("nested snake failed to cover".into()));
    }
    Ok(word)
}

/// Hamiltonian cycle word covering the subgroup generated by `use_gens` in an
/// abelian view. Uses a rung ladder over the chain of generated subgroups,
/// trying generator orderings until the displacement equations close, with a
/// restricted deterministic search as the last resort.
pub fn abelian_ham_cycle(view: &View, use_gens: &[usize]) -> Result<GenWord> {
    if !view.table.is_abelian() {
        return Err(Error::BadInput("abelian cycle builder needs an abelian group".into()));
    }
    let mut order: Vec<usize> = use_gens.to_vec();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permute(&mut order, 0, &mut perms);
    for p in &perms {
        if let Ok(w) = abelian_ham_cycle_ordered(view, p) {
            return Ok(w);
        }
    }
    // search rescue, restricted to the generated subgroup
    let gens = effective_gens(view, use_gens);
    let gen_elems: Vec<Elem> = gens.iter().map(|&(_, e)| e).collect();
    let members = subgroup_generated(&view.table, &gen_elems);
    let sub_view = view.with_gens(use_gens);
    let mut allowed = vec![false; view.table.order()];
    for &e in members.elems() {
        allowed[e.idx()] = true;
    }
    let w = crate::oracle::Search::in_view(&sub_view).restrict(allowed).run()?;
    if !view.is_ham_cycle_over(Elem::IDENTITY, &w, members.order(), |v| members.contains(v)) {
        return Err(Error::Inconsistency("search produced a bad abelian cycle".into()));
    }
    Ok(w)
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn abelian_ham_cycle_ordered(view: &View, use_gens: &[usize]) -> Result<GenWord> {
    let gens = effective_gens(view, use_gens);
    if gens.is_empty() {
        return Err(Error::BadInput("no effective generators".into()));
    }
    let table = &view.table;

    // base cycle on the first generator
    let (sg0, e0) = gens[0];
    let d0 = table.element_order(e0);
    let mut cycle = GenWord(vec![sg0; d0]);
    let mut members = subgroup_generated(table, &[e0]);
    let mut gen_elems = vec![e0];

    for &(sg, e) in &gens[1..] {
        gen_elems.push(e);
        let bigger = subgroup_generated(table, &gen_elems);
        let d = bigger.order() / members.order();
        if d == 1 {
            continue;
        }
        // labels usable as rung displacements: any label of the current
        // cycle, in either direction
        let mut labels: Vec<Elem> = Vec::new();
        for &csg in &cycle.0 {
            let le = view.step(csg).expect("cycle labels resolve");
            if !labels.contains(&le) {
                labels.push(le);
            }
            let li = table.inv(le);
            if !labels.contains(&li) {
                labels.push(li);
            }
        }
        // need displacements d_1..d_d from `labels` with product e^{-d}
        let target = table.pow(e, -(d as i64));
        let seq = solve_displacements(table, &members, &labels, target, d).ok_or_else(|| {
            Error::NoCycleFound("rung displacement equation has no solution".into())
        })?;
        let mut w = GenWord::empty();
        for delta in seq {
            let rung = rung_with_displacement(view, &cycle, delta)?;
            w.0.extend_from_slice(&rung.0);
            w.0.push(sg);
        }
        cycle = w;
        members = bigger;
    }

    if !view.is_ham_cycle_over(Elem::IDENTITY, &cycle, members.order(), |v| members.contains(v)) {
        return Err(Error::Inconsistency("abelian ladder failed to close".into()));
    }
    Ok(cycle)
}

/// Finds `count` elements (with repetition) of `labels` whose product is
/// `target`, by shortest-path search on (element, parity) states.
fn solve_displacements(
    table: &crate::group::GroupTable,
    members: &crate::subgrp::Subgrp,
    labels: &[Elem],
    target: Elem,
    count: usize,
) -> Option<Vec<Elem>> {
    if !members.contains(target) {
        return None;
    }
    let n = table.order();
    let mut dist = vec![[usize::MAX; 2]; n];
    let mut from: Vec<[Option<(Elem, Elem)>; 2]> = vec![[None, None]; n];
    dist[0][0] = 0;
    let mut q = VecDeque::new();
    q.push_back((Elem::IDENTITY, 0usize));
    while let Some((v, par)) = q.pop_front() {
        let d = dist[v.idx()][par];
        for &l in labels {
            let w = table.mul(v, l);
            let np = 1 - par;
            if members.contains(w) && dist[w.idx()][np] == usize::MAX {
                dist[w.idx()][np] = d + 1;
                from[w.idx()][np] = Some((v, l));
                q.push_back((w, np));
            }
        }
    }
    let par = count % 2;
    if dist[target.idx()][par] == usize::MAX || dist[target.idx()][par] > count {
        return None;
    }
    // reconstruct, then pad with cancelling pairs
    let mut seq = Vec::new();
    let (mut v, mut par) = (target, par);
    while !(v.is_identity() && par == 0) {
        let (prev, l) = from[v.idx()][par].expect("breadcrumbs exist on reached states");
        seq.push(l);
        v = prev;
        par = 1 - par;
    }
    seq.reverse();
    let pad = labels[0];
    while seq.len() < count {
        seq.push(pad);
        seq.push(table.inv(pad));
    }
    Some(seq)
}

/// A hamiltonian path word over the current cycle's coset with net
/// displacement `delta`: the cycle rotated to end with a `delta^{-1}` edge,
/// with that edge dropped (or the reverse cycle when only `delta` appears).
fn rung_with_displacement(view: &View, cycle: &GenWord, delta: Elem) -> Result<GenWord> {
    let table = &view.table;
    let inv = table.inv(delta);
    let labels: Vec<Elem> = cycle
        .0
        .iter()
        .map(|&sg| view.step(sg).expect("cycle labels resolve"))
        .collect();
    if let Some(pos) = labels.iter().position(|&l| l == inv) {
        // rotate so the inv-labelled edge is last, then drop it
        let mut w: Vec<SignedGen> = cycle.0[pos + 1..].to_vec();
        w.extend_from_slice(&cycle.0[..pos]);
        return Ok(GenWord(w));
    }
    if labels.contains(&delta) {
        let rev = cycle.reversed();
        return rung_with_displacement(view, &rev, delta);
    }
    Err(Error::PatternNotFound(format!(
        "no edge with displacement {} in the rung cycle",
        delta.0
    )))
}

/// A hamiltonian path in the view whose product (read in `product_view`,
/// typically one quotient up) equals `x^p * y^q`, via the grid construction:
/// an interleaving of snake paths over the remaining generators with the
/// grid path over `x` and `y`.
///
/// `x_gen`, `y_gen` index the generating set; `rest` are the other usable
/// generators. The path is hamiltonian over the subgroup the view generates.
pub fn path_with_product(
    view: &View,
    x_gen: usize,
    y_gen: usize,
    rest: &[usize],
    grid_k: usize,
    grid_l: usize,
    target: (usize, usize),
) -> Result<GenWord> {
    let x = SignedGen::fwd(x_gen);
    let y = SignedGen::fwd(y_gen);
    let cells = grid::grid_ham_path(grid_k, grid_l, target)?;
    // L: snake path over the rest, inside the quotient by <x, y>
    let xy_sub = subgroup_generated(
        &view.table,
        &[
            view.step(x).ok_or_else(|| Error::BadInput("x not usable".into()))?,
            view.step(y).ok_or_else(|| Error::BadInput("y not usable".into()))?,
        ],
    );
    let qv = crate::quotient::QuotientView::new(view.table.clone(), xy_sub)?;
    let deep = view.through(&qv);
    let l_path = abelian_ham_path_raw(&deep, rest)?;

    let mut word = GenWord::empty();
    let mut fwd = true;
    for i in 1..cells.len() {
        let seg = if fwd { l_path.clone() } else { l_path.reversed() };
        word.0.extend_from_slice(&seg.0);
        fwd = !fwd;
        let (ax, ay) = cells[i - 1];
        let (bx, by) = cells[i];
        let step = if bx == ax + 1 {
            x
        } else if ax == bx + 1 {
            x.flipped()
        } else if by == ay + 1 {
            y
        } else {
            y.flipped()
        };
        word.0.push(step);
    }
    let seg = if fwd { l_path } else { l_path.reversed() };
    word.0.extend_from_slice(&seg.0);
    Ok(word)
}

/// Like [`abelian_ham_path`] but without the membership sanity sweep (used on
/// deep views where the covered subgroup is implicit).
fn abelian_ham_path_raw(view: &View, use_gens: &[usize]) -> Result<GenWord> {
    if !view.table.is_abelian() {
        return Err(Error::BadInput("nested snake path needs an abelian group".into()));
    }
    let gens = effective_gens(view, use_gens);
    let mut word = GenWord::empty();
    let mut members = subgroup_generated(&view.table, &[]);
    let mut gen_elems: Vec<Elem> = Vec::new();
    for (sg, e) in gens {
        gen_elems.push(e);
        let bigger = subgroup_generated(&view.table, &gen_elems);
        let d = bigger.order() / members.order();
        if d == 1 {
            continue;
        }
        let mut w = word.clone();
        for j in 1..d {
            w.0.push(sg);
            let copy = if j % 2 == 1 { word.reversed() } else { word.clone() };
            w.0.extend_from_slice(&copy.0);
        }
        word = w;
        members = bigger;
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, FamilySpec};
    use crate::words::GenSet;
    use std::sync::Arc;

    #[test]
    fn cycle_in_z5() {
        let gt = Arc::new(build(&FamilySpec::Cyclic { n: 5 }).unwrap());
        let gens = GenSet::new(&gt, vec![Elem(1)]);
        let view = View::of_group(&gt, &gens);
        let w = abelian_ham_cycle(&view, &[0]).unwrap();
        assert_eq!(w.len(), 5);
        assert!(view.is_ham_cycle(Elem::IDENTITY, &w));
    }

    #[test]
    fn cycle_in_klein() {
        let gt = Arc::new(build(&FamilySpec::AbelianProduct { ns: vec![2, 2] }).unwrap());
        let gens = GenSet::new(&gt, vec![Elem(2), Elem(1)]);
        let view = View::of_group(&gt, &gens);
        let w = abelian_ham_cycle(&view, &[0, 1]).unwrap();
        assert_eq!(w.len(), 4);
        assert!(view.is_ham_cycle(Elem::IDENTITY, &w));
    }

    #[test]
    fn cycle_in_mixed_products() {
        for ns in [vec![3, 4], vec![2, 6], vec![4, 4], vec![2, 3, 4], vec![2, 2, 2, 3]] {
            let gt = Arc::new(build(&FamilySpec::AbelianProduct { ns: ns.clone() }).unwrap());
            // one generator per direct factor
            let mut gens_elems = Vec::new();
            let mut stride = gt.order();
            for &n in &ns {
                stride /= n;
                gens_elems.push(Elem(stride as u16));
            }
            let gens = GenSet::new(&gt, gens_elems.clone());
            let view = View::of_group(&gt, &gens);
            let idx: Vec<usize> = (0..gens_elems.len()).collect();
            let w = abelian_ham_cycle(&view, &idx).unwrap();
            assert!(view.is_ham_cycle(Elem::IDENTITY, &w), "failed for {ns:?}");
            let p = abelian_ham_path(&view, &idx, Elem::IDENTITY).unwrap();
            assert_eq!(p.len(), gt.order() - 1);
        }
    }

    #[test]
    fn path_with_product_controls_endpoint() {
        // H = Z2 x Z4 with x of order 2 and y of order 4
        let gt = Arc::new(build(&FamilySpec::AbelianProduct { ns: vec![2, 4] }).unwrap());
        let x = Elem(4);
        let y = Elem(1);
        let gens = GenSet::new(&gt, vec![x, y]);
        let view = View::of_group(&gt, &gens);
        let w = path_with_product(&view, 0, 1, &[], 2, 4, (1, 0)).unwrap();
        assert_eq!(view.check_path_over(Elem::IDENTITY, &w, 8, |_| true), Some(x));
        let w = path_with_product(&view, 0, 1, &[], 2, 4, (1, 2)).unwrap();
        let expect = gt.mul(x, gt.mul(y, y));
        assert_eq!(view.check_path_over(Elem::IDENTITY, &w, 8, |_| true), Some(expect));
        assert!(path_with_product(&view, 0, 1, &[], 2, 4, (1, 1)).is_err());
    }
}

//! Group families and the test universe.
//!
//! Families are built from presentations or actions, then run through the
//! full axiom check. The universe enumerator filters to groups whose
//! commutator subgroup has order `2p` and deduplicates by cheap invariants
//! rather than full isomorphism testing; duplicate isomorphic instances are
//! acceptable test redundancy.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::comm::decompose_comm;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::subgrp::{commutator_subgroup, irredundant_reduce, subgroup_generated};

/// Parameterized family of groups.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", content = "params", rename_all = "camelCase")]
pub enum FamilySpec {
    Cyclic {
        n: usize,
    },
    AbelianProduct {
        ns: Vec<usize>,
    },
    Dihedral {
        n: usize,
    },
    Dicyclic {
        n: usize,
    },
    /// `Z_m` acting on `Z_{n_1} x ... x Z_{n_k}` via an integer matrix.
    Semidirect {
        m: usize,
        ns: Vec<usize>,
        action: Vec<Vec<i64>>,
    },
    /// Like `Semidirect`, but the cyclic part closes onto `offset` in the
    /// abelian base (`a^m = v`), giving non-split extensions.
    CentralExtension {
        m: usize,
        ns: Vec<usize>,
        action: Vec<Vec<i64>>,
        offset: Vec<i64>,
    },
    TableLiteral {
        name: String,
        table: Vec<Vec<usize>>,
    },
}

/// Mixed-radix coordinates for an abelian product.
struct Radix {
    ns: Vec<usize>,
    size: usize,
}

impl Radix {
    fn new(ns: &[usize]) -> Result<Radix> {
        if ns.iter().any(|&n| n == 0) {
            return Err(Error::BadAction("zero modulus in abelian base".into()));
        }
        let size = ns.iter().product();
        Ok(Radix {
            ns: ns.to_vec(),
            size,
        })
    }

    fn decode(&self, mut i: usize) -> Vec<usize> {
        let mut x = vec![0; self.ns.len()];
        for k in (0..self.ns.len()).rev() {
            x[k] = i % self.ns[k];
            i /= self.ns[k];
        }
        x
    }

    fn encode(&self, x: &[usize]) -> usize {
        let mut i = 0;
        for k in 0..self.ns.len() {
            i = i * self.ns[k] + (x[k] % self.ns[k]);
        }
        i
    }

    fn add(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter()
            .zip(b)
            .zip(&self.ns)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect()
    }

    fn reduce(&self, v: &[i64]) -> Vec<usize> {
        v.iter()
            .zip(&self.ns)
            .map(|(&x, &n)| x.rem_euclid(n as i64) as usize)
            .collect()
    }
}

fn apply_matrix(r: &Radix, m: &[Vec<i64>], x: &[usize]) -> Vec<usize> {
    (0..r.ns.len())
        .map(|row| {
            let s: i64 = (0..r.ns.len()).map(|col| m[row][col] * x[col] as i64).sum();
            s.rem_euclid(r.ns[row] as i64) as usize
        })
        .collect()
}

fn cyclic_extension(
    name: String,
    m: usize,
    ns: &[usize],
    action: &[Vec<i64>],
    offset: &[i64],
) -> Result<GroupTable> {
    if m == 0 {
        return Err(Error::BadAction("cyclic part must be nontrivial".into()));
    }
    let r = Radix::new(ns)?;
    if action.len() != ns.len() || action.iter().any(|row| row.len() != ns.len()) {
        return Err(Error::BadAction("action matrix has the wrong shape".into()));
    }
    if offset.len() != ns.len() {
        return Err(Error::BadAction("offset has the wrong length".into()));
    }
    let v = r.reduce(offset);

    // The action must be an automorphism of the base whose m-th power is the
    // identity and which fixes the closing offset.
    let phi: Vec<usize> = (0..r.size)
        .map(|i| r.encode(&apply_matrix(&r, action, &r.decode(i))))
        .collect();
    {
        let mut seen = vec![false; r.size];
        for &y in &phi {
            if seen[y] {
                return Err(Error::BadAction("action is not a bijection".into()));
            }
            seen[y] = true;
        }
        for a in 0..r.size.min(64) {
            for b in 0..r.size.min(64) {
                let ab = r.encode(&r.add(&r.decode(a), &r.decode(b)));
                let im = r.encode(&r.add(&r.decode(phi[a]), &r.decode(phi[b])));
                if phi[ab] != im {
                    return Err(Error::BadAction("action is not a homomorphism".into()));
                }
            }
        }
        let mut x: Vec<usize> = (0..r.size).collect();
        for _ in 0..m {
            x = x.iter().map(|&i| phi[i]).collect();
        }
        if x.iter().enumerate().any(|(i, &y)| i != y) {
            return Err(Error::BadAction("action order does not divide m".into()));
        }
        if phi[r.encode(&v)] != r.encode(&v) {
            return Err(Error::BadAction("action must fix the closing offset".into()));
        }
    }

    let order = m * r.size;
    if order > crate::group::MAX_ORDER {
        return Err(Error::CapExceeded(order, crate::group::MAX_ORDER));
    }

    // Element (i, x) = a^i x; (a^i x)(a^j y) = a^{i+j} phi^j(x) y, with
    // a^m = v folded into the base on wraparound.
    let mut phi_pow: Vec<Vec<usize>> = Vec::with_capacity(m);
    phi_pow.push((0..r.size).collect());
    for j in 1..m {
        let prev = &phi_pow[j - 1];
        phi_pow.push((0..r.size).map(|i| phi[prev[i]]).collect());
    }
    let idx = |i: usize, x: usize| i * r.size + x;
    let mut rows = vec![vec![0usize; order]; order];
    for i in 0..m {
        for xi in 0..r.size {
            let x = r.decode(xi);
            for j in 0..m {
                for yi in 0..r.size {
                    let y = r.decode(yi);
                    let mut z = r.add(&r.decode(phi_pow[j][r.encode(&x)]), &y);
                    let mut k = i + j;
                    if k >= m {
                        k -= m;
                        z = r.add(&z, &v);
                    }
                    rows[idx(i, xi)][idx(j, yi)] = idx(k, r.encode(&z));
                }
            }
        }
    }
    GroupTable::from_rows(name, &rows)
}

fn spec_name(spec: &FamilySpec) -> String {
    fn join(ns: &[usize]) -> String {
        ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x")
    }
    match spec {
        FamilySpec::Cyclic { n } => format!("Z{n}"),
        FamilySpec::AbelianProduct { ns } => format!("Ab({})", join(ns)),
        FamilySpec::Dihedral { n } => format!("D{n}"),
        FamilySpec::Dicyclic { n } => format!("Dic{n}"),
        FamilySpec::Semidirect { m, ns, action } => {
            let a: Vec<String> = action
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            format!("SD({m};{};{})", join(ns), a.join(";"))
        }
        FamilySpec::CentralExtension { m, ns, action, offset } => {
            let a: Vec<String> = action
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            let o: Vec<String> = offset.iter().map(|v| v.to_string()).collect();
            format!("CE({m};{};{};{})", join(ns), a.join(";"), o.join(","))
        }
        FamilySpec::TableLiteral { name, .. } => name.clone(),
    }
}

/// Builds the multiplication table for a family instance and axiom-checks it.
pub fn build(spec: &FamilySpec) -> Result<GroupTable> {
    let name = spec_name(spec);
    match spec {
        FamilySpec::Cyclic { n } => {
            if *n == 0 {
                return Err(Error::BadAction("cyclic group needs n >= 1".into()));
            }
            let rows: Vec<Vec<usize>> =
                (0..*n).map(|i| (0..*n).map(|j| (i + j) % n).collect()).collect();
            GroupTable::from_rows(name, &rows)
        }
        FamilySpec::AbelianProduct { ns } => {
            let r = Radix::new(ns)?;
            let rows: Vec<Vec<usize>> = (0..r.size)
                .map(|i| {
                    (0..r.size)
                        .map(|j| r.encode(&r.add(&r.decode(i), &r.decode(j))))
                        .collect()
                })
                .collect();
            GroupTable::from_rows(name, &rows)
        }
        FamilySpec::Dihedral { n } => {
            if *n < 1 {
                return Err(Error::BadAction("dihedral group needs n >= 1".into()));
            }
            cyclic_extension(name, 2, &[*n], &[vec![-1]], &[0])
        }
        FamilySpec::Dicyclic { n } => {
            if *n < 2 {
                return Err(Error::BadAction("dicyclic group needs n >= 2".into()));
            }
            cyclic_extension(name, 2, &[2 * n], &[vec![-1]], &[*n as i64])
        }
        FamilySpec::Semidirect { m, ns, action } => {
            cyclic_extension(name, *m, ns, action, &vec![0; ns.len()])
        }
        FamilySpec::CentralExtension { m, ns, action, offset } => {
            cyclic_extension(name, *m, ns, action, offset)
        }
        FamilySpec::TableLiteral { name, table } => GroupTable::from_rows(name.clone(), table),
    }
}

/// Group-exchange JSON.
#[derive(Serialize, Deserialize)]
struct GroupWire {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    generators: Vec<usize>,
    #[serde(default)]
    meta: Value,
}

/// Serializes a group (plus suggested generators) to exchange JSON.
pub fn group_to_json(gt: &GroupTable, generators: &[Elem]) -> String {
    let wire = GroupWire {
        name: gt.name().to_string(),
        order: gt.order(),
        table: gt.rows(),
        generators: generators.iter().map(|e| e.idx()).collect(),
        meta: Value::Object(Default::default()),
    };
    serde_json::to_string(&wire).expect("group serialization cannot fail")
}

/// Loads either exchange JSON or the `{"family": ..., "params": ...}`
/// shorthand. Axioms are validated on load.
pub fn group_from_json(s: &str) -> Result<(GroupTable, Vec<Elem>)> {
    let v: Value = serde_json::from_str(s)?;
    if v.get("family").is_some() {
        let spec: FamilySpec = serde_json::from_value(v)?;
        let gt = build(&spec)?;
        return Ok((gt, Vec::new()));
    }
    let wire: GroupWire = serde_json::from_value(v)?;
    if wire.table.len() != wire.order {
        return Err(Error::InvalidFormat(format!(
            "declared order {} does not match table size {}",
            wire.order,
            wire.table.len()
        )));
    }
    let gt = GroupTable::from_rows(wire.name, &wire.table)?;
    let gens: Vec<Elem> = wire
        .generators
        .iter()
        .map(|&i| gt.check(Elem(i as u16)))
        .collect::<Result<_>>()?;
    Ok((gt, gens))
}

/// Reproducible catalog configuration: an explicit family grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogConfig {
    pub max_order: usize,
    pub primes: Vec<usize>,
    pub specs: Vec<FamilySpec>,
}

impl CatalogConfig {
    pub fn from_json(s: &str) -> Result<CatalogConfig> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }
}

/// The built-in family grid: enough variety around each prime to exercise
/// every dispatch branch the sweep is expected to reach.
pub fn default_config(max_order: usize, primes: &[usize]) -> CatalogConfig {
    let mut specs = Vec::new();
    for &p in primes {
        let p = p as i64;
        let tp = 2 * p; // |G'|
        specs.push(FamilySpec::Dihedral { n: 2 * tp as usize });
        specs.push(FamilySpec::Dicyclic { n: tp as usize });
        // a: order 2, inverting the whole cyclic base (dihedral-with-padding)
        for k in [2usize, 4, 6, 8] {
            specs.push(FamilySpec::Semidirect {
                m: 2,
                ns: vec![tp as usize, k],
                action: vec![vec![-1, 0], vec![0, 1]],
            });
            specs.push(FamilySpec::Semidirect {
                m: 2,
                ns: vec![tp as usize, k],
                action: vec![vec![-1, 0], vec![0, -1]],
            });
        }
        // the split-involution shape: Z2 x Zp x Zn base, a swaps the Z2 in
        // only via the Zn coordinate and inverts Zp
        for n in [2usize, 4, 6, 8, 12] {
            specs.push(FamilySpec::Semidirect {
                m: 2,
                ns: vec![2, p as usize, n],
                action: vec![vec![1, 0, 1], vec![0, -1, 0], vec![0, 0, 1]],
            });
        }
        // higher-order a acting on Z4 x Zp and Z8 x Zp
        for m in [4usize, 6, 8] {
            specs.push(FamilySpec::Semidirect {
                m,
                ns: vec![4, p as usize],
                action: vec![vec![-1, 0], vec![0, -1]],
            });
            specs.push(FamilySpec::Semidirect {
                m,
                ns: vec![8, p as usize],
                action: vec![vec![-1, 0], vec![0, -1]],
            });
        }
        // a of larger order with b = a^k gamma shapes (cyclic base Z_{2p}
        // extended by Z_m where a^m lands in the base)
        for m in [4usize, 6, 8, 12] {
            specs.push(FamilySpec::CentralExtension {
                m,
                ns: vec![tp as usize],
                action: vec![vec![-1]],
                offset: vec![p],
            });
            specs.push(FamilySpec::CentralExtension {
                m,
                ns: vec![tp as usize],
                action: vec![vec![-1]],
                offset: vec![1],
            });
        }
        // elementary-abelian tops for large generating sets
        specs.push(FamilySpec::Semidirect {
            m: 2,
            ns: vec![tp as usize, 2, 2],
            action: vec![vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        });
        specs.push(FamilySpec::Semidirect {
            m: 2,
            ns: vec![tp as usize, 2, 2, 2],
            action: vec![vec![-1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        });
        specs.push(FamilySpec::Semidirect {
            m: 2,
            ns: vec![2, p as usize, 2, 2],
            action: vec![
                vec![1, 0, 0, 1],
                vec![0, -1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
            ],
        });
        // mixed central extension with non-inverting Zp action when p = 7
        // (an order-3 automorphism exists for p = 7)
        if p == 7 {
            specs.push(FamilySpec::Semidirect {
                m: 6,
                ns: vec![2, 7],
                action: vec![vec![1, 0], vec![0, 3]],
            });
            specs.push(FamilySpec::Semidirect {
                m: 3,
                ns: vec![2, 7, 2],
                action: vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]],
            });
        }
    }
    CatalogConfig {
        max_order,
        primes: primes.to_vec(),
        specs,
    }
}

/// All config instances with `|G| <= max_order` and `|G'| = 2p` for a prime
/// in the list, deduplicated by cheap isomorphism invariants.
pub fn enumerate_universe(config: &CatalogConfig) -> Vec<(GroupTable, String)> {
    let mut out: Vec<(GroupTable, String)> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for spec in &config.specs {
        let gt = match build(spec) {
            Ok(gt) => gt,
            Err(_) => continue,
        };
        if gt.order() > config.max_order {
            continue;
        }
        let gp = commutator_subgroup(&gt);
        let Ok(comm) = decompose_comm(&gt) else { continue };
        if !config.primes.contains(&comm.p) || gp.order() != 2 * comm.p {
            continue;
        }
        // invariant key: order, |G'|, |Z|, element-order histogram
        let mut hist = vec![0usize; gt.order() + 1];
        for e in gt.elems() {
            hist[gt.element_order(e)] += 1;
        }
        let mut key = vec![gt.order(), gp.order(), gt.center_elems().len()];
        key.extend(hist);
        if seen.insert(key) {
            out.push((gt, format!("{:?}", spec)));
        }
    }
    out
}

/// Deterministic enumeration of irredundant generating sets, up to
/// `max_size` generators and at most `max_count` sets.
pub fn enumerate_gensets(gt: &GroupTable, max_size: usize, max_count: usize) -> Vec<Vec<Elem>> {
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut out: Vec<Vec<Elem>> = Vec::new();
    let mut stack: Vec<Elem> = Vec::new();
    // Depth-first extension: each added generator must lie outside the
    // subgroup generated so far, which prunes hard.
    fn extend(
        gt: &GroupTable,
        stack: &mut Vec<Elem>,
        current: &crate::subgrp::Subgrp,
        max_size: usize,
        max_count: usize,
        found: &mut BTreeSet<Vec<Elem>>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if out.len() >= max_count {
            return;
        }
        let first = stack.last().map(|e| e.0 + 1).unwrap_or(1);
        for i in first..gt.order() as u16 {
            if out.len() >= max_count {
                return;
            }
            let g = Elem(i);
            if current.contains(g) {
                continue;
            }
            stack.push(g);
            let bigger = subgroup_generated(gt, stack);
            if bigger.order() == gt.order() {
                if let Ok(reduced) = irredundant_reduce(gt, stack) {
                    if found.insert(reduced.clone()) {
                        out.push(reduced);
                    }
                }
            } else if stack.len() < max_size {
                extend(gt, stack, &bigger, max_size, max_count, found, out);
            }
            stack.pop();
        }
    }
    let trivial = subgroup_generated(gt, &[]);
    extend(gt, &mut stack, &trivial, max_size, max_count, &mut found, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_family_matches_presentation() {
        let gt = build(&FamilySpec::Dihedral { n: 12 }).unwrap();
        assert_eq!(gt.order(), 24);
        let gp = commutator_subgroup(&gt);
        assert_eq!(gp.order(), 6);
        assert_eq!(gt.element_order(gp.elems()[1]), gt.element_order(gp.elems()[1]));
    }

    #[test]
    fn dicyclic_family() {
        let gt = build(&FamilySpec::Dicyclic { n: 6 }).unwrap();
        assert_eq!(gt.order(), 24);
        assert_eq!(commutator_subgroup(&gt).order(), 6);
        // the extending element squares into the base, not to e
        let a = Elem((gt.order() / 2) as u16);
        assert_eq!(gt.element_order(a), 4);
    }

    #[test]
    fn trivial_cyclic() {
        let gt = build(&FamilySpec::Cyclic { n: 1 }).unwrap();
        assert_eq!(gt.order(), 1);
    }

    #[test]
    fn semidirect_partial_inversion_has_small_commutator() {
        // Z4 acting on Z2 x Z3 inverting only the Z3 part: |G'| = 3, not 6,
        // so the 2p universe must reject it.
        let spec = FamilySpec::Semidirect {
            m: 4,
            ns: vec![2, 3],
            action: vec![vec![1, 0], vec![0, -1]],
        };
        let gt = build(&spec).unwrap();
        assert_eq!(gt.order(), 24);
        assert_eq!(commutator_subgroup(&gt).order(), 3);
        let config = CatalogConfig {
            max_order: 64,
            primes: vec![3],
            specs: vec![spec],
        };
        assert!(enumerate_universe(&config).is_empty());
    }

    #[test]
    fn bad_action_rejected() {
        let spec = FamilySpec::Semidirect {
            m: 2,
            ns: vec![5],
            action: vec![vec![2]], // 2^2 = 4 != 1 mod 5: order does not divide 2
        };
        assert!(matches!(build(&spec), Err(Error::BadAction(_))));
    }

    #[test]
    fn universe_contains_expected_small_groups() {
        let config = default_config(72, &[3]);
        let universe = enumerate_universe(&config);
        assert!(universe.iter().any(|(g, _)| g.order() == 24));
        assert!(universe.iter().any(|(g, _)| g.order() == 48));
        assert!(universe.iter().any(|(g, _)| g.order() == 72));
        for (g, _) in &universe {
            assert_eq!(commutator_subgroup(g).order(), 6);
            // the abelianization order is divisible by 4
            assert_eq!((g.order() / 6) % 4, 0);
        }
        // empty prime list -> empty universe
        let empty = CatalogConfig {
            primes: vec![],
            ..config.clone()
        };
        assert!(enumerate_universe(&empty).is_empty());
        // max_order 4 cannot hold any group with |G'| = 2p
        let tiny = CatalogConfig {
            max_order: 4,
            ..config
        };
        assert!(enumerate_universe(&tiny).is_empty());
    }

    #[test]
    fn genset_enumeration() {
        let gt = build(&FamilySpec::Cyclic { n: 5 }).unwrap();
        let sets = enumerate_gensets(&gt, 2, 10);
        assert_eq!(sets.len(), 4); // each nonzero element generates
        assert!(sets.iter().all(|s| s.len() == 1));

        let gt = build(&FamilySpec::Dihedral { n: 12 }).unwrap();
        let sets = enumerate_gensets(&gt, 3, 400);
        // contains a reflection+rotation pair
        assert!(sets.iter().any(|s| s.len() == 2));
        for s in &sets {
            assert!(crate::subgrp::generates(&gt, s));
            // irredundant: no proper subset generates
            for i in 0..s.len() {
                let mut t = s.clone();
                t.remove(i);
                assert!(!crate::subgrp::generates(&gt, &t));
            }
        }
        assert!(enumerate_gensets(&gt, 3, 0).is_empty());
    }

    #[test]
    fn json_round_trips() {
        let gt = build(&FamilySpec::Dihedral { n: 6 }).unwrap();
        let s = group_to_json(&gt, &[Elem(1), Elem(6)]);
        let (back, gens) = group_from_json(&s).unwrap();
        assert_eq!(back.order(), 12);
        assert_eq!(gens, vec![Elem(1), Elem(6)]);
        let (fam, _) = group_from_json(r#"{"family":"dihedral","params":{"n":12}}"#).unwrap();
        assert_eq!(fam.order(), 24);
        let cfg = default_config(200, &[3, 5, 7]);
        let round = CatalogConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(round.specs.len(), cfg.specs.len());
    }
}

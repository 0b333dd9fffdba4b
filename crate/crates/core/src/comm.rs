//! The commutator structure `G' = Z_2 x Z_p` and conjugation predicates on it.

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::subgrp::{commutator_subgroup, subgroup_generated, Subgrp};

/// How an element acts on `Z_p` by conjugation.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ZpAction {
    Centralizes,
    Inverts,
    Other,
}

/// Decomposition of a cyclic commutator subgroup of order `2p`.
#[derive(Clone, Debug)]
pub struct CommStructure {
    pub gprime: Subgrp,
    pub z2: Subgrp,
    pub zp: Subgrp,
    /// The odd prime.
    pub p: usize,
    /// Least-index generator of `G'`.
    pub gamma: Elem,
    /// The involution generating `Z_2`.
    pub z: Elem,
    /// Least-index generator of `Z_p`.
    pub gamma_p: Elem,
}

fn is_odd_prime(n: usize) -> bool {
    n >= 3 && n % 2 == 1 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Identifies `Z_2` and `Z_p` inside `G'` when `|G'| = 2p`.
pub fn decompose_comm(gt: &GroupTable) -> Result<CommStructure> {
    let gprime = commutator_subgroup(gt);
    let m = gprime.order();
    if m % 2 != 0 || !is_odd_prime(m / 2) {
        return Err(Error::UnsupportedGroup(format!(
            "commutator subgroup has order {m}, not twice an odd prime"
        )));
    }
    let p = m / 2;
    let gamma = gprime
        .elems()
        .iter()
        .copied()
        .find(|&e| gt.element_order(e) == m)
        .ok_or_else(|| {
            // Both Sylow subgroups of a group of order 2p are unique when it is
            // abelian; a non-cyclic case cannot occur here.
            Error::Inconsistency("commutator subgroup of order 2p is not cyclic".into())
        })?;
    let z = gt.pow(gamma, p as i64);
    let gamma_sq = gt.mul(gamma, gamma);
    let z2 = subgroup_generated(gt, &[z]);
    let zp = subgroup_generated(gt, &[gamma_sq]);
    debug_assert_eq!(z2.order(), 2);
    debug_assert_eq!(zp.order(), p);
    let gamma_p = zp.elems()[1];
    Ok(CommStructure {
        gprime,
        z2,
        zp,
        p,
        gamma,
        z,
        gamma_p,
    })
}

impl CommStructure {
    /// `Z_p <= <x>` for `x` in `G'`, i.e. `x` is not in the `Z_2` part.
    pub fn zp_part_nontrivial(&self, x: Elem) -> bool {
        !self.z2.contains(x)
    }

    /// `Z_2 <= <x>` for `x` in `G'`, i.e. `x` is not in the `Z_p` part.
    pub fn z2_part_nontrivial(&self, x: Elem) -> bool {
        !self.zp.contains(x)
    }

    pub fn generates_gprime(&self, gt: &GroupTable, x: Elem) -> bool {
        self.gprime.contains(x) && gt.element_order(x) == 2 * self.p
    }

    pub fn action_on_zp(&self, gt: &GroupTable, g: Elem) -> ZpAction {
        let c = gt.conjugate(self.gamma_p, g);
        if c == self.gamma_p {
            ZpAction::Centralizes
        } else if c == gt.inv(self.gamma_p) {
            ZpAction::Inverts
        } else {
            ZpAction::Other
        }
    }

    /// `g` centralizes `G'` iff it centralizes the `Z_p` part, because the
    /// `Z_2` part of a cyclic normal subgroup is always central.
    pub fn centralizes_gprime(&self, gt: &GroupTable, g: Elem) -> bool {
        self.action_on_zp(gt, g) == ZpAction::Centralizes
    }

    pub fn inverts_gprime(&self, gt: &GroupTable, g: Elem) -> bool {
        self.action_on_zp(gt, g) == ZpAction::Inverts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cyclic, dihedral};

    #[test]
    fn dihedral_decomposition() {
        let g = dihedral(12);
        let c = decompose_comm(&g).unwrap();
        assert_eq!(c.p, 3);
        assert_eq!(c.zp.elems(), &[Elem(0), Elem(4), Elem(8)]);
        assert_eq!(c.z2.elems(), &[Elem(0), Elem(6)]);
        assert_eq!(c.z, Elem(6));
        // z2 is central
        assert!(g.center_elems().contains(&c.z));
    }

    #[test]
    fn rejects_wrong_orders() {
        // Z_11 has trivial commutator subgroup.
        let g = cyclic(11);
        assert!(decompose_comm(&g).is_err());
        // D_5 (order 10) has commutator subgroup of order 5, not 2p.
        let g = dihedral(5);
        assert!(decompose_comm(&g).is_err());
    }

    #[test]
    fn actions() {
        let g = dihedral(12);
        let c = decompose_comm(&g).unwrap();
        // rotations centralize G', reflections invert it
        assert_eq!(c.action_on_zp(&g, Elem(1)), ZpAction::Centralizes);
        assert_eq!(c.action_on_zp(&g, Elem(12)), ZpAction::Inverts);
        assert!(c.generates_gprime(&g, Elem(2)));
        assert!(!c.generates_gprime(&g, Elem(4)));
        assert!(c.zp_part_nontrivial(Elem(4)));
        assert!(!c.zp_part_nontrivial(Elem(6)));
        assert!(c.z2_part_nontrivial(Elem(6)));
    }
}

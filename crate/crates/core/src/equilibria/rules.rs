//! Topological shortcuts: necessary conditions that reject profiles without a
//! full classification, and hypotheses under which the strict equilibria are
//! known in closed form.

use crate::game::{EgnInstance, GameClass, Ratio};

use super::PureProfile;

/// Some coordination vertex with at least one neighbor disagrees with all of
/// its neighbors. Such a profile is never a NE.
pub fn rejects_by_coordination_mismatch(inst: &EgnInstance, p: PureProfile) -> bool {
    let g = inst.graph();
    (0..inst.n()).any(|v| {
        inst.class(v) == GameClass::Coordination
            && g.degree(v) > 0
            && g.neighbors(v).iter().all(|&w| p.cooperates(w) != p.cooperates(v))
    })
}

/// Some anti-coordination vertex with at least one neighbor agrees with all
/// of its neighbors. Such a profile is never a NE.
pub fn rejects_by_anticoordination_match(inst: &EgnInstance, p: PureProfile) -> bool {
    let g = inst.graph();
    (0..inst.n()).any(|v| {
        inst.class(v) == GameClass::AntiCoordination
            && g.degree(v) > 0
            && g.neighbors(v).iter().all(|&w| p.cooperates(w) == p.cooperates(v))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicability {
    Holds,
    Fails,
    Inapplicable(String),
}

impl Applicability {
    pub fn holds(&self) -> bool {
        *self == Applicability::Holds
    }
}

/// For a connected graph where every vertex plays the same coordination
/// matrix, `R > d_v - 1` for all `v` makes full cooperation and full
/// defection the only strict pure equilibria.
pub fn coordination_unique_sne(inst: &EgnInstance) -> Applicability {
    let Some(b) = inst.common_payoff() else {
        return Applicability::Inapplicable("payoff matrices differ between vertices".into());
    };
    if b.class() != GameClass::Coordination {
        return Applicability::Inapplicable(format!("common matrix is {}, not coordination", b.class()));
    }
    let g = inst.graph();
    if g.n() < 2 || !g.is_connected() {
        return Applicability::Inapplicable("graph must be connected with at least two vertices".into());
    }
    let Ratio::Finite(r) = b.ratio() else {
        unreachable!("coordination implies a non-zero σ_D");
    };
    if r > g.max_degree() as f64 - 1.0 {
        Applicability::Holds
    } else {
        Applicability::Fails
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdsEquivalence {
    /// `R_v > d_v - 1` everywhere: a profile is strict NE iff its cooperators
    /// form an independent dominating set.
    CooperatorIds,
    /// `1 / R_v > d_v - 1` everywhere: the same statement for defectors.
    DefectorIds,
    Inapplicable,
}

/// Which independent-dominating-set characterization, if any, applies to an
/// all-anti-coordination instance. Graphs with an isolated vertex are
/// excluded: such a vertex is never strict, yet sits in every dominating set.
/// When both characterizations hold the cooperator form is reported.
pub fn ids_equivalence(inst: &EgnInstance) -> IdsEquivalence {
    let g = inst.graph();
    if g.min_degree() == 0 {
        return IdsEquivalence::Inapplicable;
    }
    let mut cooperator = true;
    let mut defector = true;
    for v in 0..inst.n() {
        if inst.class(v) != GameClass::AntiCoordination {
            return IdsEquivalence::Inapplicable;
        }
        let (sc, sd) = inst.sigma(v);
        let slack = g.degree(v) as f64 - 1.0;
        cooperator &= sc / sd > slack;
        defector &= sd / sc > slack;
    }
    if cooperator {
        IdsEquivalence::CooperatorIds
    } else if defector {
        IdsEquivalence::DefectorIds
    } else {
        IdsEquivalence::Inapplicable
    }
}

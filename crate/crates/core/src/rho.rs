use serde::{Deserialize, Serialize};

use crate::eigenvalue::Eigenvalue;
use crate::error::VanishingError;
use crate::lattice::Lattice;
use crate::oracle::{local_vanishing_oracle, LocalVerdict, OracleConfig};

/// Declares that at a shared codim-3 edge of the stated multiplicity and
/// local shape, the restrictions of a generator of the one-dimensional
/// local eigenspace to both codim-2 edges are nonzero, so the two edges
/// are strongly connected there.
///
/// The engine never invents connectivity: only declared rules create
/// strong edges, which keeps the resulting bound sound (fewer declared
/// witnesses can only merge fewer components, i.e. raise the bound).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRule {
    /// Multiplicities of the two codim-2 edges, as an unordered pair.
    pub m_i: usize,
    pub m_i_other: usize,
    /// Multiplicity of the shared codim-3 edge.
    pub m_j: usize,
    /// Eigenvalue order the rule applies to.
    pub order: u64,
    /// Restricts the rule to codim-3 edges whose local type is the
    /// degree-6 braid arrangement.
    pub requires_braid_local: bool,
    pub citation: String,
}

impl WitnessRule {
    fn matches(&self, order: u64, m_a: usize, m_b: usize, m_j: usize, braid_local: bool) -> bool {
        self.order == order
            && self.m_j == m_j
            && (!self.requires_braid_local || braid_local)
            && ((self.m_i, self.m_i_other) == (m_a, m_b)
                || (self.m_i, self.m_i_other) == (m_b, m_a))
    }
}

/// The one strong-connectivity fact shipped by default: two triple edges
/// meeting in a degree-6 braid-type edge are strongly connected at order 3.
pub fn default_witness_rules() -> Vec<WitnessRule> {
    vec![WitnessRule {
        m_i: 3,
        m_i_other: 3,
        m_j: 6,
        order: 3,
        requires_braid_local: true,
        citation: "strong connectivity of two triple edges across a degree-6 braid-type \
                   local arrangement at order 3: after the A_3 = D_3 change of coordinates \
                   the natural (mu_2)^3 action permutes the local eigenspace generators, \
                   making both restrictions nonzero"
            .into(),
    }]
}

pub fn validate_witness_rules(rules: &[WitnessRule]) -> Result<(), VanishingError> {
    for (index, r) in rules.iter().enumerate() {
        if r.m_i < 2 || r.m_i_other < 2 {
            return Err(VanishingError::BadWitnessRule {
                index,
                reason: "codim-2 multiplicities must be at least 2".into(),
            });
        }
        if r.m_j < 3 {
            return Err(VanishingError::BadWitnessRule {
                index,
                reason: "codim-3 multiplicity must be at least 3".into(),
            });
        }
        if r.order < 2 {
            return Err(VanishingError::BadWitnessRule {
                index,
                reason: "order must be at least 2".into(),
            });
        }
        if r.citation.trim().is_empty() {
            return Err(VanishingError::BadWitnessRule {
                index,
                reason: "citation must be non-empty".into(),
            });
        }
    }
    Ok(())
}

/// Outcome of the component-counting bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoOutcome {
    Bound {
        rho: usize,
        /// Codim-2 edges where every incident local eigenspace is nonzero.
        core: Vec<usize>,
        assumptions: Vec<String>,
    },
    Unavailable {
        reason: String,
    },
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Upper bound dim H^1(F)_lambda <= rho by counting good components of the
/// strong-connectivity graph.
///
/// The core consists of the relevant codim-2 edges at which every incident
/// codim-3 local eigenspace is known nonzero; each core edge must carry a
/// rank-1 local system (m_i = 3 for lambda != 1), otherwise the bound does
/// not apply. Components of the core merge along declared strong edges, and
/// a component is good when none of its members is strongly connected to a
/// relevant edge outside the core.
pub fn rho_bound(
    lat: &Lattice,
    lambda: &Eigenvalue,
    cfg: &OracleConfig,
    rules: &[WitnessRule],
) -> RhoOutcome {
    let n = lambda.order();
    let relevant: Vec<usize> = (0..lat.codim2.len())
        .filter(|&i| lambda.power_is_one(lat.codim2[i].multiplicity as u64))
        .collect();

    // Classify each relevant edge: in the core (all incident locals known
    // nonzero), outside it (some incident local vanishes), or undecidable.
    let mut core = Vec::new();
    let mut outside = Vec::new();
    let mut assumptions = Vec::new();
    'edges: for &i in &relevant {
        let mut notes = Vec::new();
        for &j in &lat.incident3_of[i] {
            match local_vanishing_oracle(&lat.locals[j], lambda, cfg, false) {
                LocalVerdict::Zero { .. } => {
                    outside.push(i);
                    continue 'edges;
                }
                LocalVerdict::NonzeroKnown { note, .. } => {
                    if let Some(t) = note {
                        notes.push(t);
                    }
                }
                LocalVerdict::Unknown => {
                    return RhoOutcome::Unavailable {
                        reason: format!(
                            "oracle undecided at codim-3 edge {j} incident to codim-2 edge {i}"
                        ),
                    };
                }
            }
        }
        core.push(i);
        assumptions.extend(notes);
    }

    for &i in &core {
        if lat.local_system_rank(i, lambda) != 1 {
            return RhoOutcome::Unavailable {
                reason: format!(
                    "rank hypothesis fails: codim-2 edge {i} has local system rank {} != 1",
                    lat.local_system_rank(i, lambda)
                ),
            };
        }
    }

    // dim at j is exactly 1 and a declared rule covers the pair: strong edge.
    let strong = |a: usize, b: usize| -> Option<&WitnessRule> {
        let shared: Vec<usize> = lat.incident3_of[a]
            .iter()
            .copied()
            .filter(|j| lat.incident3_of[b].contains(j))
            .collect();
        for j in shared {
            let dim = local_vanishing_oracle(&lat.locals[j], lambda, cfg, false).known_dim();
            if dim != Some(1) {
                continue;
            }
            let m_a = lat.codim2[a].multiplicity;
            let m_b = lat.codim2[b].multiplicity;
            let m_j = lat.codim3[j].multiplicity;
            let braid = lat.locals[j].is_braid();
            if let Some(rule) = rules.iter().find(|r| r.matches(n, m_a, m_b, m_j, braid)) {
                return Some(rule);
            }
        }
        None
    };

    let mut dsu = DisjointSet::new(core.len());
    let mut bad = vec![false; core.len()];
    for (t, &i) in core.iter().enumerate() {
        for (u, &i2) in core.iter().enumerate().skip(t + 1) {
            if let Some(rule) = strong(i, i2) {
                assumptions.push(rule.citation.clone());
                dsu.union(t, u);
            }
        }
        for &i_out in &outside {
            if let Some(rule) = strong(i, i_out) {
                assumptions.push(rule.citation.clone());
                bad[t] = true;
            }
        }
    }

    let mut bad_roots = std::collections::BTreeSet::new();
    let mut roots = std::collections::BTreeSet::new();
    for (t, &t_bad) in bad.iter().enumerate() {
        let r = dsu.find(t);
        roots.insert(r);
        if t_bad {
            bad_roots.insert(r);
        }
    }
    let rho = roots.len() - bad_roots.len();
    assumptions.sort();
    assumptions.dedup();
    RhoOutcome::Bound {
        rho,
        core,
        assumptions,
    }
}

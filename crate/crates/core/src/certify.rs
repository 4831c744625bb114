use serde::{Deserialize, Serialize};

use crate::eigenvalue::Eigenvalue;
use crate::lattice::Lattice;
use crate::oracle::{local_vanishing_oracle, LocalVerdict, OracleConfig, RuleKind};

/// One divisibility witness: codim-3 edge j incident to i with n not
/// dividing m_j, which forces the local system to vanish along i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityWitness {
    pub i: usize,
    pub m_i: usize,
    pub j: usize,
    pub m_j: usize,
}

/// One local-vanishing witness: the oracle certifies H^1 of the local
/// Milnor fiber at j vanishes in the lambda eigenspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub i: usize,
    pub m_i: usize,
    pub j: usize,
    pub m_j: usize,
    pub rule: RuleKind,
}

/// A replayable proof that H^1(F)_lambda = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every relevant codim-2 edge has an incident codim-3 edge whose
    /// multiplicity the eigenvalue order does not divide.
    Divisibility {
        order: u64,
        witnesses: Vec<DivisibilityWitness>,
    },
    /// Every relevant codim-2 edge has an incident codim-3 edge where the
    /// local oracle certifies vanishing.
    LocalVanishing {
        order: u64,
        conditional: bool,
        witnesses: Vec<LocalWitness>,
    },
    /// The order does not divide the arrangement degree, so the eigenvalue
    /// cannot occur in the Milnor monodromy at all.
    OrderExcluded { order: u64 },
}

impl Certificate {
    pub fn order(&self) -> u64 {
        match self {
            Certificate::Divisibility { order, .. } => *order,
            Certificate::LocalVanishing { order, .. } => *order,
            Certificate::OrderExcluded { order } => *order,
        }
    }

    pub fn is_conditional(&self) -> bool {
        matches!(
            self,
            Certificate::LocalVanishing {
                conditional: true,
                ..
            }
        )
    }
}

/// Indices of codim-2 edges whose multiplicity the order divides; only
/// these can support the lambda eigenspace.
pub fn relevant_codim2(lat: &Lattice, lambda: &Eigenvalue) -> Vec<usize> {
    (0..lat.codim2.len())
        .filter(|&i| lambda.power_is_one(lat.codim2[i].multiplicity as u64))
        .collect()
}

/// Divisibility criterion: H^1(F)_lambda = 0 if every relevant codim-2
/// edge has an incident codim-3 edge with lambda^{m_j} != 1.
pub fn prop24_certify(lat: &Lattice, lambda: &Eigenvalue) -> Option<Certificate> {
    let mut witnesses = Vec::new();
    for i in relevant_codim2(lat, lambda) {
        let j = lat.incident3_of[i]
            .iter()
            .copied()
            .find(|&j| !lambda.power_is_one(lat.codim3[j].multiplicity as u64))?;
        witnesses.push(DivisibilityWitness {
            i,
            m_i: lat.codim2[i].multiplicity,
            j,
            m_j: lat.codim3[j].multiplicity,
        });
    }
    Some(Certificate::Divisibility {
        order: lambda.order(),
        witnesses,
    })
}

/// Local-vanishing criterion: H^1(F)_lambda = 0 if every relevant codim-2
/// edge has an incident codim-3 edge where the oracle returns Zero.
///
/// Returns the certificate together with the assumptions any conditional
/// rules introduced (empty when `unconditional_only`).
pub fn thm24_certify(
    lat: &Lattice,
    lambda: &Eigenvalue,
    cfg: &OracleConfig,
    unconditional_only: bool,
) -> Option<(Certificate, Vec<String>)> {
    let mut witnesses = Vec::new();
    let mut assumptions = Vec::new();
    let mut conditional = false;
    for i in relevant_codim2(lat, lambda) {
        let mut found = None;
        for &j in &lat.incident3_of[i] {
            match local_vanishing_oracle(&lat.locals[j], lambda, cfg, unconditional_only) {
                LocalVerdict::Zero { rule, assumption } => {
                    found = Some((j, rule, assumption));
                    break;
                }
                _ => continue,
            }
        }
        let (j, rule, assumption) = found?;
        if rule.is_conditional() {
            conditional = true;
        }
        if let Some(a) = assumption {
            assumptions.push(a);
        }
        witnesses.push(LocalWitness {
            i,
            m_i: lat.codim2[i].multiplicity,
            j,
            m_j: lat.codim3[j].multiplicity,
            rule,
        });
    }
    assumptions.sort();
    assumptions.dedup();
    Some((
        Certificate::LocalVanishing {
            order: lambda.order(),
            conditional,
            witnesses,
        },
        assumptions,
    ))
}

/// Re-validate a certificate from raw edge data. Returns false if any step
/// fails to check out.
pub fn replay(cert: &Certificate, lat: &Lattice, degree: u64, cfg: &OracleConfig) -> bool {
    match cert {
        Certificate::OrderExcluded { order } => *order > 0 && degree % order != 0,
        Certificate::Divisibility { order, witnesses } => {
            let Ok(lambda) = Eigenvalue::new(1, *order) else {
                return false;
            };
            let need = relevant_codim2(lat, &lambda);
            let covered: Vec<usize> = witnesses.iter().map(|w| w.i).collect();
            need == covered
                && witnesses.iter().all(|w| {
                    lat.incident3_of[w.i].contains(&w.j)
                        && lat.codim2[w.i].multiplicity == w.m_i
                        && lat.codim3[w.j].multiplicity == w.m_j
                        && !lambda.power_is_one(w.m_j as u64)
                })
        }
        Certificate::LocalVanishing {
            order,
            witnesses,
            conditional,
        } => {
            let Ok(lambda) = Eigenvalue::new(1, *order) else {
                return false;
            };
            let need = relevant_codim2(lat, &lambda);
            let covered: Vec<usize> = witnesses.iter().map(|w| w.i).collect();
            need == covered
                && witnesses.iter().all(|w| {
                    lat.incident3_of[w.i].contains(&w.j)
                        && lat.codim2[w.i].multiplicity == w.m_i
                        && lat.codim3[w.j].multiplicity == w.m_j
                        && match local_vanishing_oracle(&lat.locals[w.j], &lambda, cfg, false) {
                            LocalVerdict::Zero { rule, .. } => {
                                rule == w.rule && (!rule.is_conditional() || *conditional)
                            }
                            _ => false,
                        }
                })
        }
    }
}

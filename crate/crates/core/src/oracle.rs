use serde::{Deserialize, Serialize};

use crate::eigenvalue::Eigenvalue;
use crate::error::VanishingError;
use crate::lattice::LocalType;

/// Which rule produced a local verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    /// lambda^{m_j} != 1, so lambda is not a local monodromy eigenvalue.
    LocalOrder,
    /// Dimension table for locals with the combinatorics of G(m,m,3).
    Gmm3Table,
    /// Assumed vanishing for small local degrees (conditional).
    DegreeThreshold,
    /// Entry supplied by the user's oracle table (conditional).
    UserTable,
}

impl RuleKind {
    pub fn name(&self) -> &'static str {
        match self {
            RuleKind::LocalOrder => "local_order",
            RuleKind::Gmm3Table => "gmm3_table",
            RuleKind::DegreeThreshold => "degree_threshold",
            RuleKind::UserTable => "user_table",
        }
    }

    pub fn is_conditional(&self) -> bool {
        matches!(self, RuleKind::DegreeThreshold | RuleKind::UserTable)
    }
}

/// Verdict on H^1 of the local Milnor fiber at a codim-3 edge, in the
/// eigenspace of a fixed eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalVerdict {
    Zero {
        rule: RuleKind,
        /// Present when the verdict rests on an assumption to disclose.
        assumption: Option<String>,
    },
    NonzeroKnown {
        dim: u64,
        rule: RuleKind,
        /// Provenance caveat, e.g. table rows cited but not re-verified.
        note: Option<String>,
    },
    Unknown,
}

impl LocalVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, LocalVerdict::Zero { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, LocalVerdict::Unknown)
    }

    pub fn known_dim(&self) -> Option<u64> {
        match self {
            LocalVerdict::Zero { .. } => Some(0),
            LocalVerdict::NonzeroKnown { dim, .. } => Some(*dim),
            LocalVerdict::Unknown => None,
        }
    }
}

/// One user-supplied fact about a local type's eigenspace dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub degree: usize,
    pub profile: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub order: u64,
    pub status: OracleStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u64>,
    pub citation: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Zero,
    Nonzero,
}

pub fn validate_oracle_table(entries: &[OracleEntry]) -> Result<(), VanishingError> {
    for (index, e) in entries.iter().enumerate() {
        if e.degree == 0 {
            return Err(VanishingError::BadOracleEntry {
                index,
                reason: "degree must be positive".into(),
            });
        }
        if e.order == 0 {
            return Err(VanishingError::BadOracleEntry {
                index,
                reason: "order must be positive".into(),
            });
        }
        if e.profile.iter().sum::<usize>() != e.degree {
            return Err(VanishingError::BadOracleEntry {
                index,
                reason: "profile parts must sum to the degree".into(),
            });
        }
        match e.status {
            OracleStatus::Nonzero => {
                if e.dim.unwrap_or(0) < 1 {
                    return Err(VanishingError::BadOracleEntry {
                        index,
                        reason: "nonzero entries need dim >= 1".into(),
                    });
                }
            }
            OracleStatus::Zero => {
                if let Some(dim) = e.dim {
                    if dim != 0 {
                        return Err(VanishingError::BadOracleEntry {
                            index,
                            reason: "zero entries must have dim 0 or omit it".into(),
                        });
                    }
                }
            }
        }
        if e.citation.trim().is_empty() {
            return Err(VanishingError::BadOracleEntry {
                index,
                reason: "citation must be non-empty".into(),
            });
        }
    }
    Ok(())
}

/// Configuration of the local vanishing oracle.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Cutoff for the conditional small-degree rule: local degree < threshold
    /// and eigenvalue order outside {1,2,3,4} is assumed to vanish.
    pub threshold_d: u64,
    /// Enables the conditional rules (degree threshold and user table).
    pub assume: bool,
    pub user_table: Vec<OracleEntry>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            threshold_d: 6,
            assume: false,
            user_table: Vec::new(),
        }
    }
}

/// Upper bound on the Fermat parameter covered by direct machine checks;
/// dimension rows above it are carried from the literature.
const GMM3_VERIFIED_LIMIT: u64 = 6;

/// Decide H^1(local Milnor fiber)_lambda from the local type.
///
/// Rules are applied in a fixed order and the first hit wins:
/// 1. order: lambda^{m_j} != 1 excludes lambda locally (unconditional);
/// 2. G(m,m,3) table: dim 2 for order 3 with 3 | m, dim 1 for order 3 with
///    3 not dividing m, zero for every other order != 1 (unconditional);
/// 3. degree threshold: order outside {1,2,3,4} and m_j < D assumed zero
///    (needs `assume`);
/// 4. user table: exact fingerprint match (needs `assume`).
pub fn local_vanishing_oracle(
    local: &LocalType,
    lambda: &Eigenvalue,
    cfg: &OracleConfig,
    unconditional_only: bool,
) -> LocalVerdict {
    let m_j = local.degree as u64;
    if !lambda.power_is_one(m_j) {
        return LocalVerdict::Zero {
            rule: RuleKind::LocalOrder,
            assumption: None,
        };
    }
    if let Some(m) = local.fermat_parameter {
        let n = lambda.order();
        if n == 3 {
            let dim = if m % 3 == 0 { 2 } else { 1 };
            let note = (m > GMM3_VERIFIED_LIMIT).then(|| {
                format!(
                    "gmm3_table: dimension row for G({m},{m},3) verified by software \
                     only for m <= {GMM3_VERIFIED_LIMIT}; carried from the literature"
                )
            });
            return LocalVerdict::NonzeroKnown {
                dim,
                rule: RuleKind::Gmm3Table,
                note,
            };
        }
        if n != 1 {
            return LocalVerdict::Zero {
                rule: RuleKind::Gmm3Table,
                assumption: None,
            };
        }
    }
    if unconditional_only || !cfg.assume {
        return LocalVerdict::Unknown;
    }
    let n = lambda.order();
    if n != 1 && n != 2 && n != 3 && n != 4 && m_j < cfg.threshold_d {
        return LocalVerdict::Zero {
            rule: RuleKind::DegreeThreshold,
            assumption: Some(format!(
                "degree_threshold: assumed H^1(local)_lambda = 0 for local degree \
                 {m_j} < D = {} at eigenvalue order {n}",
                cfg.threshold_d
            )),
        };
    }
    for e in &cfg.user_table {
        if e.degree == local.degree && e.profile == local.profile && e.order == lambda.order() {
            return match e.status {
                OracleStatus::Zero => LocalVerdict::Zero {
                    rule: RuleKind::UserTable,
                    assumption: Some(format!("user_table: {}", e.citation)),
                },
                OracleStatus::Nonzero => LocalVerdict::NonzeroKnown {
                    dim: e.dim.unwrap_or(1),
                    rule: RuleKind::UserTable,
                    note: Some(format!("user_table: {}", e.citation)),
                },
            };
        }
    }
    LocalVerdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid_local() -> LocalType {
        LocalType {
            degree: 6,
            profile: vec![6],
            codim2_multiplicities: vec![2, 2, 2, 3, 3, 3, 3],
            fermat_parameter: Some(2),
        }
    }

    fn plain_local(degree: usize, profile: Vec<usize>) -> LocalType {
        LocalType {
            degree,
            profile,
            codim2_multiplicities: Vec::new(),
            fermat_parameter: None,
        }
    }

    #[test]
    fn order_rule_fires_first() {
        let cfg = OracleConfig::default();
        let l = plain_local(4, vec![3, 1]);
        let lambda = Eigenvalue::new(1, 3).unwrap();
        assert_eq!(
            local_vanishing_oracle(&l, &lambda, &cfg, false),
            LocalVerdict::Zero {
                rule: RuleKind::LocalOrder,
                assumption: None
            }
        );
    }

    #[test]
    fn gmm3_rows() {
        let cfg = OracleConfig::default();
        let order3 = Eigenvalue::new(1, 3).unwrap();
        let order2 = Eigenvalue::new(1, 2).unwrap();
        assert_eq!(
            local_vanishing_oracle(&braid_local(), &order3, &cfg, false),
            LocalVerdict::NonzeroKnown {
                dim: 1,
                rule: RuleKind::Gmm3Table,
                note: None
            }
        );
        assert_eq!(
            local_vanishing_oracle(&braid_local(), &order2, &cfg, false),
            LocalVerdict::Zero {
                rule: RuleKind::Gmm3Table,
                assumption: None
            }
        );
        let fermat3 = LocalType {
            degree: 9,
            profile: vec![9],
            codim2_multiplicities: vec![3; 12],
            fermat_parameter: Some(3),
        };
        assert_eq!(
            local_vanishing_oracle(&fermat3, &order3, &cfg, false).known_dim(),
            Some(2)
        );
    }

    #[test]
    fn large_fermat_rows_carry_note() {
        let cfg = OracleConfig::default();
        let order3 = Eigenvalue::new(1, 3).unwrap();
        let mut mults = vec![3usize; 49];
        mults.extend([7, 7, 7]);
        mults.sort_unstable();
        let fermat7 = LocalType {
            degree: 21,
            profile: vec![21],
            codim2_multiplicities: mults,
            fermat_parameter: Some(7),
        };
        match local_vanishing_oracle(&fermat7, &order3, &cfg, false) {
            LocalVerdict::NonzeroKnown {
                dim: 1,
                note: Some(n),
                ..
            } => {
                assert!(n.contains("literature"));
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    #[test]
    fn threshold_rule_needs_assume_and_far_order() {
        let l = plain_local(5, vec![4, 1]);
        let order5 = Eigenvalue::new(1, 5).unwrap();
        let strict = OracleConfig::default();
        assert!(local_vanishing_oracle(&l, &order5, &strict, false).is_unknown());
        let relaxed = OracleConfig {
            assume: true,
            ..OracleConfig::default()
        };
        match local_vanishing_oracle(&l, &order5, &relaxed, false) {
            LocalVerdict::Zero {
                rule: RuleKind::DegreeThreshold,
                assumption: Some(_),
            } => {}
            v => panic!("unexpected verdict {v:?}"),
        }
        // Even with assume, the unconditional pass ignores the rule.
        assert!(local_vanishing_oracle(&l, &order5, &relaxed, true).is_unknown());
        // Orders in mu_4 stay outside the threshold rule: degree 12 data
        // shows order-4 eigenvalues survive on small local types.
        let order4 = Eigenvalue::new(1, 4).unwrap();
        let l4 = plain_local(4, vec![4]);
        assert!(local_vanishing_oracle(&l4, &order4, &relaxed, false).is_unknown());
    }

    #[test]
    fn user_table_matches_fingerprint() {
        let entry = OracleEntry {
            degree: 12,
            profile: vec![12],
            label: Some("hessian".into()),
            order: 4,
            status: OracleStatus::Nonzero,
            dim: Some(2),
            citation: "reflection arrangement of degree 12 with nonzero quarter eigenspace".into(),
        };
        validate_oracle_table(std::slice::from_ref(&entry)).unwrap();
        let cfg = OracleConfig {
            assume: true,
            user_table: vec![entry],
            ..OracleConfig::default()
        };
        let l = plain_local(12, vec![12]);
        let order4 = Eigenvalue::new(1, 4).unwrap();
        assert_eq!(
            local_vanishing_oracle(&l, &order4, &cfg, false).known_dim(),
            Some(2)
        );
        // Without assume the table is ignored.
        let mut strict = cfg.clone();
        strict.assume = false;
        assert!(local_vanishing_oracle(&l, &order4, &strict, false).is_unknown());
    }

    #[test]
    fn bad_table_entries_rejected() {
        let mut e = OracleEntry {
            degree: 6,
            profile: vec![3, 2],
            label: None,
            order: 5,
            status: OracleStatus::Nonzero,
            dim: Some(1),
            citation: "x".into(),
        };
        assert!(matches!(
            validate_oracle_table(std::slice::from_ref(&e)),
            Err(VanishingError::BadOracleEntry { index: 0, .. })
        ));
        e.profile = vec![3, 3];
        e.dim = None;
        assert!(validate_oracle_table(std::slice::from_ref(&e)).is_err());
        e.dim = Some(1);
        e.citation = "  ".into();
        assert!(validate_oracle_table(std::slice::from_ref(&e)).is_err());
    }
}

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::certify::{prop24_certify, thm24_certify, Certificate};
use crate::cyclo::divisors;
use crate::eigenvalue::{unipotent_dim, Eigenvalue};
use crate::error::VanishingError;
use crate::lattice::Lattice;
use crate::oracle::OracleConfig;
use crate::rational::gcd_u64;
use crate::rho::{default_witness_rules, rho_bound, RhoOutcome, WitnessRule};

#[derive(Debug, Clone)]
pub struct AnalyzeConfig {
    /// Restrict the report to eigenvalues of these orders. Orders not
    /// dividing the degree produce explicit exclusion entries; orders below
    /// 2 are ignored (the unipotent part is reported separately).
    pub orders: Option<Vec<u64>>,
    pub oracle: OracleConfig,
    pub witness_rules: Vec<WitnessRule>,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            orders: None,
            oracle: OracleConfig::default(),
            witness_rules: default_witness_rules(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedZero,
    UpperBound,
    Unknown,
}

/// Report row for one eigenvalue e^(2 pi i k/d).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub k: u64,
    pub d: u64,
    pub order: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<u64>,
    pub assumptions: Vec<String>,
    /// Diagnostic for Unknown rows; not part of the wire format.
    #[serde(skip)]
    pub unknown_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub label: String,
    pub degree: u64,
    pub unipotent_dim: u64,
    pub eigenvalues: Vec<EigenEntry>,
}

impl Report {
    pub fn entries_of_order(&self, order: u64) -> impl Iterator<Item = &EigenEntry> {
        self.eigenvalues.iter().filter(move |e| e.order == order)
    }

    pub fn has_unknown(&self) -> bool {
        self.eigenvalues
            .iter()
            .any(|e| e.verdict == Verdict::Unknown)
    }
}

#[derive(Debug, Clone)]
struct OrderOutcome {
    verdict: Verdict,
    certificate: Option<Certificate>,
    rho: Option<u64>,
    assumptions: Vec<String>,
    reason: Option<String>,
}

fn analyze_order(lat: &Lattice, n: u64, cfg: &AnalyzeConfig) -> OrderOutcome {
    let lambda = Eigenvalue::new(1, n).expect("order >= 2");
    if let Some(cert) = prop24_certify(lat, &lambda) {
        return OrderOutcome {
            verdict: Verdict::CertifiedZero,
            certificate: Some(cert),
            rho: None,
            assumptions: Vec::new(),
            reason: None,
        };
    }
    if let Some((cert, assumptions)) = thm24_certify(lat, &lambda, &cfg.oracle, true) {
        return OrderOutcome {
            verdict: Verdict::CertifiedZero,
            certificate: Some(cert),
            rho: None,
            assumptions,
            reason: None,
        };
    }
    if cfg.oracle.assume {
        if let Some((cert, assumptions)) = thm24_certify(lat, &lambda, &cfg.oracle, false) {
            return OrderOutcome {
                verdict: Verdict::CertifiedZero,
                certificate: Some(cert),
                rho: None,
                assumptions,
                reason: None,
            };
        }
    }
    match rho_bound(lat, &lambda, &cfg.oracle, &cfg.witness_rules) {
        RhoOutcome::Bound {
            rho, assumptions, ..
        } => OrderOutcome {
            verdict: Verdict::UpperBound,
            certificate: None,
            rho: Some(rho as u64),
            assumptions,
            reason: None,
        },
        RhoOutcome::Unavailable { reason } => OrderOutcome {
            verdict: Verdict::Unknown,
            certificate: None,
            rho: None,
            assumptions: Vec::new(),
            reason: Some(reason),
        },
    }
}

/// Certify or bound every requested non-unipotent eigenvalue.
///
/// Per order, the strongest verdict wins: divisibility certificate, then
/// unconditional local vanishing, then conditional local vanishing (only
/// with `assume`), then the component-counting upper bound, else Unknown.
/// All tests are divisibility tests on the order, so Galois-conjugate
/// eigenvalues share one outcome by construction.
pub fn analyze(
    arr: &Arrangement,
    lat: &Lattice,
    cfg: &AnalyzeConfig,
) -> Result<Report, VanishingError> {
    if arr.ambient_dim() < 3 {
        return Err(VanishingError::AmbientTooSmall {
            got: arr.ambient_dim(),
        });
    }
    let d = arr.degree() as u64;
    let requested = cfg.orders.as_ref().map(|list| {
        let mut set: Vec<u64> = list.iter().copied().filter(|&n| n >= 2).collect();
        set.sort_unstable();
        set.dedup();
        set
    });
    let wanted = |n: u64| requested.as_ref().map_or(true, |set| set.contains(&n));
    let orders: Vec<u64> = divisors(d)
        .into_iter()
        .filter(|&n| n > 1 && wanted(n))
        .collect();
    let outcomes: BTreeMap<u64, OrderOutcome> = orders
        .par_iter()
        .map(|&n| (n, analyze_order(lat, n, cfg)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let mut eigenvalues = Vec::new();
    for k in 1..d {
        let order = d / gcd_u64(k, d);
        let Some(outcome) = outcomes.get(&order) else {
            continue;
        };
        eigenvalues.push(EigenEntry {
            k,
            d,
            order,
            verdict: outcome.verdict,
            certificate: outcome.certificate.clone(),
            rho: outcome.rho,
            assumptions: outcome.assumptions.clone(),
            unknown_reason: outcome.reason.clone(),
        });
    }
    if let Some(set) = &requested {
        for &n in set {
            if d % n != 0 {
                eigenvalues.push(EigenEntry {
                    k: 1,
                    d: n,
                    order: n,
                    verdict: Verdict::CertifiedZero,
                    certificate: Some(Certificate::OrderExcluded { order: n }),
                    rho: None,
                    assumptions: Vec::new(),
                    unknown_reason: None,
                });
            }
        }
    }
    Ok(Report {
        label: arr.label().to_string(),
        degree: d,
        unipotent_dim: unipotent_dim(d),
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_gm1, build_gmm};
    use crate::certify::replay;

    #[test]
    fn gm1_dim5_all_certified() {
        let arr = build_gm1(2, 5).unwrap();
        let lat = Lattice::build(&arr).unwrap();
        let report = analyze(&arr, &lat, &AnalyzeConfig::default()).unwrap();
        assert_eq!(report.degree, 25);
        assert_eq!(report.unipotent_dim, 24);
        assert_eq!(report.eigenvalues.len(), 24);
        assert!(report
            .eigenvalues
            .iter()
            .all(|e| e.verdict == Verdict::CertifiedZero));
        for e in &report.eigenvalues {
            let cert = e.certificate.as_ref().unwrap();
            assert!(replay(cert, &lat, 25, &OracleConfig::default()));
        }
    }

    #[test]
    fn gmm24_order3_upper_bound() {
        let arr = build_gmm(2, 4).unwrap();
        let lat = Lattice::build(&arr).unwrap();
        let report = analyze(&arr, &lat, &AnalyzeConfig::default()).unwrap();
        // d = 12: orders {2,3,4,6,12}; order 3 rows are k = 4, 8.
        for e in report.entries_of_order(3) {
            assert_eq!(e.verdict, Verdict::UpperBound);
            assert_eq!(e.rho, Some(1));
            assert!(!e.assumptions.is_empty());
        }
        assert_eq!(report.entries_of_order(3).count(), 2);
        for n in [2u64, 4, 6, 12] {
            for e in report.entries_of_order(n) {
                assert_eq!(e.verdict, Verdict::CertifiedZero, "order {n}");
            }
        }
    }

    #[test]
    fn unknown_surfaces_with_reason() {
        let arr = build_gm1(2, 3).unwrap();
        let lat = Lattice::build(&arr).unwrap();
        let report = analyze(&arr, &lat, &AnalyzeConfig::default()).unwrap();
        let order3: Vec<_> = report.entries_of_order(3).collect();
        assert!(!order3.is_empty());
        assert!(order3.iter().all(|e| e.verdict == Verdict::Unknown));
        assert!(order3[0].unknown_reason.is_some());
        assert!(report.has_unknown());
    }

    #[test]
    fn requested_orders_filter_and_exclude() {
        let arr = build_gmm(2, 4).unwrap();
        let lat = Lattice::build(&arr).unwrap();
        let cfg = AnalyzeConfig {
            orders: Some(vec![3, 7, 1, 3]),
            ..AnalyzeConfig::default()
        };
        let report = analyze(&arr, &lat, &cfg).unwrap();
        // d = 12: order 3 contributes k = 4, 8; order 7 is excluded a priori.
        assert_eq!(report.eigenvalues.len(), 3);
        assert!(report.eigenvalues[..2].iter().all(|e| e.order == 3));
        let excluded = &report.eigenvalues[2];
        assert_eq!(excluded.order, 7);
        assert_eq!(excluded.verdict, Verdict::CertifiedZero);
        assert_eq!(
            excluded.certificate,
            Some(Certificate::OrderExcluded { order: 7 })
        );
        assert!(replay(
            excluded.certificate.as_ref().unwrap(),
            &lat,
            12,
            &OracleConfig::default()
        ));
    }

    #[test]
    fn ambient_too_small_rejected() {
        let arr = crate::arrangement::build_boolean(2).unwrap();
        let lat = Lattice::build(&arr).unwrap();
        let err = analyze(&arr, &lat, &AnalyzeConfig::default()).unwrap_err();
        assert_eq!(err, VanishingError::AmbientTooSmall { got: 2 });
    }
}

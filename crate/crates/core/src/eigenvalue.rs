use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::VanishingError;
use crate::lattice::Lattice;
use crate::rational::gcd_u64;

/// A root of unity e^(2 pi i k/d), stored as the reduced fraction k/d.
///
/// Every certification criterion is a divisibility test on the order, so no
/// complex approximation is ever needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Eigenvalue {
    num: u64,
    den: u64,
}

impl Eigenvalue {
    pub fn new(k: u64, d: u64) -> Result<Eigenvalue, VanishingError> {
        if d == 0 {
            return Err(VanishingError::ZeroDenominator);
        }
        let k = k % d;
        let g = gcd_u64(k, d);
        if k == 0 {
            return Ok(Eigenvalue { num: 0, den: 1 });
        }
        Ok(Eigenvalue {
            num: k / g,
            den: d / g,
        })
    }

    pub fn one() -> Eigenvalue {
        Eigenvalue { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Multiplicative order: the least n with lambda^n = 1.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// Whether lambda^m = 1, i.e. order | m.
    pub fn power_is_one(&self, m: u64) -> bool {
        m % self.den == 0
    }
}

impl PartialOrd for Eigenvalue {
    fn partial_cmp(&self, other: &Eigenvalue) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Eigenvalue {
    fn cmp(&self, other: &Eigenvalue) -> std::cmp::Ordering {
        (self.den, self.num).cmp(&(other.den, other.num))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// All non-unipotent candidate eigenvalues e^(2 pi i k/d), k = 1..d-1.
/// Eigenvalues with lambda^d != 1 cannot occur and are excluded a priori.
pub fn candidate_eigenvalues(d: u64) -> Vec<Eigenvalue> {
    (1..d)
        .map(|k| Eigenvalue::new(k, d).expect("d > 0"))
        .collect()
}

/// dim H^1(F)_1 = d - 1 for a reduced central arrangement of d hyperplanes.
pub fn unipotent_dim(d: u64) -> u64 {
    d.saturating_sub(1)
}

impl Lattice {
    /// Rank of the rank-1 local system cohomology the codim-2 edge `i`
    /// contributes: m_i - 2 + delta_{lambda,1} when lambda^{m_i} = 1, else 0.
    pub fn local_system_rank(&self, i: usize, lambda: &Eigenvalue) -> usize {
        let m_i = self.codim2[i].multiplicity;
        if lambda.power_is_one(m_i as u64) {
            m_i - 2 + usize::from(lambda.is_one())
        } else {
            0
        }
    }

    /// Dimension of global sections over the edge: the same count gated by
    /// lambda^{e_i} = 1 instead of lambda^{m_i} = 1.
    pub fn global_sections_dim(
        &self,
        i: usize,
        lambda: &Eigenvalue,
    ) -> Result<usize, crate::error::ArrangementError> {
        let e_i = self.e_gcd(i)?;
        let m_i = self.codim2[i].multiplicity;
        Ok(if lambda.power_is_one(e_i) {
            m_i - 2 + usize::from(lambda.is_one())
        } else {
            0
        })
    }
}

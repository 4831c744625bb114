use std::fmt;

use serde::Serialize;

use crate::cyclo::cyclotomic_polynomial;
use crate::error::AdeError;
use crate::matrix::MatrixK;
use crate::poly::PolyQ;
use crate::rational::{rat, rat_int, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// The three simple singularity families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AdeFamily {
    A,
    D,
    E,
}

impl AdeFamily {
    pub fn as_char(self) -> char {
        match self {
            AdeFamily::A => 'A',
            AdeFamily::D => 'D',
            AdeFamily::E => 'E',
        }
    }
}

impl fmt::Display for AdeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A validated simple singularity type: A_k (k >= 1), D_k (k >= 4),
/// E_6, E_7, E_8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdeType {
    family: AdeFamily,
    rank: usize,
}

impl AdeType {
    pub fn new(family: AdeFamily, rank: usize) -> Result<Self, AdeError> {
        let ok = match family {
            AdeFamily::A => rank >= 1,
            AdeFamily::D => rank >= 4,
            AdeFamily::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(AdeType { family, rank })
        } else {
            Err(AdeError::InvalidRank {
                family: family.as_char(),
                rank,
            })
        }
    }

    pub fn family(self) -> AdeFamily {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn label(self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Every valid type of rank at most `max`, in (family, rank) order.
    pub fn all_up_to(max: usize) -> Vec<AdeType> {
        let mut out = Vec::new();
        for k in 1..=max {
            out.push(AdeType {
                family: AdeFamily::A,
                rank: k,
            });
        }
        for k in 4..=max {
            out.push(AdeType {
                family: AdeFamily::D,
                rank: k,
            });
        }
        for k in 6..=8.min(max) {
            out.push(AdeType {
                family: AdeFamily::E,
                rank: k,
            });
        }
        out
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Node adjacency of the Dynkin diagram, 1-based.
///
/// A_k is the path 1-2-...-k. D_k forks: nodes 1 and 2 both attach to node 3,
/// and 3-4-...-k is a path. E_k attaches node 1 to node 4 of the path
/// 2-3-...-k. These orderings reproduce the displayed D_5 and E_6 matrices.
fn dynkin_edges(t: AdeType) -> Vec<(usize, usize)> {
    let k = t.rank;
    match t.family {
        AdeFamily::A => (1..k).map(|i| (i, i + 1)).collect(),
        AdeFamily::D => {
            let mut e = vec![(1, 3), (2, 3)];
            e.extend((3..k).map(|i| (i, i + 1)));
            e
        }
        AdeFamily::E => {
            let mut e = vec![(1, 4)];
            e.extend((2..k).map(|i| (i, i + 1)));
            e
        }
    }
}

fn dynkin_rows(t: AdeType) -> Vec<Vec<i64>> {
    let k = t.rank;
    let mut rows = vec![vec![0i64; k]; k];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in dynkin_edges(t) {
        rows[i - 1][j - 1] = -1;
        rows[j - 1][i - 1] = -1;
    }
    rows
}

/// The negated intersection matrix -S of the singularity: 2 on the diagonal,
/// -1 for each Dynkin edge. Positive definite.
pub fn dynkin_matrix(t: AdeType) -> MatrixK {
    MatrixK::from_int_rows(1, &dynkin_rows(t)).expect("square nonempty integer matrix")
}

/// det(-S) via the path-determinant recursion f(k) = 2f(k-1) - f(k-2) with
/// f(0) = 1, f(1) = 2, so f(k) = k + 1; the fork resp. branch node give
/// D_k -> 2f(k-1) - 2f(k-3) = 4 and E_k -> 2f(k-1) - 3f(k-4) = 9 - k.
pub fn det_recursive(t: AdeType) -> i64 {
    let k = t.rank;
    let mut f = vec![1i64, 2];
    for i in 2..=k {
        f.push(2 * f[i - 1] - f[i - 2]);
    }
    match t.family {
        AdeFamily::A => f[k],
        AdeFamily::D => 2 * f[k - 1] - 2 * f[k - 3],
        AdeFamily::E => 2 * f[k - 1] - 3 * f[k - 4],
    }
}

/// Spectral numbers together with the cyclotomic order that clears their
/// denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralData {
    alphas: Vec<Rational>,
    modulus_order: u64,
}

impl SpectralData {
    /// `modulus_order` must clear every denominator; `monodromy_det` reports
    /// `NonIntegralExponent` otherwise.
    pub fn new(alphas: Vec<Rational>, modulus_order: u64) -> Self {
        SpectralData {
            alphas,
            modulus_order,
        }
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn modulus_order(&self) -> u64 {
        self.modulus_order
    }
}

/// The spectral numbers of the singularity, all in (0, 2), with their
/// common denominator.
///
/// A_k (equation x^{k+1} + y^2 + z^2): i/(k+1) + 1 for i in [1, k].
/// D_k (x^{k-1} + xy^2 + z^2): (2i-1)/(2(k-1)) + 1 for i in [1, k-1], and 3/2.
/// E_6, E_7, E_8 (x^4+y^3+z^2, x^3+xy^3+z^2, x^5+y^3+z^2): the fixed lists
/// over 12, 18, 30.
pub fn spectral_numbers(t: AdeType) -> SpectralData {
    let k = t.rank as i64;
    match t.family {
        AdeFamily::A => {
            let m = k + 1;
            let alphas = (1..=k).map(|i| rat(i + m, m)).collect();
            SpectralData::new(alphas, m as u64)
        }
        AdeFamily::D => {
            let m = 2 * (k - 1);
            let mut alphas: Vec<Rational> = (1..k).map(|i| rat(2 * i - 1 + m, m)).collect();
            alphas.push(rat(3, 2));
            SpectralData::new(alphas, m as u64)
        }
        AdeFamily::E => {
            let (nums, m): (&[i64], i64) = match k {
                6 => (&[13, 16, 19, 17, 20, 23], 12),
                7 => (&[19, 23, 25, 27, 29, 31, 35], 18),
                _ => (&[31, 37, 43, 49, 41, 47, 53, 59], 30),
            };
            let alphas = nums.iter().map(|&n| rat(n, m)).collect();
            SpectralData::new(alphas, m as u64)
        }
    }
}

fn reduced_exponents(s: &SpectralData) -> Result<Vec<u64>, AdeError> {
    let m = BigInt::from(s.modulus_order);
    let scale = rat_int(s.modulus_order as i64);
    s.alphas
        .iter()
        .map(|alpha| {
            let scaled = alpha * &scale;
            if !scaled.is_integer() {
                return Err(AdeError::NonIntegralExponent);
            }
            let r = scaled.to_integer();
            let p = ((&r % &m) + &m) % &m;
            Ok(p.to_u64().expect("residue fits in u64"))
        })
        .collect()
}

fn det_modulo(s: &SpectralData, modulus: &PolyQ) -> Result<Rational, AdeError> {
    let mut acc = PolyQ::one();
    for p in reduced_exponents(s)? {
        let factor = &PolyQ::one() - &PolyQ::monomial(rat_int(1), p as usize);
        acc = (&acc * &factor).rem(modulus).expect("modulus is nonzero");
    }
    match acc.degree() {
        None => Ok(rat_int(0)),
        Some(0) => Ok(acc.coeff(0)),
        Some(_) => Err(AdeError::NonRationalDeterminant),
    }
}

/// det(I - T) as the product of (1 - u^{p_j}) over the reduced exponents
/// p_j = m*alpha_j mod m, computed in Q[u]/(Phi_m(u)).
///
/// Reducing modulo the cyclotomic polynomial is essential: a proper multiple
/// such as (u^m - 1)/(u - 1) is not a field modulus for composite m and the
/// residue there need not be constant. The result must come out rational.
pub fn monodromy_det(s: &SpectralData) -> Result<Rational, AdeError> {
    det_modulo(s, &cyclotomic_polynomial(s.modulus_order))
}

/// Same product as `monodromy_det` but reduced modulo an arbitrary monic
/// polynomial, for exhibiting what goes wrong with a non-cyclotomic modulus.
pub fn monodromy_det_with_modulus(s: &SpectralData, modulus: &PolyQ) -> Result<Rational, AdeError> {
    det_modulo(s, modulus)
}

/// The three determinant computations for one type and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport {
    pub label: String,
    #[serde(rename = "det_S")]
    pub det_s: i64,
    pub det_recursive: i64,
    pub det_monodromy: i64,
    pub agree: bool,
}

/// Computes det(-S) exactly, the recursion value, and the cyclotomic product,
/// and reports whether all three coincide.
pub fn verify_coincidence(t: AdeType) -> Result<CoincidenceReport, AdeError> {
    let det_s = dynkin_matrix(t)
        .det()
        .expect("matrix is square and nonempty")
        .as_rational()
        .expect("order-1 entries are rational")
        .to_integer()
        .to_i64()
        .expect("determinant is small");
    let rec = det_recursive(t);
    let md = monodromy_det(&spectral_numbers(t))?;
    if !md.is_integer() {
        return Err(AdeError::NonRationalDeterminant);
    }
    let det_monodromy = md.to_integer().to_i64().expect("determinant is small");
    Ok(CoincidenceReport {
        label: t.label(),
        det_s,
        det_recursive: rec,
        det_monodromy,
        agree: det_s == rec && det_monodromy == rec,
    })
}

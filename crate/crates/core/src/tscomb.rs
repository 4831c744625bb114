use std::collections::BTreeMap;

use crate::eigenvalue::Eigenvalue;
use crate::error::TsError;
use crate::rational::gcd_u64;

/// Caveat attached to the rank outputs for the cone and product-with-linear
/// constructions: the formulas hold under geometric hypotheses (irreducibility
/// of the associated projective curve, transversality away from the singular
/// axis) that this module does not and cannot check.
pub const GEOMETRIC_HYPOTHESES_NOTE: &str = "conditional on unchecked geometric hypotheses \
     (irreducible associated projective curve, transversality off the singular axis)";

/// Finite multiset of monodromy eigenvalues with multiplicities.
///
/// Only roots of unity are representable, so every spectrum here is the
/// spectrum of a finite-order, hence semisimple, operator. That is exactly
/// the homogeneous case, and it is what makes ker(T - 1) and coker(T - 1)
/// both equal to the eigenvalue-1 multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EigenSpectrum {
    mults: BTreeMap<Eigenvalue, u64>,
}

impl EigenSpectrum {
    pub fn new() -> Self {
        EigenSpectrum::default()
    }

    /// Add `mult` copies of `ev`. Zero multiplicities are dropped, keeping
    /// the support minimal.
    pub fn insert(&mut self, ev: Eigenvalue, mult: u64) {
        if mult > 0 {
            *self.mults.entry(ev).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, ev: &Eigenvalue) -> u64 {
        self.mults.get(ev).copied().unwrap_or(0)
    }

    /// Multiplicity of the eigenvalue 1, i.e. dim ker(T - 1) for the
    /// semisimple operators represented here.
    pub fn multiplicity_of_one(&self) -> u64 {
        self.multiplicity(&Eigenvalue::one())
    }

    /// Total rank: the sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.mults.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Eigenvalue, u64)> {
        self.mults.iter().map(|(ev, &m)| (ev, m))
    }
}

impl FromIterator<(Eigenvalue, u64)> for EigenSpectrum {
    fn from_iter<T: IntoIterator<Item = (Eigenvalue, u64)>>(iter: T) -> Self {
        let mut s = EigenSpectrum::new();
        for (ev, m) in iter {
            s.insert(ev, m);
        }
        s
    }
}

fn root(k: u64, d: u64) -> Eigenvalue {
    Eigenvalue::new(k, d).expect("denominator is positive")
}

/// Spectrum of the one-variable degree-a singularity x^a: the nontrivial
/// a-th roots of unity, each with multiplicity 1 (rank a - 1; empty for
/// a <= 1).
pub fn one_var_spectrum(a: u64) -> EigenSpectrum {
    (1..a).map(|k| (root(k, a), 1)).collect()
}

fn product(l: &Eigenvalue, m: &Eigenvalue) -> Eigenvalue {
    root(l.num() * m.den() + m.num() * l.den(), l.den() * m.den())
}

/// Join-type tensor of two spectra: every product of eigenvalues, with
/// multiplicities multiplied.
pub fn ts_tensor(s1: &EigenSpectrum, s2: &EigenSpectrum) -> EigenSpectrum {
    let mut out = EigenSpectrum::new();
    for (l, ml) in s1.iter() {
        for (m, mm) in s2.iter() {
            out.insert(product(l, m), ml * mm);
        }
    }
    out
}

/// Rank of the middle cohomology for the sum of two one-variable powers of
/// degrees a and b: (a - 1)(b - 1). Agrees with the total of
/// `ts_tensor(one_var_spectrum(a), one_var_spectrum(b))`.
pub fn total_rank_sum_of_two(a: u64, b: u64) -> u64 {
    debug_assert!(a >= 2 && b >= 2);
    a.saturating_sub(1) * b.saturating_sub(1)
}

/// Exponent data for x1^a1 x2^a2 + y1^b1 y2^b2 in four variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialPairConfig {
    a1: u64,
    a2: u64,
    b1: u64,
    b2: u64,
}

impl MonomialPairConfig {
    pub fn new(a1: u64, a2: u64, b1: u64, b2: u64) -> Result<Self, TsError> {
        if a1 == 0 || a2 == 0 || b1 == 0 || b2 == 0 {
            return Err(TsError::ZeroExponent);
        }
        Ok(MonomialPairConfig { a1, a2, b1, b2 })
    }

    pub fn a1(&self) -> u64 {
        self.a1
    }

    pub fn a2(&self) -> u64 {
        self.a2
    }

    pub fn b1(&self) -> u64 {
        self.b1
    }

    pub fn b2(&self) -> u64 {
        self.b2
    }

    pub fn a0(&self) -> u64 {
        gcd_u64(self.a1, self.a2)
    }

    pub fn b0(&self) -> u64 {
        gcd_u64(self.b1, self.b2)
    }

    fn x_exponents(&self, i: usize) -> Result<(u64, u64), TsError> {
        match i {
            1 => Ok((self.a1, self.a2)),
            2 => Ok((self.a2, self.a1)),
            got => Err(TsError::BadComponentIndex { got }),
        }
    }

    fn y_exponents(&self, j: usize) -> Result<(u64, u64), TsError> {
        match j {
            1 => Ok((self.b1, self.b2)),
            2 => Ok((self.b2, self.b1)),
            got => Err(TsError::BadComponentIndex { got }),
        }
    }
}

/// Which of the two boundary monodromies of a component to make invariant
/// under: T_x fixes the x_i axis direction, T_y the y_j one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Generators {
    pub t_x: bool,
    pub t_y: bool,
}

impl Generators {
    pub const NONE: Generators = Generators {
        t_x: false,
        t_y: false,
    };
    pub const X: Generators = Generators {
        t_x: true,
        t_y: false,
    };
    pub const Y: Generators = Generators {
        t_x: false,
        t_y: true,
    };
    pub const BOTH: Generators = Generators {
        t_x: true,
        t_y: true,
    };

    pub const ALL: [Generators; 4] = [
        Generators::NONE,
        Generators::X,
        Generators::Y,
        Generators::BOTH,
    ];
}

/// Rank of the subspace of the component (i, j) local system invariant under
/// the chosen generators, counted by brute force.
///
/// The local system on the torus of the x_i, y_j axes has basis u_k tensor
/// v_l with 1 <= k <= a_{i'} - 1, 1 <= l <= b_{j'} - 1 (primes denote the
/// complementary indices), and T_x acts on u_k through a power with exponent
/// -a_i, so u_k is fixed iff a_{i'} divides k * a_i; likewise for T_y.
pub fn invariant_rank(
    cfg: &MonomialPairConfig,
    component: (usize, usize),
    generators: Generators,
) -> Result<u64, TsError> {
    let (a_act, a_trans) = cfg.x_exponents(component.0)?;
    let (b_act, b_trans) = cfg.y_exponents(component.1)?;
    let mut count = 0;
    for k in 1..a_trans {
        if generators.t_x && (k * a_act) % a_trans != 0 {
            continue;
        }
        for l in 1..b_trans {
            if generators.t_y && (l * b_act) % b_trans != 0 {
                continue;
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Closed form for `invariant_rank`: each chosen generator replaces the
/// factor a_{i'} - 1 (resp. b_{j'} - 1) by a_0 - 1 (resp. b_0 - 1).
pub fn invariant_rank_closed(
    cfg: &MonomialPairConfig,
    component: (usize, usize),
    generators: Generators,
) -> Result<u64, TsError> {
    let (_, a_trans) = cfg.x_exponents(component.0)?;
    let (_, b_trans) = cfg.y_exponents(component.1)?;
    let x_factor = if generators.t_x { cfg.a0() } else { a_trans } - 1;
    let y_factor = if generators.t_y { cfg.b0() } else { b_trans } - 1;
    Ok(x_factor * y_factor)
}

/// Rank of the first cohomology of the Milnor fiber of
/// x1^a1 x2^a2 + y1^b1 y2^b2: (a0 - 1)(b0 - 1) with a0 = gcd(a1, a2),
/// b0 = gcd(b1, b2). Equals the fully invariant rank of any component.
pub fn h1_rank_monomial_pair(cfg: &MonomialPairConfig) -> u64 {
    (cfg.a0() - 1) * (cfg.b0() - 1)
}

/// Rank of H^1 for the product of a homogeneous polynomial g with a new
/// linear variable, from the unreduced H^0 and H^1 spectra of the Milnor
/// fiber of g.
///
/// The long exact sequence couples the two degrees through T - id; with the
/// finite-order (semisimple) monodromy of the homogeneous case the kernel and
/// cokernel in each degree both have the eigenvalue-1 multiplicity, so the
/// rank is mult_1(H^1) + mult_1(H^0). The identification of those
/// multiplicities with geometry is conditional; see
/// [`GEOMETRIC_HYPOTHESES_NOTE`].
pub fn product_with_linear_rank(h0_spec: &EigenSpectrum, h1_spec: &EigenSpectrum) -> u64 {
    h1_spec.multiplicity_of_one() + h0_spec.multiplicity_of_one()
}

/// Rank data for the cone pair x^a + y^b in the join construction:
/// (middle rank (a-1)(b-1), unipotent part e - 1, contribution e) with
/// e = gcd(a, b). Conditional; see [`GEOMETRIC_HYPOTHESES_NOTE`].
pub fn cone_pair_rank(a: u64, b: u64) -> (u64, u64, u64) {
    debug_assert!(a >= 2 && b >= 2);
    let e = gcd_u64(a, b);
    (
        a.saturating_sub(1) * b.saturating_sub(1),
        e.saturating_sub(1),
        e,
    )
}

/// Rank of the monodromy-invariant global sections of the transversal local
/// system along the singular axis of (x^a + y^a) z^{d-a} + x^d + y^d:
/// e'(a - 2) + 1 with e' = gcd(a, d). Conditional; see
/// [`GEOMETRIC_HYPOTHESES_NOTE`].
pub fn cone_sections_rank(a: u64, d: u64) -> u64 {
    debug_assert!(a >= 2);
    gcd_u64(a, d) * a.saturating_sub(2) + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(k: u64, d: u64) -> Eigenvalue {
        Eigenvalue::new(k, d).unwrap()
    }

    #[test]
    fn one_var_examples() {
        assert!(one_var_spectrum(1).is_empty());
        let s2 = one_var_spectrum(2);
        assert_eq!(s2.total(), 1);
        assert_eq!(s2.multiplicity(&ev(1, 2)), 1);
        let s5 = one_var_spectrum(5);
        assert_eq!(s5.total(), 4);
        for k in 1..5 {
            assert_eq!(s5.multiplicity(&ev(k, 5)), 1);
        }
        assert_eq!(s5.multiplicity_of_one(), 0);
    }

    #[test]
    fn tensor_of_two_lines() {
        let t = ts_tensor(&one_var_spectrum(2), &one_var_spectrum(2));
        assert_eq!(t.total(), 1);
        assert_eq!(t.multiplicity_of_one(), 1);
    }

    #[test]
    fn tensor_coprime_has_no_unipotent_part() {
        let t = ts_tensor(&one_var_spectrum(2), &one_var_spectrum(3));
        assert_eq!(t.total(), 2);
        assert_eq!(t.multiplicity_of_one(), 0);
        assert_eq!(t.multiplicity(&ev(1, 6)), 1);
        assert_eq!(t.multiplicity(&ev(5, 6)), 1);
    }

    #[test]
    fn tensor_unipotent_multiplicity_is_gcd_minus_one() {
        for a in 1..=12u64 {
            for b in 1..=12u64 {
                let t = ts_tensor(&one_var_spectrum(a), &one_var_spectrum(b));
                assert_eq!(t.multiplicity_of_one(), gcd_u64(a, b) - 1, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn total_rank_matches_tensor_cardinality() {
        assert_eq!(total_rank_sum_of_two(2, 2), 1);
        assert_eq!(total_rank_sum_of_two(3, 4), 6);
        for a in 2..=8u64 {
            for b in 2..=8u64 {
                let t = ts_tensor(&one_var_spectrum(a), &one_var_spectrum(b));
                assert_eq!(total_rank_sum_of_two(a, b), t.total());
            }
        }
    }

    #[test]
    fn invariant_rank_examples() {
        let cfg = MonomialPairConfig::new(2, 3, 2, 3).unwrap();
        assert_eq!(invariant_rank(&cfg, (1, 1), Generators::NONE), Ok(4));
        assert_eq!(invariant_rank(&cfg, (1, 1), Generators::X), Ok(0));
        let square = MonomialPairConfig::new(2, 2, 2, 2).unwrap();
        assert_eq!(invariant_rank(&square, (1, 1), Generators::BOTH), Ok(1));
    }

    #[test]
    fn invariant_rank_rejects_bad_indices() {
        let cfg = MonomialPairConfig::new(2, 3, 2, 3).unwrap();
        assert_eq!(
            invariant_rank(&cfg, (3, 1), Generators::NONE),
            Err(TsError::BadComponentIndex { got: 3 })
        );
        assert_eq!(
            invariant_rank_closed(&cfg, (1, 0), Generators::NONE),
            Err(TsError::BadComponentIndex { got: 0 })
        );
        assert_eq!(
            MonomialPairConfig::new(2, 0, 1, 1),
            Err(TsError::ZeroExponent)
        );
    }

    #[test]
    fn closed_form_matches_brute_force_on_small_tuples() {
        for a1 in 1..=4u64 {
            for a2 in 1..=4u64 {
                for b1 in 1..=4u64 {
                    for b2 in 1..=4u64 {
                        let cfg = MonomialPairConfig::new(a1, a2, b1, b2).unwrap();
                        for i in 1..=2 {
                            for j in 1..=2 {
                                for g in Generators::ALL {
                                    assert_eq!(
                                        invariant_rank(&cfg, (i, j), g),
                                        invariant_rank_closed(&cfg, (i, j), g),
                                        "cfg=({a1},{a2},{b1},{b2}) comp=({i},{j}) gens={g:?}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h1_rank_examples() {
        assert_eq!(
            h1_rank_monomial_pair(&MonomialPairConfig::new(2, 2, 2, 2).unwrap()),
            1
        );
        assert_eq!(
            h1_rank_monomial_pair(&MonomialPairConfig::new(2, 3, 2, 3).unwrap()),
            0
        );
        assert_eq!(
            h1_rank_monomial_pair(&MonomialPairConfig::new(4, 6, 9, 6).unwrap()),
            2
        );
    }

    #[test]
    fn h1_rank_is_the_fully_invariant_rank() {
        for a1 in 1..=5u64 {
            for a2 in 1..=5u64 {
                for b1 in 1..=5u64 {
                    for b2 in 1..=5u64 {
                        let cfg = MonomialPairConfig::new(a1, a2, b1, b2).unwrap();
                        assert_eq!(
                            invariant_rank(&cfg, (1, 1), Generators::BOTH),
                            Ok(h1_rank_monomial_pair(&cfg))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn product_with_linear_recovers_line_count() {
        for a in 2..=7u64 {
            // H^0 of the fiber of a product of a distinct lines: all a-th
            // roots of unity once. H^1 at eigenvalue lambda in mu_a has
            // dimension a - 2 + delta_{lambda,1}.
            let h0: EigenSpectrum = (0..a).map(|k| (ev(k, a), 1)).collect();
            let h1: EigenSpectrum = (0..a)
                .map(|k| (ev(k, a), a - 2 + u64::from(k == 0)))
                .collect();
            assert_eq!(product_with_linear_rank(&h0, &h1), a);
        }
    }

    #[test]
    fn product_with_linear_smooth_case() {
        let h0: EigenSpectrum = [(Eigenvalue::one(), 1)].into_iter().collect();
        assert_eq!(product_with_linear_rank(&h0, &EigenSpectrum::new()), 1);
    }

    #[test]
    fn cone_pair_examples() {
        assert_eq!(cone_pair_rank(2, 3), (2, 0, 1));
        assert_eq!(cone_pair_rank(4, 6), (15, 1, 2));
        for a in 2..=6u64 {
            assert_eq!(cone_pair_rank(a, a), ((a - 1) * (a - 1), a - 1, a));
        }
    }

    #[test]
    fn cone_sections_examples() {
        // a=2, d=4: gcd 2, rank 2*0 + 1 = 1.
        assert_eq!(cone_sections_rank(2, 4), 1);
        assert_eq!(cone_sections_rank(4, 6), 2 * 2 + 1);
        assert_eq!(cone_sections_rank(3, 7), 1 + 1);
    }

    #[test]
    fn tensor_totals_multiply() {
        for a in 1..=9u64 {
            for b in 1..=9u64 {
                let s1 = one_var_spectrum(a);
                let s2 = one_var_spectrum(b);
                let t = ts_tensor(&s1, &s2);
                assert_eq!(t.total(), s1.total() * s2.total());
            }
        }
    }
}

use crate::cyclo::CycloElement;
use crate::error::ArrangementError;
use crate::rational::{rat_int, Rational};

/// A hyperplane through the origin, stored as the coefficient vector of its
/// defining linear form, scaled so the first nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    coeffs: Vec<CycloElement>,
}

impl Hyperplane {
    fn normalized(coeffs: Vec<CycloElement>, index: usize) -> Result<Self, ArrangementError> {
        let lead = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(ArrangementError::ZeroForm { index })?;
        let inv = coeffs[lead].inv().expect("nonzero leading coefficient");
        let coeffs = coeffs.iter().map(|c| c.mul(&inv)).collect();
        Ok(Hyperplane { coeffs })
    }

    pub fn coeffs(&self) -> &[CycloElement] {
        &self.coeffs
    }
}

/// A central reduced hyperplane arrangement with exact cyclotomic
/// coefficients. `cyclotomic_order` is the common field order; every
/// coefficient is stored in Q(zeta_order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    label: String,
    ambient_dim: usize,
    cyclotomic_order: u64,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(
        label: impl Into<String>,
        ambient_dim: usize,
        cyclotomic_order: u64,
        forms: Vec<Vec<CycloElement>>,
    ) -> Result<Self, ArrangementError> {
        if ambient_dim == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if forms.is_empty() {
            return Err(ArrangementError::Empty);
        }
        let mut hyperplanes = Vec::with_capacity(forms.len());
        for (index, form) in forms.into_iter().enumerate() {
            if form.len() != ambient_dim {
                return Err(ArrangementError::WrongLength {
                    index,
                    got: form.len(),
                    expected: ambient_dim,
                });
            }
            let lifted = form
                .into_iter()
                .map(|c| {
                    let got = c.order();
                    c.lift_to(cyclotomic_order)
                        .map_err(|_| ArrangementError::IncompatibleOrder {
                            got,
                            expected: cyclotomic_order,
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            hyperplanes.push(Hyperplane::normalized(lifted, index)?);
        }
        for second in 1..hyperplanes.len() {
            for first in 0..second {
                if hyperplanes[first] == hyperplanes[second] {
                    return Err(ArrangementError::DuplicateForm { first, second });
                }
            }
        }
        Ok(Arrangement {
            label: label.into(),
            ambient_dim,
            cyclotomic_order,
            hyperplanes,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cyclotomic_order(&self) -> u64 {
        self.cyclotomic_order
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Number of hyperplanes, which is also the degree of the defining
    /// polynomial.
    pub fn degree(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

fn zeta_pow(order: u64, k: i64) -> CycloElement {
    CycloElement::root_of_unity(order, k)
}

fn zero(order: u64) -> CycloElement {
    CycloElement::zero(order)
}

fn one(order: u64) -> CycloElement {
    CycloElement::one(order)
}

/// Reflection arrangement of type G(m,m,d): all forms `x_j - eta^p x_k` for
/// `j < k` and `p` mod `m`, with `eta` a primitive m-th root of unity.
/// Degree m * d (d-1) / 2.
pub fn build_gmm(m: u64, dim: usize) -> Result<Arrangement, ArrangementError> {
    if m < 1 {
        return Err(ArrangementError::BadParameter(format!(
            "m = {m}, need m >= 1"
        )));
    }
    if dim < 2 {
        return Err(ArrangementError::BadParameter(format!(
            "dimension = {dim}, need >= 2"
        )));
    }
    let mut forms = Vec::new();
    for j in 0..dim {
        for k in j + 1..dim {
            for p in 0..m {
                let mut v = vec![zero(m); dim];
                v[j] = one(m);
                v[k] = zeta_pow(m, p as i64).neg();
                forms.push(v);
            }
        }
    }
    Arrangement::new(format!("G({m},{m},{dim})"), dim, m, forms)
}

/// Reflection arrangement of type G(m,1,d): the coordinate hyperplanes
/// together with all `x_j - eta^p x_k`. Degree d + m * d (d-1) / 2.
pub fn build_gm1(m: u64, dim: usize) -> Result<Arrangement, ArrangementError> {
    if m < 1 {
        return Err(ArrangementError::BadParameter(format!(
            "m = {m}, need m >= 1"
        )));
    }
    if dim < 2 {
        return Err(ArrangementError::BadParameter(format!(
            "dimension = {dim}, need >= 2"
        )));
    }
    let mut forms = Vec::new();
    for j in 0..dim {
        let mut v = vec![zero(m); dim];
        v[j] = one(m);
        forms.push(v);
    }
    for j in 0..dim {
        for k in j + 1..dim {
            for p in 0..m {
                let mut v = vec![zero(m); dim];
                v[j] = one(m);
                v[k] = zeta_pow(m, p as i64).neg();
                forms.push(v);
            }
        }
    }
    Arrangement::new(format!("G({m},1,{dim})"), dim, m, forms)
}

/// Reflection arrangement of type G31: 60 hyperplanes in C^4 over Q(i).
/// The list is a candidate dataset; its validity is established by the
/// multiplicity checks in the test suite, not assumed.
pub fn build_g31() -> Arrangement {
    let ord = 4;
    let mut forms = Vec::new();
    for j in 0..4 {
        let mut v = vec![zero(ord); 4];
        v[j] = one(ord);
        forms.push(v);
    }
    for j in 0..4 {
        for k in j + 1..4 {
            for p in 0..4 {
                let mut v = vec![zero(ord); 4];
                v[j] = one(ord);
                v[k] = zeta_pow(ord, p).neg();
                forms.push(v);
            }
        }
    }
    for a in 0..4i64 {
        for b in 0..4i64 {
            for c in 0..4i64 {
                if (a + b + c) % 2 != 0 {
                    continue;
                }
                forms.push(vec![
                    one(ord),
                    zeta_pow(ord, a),
                    zeta_pow(ord, b),
                    zeta_pow(ord, c),
                ]);
            }
        }
    }
    Arrangement::new("G31", 4, ord, forms).expect("builder data is reduced")
}

/// The Boolean arrangement: the coordinate hyperplanes of C^dim.
pub fn build_boolean(dim: usize) -> Result<Arrangement, ArrangementError> {
    if dim == 0 {
        return Err(ArrangementError::ZeroDimension);
    }
    let forms = (0..dim)
        .map(|j| {
            let mut v = vec![zero(1); dim];
            v[j] = one(1);
            v
        })
        .collect();
    Arrangement::new(format!("Boolean({dim})"), dim, 1, forms)
}

/// Convenience constructor from integer coefficient rows at order 1.
pub fn arrangement_from_int_rows(
    label: &str,
    rows: &[Vec<i64>],
) -> Result<Arrangement, ArrangementError> {
    let dim = rows.first().map_or(0, Vec::len);
    let forms = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| CycloElement::from_rational(1, rat_int(v)))
                .collect()
        })
        .collect();
    Arrangement::new(label, dim, 1, forms)
}

/// Evaluates a hyperplane form at an exact rational point.
pub fn form_at_point(h: &Hyperplane, point: &[Rational]) -> CycloElement {
    let order = h.coeffs()[0].order();
    let mut acc = CycloElement::zero(order);
    for (c, x) in h.coeffs().iter().zip(point) {
        acc = acc.add(&c.scale(x));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn counts_for_reflection_families() {
        assert_eq!(build_gmm(2, 3).unwrap().degree(), 6);
        assert_eq!(build_gmm(3, 4).unwrap().degree(), 18);
        assert_eq!(build_gmm(1, 3).unwrap().degree(), 3);
        assert_eq!(build_gmm(2, 4).unwrap().degree(), 12);
        assert_eq!(build_gm1(1, 4).unwrap().degree(), 10);
        assert_eq!(build_gm1(2, 4).unwrap().degree(), 16);
        assert_eq!(build_gm1(3, 3).unwrap().degree(), 12);
        assert_eq!(build_g31().degree(), 60);
    }

    #[test]
    fn labels() {
        assert_eq!(build_gmm(2, 4).unwrap().label(), "G(2,2,4)");
        assert_eq!(build_gm1(3, 5).unwrap().label(), "G(3,1,5)");
        assert_eq!(build_g31().label(), "G31");
    }

    #[test]
    fn duplicate_rejected() {
        // x - y and y - x are proportional.
        let err = arrangement_from_int_rows("dup", &[vec![1, -1], vec![-1, 1]]);
        assert_eq!(
            err.unwrap_err(),
            ArrangementError::DuplicateForm {
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn zero_form_rejected() {
        let err = arrangement_from_int_rows("zero", &[vec![1, 0], vec![0, 0]]);
        assert_eq!(err.unwrap_err(), ArrangementError::ZeroForm { index: 1 });
    }

    #[test]
    fn normalization_scales_leading_coefficient() {
        let arr = arrangement_from_int_rows("scaled", &[vec![2, -4], vec![0, 3]]).unwrap();
        let c0 = arr.hyperplanes()[0].coeffs();
        assert!(c0[0].is_one());
        assert_eq!(c0[1].as_rational(), Some(rat_int(-2)));
        assert!(arr.hyperplanes()[1].coeffs()[1].is_one());
    }

    #[test]
    fn boolean_is_normal_crossing_data() {
        let arr = build_boolean(3).unwrap();
        assert_eq!(arr.degree(), 3);
        assert_eq!(arr.ambient_dim(), 3);
    }

    #[test]
    fn g31_point_membership_counts() {
        // Remark-level sanity at build time; the full five-line check lives
        // in the lattice tests where edges carry the counts.
        let arr = build_g31();
        let pt = |v: [i64; 4]| v.map(rat_int).to_vec();
        let count = |p: &[Rational]| {
            arr.hyperplanes()
                .iter()
                .filter(|h| form_at_point(h, p).is_zero())
                .count()
        };
        assert_eq!(count(&pt([1, 0, 0, 0])), 15);
        assert_eq!(count(&pt([1, 1, 0, 0])), 15);
        assert_eq!(count(&pt([2, 1, 1, 0])), 4);
        assert_eq!(count(&pt([1, 1, 1, 0])), 4);
        assert_eq!(count(&pt([1, 1, 1, 1])), 15);
    }

    #[test]
    fn wrong_length_rejected() {
        let forms = vec![vec![CycloElement::one(1)]];
        let err = Arrangement::new("bad", 2, 1, forms);
        assert_eq!(
            err.unwrap_err(),
            ArrangementError::WrongLength {
                index: 0,
                got: 1,
                expected: 2
            }
        );
    }
}

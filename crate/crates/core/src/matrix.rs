use std::fmt;

use crate::cyclo::CycloElement;
use crate::error::ExactError;
use crate::poly::PolyQ;
use crate::rational::Rational;

/// Dense matrix over a cyclotomic field Q(zeta_n). All entries share the
/// matrix order; constructors enforce it and arithmetic assumes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixK {
    order: u64,
    rows: usize,
    cols: usize,
    data: Vec<CycloElement>,
}

/// Result of Gauss-Jordan elimination: the unique reduced row echelon form,
/// its rank, and the pivot column of each nonzero row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixK,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixK {
    pub fn from_rows(rows: Vec<Vec<CycloElement>>) -> Result<Self, ExactError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(ExactError::EmptyMatrix);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::RaggedRows);
        }
        let order = rows[0][0].order();
        for row in &rows {
            for e in row {
                if e.order() != order {
                    return Err(ExactError::OrderMismatch {
                        left: order,
                        right: e.order(),
                    });
                }
            }
        }
        Ok(MatrixK {
            order,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix at `order`, lifting each entry from its own order.
    pub fn from_rows_at(order: u64, rows: Vec<Vec<CycloElement>>) -> Result<Self, ExactError> {
        let lifted = rows
            .into_iter()
            .map(|row| row.iter().map(|e| e.lift_to(order)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        MatrixK::from_rows(lifted)
    }

    pub fn from_int_rows(order: u64, rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| CycloElement::from_rational(order, Rational::from_integer(v.into())))
                    .collect()
            })
            .collect();
        MatrixK::from_rows(rows)
    }

    pub fn zeros(order: u64, rows: usize, cols: usize) -> Self {
        MatrixK {
            order,
            rows,
            cols,
            data: vec![CycloElement::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u64, n: usize) -> Self {
        let mut m = MatrixK::zeros(order, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = CycloElement::one(order);
        }
        m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloElement {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut CycloElement {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycloElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<CycloElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloElement::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = MatrixK::zeros(self.order, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    fn require_same_shape(&self, other: &Self) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        if self.order != other.order {
            return Err(ExactError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(MatrixK {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(MatrixK {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        if self.order != other.order {
            return Err(ExactError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let mut out = MatrixK::zeros(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let acc = out.get(i, j).add(&prod);
                    *out.get_mut(i, j) = acc;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloElement) -> Result<Self, ExactError> {
        if c.order() != self.order {
            return Err(ExactError::OrderMismatch {
                left: self.order,
                right: c.order(),
            });
        }
        Ok(MatrixK {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        })
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        MatrixK {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Unique reduced row echelon form with leading-one pivots.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(r) = found else { continue };
            if r != pivot_row {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pivot_row, j).clone();
                    *m.get_mut(r, j) = b;
                    *m.get_mut(pivot_row, j) = a;
                }
            }
            let inv = m.get(pivot_row, col).inv().expect("pivot entry is nonzero");
            for j in col..m.cols {
                let scaled = m.get(pivot_row, j).mul(&inv);
                *m.get_mut(pivot_row, j) = scaled;
            }
            for i in 0..m.rows {
                if i == pivot_row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let delta = m.get(pivot_row, j).mul(&factor);
                    let val = m.get(i, j).sub(&delta);
                    *m.get_mut(i, j) = val;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> Result<CycloElement, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = CycloElement::one(self.order);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return Ok(CycloElement::zero(self.order));
                };
                for j in 0..n {
                    let a = m.get(swap, j).clone();
                    let b = m.get(k, j).clone();
                    *m.get_mut(swap, j) = b;
                    *m.get_mut(k, j) = a;
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m
                        .get(k, k)
                        .mul(m.get(i, j))
                        .sub(&m.get(i, k).mul(m.get(k, j)));
                    let val = num.div(&prev).expect("previous pivot is nonzero");
                    *m.get_mut(i, j) = val;
                }
            }
            prev = m.get(k, k).clone();
        }
        let det = m.get(n - 1, n - 1).clone();
        Ok(if sign { det.neg() } else { det })
    }

    /// Evaluates a rational polynomial at this (square) matrix by Horner's
    /// rule.
    pub fn poly_eval(&self, p: &PolyQ) -> Result<MatrixK, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut acc = MatrixK::zeros(self.order, n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.try_mul(self)?;
            for i in 0..n {
                let diag = acc
                    .get(i, i)
                    .add(&CycloElement::from_rational(self.order, c.clone()));
                *acc.get_mut(i, i) = diag;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<CycloElement, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t = CycloElement::zero(self.order);
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        Ok(t)
    }
}

impl Rref {
    /// Reduces `row` against the pivot rows; the residual is zero exactly
    /// when `row` lies in the row space.
    pub fn reduce(&self, row: &[CycloElement]) -> Vec<CycloElement> {
        let mut v: Vec<CycloElement> = row.to_vec();
        for (r, &col) in self.pivots.iter().enumerate() {
            if v[col].is_zero() {
                continue;
            }
            let factor = v[col].clone();
            for (j, vj) in v.iter_mut().enumerate() {
                let delta = self.matrix.get(r, j).mul(&factor);
                *vj = vj.sub(&delta);
            }
        }
        v
    }

    pub fn contains(&self, row: &[CycloElement]) -> bool {
        self.reduce(row).iter().all(CycloElement::is_zero)
    }

    /// True when every row of `other`'s basis lies in this row space.
    pub fn contains_rows(&self, other: &MatrixK) -> bool {
        (0..other.rows()).all(|i| self.contains(other.row(i)))
    }
}

/// Complementary spectral projectors for an operator annihilated by a product
/// of two coprime polynomial factors.
///
/// Returns `(pi1, pi2)` where `pi_i` projects onto the kernel of `p_i(t)`
/// along the kernel of the other factor. With `s*p1 + t*p2 = 1`, the
/// projector onto `ker p1(t)` is `(t*p2)(t)` and onto `ker p2(t)` is
/// `(s*p1)(t)`.
pub fn bezout_projectors(
    p1: &PolyQ,
    p2: &PolyQ,
    t: &MatrixK,
) -> Result<(MatrixK, MatrixK), ExactError> {
    let (g, s, tt) = p1.extended_gcd(p2);
    if !g.is_one() {
        return Err(ExactError::NonCoprimeFactors);
    }
    let product = &(p1 * p2);
    if !t.poly_eval(product)?.is_zero() {
        return Err(ExactError::NotAnnihilating);
    }
    let pi1 = t.poly_eval(&(&tt * p2))?;
    let pi2 = t.poly_eval(&(&s * p1))?;
    Ok((pi1, pi2))
}

/// Companion matrix of a nonconstant polynomial (normalized monic), acting by
/// `C e_j = e_{j+1}` on the first `n-1` basis vectors.
pub fn companion(order: u64, p: &PolyQ) -> Result<MatrixK, ExactError> {
    let p = p.monic();
    let n = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(ExactError::ConstantPolynomial)?;
    let mut c = MatrixK::zeros(order, n, n);
    for j in 0..n - 1 {
        *c.get_mut(j + 1, j) = CycloElement::one(order);
    }
    for i in 0..n {
        *c.get_mut(i, n - 1) = CycloElement::from_rational(order, -p.coeff(i));
    }
    Ok(c)
}

impl fmt::Display for MatrixK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j).residue())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

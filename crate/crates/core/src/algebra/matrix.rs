//! Matrices of polynomial germs.
//!
//! Row-major storage, exact arithmetic throughout. The two nontrivial
//! algorithms are the division-free characteristic polynomial
//! (Faddeev–LeVerrier over the polynomial ring, where the integer
//! divisions are exact) and the Pfaffian by first-row expansion with
//! memoization on index subsets.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize};

use super::bipoly::BiPoly;
use super::poly::Poly;
use super::rat::Rat;
use super::AlgebraError;

/// A matrix with [`Poly`] entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// Builds from row-major entries; panics unless `entries.len() == rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer-entry constructor for tests and small fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&c| Poly::from_ints(&[c])).collect())
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix::new(rows, cols, vec![Poly::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Poly::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise `t -> -t`.
    pub fn reflect_t(&self) -> PolyMatrix {
        self.map(Poly::reflect)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, p: &Poly) -> PolyMatrix {
        self.map(|q| q * p)
    }

    /// True when every entry has degree at most zero.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.degree().is_none_or(|d| d == 0))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| self.get(i, j) == &-self.get(j, i)))
    }

    pub fn trace(&self) -> Poly {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = Poly::zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(keep_rows.len() * keep_cols.len());
        for &i in keep_rows {
            for &j in keep_cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix::new(keep_rows.len(), keep_cols.len(), entries)
    }

    pub fn pow(&self, exp: u32) -> PolyMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = PolyMatrix::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Characteristic polynomial `det(xI - m)` by Faddeev–LeVerrier.
    ///
    /// Division-free over the polynomial ring: the only divisions are by
    /// the integers `2..=r`, which are exact at every step. The result is
    /// monic of degree `rows` in `x`, and the coefficient of `x^(r-i)` is
    /// the signed trace of the i-th exterior power.
    pub fn char_poly(&self) -> Result<BiPoly, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let r = self.rows;
        let mut coeffs = vec![Poly::zero(); r + 1];
        coeffs[r] = Poly::one();
        let mut m = self.clone();
        for k in 1..=r {
            if k > 1 {
                let prev = coeffs[r - (k - 1)].clone();
                let mut shifted = m;
                for i in 0..r {
                    *shifted.get_mut(i, i) = shifted.get(i, i) + &prev;
                }
                m = self * &shifted;
            }
            let c = m.trace().scale(&Rat::from_frac(-1, k as i64));
            coeffs[r - k] = c;
        }
        Ok(BiPoly::new(coeffs))
    }

    /// Determinant, read off the characteristic polynomial.
    pub fn det(&self) -> Result<Poly, AlgebraError> {
        let cp = self.char_poly()?;
        let sign = if self.rows % 2 == 0 { 1 } else { -1 };
        Ok(cp.coeff(0).scale(&Rat::from_int(sign)))
    }

    /// Pfaffian of an antisymmetric even-dimensional matrix.
    ///
    /// First-row expansion with memoization on the set of active indices,
    /// `O(n * 2^n)` subproblems. Satisfies `pf(m)^2 = det(m)`.
    pub fn pfaffian(&self) -> Result<Poly, AlgebraError> {
        if !self.is_antisymmetric() {
            return Err(AlgebraError::NotAntisymmetric);
        }
        if self.rows % 2 != 0 {
            return Err(AlgebraError::OddDimension { dim: self.rows });
        }
        assert!(self.rows <= 32, "pfaffian expansion limited to 32 indices");
        let full: u32 = if self.rows == 32 { u32::MAX } else { (1u32 << self.rows) - 1 };
        let mut memo: HashMap<u32, Poly> = HashMap::new();
        Ok(self.pfaffian_rec(full, &mut memo))
    }

    fn pfaffian_rec(&self, mask: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        if mask == 0 {
            return Poly::one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = Poly::zero();
        let mut sign = 1i64;
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            let entry = self.get(first, j);
            if !entry.is_zero() {
                let sub = self.pfaffian_rec(rest & !(1 << j), memo);
                acc = &acc + &(entry * &sub).scale(&Rat::from_int(sign));
            }
            sign = -sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Inverse of a constant square matrix by Gauss–Jordan elimination.
    ///
    /// `None` when the matrix is non-square, non-constant, or singular.
    pub fn constant_inverse(&self) -> Option<PolyMatrix> {
        if !self.is_square() || !self.is_constant() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).coeff(0)).collect())
            .collect();
        let mut inv: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let pivot_inv = a[col][col].recip().unwrap();
            for j in 0..n {
                a[col][j] = &a[col][j] * &pivot_inv;
                inv[col][j] = &inv[col][j] * &pivot_inv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let da = &a[col][j] * &factor;
                    a[r][j] = &a[r][j] - &da;
                    let di = &inv[col][j] * &factor;
                    inv[r][j] = &inv[r][j] - &di;
                }
            }
        }
        Some(PolyMatrix::from_rows(
            inv.into_iter()
                .map(|row| row.into_iter().map(Poly::constant).collect())
                .collect(),
        ))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = PolyMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.get_mut(i, j) = out.get(i, j) + &(a * b);
                }
            }
        }
        out
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|p| -p)
    }
}

impl Serialize for PolyMatrix {
    /// Serializes as an array of rows, each row an array of entry
    /// polynomials.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[Poly]> = self.entries.chunks(self.cols).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Poly>>::deserialize(deserializer)?;
        if rows.is_empty() {
            return Err(serde::de::Error::custom("matrix needs at least one row"));
        }
        let cols = rows[0].len();
        if cols == 0 {
            return Err(serde::de::Error::custom("matrix rows must be nonempty"));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("matrix rows have unequal lengths"));
        }
        Ok(PolyMatrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Poly {
        Poly::from_ints(&[0, 1])
    }

    #[test]
    fn char_poly_of_companion_shift() {
        // [[0, 1], [t, 0]] has characteristic polynomial x^2 - t.
        let m = PolyMatrix::from_rows(vec![
            vec![Poly::zero(), Poly::one()],
            vec![t(), Poly::zero()],
        ]);
        let cp = m.char_poly().unwrap();
        assert_eq!(cp.coeff(2), Poly::one());
        assert_eq!(cp.coeff(1), Poly::zero());
        assert_eq!(cp.coeff(0), -&t());
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // Companion matrix of x^2 + 3x + 5 reproduces x^2 + 3x + 5.
        let m = PolyMatrix::from_int_rows(&[&[0, -5], &[1, -3]]);
        let cp = m.char_poly().unwrap();
        assert_eq!(cp.coeff(0), Poly::from_ints(&[5]));
        assert_eq!(cp.coeff(1), Poly::from_ints(&[3]));
        assert_eq!(cp.coeff(2), Poly::one());
    }

    #[test]
    fn char_poly_of_diagonal_is_signed_symmetric() {
        // diag(1, 2, 3): coefficients are signed elementary symmetric values.
        let m = PolyMatrix::from_int_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let cp = m.char_poly().unwrap();
        assert_eq!(cp.coeff(2), Poly::from_ints(&[-6])); // -(1+2+3)
        assert_eq!(cp.coeff(1), Poly::from_ints(&[11])); // 2+3+6
        assert_eq!(cp.coeff(0), Poly::from_ints(&[-6])); // -1*2*3
    }

    #[test]
    fn char_poly_rejects_non_square() {
        let m = PolyMatrix::zero(2, 3);
        assert!(matches!(
            m.char_poly(),
            Err(AlgebraError::NonSquareMatrix { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn determinant_via_char_poly() {
        let m = PolyMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det().unwrap(), Poly::one());
        let m3 = PolyMatrix::from_int_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(m3.det().unwrap(), Poly::from_ints(&[6]));
    }

    #[test]
    fn pfaffian_two_by_two() {
        // [[0, a], [-a, 0]] with a = t + 1 has pfaffian t + 1.
        let a = Poly::from_ints(&[1, 1]);
        let m = PolyMatrix::from_rows(vec![
            vec![Poly::zero(), a.clone()],
            vec![-&a, Poly::zero()],
        ]);
        assert_eq!(m.pfaffian().unwrap(), a);
    }

    #[test]
    fn pfaffian_four_by_four() {
        // Upper entries (a12, a13, a14, a23, a24, a34) = (1, -t, 0, 0, -t, 1):
        // pf = a12*a34 - a13*a24 + a14*a23 = 1 - t^2.
        let mut m = PolyMatrix::zero(4, 4);
        let put = |m: &mut PolyMatrix, i: usize, j: usize, p: Poly| {
            *m.get_mut(j, i) = -&p;
            *m.get_mut(i, j) = p;
        };
        put(&mut m, 0, 1, Poly::one());
        put(&mut m, 0, 2, -&t());
        put(&mut m, 1, 3, -&t());
        put(&mut m, 2, 3, Poly::one());
        let pf = m.pfaffian().unwrap();
        assert_eq!(pf, Poly::from_ints(&[1, 0, -1]));
        // pf^2 = det.
        assert_eq!(&pf * &pf, m.det().unwrap());
    }

    #[test]
    fn pfaffian_error_cases() {
        let zero3 = PolyMatrix::zero(3, 3);
        assert!(matches!(zero3.pfaffian(), Err(AlgebraError::OddDimension { dim: 3 })));
        let sym = PolyMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert!(matches!(sym.pfaffian(), Err(AlgebraError::NotAntisymmetric)));
        assert_eq!(PolyMatrix::zero(4, 4).pfaffian().unwrap(), Poly::zero());
    }

    #[test]
    fn constant_inverse_round_trip() {
        let m = PolyMatrix::from_int_rows(&[&[2, 1], &[7, 4]]);
        let inv = m.constant_inverse().unwrap();
        assert_eq!(&m * &inv, PolyMatrix::identity(2));
        assert_eq!(&inv * &m, PolyMatrix::identity(2));
        let singular = PolyMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.constant_inverse().is_none());
        let nonconst = PolyMatrix::from_rows(vec![vec![t()]]);
        assert!(nonconst.constant_inverse().is_none());
    }

    #[test]
    fn cayley_hamilton_small() {
        // A matrix annihilates its own characteristic polynomial.
        let m = PolyMatrix::from_rows(vec![
            vec![t(), Poly::one()],
            vec![Poly::from_ints(&[1, 0, 2]), Poly::from_ints(&[-1])],
        ]);
        let cp = m.char_poly().unwrap();
        let mut acc = PolyMatrix::zero(2, 2);
        for (k, c) in cp.coeffs().iter().enumerate() {
            acc = &acc + &m.pow(k as u32).scale_poly(c);
        }
        assert_eq!(acc, PolyMatrix::zero(2, 2));
    }

    #[test]
    fn transpose_and_symmetry_predicates() {
        let m = PolyMatrix::from_int_rows(&[&[0, 5], &[-5, 0]]);
        assert!(m.is_antisymmetric());
        assert!(!m.is_symmetric());
        assert_eq!(m.transpose(), -&m);
    }
}

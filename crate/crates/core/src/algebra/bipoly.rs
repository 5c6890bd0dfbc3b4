//! Polynomials in a fiber variable `x` whose coefficients are germs in `t`.
//!
//! `BiPoly` stores the coefficient of each power of `x` as a [`Poly`] in
//! `t`, ascending in `x`, with the leading coefficient nonzero. Spectral
//! polynomials and characteristic polynomials live here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize};

use super::poly::Poly;
use super::rat::Rat;
use super::AlgebraError;

/// A polynomial in `x` over the ring of rational polynomials in `t`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<Poly>,
}

impl BiPoly {
    /// Builds from ascending `x`-coefficients, trimming zero leaders.
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly::constant(Poly::one())
    }

    /// A polynomial constant in `x` (still a germ in `t`).
    pub fn constant(p: Poly) -> Self {
        BiPoly::new(vec![p])
    }

    /// `c * x^k` with a polynomial coefficient.
    pub fn monomial(k: usize, c: Poly) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![Poly::zero(); k + 1];
        coeffs[k] = c;
        BiPoly { coeffs }
    }

    /// Lifts a univariate polynomial in `x` (rational coefficients).
    pub fn from_x_poly(p: &Poly) -> Self {
        BiPoly::new(p.coeffs().iter().map(|c| Poly::constant(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `x`, or `None` for zero.
    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    /// True when the leading `x`-coefficient is the constant 1.
    pub fn is_monic_in_x(&self) -> bool {
        self.coeffs.last() == Some(&Poly::one())
    }

    /// Partial derivative in `x`.
    pub fn d_dx(&self) -> BiPoly {
        if self.coeffs.len() <= 1 {
            return BiPoly::zero();
        }
        BiPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&Rat::from_int((i + 1) as i64)))
                .collect(),
        )
    }

    /// Partial derivative in `t`.
    pub fn d_dt(&self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(Poly::derivative).collect())
    }

    /// Substitutes `t = 0`, producing a univariate polynomial in `x`.
    pub fn eval_t0(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.coeff(0)).collect())
    }

    /// Substitutes `t -> -t` in every coefficient.
    pub fn reflect_t(&self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(Poly::reflect).collect())
    }

    /// Substitutes a rational value for `x`, leaving a germ in `t`.
    pub fn eval_x(&self, x: &Rat) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    /// Exact square root in `x` with polynomial coefficients.
    ///
    /// Coefficient matching from the top `x`-degree down; every division is
    /// exact polynomial division and the candidate is verified by squaring.
    /// The root's leading coefficient carries a positive leading rational.
    pub fn square_root(&self) -> Result<BiPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        let deg = self.x_degree().unwrap();
        if deg % 2 != 0 {
            return Err(AlgebraError::NotASquare);
        }
        let m = deg / 2;
        let lead_root = self.coeffs[deg].square_root()?;
        let denom = lead_root.scale(&Rat::from_int(2));
        let mut q = vec![Poly::zero(); m + 1];
        q[m] = lead_root;
        for j in (0..m).rev() {
            let s = m + j;
            let mut cross = Poly::zero();
            for i in (j + 1)..m {
                cross = &cross + &(&q[i] * &q[s - i]);
            }
            let num = &self.coeff(s) - &cross;
            q[j] = num.exact_div(&denom).ok_or(AlgebraError::NotASquare)?;
        }
        let root = BiPoly::new(q);
        if &(&root * &root) == self {
            Ok(root)
        } else {
            Err(AlgebraError::NotASquare)
        }
    }

    /// Renders with `x` as the outer variable and `t` inside.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if *c == Poly::one() && i > 0 {
                String::new()
            } else if c.degree() == Some(0) {
                format!("{c}")
            } else {
                format!("({c})")
            };
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let sep = if coeff.is_empty() || var.is_empty() { "" } else { "*" };
            parts.push(format!("{coeff}{sep}{var}"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Serialize for BiPoly {
    /// Array of coefficient arrays, outer index = `x`-degree.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(BiPoly::new(Vec::<Poly>::deserialize(deserializer)?))
    }
}

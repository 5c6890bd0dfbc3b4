//! Univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending order and kept canonical: no
//! trailing zero, so the zero polynomial is the empty list. The variable is
//! written `t` by default (germs of functions in a local parameter); a few
//! callers reuse the same type for polynomials in a fiber variable `x` and
//! pick the letter at display time.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize};

use super::rat::Rat;
use super::AlgebraError;

/// A polynomial in one variable over the rationals, ascending coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros so the representation is canonical.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(k: usize, c: Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Convenience constructor from integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial (degree "minus infinity").
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading coefficient; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| &Rat::from_int((i + 1) as i64) * c)
                .collect(),
        )
    }

    /// `p(-t)`: negates the odd-degree coefficients.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Splits into even and odd parts: `p = even + odd` with
    /// `even(-t) = even(t)` and `odd(-t) = -odd(t)`.
    pub fn parity_decompose(&self) -> (Poly, Poly) {
        let mut even = vec![Rat::zero(); self.coeffs.len()];
        let mut odd = vec![Rat::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                even[i] = c.clone();
            } else {
                odd[i] = c.clone();
            }
        }
        (Poly::new(even), Poly::new(odd))
    }

    /// True when all odd-degree coefficients vanish (zero counts as even).
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Rat::is_zero)
    }

    /// True when all even-degree coefficients vanish (zero counts as odd).
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Rat::is_zero)
    }

    /// Order of vanishing at `t = 0`: the least `k` with a nonzero `t^k`
    /// coefficient, or `None` for the zero polynomial (infinite order).
    pub fn vanishing_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Rescales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lead) => {
                let inv = lead.recip().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; `None` when the divisor is zero.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let d_deg = divisor.degree()?;
        let d_lead_inv = divisor.leading().unwrap().recip().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - d_deg];
        for k in (d_deg..rem.len()).rev() {
            let q = &rem[k] * &d_lead_inv;
            if q.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let sub = dc * &q;
                rem[k - d_deg + i] -= sub;
            }
            quot[k - d_deg] = q;
        }
        Some((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact division; `None` when the divisor is zero or does not divide.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    ///
    /// `gcd(p, 0)` is the monic rescaling of `p`; `gcd(0, 0)` is zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Exact square root.
    ///
    /// Matches coefficients from the top degree down and verifies the
    /// candidate by squaring it back; fails on odd degree, a non-square
    /// leading coefficient, or any mismatch. The root returned has a
    /// positive leading coefficient.
    pub fn square_root(&self) -> Result<Poly, AlgebraError> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let deg = self.degree().unwrap();
        if deg % 2 != 0 {
            return Err(AlgebraError::NotASquare);
        }
        let m = deg / 2;
        let lead_root = self
            .leading()
            .unwrap()
            .sqrt()
            .ok_or(AlgebraError::NotASquare)?;
        let mut q = vec![Rat::zero(); m + 1];
        q[m] = lead_root;
        let double_lead = &Rat::from_int(2) * &q[m];
        for j in (0..m).rev() {
            let s = m + j;
            let mut cross = Rat::zero();
            for i in (j + 1)..m {
                cross += &q[i] * &q[s - i];
            }
            q[j] = (&self.coeff(s) - &cross) / double_lead.clone();
        }
        let root = Poly::new(q);
        if &(&root * &root) == self {
            Ok(root)
        } else {
            Err(AlgebraError::NotASquare)
        }
    }

    /// Squarefree part: `p / gcd(p, p')`, monic. Zero stays zero.
    pub fn radical(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.exact_div(&g)
            .expect("gcd divides the polynomial")
            .monic()
    }

    /// Renders with an explicit variable letter.
    pub fn display_with(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = i == 0 || abs != Rat::one();
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            if i > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with('t'))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Serialize for Poly {
    /// Serializes as the ascending coefficient array.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::new(Vec::<Rat>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_ints(coeffs)
    }

    #[test]
    fn canonical_form_trims_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[0, 0]), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 5]).degree(), Some(2));
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[1, 1]); // 1 + t
        let b = p(&[-1, 1]); // -1 + t
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!((&a * &b).eval(&Rat::from_int(3)), Rat::from_int(8));
    }

    #[test]
    fn division_with_remainder() {
        let num = p(&[2, 0, 1, 1]); // t^3 + t^2 + 2
        let den = p(&[1, 1]); // t + 1
        let (q, r) = num.div_rem(&den).unwrap();
        assert_eq!(&(&q * &den) + &r, num);
        assert_eq!(num.div_rem(&Poly::zero()), None);
        assert_eq!(num.exact_div(&den), None);
        let prod = &num * &den;
        assert_eq!(prod.exact_div(&den), Some(num));
    }

    #[test]
    fn gcd_shared_factor() {
        // (t^2 - 1)(t + 2) and (t^2 - 1)(t - 3) share exactly t^2 - 1.
        let shared = p(&[-1, 0, 1]);
        let a = &shared * &p(&[2, 1]);
        let b = &shared * &p(&[-3, 1]);
        assert_eq!(Poly::gcd(&a, &b), shared);
    }

    #[test]
    fn gcd_monomials_and_zero() {
        assert_eq!(Poly::gcd(&p(&[0, 0, 0, 1]), &p(&[0, 1])), p(&[0, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
        // gcd with zero is the monic rescaling of the other argument.
        assert_eq!(Poly::gcd(&p(&[2, 4]), &Poly::zero()), p(&[1, 2]).scale(&Rat::from_frac(1, 2)));
    }

    #[test]
    fn gcd_is_monic_and_divides() {
        let a = p(&[6, 7, 2]); // (2t+3)(t+2)
        let b = p(&[3, 5, 2]); // (2t+3)(t+1)
        let g = Poly::gcd(&a, &b);
        assert_eq!(g, p(&[3, 2]).monic());
        assert!(a.exact_div(&g).is_some());
        assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(p(&[0, 0, 1, 2]).vanishing_order(), Some(2));
        assert_eq!(p(&[1, 1]).vanishing_order(), Some(0));
        assert_eq!(Poly::zero().vanishing_order(), None);
    }

    #[test]
    fn parity_split() {
        // t^3 + t^2 + t + 1 splits into t^2 + 1 and t^3 + t.
        let (even, odd) = p(&[1, 1, 1, 1]).parity_decompose();
        assert_eq!(even, p(&[1, 0, 1]));
        assert_eq!(odd, p(&[0, 1, 0, 1]));
        assert!(even.is_even());
        assert!(odd.is_odd());
        assert_eq!(&even + &odd, p(&[1, 1, 1, 1]));
        // An even germ has odd derivative and vice versa.
        assert!(even.derivative().is_odd());
        assert!(odd.derivative().is_even());
        // Reflection fixes the even part and negates the odd part.
        assert_eq!(even.reflect(), even);
        assert_eq!(odd.reflect(), -&odd);
    }

    #[test]
    fn square_root_examples() {
        // 4t^4 + 4t^2 + 1 = (2t^2 + 1)^2.
        assert_eq!(p(&[1, 0, 4, 0, 4]).square_root().unwrap(), p(&[1, 0, 2]));
        assert_eq!((p(&[1, 1]).pow(2)).square_root().unwrap(), p(&[1, 1]));
        assert_eq!(Poly::zero().square_root().unwrap(), Poly::zero());
    }

    #[test]
    fn square_root_rejects_non_squares() {
        // t^2 + 1 is squarefree of positive degree, hence not a square.
        let f = p(&[1, 0, 1]);
        assert_eq!(Poly::gcd(&f, &f.derivative()), Poly::one());
        assert!(matches!(f.square_root(), Err(AlgebraError::NotASquare)));
        // Odd degree.
        assert!(p(&[0, 1]).square_root().is_err());
        // Non-square leading coefficient.
        assert!(p(&[0, 0, 2]).square_root().is_err());
        // Top coefficients match a square but low ones do not.
        assert!(p(&[5, 0, 2, 0, 1]).square_root().is_err());
    }

    #[test]
    fn square_root_sign_normalization() {
        // (-t - 1)^2 = (t + 1)^2: the returned root has positive lead.
        let sq = (-&p(&[1, 1])).pow(2);
        assert_eq!(sq.square_root().unwrap(), p(&[1, 1]));
    }

    #[test]
    fn radical_strips_multiplicity() {
        let f = &p(&[1, 1]).pow(3) * &p(&[-2, 1]);
        assert_eq!(f.radical(), &p(&[1, 1]) * &p(&[-2, 1]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, 0, -1]).to_string(), "-t^2 + 1");
        assert_eq!(p(&[0, 1]).display_with('x'), "x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[-3]).to_string(), "-3");
        assert_eq!(p(&[0, 0, 2]).to_string(), "2*t^2");
    }
}

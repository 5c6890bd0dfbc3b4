//! Seeded random generators for the property suites.
//!
//! Everything here is deterministic given the seed: the suites that
//! consume these generators print their seed and reproduce bit-for-bit.
//! Construction does the work of satisfying invariants — a sampler
//! returns data that is valid by the way it is assembled (symmetrized
//! sums, parity masks, explicit pairings), then the library constructors
//! re-check it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BiPoly, Poly, PolyMatrix, Rat};
use crate::cover::Linearization;
use crate::spectral::{Chart, SpectralGerm};

/// The stream cipher RNG used by every suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational: numerator in `-9..=9`, denominator in `{1, 2, 3}`.
pub fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let numer = rng.gen_range(-9i64..=9);
    let denom = [1i64, 1, 1, 2, 3][rng.gen_range(0..5)];
    Rat::from_frac(numer, denom)
}

pub fn rand_nonzero_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = rand_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A polynomial of degree at most `max_deg` (possibly lower, possibly
/// zero) with small rational coefficients.
pub fn rand_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let coeffs: Vec<Rat> = (0..=max_deg).map(|_| rand_rat(rng)).collect();
    Poly::new(coeffs)
}

/// A random polynomial containing only even powers of `t`.
pub fn rand_even_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let p = rand_poly(rng, max_deg);
    p.parity_decompose().0
}

/// A random polynomial containing only odd powers of `t`.
pub fn rand_odd_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let p = rand_poly(rng, max_deg);
    p.parity_decompose().1
}

/// A monic polynomial of exact degree `deg`.
pub fn rand_monic_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    let mut coeffs: Vec<Rat> = (0..deg).map(|_| rand_rat(rng)).collect();
    coeffs.push(Rat::from_int(1));
    Poly::new(coeffs)
}

/// A monic polynomial with distinct small integer roots.
pub fn rand_simple_root_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    assert!(deg <= 10, "only 21 distinct small integer roots available");
    let mut pool: Vec<i64> = (-10..=10).collect();
    let mut q = Poly::one();
    for _ in 0..deg {
        let idx = rng.gen_range(0..pool.len());
        let root = pool.swap_remove(idx);
        q = &q * &Poly::from_ints(&[-root, 1]);
    }
    q
}

/// A matrix of random polynomials of degree at most `max_deg`.
pub fn rand_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max_deg: usize) -> PolyMatrix {
    let entries: Vec<Poly> = (0..rows * cols).map(|_| rand_poly(rng, max_deg)).collect();
    PolyMatrix::new(rows, cols, entries)
}

/// A random antisymmetric matrix of polynomials of degree at most
/// `max_deg`.
pub fn rand_antisymmetric(rng: &mut ChaCha8Rng, r: usize, max_deg: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zero(r, r);
    for i in 0..r {
        for j in (i + 1)..r {
            let p = rand_poly(rng, max_deg);
            *m.get_mut(i, j) = p.clone();
            *m.get_mut(j, i) = -&p;
        }
    }
    m
}

/// The standard antisymmetric pairing `[[0, I], [-I, 0]]` of even size.
pub fn standard_block_j(r: usize) -> PolyMatrix {
    assert!(r % 2 == 0, "the block pairing needs even size");
    let k = r / 2;
    let mut j = PolyMatrix::zero(r, r);
    for i in 0..k {
        *j.get_mut(i, k + i) = Poly::one();
        *j.get_mut(k + i, i) = -&Poly::one();
    }
    j
}

/// A random unit upper-triangular integer matrix, used to conjugate the
/// standard pairings without leaving the unimodular group.
fn rand_unit_upper(rng: &mut ChaCha8Rng, r: usize) -> PolyMatrix {
    let mut l = PolyMatrix::identity(r);
    for i in 0..r {
        for j in (i + 1)..r {
            *l.get_mut(i, j) = Poly::constant(Rat::from_int(rng.gen_range(-2..=2)));
        }
    }
    l
}

/// A random constant symmetric invertible matrix, built as `LᵀDL` with
/// unit-triangular `L` and diagonal signs `D` so the determinant is `±1`
/// and the inverse stays integral.
pub fn rand_symmetric_pairing(rng: &mut ChaCha8Rng, r: usize) -> PolyMatrix {
    let l = rand_unit_upper(rng, r);
    let mut d = PolyMatrix::zero(r, r);
    for i in 0..r {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        *d.get_mut(i, i) = Poly::constant(Rat::from_int(sign));
    }
    &(&l.transpose() * &d) * &l
}

/// A random constant antisymmetric invertible matrix (even size), the
/// standard block pairing conjugated by a unimodular matrix.
pub fn rand_antisymmetric_pairing(rng: &mut ChaCha8Rng, r: usize) -> PolyMatrix {
    assert!(r % 2 == 0, "an invertible antisymmetric matrix has even size");
    let l = rand_unit_upper(rng, r);
    &(&l.transpose() * &standard_block_j(r)) * &l
}

/// A field satisfying the symmetric equivariance for the pairing `s`:
/// built as `B + S⁻¹ B(-t)ᵀ S` from a free random `B`.
pub fn rand_symmetric_field(
    rng: &mut ChaCha8Rng,
    s: &PolyMatrix,
    max_deg: usize,
) -> PolyMatrix {
    let r = s.rows();
    let b = rand_matrix(rng, r, r, max_deg);
    let inv = s.constant_inverse().expect("pairing is invertible");
    &b + &(&(&inv * &b.reflect_t().transpose()) * s)
}

/// A field satisfying the alternating equivariance for the pairing `j`:
/// built as `B + J⁻¹ B(-t)ᵀ J` from a free random `B`.
pub fn rand_alternating_field(
    rng: &mut ChaCha8Rng,
    j: &PolyMatrix,
    max_deg: usize,
) -> PolyMatrix {
    let r = j.rows();
    let b = rand_matrix(rng, r, r, max_deg);
    let inv = j.constant_inverse().expect("pairing is invertible");
    &b + &(&(&inv * &b.reflect_t().transpose()) * j)
}

/// A field satisfying the typed equivariance `φ(-t) = -A φ(t) A`: odd
/// entries on the diagonal blocks of the type-`k_p` splitting, even
/// entries off them.
pub fn rand_typed_field(
    rng: &mut ChaCha8Rng,
    r: usize,
    k_p: usize,
    max_deg: usize,
) -> PolyMatrix {
    assert!(k_p <= r);
    let mut phi = PolyMatrix::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            let same_block = (i < k_p) == (j < k_p);
            *phi.get_mut(i, j) = if same_block {
                rand_odd_poly(rng, max_deg)
            } else {
                rand_even_poly(rng, max_deg)
            };
        }
    }
    phi
}

/// A constant matrix with the antisymmetric twist `AᵀJ = JA` for the
/// standard block pairing, built as `A = -J M` from a random
/// antisymmetric `M`. Returns `(A, J)`.
pub fn rand_twisted_constant(rng: &mut ChaCha8Rng, r: usize) -> (PolyMatrix, PolyMatrix) {
    let j = standard_block_j(r);
    let m = rand_antisymmetric(rng, r, 0);
    let a = -&(&j * &m);
    (a, j)
}

/// A valid positive-linearization germ in a ramified chart: every
/// section even.
pub fn rand_positive_germ(rng: &mut ChaCha8Rng, r: u32, max_deg: usize) -> SpectralGerm {
    let sections: Vec<Poly> = (0..r).map(|_| rand_even_poly(rng, max_deg)).collect();
    SpectralGerm::new(r, sections, Chart::Ramified, Linearization::Positive)
        .expect("even sections are positive-valid")
}

/// A valid negative-linearization germ in a ramified chart. With
/// `generic_constants`, every section whose parity allows a constant
/// term gets a nonzero one.
pub fn rand_negative_germ(
    rng: &mut ChaCha8Rng,
    r: u32,
    max_deg: usize,
    generic_constants: bool,
) -> SpectralGerm {
    let sections: Vec<Poly> = (1..=r)
        .map(|i| {
            if i % 2 == 0 {
                let p = rand_even_poly(rng, max_deg);
                if generic_constants {
                    let without_constant = &p - &Poly::constant(p.coeff(0));
                    &without_constant + &Poly::constant(rand_nonzero_rat(rng))
                } else {
                    p
                }
            } else {
                rand_odd_poly(rng, max_deg)
            }
        })
        .collect();
    SpectralGerm::new(r, sections, Chart::Ramified, Linearization::Negative)
        .expect("parity-masked sections are negative-valid")
}

/// A positive germ whose central fiber is the square of the given monic
/// polynomial `q` of degree `r/2`: sections are the coefficients of
/// `q(x)²` plus even `t`-multiples of `t²`.
pub fn w_minus_germ_from_root(
    rng: &mut ChaCha8Rng,
    q: &Poly,
    max_deg: usize,
) -> SpectralGerm {
    let half = q.degree().expect("q must be nonzero");
    let r = 2 * half;
    let rank = r as u32;
    assert!(q.leading() == Some(&Rat::from_int(1)), "q must be monic");
    // q² in the x variable: coefficients of x^k, constants in t.
    let square = q * q;
    let sections: Vec<Poly> = (1..=r)
        .map(|i| {
            // s_i is the coefficient of x^(r-i), perturbed by t² times an
            // even polynomial so the germ stays positive-valid.
            let base = Poly::constant(square.coeff(r - i));
            let bump = rand_even_poly(rng, max_deg).shift_up(2).parity_decompose().0;
            &base + &bump
        })
        .collect();
    SpectralGerm::new(rank, sections, Chart::Ramified, Linearization::Positive)
        .expect("construction keeps every section even")
}

/// A random bivariate polynomial, monic in `x` of exact degree `x_deg`.
pub fn rand_monic_bipoly(
    rng: &mut ChaCha8Rng,
    x_deg: usize,
    t_deg: usize,
) -> BiPoly {
    let mut coeffs: Vec<Poly> = (0..x_deg).map(|_| rand_poly(rng, t_deg)).collect();
    coeffs.push(Poly::one());
    BiPoly::new(coeffs)
}

/// A bivariate polynomial, monic in `x`, guaranteed singular along the
/// fiber `t = 0`: built as `(x - a)² M(x) - t² N(x, t)`, which puts a
/// singular point at `(a, 0)`.
pub fn rand_singular_bipoly(
    rng: &mut ChaCha8Rng,
    x_deg: usize,
    t_deg: usize,
) -> BiPoly {
    assert!(x_deg >= 2);
    let a = rand_rat(rng);
    let factor = {
        let linear = BiPoly::new(vec![Poly::constant(-&a), Poly::one()]);
        &linear * &linear
    };
    let m = rand_monic_bipoly(rng, x_deg - 2, t_deg);
    let n = {
        let raw = rand_monic_bipoly(rng, x_deg.saturating_sub(2), t_deg.saturating_sub(2));
        // Multiply by t².
        let coeffs: Vec<Poly> = (0..=raw.x_degree().unwrap())
            .map(|k| raw.coeff(k).shift_up(2))
            .collect();
        BiPoly::new(coeffs)
    };
    &(&factor * &m) - &n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::higgs::{classify, Structure};
    use crate::spectral::fiber_singularity_test;

    #[test]
    fn samplers_produce_valid_structures() {
        let mut rng = rng(7);
        for r in [2usize, 4] {
            let s = rand_symmetric_pairing(&mut rng, r);
            let phi = rand_symmetric_field(&mut rng, &s, 3);
            classify(phi, Structure::Symmetric { s }).unwrap();

            let j = rand_antisymmetric_pairing(&mut rng, r);
            let phi = rand_alternating_field(&mut rng, &j, 3);
            classify(phi, Structure::Alternating { j }).unwrap();

            let phi = rand_typed_field(&mut rng, r, r / 2, 3);
            classify(phi, Structure::InvariantTyped { k_p: (r / 2) as u32 }).unwrap();
        }
    }

    #[test]
    fn germ_samplers_respect_parity() {
        let mut rng = rng(11);
        for r in 1..=6 {
            rand_positive_germ(&mut rng, r, 4);
            let g = rand_negative_germ(&mut rng, r, 4, true);
            for (idx, s) in g.sections().iter().enumerate() {
                if (idx + 1) % 2 == 0 {
                    assert!(!s.coeff(0).is_zero(), "generic constant forced");
                }
            }
        }
    }

    #[test]
    fn singular_sampler_is_singular() {
        let mut rng = rng(13);
        for _ in 0..20 {
            let p = rand_singular_bipoly(&mut rng, 5, 4);
            assert!(p.is_monic_in_x());
            assert!(!fiber_singularity_test(&p).smooth);
        }
    }

    #[test]
    fn w_minus_sampler_hits_membership() {
        use crate::spectral::{WCertificate, WSpace};
        let mut rng = rng(17);
        for half in 1..=3 {
            let q = rand_simple_root_poly(&mut rng, half);
            let germ = w_minus_germ_from_root(&mut rng, &q, 2);
            let m = germ.w_membership(WSpace::WMinus).unwrap();
            assert!(m.member);
            assert_eq!(m.certificate, WCertificate::SquareRoot(q));
        }
    }

    #[test]
    fn twisted_sampler_satisfies_twist() {
        let mut rng = rng(19);
        for r in [2usize, 4, 6, 8] {
            let (a, j) = rand_twisted_constant(&mut rng, r);
            assert_eq!(&a.transpose() * &j, &j * &a);
        }
    }
}

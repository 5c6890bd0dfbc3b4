//! Property suite: algebraic laws the exact kernels must satisfy for all
//! inputs, not just the seeded samples the acceptance suite draws.

use proptest::prelude::*;

use prym_hitchin::algebra::{BiPoly, Poly, PolyMatrix, Rat};
use prym_hitchin::cover::{CoverData, Linearization};
use prym_hitchin::moduli::{enumerate_types, InvariantType};

fn rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(num, den)| Rat::from_frac(num, den))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    poly(max_deg).prop_filter("nonzero divisor", |p| !p.is_zero())
}

fn bipoly(x_deg: usize, t_deg: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(poly(t_deg), 1..=x_deg + 1).prop_map(BiPoly::new)
}

fn int_matrix(r: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(-4i64..=4, r * r).prop_map(move |v| {
        PolyMatrix::new(
            r,
            r,
            v.into_iter().map(|a| Poly::constant(Rat::from_int(a))).collect(),
        )
    })
}

/// Unit upper-triangular matrix from the strictly-upper entries, read row
/// by row.
fn unit_upper(r: usize, strict: &[i64]) -> PolyMatrix {
    let mut l = PolyMatrix::identity(r);
    let mut it = strict.iter();
    for i in 0..r {
        for j in (i + 1)..r {
            *l.get_mut(i, j) = Poly::constant(Rat::from_int(*it.next().unwrap()));
        }
    }
    l
}

proptest! {
    #[test]
    fn mul_distributes_over_add(a in poly(5), b in poly(5), c in poly(5)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn div_rem_reassembles(a in poly(7), b in nonzero_poly(4)) {
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree().unwrap() < b.degree().unwrap());
    }

    #[test]
    fn gcd_is_monic_common_divisor(a in poly(6), b in poly(6)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = Poly::gcd(&a, &b);
        prop_assert_eq!(g.leading().cloned(), Some(Rat::one()));
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(b.exact_div(&g).is_some());
    }

    #[test]
    fn gcd_absorbs_common_factor(a in poly(4), b in poly(4), c in nonzero_poly(3)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let lhs = Poly::gcd(&(&a * &c), &(&b * &c));
        let rhs = (&Poly::gcd(&a, &b) * &c).monic();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_root_recovers_squares(p in poly(6)) {
        let sq = &p * &p;
        let root = sq.square_root().unwrap();
        prop_assert_eq!(&root * &root, sq);
        if !p.is_zero() {
            prop_assert!(root.leading().unwrap().is_positive());
        }
    }

    #[test]
    fn derivative_satisfies_product_rule(f in poly(5), g in poly(5)) {
        let lhs = (&f * &g).derivative();
        let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_involutive_and_parity_split(p in poly(6)) {
        prop_assert_eq!(p.reflect().reflect(), p.clone());
        let (even, odd) = p.parity_decompose();
        prop_assert!(even.is_even());
        prop_assert!(odd.is_odd());
        prop_assert_eq!(&even + &odd, p);
    }

    #[test]
    fn radical_is_squarefree_divisor(p in nonzero_poly(5)) {
        let rad = p.radical();
        prop_assert!(p.exact_div(&rad).is_some());
        let check = Poly::gcd(&rad, &rad.derivative());
        prop_assert!(check.degree() == Some(0) || rad.degree() == Some(0));
    }

    #[test]
    fn bipoly_partials_commute(f in bipoly(4, 3)) {
        prop_assert_eq!(f.d_dx().d_dt(), f.d_dt().d_dx());
    }

    #[test]
    fn fiber_restriction_is_multiplicative(f in bipoly(3, 2), g in bipoly(3, 2)) {
        prop_assert_eq!((&f * &g).eval_t0(), &f.eval_t0() * &g.eval_t0());
    }

    #[test]
    fn transpose_reverses_products(a in int_matrix(3), b in int_matrix(3)) {
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn char_poly_reads_trace_and_det(a in int_matrix(3)) {
        let cp = a.char_poly().unwrap();
        prop_assert!(cp.is_monic_in_x());
        prop_assert_eq!(cp.x_degree(), Some(3));
        prop_assert_eq!(cp.coeff(2), a.trace().scale(&Rat::from_int(-1)));
        prop_assert_eq!(cp.coeff(0), a.det().unwrap().scale(&Rat::from_int(-1)));
    }

    #[test]
    fn pfaffian_squares_to_determinant(strict in prop::collection::vec(-3i64..=3, 6)) {
        let l = unit_upper(4, &strict);
        let j = PolyMatrix::from_int_rows(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        let a = &(&l.transpose() * &j) * &l;
        let pf = a.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, a.det().unwrap());
    }

    // The linearization is chosen on K_X itself, so the induced lift on
    // K_X^k differs between the two choices only when k is odd: odd-power
    // counts split h^0(X, K_X^k) into eigenspaces, even-power counts
    // coincide.
    #[test]
    fn section_counts_split_by_sign(g_y in 1u32..=6, n in 0u32..=6, k in 1u32..=6) {
        let cover = CoverData::new(g_y, n, n == 0);
        prop_assume!(cover.is_ok());
        let cover = cover.unwrap();
        let pos = cover.h0_canonical_power_plus(k, Linearization::Positive);
        let neg = cover.h0_canonical_power_plus(k, Linearization::Negative);
        if k % 2 == 0 {
            prop_assert_eq!(pos, neg);
        } else {
            let g_x = cover.genus_upstairs();
            let total = if k == 1 { g_x } else { (2 * i64::from(k) - 1) * (g_x - 1) };
            prop_assert_eq!(pos + neg, total);
        }
    }

    #[test]
    fn canonical_type_identifies_complements(r in 1u32..=5, ks in prop::collection::vec(0u32..=5, 2)) {
        let ks: Vec<u32> = ks.into_iter().map(|k| k.min(r)).collect();
        let flipped: Vec<u32> = ks.iter().map(|k| r - k).collect();
        let d = i64::from(ks.iter().sum::<u32>());
        let t = InvariantType::new(r, ks).unwrap();
        prop_assert_eq!(InvariantType::new(r, flipped).unwrap(), t.clone());
        prop_assert_eq!(InvariantType::new(r, t.ks().to_vec()).unwrap(), t.clone());
        prop_assert_eq!(i64::from(t.sum()) % 2, d % 2);
    }

    #[test]
    fn enumerated_types_have_requested_parity(r in 1u32..=3, d in 0i64..=1) {
        let cover = CoverData::ramified(2, 1).unwrap();
        for t in enumerate_types(&cover, r, d, false) {
            prop_assert_eq!(i64::from(t.sum()) % 2, d % 2);
        }
    }
}

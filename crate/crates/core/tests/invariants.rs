//! Property suites for the algebra layers: derivative commutation, the
//! alternating determinant, evaluation commuting with determinants and
//! minors, Hessian shape invariants, and the Hilbert-fit stability checks.

use hessloci::hessian::{self, NamedCubic};
use hessloci::hilbert::{self, GradedIdeal};
use hessloci::polycore::{poly_parse, Field, Gf, Monomial, PolyMatrix, Polynomial, Rat};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(p: u64) -> Gf {
    Gf::new(p).unwrap()
}

fn arb_poly(nvars: usize, max_deg: u16, p: u64) -> impl Strategy<Value = Polynomial<Gf>> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_deg, nvars),
            1..p,
        ),
        0..12,
    )
    .prop_map(move |terms| {
        let field = gf(p);
        Polynomial::from_terms(
            field,
            nvars,
            terms.into_iter().map(|(e, c)| (Monomial::new(e), c)),
        )
    })
}

fn arb_linear(nvars: usize, p: u64) -> impl Strategy<Value = Polynomial<Gf>> {
    prop::collection::vec(0..p, nvars).prop_map(move |coeffs| {
        let field = gf(p);
        Polynomial::from_terms(
            field,
            nvars,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(i, nvars), c)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partials_commute(f in arb_poly(4, 5, 101), i in 0usize..4, j in 0usize..4) {
        let a = f.diff(i).unwrap().diff(j).unwrap();
        let b = f.diff(j).unwrap().diff(i).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn det_is_alternating(grid in prop::collection::vec(arb_linear(4, 101), 16), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let m = PolyMatrix::new(4, grid.clone()).unwrap();
        let d = m.det().unwrap();
        // swapping two rows negates the determinant
        let mut swapped = grid.clone();
        for c in 0..4 {
            swapped.swap(i * 4 + c, j * 4 + c);
        }
        let ms = PolyMatrix::new(4, swapped).unwrap();
        prop_assert_eq!(ms.det().unwrap(), d.neg());
        // equal rows give zero
        let mut dup = grid;
        for c in 0..4 {
            dup[i * 4 + c] = dup[j * 4 + c].clone();
        }
        let md = PolyMatrix::new(4, dup).unwrap();
        prop_assert!(md.det().unwrap().is_zero());
    }
}

#[test]
fn evaluation_commutes_with_det_and_minors() {
    for p in [11u64, 31] {
        let field = gf(p);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let f = hessian::random_cubic(3, field, &mut rng);
        let data = hessian::hessian_data(&f);
        let order = 3;
        let minors = data.matrix.minors(order, false).unwrap();
        for _ in 0..50 {
            let pt: Vec<u64> = (0..4).map(|_| rng.gen_range(0..p)).collect();
            let det_eval = data.hess.eval(&pt).unwrap();
            let rows: Vec<Vec<u64>> = (0..4)
                .map(|i| (0..4).map(|j| data.matrix.entry(i, j).eval(&pt).unwrap()).collect())
                .collect();
            assert_eq!(det_eval, det_of_scalars(&rows, field));
            // minor polynomials evaluate to the determinants of the evaluated
            // submatrices, in the same row/column-set order
            let sets: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
            let mut idx = 0;
            for rs in &sets {
                for cs in &sets {
                    let sub: Vec<Vec<u64>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| rows[i][j]).collect())
                        .collect();
                    assert_eq!(minors[idx].eval(&pt).unwrap(), det_of_scalars(&sub, field));
                    idx += 1;
                }
            }
        }
    }
}

#[test]
fn triple_directional_is_six_times_value() {
    // for a cubic, applying the direction operator three times gives 6 f(v)
    let field = gf(31);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=4usize {
        for _ in 0..20 {
            let f = hessian::random_cubic(n, field, &mut rng);
            let v: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..31)).collect();
            let second = hessian::directional(f.poly(), &v, 2).unwrap();
            let third = hessian::directional(&second, &v, 1).unwrap();
            let zero = vec![0u64; n + 1];
            let lhs = third.eval(&zero).unwrap();
            let rhs = field.mul(&6, &f.poly().eval(&v).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn klein_identities_hundred_pairs() {
    let field = gf(31);
    let f = hessian::named_cubic(NamedCubic::Klein6, 5, field).unwrap();
    let matrix = hessian::hessian_matrix(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    for _ in 0..100 {
        let v: Vec<u64> = (0..6).map(|_| rng.gen_range(0..31)).collect();
        let w: Vec<u64> = (0..6).map(|_| rng.gen_range(0..31)).collect();
        assert!(hessian::hessian_identities_with(&matrix, &f, &v, &w).all_pass());
    }
}

fn det_of_scalars(rows: &[Vec<u64>], field: Gf) -> u64 {
    let n = rows.len();
    let entries: Vec<Polynomial<Gf>> = rows
        .iter()
        .flatten()
        .map(|&v| Polynomial::constant(field, 1, v))
        .collect();
    let m = PolyMatrix::new(n, entries).unwrap();
    let d = m.det().unwrap();
    d.eval(&[0]).unwrap()
}

#[test]
fn hessian_shape_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=5usize {
        let field = gf(31);
        for _ in 0..5 {
            let f = hessian::random_cubic(n, field, &mut rng);
            let data = hessian::hessian_data(&f);
            assert!(data.matrix.is_symmetric());
            for i in 0..=n {
                for j in 0..=n {
                    let e = data.matrix.entry(i, j);
                    assert!(e.is_zero() || e.homogeneous_degree() == Some(1));
                }
            }
            if !data.hess.is_zero() {
                assert_eq!(data.hess.homogeneous_degree(), Some(n + 1));
            }
        }
    }
}

#[test]
fn euler_identity_battery_300() {
    let field = gf(32003);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut count = 0;
    while count < 300 {
        let n = 2 + (count % 3);
        let deg = 2 + (count % 3);
        let terms: Vec<_> = hessloci::polycore::monomials_of_degree(n + 1, deg)
            .into_iter()
            .map(|m| (m, rng.gen_range(0..32003u64)))
            .collect();
        let g = Polynomial::from_terms(field, n + 1, terms);
        let v: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..32003)).collect();
        assert!(hessian::euler_identity_check(&g, &v).unwrap());
        count += 1;
    }
}

#[test]
fn hessian_identities_thousand_triples() {
    let mut checked = 0;
    for p in [11u64, 31] {
        let field = gf(p);
        let mut rng = ChaCha8Rng::seed_from_u64(p * 31);
        for n in 2..=5usize {
            for _ in 0..125 {
                let f = hessian::random_cubic(n, field, &mut rng);
                let v: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..p)).collect();
                let w: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..p)).collect();
                assert!(hessian::check_hessian_identities(&f, &v, &w).all_pass());
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 1000);
}

#[test]
fn flat_family_window_constancy() {
    // the degree-5 graded pieces of the order-5 minor ideal agree with the
    // Klein values for seeded fourfolds with nonzero hessian
    let g = gf(32003);
    let klein = hessian::named_cubic(NamedCubic::Klein6, 5, g).unwrap();
    let reference = hilbert::hf_window(&GradedIdeal::minor_ideal(&klein, 5), 0, 5);
    for seed in 0..5u64 {
        let f = hessian::random_filtered_integer_cubic(5, seed, &[11]).unwrap();
        let fp = f.reduce_mod(g).unwrap();
        let w = hilbert::hf_window(&GradedIdeal::minor_ideal(&fp, 5), 0, 5);
        assert_eq!(w.values, reference.values, "seed {seed}");
    }
}

#[test]
fn fit_stability_under_window_extension() {
    let f = hessian::random_filtered_integer_cubic(3, 1, &[11, 31]).unwrap();
    let fp = f.reduce_mod(gf(32003)).unwrap();
    let ideal = GradedIdeal::minor_ideal(&fp, 3);
    let w1 = hilbert::hf_window(&ideal, 8, 12);
    let w2 = hilbert::hf_window(&ideal, 8, 14);
    let f1 = hilbert::fit_hilbert_polynomial(&w1, 0).unwrap();
    let f2 = hilbert::fit_hilbert_polynomial(&w2, 0).unwrap();
    assert_eq!(f1.coeffs, f2.coeffs);
}

#[test]
fn hf_monotone_under_more_generators() {
    let g = gf(32003);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let mk = |rng: &mut ChaCha8Rng| {
            let terms: Vec<_> = hessloci::polycore::monomials_of_degree(3, 2)
                .into_iter()
                .map(|m| (m, rng.gen_range(0..32003u64)))
                .collect();
            Polynomial::from_terms(g, 3, terms)
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let small = GradedIdeal::new(g, 3, vec![a.clone()]).unwrap();
        let big = GradedIdeal::new(g, 3, vec![a, b]).unwrap();
        for d in 0..7 {
            assert!(hilbert::hf_value(&big, d) <= hilbert::hf_value(&small, d));
        }
    }
}

#[test]
fn proportionality_is_a_scalar_test() {
    // scalar comparison distinguishes proportional from merely similar
    let p = poly_parse("3*x0^2*x1 - 6*x1^3", 2, Rat).unwrap();
    let q = poly_parse("x0^2*x1 - 2*x1^3", 2, Rat).unwrap();
    let r = poly_parse("x0^2*x1 - 3*x1^3", 2, Rat).unwrap();
    assert_eq!(p.proportionality(&q).unwrap(), Rat.from_int(3));
    assert!(p.proportionality(&r).is_none());
}

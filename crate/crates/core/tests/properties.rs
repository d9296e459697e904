use proptest::prelude::*;

use quiverforge::family::{
    build_family, prime_root_rep, recognize_e, rewrite_to_star, sigma_zeta, word_of, EElement, FamilyParams,
};
use quiverforge::functor::{collapse, dual, insert_image_vertex, sigma, sigma_bar};
use quiverforge::io::{rep_from_json, rep_to_json};
use quiverforge::linalg::{image_complement, kernel_basis, rank, solve};
use quiverforge::quiver::{apply_word, reflect, ringel_form, sym_form};
use quiverforge::rep::{
    delta_matrix, direct_sum, ext_dim, hom_basis, hom_dim, is_indecomposable_oracle, simple_rep, split_by_idempotent,
    Verdict,
};
use quiverforge::tree::{coefficient_quiver, is_tree, nonzero_count};
use quiverforge::{DimVector, Field, Mat, Quiver, Representation, WeylWord};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(5))]
}

fn matrix(field: Field, max: usize) -> impl Strategy<Value = Mat> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-2i64..=2, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c.max(1)).take(r).map(|ch| ch.to_vec()).collect();
            if c == 0 {
                Mat::zeros(field, r, 0)
            } else {
                Mat::from_i64_rows(field, r, c, &rows)
            }
        })
    })
}

fn params() -> impl Strategy<Value = FamilyParams> {
    (1usize..=3, 1usize..=2, 1usize..=2).prop_map(|(f, g, h)| FamilyParams::new(f, g, h).unwrap())
}

fn rep_on(q: Quiver, field: Field, max_dim: usize) -> impl Strategy<Value = Representation> {
    let n = q.vertex_count();
    prop::collection::vec(0..=max_dim, n).prop_flat_map(move |dims| {
        let q = q.clone();
        let sizes: Vec<usize> = q.arrows().iter().map(|a| dims[a.head] * dims[a.tail]).collect();
        let total: usize = sizes.iter().sum();
        prop::collection::vec(-1i64..=1, total).prop_map(move |entries| {
            let mut at = 0;
            let mats = q
                .arrows()
                .iter()
                .map(|a| {
                    let (r, c) = (dims[a.head], dims[a.tail]);
                    let rows: Vec<Vec<i64>> = (0..r).map(|i| entries[at + i * c..at + (i + 1) * c].to_vec()).collect();
                    at += r * c;
                    Mat::from_i64_rows(field, r, c, &rows)
                })
                .collect();
            Representation::new(q.clone(), field, dims.clone(), mats).unwrap()
        })
    })
}

fn family_rep(field: Field, max_dim: usize) -> impl Strategy<Value = Representation> {
    params().prop_flat_map(move |p| rep_on(build_family(p), field, max_dim))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_and_rank((field, m) in fields().prop_flat_map(|f| (Just(f), matrix(f, 5)))) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.cols() + rank(&m), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(rank(&k), k.cols());
        let comp = image_complement(&m, m.rows());
        let joined = Mat::hstack(field, m.rows(), &[&m, &comp]);
        prop_assert_eq!(rank(&joined), m.rows());
        prop_assert_eq!(comp.cols(), m.rows() - rank(&m));
    }

    #[test]
    fn inverse_and_solve((field, m) in fields().prop_flat_map(|f| (Just(f), matrix(f, 4)))) {
        if m.is_square() {
            match m.inverse() {
                Some(inv) => prop_assert_eq!(m.mul(&inv), Mat::identity(field, m.rows())),
                None => prop_assert!(rank(&m) < m.rows()),
            }
        }
        let b = m.mul(&Mat::identity(field, m.cols()));
        let x = solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul(&x), b);
    }

    #[test]
    fn euler_identity((x, y) in fields().prop_flat_map(|f| params().prop_flat_map(move |p| {
        let q = build_family(p);
        (rep_on(q.clone(), f, 3), rep_on(q, f, 3))
    }))) {
        let h = hom_dim(&x, &y).unwrap() as i64;
        let e = ext_dim(&x, &y).unwrap() as i64;
        prop_assert_eq!(h - e, ringel_form(x.quiver(), &x.dim_vector(), &y.dim_vector()).unwrap());
    }

    #[test]
    fn hom_basis_lies_in_delta_kernel((x, y) in params().prop_flat_map(|p| {
        let q = build_family(p);
        (rep_on(q.clone(), Field::Rational, 3), rep_on(q, Field::Rational, 3))
    })) {
        let d = delta_matrix(&x, &y).unwrap();
        let space = hom_basis(&x, &y).unwrap();
        for phi in &space.basis {
            prop_assert!(phi.is_morphism(&x, &y));
            let v = Mat::column_vector(Field::Rational, phi.flatten());
            prop_assert!(d.mul(&v).is_zero());
        }
    }

    #[test]
    fn hom_is_additive((x, y, z) in params().prop_flat_map(|p| {
        let q = build_family(p);
        (rep_on(q.clone(), Field::Prime(3), 2), rep_on(q.clone(), Field::Prime(3), 2), rep_on(q, Field::Prime(3), 2))
    })) {
        let s = direct_sum(&x, &y).unwrap();
        prop_assert_eq!(hom_dim(&s, &z).unwrap(), hom_dim(&x, &z).unwrap() + hom_dim(&y, &z).unwrap());
        prop_assert_eq!(ext_dim(&z, &s).unwrap(), ext_dim(&z, &x).unwrap() + ext_dim(&z, &y).unwrap());
    }

    #[test]
    fn dual_swaps_hom(x in family_rep(Field::Rational, 3), y in family_rep(Field::Rational, 3)) {
        if x.quiver() == y.quiver() {
            prop_assert_eq!(hom_dim(&x, &y).unwrap(), hom_dim(&dual(&y), &dual(&x)).unwrap());
        }
    }

    #[test]
    fn oracle_splits_direct_sums(x in family_rep(Field::Prime(2), 1)) {
        prop_assume!(x.total_dim() > 0);
        let sum = direct_sum(&x, &x).unwrap();
        let out = is_indecomposable_oracle(&sum, 1 << 12).unwrap();
        prop_assume!(out.verdict != Verdict::Inconclusive);
        prop_assert_eq!(out.verdict, Verdict::Decomposable);
        let (a, b) = split_by_idempotent(&sum, out.idempotent.as_ref().unwrap()).unwrap();
        prop_assert!(a.total_dim() > 0 && b.total_dim() > 0);
        prop_assert_eq!(a.dim_vector().add(&b.dim_vector()), sum.dim_vector());
    }

    #[test]
    fn insert_then_collapse(x in family_rep(Field::Rational, 3), i in 0usize..3, mask in 0u32..8) {
        let q = x.quiver();
        let subset: Vec<usize> = q.incoming(i).into_iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, a)| a).collect();
        let ins = insert_image_vertex(&x, i, &subset).unwrap();
        prop_assert_eq!(collapse(&ins.new_rep, &ins).unwrap(), x);
    }

    #[test]
    fn coefficient_quiver_counts(x in family_rep(Field::Prime(3), 3)) {
        let c = coefficient_quiver(&x);
        prop_assert_eq!(c.nodes.len(), x.total_dim());
        prop_assert_eq!(c.edges.len(), nonzero_count(&x));
        if is_tree(&c) {
            prop_assert_eq!(c.edges.len() + 1, c.nodes.len());
        }
    }

    #[test]
    fn json_roundtrip(x in fields().prop_flat_map(|f| family_rep(f, 3))) {
        prop_assert_eq!(rep_from_json(&rep_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn reflections_are_involutions(p in params(), coords in prop::collection::vec(-4i64..=6, 3), i in 0usize..3) {
        let q = build_family(p);
        let a = DimVector::new(coords);
        let r = reflect(&q, i, &a).unwrap();
        prop_assert_eq!(reflect(&q, i, &r).unwrap(), a.clone());
        prop_assert_eq!(sym_form(&q, &r, &r).unwrap(), sym_form(&q, &a, &a).unwrap());
    }

    #[test]
    fn star_form_preserves_the_word(p in params(), letters in prop::collection::vec(0usize..3, 1..=12)) {
        let w = WeylWord(letters);
        if let Ok(star) = rewrite_to_star(&w, p) {
            star.check_grammar(p).unwrap();
            let q = build_family(p);
            let flat = star.flatten();
            for i in 0..3 {
                let e = DimVector::unit(3, i);
                prop_assert_eq!(apply_word(&q, &w, &e).unwrap(), apply_word(&q, &flat, &e).unwrap());
            }
        }
    }

    #[test]
    fn e_words_are_recognized(first in 0usize..2, len in 0usize..9) {
        let letters: Vec<usize> = (0..len).map(|k| if k % 2 == 0 { first } else { 1 - first }).collect();
        let e = recognize_e(&letters).unwrap();
        prop_assert_eq!(word_of(e).0, letters);
    }
}

// Sigma along a zeta element agrees with the zeta element's action on e3, and
// the underlying sigma-bar never adds more coefficients than basis vectors.
#[test]
fn sigma_zeta_matches_word_action() {
    for (f, g, h) in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 1, 2)] {
        let p = FamilyParams::new(f, g, h).unwrap();
        let q = build_family(p);
        let s3 = simple_rep(&q, Field::Rational, 2).unwrap();
        let max_n = [1, 3, 2][f - 1];
        for (i, n) in (0..=max_n).flat_map(|n| [(1, n), (2, n)]) {
            let Ok(chi) = sigma_zeta(i, n, p) else {
                assert!(i == 1 && n == 0);
                continue;
            };
            let s = prime_root_rep(p, Field::Rational, &chi).unwrap();
            let zeta = if i == 1 { EElement::zeta1(n) } else { EElement::zeta2(n) };
            let expected = apply_word(&q, &word_of(zeta), &DimVector::unit(3, 2)).unwrap();
            let y = sigma(&s, &s3).unwrap();
            assert_eq!(y.dim_vector(), expected, "{p} zeta{i}({n})");
            let bar = sigma_bar(&s, &s3).unwrap();
            assert!(is_tree(&coefficient_quiver(&bar)), "{p} zeta{i}({n})");
        }
    }
}

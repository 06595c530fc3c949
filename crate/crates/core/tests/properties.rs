use arithchar::arakelov::{arithmetic_degree, arithmetic_degree_with_section, product_formula_residual};
use arithchar::charmorph::{
    chi_gl, chi_torus, elementary_from_power_sums, fundamental_invariants, power_sums_from_elementary, CharType,
};
use arithchar::chevalley::IntegralLieAlgebra;
use arithchar::curve::{spectral_curve, HiggsField};
use arithchar::scalar::{as_integer, q, qi};
use arithchar::torsor::{
    act, canonical_form, join_metric, split_metric, verify_compatibility, ArithmeticTorsor, CMatrix, CompatibleMetric,
    Place,
};
use arithchar::{
    CartanType, FieldElem, FractionalIdeal, Matrix, MetrizedLineBundle, NumberField, QMatrix, Rational, RootSystem,
};
use num_traits::Zero;
use proptest::prelude::*;

fn supported() -> impl Strategy<Value = CartanType> {
    prop::sample::select(CartanType::all_supported())
}

fn fields() -> impl Strategy<Value = NumberField> {
    prop::sample::select(vec![1i64, 2, -1, -5, 5, -3]).prop_map(|d| {
        if d == 1 {
            NumberField::rationals()
        } else {
            NumberField::quadratic(d).unwrap()
        }
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(a, b)| q(a, b))
}

fn elem(field: NumberField) -> impl Strategy<Value = FieldElem> {
    (rational(), rational()).prop_map(
        move |(a, b)| {
            if field.is_rational() {
                field.from_rational(a)
            } else {
                field.elem(a, b)
            }
        },
    )
}

fn nonzero_elem(field: NumberField) -> impl Strategy<Value = FieldElem> {
    elem(field).prop_filter("nonzero", |x| !x.is_zero())
}

fn int_matrix(n: usize, bound: i64) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-bound..=bound, n * n).prop_map(move |v| QMatrix::from_fn(n, n, |i, j| qi(v[i * n + j])))
}

fn invertible_int_matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    int_matrix(n, 3).prop_filter("invertible", |g| !g.determinant().unwrap().is_zero())
}

/// Products of elementary matrices: `GL_n(ℤ)`.
fn unimodular(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        ops.into_iter().fold(QMatrix::identity(n), |acc, (i, j, c)| {
            if i == j {
                return acc;
            }
            let mut e = QMatrix::identity(n);
            e[(i, j)] = qi(c);
            acc.mul(&e)
        })
    })
}

fn real_gl(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(-0.7f64..0.7, n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j] + if i == j { 1.0 } else { 0.0 }))
        .prop_filter("well conditioned", |g| g.determinant().unwrap().abs() > 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_group_preserves_roots_and_form(t in supported(), seed in any::<prop::sample::Index>()) {
        let rs = RootSystem::build(t);
        let group = rs.weyl_group();
        let w = &group[seed.index(group.len())];
        for u in rs.roots() {
            let wu = rs.weyl_apply(w, u);
            prop_assert!(rs.index_of(&wu).is_some());
            for v in rs.roots().iter().take(6) {
                prop_assert_eq!(rs.inner(&wu, &rs.weyl_apply(w, v)), rs.inner(u, v));
            }
        }
    }

    #[test]
    fn root_strings_match_cartan_integers(t in supported(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let rs = RootSystem::build(t);
        let (alpha, beta) = (rs.root(a.index(rs.len())).clone(), rs.root(b.index(rs.len())).clone());
        prop_assume!(alpha != beta && alpha != beta.neg());
        let (l, k) = rs.root_string(&alpha, &beta).unwrap();
        prop_assert_eq!(l as i64 - k as i64, rs.cartan_integer(&beta, &alpha).unwrap());
    }

    #[test]
    fn structure_constants_flip_sign_under_negation(t in supported(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let rs = RootSystem::build(t);
        let lie = IntegralLieAlgebra::build(&rs, 0);
        let (i, j) = (a.index(rs.len()), b.index(rs.len()));
        let c = lie.structure_constant(i, j);
        let c_neg = lie.structure_constant(rs.negative_index(i), rs.negative_index(j));
        prop_assert_eq!(c_neg, -c);
        prop_assert_eq!(lie.structure_constant(j, i), -c);
    }

    #[test]
    fn chi_is_conjugation_invariant(
        (a, g) in (2usize..=4).prop_flat_map(|n| (int_matrix(n, 5), invertible_int_matrix(n)))
    ) {
        let conj = g.mul(&a).mul(&g.inverse().unwrap());
        prop_assert_eq!(chi_gl(&conj).unwrap(), chi_gl(&a).unwrap());
    }

    #[test]
    fn integer_matrices_have_integer_invariants(a in int_matrix(3, 9)) {
        for v in chi_gl(&a).unwrap().values {
            prop_assert!(as_integer(&v).is_some());
        }
    }

    #[test]
    fn weyl_orbits_share_a_char_point(t in supported(), pt in prop::collection::vec(-6i64..=6, 5), w in any::<prop::sample::Index>()) {
        let ct = CharType::Cartan(t);
        let n = ct.nvars();
        let mut p: Vec<Rational> = pt[..n].iter().map(|&x| qi(x)).collect();
        if matches!(t.family(), arithchar::rootsys::Family::A | arithchar::rootsys::Family::G) {
            let s = p[..n - 1].iter().fold(Rational::zero(), |a, b| a + b);
            p[n - 1] = -s;
        }
        let mats = ct.weyl_matrices();
        let moved = mats[w.index(mats.len())].mul_vec(&p);
        prop_assert_eq!(chi_torus(&ct, &moved).unwrap(), chi_torus(&ct, &p).unwrap());
        prop_assert_eq!(fundamental_invariants(&ct).len(), t.rank());
    }

    #[test]
    fn newton_identities_round_trip(e in prop::collection::vec(rational(), 1..6)) {
        prop_assert_eq!(elementary_from_power_sums(&power_sums_from_elementary(&e)), e);
    }

    #[test]
    fn product_formula_holds((field, x) in fields().prop_flat_map(|f| (Just(f), nonzero_elem(f)))) {
        prop_assert!(product_formula_residual(&field, &x).unwrap().abs() < 1e-9);
    }

    #[test]
    fn ideal_norm_is_multiplicative(
        (field, xs, ys) in fields().prop_flat_map(|f| (Just(f), prop::collection::vec(nonzero_elem(f), 1..3), prop::collection::vec(nonzero_elem(f), 1..3)))
    ) {
        let i = FractionalIdeal::from_generators(field, &xs).unwrap();
        let j = FractionalIdeal::from_generators(field, &ys).unwrap();
        prop_assert_eq!(i.mul(&j).unwrap().norm(), i.norm() * j.norm());
        prop_assert_eq!(i.mul(&j).unwrap(), j.mul(&i).unwrap());
    }

    #[test]
    fn degree_is_section_independent_and_additive(
        (field, xs, ys, s1, s2, m1, m2) in fields().prop_flat_map(|f| (
            Just(f),
            prop::collection::vec(nonzero_elem(f), 1..3),
            prop::collection::vec(nonzero_elem(f), 1..3),
            nonzero_elem(f),
            nonzero_elem(f),
            prop::collection::vec(0.1f64..10.0, 2),
            prop::collection::vec(0.1f64..10.0, 2),
        ))
    ) {
        let places = field.num_places();
        let l1 = MetrizedLineBundle::new(FractionalIdeal::from_generators(field, &xs).unwrap(), m1[..places].to_vec()).unwrap();
        let l2 = MetrizedLineBundle::new(FractionalIdeal::from_generators(field, &ys).unwrap(), m2[..places].to_vec()).unwrap();
        let d1 = arithmetic_degree(&field, &l1);
        // any other nonzero element of the ideal gives the same degree
        let other = l1.ideal.some_element() * s1.clone() * s1.clone();
        if l1.ideal.contains(&other) {
            let d = arithmetic_degree_with_section(&field, &l1, &other).unwrap();
            prop_assert!((d - d1).abs() < 1e-9);
        }
        let d2 = arithmetic_degree(&field, &l2);
        let d12 = arithmetic_degree(&field, &l1.tensor(&l2).unwrap());
        prop_assert!((d12 - d1 - d2).abs() < 1e-9);
        // trivialized principal bundle: xO_F with ρ_σ = 1/|σx|
        let principal = FractionalIdeal::principal(field, &s2).unwrap();
        let rho: Vec<f64> = field.abs_at_places(&s2).iter().map(|v| 1.0 / v).collect();
        let trivial = MetrizedLineBundle::new(principal, rho).unwrap();
        prop_assert!(arithmetic_degree(&field, &trivial).abs() < 1e-9);
    }

    #[test]
    fn witnessed_metrics_are_compatible(n in 2usize..=3, g in real_gl(3)) {
        let g = Matrix::from_fn(n, n, |i, j| g[(i, j)]);
        let cd = canonical_form::<f64>(n, Place::Real).unwrap();
        let h = CompatibleMetric::from_witness(&cd, &CMatrix::real(g)).unwrap();
        prop_assert!(verify_compatibility(&cd, &h.h).unwrap().passed);
        let (ss, c) = split_metric(&cd, &h.h).unwrap();
        prop_assert!(join_metric(&cd, &ss, &c).unwrap().max_abs_diff(&h.h) < 1e-9 * h.h.max_abs().max(1.0));
    }

    #[test]
    fn action_is_a_right_action(g1 in real_gl(2), g2 in real_gl(2)) {
        let cd = canonical_form::<f64>(2, Place::Real).unwrap();
        let h0 = CompatibleMetric::canonical(&cd);
        let stepwise = act(&cd, &CMatrix::real(g2.clone()), &act(&cd, &CMatrix::real(g1.clone()), &h0).unwrap()).unwrap();
        let at_once = act(&cd, &CMatrix::real(g1.mul(&g2)), &h0).unwrap();
        prop_assert!(stepwise.h.max_abs_diff(&at_once.h) < 1e-9 * at_once.h.max_abs().max(1.0));
    }

    #[test]
    fn slope_is_additive(
        (field, gens, k1, k2, scale) in fields().prop_flat_map(|f| (
            Just(f), prop::collection::vec(nonzero_elem(f), 2), -5i64..=5, -5i64..=5, 0.2f64..5.0
        ))
    ) {
        let ideals: Vec<FractionalIdeal> = gens.iter().map(|x| FractionalIdeal::principal(field, x).unwrap()).collect();
        let gram = Matrix::from_rows(vec![vec![scale, 0.1], vec![0.1, 1.0]]).unwrap();
        let t = ArithmeticTorsor::new(field, ideals, vec![gram; field.num_places()]).unwrap();
        let lhs = t.slope(k1 + k2).unwrap();
        prop_assert!((lhs - t.slope(k1).unwrap() - t.slope(k2).unwrap()).abs() < 1e-9 * lhs.abs().max(1.0));
    }

    #[test]
    fn spectral_curve_is_conjugation_invariant(a in int_matrix(3, 6), g in unimodular(3)) {
        let conj = g.mul(&a).mul(&g.inverse().unwrap());
        let c1 = spectral_curve(&HiggsField::from_rational_matrix(&a).unwrap()).unwrap();
        let c2 = spectral_curve(&HiggsField::from_rational_matrix(&conj).unwrap()).unwrap();
        prop_assert_eq!(c1.poly, c2.poly);
        prop_assert_eq!(c1.discriminant, c2.discriminant);
    }

    #[test]
    fn fiber_degrees_are_conserved(
        (field, entries) in prop::sample::select(vec![1i64, -1, 2, -5]).prop_flat_map(|d| {
            let f = if d == 1 { NumberField::rationals() } else { NumberField::quadratic(d).unwrap() };
            (Just(f), prop::collection::vec((-4i64..=4, -4i64..=4), 4))
        }),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
    ) {
        let m = Matrix::from_fn(2, 2, |i, j| {
            let (a, b) = entries[i * 2 + j];
            if field.is_rational() { field.from_int(a) } else { field.elem(qi(a), qi(b)) }
        });
        let curve = spectral_curve(&HiggsField::untwisted(field, m).unwrap()).unwrap();
        prop_assume!(!curve.degenerate);
        let total: usize = curve.fiber(p).unwrap().iter().map(|(f, e)| f * e).sum();
        prop_assert_eq!(total, 2 * field.degree());
    }

    #[test]
    fn cameral_points_are_orderings_of_spectral_roots(roots in prop::collection::vec(-5i64..=5, 3)) {
        let d: Vec<Rational> = roots.iter().map(|&r| qi(r)).collect();
        let curve = spectral_curve(&HiggsField::from_rational_matrix(&QMatrix::diagonal(&d)).unwrap()).unwrap();
        let mut sorted = d.clone();
        sorted.sort();
        for pt in curve.rational_cameral_points().unwrap() {
            let mut s = pt.clone();
            s.sort();
            prop_assert_eq!(&s, &sorted);
        }
    }
}

use proptest::prelude::*;
use quartica_core::geometry::{cross_ratio, dual_line, dual_point, join, line_census, ProjLine, ProjPoint};
use quartica_core::poly::{uni_resultant, MultiPoly, UniPoly, Var};
use quartica_core::{Error, FieldElement, Rational, Tower, TowerBuilder, TowerRef};

fn eighth() -> TowerRef {
    TowerBuilder::new()
        .adjoin_int("i", -1)
        .and_then(|b| b.adjoin_int("r2", 2))
        .and_then(|b| b.adjoin_root_of("q2", "r2"))
        .expect("valid tower")
        .build()
}

fn gauss() -> TowerRef {
    TowerBuilder::new().adjoin_int("i", -1).expect("valid tower").build()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| Rational::new(n, d))
}

fn coords(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

fn element(t: &TowerRef, c: Vec<Rational>) -> FieldElement {
    FieldElement::from_coords(t, c).expect("coordinate count")
}

fn uni(t: &TowerRef, cs: &[Vec<Rational>]) -> Vec<FieldElement> {
    cs.iter().map(|c| element(t, c.clone())).collect()
}

fn point(t: &TowerRef, c: &[Vec<Rational>]) -> Option<ProjPoint> {
    ProjPoint::new([element(t, c[0].clone()), element(t, c[1].clone()), element(t, c[2].clone())]).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(r) = a.recip() {
            prop_assert!((&a * &r).is_one());
        }
    }

    #[test]
    fn tower_arithmetic(a in coords(8), b in coords(8), c in coords(8)) {
        let t = eighth();
        let (a, b, c) = (element(&t, a), element(&t, b), element(&t, c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn square_roots_are_sound(a in coords(8)) {
        let t = eighth();
        let a = element(&t, a);
        let sq = &a * &a;
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
        match a.sqrt() {
            Ok(r) => prop_assert_eq!(&r * &r, a),
            Err(e) => prop_assert_eq!(e, Error::NotASquare),
        }
    }

    #[test]
    fn embedding_is_a_ring_map(a in coords(8), b in coords(8)) {
        let t = eighth();
        let (a, b) = (element(&t, a), element(&t, b));
        let scale = 1.0 + a.embed().norm() * b.embed().norm();
        prop_assert!(((&a * &b).embed() - a.embed() * b.embed()).norm() < 1e-9 * scale);
        prop_assert!(((&a + &b).embed() - (a.embed() + b.embed())).norm() < 1e-9 * scale);
    }

    #[test]
    fn lifting_commutes_with_arithmetic(a in coords(2), b in coords(2)) {
        let (small, big) = (gauss(), eighth());
        let (a, b) = (element(&small, a), element(&small, b));
        let lifted = (&a * &b).lift_to(&big).unwrap();
        prop_assert_eq!(lifted, &a.lift_to(&big).unwrap() * &b.lift_to(&big).unwrap());
    }

    #[test]
    fn polynomial_evaluation_is_multiplicative(
        p in prop::collection::vec((0u32..3, 0u32..3, coords(2)), 1..6),
        q in prop::collection::vec((0u32..3, 0u32..3, coords(2)), 1..6),
        pt in prop::collection::vec(coords(2), 3),
    ) {
        let t = gauss();
        let build = |terms: &[(u32, u32, Vec<Rational>)]| {
            MultiPoly::from_terms(&t, terms.iter().map(|(a, b, c)| ([*a, *b, 0], element(&t, c.clone()))))
        };
        let (p, q) = (build(&p), build(&q));
        let pt = [element(&t, pt[0].clone()), element(&t, pt[1].clone()), element(&t, pt[2].clone())];
        prop_assert_eq!((&p * &q).eval(&pt).unwrap(), &p.eval(&pt).unwrap() * &q.eval(&pt).unwrap());
        prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &p.eval(&pt).unwrap() + &q.eval(&pt).unwrap());
        let dp = p.partial(Var::X);
        prop_assert!(dp.is_zero() || dp.degree_in(Var::X) + 1 == p.degree_in(Var::X));
    }

    #[test]
    fn division_with_remainder(f in prop::collection::vec(coords(2), 1..7), d in prop::collection::vec(coords(2), 1..4)) {
        let t = gauss();
        let f = UniPoly::new(&t, uni(&t, &f));
        let d = UniPoly::new(&t, uni(&t, &d));
        prop_assume!(!d.is_zero());
        let (q, r) = f.divrem(&d);
        prop_assert_eq!(&(&q * &d) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn squarefree_decomposition_reassembles(roots in prop::collection::vec((-4i64..=4, 1u32..=3), 1..4)) {
        let t = Tower::rationals();
        let mut f = UniPoly::from_ints(&t, &[1]);
        for (r, m) in &roots {
            f = &f * &UniPoly::linear_root(&FieldElement::from_int(&t, *r)).pow(*m);
        }
        let mut g = UniPoly::from_ints(&t, &[1]);
        for (h, m) in f.squarefree() {
            prop_assert_eq!(h.gcd(&h.derivative()).degree(), Some(0));
            g = &g * &h.pow(m);
        }
        prop_assert_eq!(g, f.monic());
    }

    #[test]
    fn resultants(
        a in coords(2), b in coords(2),
        f in prop::collection::vec(coords(2), 2..4),
        g in prop::collection::vec(coords(2), 2..4),
        h in prop::collection::vec(coords(2), 2..4),
    ) {
        let t = gauss();
        let one = FieldElement::one(&t);
        let (a, b) = (element(&t, a), element(&t, b));
        let r = uni_resultant(&[-&a, one.clone()], &[-&b, one], &t);
        prop_assert_eq!(r, &a - &b);
        let (f, g, h) = (uni(&t, &f), uni(&t, &g), uni(&t, &h));
        prop_assume!(!f.last().unwrap().is_zero() && !g.last().unwrap().is_zero() && !h.last().unwrap().is_zero());
        let fg = (&UniPoly::new(&t, f.clone()) * &UniPoly::new(&t, g.clone())).coeffs().to_vec();
        prop_assert_eq!(uni_resultant(&fg, &h, &t), &uni_resultant(&f, &h, &t) * &uni_resultant(&g, &h, &t));
    }

    #[test]
    fn duality_and_incidence(p in prop::collection::vec(coords(2), 3), q in prop::collection::vec(coords(2), 3)) {
        let t = gauss();
        let (Some(p), Some(q)) = (point(&t, &p), point(&t, &q)) else { return Ok(()) };
        prop_assert_eq!(dual_point(&dual_line(&p)), p.clone());
        if let Ok(l) = join(&p, &q) {
            prop_assert!(p.lies_on(&l) && q.lies_on(&l));
            prop_assert!(dual_point(&l).lies_on(&dual_line(&q)));
        }
    }

    #[test]
    fn cross_ratio_swaps(a in prop::collection::vec(coords(2), 3), b in prop::collection::vec(coords(2), 3), ls in prop::collection::btree_set(-20i64..=20, 4)) {
        let t = gauss();
        let (Some(a), Some(b)) = (point(&t, &a), point(&t, &b)) else { return Ok(()) };
        prop_assume!(a != b);
        let pts: Vec<ProjPoint> = ls
            .iter()
            .map(|&l| {
                let l = FieldElement::from_int(&t, l);
                ProjPoint::new([0, 1, 2].map(|k| &a.coords()[k] + &(&b.coords()[k] * &l))).unwrap()
            })
            .collect();
        let cr = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let swapped = cross_ratio(&pts[1], &pts[0], &pts[2], &pts[3]).unwrap();
        prop_assert!((&cr * &swapped).is_one());
        let reflected = cross_ratio(&pts[0], &pts[2], &pts[1], &pts[3]).unwrap();
        prop_assert!((&cr + &reflected).is_one());
    }

    #[test]
    fn line_arrangements_satisfy_bezout(ls in prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 2..9)) {
        let t = Tower::rationals();
        let lines: Vec<ProjLine> = ls.iter().filter_map(|&(a, b, c)| ProjLine::from_ints(&t, [a, b, c]).ok()).collect();
        match line_census(&lines) {
            Ok(c) => prop_assert!(c.bezout_holds()),
            Err(Error::DegenerateInput(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

//! Randomized algebraic identities across all three coefficient rings.

use proptest::prelude::*;

use lnd3_core::{Derivation, ExpVec, Poly, Rat, RingElem, RingId, UniPoly, WeightVec};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn arb_unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    proptest::collection::vec(arb_rat(), 0..=max_deg).prop_map(UniPoly::from_coeffs)
}

fn arb_ring_elem(ring: RingId) -> BoxedStrategy<RingElem> {
    match ring {
        RingId::Q => arb_rat().prop_map(RingElem::Q).boxed(),
        RingId::PolyT => arb_unipoly(3).prop_map(RingElem::PolyT).boxed(),
        RingId::Circle => (arb_unipoly(2), arb_unipoly(2))
            .prop_map(|(a, b)| RingElem::Circle(lnd3_core::CircleElem::new(a, b)))
            .boxed(),
    }
}

fn arb_ring() -> impl Strategy<Value = RingId> {
    prop_oneof![Just(RingId::Q), Just(RingId::PolyT), Just(RingId::Circle)]
}

fn arb_exp(max_deg: u16) -> impl Strategy<Value = ExpVec> {
    (0..=max_deg, 0..=max_deg, 0..=max_deg).prop_map(|(a, b, c)| ExpVec::from_slice(&[a, b, c]))
}

fn arb_poly(ring: RingId, max_deg: u16, max_terms: usize) -> BoxedStrategy<Poly> {
    proptest::collection::vec((arb_exp(max_deg), arb_ring_elem(ring)), 0..=max_terms)
        .prop_map(move |terms| {
            let mut p = Poly::zero(ring, 3);
            for (e, c) in terms {
                p = p.add(&Poly::monomial(ring, 3, e, c)).expect("same ring");
            }
            p
        })
        .boxed()
}

fn one_poly() -> impl Strategy<Value = (RingId, Poly)> {
    arb_ring().prop_flat_map(|ring| (Just(ring), arb_poly(ring, 2, 4)))
}

fn two_polys() -> impl Strategy<Value = (RingId, Poly, Poly)> {
    arb_ring().prop_flat_map(|ring| (Just(ring), arb_poly(ring, 2, 4), arb_poly(ring, 2, 3)))
}

fn three_polys() -> impl Strategy<Value = (RingId, Poly, Poly, Poly)> {
    arb_ring().prop_flat_map(|ring| {
        (
            Just(ring),
            arb_poly(ring, 2, 3),
            arb_poly(ring, 2, 3),
            arb_poly(ring, 2, 3),
        )
    })
}

fn arb_derivation(ring: RingId) -> impl Strategy<Value = Derivation> {
    proptest::collection::vec(arb_poly(ring, 2, 3), 3)
        .prop_map(move |images| Derivation::new(ring, 3, images).expect("compatible"))
}

fn derivation_and_polys() -> impl Strategy<Value = (Derivation, Poly, Poly)> {
    arb_ring().prop_flat_map(|ring| {
        (
            arb_derivation(ring),
            arb_poly(ring, 2, 3),
            arb_poly(ring, 2, 3),
        )
    })
}

fn derivation_polys_scalars() -> impl Strategy<Value = (Derivation, Poly, Poly, RingElem, RingElem)>
{
    arb_ring().prop_flat_map(|ring| {
        (
            arb_derivation(ring),
            arb_poly(ring, 2, 3),
            arb_poly(ring, 2, 3),
            arb_ring_elem(ring),
            arb_ring_elem(ring),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    // Ring axioms hold representationally after canonicalization.
    #[test]
    fn poly_ring_axioms((_, f, g, h) in three_polys()) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn mixed_partials_commute((_, f) in one_poly()) {
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(f.partial(i).partial(j), f.partial(j).partial(i));
            }
        }
    }

    #[test]
    fn weighted_parts_sum_back((_, f) in one_poly(), w0 in -2i64..=3, w1 in -2i64..=3, w2 in -2i64..=3) {
        let w = WeightVec::new(&[w0, w1, w2]);
        let parts = f.weighted_parts(&w);
        let mut sum = Poly::zero(f.ring_id(), 3);
        for p in parts.values() {
            sum = sum.add(p).unwrap();
            prop_assert!(p.is_homogeneous(&w).is_some());
        }
        prop_assert_eq!(&sum, &f);
        if let Some(d) = f.is_homogeneous(&w) {
            prop_assert_eq!(parts.len(), 1);
            prop_assert_eq!(f.weighted_degree(&w), Some(d));
        }
        if !f.is_zero() {
            let top = f.top_part(&w);
            let d = f.weighted_degree(&w).unwrap();
            prop_assert_eq!(parts.get(&d).unwrap(), &top);
        }
    }

    // Exact division undoes multiplication.
    #[test]
    fn exact_divide_roundtrip((_, f, g) in two_polys()) {
        prop_assume!(!g.is_zero());
        let prod = f.mul(&g).unwrap();
        let q = prod.exact_divide(&g).unwrap();
        prop_assert_eq!(q, f);
    }

    // n-th roots of constructed powers come back up to the sign
    // convention.
    #[test]
    fn nth_root_recovers((_, g) in one_poly(), n in prop_oneof![Just(2u32), Just(3), Just(5)]) {
        prop_assume!(!g.is_zero());
        let f = g.pow(n).unwrap();
        let r = f.nth_root(n);
        prop_assert!(r.is_some(), "no root found for an exact power");
        let r = r.unwrap();
        prop_assert_eq!(r.pow(n).unwrap(), f.clone());
        if n % 2 == 1 {
            prop_assert_eq!(&r, &g);
        } else {
            prop_assert!(r == g || r == g.neg());
            prop_assert!(r.leading().unwrap().1.is_sign_canonical());
        }
    }

    // Leibniz rule for arbitrary images, all rings.
    #[test]
    fn leibniz((d, f, g) in derivation_and_polys()) {
        let lhs = d.apply(&f.mul(&g).unwrap()).unwrap();
        let rhs = f.mul(&d.apply(&g).unwrap()).unwrap()
            .add(&g.mul(&d.apply(&f).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // R-linearity over ring constants.
    #[test]
    fn r_linearity((d, f, g, a, b) in derivation_polys_scalars()) {
        let combo = f.scale(&a).add(&g.scale(&b)).unwrap();
        let lhs = d.apply(&combo).unwrap();
        let rhs = d.apply(&f).unwrap().scale(&a)
            .add(&d.apply(&g).unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // Substitution round-trip under invertible integer matrices.
    #[test]
    fn substitution_roundtrip((ring, f) in one_poly(), shear in -2i64..=2, swap in any::<bool>()) {
        let one = RingElem::one(ring);
        let zero = RingElem::zero(ring);
        let s = RingElem::from_i64(ring, shear);
        let mut m = vec![
            vec![one.clone(), s.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ];
        if swap {
            m.swap(1, 2);
        }
        let change = lnd3_core::CoordChange::new(ring, 3, m).unwrap();
        let there = change.to_new_coords(&f).unwrap();
        let back = change.to_old_coords(&there).unwrap();
        prop_assert_eq!(back, f);
    }

    // gcd respects common factors up to unit normalization (over Q).
    #[test]
    fn gcd_common_factor(f in arb_poly(RingId::Q, 2, 3), g in arb_poly(RingId::Q, 2, 3), h in arb_poly(RingId::Q, 1, 2)) {
        prop_assume!(!h.is_zero());
        prop_assume!(!f.is_zero() || !g.is_zero());
        let base = f.gcd(&g).unwrap();
        let lifted = f.mul(&h).unwrap().gcd(&g.mul(&h).unwrap()).unwrap();
        // normalize base * h the same way gcd output is normalized
        let expect_raw = base.mul(&h).unwrap();
        let expect = lnd3_core::gcd_multivar(&expect_raw, &expect_raw).unwrap();
        prop_assert_eq!(lifted, expect);
    }

    // The circle ring is a domain, and multiplication agrees with the
    // parametrized route.
    #[test]
    fn circle_domain_and_param_oracle(a1 in arb_unipoly(2), b1 in arb_unipoly(2), a2 in arb_unipoly(2), b2 in arb_unipoly(2)) {
        let x = lnd3_core::CircleElem::new(a1, b1);
        let y = lnd3_core::CircleElem::new(a2, b2);
        let prod = x.mul(&y);
        if !x.is_zero() && !y.is_zero() {
            prop_assert!(!prod.is_zero());
        }
        let (fx, ex) = x.to_param();
        let (fy, ey) = y.to_param();
        let (fp, ep) = prod.to_param();
        let one_plus = UniPoly::from_coeffs(vec![
            Rat::from_integer(1.into()),
            Rat::from_integer(0.into()),
            Rat::from_integer(1.into()),
        ]);
        prop_assert!(ex + ey >= ep);
        let lifted = fp.mul(&one_plus.pow((ex + ey - ep) as u32));
        prop_assert_eq!(fx.mul(&fy), lifted);
    }

    // Unit inverses are exact.
    #[test]
    fn unit_inverse_exact((ring, f) in one_poly()) {
        if let Some((_, x)) = f.leading() {
            if let Some(inv) = x.inverse() {
                prop_assert!(x.mul(&inv).is_one());
            }
        }
        let _ = ring;
    }

    // The session parser rejects garbage with errors, never panics.
    #[test]
    fn parser_never_panics(text in "[ -~\\n]{0,120}") {
        let _ = lnd3_core::parse_session(&text, None);
        let _ = lnd3_core::parse_session(&text, Some(("d", 2)));
        let _ = lnd3_core::parse_command(&text);
    }

    // Canonical printing is a fixpoint of parse-then-print, and the
    // reparsed polynomial is identical.
    #[test]
    fn print_parse_fixpoint((ring, f) in one_poly()) {
        let decl = match ring {
            RingId::Q => "ring Q\nvars x y z\n",
            RingId::PolyT => "ring Q[t]\nvars x y z\n",
            RingId::Circle => "ring circle\nvars x y z\n",
        };
        let session = lnd3_core::parse_session(decl, None).unwrap();
        let printed = f.render(&session.var_names());
        let reparsed = session.parse_poly(&printed, None).unwrap();
        prop_assert_eq!(&reparsed, &f);
        prop_assert_eq!(reparsed.render(&session.var_names()), printed);
    }

    // A homogeneous derivation raises weighted degree by exactly its
    // homogeneity degree.
    #[test]
    fn homogeneous_derivation_shifts_degree((ring, f) in one_poly(), seed_img in -3i64..=3) {
        // A derivation homogeneous of degree 1 under the standard weights.
        let x = Poly::var(ring, 3, 0);
        let y = Poly::var(ring, 3, 1);
        let d = Derivation::new(ring, 3, vec![
            Poly::zero(ring, 3),
            x.pow(2).unwrap().scale(&RingElem::from_i64(ring, seed_img)),
            x.mul(&y).unwrap(),
        ]).unwrap();
        let w = WeightVec::standard();
        let deg = d.homogeneity_degree(&w);
        prop_assume!(deg.is_some());
        let deg = deg.unwrap();
        let hom = f.top_part(&w);
        prop_assume!(!hom.is_zero());
        let image = d.apply(&hom).unwrap();
        if !image.is_zero() {
            prop_assert_eq!(
                image.is_homogeneous(&w),
                Some(hom.is_homogeneous(&w).unwrap() + deg)
            );
        }
    }

    // Bezout identity for univariate pairs.
    #[test]
    fn uni_bezout_identity(a in arb_unipoly(4), b in arb_unipoly(4)) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, u, v) = a.gcd_bezout(&b).unwrap();
        prop_assert_eq!(u.mul(&a).add(&v.mul(&b)), g.clone());
        if !a.is_zero() {
            prop_assert!(a.exact_div(&g).is_some());
        }
        if !b.is_zero() {
            prop_assert!(b.exact_div(&g).is_some());
        }
    }
}

// Degree arithmetic on certified nilpotent instances: additivity on
// products and the monomial-wise bound.
#[test]
fn deg_additivity_and_mu_bar_on_instances() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cases = 0;
    let instances = certified_instances();
    while cases < 120 {
        let (d, nvars, bound) = &instances[rng.gen_range(0..instances.len())];
        let f = random_monomial_poly(&mut rng, d.ring_id(), *nvars, 2);
        let g = random_monomial_poly(&mut rng, d.ring_id(), *nvars, 2);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let df = d.deg_d(&f, *bound).unwrap();
        let dg = d.deg_d(&g, *bound).unwrap();
        let dfg = d.deg_d(&f.mul(&g).unwrap(), *bound).unwrap();
        assert_eq!(dfg, df + dg, "deg additivity failed");
        let sum = f.add(&g).unwrap();
        if !sum.is_zero() {
            let ds = d.deg_d(&sum, *bound).unwrap();
            assert!(ds <= df.max(dg), "subadditivity failed");
        }
        // mu(f) <= mu_bar(f)
        let mu_bar = d.mu_bar(&f, *bound).unwrap();
        assert!(df <= mu_bar, "monomial-wise degree must dominate");
        cases += 1;
    }
    assert!(cases >= 100);
}

fn certified_instances() -> Vec<(Derivation, usize, usize)> {
    let mut out = Vec::new();
    // cascade over Q
    let q = RingId::Q;
    let x = Poly::var(q, 3, 0);
    let y = Poly::var(q, 3, 1);
    out.push((
        Derivation::new(q, 3, vec![Poly::zero(q, 3), x.clone(), y.clone()]).unwrap(),
        3,
        32,
    ));
    // triangular instance of degree 1
    let p = y
        .pow(3)
        .unwrap()
        .add(&x.mul(&y.pow(2).unwrap()).unwrap())
        .unwrap()
        .add(&x.pow(2).unwrap().mul(&Poly::var(q, 3, 2)).unwrap())
        .unwrap();
    out.push((Derivation::jacobian(&x, &p).unwrap(), 3, 48));
    // circle families at small degree
    out.push((lnd3_core::build_example2(0).derivation, 3, 32));
    out.push((lnd3_core::build_example3(1).derivation, 3, 32));
    out
}

fn random_monomial_poly(
    rng: &mut impl rand::Rng,
    ring: RingId,
    nvars: usize,
    max_deg: u16,
) -> Poly {
    let mut p = Poly::zero(ring, nvars);
    for _ in 0..rng.gen_range(1..=2) {
        let mut exps = [0u16; 3];
        for e in exps.iter_mut().take(nvars) {
            *e = rng.gen_range(0..=max_deg);
        }
        let coeff = RingElem::from_i64(ring, rng.gen_range(-3i64..=3));
        p = p
            .add(&Poly::monomial(
                ring,
                nvars,
                ExpVec::from_slice(&exps),
                coeff,
            ))
            .unwrap();
    }
    p
}

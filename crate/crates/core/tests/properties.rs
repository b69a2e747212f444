use ellsurf_core::arith::{isolate_real_roots, rat, sign_at, valuation_at, BinForm, CirclePoint, IntPoly, SturmChain};
use ellsurf_core::oracle::oracle_topology_with;
use ellsurf_core::sampling::{random_real_generic, random_triple};
use ellsurf_core::topology::betti;
use ellsurf_core::transforms::twist;
use ellsurf_core::weierstrass::{classify_fibers, SurfaceInvariants};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn form(max_deg: usize) -> impl Strategy<Value = BinForm> {
    (1..=max_deg)
        .prop_flat_map(|d| prop::collection::vec(-6i64..=6, d + 1))
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| BinForm::from_ints(&c))
}

fn point() -> impl Strategy<Value = CirclePoint> {
    prop_oneof![
        Just(CirclePoint::Infinity),
        (-8i64..=8, 1i64..=4).prop_map(|(n, d)| CirclePoint::Finite(rat(n, d))),
        // √2, -∛3, a root of u³ - u - 1
        prop::sample::select(vec![
            (vec![-2, 0, 1], 1, 2),
            (vec![3, 0, 0, 1], -2, -1),
            (vec![-1, -1, 0, 1], 1, 2),
        ])
        .prop_map(|(c, lo, hi)| {
            CirclePoint::from_isolating_interval(&BinForm::from_ints(&c), &rat(lo, 1), &rat(hi, 1)).unwrap()
        }),
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_is_multiplicative(f in form(4), g in form(4), c in point()) {
        prop_assert_eq!(sign_at(&f.mul(&g), &c), sign_at(&f, &c) * sign_at(&g, &c));
    }

    #[test]
    fn valuation_is_additive(f in form(4), g in form(4), c in point()) {
        let v = valuation_at(&f.mul(&g), &c).unwrap();
        prop_assert_eq!(v, valuation_at(&f, &c).unwrap() + valuation_at(&g, &c).unwrap());
        prop_assert_eq!(v == 0, sign_at(&f.mul(&g), &c) != 0);
    }

    #[test]
    fn sturm_count_matches_isolation(f in form(7)) {
        let roots = isolate_real_roots(&f).unwrap();
        let finite = roots.points().iter().filter(|c| !c.is_infinity()).count();
        let a = f.affine();
        let expected = if a.degree() == Some(0) {
            0
        } else {
            SturmChain::new(&IntPoly::from_poly(&a.squarefree().1)).count_all()
        };
        prop_assert_eq!(finite, expected);
        for c in roots.points() {
            prop_assert_eq!(sign_at(&f, c), 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn noether_identity(seed in any::<u64>(), k in 1u32..=2) {
        let t = random_triple(&mut rng(seed), k);
        let c = classify_fibers(&t).unwrap();
        prop_assert_eq!(c.euler_sum(), 12 * k);
        let inv = SurfaceInvariants::for_k(k);
        prop_assert_eq!(inv.chi_top, 12 * k);
        prop_assert_eq!(inv.h11, 10 * k);
    }

    #[test]
    fn rescaling_changes_nothing(seed in any::<u64>(), n in 1i64..=9, d in 1i64..=9) {
        let t = random_real_generic(&mut rng(seed), 1);
        let s = t.rescale(&rat(n, d)).unwrap();
        prop_assert_eq!(classify_fibers(&t).unwrap(), classify_fibers(&s).unwrap());
        let (a, b) = (betti(&t).unwrap(), betti(&s).unwrap());
        prop_assert_eq!((a.h0, a.h1, a.chi, a.components), (b.h0, b.h1, b.chi, b.components));
        prop_assert_eq!(s.normalize(), t.normalize());
    }

    #[test]
    fn twist_is_dual(seed in any::<u64>(), k in 1u32..=2) {
        let t = random_real_generic(&mut rng(seed), k);
        prop_assert_eq!(twist(&twist(&t)), t.clone());
        let (a, b) = (betti(&t).unwrap(), betti(&twist(&t)).unwrap());
        if a.caveat.is_none() {
            prop_assert_eq!(b.h1, 2 * a.h0);
            prop_assert_eq!(2 * b.h0, a.h1);
            prop_assert_eq!(b.chi, -a.chi);
            prop_assert_eq!(b.h_star, a.h_star);
            prop_assert_eq!((b.i1_plus, b.i1_minus), (a.i1_minus, a.i1_plus));
        }
    }

    #[test]
    fn oracle_ignores_extra_cuts(seed in any::<u64>(), cuts in prop::collection::vec((-30i64..=30, 1i64..=7), 1..4)) {
        let t = random_real_generic(&mut rng(seed), 1);
        let base = oracle_topology_with(&t, &[]).unwrap();
        let extra: Vec<_> = cuts
            .iter()
            .map(|&(n, d)| rat(n, d))
            .filter(|x| sign_at(&t.discriminant(), &CirclePoint::Finite(x.clone())) != 0)
            .collect();
        let refined = oracle_topology_with(&t, &extra).unwrap();
        prop_assert_eq!((base.h0, base.h1, base.chi), (refined.h0, refined.h1, refined.chi));
        let main = betti(&t).unwrap();
        prop_assert_eq!((main.h0, main.h1, main.chi), (base.h0, base.h1, base.chi));
    }
}

use proptest::prelude::*;

use vinberg_core::cartan::{RootDatum, Weight};
use vinberg_core::cluster::{mutate_matrix, mutate_state, SeedState};
use vinberg_core::crystal::{crystal_e, crystal_f, weight};
use vinberg_core::laurent::LaurentPoly;
use vinberg_core::monoid::{det2, vinberg_valuation_sl2};
use vinberg_core::seed::{framed_seed, Seed};
use vinberg_core::q;

fn laurent(nvars: usize, min_exp: i32) -> impl Strategy<Value = LaurentPoly> {
    let term = (prop::collection::vec(min_exp..3i32, nvars), -4i64..=4);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        terms.into_iter().fold(LaurentPoly::zero(nvars), |acc, (e, c)| {
            acc + LaurentPoly::monomial(e, q(c))
        })
    })
}

fn nonzero_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    laurent(nvars, 0).prop_filter("nonzero", |p| !p.is_zero())
}

/// Random seed with `eps_ij = s_ij d_i`, `s` skew-symmetric, `d_i in {1, 2}`.
fn seed_strategy() -> impl Strategy<Value = Seed> {
    (2usize..6).prop_flat_map(|n| {
        let upper = prop::collection::vec(-2i64..=2, n * (n - 1) / 2);
        let d = prop::collection::vec(1i64..=2, n);
        let frozen = prop::collection::vec(any::<bool>(), n);
        (Just(n), upper, d, frozen).prop_map(|(n, upper, d, frozen)| {
            let mut s = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let x = it.next().unwrap();
                    s[i][j] = x;
                    s[j][i] = -x;
                }
            }
            let eps = (0..n)
                .map(|i| (0..n).map(|j| q(s[i][j] * d[i])).collect())
                .collect();
            let mut mutable: Vec<bool> = frozen.iter().map(|f| !f).collect();
            mutable[0] = true;
            Seed::from_matrix(
                (1..=n as i64).collect(),
                (0..n).map(|i| format!("x{i}")).collect(),
                mutable,
                eps,
                d,
                vec![1; n],
            )
            .unwrap()
        })
    })
}

fn is_skew_symmetrizable(s: &Seed) -> bool {
    let d = s.symmetrizers();
    (0..s.len()).all(|i| {
        (0..s.len()).all(|j| s.entry(i, j) * q(d[j]) == -(s.entry(j, i) * q(d[i])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(f in laurent(3, -2), g in laurent(3, -2), h in laurent(3, -2)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(f in laurent(3, -2), g in laurent(3, -2)) {
        prop_assume!(!g.is_zero());
        let prod = &f * &g;
        prop_assert_eq!(prod.exact_div(&g).unwrap(), f);
    }

    #[test]
    fn det_adic_order_is_additive(f in nonzero_poly(4), g in nonzero_poly(4), a in 0i64..3, b in 0i64..3) {
        let d = det2();
        let ff = &f * &d.pow(a).unwrap();
        let gg = &g * &d.pow(b).unwrap();
        let vf = vinberg_valuation_sl2(&ff).unwrap();
        let vg = vinberg_valuation_sl2(&gg).unwrap();
        prop_assert!(vf >= a as u32);
        prop_assert_eq!(vinberg_valuation_sl2(&(&ff * &gg)).unwrap(), vf + vg);
    }

    #[test]
    fn matrix_mutation_is_involutive(s in seed_strategy(), ks in prop::collection::vec(0usize..6, 1..6)) {
        let mut cur = s;
        for k in ks {
            let k = k % cur.len();
            if !cur.is_mutable(k) {
                continue;
            }
            let m = mutate_matrix(&cur, k).unwrap();
            prop_assert!(is_skew_symmetrizable(&m));
            prop_assert_eq!(&mutate_matrix(&m, k).unwrap(), &cur);
            cur = m;
        }
    }

    #[test]
    fn state_mutation_is_involutive_on_framed_sl3(ks in prop::collection::vec(0usize..4, 1..4)) {
        let fs = framed_seed(&RootDatum::of_type("A2").unwrap()).unwrap();
        let mutable = fs.built.seed.mutable_positions();
        let mut st = SeedState::initial(fs.built.seed.clone());
        for k in ks {
            let k = mutable[k];
            let m = mutate_state(&st, k).unwrap();
            let back = mutate_state(&m, k).unwrap();
            prop_assert_eq!(&back.vars, &st.vars);
            prop_assert_eq!(&back.seed, &st.seed);
            st = m;
        }
    }

    #[test]
    fn dominance_is_a_partial_order(
        a in prop::collection::vec(-3i64..=3, 2),
        b in prop::collection::vec(-3i64..=3, 2),
        c in prop::collection::vec(-3i64..=3, 2),
    ) {
        let d = RootDatum::of_type("A2").unwrap();
        let (a, b, c) = (Weight(a), Weight(b), Weight(c));
        prop_assert!(d.dominance_leq(&a, &a).unwrap());
        if d.dominance_leq(&a, &b).unwrap() && d.dominance_leq(&b, &a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if d.dominance_leq(&a, &b).unwrap() && d.dominance_leq(&b, &c).unwrap() {
            prop_assert!(d.dominance_leq(&a, &c).unwrap());
        }
    }

    #[test]
    fn word_action_matches_reflections(
        word in prop::collection::vec(1usize..=3, 0..8),
        lam in prop::collection::vec(-3i64..=3, 3),
        ty in prop::sample::select(vec!["A3", "B3", "C3"]),
    ) {
        let d = RootDatum::of_type(ty).unwrap();
        let lam = Weight(lam);
        let w = d.element(&word).unwrap();
        let stepwise = word.iter().rev().fold(lam.clone(), |acc, &i| d.reflect(i, &acc));
        prop_assert_eq!(w.apply(&lam), stepwise);
        let red = d.reduce(&word).unwrap();
        prop_assert!(d.is_reduced(&red).unwrap());
        prop_assert_eq!(d.element(&red).unwrap(), w.clone());
        prop_assert_eq!(w.length() % 2, word.len() % 2);
    }

    #[test]
    fn crystal_raising_inverts_lowering(word in prop::collection::vec(1usize..=4, 0..8), i in 1usize..4) {
        if let Some(fb) = crystal_f(&word, i) {
            prop_assert_eq!(crystal_e(&fb, i).unwrap(), word.clone());
            let diff = weight(&word, 4).sub(&weight(&fb, 4));
            prop_assert_eq!(diff, RootDatum::of_type("A3").unwrap().simple_root(i));
        }
        if let Some(eb) = crystal_e(&word, i) {
            prop_assert_eq!(crystal_f(&eb, i).unwrap(), word);
        }
    }
}

#[test]
fn bar_involution_is_a_diagram_automorphism() {
    for ty in ["A1", "A2", "A3", "A4", "B3", "C3", "D4", "D5", "G2"] {
        let d = RootDatum::of_type(ty).unwrap();
        let bar = d.bar_involution().unwrap();
        let r = d.rank();
        for i in 0..r {
            assert_eq!(bar[bar[i] - 1], i + 1, "{ty}");
            for j in 0..r {
                assert_eq!(d.cartan().a(bar[i], bar[j]), d.cartan().a(i + 1, j + 1), "{ty}");
            }
        }
    }
    let a3 = RootDatum::of_type("A3").unwrap();
    assert_eq!(a3.bar_involution().unwrap(), vec![3, 2, 1]);
    let d5 = RootDatum::of_type("D5").unwrap();
    assert_eq!(d5.bar_involution().unwrap(), vec![1, 2, 3, 5, 4]);
}

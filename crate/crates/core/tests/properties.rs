//! Randomized invariants across modules.

use num_bigint::BigInt;
use proptest::prelude::*;

use bigrade::freelie::{self, LieElement};
use bigrade::grading::{hessenberg_sum, ExtPair, OrdinalCnf};
use bigrade::magnus::{self, Weights};
use bigrade::words::{commutator, AlphabetSpec, FreeGroupAut, Word};

fn a22() -> AlphabetSpec {
    AlphabetSpec::new(2, 2).unwrap()
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![-4i32..=-1, 1i32..=4], 0..10).prop_map(|raw| Word::reduce(&a22(), &raw).unwrap())
}

fn ordinal() -> impl Strategy<Value = OrdinalCnf> {
    let leaf = (0u64..5).prop_map(OrdinalCnf::finite);
    let exps = prop::collection::btree_set(leaf, 0..4);
    (exps, prop::collection::vec(1u64..4, 4)).prop_map(|(e, cs)| {
        let terms = e.into_iter().rev().zip(cs).collect();
        OrdinalCnf::from_terms(terms).unwrap()
    })
}

fn lie(mn: (usize, usize)) -> impl Strategy<Value = LieElement> {
    let alpha = a22();
    let n = freelie::lie_rank(&alpha, mn);
    prop::collection::vec(-3i64..=3, n)
        .prop_map(move |c| LieElement::from_coords(&alpha, mn, c.into_iter().map(BigInt::from).collect()).unwrap())
}

/// Elementary Nielsen moves `x_i -> x_i y_j^e` and friends, composed.
fn aut() -> impl Strategy<Value = FreeGroupAut> {
    prop::collection::vec((1i32..=4, 1i32..=4, prop::bool::ANY), 1..4).prop_map(|moves| {
        let alpha = a22();
        let mut h = FreeGroupAut::identity(alpha);
        for (a, b, right) in moves {
            if a == b {
                continue;
            }
            let la = Word::letter(a);
            let lb = Word::letter(b);
            let (f, i) = if right {
                (la.mul(&lb), la.mul(&lb.inverse()))
            } else {
                (lb.mul(&la), lb.inverse().mul(&la))
            };
            let m = FreeGroupAut::from_images(alpha, &[(a, f)], &[(a, i)]).unwrap();
            h = h.compose(&m).unwrap();
        }
        h
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn words_form_a_group(u in word(), v in word(), w in word()) {
        prop_assert!(u.mul(&u.inverse()).is_empty());
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
        prop_assert_eq!(Word::reduce(&a22(), u.letters()).unwrap(), u.clone());
    }

    #[test]
    fn commutator_expansions(a in word(), b in word(), c in word()) {
        prop_assert_eq!(commutator(&a, &b).inverse(), commutator(&b, &a));
        prop_assert_eq!(
            commutator(&a.mul(&b), &c),
            commutator(&b, &c).conjugate_by(&a).mul(&commutator(&a, &c))
        );
        prop_assert_eq!(
            commutator(&a, &b.mul(&c)),
            commutator(&a, &b).mul(&commutator(&a, &c).conjugate_by(&b))
        );
    }

    #[test]
    fn automorphisms_are_homomorphisms(h in aut(), u in word(), v in word()) {
        prop_assert_eq!(h.apply(&u.mul(&v)), h.apply(&u).mul(&h.apply(&v)));
        prop_assert!(h.compose(&h.inverse()).unwrap().is_identity());
        prop_assert_eq!(h.inverse().apply(&h.apply(&u)), u.clone());
    }

    #[test]
    fn magnus_is_a_homomorphism(u in word(), v in word(), wx in 1u32..3) {
        let alpha = a22();
        let wt = Weights::new(wx, 1).unwrap();
        let e = |w: &Word| magnus::magnus_expand(&alpha, w, 4, wt).unwrap();
        prop_assert_eq!(e(&u).mul(&e(&v)).unwrap(), e(&u.mul(&v)));
        prop_assert!(e(&u).mul(&e(&u.inverse())).unwrap().is_one());
        prop_assert_eq!(e(&u).truncate(2).unwrap(), magnus::magnus_expand(&alpha, &u, 2, wt).unwrap());
    }

    #[test]
    fn commutators_raise_the_level(u in word(), v in word()) {
        // [u,v] sits in bidegree >= the sum of the levels of u and v
        let alpha = a22();
        let c = commutator(&u, &v);
        let lu = magnus::weighted_filtration_level(&alpha, &u, Weights::UNIT, 6).unwrap();
        let lv = magnus::weighted_filtration_level(&alpha, &v, Weights::UNIT, 6).unwrap();
        let lc = magnus::weighted_filtration_level(&alpha, &c, Weights::UNIT, 6).unwrap();
        if let (Some(a), Some(b)) = (lu, lv) {
            if a + b <= 6 {
                prop_assert!(lc.is_none_or(|k| k >= a + b));
            }
        }
    }

    #[test]
    fn lie_bracket_axioms(u in lie((1, 0)), v in lie((1, 1)), w in lie((0, 2))) {
        prop_assert_eq!(u.bracket(&v), v.bracket(&u).neg());
        let jac = u.bracket(&v.bracket(&w)).add(&v.bracket(&w.bracket(&u))).add(&w.bracket(&u.bracket(&v)));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(freelie::lie_project(&a22(), &u.bracket(&w).mu()).unwrap(), u.bracket(&w));
    }

    #[test]
    fn natural_sum_is_a_cancellative_commutative_monoid(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(hessenberg_sum(&a, &b), hessenberg_sum(&b, &a));
        prop_assert_eq!(hessenberg_sum(&hessenberg_sum(&a, &b), &c), hessenberg_sum(&a, &hessenberg_sum(&b, &c)));
        prop_assert_eq!(hessenberg_sum(&a, &OrdinalCnf::zero()), a.clone());
        if a < b {
            prop_assert!(hessenberg_sum(&a, &c) < hessenberg_sum(&b, &c));
        }
        prop_assert_eq!(OrdinalCnf::parse(&a.to_string()).unwrap(), a.clone());
    }

    #[test]
    fn extended_levels_order(m in -1i32..4, n in -1i32..4, dm in 0i32..3, dn in 0i32..3) {
        let l = ExtPair::new(m, n);
        let u = ExtPair::new(m + dm, n + dn);
        prop_assert!(l.le(&u));
        prop_assert_eq!(u.le(&l), dm == 0 && dn == 0);
        prop_assert_eq!(ExtPair::parse(&l.to_string()).unwrap(), l);
    }
}

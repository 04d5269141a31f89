//! Properties that cut across modules, on random shapes and listings.

use proptest::prelude::*;

use listnerve::delta::{enumerate_rooted, rooted_restriction, act, LeveledShape, MonotoneMap};
use listnerve::format::{self, Document, ListingDoc, SListDoc, ShapeDoc};
use listnerve::homology::{chain_complex, homology_all, nerve_augmentation, verify_contraction, HomologyGroup};
use listnerve::nerve::{nerve, Nerve, NerveSpec};
use listnerve::operad::{build_t_alpha, KeyOperad};
use listnerve::slist::{build_u_alpha, hom_slist};
use listnerve::thicken::{build_thick, check_thick};
use listnerve::sample;

fn rooted(seed: u64, max_n: usize, max_size: usize) -> LeveledShape {
    let mut rng = sample::rng(seed);
    let n = (seed as usize) % (max_n + 1);
    sample::shape(&mut rng, n, max_size, true)
}

fn key_nerve(alpha: &LeveledShape, dim: usize) -> (KeyOperad, Nerve) {
    let key = build_t_alpha(alpha);
    let bound = key.operad().max_arity().max(1);
    let n = nerve(key.operad(), NerveSpec { dim, bound }).unwrap();
    (key, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nerves_validate_and_are_operadic(seed in any::<u64>()) {
        let alpha = rooted(seed, 2, 3);
        let (_, x) = key_nerve(&alpha, 2);
        prop_assert!(x.slist().validate().is_empty());
        prop_assert!(x.slist().is_operadic());
    }

    #[test]
    fn simplices_are_counted_by_rooted_shapes(seed in any::<u64>()) {
        let alpha = rooted(seed, 2, 2);
        let (key, x) = key_nerve(&alpha, 2);
        let bound = key.operad().max_arity().max(1);
        for n in 0..=2 {
            let total: usize = enumerate_rooted(n, bound)
                .iter()
                .map(|beta| hom_slist(beta, x.slist()).unwrap().len())
                .sum();
            prop_assert_eq!(total, x.slist().carrier(n).len(), "degree {}", n);
        }
    }

    #[test]
    fn action_components_have_restricted_shapes(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let alpha = rooted(seed, 2, 2);
        let (_, x) = key_nerve(&alpha, 2);
        let x = x.slist();
        let n = 2.min(x.dim());
        prop_assume!(!x.carrier(n).is_empty());
        let s = pick.index(x.carrier(n).len());
        let shape = x.shape_of(n, s).unwrap();
        for k in 0..=n {
            for theta in MonotoneMap::operators(k, n) {
                let parts = x.act(&theta, s).unwrap();
                let acted = act(&theta, &shape).unwrap();
                prop_assert_eq!(parts.len(), acted.size(k));
                for (i, &p) in parts.iter().enumerate() {
                    let want = rooted_restriction(&acted, i).unwrap().into_shape();
                    prop_assert_eq!(x.shape_of(k, p).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn representables_are_operadic_with_free_homology(seed in any::<u64>()) {
        let alpha = rooted(seed, 2, 3);
        let u = build_u_alpha(&alpha, 3);
        prop_assert!(u.slist.is_operadic());
        let h = homology_all(&chain_complex(&u.slist).unwrap());
        prop_assert!(h.groups[0].is_free(alpha.size(0)));
        prop_assert!(h.groups[1..].iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn contraction_determines_homology(seed in any::<u64>()) {
        let alpha = rooted(seed, 2, 2);
        let (key, x) = key_nerve(&alpha, 3);
        let aug = nerve_augmentation(&key, &x).unwrap();
        prop_assert!(verify_contraction(&aug).holds());
        let h = homology_all(&chain_complex(x.slist()).unwrap());
        prop_assert!(h.groups[0].is_free(aug.base.len()));
        prop_assert!(h.groups[1..].iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn thickenings_pass_their_structural_checks(seed in any::<u64>()) {
        let alpha = rooted(seed, 2, 2);
        let thick = build_thick(&alpha, 1, 1).unwrap();
        prop_assert!(check_thick(&thick).unwrap().holds());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let u = sample::listing(&mut rng, 5, 5, 3);
        let doc = Document::Listing(ListingDoc::of(&u));
        let Document::Listing(back) = format::parse(&doc.to_json()).unwrap() else { unreachable!() };
        prop_assert_eq!(back.build().unwrap(), u);

        let alpha = rooted(seed, 3, 3);
        let Document::Shape(back) = format::parse(&Document::Shape(ShapeDoc::of(&alpha)).to_json()).unwrap() else { unreachable!() };
        prop_assert_eq!(back.build().unwrap(), alpha.clone());

        let x = build_u_alpha(&alpha, 2).slist;
        let Document::Slist(back) = format::parse(&Document::Slist(SListDoc::of(&x)).to_json()).unwrap() else { unreachable!() };
        prop_assert_eq!(back.build().unwrap(), x);
    }
}

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::seq::SliceRandom;

use super::*;
use crate::delta::{enumerate_rooted, LeveledShape};
use crate::list::compose;
use crate::nerve::{classify_representable, nerve, NerveSpec};
use crate::operad::build_t_alpha;
use crate::sample;
use crate::slist::build_u_alpha;

fn two_level() -> LeveledShape {
    LeveledShape::from_values(vec![2, 2, 1], vec![vec![0, 1], vec![0, 0]]).unwrap()
}

fn key_nerve(alpha: &LeveledShape, dim: usize) -> (crate::operad::KeyOperad, crate::nerve::Nerve) {
    let key = build_t_alpha(alpha);
    let bound = key.operad().max_arity().max(1);
    let n = nerve(key.operad(), NerveSpec { dim, bound }).unwrap();
    (key, n)
}

#[test]
fn linearize_counts_multiplicities() {
    let a = FiniteSet::new(["a", "b"]).unwrap();
    let x = FiniteSet::new(["x", "y"]).unwrap();
    let u = Listing::new(a, x, vec![vec![0, 1, 0], vec![]]).unwrap();
    let z = linearize(&u);
    assert_eq!(z.to_dense(), vec![vec![2, 0], vec![1, 0]]);
}

#[test]
fn linearize_is_functorial() {
    let mut rng = sample::rng(11);
    for _ in 0..300 {
        let u = sample::listing(&mut rng, 5, 5, 3);
        let w = FiniteSet::indexed("w", rand::Rng::gen_range(&mut rng, 0..=5));
        let v = sample::listing_between(&mut rng, u.target(), &w, 3);
        let lhs = linearize(&compose(&v, &u).unwrap());
        let rhs = linearize(&v).checked_mul(&linearize(&u)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(linearize(&Listing::identity(u.source())), IntMatrix::identity(u.source().len()));
    }
}

#[test]
fn homology_of_a_point() {
    let c = chain_complex(&TruncSList::point(4)).unwrap();
    let h = homology_all(&c);
    assert!(h.groups[0].is_free(1));
    assert!(h.groups[1..].iter().all(HomologyGroup::is_zero));
    assert!(homology(&c, 4).is_err());
}

#[test]
fn wild_example_has_a_valid_boundary() {
    let x0 = FiniteSet::new(["a"]).unwrap();
    let x1 = FiniteSet::new(["s'", "s''"]).unwrap();
    let x = TruncSList::from_images(
        vec![x0, x1],
        vec![vec![], vec![vec![vec![], vec![0]], vec![vec![0], vec![]]]],
        vec![vec![vec![vec![0, 1]]]],
    )
    .unwrap();
    let c = chain_complex(&x).unwrap();
    // s' ↦ −a, s'' ↦ a
    assert_eq!(c.boundary(1).to_dense(), vec![vec![-1, 1]]);
    assert!(homology(&c, 0).unwrap().is_zero());
}

#[test]
fn smith_form_of_known_matrices() {
    let m = IntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.rank, 3);
    assert_eq!(s.torsion, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    assert_eq!(smith_normal_form(&IntMatrix::zeros(3, 2)).rank, 0);
}

#[test]
fn overflow_falls_back_to_big_integers() {
    let big = i64::MAX / 2 + 1;
    let m = IntMatrix::from_dense(&[vec![big, 3], vec![5, big]]);
    let s = smith_normal_form(&m);
    assert!(s.promoted);
    let d = determinant(&m.to_bigint()).abs();
    let prod: BigInt = s.torsion.iter().product();
    assert_eq!(s.rank, 2);
    assert_eq!(prod, d);
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #[test]
    fn smith_decomposition_is_unimodular(rows in arb_matrix()) {
        let m = IntMatrix::from_dense(&rows).to_bigint();
        let (u, d, v) = smith_decomposition(&m).unwrap();
        prop_assert_eq!(u.checked_mul(&m).unwrap().checked_mul(&v).unwrap(), d.clone());
        prop_assert!(determinant(&u).abs() == BigInt::from(1));
        prop_assert!(determinant(&v).abs() == BigInt::from(1));
        let diag: Vec<BigInt> = (0..d.rows().min(d.cols())).map(|i| d.get(i, i)).take_while(|x| *x != BigInt::from(0)).collect();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                prop_assert!(r == c || d.get(r, c) == BigInt::from(0));
            }
        }
        let sparse = invariant_factors(&m).unwrap();
        prop_assert_eq!(sparse, diag);
    }
}

#[test]
fn key_nerve_homology_is_free_on_the_leaves() {
    let start = Instant::now();
    let (_, x) = key_nerve(&two_level(), 4);
    let c = chain_complex(x.slist()).unwrap();
    let h = homology_all(&c);
    assert_eq!(h.dim, 4);
    assert!(h.groups[0].is_free(2), "{h:?}");
    assert!(h.groups[1..].iter().all(HomologyGroup::is_zero), "{h:?}");
    let u = build_u_alpha(&two_level(), 4);
    let hu = homology_all(&chain_complex(&u.slist).unwrap());
    assert_eq!(hu.groups, h.groups);
    eprintln!("two-level nerve at D = 4: {:?} cells, {:?}", x.slist().carriers().iter().map(|s| s.len()).collect::<Vec<_>>(), start.elapsed());
}

#[test]
fn relative_quotient_by_u_alpha_is_acyclic() {
    let alpha = two_level();
    let (key, x) = key_nerve(&alpha, 3);
    let u = build_u_alpha(&alpha, 3);
    let f = classify_representable(&key, &x, &u).unwrap();
    assert!(f.is_valid(&u.slist, x.slist()));
    let mut y: Vec<Vec<usize>> = f.components.clone();
    for v in y.iter_mut() {
        v.sort_unstable();
        v.dedup();
    }
    let q = relative_quotient(x.slist(), &y).unwrap();
    assert!(q.validate().is_empty());
    let cq = chain_complex(&q).unwrap();
    let hq = homology_all(&cq);
    assert!(hq.groups[..2].iter().all(HomologyGroup::is_zero), "{hq:?}");
    // C(X)/C(Y) is the complex of the quotient
    let direct = chain_complex(x.slist()).unwrap().quotient(&y).unwrap();
    assert_eq!(direct, cq);
    // the extra degeneracies restrict to Q ⇢ ∅
    let aug = nerve_augmentation(&key, &x).unwrap().quotient(&q, &y).unwrap();
    assert!(verify_contraction(&aug).holds());
}

#[test]
fn trivial_quotients() {
    let (_, x) = key_nerve(&two_level(), 2);
    let all: Vec<Vec<usize>> = x.slist().carriers().iter().map(|c| (0..c.len()).collect()).collect();
    let q = relative_quotient(x.slist(), &all).unwrap();
    assert!(q.carriers().iter().all(FiniteSet::is_empty));
    assert!(homology_all(&chain_complex(&q).unwrap()).groups.iter().all(HomologyGroup::is_zero));
    let none = vec![Vec::new(); 3];
    assert_eq!(relative_quotient(x.slist(), &none).unwrap(), *x.slist());
    let not_closed = vec![Vec::new(), vec![0], Vec::new()];
    let face_free = x.slist().face(1, 0).image(0).is_empty() && x.slist().face(1, 1).image(0).is_empty();
    if !face_free {
        assert!(matches!(relative_quotient(x.slist(), &not_closed), Err(Error::NotClosed(_))));
    }
}

#[test]
fn sub_by_labels_recovers_positions() {
    let (_, x) = key_nerve(&two_level(), 2);
    let all = sub_by_labels(x.slist(), x.slist()).unwrap();
    assert!(all.iter().enumerate().all(|(n, v)| *v == (0..x.slist().carrier(n).len()).collect::<Vec<_>>()));
}

/// The same simplicial list with every carrier permuted.
fn permuted(x: &TruncSList, seed: u64) -> TruncSList {
    let mut rng = sample::rng(seed);
    let perms: Vec<Vec<usize>> = x
        .carriers()
        .iter()
        .map(|c| {
            let mut p: Vec<usize> = (0..c.len()).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    // new position of old element e is perms[n][e]
    let mut inv: Vec<Vec<usize>> = perms.iter().map(|p| vec![0; p.len()]).collect();
    for (n, p) in perms.iter().enumerate() {
        for (old, &new) in p.iter().enumerate() {
            inv[n][new] = old;
        }
    }
    let carriers: Vec<FiniteSet> = (0..=x.dim())
        .map(|n| FiniteSet::from_vec_unchecked(inv[n].iter().map(|&o| x.carrier(n).label(o).to_string()).collect()))
        .collect();
    let remap = |f: &Listing, n: usize, t: usize| -> Vec<Vec<usize>> {
        inv[n].iter().map(|&o| f.image(o).iter().map(|&z| perms[t][z]).collect()).collect()
    };
    let faces = (0..=x.dim()).map(|n| x.faces(n).iter().map(|f| remap(f, n, n - 1)).collect()).collect();
    let degs = (0..x.dim()).map(|n| x.degeneracies(n).iter().map(|s| remap(s, n, n + 1)).collect()).collect();
    TruncSList::from_images(carriers, faces, degs).unwrap()
}

#[test]
fn homology_is_invariant_under_relabeling() {
    let u = build_u_alpha(&LeveledShape::from_values(vec![3, 1], vec![vec![0, 0, 0]]).unwrap(), 3);
    let h = homology_all(&chain_complex(&u.slist).unwrap());
    for seed in 0..5 {
        let p = permuted(&u.slist, seed);
        assert!(p.validate().is_empty());
        assert_eq!(homology_all(&chain_complex(&p).unwrap()).groups, h.groups);
    }
}

#[test]
fn contraction_of_a_point() {
    let report = verify_contraction(&SListAugmentation::point(3));
    assert!(report.holds(), "{report:?}");
}

#[test]
fn key_nerve_augmentation_contracts() {
    for alpha in [two_level(), LeveledShape::point_chain(1)].into_iter().chain(enumerate_rooted(1, 3).into_iter().map(|r| r.into_shape())) {
        let (key, x) = key_nerve(&alpha, 3);
        let aug = nerve_augmentation(&key, &x).unwrap();
        let report = verify_contraction(&aug);
        assert!(report.holds(), "{:?}", report.failures.first());
        // H_0 ≅ ℤA_0 and higher vanish, consistent with the contraction
        let h = homology_all(&chain_complex(x.slist()).unwrap());
        assert!(h.groups[0].is_free(alpha.size(0)));
        assert!(h.groups[1..].iter().all(HomologyGroup::is_zero));
    }
}

#[test]
fn rooted_shapes_contract_on_samples() {
    let report = verify_rooted_contraction(4, 3, 500, 2024);
    assert!(report.holds(), "{:?}", report.failures.first());
    assert_eq!(report.coverage, Coverage::Sampled { samples: 500, seed: 2024 });
    assert_eq!(report.homotopy_cells.iter().sum::<usize>(), 500);
}

#[test]
fn broken_extra_degeneracy_is_reported() {
    let mut aug = SListAugmentation::point(2);
    let empty = Listing::new(aug.x.carrier(0).clone(), aug.x.carrier(1).clone(), vec![vec![]]).unwrap();
    aug.extra[1] = empty;
    let report = verify_contraction(&aug);
    assert!(!report.holds());
    assert!(report.failures.iter().any(|w| w.identity.starts_with("d0 s-1")));
}

#[test]
fn thick_columns_contract() {
    let thick = crate::thicken::build_thick(&two_level(), 2, 2).unwrap();
    for k in 0..=2 {
        let report = verify_thick_contraction(&thick, k);
        assert!(report.holds(), "{:?}", report.failures.first());
        assert_eq!(report.identity_cells.len(), 3);
    }
}

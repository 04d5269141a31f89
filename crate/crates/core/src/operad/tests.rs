use std::collections::HashMap;

use proptest::prelude::*;

use super::key::{counit, underlying_multigraph};
use super::vector::{compose_vectors, pack_at};
use super::*;
use crate::delta::{act, enumerate_rooted, merge, LeveledShape, MonotoneMap};
use crate::list::FiniteSet;
use crate::sample;

fn two_level() -> LeveledShape {
    LeveledShape::from_values(vec![2, 2, 1], vec![vec![0, 1], vec![0, 0]]).unwrap()
}

/// `a1 -f1-> b1`, `a2 -f2-> b2`, `(b1, b2) -g-> c`.
fn tree_graph() -> Multigraph {
    let colors = FiniteSet::new(["a1", "a2", "b1", "b2", "c"]).unwrap();
    let edges = vec![
        Edge { name: "f1".into(), inputs: vec![0], output: 2 },
        Edge { name: "f2".into(), inputs: vec![1], output: 3 },
        Edge { name: "g".into(), inputs: vec![2, 3], output: 4 },
    ];
    Multigraph::new(colors, edges).unwrap()
}

const F1: Arrow = Arrow::Edge(0);
const F2: Arrow = Arrow::Edge(1);
const G: Arrow = Arrow::Edge(2);

#[test]
fn example_pair_parses_equal() {
    let g = tree_graph();
    let v = OpVector::new(vec![vec![Arrow::Id(0), F2], vec![F1, Arrow::Id(3)], vec![G]]);
    let w = OpVector::new(vec![vec![F1, F2], vec![G]]);
    assert!(ou_equivalent(&g, &v, &w).unwrap());
    assert_eq!(vector_to_term(&g, &w).unwrap().render(&g), "g(f1(a1),f2(a2))");
    assert_eq!(term_to_vector(&g, &vector_to_term(&g, &v).unwrap()), w);
}

#[test]
fn single_edge_and_nullary() {
    let g = tree_graph();
    let t = vector_to_term(&g, &OpVector::new(vec![vec![G]])).unwrap();
    assert_eq!(t, PlanarTerm::generator(&g, 2));

    let colors = FiniteSet::new(["x"]).unwrap();
    let h = Multigraph::new(colors, vec![Edge { name: "u".into(), inputs: vec![], output: 0 }]).unwrap();
    let v = OpVector::new(vec![vec![], vec![], vec![Arrow::Edge(0)]]);
    assert_eq!(vector_to_term(&h, &v).unwrap(), PlanarTerm::Node(0, vec![]));
    assert_eq!(term_to_vector(&h, &PlanarTerm::Node(0, vec![])).entries, vec![vec![Arrow::Edge(0)]]);
}

#[test]
fn ill_typed_vectors_are_rejected() {
    let g = tree_graph();
    assert!(vector_to_term(&g, &OpVector::new(vec![vec![G], vec![F1]])).is_err());
    assert!(vector_to_term(&g, &OpVector::new(vec![vec![F1, F2]])).is_err());
}

#[test]
fn concat_of_column_matrices() {
    let g = tree_graph();
    let m = OperationMatrix::new(&g, vec![OpVector::new(vec![vec![F1]]), OpVector::new(vec![vec![F2]])]).unwrap();
    let n = OperationMatrix::new(&g, vec![OpVector::new(vec![vec![G]])]).unwrap();
    let c = concat(&g, &m, &n).unwrap();
    assert_eq!(c.rows, vec![OpVector::new(vec![vec![F1, F2], vec![G]])]);
    assert_eq!(split(&n), n.rows);
}

#[test]
fn identity_column_insertion_preserves_class() {
    let g = tree_graph();
    let w = OpVector::new(vec![vec![F1, F2], vec![G]]);
    for at in 0..=2 {
        let v = w.rewrite(&g, &Rewrite::InsertColumn { at }).unwrap();
        assert!(ou_equivalent(&g, &v, &w).unwrap());
    }
}

#[test]
fn t_alpha_two_level_has_eleven_operations() {
    let key = build_t_alpha(&two_level());
    let p = key.operad();
    assert_eq!(p.len(), 11);
    let names: Vec<&str> = p.ops().iter().map(|o| o.name.as_str()).collect();
    for want in ["p2:0(p1:0(0:0),p1:1(0:1))", "p2:0(p1:0(0:0),1:1)", "p2:0(1:0,p1:1(0:1))"] {
        assert!(names.contains(&want), "{want} missing from {names:?}");
    }
    assert_eq!(p.identities().len(), 5);
}

#[test]
fn singleton_chain_is_linear_category() {
    for n in 0..4 {
        let key = build_t_alpha(&LeveledShape::point_chain(n));
        assert_eq!(key.operad().len(), (n + 1) * (n + 2) / 2);
    }
}

#[test]
fn disjoint_union_adds_operations() {
    let mut r = sample::rng(7);
    for _ in 0..20 {
        let a = sample::shape(&mut r, 2, 2, false);
        let b = sample::shape(&mut r, 2, 2, false);
        let ab = merge(&[a.clone(), b.clone()], 2).unwrap();
        let n = |s: &LeveledShape| build_t_alpha(s).operad().len();
        assert_eq!(n(&ab), n(&a) + n(&b));
    }
}

#[test]
fn chain_composites_satisfy_transitivity() {
    let alpha = two_level();
    let key = build_t_alpha(&alpha);
    let p = key.operad();
    // p_{1,2} ∘ (p_{0,1}^{(b)})_b = p_{0,2}
    let g = key.chain_op(1, 2, 0);
    let fs: Vec<usize> = (0..2).map(|b| key.chain_op(0, 1, b)).collect();
    assert_eq!(p.compose(g, &fs).unwrap(), Some(key.chain_op(0, 2, 0)));
}

#[test]
fn lambda_identity_and_inner_face() {
    let alpha = two_level();
    let key = build_t_alpha(&alpha);
    assert_eq!(lambda_theta(&MonotoneMap::identity(3), &key).unwrap(), key.identity_morphism());
    let d1 = MonotoneMap::coface(2, 1);
    let lam = lambda_theta(&d1, &key).unwrap();
    let comp = key.chain_op(0, 2, 0);
    assert_eq!(lam.gens, vec![comp]);
    assert_eq!(key.operad().op(comp).name, "p2:0(p1:0(0:0),p1:1(0:1))");
}

#[test]
fn lambda_is_functorial() {
    let mut r = sample::rng(11);
    for _ in 0..100 {
        let n = r.gen_range(0..3);
        let rooted = r.gen_bool(0.5);
        let alpha = sample::shape(&mut r, n, 2, rooted);
        let k = r.gen_range(0..3);
        let l = r.gen_range(0..3);
        let theta = sample::monotone(&mut r, k + 1, n + 1);
        let eta = sample::monotone(&mut r, l + 1, k + 1);
        let key = build_t_alpha(&alpha);
        let direct = lambda_theta(&theta.compose(&eta).unwrap(), &key).unwrap();
        let lt = lambda_theta(&theta, &key).unwrap();
        let via = lt.pull_back(&eta, &act(&theta, &alpha).unwrap(), key.operad()).unwrap().unwrap();
        assert_eq!(direct, via);
    }
}

fn brute_force_homs(alpha: &LeveledShape, p: &FiniteOperad) -> usize {
    let total = alpha.total_size();
    let k = p.colors().len();
    let mut count = 0;
    let mut colors = vec![0usize; total];
    loop {
        // every generator assignment of the right arity, filtered by typing
        let pools: Vec<Vec<usize>> = (1..=alpha.degree())
            .flat_map(|i| (0..alpha.size(i)).map(move |a| (i, a)))
            .map(|(i, a)| {
                let want: Vec<usize> = alpha.map(i).fiber(a).map(|b| colors[alpha.offset(i - 1) + b]).collect();
                let out = colors[alpha.offset(i) + a];
                (0..p.len()).filter(|&f| p.op(f).output == out && p.op(f).inputs == want).collect()
            })
            .collect();
        count += pools.iter().map(Vec::len).product::<usize>();
        let mut t = 0;
        while t < total {
            colors[t] += 1;
            if colors[t] < k {
                break;
            }
            colors[t] = 0;
            t += 1;
        }
        if t == total {
            break;
        }
    }
    count
}

#[test]
fn hom_operads_matches_brute_force() {
    let targets = [
        FiniteOperad::assoc(3),
        FiniteOperad::hom_s(&FiniteSet::indexed("s", 2), 2),
        build_t_alpha(&two_level()).operad().clone(),
    ];
    for p in &targets {
        for n in 0..=2 {
            for alpha in crate::delta::enumerate_shapes(n, 2) {
                let homs = hom_operads(&alpha, p);
                assert!(homs.iter().all(|m| m.is_valid(&alpha, p)));
                assert_eq!(homs.len(), brute_force_homs(&alpha, p), "{alpha:?}");
            }
        }
    }
}

#[test]
fn assoc_has_one_morphism_per_shape() {
    let assoc = FiniteOperad::assoc(3);
    for n in 0..=2 {
        for alpha in enumerate_rooted(n, 3) {
            assert_eq!(hom_operads(&alpha, &assoc).len(), 1);
        }
    }
}

#[test]
fn t_alpha_hom_contains_identity() {
    let alpha = two_level();
    let key = build_t_alpha(&alpha);
    assert!(hom_operads(&alpha, key.operad()).contains(&key.identity_morphism()));
}

#[test]
fn triangle_identities_on_key_operads() {
    for alpha in enumerate_rooted(2, 2) {
        let key = build_t_alpha(&alpha);
        let p = key.operad();
        let g = key.graph();
        // ε ∘ Fη = id: evaluating a term of F M through its generators gives it back
        let gen_ops: Vec<usize> = (0..g.edges().len()).map(|e| p.term_position(&PlanarTerm::generator(g, e)).unwrap()).collect();
        for f in 0..p.len() {
            assert_eq!(counit(p, &gen_ops, p.term(f).unwrap()).unwrap(), Some(f));
        }
        // Uε ∘ ηU = id: a generator term over U P evaluates to its operation
        let (u, edge_ops) = underlying_multigraph(p);
        for e in 0..u.edges().len() {
            assert_eq!(counit(p, &edge_ops, &PlanarTerm::generator(&u, e)).unwrap(), Some(edge_ops[e]));
        }
    }
}

#[test]
fn table_operads_are_validated() {
    // Z/2 as a one-object category
    let colors = FiniteSet::new(["*"]).unwrap();
    let ops = vec![
        Operation { name: "e".into(), inputs: vec![0], output: 0 },
        Operation { name: "t".into(), inputs: vec![0], output: 0 },
    ];
    let mut table = HashMap::new();
    table.insert((1, vec![1]), 0);
    assert!(FiniteOperad::from_table(colors.clone(), ops.clone(), vec![0], table.clone()).is_ok());
    table.insert((1, vec![1]), 1);
    // t∘t = t is a valid monoid too; a missing entry is not
    assert!(FiniteOperad::from_table(colors.clone(), ops.clone(), vec![0], table).is_ok());
    assert!(FiniteOperad::from_table(colors, ops, vec![0], HashMap::new()).is_err());
}

#[test]
fn free_operads_are_associative() {
    let key = build_t_alpha(&two_level());
    key.operad().validate().unwrap();
    FiniteOperad::assoc(3).check_associativity().unwrap();
    FiniteOperad::hom_s(&FiniteSet::indexed("s", 2), 2).check_associativity().unwrap();
}

#[test]
fn envelope_of_assoc_counts_monotone_maps() {
    let assoc = FiniteOperad::assoc(3);
    let env = Envelope::new(&assoc, 3);
    let binom = |n: u128, k: u128| (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1));
    for p in 0..=3usize {
        for q in 0..=3usize {
            let n = env.hom(&vec![0; p], &vec![0; q]).len() as u128;
            let want = if q == 0 { u128::from(p == 0) } else { binom((p + q - 1) as u128, p as u128) };
            assert_eq!(n, want, "p={p} q={q}");
        }
    }
    let empty: Vec<usize> = Vec::new();
    assert_eq!(env.hom(&empty, &empty), vec![EnvMorphism { ops: vec![] }]);
}

#[test]
fn envelope_hom_matches_formula() {
    let ps = [FiniteOperad::hom_s(&FiniteSet::indexed("s", 2), 2), build_t_alpha(&two_level()).operad().clone()];
    for p in &ps {
        let env = Envelope::new(p, 2);
        for x in env.objects() {
            for y in env.objects() {
                assert_eq!(env.hom(x, y).len() as u128, env.hom_count_formula(x, y));
            }
        }
        assert_eq!(env.chains(2).len() as u128, env.count_chains(2));
    }
}

#[test]
fn envelope_composition_is_unital() {
    let p = build_t_alpha(&two_level()).operad().clone();
    let env = Envelope::new(&p, 2);
    for x in env.objects() {
        for m in env.hom_from(x) {
            let y = env.target(&m);
            assert_eq!(env.compose(&env.identity(&y), &m).unwrap(), Some(m.clone()));
            assert_eq!(env.compose(&m, &env.identity(x)).unwrap(), Some(m.clone()));
        }
    }
}

use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn term_vector_round_trip(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let g = sample::acyclic_multigraph(&mut r, 4, 5, 3);
        let t = sample::any_term(&mut r, &g, 4);
        t.check(&g).unwrap();
        let v = term_to_vector(&g, &t);
        prop_assert_eq!(vector_to_term(&g, &v).unwrap(), t);
    }

    #[test]
    fn rewrites_preserve_terms(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let g = sample::acyclic_multigraph(&mut r, 4, 5, 3);
        let t = sample::any_term(&mut r, &g, 4);
        let mut v = term_to_vector(&g, &t);
        for _ in 0..10 {
            if let Some(rw) = sample::rewrite(&mut r, &g, &v) {
                v = v.rewrite(&g, &rw).unwrap();
                prop_assert_eq!(&vector_to_term(&g, &v).unwrap(), &t);
            }
        }
    }

    #[test]
    fn split_pack_bijection(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let g = sample::acyclic_multigraph(&mut r, 4, 5, 3);
        let k = r.gen_range(0..4);
        let terms: Vec<PlanarTerm> = (0..k).map(|_| sample::any_term(&mut r, &g, 3)).collect();
        let vs: Vec<OpVector> = terms.iter().map(|t| term_to_vector(&g, t)).collect();
        let m = pack(&g, &vs);
        m.check(&g).unwrap();
        let back: Vec<PlanarTerm> = split(&m).iter().map(|v| vector_to_term(&g, v).unwrap()).collect();
        prop_assert_eq!(&back, &terms);
        let at = r.gen_range(0..4);
        prop_assert_eq!(pack_at(&g, &vs, at).terms(&g).unwrap(), terms.clone());
        prop_assert_eq!(pack(&g, &split(&m)).terms(&g).unwrap(), m.terms(&g).unwrap());
    }

    #[test]
    fn grafting_agrees_with_vectors(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let g = sample::acyclic_multigraph(&mut r, 4, 5, 3);
        let outer = sample::any_term(&mut r, &g, 3);
        let fs: Vec<PlanarTerm> = outer.inputs().iter().map(|&c| sample::term(&mut r, &g, c, 2)).collect();
        let grafted = free_compose(&g, &outer, &fs).unwrap();
        let fv: Vec<OpVector> = fs.iter().map(|t| term_to_vector(&g, t)).collect();
        let composed = compose_vectors(&g, &term_to_vector(&g, &outer), &fv).unwrap();
        prop_assert_eq!(vector_to_term(&g, &composed).unwrap(), grafted.clone());
        // identities are neutral
        let leaves: Vec<PlanarTerm> = outer.inputs().iter().map(|&c| PlanarTerm::Leaf(c)).collect();
        prop_assert_eq!(free_compose(&g, &outer, &leaves).unwrap(), outer.clone());
        let root = PlanarTerm::Leaf(outer.output(&g));
        prop_assert_eq!(free_compose(&g, &root, std::slice::from_ref(&outer)).unwrap(), outer);
    }

    #[test]
    fn grafting_is_associative(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let g = sample::acyclic_multigraph(&mut r, 4, 5, 3);
        let a = sample::any_term(&mut r, &g, 2);
        let bs: Vec<PlanarTerm> = a.inputs().iter().map(|&c| sample::term(&mut r, &g, c, 2)).collect();
        let ab = free_compose(&g, &a, &bs).unwrap();
        let cs: Vec<PlanarTerm> = ab.inputs().iter().map(|&c| sample::term(&mut r, &g, c, 2)).collect();
        let left = free_compose(&g, &ab, &cs).unwrap();
        let mut rest = cs.as_slice();
        let inner: Vec<PlanarTerm> = bs
            .iter()
            .map(|b| {
                let k = b.arity();
                let out = free_compose(&g, b, &rest[..k]).unwrap();
                rest = &rest[k..];
                out
            })
            .collect();
        prop_assert_eq!(left, free_compose(&g, &a, &inner).unwrap());
    }
}

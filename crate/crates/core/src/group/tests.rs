use super::*;
use crate::constructors::{abelian, named_group, Atom};
use crate::testutil::{naive_class, naive_closure, to_set};
use proptest::prelude::*;

fn c2_table() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 0]]
}

#[test]
fn cayley_c2_and_klein() {
    let g = build_from_cayley(&c2_table(), None).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!(g.mul(1, 1), 0);
    let v4: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let k = build_from_cayley(&v4, None).unwrap();
    assert!(k.elements().all(|x| k.mul(x, x) == 0));
    assert_eq!(k.classes().count(), 4);
}

#[test]
fn cayley_rejects_repeated_row() {
    let t = vec![vec![0, 1], vec![0, 1]];
    assert!(matches!(build_from_cayley(&t, None), Err(Error::NotLatinSquare { what: "column", .. })));
    let t = vec![vec![0, 0], vec![1, 0]];
    assert!(matches!(build_from_cayley(&t, None), Err(Error::NotLatinSquare { what: "row", .. })));
}

#[test]
fn cayley_rejects_missing_identity_and_nonassociative() {
    // x*y = -x-y mod 3: latin, but nothing acts as an identity.
    let t = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
    assert!(matches!(build_from_cayley(&t, None), Err(Error::NoIdentity)));
    // Loop of order 5 with identity 0 that is not a group.
    let t = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    assert!(matches!(build_from_cayley(&t, None), Err(Error::NonAssociative { .. })));
}

#[test]
fn cayley_moves_identity_to_zero() {
    // C2 with the identity stored at index 1.
    let t = vec![vec![1, 0], vec![0, 1]];
    let g = build_from_cayley(&t, Some(vec!["s".into(), "e".into()])).unwrap();
    assert_eq!(g.label(0), "e");
    assert_eq!(g.mul(1, 1), 0);
}

#[test]
fn permutation_closures() {
    let s3 = build_from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(s3.backend(), BackendKind::PermutationClosure);
    let triv = build_from_permutations(4, &[]).unwrap();
    assert_eq!(triv.order(), 1);
    let a5 = build_from_permutations(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]).unwrap();
    assert_eq!(a5.order(), 60);
    assert!(matches!(build_from_permutations(3, &[vec![0, 0, 1]]), Err(Error::NotAPermutation { .. })));
}

#[test]
fn permutation_products_compose_left_to_right() {
    let s3 = build_from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
    for a in s3.elements() {
        for b in s3.elements() {
            let (pa, pb) = (s3.permutation(a).unwrap(), s3.permutation(b).unwrap());
            let expect: Vec<u16> = pa.iter().map(|&i| pb[i as usize]).collect();
            assert_eq!(s3.permutation(s3.mul(a, b)).unwrap(), &expect[..]);
        }
    }
}

#[test]
fn oracle_backend_agrees_with_table() {
    let caps = Caps {
        dense_table: 10,
        ..Caps::default()
    };
    let gens = [vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
    let big = build_from_permutations_with(4, &gens, &caps, "S4".into()).unwrap();
    let small = build_from_permutations(4, &gens).unwrap();
    assert_eq!(big.order(), 24);
    for a in big.elements() {
        for b in big.elements() {
            assert_eq!(big.mul(a, b), small.mul(a, b));
        }
        assert_eq!(big.mul(a, big.inverse(a)), 0);
    }
}

#[test]
fn direct_products() {
    let c2 = named_group(&Atom::Cyclic(2)).unwrap();
    let c3 = named_group(&Atom::Cyclic(3)).unwrap();
    let c6 = named_group(&Atom::Cyclic(6)).unwrap();
    let p = build_direct_product(&[c2.clone(), c3]).unwrap();
    assert_eq!(p.order(), 6);
    assert_eq!(p.backend(), BackendKind::DirectProduct);
    assert!(is_isomorphic(&p, &c6).is_isomorphic());
    assert_eq!(p.product_coordinates(4), Some(vec![1, 1]));
    let m9 = named_group(&Atom::M9).unwrap();
    let mm = build_direct_product(&[m9.clone(), m9]).unwrap();
    assert_eq!(mm.order(), 5184);
    assert!(matches!(build_direct_product(&[]), Err(Error::EmptyProduct)));
    assert!(build_direct_product(&[c2.clone()]).unwrap().same_group(&c2));
}

#[test]
fn closure_and_centralizers() {
    let s3 = named_group(&Atom::Symmetric(3)).unwrap();
    let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    let h = closure(&s3, &ElementSet::singleton(6, t));
    assert_eq!(h.size(), 2);
    assert_eq!(centralizer(&s3, &h), h);
    assert_eq!(center(&s3).size(), 1);
    let q8 = named_group(&Atom::Q8).unwrap();
    assert_eq!(center(&q8).size(), 2);
}

#[test]
fn class_counts() {
    for (atom, k) in [(Atom::Symmetric(3), 3), (Atom::Cyclic(12), 12), (Atom::M9, 6), (Atom::Q8, 5)] {
        let g = named_group(&atom).unwrap();
        assert_eq!(g.classes().count(), k, "{atom}");
    }
}

#[test]
fn isomorphism_verdicts() {
    let d8 = named_group(&Atom::Dihedral(8)).unwrap();
    let q8 = named_group(&Atom::Q8).unwrap();
    assert_eq!(is_isomorphic(&d8, &q8).decided(), Some(false));
    let agaml = named_group(&Atom::AGammaL1(4)).unwrap();
    let s4 = named_group(&Atom::Symmetric(4)).unwrap();
    match is_isomorphic(&agaml, &s4) {
        IsoVerdict::Isomorphic(h) => {
            h.validate().unwrap();
            assert!(h.is_bijective());
        }
        v => panic!("expected an isomorphism, got {v:?}"),
    }
}

#[test]
fn isomorphism_budget_gives_unknown() {
    let caps = Caps {
        iso_nodes: 1,
        ..Caps::default()
    };
    let gens = [vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]];
    let a = build_from_permutations_with(5, &gens, &caps, "S5".into()).unwrap();
    let b = build_from_permutations_with(5, &[vec![0, 2, 1, 3, 4], vec![4, 0, 1, 2, 3]], &caps, "S5'".into()).unwrap();
    assert!(matches!(is_isomorphic(&a, &b), IsoVerdict::Unknown | IsoVerdict::Isomorphic(_)));
}

fn small_groups() -> Vec<Group> {
    let mut v: Vec<Group> = [
        Atom::Cyclic(1),
        Atom::Cyclic(7),
        Atom::Symmetric(3),
        Atom::Symmetric(4),
        Atom::Alternating(4),
        Atom::Dihedral(10),
        Atom::Q8,
        Atom::QD16,
        Atom::C7C3,
        Atom::Agl1(5),
        Atom::M9,
    ]
    .iter()
    .map(|a| named_group(a).unwrap())
    .collect();
    v.push(abelian(&[2, 4]).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classes_partition_and_match_brute_force(i in 0usize..12, x in 0usize..1000) {
        let g = &small_groups()[i];
        let x = x % g.order();
        let cd = g.classes();
        let class: Vec<usize> = cd.members(cd.class(x)).collect();
        let oracle: Vec<usize> = naive_class(g, x).into_iter().collect();
        prop_assert_eq!(&class, &oracle);
        prop_assert_eq!(cd.sizes.iter().sum::<usize>(), g.order());
        prop_assert_eq!(g.order() % cd.sizes[cd.class(x)], 0);
        let inv = cd.class(g.inverse(x));
        prop_assert_eq!(cd.inverse_class[cd.class(x)], inv);
        prop_assert_eq!(cd.element_orders[cd.class(x)], g.element_order(x));
    }

    #[test]
    fn closure_matches_naive(i in 0usize..12, a in 0usize..1000, b in 0usize..1000) {
        let g = &small_groups()[i];
        let (a, b) = (a % g.order(), b % g.order());
        let s = ElementSet::from_elements(g.order(), [a, b]);
        prop_assert_eq!(closure(g, &s), to_set(g, &naive_closure(g, &[a, b])));
    }

    #[test]
    fn isomorphism_is_symmetric(i in 0usize..12, j in 0usize..12) {
        let gs = small_groups();
        let ab = is_isomorphic(&gs[i], &gs[j]).decided();
        let ba = is_isomorphic(&gs[j], &gs[i]).decided();
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(ab, Some(i == j));
    }
}

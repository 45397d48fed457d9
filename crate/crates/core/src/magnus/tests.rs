use super::*;
use crate::constructors::{abelian, named_group, Atom};
use crate::group::build_direct_product;
use proptest::prelude::*;

fn named(a: Atom) -> Group {
    named_group(&a).unwrap()
}

#[test]
fn counting_examples() {
    let s3 = magnus_sets(&named(Atom::Symmetric(3)));
    assert_eq!((s3.a.len(), s3.b.len()), (3, 3));
    let c12 = magnus_sets(&named(Atom::Cyclic(12)));
    assert_eq!((c12.a.len(), c12.b.len()), (7, 6));
    let t = magnus_sets(&named(Atom::Cyclic(1)));
    assert_eq!((t.a.len(), t.b.len()), (1, 1));
}

#[test]
fn verdicts() {
    let m9 = magnus_status(&named(Atom::M9));
    assert!(m9.mp && m9.smp);
    let c73 = magnus_status(&named(Atom::C7C3));
    assert!(c73.mp && !c73.smp);
    let c3 = magnus_status(&named(Atom::Cyclic(3)));
    assert!(c3.mp && !c3.smp);
    let g = named(Atom::C7C3);
    let gg = build_direct_product(&[g.clone(), g]).unwrap();
    let r = magnus_status(&gg);
    assert!(!r.mp);
    let (x, y) = r.witness.unwrap();
    let cd = gg.classes();
    let closures = class_closures(&gg);
    assert_eq!(closures[cd.class(x)], closures[cd.class(y)]);
    assert_ne!(cd.class(x), cd.class(y));
    assert_ne!(cd.class(gg.inverse(x)), cd.class(y));
}

#[test]
fn c12_witness_is_least_pair() {
    let g = named(Atom::Cyclic(12));
    let r = magnus_status(&g);
    // Classes are singletons ordered by index; 1 and 5 generate C12 and are not inverse.
    assert_eq!(r.witness, Some((1, 5)));
}

fn corpus() -> Vec<Group> {
    let mut v: Vec<Group> = [
        Atom::Symmetric(3),
        Atom::Symmetric(4),
        Atom::Alternating(4),
        Atom::Dihedral(8),
        Atom::Q8,
        Atom::QD16,
        Atom::C7C3,
        Atom::Agl1(5),
        Atom::Agl1(7),
        Atom::M9,
        Atom::Cyclic(8),
    ]
    .iter()
    .map(|&a| named(a))
    .collect();
    v.push(abelian(&[2, 4, 4]).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn report_invariants(i in 0usize..12) {
        let g = &corpus()[i];
        let r = magnus_status(g);
        prop_assert_eq!(r.mp, r.a_count == r.b_count);
        prop_assert_eq!(r.smp, r.mp && r.all_real);
        prop_assert_eq!(r.witness.is_some(), !r.mp);
        prop_assert!(r.a_count >= r.b_count);
        prop_assert_eq!(magnus_pairwise(g), r.witness);
        let s = magnus_sets(g);
        let mut hit = vec![false; s.b.len()];
        for &b in &s.a_to_b {
            hit[b] = true;
        }
        prop_assert!(hit.into_iter().all(|h| h));
    }
}

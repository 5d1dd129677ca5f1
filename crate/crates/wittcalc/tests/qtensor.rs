use proptest::prelude::*;

use wittcalc::abelian::{tensor_raw, AbHom, Element, FinAbGroup};
use wittcalc::formparam::{aut_generators, from_q_minus, FPMorphism, FormParameter, StandardName};
use wittcalc::qtensor::{check_sequences, gamma, induced_map, lambda_one, present, Symbol};
use wittcalc::Matrix;

fn std_param(s: &str) -> FormParameter {
    FormParameter::standard(s.parse().unwrap()).unwrap()
}

fn g(orders: &[u64]) -> FinAbGroup {
    FinAbGroup::new(orders.to_vec())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cyclic column of the table, written out per parameter.
fn table(n: u64, name: &str) -> Vec<u64> {
    let d = gcd(n, 2);
    match name {
        "Q+" => vec![n],
        "ZP" => if n == 0 { vec![0, 0] } else { vec![d * n, n / d] },
        "ZP_1" | "ZP_2" | "ZP_3" => {
            let k: u32 = name[3..].parse().unwrap();
            if n == 0 { vec![0, 1 << k] } else { vec![d * n, gcd(n / d, 1 << k)] }
        }
        "Q^+" => vec![d * n],
        "Q-" => vec![if n == 0 { 2 } else { d }],
        "ZL_2" | "ZL_3" => {
            let k: u32 = name[3..].parse().unwrap();
            vec![if n == 0 { 1 << k } else { gcd(n, 1 << k) }]
        }
        "Q^-" => vec![],
        _ => unreachable!(),
    }
}

const NAMES: [&str; 10] = ["Q+", "ZP", "ZP_1", "ZP_2", "ZP_3", "Q^+", "Q-", "ZL_2", "ZL_3", "Q^-"];

#[test]
fn cyclic_table() {
    for name in NAMES {
        for n in 0..=16u64 {
            let pres = present(&g(&[n]), &std_param(name)).unwrap();
            assert!(pres.group().is_isomorphic(&g(&table(n, name))), "Z_{n} ⊗ {name}: {:?}", pres.group());
        }
    }
}

#[test]
fn present_examples() {
    assert!(present(&g(&[6]), &std_param("Q^+")).unwrap().group().is_isomorphic(&g(&[12])));
    assert!(present(&g(&[6]), &std_param("ZP")).unwrap().group().is_isomorphic(&g(&[12, 3])));
    assert!(present(&g(&[2, 3]), &std_param("Q-")).unwrap().group().is_isomorphic(&g(&[2])));
    assert!(present(&g(&[2, 2]), &std_param("Q^-")).unwrap().group().is_isomorphic(&g(&[2])));
    assert!(present(&FinAbGroup::trivial(), &std_param("ZP")).unwrap().group().is_trivial());
}

#[test]
fn reduce_symbol_examples() {
    let qh = std_param("Q^+");
    let pres = present(&g(&[0]), &qh).unwrap();
    let simple = |x: i64| pres.reduce_symbol(&Symbol::Simple { x: vec![x], q: vec![1] }).unwrap();
    assert_eq!(simple(0), pres.group().zero());
    assert_eq!(simple(2), pres.group().scale(4, &simple(1)));
    assert_eq!(simple(-3), pres.group().scale(9, &simple(1)));

    let pres = present(&g(&[0, 4]), &std_param("ZL_3")).unwrap();
    let br = |x: &[i64], y: &[i64]| pres.reduce_symbol(&Symbol::Bracket { x: x.to_vec(), y: y.to_vec(), a: 1 }).unwrap();
    let grp = pres.group();
    assert_eq!(br(&[0, 1], &[1, 0]), grp.scale(-1, &br(&[1, 0], &[0, 1])));
    assert!(grp.is_zero(&grp.add(&br(&[1, 2], &[3, 1]), &br(&[3, 1], &[1, 2]))));
    let zero = pres.reduce_symbol(&Symbol::Simple { x: vec![0, 0], q: vec![5] }).unwrap();
    assert!(grp.is_zero(&zero));
}

#[test]
fn induced_map_examples() {
    for name in NAMES {
        let q = std_param(name);
        let grp = g(&[0, 6]);
        let m = induced_map(&AbHom::identity(&grp), &FPMorphism::identity(&q)).unwrap();
        assert!(m.equals(&AbHom::identity(m.source())), "{name}");
    }
    let into_zl2 = from_q_minus(&std_param("ZL_2")).unwrap();
    let on_z = induced_map(&AbHom::identity(&g(&[0])), &into_zl2).unwrap();
    assert_eq!((on_z.source().orders(), on_z.target().orders()), (&[2][..], &[4][..]));
    assert_eq!(on_z.apply(&[1]).0, vec![2]);
    assert!(on_z.is_injective());
    let on_z2 = induced_map(&AbHom::identity(&g(&[2])), &into_zl2).unwrap();
    assert!(!on_z2.is_injective());

    let triple = AbHom::new(g(&[0]), g(&[0]), Matrix::from_rows(&[vec![3]], 1)).unwrap();
    let on_gamma = induced_map(&triple, &FPMorphism::identity(&std_param("Q^+"))).unwrap();
    assert_eq!(on_gamma.matrix()[(0, 0)].abs(), 9);
    assert_eq!(gamma(&g(&[0])).unwrap().group(), &g(&[0]));
}

#[test]
fn sequences_hold() {
    let mut params: Vec<FormParameter> = NAMES.iter().map(|n| std_param(n)).collect();
    params.push(std_param("Q^+").split_sum(&g(&[2])));
    params.push(std_param("Q-").split_sum(&g(&[4])));
    params.push(std_param("ZP_1").split_sum(&g(&[3])));
    for q in &params {
        for orders in [vec![], vec![0], vec![2], vec![4], vec![6], vec![8], vec![12], vec![16], vec![2, 2], vec![2, 4], vec![0, 2]] {
            let report = check_sequences(&g(&orders), q).unwrap();
            assert!(report.is_ok(), "{orders:?} ⊗ {q:?}: {:?}", report.failures);
        }
    }
    let report = check_sequences(&g(&[4]), &std_param("ZP_2")).unwrap();
    let order = |name: &str| -> u64 {
        report.groups.iter().find(|(n, _)| n == name).unwrap().1.iter().product()
    };
    assert_eq!(order("S²(G)") * order("G ⊗ SQ"), order("G ⊗ Q"));
    let report = check_sequences(&g(&[0]), &std_param("Q^+")).unwrap();
    assert!(report.groups.iter().all(|(n, o)| n == "G ⊗ SQ" || o == &vec![0]));
    let report = check_sequences(&FinAbGroup::trivial(), &std_param("ZL_2")).unwrap();
    assert!(report.groups.iter().all(|(_, o)| o.iter().all(|&x| x == 1)));
}

/// `(G₁ ⊕ G₂) ⊗ Q ≅ (G₁ ⊗ Q) ⊕ (G₂ ⊗ Q) ⊕ (G₁ ⊗ G₂)` through the inclusions and `[g, h] ⊗ 1`.
#[test]
fn sum_decomposition_is_explicit() {
    for name in ["Q+", "ZP", "Q^+", "Q-", "ZL_3", "Q^-"] {
        let q = std_param(name);
        for (a, b) in [(vec![2], vec![4]), (vec![0], vec![6]), (vec![3, 4], vec![2]), (vec![0], vec![0])] {
            let (g1, g2) = (g(&a), g(&b));
            let sum = g1.direct_sum(&g2);
            let pres = present(&sum, &q).unwrap();
            let id = FPMorphism::identity(&q);
            let inc = |src: &FinAbGroup, offset: usize| {
                let imgs: Vec<Element> = (0..src.ngens()).map(|i| sum.generator(offset + i)).collect();
                AbHom::from_images(src.clone(), sum.clone(), &imgs).unwrap()
            };
            let i1 = induced_map(&inc(&g1, 0), &id).unwrap();
            let i2 = induced_map(&inc(&g2, g1.ngens()), &id).unwrap();
            let raw = tensor_raw(&g1, &g2);
            let mut cross = Vec::new();
            for s in 0..g1.ngens() {
                for t in 0..g2.ngens() {
                    let x = sum.generator(s).0;
                    let y = sum.generator(g1.ngens() + t).0;
                    cross.push(pres.reduce_symbol(&Symbol::Bracket { x, y, a: 1 }).unwrap());
                }
            }
            let c = AbHom::from_images(raw, pres.group().clone(), &cross).unwrap();
            assert!(i1.copair(&i2).copair(&c).is_isomorphism(), "{name} {a:?} {b:?}");
        }
    }
}

#[test]
fn lambda_one_of_small_groups() {
    assert!(lambda_one(&g(&[6])).unwrap().group().is_isomorphic(&g(&[2])));
    assert!(lambda_one(&g(&[2, 2])).unwrap().group().is_isomorphic(&g(&[2, 2, 2])));
}

fn small_group() -> impl Strategy<Value = FinAbGroup> {
    proptest::collection::vec(prop_oneof![Just(0u64), Just(2), Just(3), Just(4), Just(6)], 1..=2).prop_map(FinAbGroup::new)
}

fn param() -> impl Strategy<Value = FormParameter> {
    (0..NAMES.len(), prop_oneof![Just(1u64), Just(2), Just(3)])
        .prop_map(|(i, h)| std_param(NAMES[i]).split_sum(&FinAbGroup::cyclic(h)))
}

fn element(grp: &FinAbGroup, seed: &[i64]) -> Vec<i64> {
    grp.orders().iter().zip(seed).map(|(_, &s)| s).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn defining_relations_hold(grp in small_group(), q in param(), xs in proptest::collection::vec(-4i64..=4, 2),
                               ys in proptest::collection::vec(-4i64..=4, 2), qs in proptest::collection::vec(-4i64..=4, 6),
                               rs in proptest::collection::vec(-4i64..=4, 6), a in -4i64..=4) {
        let pres = present(&grp, &q).unwrap();
        let t = pres.group();
        let c = q.carrier().ngens();
        let (x, y) = (element(&grp, &xs), element(&grp, &ys));
        let (qv, rv) = (qs[..c].to_vec(), rs[..c].to_vec());
        let simple = |x: &[i64], q: &[i64]| pres.reduce_symbol(&Symbol::Simple { x: x.to_vec(), q: q.to_vec() }).unwrap();
        let bracket = |x: &[i64], y: &[i64], a: i64| pres.reduce_symbol(&Symbol::Bracket { x: x.to_vec(), y: y.to_vec(), a }).unwrap();
        let xy: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let rhs = t.add(&t.add(&simple(&x, &qv), &simple(&y, &qv)), &bracket(&x, &y, q.h_of(&qv)));
        prop_assert!(t.eq_elem(&simple(&xy, &qv), &rhs));
        prop_assert!(t.eq_elem(&bracket(&x, &x, a), &simple(&x, &q.p_of(a))));
        let qr: Vec<i64> = qv.iter().zip(&rv).map(|(a, b)| a + b).collect();
        prop_assert!(t.eq_elem(&simple(&x, &qr), &t.add(&simple(&x, &qv), &simple(&x, &rv))));
        prop_assert!(t.eq_elem(&bracket(&xy, &y, a), &t.add(&bracket(&x, &y, a), &bracket(&y, &y, a))));
        prop_assert!(t.eq_elem(&bracket(&y, &x, a), &t.scale(q.epsilon(), &bracket(&x, &y, a))));
        // Independent of the representative of x.
        let shifted: Vec<i64> = x.iter().zip(grp.orders()).map(|(&v, &o)| v + o as i64).collect();
        prop_assert!(t.eq_elem(&simple(&shifted, &qv), &simple(&x, &qv)));
    }

    #[test]
    fn induced_map_is_functorial(src in small_group(), f1 in proptest::collection::vec(-3i64..=3, 4),
                                 f2 in proptest::collection::vec(-3i64..=3, 4), pick in 0usize..4) {
        let mid = FinAbGroup::new(vec![0, 12]);
        let dst = FinAbGroup::new(vec![4]);
        let hom = |s: &FinAbGroup, t: &FinAbGroup, e: &[i64]| {
            let cols: Vec<Vec<i64>> = (0..s.ngens()).map(|i| e[i * t.ngens()..(i + 1) * t.ngens()].to_vec()).collect();
            let m = Matrix::from_cols(&cols, t.ngens());
            AbHom::new(s.clone(), t.clone(), m).ok()
        };
        let (Some(a), Some(b)) = (hom(&src, &mid, &f1), hom(&mid, &dst, &f2)) else { return Ok(()) };
        let alpha = match pick {
            0 => aut_generators(StandardName::Zp(2)).unwrap()[1].clone(),
            1 => aut_generators(StandardName::Zp(2)).unwrap()[0].clone(),
            2 => aut_generators(StandardName::ZLambda(3)).unwrap()[1].clone(),
            _ => FPMorphism::identity(&std_param("Q-")),
        };
        let lhs = induced_map(&b.compose(&a).unwrap(), &alpha.compose(&alpha).unwrap()).unwrap();
        let rhs = induced_map(&b, &alpha).unwrap().compose(&induced_map(&a, &alpha).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }
}

use proptest::prelude::*;

use wittcalc::abelian::{AbHom, FinAbGroup};
use wittcalc::formparam::{aut_generators, from_q_minus, from_q_plus, zp_morphism, FormParameter, QuasiWu, StandardName};
use wittcalc::qform::{metabolic_search, MetabolicSearch, QForm};
use wittcalc::qtensor::present;
use wittcalc::witt::*;
use wittcalc::Matrix;

fn std_param(s: &str) -> FormParameter {
    FormParameter::standard(s.parse().unwrap()).unwrap()
}

fn g(orders: &[u64]) -> FinAbGroup {
    FinAbGroup::new(orders.to_vec())
}

fn form(param: &FormParameter, rows: &[&[i64]], mu: &[&[i64]]) -> QForm {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    QForm::new(param.clone(), Matrix::from_rows(&rows, rows.len()), mu.iter().map(|m| m.to_vec()).collect()).unwrap()
}

fn canonical(p: &FormParameter) -> Vec<u64> {
    witt_group(p).unwrap().canonical.orders().to_vec()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn indecomposable_witt_groups() {
    assert_eq!(canonical(&std_param("Q+")), vec![0]);
    assert_eq!(canonical(&std_param("ZP")), vec![0, 0]);
    assert_eq!(canonical(&std_param("Q^+")), vec![0]);
    assert_eq!(canonical(&std_param("Q-")), vec![2]);
    assert_eq!(canonical(&std_param("Q^-")), Vec::<u64>::new());
    for k in 1..=6u32 {
        let expected = if k == 1 { vec![0] } else { vec![1 << (k - 1), 0] };
        assert_eq!(canonical(&std_param(&format!("ZP_{k}"))), expected, "ZP_{k}");
    }
    for k in 2..=6u32 {
        assert_eq!(canonical(&std_param(&format!("ZL_{k}"))), Vec::<u64>::new(), "ZL_{k}");
    }
}

#[test]
fn witt_group_examples() {
    let d = witt_group(&std_param("ZP_3")).unwrap();
    assert_eq!(d.group.orders(), &[0, 4]);
    assert_eq!(d.generators, vec!["σ*".to_string(), "ρ3*".to_string()]);
    for l in 1..=12u64 {
        let delta = gcd(2, l) * l;
        let delta_bar = gcd(2, l);
        let grp = |name: &str| canonical(&std_param(name).split_sum(&g(&[l])));
        assert!(g(&grp("Q+")).is_isomorphic(&g(&[0, l])), "Q+ ⊕ Z_{l}");
        assert!(g(&grp("Q^+")).is_isomorphic(&g(&[0, delta])), "Q^+ ⊕ Z_{l}");
        assert!(g(&grp("Q-")).is_isomorphic(&g(&[2, delta_bar])), "Q- ⊕ Z_{l}");
        assert!(grp("Q^-").is_empty(), "Q^- ⊕ Z_{l}");
    }
    assert_eq!(canonical(&std_param("ZL_2").split_sum(&g(&[2]))), vec![2]);
}

#[test]
fn rho_examples() {
    let zp = std_param("ZP");
    let rho_star = form(&zp, &[&[0, 1], &[1, 0]], &[&[0, 1], &[0, -1]]);
    let r = rho(&rho_star).unwrap();
    assert_eq!((r.sigma, r.value()), (0, 1));
    let sigma_star = form(&zp, &[&[1]], &[&[1, 0]]);
    let r = rho(&sigma_star).unwrap();
    assert_eq!((r.sigma, r.value()), (1, 0));
    for k in 1..=5u32 {
        let phi_lift = form(&zp, &[&[1, 1], &[1, 0]], &[&[1, 1 << (k - 1)], &[0, 1 << k]]);
        let r = rho(&phi_lift).unwrap();
        assert_eq!(r.omega, vec![1 + (1 << k), 1 << (k + 1)]);
        assert_eq!(r.omega_hat_square, 1 << (k + 2));
        assert_eq!((r.sigma, r.value()), (0, -(1 << (k - 1))));
        if k >= 2 {
            let zpk = std_param(&format!("ZP_{k}"));
            let phi = form(&zpk, &[&[1, 1], &[1, 0]], &[&[1, 1 << (k - 1)], &[0, 0]]);
            assert_eq!(rho(&phi).unwrap().value(), 0);
            assert!(witt_class(&phi).unwrap().is_zero());
        }
    }
    assert!(rho(&form(&std_param("Q^+"), &[&[1]], &[&[1]])).is_err());
}

/// Arf by majority vote of `μ mod 2` over `(Z₂)^n`.
fn democratic_arf(f: &QForm) -> u8 {
    let n = f.rank();
    let ones = (0u32..1 << n)
        .filter(|mask| {
            let x: Vec<i64> = (0..n).map(|i| (mask >> i & 1) as i64).collect();
            f.mu_eval(&x)[0].rem_euclid(2) == 1
        })
        .count();
    u8::from(ones > 1 << (n - 1))
}

#[test]
fn arf_examples() {
    let qm = std_param("Q-");
    assert_eq!(arf(&QForm::hyperbolic(&qm, 1)).unwrap(), 0);
    let c = form(&qm, &[&[0, 1], &[-1, 0]], &[&[1], &[1]]);
    assert_eq!(arf(&c).unwrap(), 1);
    assert_eq!(democratic_arf(&c), 1);
    assert_eq!(arf(&c.direct_sum(&c).unwrap()).unwrap(), 0);
    assert!(arf(&form(&std_param("Q^+"), &[&[1]], &[&[1]])).is_err());
}

fn random_alternating(n: usize, entries: &[i64], mu: &[i64]) -> Option<QForm> {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(2 * i, 2 * i + 1)] = 1;
        m[(2 * i + 1, 2 * i)] = -1;
    }
    let mut b = Matrix::identity(2 * n);
    for (t, e) in entries.iter().enumerate() {
        let (i, j) = (t % (2 * n), (t / 2 + 1) % (2 * n));
        if i != j {
            for r in 0..2 * n {
                let v = b[(r, j)];
                b[(r, i)] += e * v;
            }
        }
    }
    let f = QForm::new(std_param("Q-"), m, mu[..2 * n].iter().map(|&x| vec![x]).collect()).ok()?;
    f.pullback(&b).ok()
}

proptest! {
    #[test]
    fn arf_matches_democratic_count(
        n in 1usize..=4,
        entries in prop::collection::vec(-2i64..=2, 8),
        mu in prop::collection::vec(0i64..2, 8),
    ) {
        let f = random_alternating(n, &entries, &mu).unwrap();
        prop_assert_eq!(arf(&f).unwrap(), democratic_arf(&f));
    }
}

#[test]
fn witt_class_examples() {
    for name in ["Q+", "ZP", "ZP_2", "Q^+", "Q-", "ZL_2", "Q^-"] {
        for extra in [vec![], vec![2], vec![0]] {
            let p = std_param(name).split_sum(&g(&extra));
            assert!(witt_class(&QForm::hyperbolic(&p, 2)).unwrap().is_zero(), "{name} ⊕ {extra:?}");
        }
    }
    for l in [2u64, 3, 4, 6] {
        let p = std_param("Q-").split_sum(&g(&[l]));
        let f = form(&p, &[&[0, 1], &[-1, 0]], &[&[0, 1], &[0, 1]]);
        let c = witt_class(&f).unwrap();
        assert_eq!(c.indec(), &IndecPart::Arf(0));
        let d = witt_group(&p).unwrap();
        let torsion = present(&g(&[l]), &std_param("Q-")).unwrap();
        if l % 2 == 0 {
            assert_eq!(torsion.group().order_of(c.tensor()), Some(2), "Q- ⊕ Z_{l}");
        } else {
            assert!(c.is_zero());
        }
        assert_eq!(d.group.ngens(), 1 + torsion.group().ngens());
    }
}

#[test]
fn f_inverts_gamma_on_generators() {
    for name in ["Q+", "ZP", "ZP_2", "Q^+", "Q-", "ZL_2"] {
        for extra in [vec![2], vec![4], vec![0], vec![2, 6]] {
            let q = std_param(name);
            let grp = g(&extra);
            let pres = present(&grp, &q).unwrap();
            for t in pres.group().generators() {
                let f = gamma_form(&t, &q, &grp).unwrap();
                assert_eq!(f_invariant(&f, &q, &grp).unwrap(), t, "{name} ⊕ {extra:?}");
            }
        }
    }
}

fn split_parameter() -> impl Strategy<Value = (FormParameter, FinAbGroup)> {
    let names = ["Q+", "ZP", "ZP_2", "Q^+", "Q-", "ZL_2", "ZL_3", "Q^-"];
    (0..names.len(), prop::collection::vec(prop::sample::select(vec![0u64, 2, 3, 4, 6]), 1..=2))
        .prop_map(move |(i, orders)| (std_param(names[i]), FinAbGroup::new(orders)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn f_inverts_gamma((q, grp) in split_parameter(), coeffs in prop::collection::vec(-6i64..=6, 12)) {
        let pres = present(&grp, &q).unwrap();
        let t = pres.group().reduce(&coeffs[..pres.group().ngens()]);
        let f = gamma_form(&t, &q, &grp).unwrap();
        prop_assert_eq!(f_invariant(&f, &q, &grp).unwrap(), t);
    }

    #[test]
    fn witt_class_is_metabolic_invariant((q, grp) in split_parameter(), coeffs in prop::collection::vec(-3i64..=3, 12)) {
        let p = q.split_sum(&grp);
        let pres = present(&grp, &q).unwrap();
        let f = gamma_form(&pres.group().reduce(&coeffs[..pres.group().ngens()]), &q, &grp).unwrap();
        let c = witt_class(&f).unwrap();
        prop_assert_eq!(&witt_class(&f.direct_sum(&QForm::hyperbolic(&p, 1)).unwrap()).unwrap(), &c);
        prop_assert_eq!(&witt_class(&f.direct_sum(&QForm::full_metabolic(&p)).unwrap()).unwrap(), &c);
        prop_assert!(witt_class(&f.direct_sum(&f.negate()).unwrap()).unwrap().is_zero());
    }
}

fn matrix_of(h: &AbHom) -> Vec<Vec<i64>> {
    h.matrix().to_rows()
}

fn reduced_rows(h: &AbHom) -> Vec<Vec<i64>> {
    let t = h.target();
    h.matrix().to_cols().iter().map(|c| t.reduce(c).0).fold(vec![vec![]; t.ngens()], |mut rows, col| {
        for (r, v) in rows.iter_mut().zip(col) {
            r.push(v);
        }
        rows
    })
}

#[test]
fn induced_map_q_plus_to_zp() {
    let alpha = from_q_plus(&std_param("ZP")).unwrap();
    let w = induced_witt_map(&alpha).unwrap();
    assert_eq!(matrix_of(&w), vec![vec![8], vec![1]]);
    assert!(w.equals(&pushforward_witt_map(&alpha).unwrap()));
}

#[test]
fn induced_maps_between_zp_parameters() {
    for (k, l) in [(0, 0), (0, 2), (0, 3), (2, 2), (3, 2), (4, 3), (5, 5)] {
        if k > 0 && (l == 0 || l > k) {
            continue;
        }
        for n in -2i64..=2 {
            let w = induced_witt_map(&zp_morphism(n, k, l).unwrap()).unwrap();
            let expected = AbHom::new(
                w.source().clone(),
                w.target().clone(),
                Matrix::from_rows(&[vec![1, 0], vec![-n * (n + 1) / 2, (2 * n + 1) * (2 * n + 1)]], 2),
            )
            .unwrap();
            assert!(w.equals(&expected), "n = {n}, ZP_{k} → ZP_{l}: {:?}", reduced_rows(&w));
        }
    }
    for k in 2..=5u32 {
        let auts = aut_generators(StandardName::Zp(k)).unwrap();
        let beta = induced_witt_map(&auts[0]).unwrap();
        assert!(beta.equals(&AbHom::identity(beta.source())));
        let gamma = induced_witt_map(&auts[1]).unwrap();
        let expected = AbHom::new(gamma.source().clone(), gamma.target().clone(), Matrix::from_rows(&[vec![1, 0], vec![-1, 9]], 2)).unwrap();
        assert!(gamma.equals(&expected), "γ_{k}");
    }
}

#[test]
fn induced_map_agrees_with_split_formula() {
    let morphisms = vec![
        from_q_plus(&std_param("ZP").split_sum(&g(&[2]))).unwrap(),
        from_q_minus(&std_param("ZL_2").split_sum(&g(&[2]))).unwrap(),
        from_q_minus(&std_param("Q-").split_sum(&g(&[4]))).unwrap(),
        zp_morphism(1, 3, 2).unwrap(),
    ];
    for alpha in morphisms {
        let w = induced_witt_map(&alpha).unwrap();
        assert!(w.equals(&pushforward_witt_map(&alpha).unwrap()), "{:?}", alpha.target());
        if let Some((aq, ag)) = split_components(&alpha).unwrap() {
            assert!(w.equals(&split_witt_map(&aq, &ag).unwrap()));
        }
    }
}

#[test]
fn es_witt_over_zp() {
    let zp = std_param("ZP");
    let sigma_star = form(&zp, &[&[1]], &[&[1, 0]]);
    let rho_star = form(&zp, &[&[0, 1], &[1, 0]], &[&[0, 1], &[0, -1]]);
    let a = es_witt(&sigma_star).unwrap();
    let b = es_witt(&rho_star).unwrap();
    assert_eq!(a[0], 1);
    assert_eq!(b[0], 0);
    assert_eq!(a[1].abs(), 1);
    assert_eq!(b[1], -8 * a[1]);
    for k in 2..=4u32 {
        let zpk = std_param(&format!("ZP_{k}"));
        let e = es_hom(&zpk).unwrap();
        assert!(e.is_injective(), "ZP_{k}");
        let imgs = e.images();
        let modulus = 1i64 << (k + 2);
        assert_eq!(e.target().orders()[1] as i64, modulus);
        assert_eq!((imgs[0][0], imgs[1][0]), (1, 0));
        assert_eq!((imgs[1][1] + 8 * imgs[0][1]).rem_euclid(modulus), 0);
    }
}

#[test]
fn eql_witt_examples() {
    let zl = std_param("ZL_2");
    let QuasiWu::Coslice(v) = zl.quasi_wu() else { panic!() };
    let lq = lambda_quotient(&v).unwrap();
    assert!(eql_witt(&zl, &lq.k_generators[0]).unwrap().is_zero());
    let qm = std_param("Q-");
    let zero = vec![0; 1 + lq.lambda_one.group().ngens()];
    assert!(eql_witt(&zl, &zero).unwrap().is_zero());
    let mut c = vec![0; 1 + wittcalc::qtensor::lambda_one(qm.carrier()).unwrap().group().ngens()];
    c[0] = 1;
    assert_eq!(eql_witt(&qm, &c).unwrap().indec(), &IndecPart::Arf(1));
}

#[test]
fn sigma_subgroup_examples() {
    let QuasiWu::Slice(v) = std_param("Q^+").quasi_wu() else { panic!() };
    let s = sigma_subgroup(&v).unwrap();
    assert_eq!(s.ambient.canonical().orders(), &[4, 0]);
    assert_eq!(s.group().orders(), &[0]);
    for k in 1..=4u32 {
        let p = std_param(&format!("ZP_{k}"));
        let QuasiWu::Slice(v) = p.quasi_wu() else { panic!() };
        assert!(sigma_subgroup(&v).unwrap().group().is_isomorphic(&witt_group(&p).unwrap().canonical));
    }
    let QuasiWu::Slice(v) = std_param("Q+").split_sum(&g(&[2, 3])).quasi_wu() else { panic!() };
    let s = sigma_subgroup(&v).unwrap();
    let mut x = s.ambient.zero().0;
    x[0] = 8;
    assert!(s.contains(&x));
    x[0] = 1;
    assert!(!s.contains(&x));
}

#[test]
fn lambda_quotient_examples() {
    let QuasiWu::Coslice(v) = std_param("Q-").quasi_wu() else { panic!() };
    let lq = lambda_quotient(&v).unwrap();
    assert_eq!(lq.k.group.orders(), &[2]);
    assert_eq!(lq.group().orders(), &[2]);
    let QuasiWu::Coslice(v) = std_param("ZL_2").quasi_wu() else { panic!() };
    assert!(lambda_quotient(&v).unwrap().group().is_trivial());
    let QuasiWu::Coslice(v) = std_param("Q^-").split_sum(&g(&[2, 4])).quasi_wu() else { panic!() };
    let lq = lambda_quotient(&v).unwrap();
    assert!(lq.group().is_isomorphic(&wittcalc::qtensor::exterior(&g(&[2, 4])).unwrap().group().canonical()));
}

#[test]
fn natural_description_matches_witt_group() {
    for name in ["Q+", "ZP", "ZP_2", "Q^+", "Q-", "ZL_2", "ZL_3", "Q^-"] {
        for extra in [vec![], vec![2], vec![3], vec![0, 4]] {
            let p = std_param(name).split_sum(&g(&extra));
            let failures = match p.quasi_wu() {
                QuasiWu::Slice(_) => check_sigma_image(&p).unwrap(),
                QuasiWu::Coslice(_) => check_lambda_kernel(&p).unwrap(),
            };
            assert!(failures.is_empty(), "{name} ⊕ {extra:?}: {failures:?}");
        }
    }
}

#[test]
fn diagrams_commute() {
    for name in ["Q+", "ZP", "ZP_2", "ZP_3", "Q^+", "Q-", "ZL_2", "ZL_3", "Q^-"] {
        for extra in [vec![], vec![2], vec![0], vec![2, 4]] {
            let p = std_param(name).split_sum(&g(&extra));
            let report = match p.quasi_wu() {
                QuasiWu::Slice(v) => {
                    let r = sigma_diagram(&v).unwrap();
                    let c = r.group("C(v)").unwrap().to_vec();
                    assert_eq!(c, if has_order_two_section(&v) { vec![4] } else { vec![8] });
                    r
                }
                QuasiWu::Coslice(v) => lambda_diagram(&v).unwrap(),
            };
            assert!(report.is_ok(), "{name} ⊕ {extra:?}: {:?}", report.failures);
        }
    }
    let QuasiWu::Slice(v) = std_param("Q^+").split_sum(&g(&[3])).quasi_wu() else { panic!() };
    assert_eq!(sigma_diagram(&v).unwrap().group("C(v)"), Some(&[4u64][..]));
    let QuasiWu::Slice(v) = std_param("Q+").split_sum(&g(&[2])).quasi_wu() else { panic!() };
    assert_eq!(sigma_diagram(&v).unwrap().group("C(v)"), Some(&[8u64][..]));
    let QuasiWu::Coslice(v) = std_param("Q-").split_sum(&g(&[2, 4])).quasi_wu() else { panic!() };
    let r = lambda_diagram(&v).unwrap();
    let xi = g(r.group("Ξ(v′)").unwrap());
    let lam = wittcalc::qtensor::exterior(&g(&[2, 2, 4])).unwrap();
    assert!(xi.is_isomorphic(&g(&[2]).direct_sum(lam.group())));
}

#[test]
fn gw_examples() {
    let d = gw_group(&std_param("Q^-")).unwrap();
    assert_eq!(d.group.orders(), &[0]);
    assert_eq!(d.image, GWImage::EvenRank);
    let qp = std_param("Q^+");
    let h = gw_class(&QForm::hyperbolic(&qp, 1)).unwrap();
    assert_eq!(h.rank, 2);
    assert!(h.witt.is_zero());
    let one = gw_class(&form(&qp, &[&[1]], &[&[1]])).unwrap();
    assert_eq!((one.rank, one.witt.signature()), (1, Some(1)));
    let d = gw_group(&qp).unwrap();
    assert!(d.contains(1, &one.witt));
    assert!(!d.contains(2, &one.witt));
}

#[test]
fn stably_metabolic_but_not_metabolic() {
    let qm = std_param("Q-");
    let zl = std_param("ZL_2");
    let c = form(&qm, &[&[0, 1], &[-1, 0]], &[&[1], &[1]]);
    let pushed = c.pushforward(&from_q_minus(&zl).unwrap()).unwrap();
    assert!(witt_class(&pushed).unwrap().is_zero());
    for bound in 1..=5 {
        assert_eq!(metabolic_search(&pushed, bound).unwrap(), MetabolicSearch::NotFoundWithinBound);
    }
    let verdict = metabolic_verdict(&pushed, 3).unwrap();
    assert!(verdict.witt_zero);
    assert!(matches!(verdict.metabolic, Metabolicity::NotMetabolic(_)));
    let h = metabolic_verdict(&QForm::hyperbolic(&zl, 1), 2).unwrap();
    assert!(h.witt_zero);
    assert!(matches!(h.metabolic, Metabolicity::Metabolic(_)));
}

use num_rational::Ratio;
use proptest::prelude::*;

use wittcalc::abelian::{AbHom, FinAbGroup};
use wittcalc::formparam::FormParameter;
use wittcalc::qform::{
    absorb_embed, embedding_search, isometry_search, isometry_verify, lagrangian_verify, metabolic_search, signature,
    signature_of_matrix, EmbeddingSearch, IsometrySearch, MetabolicSearch, QForm,
};
use wittcalc::Matrix;

fn std_param(s: &str) -> FormParameter {
    FormParameter::standard(s.parse().unwrap()).unwrap()
}

fn form(param: &FormParameter, rows: &[&[i64]], mu: &[&[i64]]) -> QForm {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    let k = rows.len();
    QForm::new(param.clone(), Matrix::from_rows(&rows, k), mu.iter().map(|m| m.to_vec()).collect()).unwrap()
}

fn e8() -> Matrix {
    let mut m = Matrix::identity(8).scale(2);
    for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
        m[(i, j)] = -1;
        m[(j, i)] = -1;
    }
    m
}

#[test]
fn construction_checks() {
    let q = std_param("Q+");
    assert!(QForm::new(q.clone(), Matrix::from_rows(&[vec![0, 1], vec![2, 0]], 2), vec![vec![0], vec![0]]).is_err());
    assert!(QForm::new(q.clone(), Matrix::identity(1), vec![vec![0]]).is_err());
    let schema = QForm::new(q, Matrix::identity(2), vec![vec![1]]).unwrap_err();
    assert!(matches!(schema, wittcalc::Error::Schema(_)));
}

#[test]
fn mu_eval_examples() {
    let f = form(&std_param("Q^+"), &[&[1]], &[&[1]]);
    assert_eq!(f.mu_eval(&[2]).0, vec![4]);
    let f = form(&std_param("Q-"), &[&[0, 1], &[-1, 0]], &[&[1], &[1]]);
    assert_eq!(f.mu_eval(&[1, 1]).0, vec![1]);
    assert_eq!(f.mu_eval(&[0, 0]).0, vec![0]);
}

#[test]
fn sums_and_pullbacks() {
    let q = std_param("Q^+").split_sum(&FinAbGroup::cyclic(5));
    let f = form(&q, &[&[1, 0], &[0, -1]], &[&[1, 0], &[-1, 1]]);
    assert_eq!(f.direct_sum(&QForm::zero(&q)).unwrap(), f);
    assert_eq!(f.negate().negate(), f);
    let b = Matrix::from_rows(&[vec![1, 1], vec![1, 0]], 2);
    assert_eq!(f.pullback(&b).unwrap(), form(&q, &[&[0, 1], &[1, 1]], &[&[0, 1], &[1, 0]]));
    assert!(f.direct_sum(&QForm::hyperbolic(&std_param("Q+"), 1)).is_err());
}

#[test]
fn hyperbolic_examples() {
    let q = std_param("Q+");
    assert_eq!(QForm::hyperbolic(&q, 0).rank(), 0);
    assert_eq!(QForm::hyperbolic(&q, 1), form(&q, &[&[0, 1], &[1, 0]], &[&[0], &[0]]));
    let h2 = QForm::hyperbolic(&q, 2);
    let h1 = QForm::hyperbolic(&q, 1);
    let swap = Matrix::from_cols(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]], 4);
    assert!(isometry_verify(&h1.multiple(2), &h2, &swap));
}

#[test]
fn nonsingular_full_indefinite_examples() {
    let qhat = std_param("Q^+");
    let h = QForm::hyperbolic(&qhat, 1);
    assert!(h.is_nonsingular() && !h.is_full() && h.is_indefinite());
    let d = form(&qhat, &[&[1, 0], &[0, -1]], &[&[1], &[-1]]);
    assert!(d.is_full() && d.is_indefinite() && d.is_absorbing().unwrap());
    let one = form(&qhat, &[&[1]], &[&[1]]);
    assert!(!one.is_indefinite());
    assert!(!one.is_absorbing().unwrap());
    let hm = QForm::hyperbolic(&std_param("Q-"), 1);
    assert!(hm.is_full() && hm.is_absorbing().unwrap());
    let singular = form(&std_param("Q+"), &[&[2]], &[&[1]]);
    assert!(singular.is_absorbing().is_err());
}

#[test]
fn signature_examples() {
    let q = std_param("Q+");
    let mu: Vec<Vec<i64>> = (0..8).map(|_| vec![1]).collect();
    let e8_form = QForm::new(q, e8(), mu).unwrap();
    assert_eq!(signature(&e8_form).unwrap(), 8);
    assert_eq!(signature_of_matrix(&Matrix::from_rows(&[vec![0, 1], vec![1, 0]], 2)), 0);
    assert_eq!(signature_of_matrix(&Matrix::diagonal(&[-1, -1, 1])), -1);
    assert!(signature(&QForm::hyperbolic(&std_param("Q-"), 1)).is_err());
}

#[test]
fn characteristic_examples() {
    let q = std_param("ZP_2");
    let f = form(&q, &[&[1, 1], &[1, 0]], &[&[1, 2], &[0, 0]]);
    assert!(f.characteristic_check(&f.wu_map().unwrap()).unwrap());
    let z2 = FinAbGroup::cyclic(2);
    let zero = AbHom::zero(&FinAbGroup::free(8), &z2);
    let e8_form = QForm::new(std_param("Q+"), e8(), (0..8).map(|_| vec![1]).collect()).unwrap();
    assert!(e8_form.characteristic_check(&zero).unwrap());
    // λ(w, ·) is characteristic for E8 exactly when w ∈ 2X.
    for (w, expect) in [(vec![2, 0, 0, 0, 0, 0, 0, 0], true), (vec![1, 0, 0, 0, 0, 0, 0, 0], false)] {
        let row = e8().transpose().apply(&w);
        let c = AbHom::new(FinAbGroup::free(8), z2.clone(), Matrix::from_rows(&[row], 8)).unwrap();
        assert_eq!(e8_form.characteristic_check(&c).unwrap(), expect);
    }
    let odd = form(&std_param("Q^+"), &[&[1]], &[&[1]]);
    assert!(!odd.characteristic_check(&AbHom::zero(&FinAbGroup::free(1), &z2)).unwrap());
}

#[test]
fn lagrangian_examples() {
    for name in ["Q+", "Q-", "ZP_2", "ZL_3"] {
        let h = QForm::hyperbolic(&std_param(name), 2);
        assert!(lagrangian_verify(&h, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]));
        assert!(!lagrangian_verify(&h, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]));
        assert!(!lagrangian_verify(&h, &[vec![2, 0, 0, 0], vec![0, 1, 0, 0]]));
    }
    let arf1 = form(&std_param("Q-"), &[&[0, 1], &[-1, 0]], &[&[1], &[1]]);
    assert_eq!(metabolic_search(&arf1, 5).unwrap(), MetabolicSearch::NotFoundWithinBound);
    for k in 1..=4u32 {
        let phi = form(&std_param(&format!("ZP_{k}")), &[&[1, 1], &[1, 0]], &[&[1, 1 << (k - 1)], &[0, 0]]);
        let MetabolicSearch::Lagrangian(l) = metabolic_search(&phi, 3).unwrap() else { panic!("ZP_{k} form") };
        assert!(lagrangian_verify(&phi, &l));
    }
    let one = form(&std_param("Q^+"), &[&[1]], &[&[1]]);
    assert_eq!(metabolic_search(&one, 3).unwrap(), MetabolicSearch::OddRank);
}

#[test]
fn isometry_examples() {
    let q = std_param("Q+");
    let h = QForm::hyperbolic(&q, 1);
    assert!(isometry_verify(&h, &h, &Matrix::identity(2)));
    assert!(isometry_verify(&h, &h, &Matrix::from_rows(&[vec![0, 1], vec![1, 0]], 2)));
    assert!(!isometry_verify(&h, &h, &Matrix::from_rows(&[vec![1, 1], vec![0, 1]], 2)));

    // The isometry over ZL_2 with p = q = 1, new basis (x − pw, y, w, z + py).
    let zl2 = std_param("ZL_2");
    let hyp = [&[0, 1, 0, 0][..], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]];
    let source = form(&zl2, &hyp, &[&[1], &[1], &[1], &[0]]);
    let target = form(&zl2, &hyp, &[&[0], &[1], &[1], &[1]]);
    let b = Matrix::from_cols(&[vec![1, 0, -1, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 1]], 4);
    assert!(isometry_verify(&target, &source, &b));

    let d = form(&std_param("Q^+"), &[&[1, 0], &[0, -1]], &[&[1], &[-1]]);
    let e = form(&std_param("Q^+"), &[&[-1, 0], &[0, 1]], &[&[-1], &[1]]);
    let IsometrySearch::Isometry(m) = isometry_search(&d, &e, 2) else { panic!("swap is an isometry") };
    assert!(isometry_verify(&d, &e, &m));
    let plus = form(&std_param("Q^+"), &[&[1]], &[&[1]]);
    assert!(matches!(isometry_search(&plus, &plus.negate(), 2), IsometrySearch::NotIsometric(_)));
    assert_eq!(isometry_search(&d, &QForm::hyperbolic(&std_param("Q^+"), 1), 3), IsometrySearch::NotFoundWithinBound);
}

#[test]
fn full_metabolic_examples() {
    let qh = std_param("Q^+");
    assert_eq!(QForm::full_metabolic(&qh), form(&qh, &[&[0, 1], &[1, 1]], &[&[0], &[1]]));
    assert_eq!(QForm::full_metabolic(&std_param("Q^-")), QForm::hyperbolic(&std_param("Q^-"), 1));
    let zl2 = std_param("ZL_2");
    assert_eq!(QForm::full_metabolic(&zl2), form(&zl2, &[&[0, 1], &[-1, 0]], &[&[0], &[1]]));
    for name in ["Q+", "Q^+", "Q-", "ZP", "ZP_3", "ZL_4"] {
        let p = std_param(name).split_sum(&FinAbGroup::new(vec![2, 3]));
        let f = QForm::full_metabolic(&p);
        assert!(f.is_full() && f.is_nonsingular(), "{name}");
        let k = f.rank() / 2;
        let l: Vec<Vec<i64>> = (0..k).map(|i| (0..2 * k).map(|j| i64::from(i == j)).collect()).collect();
        assert!(lagrangian_verify(&f, &l), "{name}");
    }
}

#[test]
fn absorb_embed_examples() {
    let qh = std_param("Q^+");
    let f = QForm::hyperbolic(&qh, 1)
        .direct_sum(&form(&qh, &[&[1]], &[&[1]]))
        .unwrap()
        .direct_sum(&form(&qh, &[&[-1]], &[&[-1]]))
        .unwrap();
    assert!(f.is_absorbing().unwrap());
    let emb = absorb_embed(&f, &QForm::hyperbolic(&qh, 1), 3).unwrap();
    assert!(emb.verify());
    let eta = QForm::full_metabolic(&qh);
    assert!(absorb_embed(&f, &eta, 3).unwrap().verify());

    let qm = std_param("Q-");
    let f = QForm::hyperbolic(&qm, 1);
    let delta = |emb: &wittcalc::qform::Embedding| {
        let col = emb.matrix.col(1);
        let x = emb.matrix.col(0);
        let i = x.iter().position(|&c| c != 0).unwrap();
        col[2 + i] / x[2 + i]
    };
    let emb = absorb_embed(&f, &QForm::hyperbolic(&qm, 1), 3).unwrap();
    assert!(emb.verify());
    assert_eq!(delta(&emb), 0);
    let eta = form(&qm, &[&[0, 1], &[-1, 0]], &[&[0], &[1]]);
    let emb = absorb_embed(&f, &eta, 3).unwrap();
    assert!(emb.verify());
    assert_eq!(delta(&emb), 1);

    let definite = form(&qh, &[&[1]], &[&[1]]);
    assert!(absorb_embed(&definite, &QForm::hyperbolic(&qh, 1), 3).is_err());
}

#[test]
fn embedding_search_examples() {
    let qh = std_param("Q^+");
    let d = form(&qh, &[&[1, 0], &[0, -1]], &[&[1], &[-1]]);
    let eta = QForm::full_metabolic(&qh);
    let EmbeddingSearch::Found { copies, matrix } = embedding_search(&d, &eta, 3, 2, 1 << 24) else {
        panic!("absorbing form embeds the full metabolic form")
    };
    assert_eq!(d.multiple(copies).pullback(&matrix).unwrap(), eta);
    let h = QForm::hyperbolic(&qh, 1);
    assert_eq!(embedding_search(&h, &eta, 2, 2, 1 << 24), EmbeddingSearch::NotFoundWithinBound);
}

#[test]
fn metabolic_sum_with_negative() {
    let zp = std_param("ZP_1");
    let f = form(&zp, &[&[1, 1], &[1, 0]], &[&[1, 1], &[0, 1]]);
    let g = f.direct_sum(&f.negate()).unwrap();
    let diag = vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]];
    assert!(lagrangian_verify(&g, &diag));
}

/// Characteristic polynomial by Faddeev–LeVerrier; roots are real, so Descartes' rule counts them.
fn descartes_signature(m: &Matrix) -> i64 {
    let n = m.rows();
    let a: Vec<Vec<Ratio<i128>>> =
        (0..n).map(|i| (0..n).map(|j| Ratio::from_integer(m[(i, j)] as i128)).collect()).collect();
    let zero = Ratio::from_integer(0);
    let mut coeffs = vec![Ratio::from_integer(1)];
    let mut mk: Vec<Vec<Ratio<i128>>> = vec![vec![zero; n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![zero; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = zero;
                for l in 0..n {
                    s += a[i][l] * mk[l][j];
                }
                if i == j {
                    s += coeffs[k - 1];
                }
                next[i][j] = s;
            }
        }
        let mut tr = zero;
        for i in 0..n {
            for l in 0..n {
                tr += a[i][l] * next[l][i];
            }
        }
        coeffs.push(-tr / Ratio::from_integer(k as i128));
        mk = next;
    }
    // coeffs[i] multiplies x^{n−i}.
    let changes = |signs: Vec<i32>| {
        let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count() as i64
    };
    let sgn = |c: &Ratio<i128>| if *c > zero { 1 } else if *c < zero { -1 } else { 0 };
    let pos = changes(coeffs.iter().map(sgn).collect());
    let neg = changes(coeffs.iter().enumerate().map(|(i, c)| sgn(c) * if (n - i) % 2 == 1 { -1 } else { 1 }).collect());
    pos - neg
}

fn symmetric_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    m[(i, j)] = v[i * n + j];
                    m[(j, i)] = v[i * n + j];
                }
            }
            m
        })
    })
}

fn any_form() -> impl Strategy<Value = QForm> {
    let names = ["Q+", "Q^+", "Q-", "Q^-", "ZP", "ZP_2", "ZL_2", "ZL_3"];
    (0..names.len(), 1usize..=3, proptest::collection::vec(-3i64..=3, 9), proptest::collection::vec(-5i64..=5, 6))
        .prop_map(move |(pi, k, entries, seeds)| {
            let p = std_param(names[pi]).split_sum(&FinAbGroup::cyclic(3));
            let eps = p.epsilon();
            let mut m = Matrix::zeros(k, k);
            for i in 0..k {
                for j in i + 1..k {
                    m[(i, j)] = entries[i * 3 + j];
                    m[(j, i)] = eps * entries[i * 3 + j];
                }
            }
            // μ on a basis: a carrier element plus p(·) corrections chosen to hit the required h-value.
            let gens = p.carrier().generators();
            let mu: Vec<Vec<i64>> = (0..k)
                .map(|i| {
                    let mut q = p.carrier().zero();
                    for (g, s) in gens.iter().zip(&seeds[i * 2..]) {
                        q = p.carrier().add(&q, &p.carrier().scale(*s, g));
                    }
                    if eps == 1 && p.h_of(p.p_one()) == 2 {
                        q = p.carrier().sub(&q, &p.p_of(p.h_of(&q) / 2));
                        if p.h_of(&q) != 0 {
                            q = p.carrier().sub(&q, &p.p_of(1));
                        }
                    }
                    let h = p.h_of(&q);
                    m[(i, i)] = h;
                    q.0
                })
                .collect();
            QForm::new(p, m, mu).unwrap()
        })
}

proptest! {
    #[test]
    fn signature_matches_descartes(m in symmetric_matrix()) {
        prop_assert_eq!(signature_of_matrix(&m), descartes_signature(&m));
    }

    #[test]
    fn mu_obeys_the_addition_rule(f in any_form(), x in proptest::collection::vec(-5i64..=5, 3), y in proptest::collection::vec(-5i64..=5, 3)) {
        let k = f.rank();
        let (x, y) = (&x[..k], &y[..k]);
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let c = f.param().carrier();
        let rhs = c.add(&c.add(&f.mu_eval(x), &f.mu_eval(y)), &f.param().p_of(f.lambda_eval(x, y)));
        prop_assert!(c.eq_elem(&f.mu_eval(&s), &rhs));
        prop_assert_eq!(f.param().h_of(&f.mu_eval(x)), f.lambda_eval(x, x));
        let g = f.direct_sum(&f.negate()).unwrap();
        let xy: Vec<i64> = x.iter().chain(y).copied().collect();
        prop_assert!(c.eq_elem(&g.mu_eval(&xy), &c.sub(&f.mu_eval(x), &f.mu_eval(y))));
    }
}

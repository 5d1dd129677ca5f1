//! Independent brute-force and closed-form references used by the acceptance suite.

use num_integer::gcd;

use crate::formparam::StandardName;
use crate::qform::{embedding_search, EmbeddingSearch, QForm};

/// Arf invariant by majority vote: `1` iff `μ mod 2` takes the value 1 on more than half of `(Z₂)^n`.
pub fn democratic_arf(f: &QForm) -> u8 {
    let n = f.rank();
    let ones = (0u64..1 << n)
        .filter(|mask| {
            let x: Vec<i64> = (0..n).map(|i| (mask >> i & 1) as i64).collect();
            f.mu_eval(&x)[0].rem_euclid(2) == 1
        })
        .count();
    u8::from(ones > 1 << n.saturating_sub(1))
}

/// `Z_n ⊗_Z Q` for standard `Q` as listed in the cyclic table (`n = 0` is `Z`).
pub fn cyclic_table(n: u64, q: StandardName) -> Vec<u64> {
    let d = gcd(n, 2);
    match q {
        StandardName::QPlus => vec![n],
        StandardName::QHatPlus => vec![d * n],
        StandardName::Zp(0) if n == 0 => vec![0, 0],
        StandardName::Zp(0) => vec![d * n, n / d],
        StandardName::Zp(k) if n == 0 => vec![0, 1 << k],
        StandardName::Zp(k) => vec![d * n, gcd(n / d, 1 << k)],
        StandardName::QMinus if n == 0 => vec![2],
        StandardName::QMinus => vec![d],
        StandardName::ZLambda(k) if n == 0 => vec![1 << k],
        StandardName::ZLambda(k) => vec![gcd(n, 1 << k)],
        StandardName::QHatMinus => vec![],
    }
}

/// `(Z_n ⊕ Z_m) ⊗_Z Q = Z_n ⊗_Z Q ⊕ Z_m ⊗_Z Q ⊕ Z_{(n,m)}`.
pub fn cyclic_pair_table(n: u64, m: u64, q: StandardName) -> Vec<u64> {
    let mut out = cyclic_table(n, q);
    out.extend(cyclic_table(m, q));
    out.push(gcd(n, m));
    out
}

/// `δ̄(l)`: 1 for odd `l`, 2 for even `l`.
pub fn delta_bar(l: u64) -> u64 {
    gcd(l, 2)
}

/// `δ(l) = δ̄(l)·l`.
pub fn delta(l: u64) -> u64 {
    delta_bar(l) * l
}

/// The rank-2 test forms `([[0,1],[ε,h(q)]], (0, q))` over the carrier generators `q`, plus the
/// hyperbolic plane.
pub fn absorbing_probes(f: &QForm) -> Vec<QForm> {
    let p = f.param();
    let eps = p.epsilon();
    let mut qs = vec![p.carrier().zero()];
    qs.extend(p.carrier().generators());
    qs.into_iter()
        .map(|q| {
            let m = crate::Matrix::from_rows(&[vec![0, 1], vec![eps, p.h_of(&q)]], 2);
            QForm::new(p.clone(), m, vec![p.carrier().zero().0, q.0]).expect("probe forms are valid")
        })
        .collect()
}

/// Whether every probe embeds into `k·f` for some `k ≤ copies` with entries in `[−bound, bound]`;
/// `None` when the search budget runs out.
pub fn brute_force_absorbing(f: &QForm, bound: i64, copies: usize, budget: u64) -> Option<bool> {
    for eta in absorbing_probes(f) {
        match embedding_search(f, &eta, copies, bound, budget) {
            EmbeddingSearch::Found { .. } => {}
            EmbeddingSearch::NotFoundWithinBound => return Some(false),
            EmbeddingSearch::BudgetExhausted => return None,
        }
    }
    Some(true)
}

//! Lagrangians, bounded searches and the absorbing embedding.

use std::collections::{HashMap, HashSet};

use crate::abelian::{snf, Element};
use crate::error::{validation, Error, Result};
use crate::formparam::Symmetry;
use crate::matrix::Matrix;

use super::QForm;

/// Non-zero vectors in `[−B, B]^n` with coprime entries, lexicographic.
/// With `up_to_sign`, only those whose first non-zero entry is positive.
pub fn primitive_vectors(n: usize, bound: i64, up_to_sign: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    if n == 0 {
        return out;
    }
    loop {
        let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        let lead_ok = !up_to_sign || v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if g == 1 && lead_ok {
            out.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}

fn box_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        out.push(v.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}

/// The columns span a primitive sublattice of full column rank.
fn is_primitive_span(vectors: &[Vec<i64>], n: usize) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let s = snf(&Matrix::from_cols(vectors, n));
    let d = s.diagonal();
    d.len() == vectors.len() && d.iter().all(|&x| x == 1)
}

/// `L` spans a primitive summand of half rank on which `λ` and `μ` vanish.
pub fn lagrangian_verify(f: &QForm, lagrangian: &[Vec<i64>]) -> bool {
    let k = f.rank();
    if !k.is_multiple_of(2) || lagrangian.len() != k / 2 || lagrangian.iter().any(|v| v.len() != k) {
        return false;
    }
    if !is_primitive_span(lagrangian, k) {
        return false;
    }
    let carrier = f.param().carrier();
    for (i, a) in lagrangian.iter().enumerate() {
        if !carrier.is_zero(&f.mu_eval(a)) {
            return false;
        }
        for b in &lagrangian[i..] {
            if f.lambda_eval(a, b) != 0 {
                return false;
            }
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if !carrier.is_zero(&f.mu_eval(&s)) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetabolicSearch {
    /// A basis of a lagrangian.
    Lagrangian(Vec<Vec<i64>>),
    /// Odd rank rules out a lagrangian.
    OddRank,
    NotFoundWithinBound,
}

/// Exhaustive search for a lagrangian spanned by primitive vectors with entries in `[−B, B]`.
pub fn metabolic_search(f: &QForm, bound: i64) -> Result<MetabolicSearch> {
    if !f.is_nonsingular() {
        return validation("metabolic search needs a nonsingular form");
    }
    let k = f.rank();
    if k % 2 == 1 {
        return Ok(MetabolicSearch::OddRank);
    }
    if k == 0 {
        return Ok(MetabolicSearch::Lagrangian(vec![]));
    }
    let carrier = f.param().carrier();
    let cands: Vec<Vec<i64>> =
        primitive_vectors(k, bound, true).into_iter().filter(|v| carrier.is_zero(&f.mu_eval(v))).collect();
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    if lagrangian_dfs(f, &cands, 0, k / 2, &mut chosen) {
        debug_assert!(lagrangian_verify(f, &chosen));
        return Ok(MetabolicSearch::Lagrangian(chosen));
    }
    Ok(MetabolicSearch::NotFoundWithinBound)
}

fn lagrangian_dfs(f: &QForm, cands: &[Vec<i64>], start: usize, want: usize, chosen: &mut Vec<Vec<i64>>) -> bool {
    if chosen.len() == want {
        return true;
    }
    for (i, v) in cands.iter().enumerate().skip(start) {
        if chosen.iter().any(|c| f.lambda_eval(c, v) != 0) {
            continue;
        }
        chosen.push(v.clone());
        if is_primitive_span(chosen, f.rank()) && lagrangian_dfs(f, cands, i + 1, want, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// `B` is unimodular with `Bᵀ λ_g B = λ_f` and `μ_g(B eᵢ) = μ_f(eᵢ)`.
pub fn isometry_verify(f: &QForm, g: &QForm, b: &Matrix) -> bool {
    f.param() == g.param()
        && b.rows() == g.rank()
        && b.cols() == f.rank()
        && b.is_unimodular()
        && g.pullback(b).map(|p| &p == f).unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometrySearch {
    /// Columns are the images of the basis of the first form.
    Isometry(Matrix),
    /// An invariant differs.
    NotIsometric(String),
    NotFoundWithinBound,
}

/// Column-by-column search for an isometry `f → g` with entries in `[−B, B]`.
pub fn isometry_search(f: &QForm, g: &QForm, bound: i64) -> IsometrySearch {
    if f.param() != g.param() {
        return IsometrySearch::NotIsometric("different parameters".into());
    }
    if f.rank() != g.rank() {
        return IsometrySearch::NotIsometric(format!("ranks {} and {}", f.rank(), g.rank()));
    }
    if f.lambda().det() != g.lambda().det() {
        return IsometrySearch::NotIsometric("determinants differ".into());
    }
    if f.epsilon() == 1 && super::signature_of_matrix(f.lambda()) != super::signature_of_matrix(g.lambda()) {
        return IsometrySearch::NotIsometric("signatures differ".into());
    }
    let k = f.rank();
    let all = box_vectors(k, bound);
    let carrier = g.param().carrier();
    let per_col: Vec<Vec<&Vec<i64>>> = (0..k)
        .map(|j| {
            all.iter()
                .filter(|v| g.lambda_eval(v, v) == f.lambda()[(j, j)] && carrier.eq_elem(&g.mu_eval(v), &f.mu_basis()[j]))
                .collect()
        })
        .collect();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    if isometry_dfs(f, g, &per_col, &mut cols) {
        return IsometrySearch::Isometry(Matrix::from_cols(&cols, k));
    }
    IsometrySearch::NotFoundWithinBound
}

fn isometry_dfs(f: &QForm, g: &QForm, per_col: &[Vec<&Vec<i64>>], cols: &mut Vec<Vec<i64>>) -> bool {
    let j = cols.len();
    if j == per_col.len() {
        return Matrix::from_cols(cols, f.rank()).is_unimodular();
    }
    for v in &per_col[j] {
        if (0..j).any(|i| g.lambda_eval(&cols[i], v) != f.lambda()[(i, j)]) {
            continue;
        }
        cols.push((*v).clone());
        if is_primitive_span(cols, f.rank()) && isometry_dfs(f, g, per_col, cols) {
            return true;
        }
        cols.pop();
    }
    false
}

/// An isometric embedding: `target` pulled back along `matrix` equals `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: QForm,
    pub target: QForm,
    pub matrix: Matrix,
}

impl Embedding {
    pub fn verify(&self) -> bool {
        self.target.pullback(&self.matrix).map(|p| p == self.source).unwrap_or(false)
            && snf(&self.matrix).rank() == self.source.rank()
    }
}

/// Extended gcd solution `y` of `Σ rᵢ yᵢ = 1`.
fn unit_solution(row: &[i64]) -> Option<Vec<i64>> {
    let mut d = 0i64;
    let mut y = vec![0i64; row.len()];
    for (i, &r) in row.iter().enumerate() {
        if r == 0 {
            continue;
        }
        let e = num_integer::Integer::extended_gcd(&d, &r);
        for c in y.iter_mut().take(i) {
            *c *= e.x;
        }
        y[i] = e.y;
        d = e.gcd;
    }
    match d {
        1 => Some(y),
        -1 => Some(y.into_iter().map(|c| -c).collect()),
        _ => None,
    }
}

/// Embeds `η = (Z², [[0,1],[ε,a]], (0,q))` into `f ⊕ f ⊕ f` for an absorbing form `f`.
///
/// `e ↦ (x, −x, 0)` and `f ↦ (y + δx, −δx, z)` with `x` primitive isotropic, `λ(x,y) = 1`,
/// `Sμ(z) = π(q) − Sμ(y)` and `δ` fixing the remaining `p`-component.
pub fn absorb_embed(f: &QForm, eta: &QForm, bound: i64) -> Result<Embedding> {
    if !f.is_absorbing()? {
        return validation("absorb_embed needs an absorbing form");
    }
    if eta.param() != f.param() || eta.rank() != 2 {
        return validation("the embedded form must be a rank-2 form over the same parameter");
    }
    let eps = f.epsilon();
    let carrier = f.param().carrier();
    let l = eta.lambda();
    if l[(0, 0)] != 0 || l[(0, 1)] != 1 || !carrier.is_zero(&eta.mu_basis()[0]) {
        return validation("the embedded form must have shape ([[0,1],[ε,a]], (0,q))");
    }
    let q = eta.mu_basis()[1].clone();
    let r = f.rank();
    let x = primitive_vectors(r, bound, true)
        .into_iter()
        .find(|v| f.lambda_eval(v, v) == 0)
        .ok_or_else(|| Error::BoundExhausted(format!("no primitive isotropic vector with entries in [-{bound}, {bound}]")))?;
    let row = f.lambda().transpose().apply(&x);
    let y = unit_solution(&row).ok_or_else(|| Error::Internal("λ(x, ·) is not primitive".into()))?;
    let s = f.param().linearisation();
    let smu = f.s_mu();
    let target = s.group.sub(&s.proj.apply(&q), &smu.apply(&y));
    let z = smu.preimage(&target).ok_or_else(|| Error::Internal("Sμ is not surjective".into()))?.0;
    let mu_yz = carrier.add(&f.mu_eval(&y), &f.mu_eval(&z));
    let rest = carrier.sub(&q, &mu_yz);
    let delta = match f.param().symmetry() {
        Symmetry::Symmetric => f.param().h_of(&rest) / 2,
        Symmetry::AntiSymmetric => {
            if carrier.is_zero(&rest) {
                0
            } else {
                1
            }
        }
    };
    if !carrier.eq_elem(&f.param().p_of(delta * eps), &rest) {
        return Err(Error::Internal("the remaining μ-defect is not in the image of p".into()));
    }
    let mut col_e = x.clone();
    col_e.extend(x.iter().map(|a| -a));
    col_e.extend(vec![0; r]);
    let mut col_f: Vec<i64> = y.iter().zip(&x).map(|(b, a)| b + delta * a).collect();
    col_f.extend(x.iter().map(|a| -delta * a));
    col_f.extend(z.iter().copied());
    let emb = Embedding { source: eta.clone(), target: f.multiple(3), matrix: Matrix::from_cols(&[col_e, col_f], 3 * r) };
    if !emb.verify() {
        return Err(Error::Internal("absorbing embedding failed its pullback check".into()));
    }
    Ok(emb)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingSearch {
    Found { copies: usize, matrix: Matrix },
    NotFoundWithinBound,
    BudgetExhausted,
}

type Sig = (i64, Element);

struct SearchCtx<'a> {
    f: &'a QForm,
    vectors: Vec<Vec<i64>>,
    sigs: Vec<Sig>,
    by_sig: HashMap<Sig, Vec<usize>>,
    /// `reach[m]`: sums of `m` component signatures.
    reach: Vec<HashSet<Sig>>,
    budget: u64,
}

impl SearchCtx<'_> {
    fn sub(&self, a: &Sig, b: &Sig) -> Sig {
        (a.0 - b.0, self.f.param().carrier().sub(&a.1, &b.1))
    }

    fn tick(&mut self) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        true
    }
}

/// Brute-force search for an embedding of a rank-2 form `η` into `k·f`, `k ≤ max_copies`,
/// with every per-copy coordinate in `[−B, B]`.
pub fn embedding_search(f: &QForm, eta: &QForm, max_copies: usize, bound: i64, budget: u64) -> EmbeddingSearch {
    assert_eq!(eta.rank(), 2, "embedding search handles rank-2 sources");
    let carrier = f.param().carrier().clone();
    let vectors = box_vectors(f.rank(), bound);
    let sigs: Vec<Sig> = vectors.iter().map(|v| (f.lambda_eval(v, v), f.mu_eval(v))).collect();
    let mut by_sig: HashMap<Sig, Vec<usize>> = HashMap::new();
    for (i, s) in sigs.iter().enumerate() {
        by_sig.entry(s.clone()).or_default().push(i);
    }
    let base: HashSet<Sig> = by_sig.keys().cloned().collect();
    let mut reach = vec![HashSet::from([(0i64, carrier.zero())]), base.clone()];
    for m in 2..=max_copies {
        let mut next = HashSet::new();
        for a in &reach[m - 1] {
            for b in &base {
                next.insert((a.0 + b.0, carrier.add(&a.1, &b.1)));
            }
        }
        reach.push(next);
    }
    let mut ctx = SearchCtx { f, vectors, sigs, by_sig, reach, budget };
    let u_target: Sig = (eta.lambda()[(0, 0)], eta.mu_basis()[0].clone());
    let w_target: Sig = (eta.lambda()[(1, 1)], eta.mu_basis()[1].clone());
    let cross = eta.lambda()[(0, 1)];
    let mut exhausted = false;
    for k in 1..=max_copies {
        // Both basis vectors of η must have signatures that are sums of `k` component signatures.
        if !ctx.reach[k].contains(&u_target) || !ctx.reach[k].contains(&w_target) {
            continue;
        }
        let mut u = Vec::with_capacity(k);
        match search_u(&mut ctx, k, &u_target, &w_target, cross, &mut u) {
            Some(Some(m)) => return EmbeddingSearch::Found { copies: k, matrix: m },
            Some(None) => {}
            None => {
                exhausted = true;
                break;
            }
        }
    }
    if exhausted {
        EmbeddingSearch::BudgetExhausted
    } else {
        EmbeddingSearch::NotFoundWithinBound
    }
}

/// `None` when the budget runs out; `Some(None)` when the subtree is exhausted.
fn search_u(ctx: &mut SearchCtx, k: usize, remaining: &Sig, w_target: &Sig, cross: i64, u: &mut Vec<usize>) -> Option<Option<Matrix>> {
    let left = k - u.len();
    if left == 1 {
        let Some(list) = ctx.by_sig.get(remaining).cloned() else { return Some(None) };
        for i in list {
            if !ctx.tick() {
                return None;
            }
            u.push(i);
            if u.iter().any(|&j| ctx.vectors[j].iter().any(|&c| c != 0)) {
                let mut w = Vec::with_capacity(k);
                match search_w(ctx, u, w_target, cross, &mut w) {
                    None => return None,
                    Some(Some(m)) => return Some(Some(m)),
                    Some(None) => {}
                }
            }
            u.pop();
        }
        return Some(None);
    }
    for i in 0..ctx.vectors.len() {
        if !ctx.tick() {
            return None;
        }
        let rest = ctx.sub(remaining, &ctx.sigs[i]);
        if !ctx.reach[left - 1].contains(&rest) {
            continue;
        }
        u.push(i);
        match search_u(ctx, k, &rest, w_target, cross, u) {
            None => return None,
            Some(Some(m)) => return Some(Some(m)),
            Some(None) => {}
        }
        u.pop();
    }
    Some(None)
}

fn search_w(ctx: &mut SearchCtx, u: &[usize], remaining: &Sig, cross_left: i64, w: &mut Vec<usize>) -> Option<Option<Matrix>> {
    let k = u.len();
    let left = k - w.len();
    let comp = w.len();
    let uc = ctx.vectors[u[comp]].clone();
    let candidates: Vec<usize> = if left == 1 {
        match ctx.by_sig.get(remaining) {
            Some(l) => l.clone(),
            None => return Some(None),
        }
    } else {
        (0..ctx.vectors.len()).collect()
    };
    for i in candidates {
        if !ctx.tick() {
            return None;
        }
        let c = ctx.f.lambda_eval(&uc, &ctx.vectors[i]);
        if left == 1 {
            if c != cross_left {
                continue;
            }
            w.push(i);
            let n = ctx.f.rank();
            let mut cu = Vec::with_capacity(k * n);
            let mut cw = Vec::with_capacity(k * n);
            for j in 0..k {
                cu.extend(ctx.vectors[u[j]].iter().copied());
                cw.extend(ctx.vectors[w[j]].iter().copied());
            }
            return Some(Some(Matrix::from_cols(&[cu, cw], k * n)));
        }
        let rest = ctx.sub(remaining, &ctx.sigs[i]);
        if !ctx.reach[left - 1].contains(&rest) {
            continue;
        }
        w.push(i);
        match search_w(ctx, u, &rest, cross_left - c, w) {
            None => return None,
            Some(Some(m)) => return Some(Some(m)),
            Some(None) => {}
        }
        w.pop();
    }
    Some(None)
}

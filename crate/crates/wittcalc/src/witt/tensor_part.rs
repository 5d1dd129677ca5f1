//! The invariant `F: W₀(Q ⊕ G) → G ⊗_Z Q` and its section `γ`.

use crate::abelian::{Element, FinAbGroup};
use crate::error::{validation, Error, Result};
use crate::formparam::FormParameter;
use crate::matrix::Matrix;
use crate::qform::QForm;
use crate::qtensor::{present, Symbol};

/// Splits a `Q ⊕ G` carrier element into its `Q_e` and `G` parts.
fn split_at(x: &Element, c: usize) -> (Vec<i64>, Vec<i64>) {
    (x.0[..c].to_vec(), x.0[c..].to_vec())
}

/// Checks that `f` lives over `q ⊕ g` and returns that split parameter.
fn check_split(f: &QForm, q: &FormParameter, g: &FinAbGroup) -> Result<()> {
    if f.param() != &q.split_sum(g) {
        return validation("form does not live over the split parameter Q ⊕ G");
    }
    Ok(())
}

/// `F(X, λ, (μ_Q, μ_G)) = Σ_{i<j} [μ_G(xᵢ), μ_G(xⱼ)] ⊗ λ(yᵢ, yⱼ) + Σᵢ μ_G(xᵢ) ⊗ μ_Q(yᵢ)`,
/// with `(yᵢ)` the basis dual to `(xᵢ)` under `λ(xᵢ, yⱼ) = δᵢⱼ`.
pub fn f_invariant(f: &QForm, q: &FormParameter, g: &FinAbGroup) -> Result<Element> {
    check_split(f, q, g)?;
    let pres = present(g, q)?;
    let Some(dual) = f.lambda().inverse_unimodular() else {
        return validation("F needs a nonsingular form");
    };
    let c = q.carrier().ngens();
    let n = f.rank();
    let ys = dual.to_cols();
    let mu_g: Vec<Vec<i64>> = f.mu_basis().iter().map(|m| split_at(m, c).1).collect();
    let mut acc = vec![0i64; pres.abstract_count()];
    let mut add = |coords: Vec<i64>| acc.iter_mut().zip(coords).for_each(|(a, b)| *a += b);
    for i in 0..n {
        let mu_q = split_at(&f.mu_eval(&ys[i]), c).0;
        add(pres.symbol_coords(&Symbol::Simple { x: mu_g[i].clone(), q: mu_q })?);
        for j in i + 1..n {
            let a = f.lambda_eval(&ys[i], &ys[j]);
            if a != 0 {
                add(pres.symbol_coords(&Symbol::Bracket { x: mu_g[i].clone(), y: mu_g[j].clone(), a })?);
            }
        }
    }
    Ok(pres.reduce_abstract(&acc))
}

/// The rank-2 block `(Z², [[0,1],[ε,d]], (a, b))` over `Q ⊕ G`.
fn block(param: &FormParameter, d: i64, a: Vec<i64>, b: Vec<i64>) -> Result<QForm> {
    let eps = param.epsilon();
    QForm::new(param.clone(), Matrix::from_rows(&[vec![0, 1], vec![eps, d]], 2), vec![a, b])
}

fn embed_g(c: usize, x: &[i64]) -> Vec<i64> {
    let mut v = vec![0; c];
    v.extend_from_slice(x);
    v
}

fn embed_q(q: &[i64], m: usize) -> Vec<i64> {
    let mut v = q.to_vec();
    v.extend(std::iter::repeat_n(0, m));
    v
}

/// `γ(t)`: the orthogonal sum of the rank-2 blocks of the abstract generators in a lift of `t`.
///
/// `[gᵢ, gₖ] ⊗ n ↦ (Z², [[0,1],[ε,0]], (n·gᵢ, gₖ))` and
/// `gᵢ ⊗ q ↦ (Z², [[0,1],[ε,−h(q)]], (gᵢ, R(q)))` with `R = Id − p∘h`.
pub fn gamma_form(t: &[i64], q: &FormParameter, g: &FinAbGroup) -> Result<QForm> {
    let pres = present(g, q)?;
    if t.len() != pres.group().ngens() {
        return Err(Error::Schema(format!("tensor element has {} coordinates, expected {}", t.len(), pres.group().ngens())));
    }
    let param = q.split_sum(g);
    let (m, c) = (g.ngens(), q.carrier().ngens());
    let lift = pres.lift(t);
    let unit = |i: usize, coeff: i64| {
        let mut v = vec![0; m];
        v[i] = coeff;
        v
    };
    let mut out = QForm::zero(&param);
    for i in 0..m {
        for j in 0..c {
            let coeff = lift[pres.simple_index(i, j)];
            if coeff == 0 {
                continue;
            }
            let mut qv = vec![0; c];
            qv[j] = coeff;
            let hq = q.h_of(&qv);
            let r = q.carrier().sub(&qv, &q.p_of(hq));
            let b = block(&param, -hq, embed_g(c, &unit(i, 1)), embed_q(&r.0, m))?;
            out = out.direct_sum(&b)?;
        }
    }
    for i in 0..m {
        for k in i..m {
            let coeff = if i == k { lift[pres.diag_index(i)] } else { lift[pres.cross_index(i, k)] };
            if coeff == 0 {
                continue;
            }
            let b = block(&param, 0, embed_g(c, &unit(i, coeff)), embed_g(c, &unit(k, 1)))?;
            out = out.direct_sum(&b)?;
        }
    }
    Ok(out)
}

//! Q-forms `(X, λ, μ)` on free lattices `X = Z^k`.
//!
//! `λ` is an ε-symmetric integer matrix and `μ` is stored on the standard basis only; every other
//! value comes from the addition rule `μ(x+y) = μ(x) + μ(y) + p(λ(x,y))` and the scalar rule
//! `μ(a·x) = a·μ(x) + C(a,2)·h(μ(x))·p(1)`.

mod search;
mod signature;

pub use search::{
    absorb_embed, embedding_search, isometry_search, isometry_verify, lagrangian_verify, metabolic_search,
    primitive_vectors, Embedding, EmbeddingSearch, IsometrySearch, MetabolicSearch,
};
pub use signature::{signature, signature_of_matrix};

use std::fmt;

use crate::abelian::{AbHom, Element, FinAbGroup};
use crate::error::{validation, Error, Result};
use crate::formparam::{FPMorphism, FormParameter, Symmetry};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QForm {
    param: FormParameter,
    lambda: Matrix,
    mu: Vec<Element>,
}

/// `C(a, 2) = a(a−1)/2`, valid for negative `a`.
pub(crate) fn choose2(a: i64) -> i64 {
    a * (a - 1) / 2
}

impl QForm {
    pub fn new(param: FormParameter, lambda: Matrix, mu: Vec<Vec<i64>>) -> Result<Self> {
        let k = lambda.rows();
        if !lambda.is_square() || mu.len() != k {
            return Err(Error::Schema(format!(
                "lambda is {}x{} with {} mu values",
                lambda.rows(),
                lambda.cols(),
                mu.len()
            )));
        }
        let eps = param.epsilon();
        for i in 0..k {
            for j in 0..k {
                if lambda[(j, i)] != eps * lambda[(i, j)] {
                    return validation(format!("lambda is not {}-symmetric at ({i},{j})", eps));
                }
            }
        }
        let mu: Vec<Element> = mu.iter().map(|m| param.carrier().element(m)).collect::<Result<_>>()?;
        for (i, m) in mu.iter().enumerate() {
            if param.h_of(m) != lambda[(i, i)] {
                return validation(format!(
                    "diagonal compatibility fails on basis vector {i}: h(mu) = {}, lambda = {}",
                    param.h_of(m),
                    lambda[(i, i)]
                ));
            }
        }
        Ok(QForm { param, lambda, mu })
    }

    pub fn zero(param: &FormParameter) -> QForm {
        QForm { param: param.clone(), lambda: Matrix::zeros(0, 0), mu: vec![] }
    }

    pub fn param(&self) -> &FormParameter {
        &self.param
    }

    pub fn lambda(&self) -> &Matrix {
        &self.lambda
    }

    pub fn mu_basis(&self) -> &[Element] {
        &self.mu
    }

    pub fn rank(&self) -> usize {
        self.lambda.rows()
    }

    pub fn epsilon(&self) -> i64 {
        self.param.epsilon()
    }

    pub fn lambda_eval(&self, x: &[i64], y: &[i64]) -> i64 {
        self.lambda.bilinear(x, y)
    }

    /// `μ(Σ aᵢeᵢ)`.
    pub fn mu_eval(&self, x: &[i64]) -> Element {
        assert_eq!(x.len(), self.rank(), "vector length must equal the rank");
        let carrier = self.param.carrier();
        let mut acc = vec![0i64; carrier.ngens()];
        let mut p_coeff = 0i64;
        for i in 0..x.len() {
            let a = x[i];
            if a == 0 {
                continue;
            }
            for (c, m) in acc.iter_mut().zip(self.mu[i].iter()) {
                *c += a * m;
            }
            p_coeff += choose2(a) * self.lambda[(i, i)];
            for j in i + 1..x.len() {
                p_coeff += a * x[j] * self.lambda[(i, j)];
            }
            acc = carrier.reduce(&acc).0;
        }
        carrier.add(&acc, &self.param.p_of(p_coeff))
    }

    pub fn direct_sum(&self, other: &QForm) -> Result<QForm> {
        if self.param != other.param {
            return validation("direct sum of forms over different parameters");
        }
        let mut mu = self.mu.clone();
        mu.extend(other.mu.iter().cloned());
        Ok(QForm { param: self.param.clone(), lambda: self.lambda.block_diag(&other.lambda), mu })
    }

    /// `n` copies of `self`.
    pub fn multiple(&self, n: usize) -> QForm {
        (0..n).fold(QForm::zero(&self.param), |acc, _| acc.direct_sum(self).expect("same parameter"))
    }

    pub fn negate(&self) -> QForm {
        let carrier = self.param.carrier();
        QForm {
            param: self.param.clone(),
            lambda: self.lambda.scale(-1),
            mu: self.mu.iter().map(|m| carrier.scale(-1, m)).collect(),
        }
    }

    /// `(Bᵀ M B, μ∘B)`; the columns of `b` are the new basis vectors.
    pub fn pullback(&self, b: &Matrix) -> Result<QForm> {
        if b.rows() != self.rank() {
            return Err(Error::Schema(format!("basis change has {} rows, form has rank {}", b.rows(), self.rank())));
        }
        let mu = b.to_cols().iter().map(|c| self.mu_eval(c)).collect();
        Ok(QForm { param: self.param.clone(), lambda: b.congruence(&self.lambda), mu })
    }

    pub fn pushforward(&self, alpha: &FPMorphism) -> Result<QForm> {
        if alpha.source() != &self.param {
            return validation("pushforward along a morphism whose source is a different parameter");
        }
        Ok(QForm {
            param: alpha.target().clone(),
            lambda: self.lambda.clone(),
            mu: self.mu.iter().map(|m| alpha.apply(m)).collect(),
        })
    }

    /// Rank `2m`, `λ = [[0, I], [εI, 0]]`, `μ = 0`.
    pub fn hyperbolic(param: &FormParameter, m: usize) -> QForm {
        let eps = param.epsilon();
        let mut l = Matrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            l[(i, m + i)] = 1;
            l[(m + i, i)] = eps;
        }
        QForm { param: param.clone(), lambda: l, mu: vec![param.carrier().zero(); 2 * m] }
    }

    pub fn is_nonsingular(&self) -> bool {
        self.lambda.det().abs() == 1
    }

    /// `Sμ = π∘μ: X → SQ`, which is additive.
    pub fn s_mu(&self) -> AbHom {
        let s = self.param.linearisation();
        let cols: Vec<Vec<i64>> = self.mu.iter().map(|m| s.proj.apply(m).0).collect();
        AbHom::new(FinAbGroup::free(self.rank()), s.group.clone(), Matrix::from_cols(&cols, s.group.ngens()))
            .expect("maps out of a free group are well defined")
    }

    /// `Sμ` is surjective.
    pub fn is_full(&self) -> bool {
        self.s_mu().is_surjective()
    }

    /// Symmetric: `|σ| < rank`. Anti-symmetric: `rank ≥ 2`.
    pub fn is_indefinite(&self) -> bool {
        match self.param.symmetry() {
            Symmetry::Symmetric => (signature_of_matrix(&self.lambda).unsigned_abs() as usize) < self.rank(),
            Symmetry::AntiSymmetric => self.rank() >= 2,
        }
    }

    pub fn is_absorbing(&self) -> Result<bool> {
        if !self.is_nonsingular() {
            return validation("absorbing test needs a nonsingular form");
        }
        Ok(self.is_indefinite() && self.is_full())
    }

    /// `v_Q∘Sμ: X → Z₂` for symmetric forms.
    pub fn wu_map(&self) -> Result<AbHom> {
        if self.param.symmetry() != Symmetry::Symmetric {
            return validation("the Wu map needs a symmetric parameter");
        }
        let crate::formparam::QuasiWu::Slice(v) = self.param.quasi_wu() else { unreachable!() };
        v.v.compose(&self.s_mu())
    }

    /// Whether `c: X → Z/m` (`m` even or zero) satisfies `λ(x,x) ≡ c(x) mod 2`.
    pub fn characteristic_check(&self, c: &AbHom) -> Result<bool> {
        if self.param.symmetry() != Symmetry::Symmetric {
            return validation("characteristic maps are defined for symmetric forms");
        }
        if c.source() != &FinAbGroup::free(self.rank()) || c.target().ngens() != 1 || !c.target().orders()[0].is_multiple_of(2) {
            return Err(Error::Schema("characteristic map must go from X to a cyclic group of even or infinite order".into()));
        }
        let k = self.rank();
        let parity = |x: &[i64]| (self.lambda_eval(x, x) - c.apply(x)[0]).rem_euclid(2) == 0;
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = 1;
            if !parity(&e) {
                return Ok(false);
            }
            for j in i + 1..k {
                let mut s = e.clone();
                s[j] = 1;
                if !parity(&s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Rank `2k` metabolic form `[[0, I], [εI, D]]` with `μ = (0, q₁, …, q_k)` over the carrier generators.
    pub fn full_metabolic(param: &FormParameter) -> QForm {
        let gens = param.carrier().generators();
        let k = gens.len();
        if k == 0 {
            return QForm::hyperbolic(param, 1);
        }
        let eps = param.epsilon();
        let mut l = Matrix::zeros(2 * k, 2 * k);
        for (i, q) in gens.iter().enumerate() {
            l[(i, k + i)] = 1;
            l[(k + i, i)] = eps;
            l[(k + i, k + i)] = param.h_of(q);
        }
        let mut mu = vec![param.carrier().zero(); k];
        mu.extend(gens);
        QForm { param: param.clone(), lambda: l, mu }
    }

    /// Same `λ` and `μ` values, compared after reduction.
    pub fn same_as(&self, other: &QForm) -> bool {
        self == other
    }
}

impl fmt::Debug for QForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mu: Vec<&Vec<i64>> = self.mu.iter().map(|m| &m.0).collect();
        write!(f, "QForm(lambda = {:?}, mu = {:?} over {:?})", self.lambda, mu, self.param)
    }
}

//! Morphisms of form parameters, the slice lifting, `es`, `eql` and automorphisms.

use crate::abelian::{AbHom, Element};
use crate::error::{validation, Error, Result};
use crate::matrix::Matrix;

use super::{FormParameter, StandardName, Symmetry};

/// A carrier homomorphism with `h′∘α = h` and `α(p(1)) = p′(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPMorphism {
    source: FormParameter,
    target: FormParameter,
    map: AbHom,
}

impl FPMorphism {
    pub fn new(source: FormParameter, target: FormParameter, matrix: Matrix) -> Result<Self> {
        let map = AbHom::new(source.carrier().clone(), target.carrier().clone(), matrix)?;
        for i in 0..source.carrier().ngens() {
            let img = map.image_of_generator(i);
            let (hs, ht) = (source.h().matrix()[(0, i)], target.h_of(&img));
            if hs != ht {
                return validation(format!("h is not preserved on generator {i}: h = {hs}, h′∘α = {ht}"));
            }
        }
        let pimg = map.apply(source.p_one());
        if !target.carrier().eq_elem(&pimg, target.p_one()) {
            return validation(format!(
                "p(1) is not preserved: α(p(1)) = {:?}, p′(1) = {:?}",
                pimg.0,
                target.p_one().0
            ));
        }
        if source.symmetry() != target.symmetry() {
            return Err(Error::Internal("morphism between parameters of different symmetry".into()));
        }
        Ok(FPMorphism { source, target, map })
    }

    pub fn identity(p: &FormParameter) -> Self {
        FPMorphism { source: p.clone(), target: p.clone(), map: AbHom::identity(p.carrier()) }
    }

    pub fn source(&self) -> &FormParameter {
        &self.source
    }

    pub fn target(&self) -> &FormParameter {
        &self.target
    }

    pub fn map(&self) -> &AbHom {
        &self.map
    }

    pub fn apply(&self, q: &[i64]) -> Element {
        self.map.apply(q)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FPMorphism) -> Result<FPMorphism> {
        if other.target != self.source {
            return validation("cannot compose morphisms: target and source differ");
        }
        Ok(FPMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&other.map)?,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.map.is_isomorphism()
    }

    pub fn inverse(&self) -> Result<FPMorphism> {
        let inv = self.map.inverse()?;
        FPMorphism::new(self.target.clone(), self.source.clone(), inv.matrix().clone())
    }

    /// The induced map `Sα: SP → SP′` on linearisations.
    pub fn s_map(&self) -> AbHom {
        let s = self.source.linearisation();
        let t = self.target.linearisation();
        let cols: Vec<Vec<i64>> =
            s.lift.to_cols().iter().map(|c| t.proj.apply(&self.map.apply(c)).0).collect();
        AbHom::new(s.group.clone(), t.group.clone(), Matrix::from_cols(&cols, t.group.ngens()))
            .expect("Sα is well defined")
    }

    /// `v_{P′}∘Sα = v_P` (symmetric) or `α∘v′_P = v′_{P′}` (anti-symmetric).
    pub fn respects_quasi_wu(&self) -> bool {
        match self.source.symmetry() {
            Symmetry::Symmetric => {
                let vs = self.source.slice().v;
                let vt = self.target.slice().v;
                vt.compose(&self.s_map()).map(|c| c.equals(&vs)).unwrap_or(false)
            }
            Symmetry::AntiSymmetric => {
                self.target.carrier().eq_elem(&self.map.apply(self.source.p_one()), self.target.p_one())
            }
        }
    }
}

/// The unique morphism `α: P → P′` with `Sα = f`, built through the pullback description of the carrier.
pub fn morphism_from_slice(source: &FormParameter, target: &FormParameter, f: &AbHom) -> Result<FPMorphism> {
    if source.symmetry() != Symmetry::Symmetric || target.symmetry() != Symmetry::Symmetric {
        return validation("morphism_from_slice needs symmetric parameters");
    }
    let s = source.linearisation();
    let t = target.linearisation();
    if f.source() != &s.group || f.target() != &t.group {
        return Err(Error::Schema(format!(
            "slice map must go {} -> {}, got {} -> {}",
            s.group,
            t.group,
            f.source(),
            f.target()
        )));
    }
    let vs = source.slice().v;
    let vt = target.slice().v;
    if !vt.compose(f)?.equals(&vs) {
        return validation("slice map is not compatible with the quasi-Wu classes");
    }
    let n = source.carrier().ngens();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let q = source.carrier().generator(i);
        let fq = f.apply(&s.proj.apply(&q));
        let t0 = t.lift_element(&fq);
        let diff = source.h_of(&q) - target.h_of(&t0);
        if diff % 2 != 0 {
            return Err(Error::Internal(format!("parity mismatch lifting generator {i}")));
        }
        let img = target.carrier().add(&t0, &target.p_of(diff / 2));
        cols.push(img.0);
    }
    FPMorphism::new(source.clone(), target.clone(), Matrix::from_cols(&cols, target.carrier().ngens()))
}

/// Extended symmetrisation `P → Q^+ ⊕ SP`, carrier map `(h, π)`.
pub fn es(p: &FormParameter) -> Result<FPMorphism> {
    if p.symmetry() != Symmetry::Symmetric {
        return validation("es needs a symmetric parameter");
    }
    let s = p.linearisation();
    let target = FormParameter::standard(StandardName::QHatPlus)?.split_sum(&s.group);
    let matrix = p.h().matrix().vstack(s.proj.matrix());
    FPMorphism::new(p.clone(), target, matrix)
}

/// Extended quadratic lift `Q− ⊕ P_e → P`, carrier map `(a, x) ↦ a·p(1) + x`.
pub fn eql(p: &FormParameter) -> Result<FPMorphism> {
    if p.symmetry() != Symmetry::AntiSymmetric {
        return validation("eql needs an anti-symmetric parameter");
    }
    let source = FormParameter::standard(StandardName::QMinus)?.split_sum(p.carrier());
    let n = p.carrier().ngens();
    let matrix = Matrix::from_cols(&[p.p_one().0.clone()], n).hstack(&Matrix::identity(n));
    FPMorphism::new(source, p.clone(), matrix)
}

/// The standard morphism `ZP_k → ZP_l` with matrix `[[1,0],[n,2n+1]]` (`k` or `l` zero means `ZP`).
pub fn zp_morphism(n: i64, k: u32, l: u32) -> Result<FPMorphism> {
    let s = FormParameter::standard(StandardName::Zp(k))?;
    let t = FormParameter::standard(StandardName::Zp(l))?;
    FPMorphism::new(s, t, Matrix::from_rows(&[vec![1, 0], vec![n, 2 * n + 1]], 2))
}

/// Generators of the automorphism group of a standard parameter.
pub fn aut_generators(name: StandardName) -> Result<Vec<FPMorphism>> {
    let name = name.validate()?;
    let p = FormParameter::standard(name)?;
    let mats: Vec<Matrix> = match name {
        StandardName::Zp(k) => {
            let mut v = vec![Matrix::from_rows(&[vec![1, 0], vec![-1, -1]], 2)];
            if k >= 2 {
                v.push(Matrix::from_rows(&[vec![1, 0], vec![1, 3]], 2));
            }
            v
        }
        StandardName::ZLambda(k) => {
            let mut v = vec![Matrix::from_rows(&[vec![-1]], 1)];
            if k >= 3 {
                v.push(Matrix::from_rows(&[vec![3]], 1));
            }
            v
        }
        _ => vec![],
    };
    mats.into_iter().map(|m| FPMorphism::new(p.clone(), p.clone(), m)).collect()
}

fn standard(name: StandardName) -> FormParameter {
    FormParameter::standard(name).expect("standard parameters are valid")
}

fn p_column(p: &FormParameter) -> Matrix {
    Matrix::from_cols(&[p.p_one().0.clone()], p.carrier().ngens())
}

/// The unique morphism `Q+ → P`, given by `p`.
pub fn from_q_plus(p: &FormParameter) -> Result<FPMorphism> {
    FPMorphism::new(standard(StandardName::QPlus), p.clone(), p_column(p))
}

/// The unique morphism `P → Q^+`, given by `h`.
pub fn to_q_hat_plus(p: &FormParameter) -> Result<FPMorphism> {
    FPMorphism::new(p.clone(), standard(StandardName::QHatPlus), p.h().matrix().clone())
}

/// The unique morphism `Q− → P`, given by `1 ↦ p(1)`.
pub fn from_q_minus(p: &FormParameter) -> Result<FPMorphism> {
    FPMorphism::new(standard(StandardName::QMinus), p.clone(), p_column(p))
}

/// The unique morphism `P → Q^−`.
pub fn to_q_hat_minus(p: &FormParameter) -> Result<FPMorphism> {
    FPMorphism::new(p.clone(), standard(StandardName::QHatMinus), Matrix::zeros(0, p.carrier().ngens()))
}

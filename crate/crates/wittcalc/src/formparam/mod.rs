//! Form parameters `(Q_e, h, p)` over the integers.
//!
//! `p: Z → Q_e` is stored as the single element `p(1)`. The symmetry is derived from `h(p(1))`.

mod classify;
mod morphism;
mod standard;

pub use classify::{classify, maximal_splitting, FPClassification, Height, MaximalSplitting};
pub use morphism::{
    aut_generators, eql, es, from_q_minus, from_q_plus, morphism_from_slice, to_q_hat_minus, to_q_hat_plus, zp_morphism,
    FPMorphism,
};
pub use standard::StandardName;

use std::fmt;

use crate::abelian::{cokernel_presentation, AbHom, Element, FinAbGroup, Quotient};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `ε = +1` or `ε = −1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Symmetric,
    AntiSymmetric,
}

impl Symmetry {
    pub fn sign(self) -> i64 {
        match self {
            Symmetry::Symmetric => 1,
            Symmetry::AntiSymmetric => -1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormParameter {
    carrier: FinAbGroup,
    h: AbHom,
    p_one: Element,
}

impl FormParameter {
    /// Validates the axioms `hph = 2h` and `php = 2p`.
    pub fn new(carrier: FinAbGroup, h_values: &[i64], p_one: &[i64]) -> Result<Self> {
        let n = carrier.ngens();
        if h_values.len() != n {
            return Err(Error::Schema(format!("h has {} values, carrier {carrier} has {n} generators", h_values.len())));
        }
        let h = AbHom::new(carrier.clone(), FinAbGroup::free(1), Matrix::from_rows(&[h_values.to_vec()], n))
            .map_err(|e| match e {
                Error::Validation(m) => Error::Validation(format!("h is not a homomorphism to Z: {m}")),
                other => other,
            })?;
        let p_one = carrier.element(p_one)?;
        let hp = h.apply(&p_one)[0];
        if hp != 0 && hp != 2 {
            return Err(Error::Validation(format!("h(p(1)) = {hp}, expected 0 or 2")));
        }
        for i in 0..n {
            let hq = h.matrix()[(0, i)];
            if hq * hp != 2 * hq {
                return Err(Error::Validation(format!(
                    "axiom hph = 2h fails on generator {i}: h(p(h(q))) = {} but 2h(q) = {}",
                    hq * hp,
                    2 * hq
                )));
            }
        }
        if !carrier.eq_elem(&carrier.scale(hp, &p_one), &carrier.scale(2, &p_one)) {
            return Err(Error::Validation(format!("axiom php = 2p fails: 2·p(1) = {:?} is non-zero", carrier.scale(2, &p_one).0)));
        }
        Ok(FormParameter { carrier, h, p_one })
    }

    pub fn standard(name: StandardName) -> Result<Self> {
        standard::build(name)
    }

    pub fn carrier(&self) -> &FinAbGroup {
        &self.carrier
    }

    /// `h` as a homomorphism `Q_e → Z`.
    pub fn h(&self) -> &AbHom {
        &self.h
    }

    pub fn h_values(&self) -> Vec<i64> {
        self.h.matrix().row(0)
    }

    pub fn h_of(&self, q: &[i64]) -> i64 {
        self.h.apply(q)[0]
    }

    pub fn p_one(&self) -> &Element {
        &self.p_one
    }

    /// `p(n) = n·p(1)`.
    pub fn p_of(&self, n: i64) -> Element {
        self.carrier.scale(n, &self.p_one)
    }

    pub fn symmetry(&self) -> Symmetry {
        if self.h_of(&self.p_one) == 2 {
            Symmetry::Symmetric
        } else {
            Symmetry::AntiSymmetric
        }
    }

    pub fn epsilon(&self) -> i64 {
        self.symmetry().sign()
    }

    /// `Q ⊕ G` with `h` extended by zero and `p(1)` in the first block.
    pub fn split_sum(&self, g: &FinAbGroup) -> FormParameter {
        let carrier = self.carrier.direct_sum(g);
        let mut h = self.h_values();
        h.extend(std::iter::repeat_n(0, g.ngens()));
        let mut p = self.p_one.0.clone();
        p.extend(std::iter::repeat_n(0, g.ngens()));
        FormParameter::new(carrier, &h, &p).expect("split sum of a valid parameter is valid")
    }

    /// `SQ = Q_e / ⟨p(1)⟩` with its projection.
    pub fn linearisation(&self) -> Quotient {
        cokernel_presentation(&Matrix::from_cols(std::slice::from_ref(&self.p_one.0), self.carrier.ngens()), &self.carrier)
    }

    pub fn quasi_wu(&self) -> QuasiWu {
        match self.symmetry() {
            Symmetry::Symmetric => QuasiWu::Slice(self.slice()),
            Symmetry::AntiSymmetric => QuasiWu::Coslice(CosliceHom {
                codomain: self.carrier.clone(),
                v_one: self.p_one.clone(),
            }),
        }
    }

    /// `v_Q: SQ → Z₂`, induced by `h` mod 2. Only meaningful for symmetric parameters.
    pub(crate) fn slice(&self) -> SliceHom {
        let s = self.linearisation();
        let row: Vec<i64> = s.lift.to_cols().iter().map(|c| self.h_of(c).rem_euclid(2)).collect();
        let v = AbHom::new(s.group.clone(), FinAbGroup::cyclic(2), Matrix::from_rows(&[row], s.group.ngens()))
            .expect("v_Q is well defined on SQ");
        SliceHom { domain: s.group, v }
    }
}

impl fmt::Debug for FormParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormParameter({}, h = {:?}, p(1) = {:?})", self.carrier, self.h_values(), self.p_one.0)
    }
}

/// Quasi-Wu class `v_Q: SQ → Z₂` of a symmetric parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceHom {
    pub domain: FinAbGroup,
    pub v: AbHom,
}

/// Quasi-Wu class `v′_Q: Z₂ → Q_e` of an anti-symmetric parameter, stored as `v′(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosliceHom {
    pub codomain: FinAbGroup,
    pub v_one: Element,
}

impl CosliceHom {
    pub fn as_hom(&self) -> AbHom {
        AbHom::new(
            FinAbGroup::cyclic(2),
            self.codomain.clone(),
            Matrix::from_cols(std::slice::from_ref(&self.v_one.0), self.codomain.ngens()),
        )
        .expect("2·v′(1) = 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiWu {
    Slice(SliceHom),
    Coslice(CosliceHom),
}

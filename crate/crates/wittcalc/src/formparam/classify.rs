//! Maximal splittings and the classification by symmetry, height and complement.

use std::fmt;

use crate::abelian::{
    split_off_cyclic, split_off_free, split_off_hom_summand, subgroup_presentation, AbHom, Element, FinAbGroup,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::morphism::morphism_from_slice;
use super::{FPMorphism, FormParameter, StandardName, Symmetry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(k) => write!(f, "{k}"),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

impl StandardName {
    pub fn height(self) -> Height {
        match self {
            StandardName::QPlus | StandardName::QHatMinus => Height::Finite(0),
            StandardName::QHatPlus | StandardName::QMinus => Height::Finite(1),
            StandardName::Zp(0) => Height::Infinite,
            StandardName::Zp(k) => Height::Finite(k + 1),
            StandardName::ZLambda(k) => Height::Finite(k),
        }
    }

    pub fn from_height(symmetry: Symmetry, height: Height) -> StandardName {
        match (symmetry, height) {
            (Symmetry::Symmetric, Height::Finite(0)) => StandardName::QPlus,
            (Symmetry::Symmetric, Height::Finite(1)) => StandardName::QHatPlus,
            (Symmetry::Symmetric, Height::Finite(k)) => StandardName::Zp(k - 1),
            (Symmetry::Symmetric, Height::Infinite) => StandardName::Zp(0),
            (Symmetry::AntiSymmetric, Height::Finite(0)) => StandardName::QHatMinus,
            (Symmetry::AntiSymmetric, Height::Finite(1)) => StandardName::QMinus,
            (Symmetry::AntiSymmetric, Height::Finite(k)) => StandardName::ZLambda(k),
            (Symmetry::AntiSymmetric, Height::Infinite) => unreachable!("anti-symmetric heights are finite"),
        }
    }
}

/// Complete isomorphism invariant of a form parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FPClassification {
    pub symmetry: Symmetry,
    pub height: Height,
    pub complement: FinAbGroup,
}

/// An isomorphism `P → Q ⊕ G` with `Q` standard.
#[derive(Clone, Debug)]
pub struct MaximalSplitting {
    pub standard: StandardName,
    pub complement: FinAbGroup,
    pub iso: FPMorphism,
}

pub fn classify(p: &FormParameter) -> Result<FPClassification> {
    let m = maximal_splitting(p)?;
    Ok(FPClassification { symmetry: p.symmetry(), height: m.standard.height(), complement: m.complement })
}

pub fn maximal_splitting(p: &FormParameter) -> Result<MaximalSplitting> {
    let mut out = match p.symmetry() {
        Symmetry::Symmetric => split_symmetric(p)?,
        Symmetry::AntiSymmetric => split_antisymmetric(p)?,
    };
    if out.iso.target() == p {
        out.iso = FPMorphism::identity(p);
    }
    if !out.iso.is_isomorphism() {
        return Err(Error::Internal(format!("maximal splitting of {p:?} is not an isomorphism")));
    }
    Ok(out)
}

fn split_antisymmetric(p: &FormParameter) -> Result<MaximalSplitting> {
    let carrier = p.carrier();
    let (standard, root, complement) = if carrier.is_zero(p.p_one()) {
        (StandardName::QHatMinus, None, carrier.generators())
    } else {
        let c = split_off_cyclic(carrier, p.p_one())?;
        let name = if c.exponent == 0 { StandardName::QMinus } else { StandardName::ZLambda(c.exponent + 1) };
        (name, Some(c.root), c.complement)
    };
    let sub = subgroup_presentation(carrier, &complement);
    let q = FormParameter::standard(standard)?;
    let target = q.split_sum(&sub.group);
    // β: Q_e ⊕ G → P_e sends the cyclic generator to the root and G by inclusion.
    let mut cols: Vec<Vec<i64>> = root.into_iter().map(|r| r.0).collect();
    cols.extend(sub.inclusion.images().into_iter().map(|e| e.0));
    let beta = AbHom::new(target.carrier().clone(), carrier.clone(), Matrix::from_cols(&cols, carrier.ngens()))?;
    let alpha = beta.inverse()?;
    let iso = FPMorphism::new(p.clone(), target, alpha.matrix().clone())?;
    Ok(MaximalSplitting { standard, complement: sub.group, iso })
}

fn split_symmetric(p: &FormParameter) -> Result<MaximalSplitting> {
    let slice = p.slice();
    let s = &slice.domain;
    let v = &slice.v;
    let tor_nonzero = s.torsion_elements().iter().any(|x| v.apply(x)[0] == 1);
    let (standard, g, h): (StandardName, Option<Element>, Vec<Element>) = if v.is_zero() {
        (StandardName::QPlus, None, s.generators())
    } else if tor_nonzero {
        let sp = split_off_hom_summand(s, v)?;
        let order = s.order_of(sp.generator()).expect("torsion generator");
        let a = order.trailing_zeros();
        let name = if a == 1 { StandardName::QHatPlus } else { StandardName::Zp(a - 1) };
        (name, Some(sp.generator().clone()), sp.summand_b)
    } else {
        // v vanishes on torsion, so it is non-zero on the free coordinates of the canonical SQ.
        let free_idx: Vec<usize> = (0..s.ngens()).filter(|&i| s.orders()[i] == 0).collect();
        let free = FinAbGroup::free(free_idx.len());
        let row: Vec<i64> = free_idx.iter().map(|&i| v.matrix()[(0, i)]).collect();
        let vf = AbHom::new(free.clone(), FinAbGroup::cyclic(2), Matrix::from_rows(&[row], free.ngens()))?;
        let sp = split_off_free(&free, &vf)?;
        let embed = |x: &Element| {
            let mut y = vec![0; s.ngens()];
            for (k, &i) in free_idx.iter().enumerate() {
                y[i] = x[k];
            }
            Element(y)
        };
        let mut h: Vec<Element> =
            (0..s.ngens()).filter(|&i| s.orders()[i] != 0).map(|i| s.generator(i)).collect();
        h.extend(sp.summand_b.iter().map(embed));
        (StandardName::Zp(0), Some(embed(sp.generator())), h)
    };
    let sub = subgroup_presentation(s, &h);
    let q = FormParameter::standard(standard)?;
    let target = q.split_sum(&sub.group);
    let sq = q.linearisation();
    // ψ: SQ ⊕ G → SP, the cyclic generator of SQ to g and G by inclusion.
    let mut psi_cols: Vec<Vec<i64>> = Vec::new();
    if let Some(g) = &g {
        debug_assert_eq!(sq.group.ngens(), 1);
        psi_cols.push(g.0.clone());
    }
    psi_cols.extend(sub.inclusion.images().into_iter().map(|e| e.0));
    let psi = AbHom::new(sq.group.direct_sum(&sub.group), s.clone(), Matrix::from_cols(&psi_cols, s.ngens()))?;
    // θ: SQ ⊕ G → S(Q ⊕ G) through the carrier.
    let st = target.linearisation();
    let qn = q.carrier().ngens();
    let mut theta_cols: Vec<Vec<i64>> = Vec::new();
    for c in sq.lift.to_cols() {
        let mut x = c.clone();
        x.extend(std::iter::repeat_n(0, sub.group.ngens()));
        theta_cols.push(st.proj.apply(&x).0);
    }
    for j in 0..sub.group.ngens() {
        let mut x = vec![0; qn + sub.group.ngens()];
        x[qn + j] = 1;
        theta_cols.push(st.proj.apply(&x).0);
    }
    let theta = AbHom::new(psi.source().clone(), st.group.clone(), Matrix::from_cols(&theta_cols, st.group.ngens()))?;
    let f = theta.compose(&psi.inverse()?)?;
    let iso = morphism_from_slice(p, &target, &f)?;
    Ok(MaximalSplitting { standard, complement: sub.group, iso })
}

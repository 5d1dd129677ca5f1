//! Grothendieck–Witt classes and the metabolic verdict.

use crate::abelian::FinAbGroup;
use crate::error::{validation, Result};
use crate::formparam::{FPMorphism, FormParameter, StandardName, Symmetry};
use crate::matrix::Matrix;
use crate::qform::{metabolic_search, MetabolicSearch, QForm};

use super::class::{standard, witt_class, witt_group, WittClass};
use super::invariants::arf;

/// `[f] ∈ GW₀(P)`, recorded as `(rank, Witt class)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWClass {
    pub rank: usize,
    pub witt: WittClass,
}

pub fn gw_class(f: &QForm) -> Result<GWClass> {
    Ok(GWClass { rank: f.rank(), witt: witt_class(f)? })
}

/// Which pairs `(rank, class)` in `Z ⊕ W₀(P)` come from forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GWImage {
    /// Symmetric: `σ ≡ rank mod 2`.
    SignatureParity,
    /// Anti-symmetric: the rank is even.
    EvenRank,
}

/// `GW₀(P) ≅ {(n, w) ∈ Z ⊕ W₀(P)}` cut out by `image`.
#[derive(Clone, Debug)]
pub struct GWGroupDescription {
    pub param: FormParameter,
    /// `Z ⊕ W₀(P)` in canonical form; the subgroup has the same isomorphism type.
    pub group: FinAbGroup,
    pub image: GWImage,
}

impl GWGroupDescription {
    pub fn contains(&self, rank: i64, class: &WittClass) -> bool {
        match self.image {
            GWImage::SignatureParity => class.signature().is_some_and(|s| (s - rank).rem_euclid(2) == 0),
            GWImage::EvenRank => rank.rem_euclid(2) == 0,
        }
    }
}

pub fn gw_group(p: &FormParameter) -> Result<GWGroupDescription> {
    let w = witt_group(p)?;
    let group = FinAbGroup::free(1).direct_sum(&w.group).canonical();
    let image = match p.symmetry() {
        Symmetry::Symmetric => GWImage::SignatureParity,
        Symmetry::AntiSymmetric => GWImage::EvenRank,
    };
    Ok(GWGroupDescription { param: p.clone(), group, image })
}

/// Whether `f` itself is metabolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Metabolicity {
    /// A basis of a lagrangian.
    Metabolic(Vec<Vec<i64>>),
    NotMetabolic(String),
    /// No lagrangian within the search bound and no obstruction known.
    Unknown,
}

/// Stable metabolicity (`[f] = 0` in `W₀`) and metabolicity of `f` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabolicVerdict {
    pub witt_zero: bool,
    pub metabolic: Metabolicity,
}

/// `μ` takes values in `{0, p(1)}` on the basis, so `f` is pulled back from `Q−`.
fn arf_obstruction(f: &QForm) -> Result<Option<u8>> {
    let p = f.param();
    if p.symmetry() != Symmetry::AntiSymmetric || p.carrier().is_zero(p.p_one()) {
        return Ok(None);
    }
    let w = p.p_one();
    let mut bits = Vec::with_capacity(f.rank());
    for m in f.mu_basis() {
        if p.carrier().is_zero(m) {
            bits.push(vec![0]);
        } else if p.carrier().eq_elem(m, w) {
            bits.push(vec![1]);
        } else {
            return Ok(None);
        }
    }
    let qm = standard(StandardName::QMinus);
    let pulled = QForm::new(qm.clone(), f.lambda().clone(), bits)?;
    let to_p = FPMorphism::new(qm, p.clone(), Matrix::from_cols(std::slice::from_ref(&w.0), p.carrier().ngens()))?;
    debug_assert!(pulled.pushforward(&to_p)?.same_as(f));
    Ok(Some(arf(&pulled)?))
}

/// Decides `[f] = 0` exactly; metabolicity of `f` by rank, Witt class, the Arf obstruction for
/// forms pulled back from `Q−`, and otherwise a bounded lagrangian search.
pub fn metabolic_verdict(f: &QForm, bound: i64) -> Result<MetabolicVerdict> {
    if !f.is_nonsingular() {
        return validation("metabolic verdicts need a nonsingular form");
    }
    let witt_zero = witt_class(f)?.is_zero();
    let metabolic = if !witt_zero {
        Metabolicity::NotMetabolic("nonzero Witt class".into())
    } else if f.rank() % 2 == 1 {
        Metabolicity::NotMetabolic("odd rank".into())
    } else if arf_obstruction(f)? == Some(1) {
        Metabolicity::NotMetabolic("pulled back from Q− with Arf invariant 1".into())
    } else {
        match metabolic_search(f, bound)? {
            MetabolicSearch::Lagrangian(l) => Metabolicity::Metabolic(l),
            MetabolicSearch::OddRank => Metabolicity::NotMetabolic("odd rank".into()),
            MetabolicSearch::NotFoundWithinBound => Metabolicity::Unknown,
        }
    };
    Ok(MetabolicVerdict { witt_zero, metabolic })
}

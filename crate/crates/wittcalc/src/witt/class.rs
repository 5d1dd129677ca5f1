//! Witt classes and Witt groups through a maximal splitting `P ≅ Q ⊕ G`.

use std::fmt;
use std::sync::Arc;

use crate::abelian::{AbHom, Element, FinAbGroup};
use crate::error::{internal, validation, Error, Result};
use crate::formparam::{maximal_splitting, FPMorphism, FormParameter, MaximalSplitting, StandardName};
use crate::matrix::Matrix;
use crate::qform::{signature, QForm};
use crate::qtensor::{induced_map, present, TensorPresentation};

use super::invariants::{arf, rho};
use super::tensor_part::{f_invariant, gamma_form};

pub(crate) fn standard(name: StandardName) -> FormParameter {
    FormParameter::standard(name).expect("standard parameters are valid")
}

/// The invariant of the indecomposable summand `W₀(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndecPart {
    /// Signature over `Q+`, a multiple of 8.
    EvenSig(i64),
    /// Signature over `Q^+`.
    Sig(i64),
    /// Signature and `ρ_∞` (`modulus` = `None`) or `ρ_k` mod `2^{k−1}`.
    SigRho { sigma: i64, rho: i64, modulus: Option<u64> },
    Arf(u8),
    Zero,
}

/// Orders of the cyclic factors of `W₀(Q)` for a standard `Q`.
pub fn indec_orders(name: StandardName) -> Vec<u64> {
    match name {
        StandardName::QPlus | StandardName::QHatPlus => vec![0],
        StandardName::Zp(0) => vec![0, 0],
        StandardName::Zp(k) => vec![0, 1 << (k - 1)],
        StandardName::QMinus => vec![2],
        StandardName::ZLambda(_) | StandardName::QHatMinus => vec![],
    }
}

fn indec_names(name: StandardName) -> Vec<String> {
    match name {
        StandardName::QPlus => vec!["8σ*".into()],
        StandardName::QHatPlus => vec!["σ*".into()],
        StandardName::Zp(0) => vec!["σ*".into(), "ρ∞*".into()],
        StandardName::Zp(k) => vec!["σ*".into(), format!("ρ{k}*")],
        StandardName::QMinus => vec!["c*".into()],
        StandardName::ZLambda(_) | StandardName::QHatMinus => vec![],
    }
}

/// The forms `8σ*` (E₈), `σ*`, `ρ*` and `c*` dual to the invariants of `W₀(Q)`.
pub fn indec_generator_forms(name: StandardName) -> Vec<QForm> {
    let q = standard(name);
    let build = |rows: Vec<Vec<i64>>, mu: Vec<Vec<i64>>| {
        let n = rows.len();
        QForm::new(q.clone(), Matrix::from_rows(&rows, n), mu).expect("generator forms are valid")
    };
    match name {
        StandardName::QPlus => vec![build(e8_rows(), vec![vec![1]; 8])],
        StandardName::QHatPlus => vec![build(vec![vec![1]], vec![vec![1]])],
        StandardName::Zp(_) => vec![
            build(vec![vec![1]], vec![vec![1, 0]]),
            build(vec![vec![0, 1], vec![1, 0]], vec![vec![0, 1], vec![0, -1]]),
        ],
        StandardName::QMinus => vec![build(vec![vec![0, 1], vec![-1, 0]], vec![vec![1], vec![1]])],
        StandardName::ZLambda(_) | StandardName::QHatMinus => vec![],
    }
}

/// Gram matrix of the E₈ lattice (Cartan matrix of the Dynkin diagram).
pub fn e8_rows() -> Vec<Vec<i64>> {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    let mut m = vec![vec![0; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    m
}

impl IndecPart {
    fn of_form(f: &QForm, name: StandardName) -> Result<IndecPart> {
        Ok(match name {
            StandardName::QPlus => {
                let s = signature(f)?;
                if s % 8 != 0 {
                    return internal(format!("even form with signature {s}"));
                }
                IndecPart::EvenSig(s)
            }
            StandardName::QHatPlus => IndecPart::Sig(signature(f)?),
            StandardName::Zp(_) => {
                let r = rho(f)?;
                IndecPart::SigRho { sigma: r.sigma, rho: r.value(), modulus: r.modulus }
            }
            StandardName::QMinus => IndecPart::Arf(arf(f)?),
            StandardName::ZLambda(_) | StandardName::QHatMinus => IndecPart::Zero,
        })
    }

    pub fn coords(&self) -> Vec<i64> {
        match *self {
            IndecPart::EvenSig(s) => vec![s / 8],
            IndecPart::Sig(s) => vec![s],
            IndecPart::SigRho { sigma, rho, .. } => vec![sigma, rho],
            IndecPart::Arf(c) => vec![c as i64],
            IndecPart::Zero => vec![],
        }
    }

    fn from_coords(name: StandardName, c: &[i64]) -> IndecPart {
        match name {
            StandardName::QPlus => IndecPart::EvenSig(8 * c[0]),
            StandardName::QHatPlus => IndecPart::Sig(c[0]),
            StandardName::Zp(0) => IndecPart::SigRho { sigma: c[0], rho: c[1], modulus: None },
            StandardName::Zp(k) => {
                let m = 1u64 << (k - 1);
                IndecPart::SigRho { sigma: c[0], rho: c[1].rem_euclid(m as i64), modulus: Some(m) }
            }
            StandardName::QMinus => IndecPart::Arf(c[0].rem_euclid(2) as u8),
            StandardName::ZLambda(_) | StandardName::QHatMinus => IndecPart::Zero,
        }
    }

    pub fn signature(&self) -> Option<i64> {
        match *self {
            IndecPart::EvenSig(s) | IndecPart::Sig(s) | IndecPart::SigRho { sigma: s, .. } => Some(s),
            _ => None,
        }
    }
}

/// A Witt class, stored through the maximal splitting chosen by `maximal_splitting`.
#[derive(Clone, PartialEq, Eq)]
pub struct WittClass {
    param: FormParameter,
    standard: StandardName,
    complement: FinAbGroup,
    indec: IndecPart,
    tensor: Element,
}

impl WittClass {
    pub fn param(&self) -> &FormParameter {
        &self.param
    }

    pub fn standard(&self) -> StandardName {
        self.standard
    }

    pub fn complement(&self) -> &FinAbGroup {
        &self.complement
    }

    pub fn indec(&self) -> &IndecPart {
        &self.indec
    }

    /// The reduced part in `G ⊗_Z Q`.
    pub fn tensor(&self) -> &Element {
        &self.tensor
    }

    /// Coordinates in `witt_group(P).group`: indecomposable part, then the tensor part.
    pub fn coords(&self) -> Vec<i64> {
        let mut c = self.indec.coords();
        c.extend_from_slice(&self.tensor);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&x| x == 0)
    }

    /// Signature, for symmetric parameters.
    pub fn signature(&self) -> Option<i64> {
        self.indec.signature()
    }

    pub fn add(&self, other: &WittClass) -> Result<WittClass> {
        if self.param != other.param {
            return validation("Witt classes over different parameters");
        }
        let c: Vec<i64> = self.coords().iter().zip(other.coords()).map(|(a, b)| a + b).collect();
        Ok(self.with_coords(&c))
    }

    fn with_coords(&self, c: &[i64]) -> WittClass {
        let k = indec_orders(self.standard).len();
        let pres = present(&self.complement, &standard(self.standard)).expect("presentation was built before");
        WittClass {
            param: self.param.clone(),
            standard: self.standard,
            complement: self.complement.clone(),
            indec: IndecPart::from_coords(self.standard, &c[..k]),
            tensor: pres.group().reduce(&c[k..]),
        }
    }
}

impl fmt::Debug for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittClass({:?}, tensor {:?} in {} ⊗ {})", self.indec, self.tensor.0, self.complement, self.standard)
    }
}

/// Splits `f` over `Q ⊕ G` into its `Q`-form.
fn retract(g: &QForm, q: &FormParameter) -> Result<QForm> {
    let c = q.carrier().ngens();
    QForm::new(q.clone(), g.lambda().clone(), g.mu_basis().iter().map(|m| m.0[..c].to_vec()).collect())
}

/// `(W₀(r), F)` of `f` transported along the maximal splitting.
pub fn witt_class(f: &QForm) -> Result<WittClass> {
    if !f.is_nonsingular() {
        return validation("Witt classes are defined for nonsingular forms");
    }
    let ms = maximal_splitting(f.param())?;
    witt_class_with(f, &ms)
}

pub(crate) fn witt_class_with(f: &QForm, ms: &MaximalSplitting) -> Result<WittClass> {
    let q = standard(ms.standard);
    let g = f.pushforward(&ms.iso)?;
    let indec = IndecPart::of_form(&retract(&g, &q)?, ms.standard)?;
    let tensor = f_invariant(&g, &q, &ms.complement)?;
    Ok(WittClass { param: f.param().clone(), standard: ms.standard, complement: ms.complement.clone(), indec, tensor })
}

/// `W₀(P) ≅ W₀(Q) ⊕ (G ⊗_Z Q)` with named generators.
#[derive(Clone, Debug)]
pub struct WittGroupDescription {
    pub param: FormParameter,
    pub splitting: MaximalSplitting,
    pub tensor: Arc<TensorPresentation>,
    /// `W₀(Q)` factors followed by the factors of `G ⊗_Z Q`.
    pub group: FinAbGroup,
    pub canonical: FinAbGroup,
    /// One provenance string per generator of `group`.
    pub generators: Vec<String>,
}

pub fn witt_group(p: &FormParameter) -> Result<WittGroupDescription> {
    let ms = maximal_splitting(p)?;
    let q = standard(ms.standard);
    let tensor = present(&ms.complement, &q)?;
    let mut orders = indec_orders(ms.standard);
    orders.extend_from_slice(tensor.group().orders());
    let group = FinAbGroup::new(orders);
    let mut generators = indec_names(ms.standard);
    generators.extend((0..tensor.group().ngens()).map(|i| format!("γ({})", tensor.describe(&tensor.group().generator(i)))));
    Ok(WittGroupDescription { param: p.clone(), canonical: group.canonical(), splitting: ms, tensor, group, generators })
}

impl WittGroupDescription {
    pub fn indec_count(&self) -> usize {
        indec_orders(self.splitting.standard).len()
    }

    /// A form over `P` whose class is generator `i`.
    pub fn generator_form(&self, i: usize) -> Result<QForm> {
        let ms = &self.splitting;
        let q = standard(ms.standard);
        let k = self.indec_count();
        let split = if i < k {
            let f = &indec_generator_forms(ms.standard)[i];
            let m = ms.complement.ngens();
            let mu = f.mu_basis().iter().map(|x| x.0.iter().copied().chain(std::iter::repeat_n(0, m)).collect()).collect();
            QForm::new(q.split_sum(&ms.complement), f.lambda().clone(), mu)?
        } else if i < self.group.ngens() {
            gamma_form(&self.tensor.group().generator(i - k), &q, &ms.complement)?
        } else {
            return Err(Error::Schema(format!("generator {i} out of range")));
        };
        split.pushforward(&ms.iso.inverse()?)
    }

    pub fn generator_forms(&self) -> Result<Vec<QForm>> {
        (0..self.group.ngens()).map(|i| self.generator_form(i)).collect()
    }

    /// The class with the given coordinates.
    pub fn class_of_coords(&self, c: &[i64]) -> Result<WittClass> {
        if c.len() != self.group.ngens() {
            return Err(Error::Schema(format!("expected {} coordinates", self.group.ngens())));
        }
        let k = self.indec_count();
        Ok(WittClass {
            param: self.param.clone(),
            standard: self.splitting.standard,
            complement: self.splitting.complement.clone(),
            indec: IndecPart::from_coords(self.splitting.standard, c),
            tensor: self.tensor.group().reduce(&c[k..]),
        })
    }
}

/// `W₀(α)` read off by pushing each generator form forward and taking its class.
pub fn pushforward_witt_map(alpha: &FPMorphism) -> Result<AbHom> {
    let d1 = witt_group(alpha.source())?;
    let d2 = witt_group(alpha.target())?;
    let cols = d1
        .generator_forms()?
        .iter()
        .map(|f| Ok(witt_class_with(&f.pushforward(alpha)?, &d2.splitting)?.coords()))
        .collect::<Result<Vec<_>>>()?;
    AbHom::new(d1.group.clone(), d2.group.clone(), Matrix::from_cols(&cols, d2.group.ngens()))
}

/// `(α_Q, α_G)` when `α` is split with respect to the maximal splittings of source and target.
pub fn split_components(alpha: &FPMorphism) -> Result<Option<(FPMorphism, AbHom)>> {
    let s = maximal_splitting(alpha.source())?;
    let t = maximal_splitting(alpha.target())?;
    let conj = t.iso.compose(&alpha.compose(&s.iso.inverse()?)?)?;
    let (c1, c2) = (standard(s.standard).carrier().ngens(), standard(t.standard).carrier().ngens());
    let m = conj.map();
    let images = m.images();
    let off_diagonal = images.iter().enumerate().any(|(j, img)| {
        let rows = if j < c1 { c2..img.len() } else { 0..c2 };
        rows.into_iter().any(|r| img[r] != 0)
    });
    if off_diagonal {
        return Ok(None);
    }
    let mat = m.matrix();
    let aq = FPMorphism::new(
        standard(s.standard),
        standard(t.standard),
        mat.row_range(0, c2).col_range(0, c1),
    )?;
    let ag = AbHom::new(
        s.complement.clone(),
        t.complement.clone(),
        mat.row_range(c2, mat.rows()).col_range(c1, mat.cols()),
    )?;
    Ok(Some((aq, ag)))
}

/// `W₀(α_Q) ⊕ (α_G ⊗ α_Q)` for a split morphism, in `witt_group` coordinates.
pub fn split_witt_map(alpha_q: &FPMorphism, alpha_g: &AbHom) -> Result<AbHom> {
    let wq = pushforward_witt_map(alpha_q)?;
    let tq = induced_map(alpha_g, alpha_q)?;
    Ok(wq.direct_sum(&tq))
}

//! Quadratic tensor product `G ⊗_Z Q` as a presented group.
//!
//! Abstract generators, for cyclic generators `gᵢ` of `G` and `eⱼ` of `Q_e`:
//! `gᵢ ⊗ eⱼ`, then `[gᵢ, gᵢ] ⊗ 1`, then `[gᵢ, gₖ] ⊗ 1` for `i < k`.
//! The remaining brackets are `ε`-multiples of these.

mod sequences;

pub use sequences::{check_sequences, expected_group, SequenceReport};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::abelian::{cokernel_presentation, AbHom, Element, FinAbGroup, Quotient};
use crate::error::{Error, Result};
use crate::formparam::{FPMorphism, FormParameter, StandardName};
use crate::matrix::Matrix;
use crate::qform::choose2;

/// A symbol of the quadratic tensor product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol {
    /// `x ⊗ q` with `x ∈ G`, `q ∈ Q_e`.
    Simple { x: Vec<i64>, q: Vec<i64> },
    /// `[x, y] ⊗ a` with `a ∈ Z`.
    Bracket { x: Vec<i64>, y: Vec<i64>, a: i64 },
}

/// Index layout of the abstract generators for `m` cyclic factors and `c` carrier generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Layout {
    m: usize,
    c: usize,
}

impl Layout {
    fn count(self) -> usize {
        self.m * self.c + self.m + self.m * self.m.saturating_sub(1) / 2
    }

    fn simple(self, i: usize, j: usize) -> usize {
        i * self.c + j
    }

    fn diag(self, i: usize) -> usize {
        self.m * self.c + i
    }

    fn cross(self, i: usize, k: usize) -> usize {
        debug_assert!(i < k);
        self.diag(self.m) + i * (2 * self.m - i - 1) / 2 + (k - i - 1)
    }
}

#[derive(Clone, Debug)]
pub struct TensorPresentation {
    g: FinAbGroup,
    param: FormParameter,
    layout: Layout,
    quotient: Quotient,
}

type CacheKey = (FinAbGroup, FormParameter);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<TensorPresentation>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<TensorPresentation>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `G ⊗_Z Q`, checked against the cyclic table and additivity.
pub fn present(g: &FinAbGroup, q: &FormParameter) -> Result<Arc<TensorPresentation>> {
    let key = (g.clone(), q.clone());
    if let Some(p) = cache().lock().expect("cache lock").get(&key) {
        return Ok(p.clone());
    }
    let pres = TensorPresentation::build(g, q);
    let expected = expected_group(g, q)?;
    if !pres.group().is_isomorphic(&expected) {
        return Err(Error::Internal(format!(
            "presentation of G ⊗ Q is {:?}, expected {:?}",
            pres.group().orders(),
            expected.orders()
        )));
    }
    let pres = Arc::new(pres);
    cache().lock().expect("cache lock").insert(key, pres.clone());
    Ok(pres)
}

impl TensorPresentation {
    fn build(g: &FinAbGroup, param: &FormParameter) -> TensorPresentation {
        let layout = Layout { m: g.ngens(), c: param.carrier().ngens() };
        let n = layout.count();
        let (m, c) = (layout.m, layout.c);
        let h = param.h_values();
        let p1 = param.p_one();
        let unit = |idx: usize, coeff: i64, col: &mut Vec<i64>| col[idx] += coeff;
        let mut rels: Vec<Vec<i64>> = Vec::new();
        for i in 0..m {
            for (j, &o) in param.carrier().orders().iter().enumerate() {
                if o != 0 {
                    let mut col = vec![0; n];
                    unit(layout.simple(i, j), o as i64, &mut col);
                    rels.push(col);
                }
            }
            // [gᵢ, gᵢ] ⊗ 1 = gᵢ ⊗ p(1)
            let mut col = vec![0; n];
            unit(layout.diag(i), 1, &mut col);
            for j in 0..c {
                unit(layout.simple(i, j), -p1[j], &mut col);
            }
            rels.push(col);
            let ord = g.orders()[i] as i64;
            if ord == 0 {
                continue;
            }
            // (nᵢgᵢ) ⊗ eⱼ = nᵢ(gᵢ ⊗ eⱼ) + C(nᵢ,2)[gᵢ,gᵢ] ⊗ h(eⱼ) = 0
            for j in 0..c {
                let mut col = vec![0; n];
                unit(layout.simple(i, j), ord, &mut col);
                unit(layout.diag(i), choose2(ord) * h[j], &mut col);
                rels.push(col);
            }
            let mut col = vec![0; n];
            unit(layout.diag(i), ord, &mut col);
            rels.push(col);
            for k in 0..m {
                if k != i {
                    let mut col = vec![0; n];
                    unit(layout.cross(i.min(k), i.max(k)), ord, &mut col);
                    rels.push(col);
                }
            }
        }
        let quotient = cokernel_presentation(&Matrix::from_cols(&rels, n), &FinAbGroup::free(n));
        TensorPresentation { g: g.clone(), param: param.clone(), layout, quotient }
    }

    pub fn g(&self) -> &FinAbGroup {
        &self.g
    }

    pub fn param(&self) -> &FormParameter {
        &self.param
    }

    /// The presented group, in canonical form.
    pub fn group(&self) -> &FinAbGroup {
        &self.quotient.group
    }

    pub fn abstract_count(&self) -> usize {
        self.layout.count()
    }

    pub fn simple_index(&self, i: usize, j: usize) -> usize {
        self.layout.simple(i, j)
    }

    pub fn diag_index(&self, i: usize) -> usize {
        self.layout.diag(i)
    }

    /// Index of `[gᵢ, gₖ] ⊗ 1` for `i < k`.
    pub fn cross_index(&self, i: usize, k: usize) -> usize {
        self.layout.cross(i, k)
    }

    /// Labels of the abstract generators, in index order.
    pub fn labels(&self) -> Vec<String> {
        let (m, c) = (self.g.ngens(), self.param.carrier().ngens());
        let mut out = Vec::with_capacity(self.abstract_count());
        for i in 0..m {
            for j in 0..c {
                out.push(format!("g{}⊗e{}", i + 1, j + 1));
            }
        }
        out.extend((0..m).map(|i| format!("[g{0},g{0}]⊗1", i + 1)));
        for i in 0..m {
            for k in i + 1..m {
                out.push(format!("[g{},g{}]⊗1", i + 1, k + 1));
            }
        }
        out
    }

    /// Coordinates of every abstract generator in the presented group.
    pub fn basis_map(&self) -> Vec<Element> {
        self.quotient.proj.images()
    }

    fn bracket_coords(&self, x: &[i64], y: &[i64], a: i64, out: &mut [i64]) {
        let eps = self.param.epsilon();
        for (i, &xi) in x.iter().enumerate() {
            for (k, &yk) in y.iter().enumerate() {
                let c = xi * yk * a;
                if c == 0 {
                    continue;
                }
                match i.cmp(&k) {
                    std::cmp::Ordering::Equal => out[self.diag_index(i)] += c,
                    std::cmp::Ordering::Less => out[self.cross_index(i, k)] += c,
                    std::cmp::Ordering::Greater => out[self.cross_index(k, i)] += eps * c,
                }
            }
        }
    }

    /// Expansion of a symbol over the abstract generators.
    pub fn symbol_coords(&self, s: &Symbol) -> Result<Vec<i64>> {
        let mut out = vec![0; self.abstract_count()];
        let m = self.g.ngens();
        match s {
            Symbol::Bracket { x, y, a } => {
                if x.len() != m || y.len() != m {
                    return Err(Error::Schema("bracket arguments must have one entry per generator of G".into()));
                }
                self.bracket_coords(x, y, *a, &mut out);
            }
            Symbol::Simple { x, q } => {
                if x.len() != m || q.len() != self.param.carrier().ngens() {
                    return Err(Error::Schema("simple symbol has the wrong number of coordinates".into()));
                }
                let hq = self.param.h_of(q);
                for (i, &a) in x.iter().enumerate() {
                    for (j, &qj) in q.iter().enumerate() {
                        out[self.simple_index(i, j)] += a * qj;
                    }
                    out[self.diag_index(i)] += choose2(a) * hq;
                    for k in i + 1..m {
                        if a * x[k] != 0 {
                            out[self.cross_index(i, k)] += a * x[k] * hq;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn reduce_symbol(&self, s: &Symbol) -> Result<Element> {
        Ok(self.quotient.proj.apply(&self.symbol_coords(s)?))
    }

    /// Class of a combination of abstract generators.
    pub fn reduce_abstract(&self, coords: &[i64]) -> Element {
        self.quotient.proj.apply(coords)
    }

    /// A combination of abstract generators representing `t`.
    pub fn lift(&self, t: &[i64]) -> Vec<i64> {
        self.quotient.lift_element(t).0
    }

    /// `t` written through the labels of its lift, e.g. `g1⊗e1 + 2·[g1,g1]⊗1`.
    pub fn describe(&self, t: &[i64]) -> String {
        let labels = self.labels();
        let terms: Vec<String> = self
            .lift(t)
            .iter()
            .zip(&labels)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, l)| match c {
                1 => l.clone(),
                -1 => format!("-{l}"),
                _ => format!("{c}·{l}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Homomorphism out of the presented group given by images of the abstract generators.
    pub(crate) fn hom_from_abstract(&self, target: &FinAbGroup, images: &[Vec<i64>]) -> Result<AbHom> {
        let a = Matrix::from_cols(images, target.ngens());
        AbHom::new(self.group().clone(), target.clone(), &a * &self.quotient.lift)
    }

    /// `G ⊗ Q_e → G ⊗_Z Q`, `gᵢ ⊗ eⱼ ↦ gᵢ ⊗ eⱼ`, on the raw ordinary tensor.
    pub fn carrier_inclusion(&self) -> Result<AbHom> {
        let raw = crate::abelian::tensor_raw(&self.g, self.param.carrier());
        let imgs: Vec<Element> = (0..raw.ngens()).map(|t| self.quotient.proj.image_of_generator(t)).collect();
        AbHom::from_images(raw, self.group().clone(), &imgs)
    }
}

/// `f ⊗ α: G ⊗_Z Q → H ⊗_Z Q′`.
pub fn induced_map(f: &AbHom, alpha: &FPMorphism) -> Result<AbHom> {
    let src = present(f.source(), alpha.source())?;
    let dst = present(f.target(), alpha.target())?;
    let m = f.source().ngens();
    let fg: Vec<Vec<i64>> = f.images().into_iter().map(|e| e.0).collect();
    let ae: Vec<Vec<i64>> = alpha.map().images().into_iter().map(|e| e.0).collect();
    let mut images = Vec::with_capacity(src.abstract_count());
    for x in &fg {
        for q in &ae {
            images.push(dst.symbol_coords(&Symbol::Simple { x: x.clone(), q: q.clone() })?);
        }
    }
    for x in &fg {
        images.push(dst.symbol_coords(&Symbol::Bracket { x: x.clone(), y: x.clone(), a: 1 })?);
    }
    for i in 0..m {
        for k in i + 1..m {
            images.push(dst.symbol_coords(&Symbol::Bracket { x: fg[i].clone(), y: fg[k].clone(), a: 1 })?);
        }
    }
    let images: Vec<Vec<i64>> = images.iter().map(|c| dst.quotient.proj.apply(c).0).collect();
    src.hom_from_abstract(dst.group(), &images)
}

fn standard(name: StandardName) -> FormParameter {
    FormParameter::standard(name).expect("standard parameters are valid")
}

/// `S²(G) = G ⊗ Q+`.
pub fn symmetric_square(g: &FinAbGroup) -> Result<Arc<TensorPresentation>> {
    present(g, &standard(StandardName::QPlus))
}

/// `Γ(G) = G ⊗ Q^+`.
pub fn gamma(g: &FinAbGroup) -> Result<Arc<TensorPresentation>> {
    present(g, &standard(StandardName::QHatPlus))
}

/// `Λ₁(G) = G ⊗ Q−`.
pub fn lambda_one(g: &FinAbGroup) -> Result<Arc<TensorPresentation>> {
    present(g, &standard(StandardName::QMinus))
}

/// `Λ(G) = G ⊗ Q^−`.
pub fn exterior(g: &FinAbGroup) -> Result<Arc<TensorPresentation>> {
    present(g, &standard(StandardName::QHatMinus))
}


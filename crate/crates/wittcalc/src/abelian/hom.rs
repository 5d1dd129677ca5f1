//! Homomorphisms between presented groups.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::group::{Element, FinAbGroup};

/// Column `j` of `matrix` is the image of source generator `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Matrix,
}

impl AbHom {
    /// Checks that every finite-order relation of the source maps to zero.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Schema(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for (j, &n) in source.orders().iter().enumerate() {
            let col: Vec<i64> = matrix.col(j).iter().map(|x| x * n as i64).collect();
            if !target.is_zero(&col) {
                return Err(Error::Validation(format!(
                    "hom not well defined: {n} times generator {j} does not vanish in {target}"
                )));
            }
        }
        let cols: Vec<Vec<i64>> = matrix.to_cols().iter().map(|c| target.reduce(c).0).collect();
        let matrix = Matrix::from_cols(&cols, target.ngens());
        Ok(AbHom { source, target, matrix })
    }

    /// For matrices known to be well defined.
    pub(crate) fn new_unchecked(source: FinAbGroup, target: FinAbGroup, matrix: Matrix) -> Self {
        Self::new(source, target, matrix).expect("internal hom is well defined")
    }

    pub fn from_images(source: FinAbGroup, target: FinAbGroup, images: &[Element]) -> Result<Self> {
        let cols: Vec<Vec<i64>> = images.iter().map(|e| e.0.clone()).collect();
        let m = Matrix::from_cols(&cols, target.ngens());
        Self::new(source, target, m)
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        AbHom { source: g.clone(), target: g.clone(), matrix: Matrix::identity(g.ngens()) }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Element {
        self.target.reduce(&self.matrix.apply(x))
    }

    pub fn image_of_generator(&self, j: usize) -> Element {
        Element(self.matrix.col(j))
    }

    pub fn images(&self) -> Vec<Element> {
        (0..self.source.ngens()).map(|j| self.image_of_generator(j)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbHom) -> Result<AbHom> {
        if other.target != self.source {
            return Err(Error::Validation(format!(
                "cannot compose: {} vs {}",
                other.target, self.source
            )));
        }
        AbHom::new(other.source.clone(), self.target.clone(), &self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        assert!(self.source == other.source && self.target == other.target);
        let cols: Vec<Vec<i64>> = self
            .matrix
            .to_cols()
            .iter()
            .zip(other.matrix.to_cols())
            .map(|(a, b)| a.iter().zip(&b).map(|(x, y)| x + y).collect())
            .collect();
        AbHom::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            Matrix::from_cols(&cols, self.target.ngens()),
        )
    }

    pub fn neg(&self) -> AbHom {
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(-1))
    }

    /// `self ⊕ other : A ⊕ C → B ⊕ D`.
    pub fn direct_sum(&self, other: &AbHom) -> AbHom {
        AbHom {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    /// `(self, other) : A → B ⊕ C`.
    pub fn pair(&self, other: &AbHom) -> AbHom {
        assert_eq!(self.source, other.source);
        AbHom {
            source: self.source.clone(),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.vstack(&other.matrix),
        }
    }

    /// `self + other : A ⊕ C → B`.
    pub fn copair(&self, other: &AbHom) -> AbHom {
        assert_eq!(self.target, other.target);
        AbHom {
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            matrix: self.matrix.hstack(&other.matrix),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images().iter().all(|c| self.target.is_zero(c))
    }

    pub fn equals(&self, other: &AbHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.images().iter().zip(other.images()).all(|(a, b)| self.target.eq_elem(a, &b))
    }

    /// Some `x` with `self(x) = y`.
    pub fn preimage(&self, y: &[i64]) -> Option<Element> {
        self.target
            .solve_in_span(&self.matrix, y)
            .map(|c| self.source.reduce(&c))
    }

    /// Generators of the kernel, as source elements.
    pub fn kernel_generators(&self) -> Vec<Element> {
        let rel = self.target.relations_among(&self.matrix);
        rel.to_cols()
            .iter()
            .map(|c| self.source.reduce(c))
            .filter(|e| !self.source.is_zero(e))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_generators().is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target.ngens()).all(|i| self.preimage(&self.target.generator(i)).is_some())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<AbHom> {
        if !self.is_isomorphism() {
            return Err(Error::Validation("homomorphism is not invertible".into()));
        }
        let imgs: Vec<Element> = (0..self.target.ngens())
            .map(|i| self.preimage(&self.target.generator(i)).expect("surjective"))
            .collect();
        AbHom::from_images(self.target.clone(), self.source.clone(), &imgs)
    }
}

//! Finitely generated abelian groups given as sums of cyclic factors.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::snf::{integer_kernel, snf};

/// `⊕ Z/nᵢ`, where `nᵢ = 0` is an infinite cyclic factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

/// Coordinates of an element with respect to the cyclic generators of its group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Element(pub Vec<i64>);

impl Deref for Element {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Element {
    fn from(v: Vec<i64>) -> Self {
        Element(v)
    }
}

impl Element {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        FinAbGroup { orders }
    }

    pub fn trivial() -> Self {
        FinAbGroup { orders: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        FinAbGroup { orders: vec![n] }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { orders: vec![0; rank] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic generators in this presentation.
    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|&&n| n == 0).count()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.orders.iter().filter(|&&n| n > 0).product()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// `Some(|G|)` for finite groups.
    pub fn cardinality(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&n| n == 1)
    }

    /// Invariant factors ascending (each ≥ 2, dividing the next), then free factors.
    pub fn is_canonical(&self) -> bool {
        let finite: Vec<u64> = self.orders.iter().copied().take_while(|&n| n != 0).collect();
        let rest_free = self.orders[finite.len()..].iter().all(|&n| n == 0);
        rest_free && finite.iter().all(|&n| n >= 2) && finite.windows(2).all(|w| w[1] % w[0] == 0)
    }

    pub fn canonical(&self) -> FinAbGroup {
        if self.is_canonical() {
            return self.clone();
        }
        super::cokernel_presentation(&Matrix::zeros(self.ngens(), 0), self).group
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FinAbGroup { orders }
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.ngens()])
    }

    /// The i-th cyclic generator.
    pub fn generator(&self, i: usize) -> Element {
        let mut v = vec![0; self.ngens()];
        v[i] = 1;
        self.reduce(&v)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    /// Reduces finite coordinates into `[0, n)`.
    pub fn reduce(&self, x: &[i64]) -> Element {
        assert_eq!(x.len(), self.ngens(), "element has wrong length for {self}");
        Element(
            x.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| if n == 0 { a } else { a.rem_euclid(n as i64) })
                .collect(),
        )
    }

    pub fn element(&self, x: &[i64]) -> Result<Element> {
        if x.len() != self.ngens() {
            return Err(Error::Schema(format!(
                "element {x:?} has {} coordinates, group {self} has {}",
                x.len(),
                self.ngens()
            )));
        }
        Ok(self.reduce(x))
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        self.reduce(x).iter().all(|&a| a == 0)
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Element {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Element {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, c: i64, x: &[i64]) -> Element {
        let s: Vec<i64> = x.iter().map(|a| c * a).collect();
        self.reduce(&s)
    }

    pub fn eq_elem(&self, x: &[i64], y: &[i64]) -> bool {
        self.reduce(x) == self.reduce(y)
    }

    /// `None` for elements of infinite order.
    pub fn order_of(&self, x: &[i64]) -> Option<u64> {
        let x = self.reduce(x);
        let mut ord = 1u64;
        for (&a, &n) in x.iter().zip(&self.orders) {
            if a == 0 {
                continue;
            }
            if n == 0 {
                return None;
            }
            let o = n / num_integer::gcd(n, a as u64);
            ord = num_integer::lcm(ord, o);
        }
        Some(ord)
    }

    /// Relation matrix `diag(nᵢ)` restricted to finite factors (one column per finite factor).
    pub fn relation_matrix(&self) -> Matrix {
        let cols: Vec<Vec<i64>> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(i, &n)| {
                let mut c = vec![0; self.ngens()];
                c[i] = n as i64;
                c
            })
            .collect();
        Matrix::from_cols(&cols, self.ngens())
    }

    /// All torsion elements, lexicographically ordered by reduced coordinates.
    pub fn torsion_elements(&self) -> Vec<Element> {
        let mut out = vec![vec![]];
        for &n in &self.orders {
            let range = if n == 0 { 1 } else { n as i64 };
            let mut next = Vec::with_capacity(out.len() * range as usize);
            for prefix in &out {
                for a in 0..range {
                    let mut v: Vec<i64> = prefix.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Element).collect()
    }

    /// Solves `gens · c = y` in this group, `gens` given as columns in this group's coordinates.
    pub fn solve_in_span(&self, gens: &Matrix, y: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(gens.rows(), self.ngens());
        let a = gens.hstack(&self.relation_matrix());
        let s = snf(&a);
        let z = s.u.apply(y);
        let diag = s.diagonal();
        let mut w = vec![0i64; a.cols()];
        for (i, &zi) in z.iter().enumerate() {
            let d = diag.get(i).copied().unwrap_or(0);
            if d == 0 {
                if zi != 0 {
                    return None;
                }
            } else {
                if zi % d != 0 {
                    return None;
                }
                w[i] = zi / d;
            }
        }
        let full = s.v.apply(&w);
        Some(full[..gens.cols()].to_vec())
    }

    pub fn in_span(&self, gens: &[Element], y: &[i64]) -> bool {
        self.solve_in_span(&self.gens_matrix(gens), y).is_some()
    }

    /// Generators as matrix columns.
    pub fn gens_matrix(&self, gens: &[Element]) -> Matrix {
        let cols: Vec<Vec<i64>> = gens.iter().map(|g| g.0.clone()).collect();
        Matrix::from_cols(&cols, self.ngens())
    }

    /// Integer relations among `gens`: columns `c` with `gens · c = 0` in this group.
    pub fn relations_among(&self, gens: &Matrix) -> Matrix {
        let a = gens.hstack(&self.relation_matrix());
        integer_kernel(&a).row_range(0, gens.cols())
    }

    /// Whether two lists generate the same subgroup.
    pub fn same_subgroup(&self, a: &[Element], b: &[Element]) -> bool {
        let ma = self.gens_matrix(a);
        let mb = self.gens_matrix(b);
        a.iter().all(|x| self.solve_in_span(&mb, x).is_some())
            && b.iter().all(|x| self.solve_in_span(&ma, x).is_some())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .orders
            .iter()
            .map(|&n| if n == 0 { "Z".to_string() } else { format!("Z{n}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

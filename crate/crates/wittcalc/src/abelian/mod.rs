//! Finitely generated abelian groups, homomorphisms, presentations and summand splittings.

mod group;
mod hom;
mod snf;
mod split;

pub use group::{Element, FinAbGroup};
pub use hom::AbHom;
pub use snf::{integer_kernel, snf, Snf};
pub use split::{
    complement_of_cyclic, is_internal_direct_sum, split_off_cyclic, split_off_free, CyclicSplit,
    split_off_hom_summand, Splitting,
};

use crate::matrix::Matrix;

/// A quotient `ambient / ⟨relations⟩` in canonical form.
///
/// `lift` has one column per generator of `group`, giving a preimage in `ambient`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinAbGroup,
    pub proj: AbHom,
    pub lift: Matrix,
}

impl Quotient {
    pub fn lift_element(&self, y: &[i64]) -> Element {
        self.proj.source().reduce(&self.lift.apply(y))
    }
}

/// The cokernel of the relation columns inside `ambient`, with its projection.
pub fn cokernel_presentation(relations: &Matrix, ambient: &FinAbGroup) -> Quotient {
    assert_eq!(relations.rows(), ambient.ngens(), "relation columns must live in the ambient group");
    let full = relations.hstack(&ambient.relation_matrix());
    let s = snf(&full);
    let diag = s.diagonal();
    let m = ambient.ngens();
    let mut orders = Vec::new();
    let mut rows = Vec::new();
    let mut lift_cols = Vec::new();
    for i in 0..m {
        let d = diag.get(i).copied().unwrap_or(0);
        if d == 1 {
            continue;
        }
        let (row, col) = normalise_factor(d, s.u.row(i), s.u_inv.col(i));
        orders.push(d as u64);
        rows.push(row);
        lift_cols.push(col);
    }
    let group = FinAbGroup::new(orders);
    debug_assert!(group.is_canonical() || group.ngens() == 0);
    let proj = AbHom::new_unchecked(ambient.clone(), group.clone(), Matrix::from_rows(&rows, m));
    let lift = Matrix::from_cols(&lift_cols, m);
    Quotient { group, proj, lift }
}

/// Rescales one cyclic factor by a unit so that the first non-zero projection entry divides the order
/// (or is positive, for a free factor). The lift column is rescaled by the inverse unit.
fn normalise_factor(d: i64, mut row: Vec<i64>, mut col: Vec<i64>) -> (Vec<i64>, Vec<i64>) {
    if d == 0 {
        if row.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            row.iter_mut().for_each(|x| *x = -*x);
            col.iter_mut().for_each(|x| *x = -*x);
        }
        return (row, col);
    }
    row.iter_mut().for_each(|x| *x = x.rem_euclid(d));
    let Some(&lead) = row.iter().find(|&&x| x != 0) else { return (row, col) };
    let g = num_integer::gcd(lead, d);
    let modulus = d / g;
    let base = mod_inverse(lead / g, modulus);
    let unit = (0..)
        .map(|k| base + k * modulus)
        .find(|&u| num_integer::gcd(u, d) == 1)
        .expect("a unit lift exists");
    let inv = mod_inverse(unit, d);
    row.iter_mut().for_each(|x| *x = (*x * unit).rem_euclid(d));
    col.iter_mut().for_each(|x| *x *= inv);
    (row, col)
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = num_integer::Integer::extended_gcd(&a.rem_euclid(m), &m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// A subgroup given by generators, presented canonically with its inclusion.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FinAbGroup,
    pub inclusion: AbHom,
}

impl Subgroup {
    /// Images of the canonical generators.
    pub fn generators(&self) -> Vec<Element> {
        self.inclusion.images()
    }
}

/// Presentation of `⟨gens⟩ ≤ ambient`.
pub fn subgroup_presentation(ambient: &FinAbGroup, gens: &[Element]) -> Subgroup {
    let s = ambient.gens_matrix(gens);
    let rel = ambient.relations_among(&s);
    let q = cokernel_presentation(&rel, &FinAbGroup::free(gens.len()));
    let incl = &s * &q.lift;
    Subgroup {
        group: q.group.clone(),
        inclusion: AbHom::new_unchecked(q.group, ambient.clone(), incl),
    }
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel(f: &AbHom) -> Subgroup {
    subgroup_presentation(f.source(), &f.kernel_generators())
}

/// Image of `f` as a subgroup of the target.
pub fn image(f: &AbHom) -> Subgroup {
    subgroup_presentation(f.target(), &f.images())
}

/// Cokernel of `f`.
pub fn cokernel(f: &AbHom) -> Quotient {
    cokernel_presentation(f.matrix(), f.target())
}

/// `G ⊗ H` on generators `gᵢ ⊗ hⱼ` (row-major in `i`), in canonical form.
pub fn tensor(g: &FinAbGroup, h: &FinAbGroup) -> FinAbGroup {
    tensor_raw(g, h).canonical()
}

/// `G ⊗ H` presented on the generators `gᵢ ⊗ hⱼ`, index `i * h.ngens() + j`.
pub fn tensor_raw(g: &FinAbGroup, h: &FinAbGroup) -> FinAbGroup {
    let mut orders = Vec::with_capacity(g.ngens() * h.ngens());
    for &a in g.orders() {
        for &b in h.orders() {
            orders.push(num_integer::gcd(a, b));
        }
    }
    FinAbGroup::new(orders)
}

/// `f ⊗ g` on raw tensor presentations.
pub fn tensor_hom(f: &AbHom, g: &AbHom) -> AbHom {
    let (ns, ms) = (f.source().ngens(), g.source().ngens());
    let (nt, mt) = (f.target().ngens(), g.target().ngens());
    let mut m = Matrix::zeros(nt * mt, ns * ms);
    for i in 0..ns {
        for j in 0..ms {
            for a in 0..nt {
                for b in 0..mt {
                    m[(a * mt + b, i * ms + j)] = f.matrix()[(a, i)] * g.matrix()[(b, j)];
                }
            }
        }
    }
    AbHom::new_unchecked(
        tensor_raw(f.source(), g.source()),
        tensor_raw(f.target(), g.target()),
        m,
    )
}

/// Exactness of `A --f--> B --g--> C` at `B`.
pub fn is_exact_at(f: &AbHom, g: &AbHom) -> bool {
    if f.target() != g.source() {
        return false;
    }
    let gf = match g.compose(f) {
        Ok(h) => h,
        Err(_) => return false,
    };
    if !gf.is_zero() {
        return false;
    }
    let imgs = f.images();
    g.kernel_generators().iter().all(|k| f.target().in_span(&imgs, k))
}

/// Exactness of `0 → A → B → C → 0`.
pub fn is_short_exact(f: &AbHom, g: &AbHom) -> bool {
    f.is_injective() && g.is_surjective() && is_exact_at(f, g)
}

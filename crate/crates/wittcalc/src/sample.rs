//! Seeded random form parameters, forms and tensor elements for property runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian::{AbHom, FinAbGroup};
use crate::formparam::{FPMorphism, FormParameter, StandardName};
use crate::matrix::Matrix;
use crate::qform::QForm;

/// A random automorphism of `g`: shears `eᵢ ↦ eᵢ + c·eⱼ` allowed by the orders, and sign flips.
pub fn random_automorphism<R: Rng>(rng: &mut R, g: &FinAbGroup, steps: usize) -> AbHom {
    let n = g.ngens();
    let orders = g.orders();
    let mut m = Matrix::identity(n);
    for _ in 0..steps {
        if n == 0 {
            break;
        }
        let i = rng.gen_range(0..n);
        if rng.gen_bool(0.2) {
            for r in 0..n {
                m[(r, i)] = -m[(r, i)];
            }
            continue;
        }
        let j = rng.gen_range(0..n);
        // eᵢ ↦ eᵢ + c·eⱼ is a homomorphism when oᵢ·eⱼ = 0.
        if i == j || (orders[i] != 0 && (orders[j] == 0 || !orders[i].is_multiple_of(orders[j]))) {
            continue;
        }
        let c = rng.gen_range(-2i64..=2);
        for r in 0..n {
            let v = m[(r, j)];
            m[(r, i)] += c * v;
        }
    }
    let cols: Vec<Vec<i64>> = m.to_cols().iter().map(|c| g.reduce(c).0).collect();
    AbHom::new(g.clone(), g.clone(), Matrix::from_cols(&cols, n)).expect("shears respect the orders")
}

/// A random unimodular `n × n` matrix.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Matrix {
    let free = FinAbGroup::free(n);
    random_automorphism(rng, &free, steps).matrix().clone()
}

/// `P` transported along a carrier automorphism, so it is isomorphic to `P` but rarely split.
pub fn disguise<R: Rng>(rng: &mut R, p: &FormParameter) -> FormParameter {
    let phi = random_automorphism(rng, p.carrier(), 6);
    let inv = phi.inverse().expect("automorphism");
    let h: Vec<i64> = inv.images().iter().map(|x| p.h_of(x)).collect();
    let p_one = phi.apply(p.p_one());
    let q = FormParameter::new(p.carrier().clone(), &h, &p_one).expect("transported axioms hold");
    debug_assert!(FPMorphism::new(p.clone(), q.clone(), phi.matrix().clone()).is_ok());
    q
}

/// A standard parameter plus a complement with free rank `≤ 2` and torsion order `≤ 16`,
/// transported along a random automorphism.
pub fn random_parameter<R: Rng>(rng: &mut R) -> FormParameter {
    let names = StandardName::all_up_to(3);
    let name = *names.choose(rng).expect("nonempty");
    let q = FormParameter::standard(name).expect("standard");
    let mut free = q.carrier().free_rank();
    let mut torsion = q.carrier().torsion_order();
    let mut extra = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let n = *[0u64, 2, 2, 3, 4, 6, 8].choose(rng).expect("nonempty");
        if n == 0 && free < 2 {
            free += 1;
            extra.push(0);
        } else if n != 0 && torsion * n <= 16 {
            torsion *= n;
            extra.push(n);
        }
    }
    disguise(rng, &q.split_sum(&FinAbGroup::new(extra)))
}

/// A random carrier element with small coefficients.
fn small_element<R: Rng>(rng: &mut R, p: &FormParameter) -> Vec<i64> {
    let g = p.carrier();
    g.reduce(&(0..g.ngens()).map(|_| rng.gen_range(-2i64..=2)).collect::<Vec<_>>()).0
}

/// A nonsingular rank-1 or rank-2 form, or `None` when rejection sampling fails.
fn random_block<R: Rng>(rng: &mut R, p: &FormParameter) -> Option<QForm> {
    let eps = p.epsilon();
    for _ in 0..64 {
        let rank = if eps == 1 && rng.gen_bool(0.4) { 1 } else { 2 };
        let mu: Vec<Vec<i64>> = (0..rank).map(|_| small_element(rng, p)).collect();
        let mut m = Matrix::zeros(rank, rank);
        for (i, x) in mu.iter().enumerate() {
            m[(i, i)] = p.h_of(x);
        }
        if rank == 2 {
            let off = rng.gen_range(-2i64..=2);
            m[(0, 1)] = off;
            m[(1, 0)] = eps * off;
        }
        if !m.is_unimodular() {
            continue;
        }
        if let Ok(f) = QForm::new(p.clone(), m, mu) {
            return Some(f);
        }
    }
    None
}

/// A random nonsingular form of rank in `1..=max_rank` (even rank when `ε = −1`).
pub fn random_form<R: Rng>(rng: &mut R, p: &FormParameter, max_rank: usize) -> QForm {
    let target = rng.gen_range(1..=max_rank.max(1));
    let mut f = QForm::zero(p);
    while f.rank() < target {
        let room = target - f.rank();
        let block = match random_block(rng, p) {
            Some(b) if b.rank() <= room || f.rank() == 0 => b,
            _ => QForm::hyperbolic(p, 1),
        };
        if f.rank() > 0 && block.rank() > room {
            break;
        }
        f = f.direct_sum(&block).expect("same parameter");
    }
    let b = random_unimodular(rng, f.rank(), 3 * f.rank());
    f.pullback(&b).expect("unimodular base change")
}

/// A random nonsingular form of rank `≤ max_rank` whose Gram entries off the diagonal lie in
/// `[−bound, bound]`, drawn directly without a base change; `None` when rejection sampling fails.
pub fn random_small_form<R: Rng>(rng: &mut R, p: &FormParameter, max_rank: usize, bound: i64) -> Option<QForm> {
    let eps = p.epsilon();
    for _ in 0..20_000 {
        let rank = if eps == 1 { rng.gen_range(1..=max_rank.max(1)) } else { 2 * rng.gen_range(1..=(max_rank / 2).max(1)) };
        let mu: Vec<Vec<i64>> = (0..rank).map(|_| small_element(rng, p)).collect();
        let mut m = Matrix::zeros(rank, rank);
        for (i, x) in mu.iter().enumerate() {
            m[(i, i)] = p.h_of(x);
            for j in i + 1..rank {
                let v = rng.gen_range(-bound..=bound);
                m[(i, j)] = v;
                m[(j, i)] = eps * v;
            }
        }
        if m.is_unimodular() {
            return QForm::new(p.clone(), m, mu).ok();
        }
    }
    None
}

/// A random element of a presented group with coefficients in `[−bound, bound]`.
pub fn random_coords<R: Rng>(rng: &mut R, g: &FinAbGroup, bound: i64) -> Vec<i64> {
    g.reduce(&(0..g.ngens()).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>()).0
}

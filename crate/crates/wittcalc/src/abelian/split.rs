//! Constructive direct-summand splittings.

use crate::error::{internal, validation, Error, Result};
use crate::matrix::Matrix;

use super::group::{Element, FinAbGroup};
use super::hom::AbHom;
use super::subgroup_presentation;

/// `group = ⟨summand_a⟩ ⊕ ⟨summand_b⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub group: FinAbGroup,
    pub summand_a: Vec<Element>,
    pub summand_b: Vec<Element>,
}

impl Splitting {
    /// The split-off element, for splittings with a cyclic first summand.
    pub fn generator(&self) -> &Element {
        &self.summand_a[0]
    }

    pub fn complement(&self) -> &[Element] {
        &self.summand_b
    }

    pub fn verify(&self) -> bool {
        is_internal_direct_sum(&self.group, &self.summand_a, &self.summand_b)
    }
}

/// Whether the summation map `⟨a⟩ ⊕ ⟨b⟩ → G` is an isomorphism.
pub fn is_internal_direct_sum(group: &FinAbGroup, a: &[Element], b: &[Element]) -> bool {
    let sa = subgroup_presentation(group, a);
    let sb = subgroup_presentation(group, b);
    sa.inclusion.copair(&sb.inclusion).is_isomorphism()
}

fn check_to_z2(g: &FinAbGroup, f: &AbHom) -> Result<()> {
    if f.source() != g || f.target().orders() != [2] {
        return Err(Error::Schema(format!("expected a homomorphism {g} -> Z2")));
    }
    Ok(())
}

/// Extended gcd of a list: `(d, c)` with `Σ cᵢ xᵢ = d = gcd(x)`.
fn ext_gcd_list(xs: &[i64]) -> (i64, Vec<i64>) {
    let mut d = 0i64;
    let mut coeffs = vec![0i64; xs.len()];
    for (i, &x) in xs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let e = num_integer::Integer::extended_gcd(&d, &x);
        for c in coeffs.iter_mut().take(i) {
            *c *= e.x;
        }
        coeffs[i] = e.y;
        d = e.gcd;
    }
    if d < 0 {
        d = -d;
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    (d, coeffs)
}

/// A retraction `r: G → Z/m` (`m = 0` for `Z`) with `r(c) = 1`, where `m` is the order of `c`.
///
/// With `parity = Some(f)` the retraction is additionally required to reduce to `f` mod 2.
fn retraction(g: &FinAbGroup, c: &[i64], parity: Option<&[i64]>) -> Option<AbHom> {
    let m = g.order_of(c).unwrap_or(0);
    let n = g.ngens();
    // Admissible images of generator i are the multiples of step[i].
    let step: Vec<i64> = g
        .orders()
        .iter()
        .map(|&ni| match (m, ni) {
            (0, 0) => 1,
            (0, _) => 0,
            _ => (m / num_integer::gcd(m, ni)) as i64,
        })
        .collect();
    let target = FinAbGroup::cyclic(m);
    let t = match parity {
        None => {
            let prods: Vec<i64> = (0..n).map(|i| c[i] * step[i]).collect();
            let (d, coeffs) = ext_gcd_list(&prods);
            let ok = if m == 0 { d == 1 } else { num_integer::gcd(d as u64, m) == 1 };
            if !ok {
                return None;
            }
            if m == 0 {
                coeffs
            } else {
                // Σ coeffs·prods = d; scale by d⁻¹ mod m.
                let inv = mod_inverse(d, m as i64)?;
                coeffs.iter().map(|x| x * inv).collect()
            }
        }
        Some(f) => {
            // Solve Σ tᵢ·stepᵢ·cᵢ ≡ 1 (mod m) and tᵢ·stepᵢ ≡ fᵢ (mod 2) together.
            let ambient = FinAbGroup::cyclic(m).direct_sum(&FinAbGroup::new(vec![2; n]));
            let cols: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    let mut col = vec![0; n + 1];
                    col[0] = c[i] * step[i];
                    col[i + 1] = step[i];
                    col
                })
                .collect();
            let mut rhs = vec![1];
            rhs.extend_from_slice(f);
            ambient.solve_in_span(&Matrix::from_cols(&cols, n + 1), &rhs)?
        }
    };
    let row: Vec<i64> = (0..n).map(|i| t[i] * step[i]).collect();
    AbHom::new(g.clone(), target, Matrix::from_rows(&[row], n)).ok()
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = num_integer::Integer::extended_gcd(&a.rem_euclid(m), &m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// A complement of `⟨c⟩` when it is a direct summand.
pub fn complement_of_cyclic(g: &FinAbGroup, c: &[i64]) -> Result<Vec<Element>> {
    if g.is_zero(c) {
        return Ok(subgroup_presentation(g, &g.generators()).generators());
    }
    match retraction(g, c, None) {
        Some(r) => Ok(super::kernel(&r).generators()),
        None => validation(format!("{c:?} does not generate a direct summand of {g}")),
    }
}

/// Splits off a torsion element `g` with `f(g) = 1` of minimal order, and a complement inside `Ker f`.
pub fn split_off_hom_summand(group: &FinAbGroup, f: &AbHom) -> Result<Splitting> {
    check_to_z2(group, f)?;
    let mut best: Option<(u64, Element)> = None;
    for x in group.torsion_elements() {
        if f.apply(&x)[0] != 1 {
            continue;
        }
        let o = group.order_of(&x).expect("torsion element");
        if best.as_ref().is_none_or(|(bo, _)| o < *bo) {
            best = Some((o, x));
        }
    }
    let Some((_, g)) = best else {
        return validation("homomorphism vanishes on the torsion subgroup");
    };
    let f_row = f.matrix().row(0);
    let Some(r) = retraction(group, &g, Some(&f_row)) else {
        return internal(format!("no retraction onto {g:?} compatible with the homomorphism"));
    };
    let h = super::kernel(&r).generators();
    let s = Splitting { group: group.clone(), summand_a: vec![g], summand_b: h };
    debug_assert!(s.summand_b.iter().all(|x| f.apply(x)[0] == 0));
    if !s.verify() {
        return internal("split_off_hom_summand produced a non-direct sum");
    }
    Ok(s)
}

/// Splits a free group along a non-zero homomorphism to `Z₂`.
pub fn split_off_free(group: &FinAbGroup, f: &AbHom) -> Result<Splitting> {
    check_to_z2(group, f)?;
    if group.free_rank() != group.ngens() {
        return validation(format!("{group} is not free"));
    }
    let vals: Vec<i64> = f.matrix().row(0);
    let Some(first) = vals.iter().position(|&x| x == 1) else {
        return validation("homomorphism is zero");
    };
    let g = group.generator(first);
    let h = (0..group.ngens())
        .filter(|&i| i != first)
        .map(|i| {
            let e = group.generator(i);
            if vals[i] == 1 {
                group.add(&e, &g)
            } else {
                e
            }
        })
        .collect();
    Ok(Splitting { group: group.clone(), summand_a: vec![g], summand_b: h })
}

/// Result of splitting off the maximal root of an element of prime order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSplit {
    /// The prime order of the input element.
    pub prime: u64,
    /// Maximal `a` with `g = p^a·x` solvable.
    pub exponent: u32,
    /// `x` with `g = p^a·x`; `⟨x⟩` is a direct summand.
    pub root: Element,
    pub complement: Vec<Element>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Writes `g = p^a·x` with `a` maximal and returns `x` with a complement of `⟨x⟩`.
pub fn split_off_cyclic(group: &FinAbGroup, g: &[i64]) -> Result<CyclicSplit> {
    let g = group.element(g)?;
    let p = match group.order_of(&g) {
        Some(p) if is_prime(p) => p,
        Some(o) => return validation(format!("element {g:?} has order {o}, which is not prime")),
        None => return validation(format!("element {g:?} has infinite order")),
    };
    let n = group.ngens();
    let mut a = 0u32;
    let mut power = p as i64;
    let exponent = group.orders().iter().filter(|&&o| o > 0).fold(1u64, |acc, &o| num_integer::lcm(acc, o));
    while (power as u64) <= exponent {
        let scaled = Matrix::identity(n).scale(power);
        if group.solve_in_span(&scaled, &g).is_none() {
            break;
        }
        a += 1;
        power *= p as i64;
    }
    let pa = (p as i64).pow(a);
    let root = group
        .torsion_elements()
        .into_iter()
        .find(|x| group.eq_elem(&group.scale(pa, x), &g))
        .ok_or_else(|| Error::Internal("divisibility witness not found".into()))?;
    let complement = complement_of_cyclic(group, &root)?;
    let split = Splitting { group: group.clone(), summand_a: vec![root.clone()], summand_b: complement.clone() };
    if !split.verify() {
        return internal("split_off_cyclic produced a non-direct sum");
    }
    Ok(CyclicSplit { prime: p, exponent: a, root, complement })
}

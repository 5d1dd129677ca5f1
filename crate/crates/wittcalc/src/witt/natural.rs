//! The natural models `Σ(v) ≤ Z ⊕ Γ(A)` and `Λ(v′) = (Z₂ ⊕ Λ₁(A))/K(v′)` of Witt groups.

use std::sync::Arc;

use crate::abelian::{cokernel, cokernel_presentation, kernel, subgroup_presentation, tensor_hom, tensor_raw};
use crate::abelian::{AbHom, Element, FinAbGroup, Quotient, Subgroup};
use crate::error::{validation, Error, Result};
use crate::formparam::{eql, es, CosliceHom, FPMorphism, FormParameter, QuasiWu, SliceHom, StandardName, Symmetry};
use crate::matrix::Matrix;
use crate::qform::{signature, QForm};
use crate::qtensor::{gamma, induced_map, lambda_one, Symbol, TensorPresentation};

use super::class::{indec_generator_forms, standard, witt_class, witt_group, WittClass};
use super::tensor_part::{f_invariant, gamma_form};

fn with_head(head: u64, g: &FinAbGroup) -> FinAbGroup {
    FinAbGroup::new(std::iter::once(head).chain(g.orders().iter().copied()).collect())
}

fn prepend(head: i64, x: &[i64]) -> Element {
    Element(std::iter::once(head).chain(x.iter().copied()).collect())
}

fn simple(pres: &TensorPresentation, x: &[i64]) -> Result<Element> {
    let q = vec![1; pres.param().carrier().ngens()];
    pres.reduce_symbol(&Symbol::Simple { x: x.to_vec(), q })
}

fn bracket(pres: &TensorPresentation, x: &[i64], y: &[i64]) -> Result<Element> {
    pres.reduce_symbol(&Symbol::Bracket { x: x.to_vec(), y: y.to_vec(), a: 1 })
}

/// `Σ(v)` by finitely many generators, with its presentation.
#[derive(Clone, Debug)]
pub struct SigmaSubgroup {
    /// `Z ⊕ Γ(A)`.
    pub ambient: FinAbGroup,
    pub gamma: Arc<TensorPresentation>,
    pub generators: Vec<Element>,
    pub subgroup: Subgroup,
}

impl SigmaSubgroup {
    pub fn contains(&self, y: &[i64]) -> bool {
        self.ambient.in_span(&self.generators, y)
    }

    pub fn group(&self) -> FinAbGroup {
        self.subgroup.group.canonical()
    }
}

/// Pieces shared by `Σ(v)` and its diagram.
struct SliceData {
    gamma: Arc<TensorPresentation>,
    /// `v(x₀) = 1`, when `v ≠ 0`.
    x0: Option<Element>,
    /// Generators of `Ψ(v)`.
    psi: Vec<Element>,
}

fn slice_data(v: &SliceHom) -> Result<SliceData> {
    let a = &v.domain;
    let gam = gamma(a)?;
    let ker = v.v.kernel_generators();
    let x0 = a.generators().into_iter().find(|x| v.v.apply(x)[0] == 1);
    let mut psi = Vec::new();
    for (i, k1) in ker.iter().enumerate() {
        for k2 in &ker[i..] {
            psi.push(bracket(&gam, k1, k2)?);
        }
    }
    if let Some(x) = &x0 {
        for k in &ker {
            let t = gam.group().add(&bracket(&gam, k, x)?, &simple(&gam, k)?);
            psi.push(t);
        }
    }
    Ok(SliceData { gamma: gam, x0, psi })
}

/// `Σ(v) = ⟨(1, x⊗1), (0, [k₁,k₂]⊗1), (8, 0)⟩` with `v(x) = 1` and `kᵢ ∈ Ker(v)`.
///
/// For `v = 0` the generators are `(8,0)` and brackets of kernel generators; otherwise `(1, x₀⊗1)`,
/// `(1, (x₀+k)⊗1)` over kernel generators `k`, and brackets of kernel generators.
pub fn sigma_subgroup(v: &SliceHom) -> Result<SigmaSubgroup> {
    let gam = gamma(&v.domain)?;
    let ambient = with_head(0, gam.group());
    let ker = v.v.kernel_generators();
    let mut generators = Vec::new();
    for (i, k1) in ker.iter().enumerate() {
        for k2 in &ker[i..] {
            generators.push(prepend(0, &bracket(&gam, k1, k2)?));
        }
    }
    match v.domain.generators().into_iter().find(|x| v.v.apply(x)[0] == 1) {
        None => generators.push(prepend(8, &gam.group().zero())),
        Some(x0) => {
            generators.push(prepend(1, &simple(&gam, &x0)?));
            for k in &ker {
                let x: Vec<i64> = x0.iter().zip(k.iter()).map(|(a, b)| a + b).collect();
                generators.push(prepend(1, &simple(&gam, &x)?));
            }
        }
    }
    let subgroup = subgroup_presentation(&ambient, &generators);
    Ok(SigmaSubgroup { ambient, gamma: gam, generators, subgroup })
}

/// `K(v′)` and `Λ(v′) = (Z₂ ⊕ Λ₁(A))/K(v′)`.
#[derive(Clone, Debug)]
pub struct LambdaQuotient {
    /// `Z₂ ⊕ Λ₁(A)`.
    pub ambient: FinAbGroup,
    pub lambda_one: Arc<TensorPresentation>,
    pub k_generators: Vec<Element>,
    pub k: Subgroup,
    pub quotient: Quotient,
}

impl LambdaQuotient {
    pub fn group(&self) -> &FinAbGroup {
        &self.quotient.group
    }
}

/// Generators `x ∧⊗ (x + v′(1))` of `L(v′)` over the cyclic generators `x` of `A`.
fn l_generators(lam: &TensorPresentation, v: &CosliceHom) -> Result<Vec<Element>> {
    v.codomain
        .generators()
        .iter()
        .map(|x| {
            let y: Vec<i64> = x.iter().zip(v.v_one.iter()).map(|(a, b)| a + b).collect();
            bracket(lam, x, &y)
        })
        .collect()
}

/// `K(v′) = ⟨(1, v′(1) ∧⊗ v′(1)), (0, x ∧⊗ x + x ∧⊗ v′(1))⟩`.
pub fn lambda_quotient(v: &CosliceHom) -> Result<LambdaQuotient> {
    let lam = lambda_one(&v.codomain)?;
    let ambient = with_head(2, lam.group());
    let mut k_generators = vec![prepend(1, &bracket(&lam, &v.v_one, &v.v_one)?)];
    k_generators.extend(l_generators(&lam, v)?.iter().map(|l| prepend(0, l)));
    let k = subgroup_presentation(&ambient, &k_generators);
    let quotient = cokernel_presentation(&ambient.gens_matrix(&k_generators), &ambient);
    Ok(LambdaQuotient { ambient, lambda_one: lam, k_generators, k, quotient })
}

fn slice_of(p: &FormParameter) -> Result<SliceHom> {
    match p.quasi_wu() {
        QuasiWu::Slice(v) => Ok(v),
        QuasiWu::Coslice(_) => validation("expected a symmetric parameter"),
    }
}

fn coslice_of(p: &FormParameter) -> Result<CosliceHom> {
    match p.quasi_wu() {
        QuasiWu::Coslice(v) => Ok(v),
        QuasiWu::Slice(_) => validation("expected an anti-symmetric parameter"),
    }
}

/// `W₀(es)(f) = (σ(f), F(es_*f)) ∈ Z ⊕ Γ(SP)`.
pub fn es_witt(f: &QForm) -> Result<Element> {
    let p = f.param();
    if p.symmetry() != Symmetry::Symmetric {
        return validation("es_witt needs a symmetric parameter");
    }
    let s = p.linearisation().group;
    let g = f.pushforward(&es(p)?)?;
    let t = f_invariant(&g, &standard(StandardName::QHatPlus), &s)?;
    Ok(prepend(signature(f)?, &t))
}

/// `W₀(eql)(a, t)`: the class of `eql_*(a·c* ⊕ γ(t))` for `(a, t) ∈ Z₂ ⊕ Λ₁(P_e)`.
pub fn eql_witt(p: &FormParameter, t: &[i64]) -> Result<WittClass> {
    if p.symmetry() != Symmetry::AntiSymmetric {
        return validation("eql_witt needs an anti-symmetric parameter");
    }
    let lam = lambda_one(p.carrier())?;
    if t.len() != 1 + lam.group().ngens() {
        return Err(Error::Schema(format!("expected {} coordinates in Z₂ ⊕ Λ₁(P_e)", 1 + lam.group().ngens())));
    }
    let qm = standard(StandardName::QMinus);
    let mut form = gamma_form(&t[1..], &qm, p.carrier())?;
    if t[0].rem_euclid(2) == 1 {
        let c = &indec_generator_forms(StandardName::QMinus)[0];
        let n = p.carrier().ngens();
        let mu = c.mu_basis().iter().map(|m| std::iter::once(m[0]).chain(std::iter::repeat_n(0, n)).collect()).collect();
        let c = QForm::new(qm.split_sum(p.carrier()), c.lambda().clone(), mu)?;
        form = c.direct_sum(&form)?;
    }
    witt_class(&form.pushforward(&eql(p)?)?)
}

/// `W₀(es)` on `witt_group(P)` coordinates.
pub fn es_hom(p: &FormParameter) -> Result<AbHom> {
    let d = witt_group(p)?;
    let gam = gamma(&p.linearisation().group)?;
    let target = with_head(0, gam.group());
    let imgs = d.generator_forms()?.iter().map(es_witt).collect::<Result<Vec<_>>>()?;
    AbHom::from_images(d.group.clone(), target, &imgs)
}

/// `W₀(eql): Z₂ ⊕ Λ₁(P_e) → W₀(P)` in `witt_group` coordinates.
pub fn eql_hom(p: &FormParameter) -> Result<AbHom> {
    let d = witt_group(p)?;
    let lam = lambda_one(p.carrier())?;
    let source = with_head(2, lam.group());
    let imgs = source
        .generators()
        .iter()
        .map(|t| Ok(Element(eql_witt(p, t)?.coords())))
        .collect::<Result<Vec<_>>>()?;
    AbHom::from_images(source, d.group.clone(), &imgs)
}

/// `W₀(α)` through the natural description: `Id ⊕ Γ(Sα)` restricted to `Σ(v)` (symmetric) or the
/// map of `Λ(v′)` induced by `Id ⊕ Λ₁(α)` (anti-symmetric), in `witt_group` coordinates.
pub fn induced_witt_map(alpha: &FPMorphism) -> Result<AbHom> {
    let (p1, p2) = (alpha.source(), alpha.target());
    let d1 = witt_group(p1)?;
    let d2 = witt_group(p2)?;
    let cols: Vec<Vec<i64>> = match p1.symmetry() {
        Symmetry::Symmetric => {
            let (e1, e2) = (es_hom(p1)?, es_hom(p2)?);
            let gam = induced_map(&alpha.s_map(), &FPMorphism::identity(&standard(StandardName::QHatPlus)))?;
            let t = AbHom::identity(&FinAbGroup::free(1)).direct_sum(&gam);
            e1.images()
                .iter()
                .map(|y| {
                    e2.preimage(&t.apply(y))
                        .map(|x| x.0)
                        .ok_or_else(|| Error::Internal("image leaves Σ(v) of the target".into()))
                })
                .collect::<Result<_>>()?
        }
        Symmetry::AntiSymmetric => {
            let (l1, l2) = (eql_hom(p1)?, eql_hom(p2)?);
            let lam = induced_map(alpha.map(), &FPMorphism::identity(&standard(StandardName::QMinus)))?;
            let t = AbHom::identity(&FinAbGroup::cyclic(2)).direct_sum(&lam);
            d1.group
                .generators()
                .iter()
                .map(|g| {
                    let z = l1.preimage(g).ok_or_else(|| Error::Internal("W₀(eql) is not surjective".into()))?;
                    Ok(l2.apply(&t.apply(&z)).0)
                })
                .collect::<Result<_>>()?
        }
    };
    AbHom::new(d1.group.clone(), d2.group.clone(), Matrix::from_cols(&cols, d2.group.ngens()))
}

/// `Σ(v_P)` and `Im W₀(es)` agree, and `Σ(v_P) ≅ W₀(P)`.
pub fn check_sigma_image(p: &FormParameter) -> Result<Vec<String>> {
    let sigma = sigma_subgroup(&slice_of(p)?)?;
    let e = es_hom(p)?;
    let mut failures = Vec::new();
    if !e.is_injective() {
        failures.push("W₀(es) is not injective".into());
    }
    if !sigma.ambient.same_subgroup(&e.images(), &sigma.generators) {
        failures.push("Im W₀(es) differs from Σ(v_P)".into());
    }
    if !sigma.group().is_isomorphic(&witt_group(p)?.canonical) {
        failures.push("Σ(v_P) is not isomorphic to W₀(P)".into());
    }
    Ok(failures)
}

/// `Ker W₀(eql)` and `K(v′_P)` agree, and `Λ(v′_P) ≅ W₀(P)`.
pub fn check_lambda_kernel(p: &FormParameter) -> Result<Vec<String>> {
    let lq = lambda_quotient(&coslice_of(p)?)?;
    let e = eql_hom(p)?;
    let mut failures = Vec::new();
    if !e.is_surjective() {
        failures.push("W₀(eql) is not surjective".into());
    }
    if !lq.ambient.same_subgroup(&e.kernel_generators(), &lq.k_generators) {
        failures.push("Ker W₀(eql) differs from K(v′_P)".into());
    }
    if !lq.group().is_isomorphic(&witt_group(p)?.canonical) {
        failures.push("Λ(v′_P) is not isomorphic to W₀(P)".into());
    }
    Ok(failures)
}

/// Named groups of a diagram and the checks that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub groups: Vec<(String, Vec<u64>)>,
    pub failures: Vec<String>,
}

impl DiagramReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn group(&self, name: &str) -> Option<&[u64]> {
        self.groups.iter().find(|(n, _)| n == name).map(|(_, g)| g.as_slice())
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: &str) {
    if !ok {
        failures.push(what.to_string());
    }
}

fn into_sub(sub: &Subgroup, y: &[i64]) -> Result<Element> {
    sub.inclusion.preimage(y).ok_or_else(|| Error::Internal("element outside the expected subgroup".into()))
}

/// Whether some element of order 2 has `v = 1`, i.e. `v ≅ 1₁ ⊕ G`.
pub fn has_order_two_section(v: &SliceHom) -> bool {
    let a = &v.domain;
    let even: Vec<usize> = (0..a.ngens()).filter(|&i| a.orders()[i] != 0 && a.orders()[i].is_multiple_of(2)).collect();
    (1u64..1 << even.len()).any(|mask| {
        let mut x = vec![0; a.ngens()];
        for (b, &i) in even.iter().enumerate() {
            if mask >> b & 1 == 1 {
                x[i] = (a.orders()[i] / 2) as i64;
            }
        }
        v.v.apply(&x)[0] == 1
    })
}

/// The diagram with rows `Σ(v) → Z⊕Φ(v) → C(v)`, `Σ(v) → Z⊕Γ(A) → Υ(v)` and columns ending in
/// `Ker(v₂)`; every row and column is checked for exactness and every square for commutativity.
pub fn sigma_diagram(v: &SliceHom) -> Result<DiagramReport> {
    let a = &v.domain;
    let SliceData { gamma: gam, x0, psi } = slice_data(v)?;
    let gg = gam.group().clone();
    let z = FinAbGroup::free(1);
    let mut phi = psi.clone();
    if let Some(x) = &x0 {
        phi.push(simple(&gam, x)?);
    }
    let phi_sub = subgroup_presentation(&gg, &phi);
    let psi_sub = subgroup_presentation(&gg, &psi);
    let psi_in_phi = psi.iter().map(|y| into_sub(&phi_sub, y)).collect::<Result<Vec<_>>>()?;
    let gamma_mod_psi = cokernel_presentation(&gg.gens_matrix(&psi), &gg);

    // C(v), ι: Z → C(v), q: Φ(v) → C(v), the inclusion C(v) → Υ(v), q̄ and ι into Υ(v).
    let (c_group, iota_c, q_phi, c_to_upsilon, q_bar, iota_u);
    match &x0 {
        None => {
            let z8 = FinAbGroup::cyclic(8);
            let upsilon = z8.direct_sum(&gamma_mod_psi.group);
            c_group = z8.clone();
            iota_c = AbHom::new(z.clone(), z8.clone(), Matrix::from_rows(&[vec![1]], 1))?;
            q_phi = AbHom::zero(&phi_sub.group, &z8);
            c_to_upsilon = AbHom::from_images(z8.clone(), upsilon.clone(), &[upsilon.generator(0)])?;
            q_bar = AbHom::zero(&gg, &z8).pair(&gamma_mod_psi.proj);
            iota_u = AbHom::from_images(z.clone(), upsilon.clone(), &[upsilon.generator(0)])?;
        }
        Some(x) => {
            let rel = phi_sub.group.gens_matrix(&psi_in_phi);
            let cq = cokernel_presentation(&rel, &phi_sub.group);
            let x_phi = into_sub(&phi_sub, &simple(&gam, x)?)?;
            c_group = cq.group.clone();
            iota_c = AbHom::from_images(z.clone(), c_group.clone(), &[cq.proj.apply(&x_phi)])?;
            q_phi = cq.proj.clone();
            let imgs: Vec<Element> = cq
                .lift
                .to_cols()
                .iter()
                .map(|c| gamma_mod_psi.proj.apply(&phi_sub.inclusion.apply(c)))
                .collect();
            c_to_upsilon = AbHom::from_images(c_group.clone(), gamma_mod_psi.group.clone(), &imgs)?;
            q_bar = gamma_mod_psi.proj.clone();
            iota_u = AbHom::from_images(z.clone(), gamma_mod_psi.group.clone(), &[gamma_mod_psi.proj.apply(&simple(&gam, x)?)])?;
        }
    }
    let upsilon = q_bar.target().clone();

    // u_v: Γ(A) → A ⊗ Z₂ and Ker(v₂).
    let z2 = FinAbGroup::cyclic(2);
    let a2 = tensor_raw(a, &z2);
    let vals: Vec<i64> = a.generators().iter().map(|g| v.v.apply(g)[0]).collect();
    let m = a.ngens();
    let mut u_images = vec![vec![0; a2.ngens()]; gam.abstract_count()];
    for i in 0..m {
        u_images[gam.simple_index(i, 0)][i] = (1 + vals[i]) % 2;
        for k in i + 1..m {
            let col = &mut u_images[gam.cross_index(i, k)];
            col[i] += vals[k];
            col[k] += vals[i];
        }
    }
    let u_raw = gam.hom_from_abstract(&a2, &u_images)?;
    let v2 = tensor_hom(&v.v, &AbHom::identity(&z2));
    let ker_v2 = kernel(&v2);
    let u_imgs = u_raw.images().iter().map(|y| into_sub(&ker_v2, y)).collect::<Result<Vec<_>>>()?;
    let u = AbHom::from_images(gg.clone(), ker_v2.group.clone(), &u_imgs)?;
    let u_tilde_imgs: Vec<Element> = match &x0 {
        None => std::iter::once(ker_v2.group.zero())
            .chain(gamma_mod_psi.lift.to_cols().iter().map(|c| u.apply(c)))
            .collect(),
        Some(_) => gamma_mod_psi.lift.to_cols().iter().map(|c| u.apply(c)).collect(),
    };
    let u_tilde = AbHom::from_images(upsilon.clone(), ker_v2.group.clone(), &u_tilde_imgs)?;

    // Σ(v) inside Z ⊕ Γ(A) and inside Z ⊕ Φ(v).
    let sigma = sigma_subgroup(v)?;
    let sigma_incl = sigma.subgroup.inclusion.clone();
    let z_phi = z.direct_sum(&phi_sub.group);
    let sigma_phi_imgs = sigma_incl
        .images()
        .iter()
        .map(|y| Ok(prepend(y[0], &into_sub(&phi_sub, &y[1..])?)))
        .collect::<Result<Vec<_>>>()?;
    let sigma_to_zphi = AbHom::from_images(sigma.subgroup.group.clone(), z_phi.clone(), &sigma_phi_imgs)?;
    let top = iota_c.copair(&q_phi.neg());
    let middle = iota_u.copair(&q_bar.neg());
    let j = AbHom::identity(&z).direct_sum(&phi_sub.inclusion);
    let column = AbHom::zero(&z, &ker_v2.group).copair(&u);

    let mut failures = Vec::new();
    check(&mut failures, is_short_exact_pair(&sigma_to_zphi, &top), "0 → Σ(v) → Z⊕Φ(v) → C(v) → 0 is not exact");
    check(&mut failures, is_short_exact_pair(&sigma_incl, &middle), "0 → Σ(v) → Z⊕Γ(A) → Υ(v) → 0 is not exact");
    check(&mut failures, is_short_exact_pair(&j, &column), "0 → Z⊕Φ(v) → Z⊕Γ(A) → Ker(v₂) → 0 is not exact");
    check(&mut failures, is_short_exact_pair(&c_to_upsilon, &u_tilde), "0 → C(v) → Υ(v) → Ker(v₂) → 0 is not exact");
    check(&mut failures, j.compose(&sigma_to_zphi)?.equals(&sigma_incl), "left square does not commute");
    check(&mut failures, c_to_upsilon.compose(&top)?.equals(&middle.compose(&j)?), "upper right square does not commute");
    check(&mut failures, u_tilde.compose(&middle)?.equals(&column), "lower square does not commute");
    let cyclic_order = c_group.canonical().orders().to_vec();
    let expected = if has_order_two_section(v) { vec![4] } else { vec![8] };
    check(&mut failures, cyclic_order == expected, "C(v) has the wrong order");
    check(&mut failures, iota_c.is_surjective(), "C(v) is not generated by the class of x⊗1");

    let groups = vec![
        ("Σ(v)".to_string(), sigma.group().orders().to_vec()),
        ("Φ(v)".to_string(), phi_sub.group.orders().to_vec()),
        ("Ψ(v)".to_string(), psi_sub.group.orders().to_vec()),
        ("C(v)".to_string(), cyclic_order),
        ("Υ(v)".to_string(), upsilon.canonical().orders().to_vec()),
        ("Ker(v₂)".to_string(), ker_v2.group.orders().to_vec()),
    ];
    Ok(DiagramReport { groups, failures })
}

fn is_short_exact_pair(f: &AbHom, g: &AbHom) -> bool {
    crate::abelian::is_short_exact(f, g)
}

/// The diagram with column `Coker(v′₂) → K(v′) → Z₂`, rows `K(v′) → Z₂⊕Λ₁(A) → Λ(v′)` and
/// `Z₂ → Z₂⊕Ξ(v′) → Λ(v′)`; every row and column is checked for exactness and every square for
/// commutativity.
pub fn lambda_diagram(v: &CosliceHom) -> Result<DiagramReport> {
    let a = &v.codomain;
    let lq = lambda_quotient(v)?;
    let lam = lq.lambda_one.clone();
    let l1 = lam.group().clone();
    let z2 = FinAbGroup::cyclic(2);
    let l_gens = l_generators(&lam, v)?;
    let l_sub = subgroup_presentation(&l1, &l_gens);
    let xi = cokernel_presentation(&l1.gens_matrix(&l_gens), &l1);

    let a2 = tensor_raw(a, &z2);
    let v2 = AbHom::from_images(z2.clone(), a2.clone(), &[a2.reduce(&v.v_one)])?;
    let coker = cokernel(&v2);
    let u_raw_imgs = l_gens.iter().map(|l| into_sub(&lq.k, &prepend(0, l))).collect::<Result<Vec<_>>>()?;
    let u_raw = AbHom::from_images(a2.clone(), lq.k.group.clone(), &u_raw_imgs)?;
    let u_imgs: Vec<Element> = coker.lift.to_cols().iter().map(|c| u_raw.apply(c)).collect();
    let u = AbHom::from_images(coker.group.clone(), lq.k.group.clone(), &u_imgs)?;

    let mut head = vec![0; lq.ambient.ngens()];
    head[0] = 1;
    let to_z2 = AbHom::new(lq.ambient.clone(), z2.clone(), Matrix::from_rows(&[head], lq.ambient.ngens()))?;
    let r = to_z2.compose(&lq.k.inclusion)?;
    let z2_xi = z2.direct_sum(&xi.group);
    let to_xi = AbHom::identity(&z2).direct_sum(&xi.proj);
    let vv = bracket(&lam, &v.v_one, &v.v_one)?;
    let iota = AbHom::from_images(z2.clone(), z2_xi.clone(), &[prepend(1, &xi.proj.apply(&vv))])?;
    let xi_to_lambda_imgs: Vec<Element> = std::iter::once(lq.quotient.proj.apply(&prepend(1, &l1.zero())))
        .chain(xi.lift.to_cols().iter().map(|c| lq.quotient.proj.apply(&prepend(0, c))))
        .collect();
    let xi_to_lambda = AbHom::from_images(z2_xi.clone(), lq.group().clone(), &xi_to_lambda_imgs)?;
    let u_into = lq.k.inclusion.compose(&u)?;

    let mut failures = Vec::new();
    check(&mut failures, is_short_exact_pair(&u, &r), "0 → Coker(v′₂) → K(v′) → Z₂ → 0 is not exact");
    check(&mut failures, is_short_exact_pair(&u_into, &to_xi), "0 → Coker(v′₂) → Z₂⊕Λ₁(A) → Z₂⊕Ξ(v′) → 0 is not exact");
    check(&mut failures, is_short_exact_pair(&lq.k.inclusion, &lq.quotient.proj), "0 → K(v′) → Z₂⊕Λ₁(A) → Λ(v′) → 0 is not exact");
    check(&mut failures, is_short_exact_pair(&iota, &xi_to_lambda), "0 → Z₂ → Z₂⊕Ξ(v′) → Λ(v′) → 0 is not exact");
    check(&mut failures, to_xi.compose(&lq.k.inclusion)?.equals(&iota.compose(&r)?), "left square does not commute");
    check(&mut failures, xi_to_lambda.compose(&to_xi)?.equals(&lq.quotient.proj), "right square does not commute");

    let groups = vec![
        ("K(v′)".to_string(), lq.k.group.orders().to_vec()),
        ("L(v′)".to_string(), l_sub.group.orders().to_vec()),
        ("Ξ(v′)".to_string(), xi.group.orders().to_vec()),
        ("Λ(v′)".to_string(), lq.group().orders().to_vec()),
        ("Coker(v′₂)".to_string(), coker.group.orders().to_vec()),
    ];
    Ok(DiagramReport { groups, failures })
}

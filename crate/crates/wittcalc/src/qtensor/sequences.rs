//! Expected group structure and the exact sequences relating `G ⊗_Z Q` to ordinary functors.

use crate::abelian::{is_exact_at, is_short_exact, tensor_hom, tensor_raw, AbHom, FinAbGroup};
use crate::error::Result;
use crate::formparam::{
    from_q_minus, from_q_plus, maximal_splitting, to_q_hat_minus, to_q_hat_plus, FormParameter,
    QuasiWu, StandardName, Symmetry,
};
use crate::matrix::Matrix;

use super::{exterior, gamma, induced_map, lambda_one, present, symmetric_square, TensorPresentation};

/// `Z_n ⊗_Z Q` for a standard `Q` (`n = 0` is `Z`).
fn cyclic_entry(n: u64, q: StandardName) -> Vec<u64> {
    let g2 = num_integer::gcd(n, 2);
    match (q, n) {
        (StandardName::QPlus, _) => vec![n],
        (StandardName::QHatPlus, 0) => vec![0],
        (StandardName::QHatPlus, _) => vec![g2 * n],
        (StandardName::Zp(0), 0) => vec![0, 0],
        (StandardName::Zp(0), _) => vec![g2 * n, n / g2],
        (StandardName::Zp(k), 0) => vec![0, 1 << k],
        (StandardName::Zp(k), _) => vec![g2 * n, num_integer::gcd(n / g2, 1 << k)],
        (StandardName::QMinus, _) => vec![g2],
        (StandardName::ZLambda(k), _) => vec![num_integer::gcd(n, 1 << k)],
        (StandardName::QHatMinus, _) => vec![],
    }
}

/// `G ⊗_Z P` from the cyclic table, the maximal splitting `P ≅ Q ⊕ H` and additivity in `G`.
pub fn expected_group(g: &FinAbGroup, p: &FormParameter) -> Result<FinAbGroup> {
    let split = maximal_splitting(p)?;
    let orders = g.orders();
    let mut out = Vec::new();
    for (i, &n) in orders.iter().enumerate() {
        out.extend(cyclic_entry(n, split.standard));
        out.extend(orders[i + 1..].iter().map(|&m| num_integer::gcd(n, m)));
        out.extend(split.complement.orders().iter().map(|&m| num_integer::gcd(n, m)));
    }
    Ok(FinAbGroup::new(out))
}

/// Outcome of the exact-sequence and square checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub symmetry: Symmetry,
    /// Named groups in the diagram with their canonical orders.
    pub groups: Vec<(String, Vec<u64>)>,
    /// Descriptions of every failed check; empty when all hold.
    pub failures: Vec<String>,
}

impl SequenceReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `G ⊗_Z Q → G ⊗ SQ`, `gᵢ ⊗ q ↦ gᵢ ⊗ π(q)` and brackets to zero.
fn to_linear(pres: &TensorPresentation) -> Result<AbHom> {
    let lin = pres.param().linearisation();
    let s = lin.group.ngens();
    let target = tensor_raw(pres.g(), &lin.group);
    let mut images = vec![vec![0; target.ngens()]; pres.abstract_count()];
    for i in 0..pres.g().ngens() {
        for j in 0..pres.param().carrier().ngens() {
            let pj = lin.proj.image_of_generator(j);
            for l in 0..s {
                images[pres.simple_index(i, j)][i * s + l] = pj[l];
            }
        }
    }
    pres.hom_from_abstract(&target, &images)
}

fn check(failures: &mut Vec<String>, ok: bool, what: &str) {
    if !ok {
        failures.push(what.to_string());
    }
}

fn commutes(a: &AbHom, b: &AbHom, c: &AbHom, d: &AbHom) -> Result<bool> {
    Ok(a.compose(b)?.equals(&c.compose(d)?))
}

/// Exactness of the sequences through `G ⊗_Z Q` and the pullback or pushout property of their square.
pub fn check_sequences(g: &FinAbGroup, q: &FormParameter) -> Result<SequenceReport> {
    let id = AbHom::identity(g);
    let tq = present(g, q)?;
    let mut failures = Vec::new();
    let mut groups = vec![("G ⊗ Q".to_string(), tq.group().orders().to_vec())];
    match q.symmetry() {
        Symmetry::Symmetric => {
            let s2 = symmetric_square(g)?;
            let gam = gamma(g)?;
            let qhat = gam.param().clone();
            let top_in = induced_map(&id, &from_q_plus(q)?)?;
            let top_out = to_linear(&tq)?;
            let bot_in = induced_map(&id, &from_q_plus(&qhat)?)?;
            let bot_out = to_linear(&gam)?;
            let middle = induced_map(&id, &to_q_hat_plus(q)?)?;
            let QuasiWu::Slice(v) = q.quasi_wu() else { unreachable!("symmetric parameters have a slice") };
            let right = tensor_hom(&id, &v.v);
            groups.push(("S²(G)".into(), s2.group().orders().to_vec()));
            groups.push(("Γ(G)".into(), gam.group().orders().to_vec()));
            groups.push(("G ⊗ SQ".into(), top_out.target().canonical().orders().to_vec()));
            check(&mut failures, is_short_exact(&top_in, &top_out), "0 → S²(G) → G⊗Q → G⊗SQ → 0 is not exact");
            check(&mut failures, is_short_exact(&bot_in, &bot_out), "0 → S²(G) → Γ(G) → G⊗Z₂ → 0 is not exact");
            check(&mut failures, middle.compose(&top_in)?.equals(&bot_in), "left square does not commute");
            check(&mut failures, commutes(&right, &top_out, &bot_out, &middle)?, "right square does not commute");
            let pair = middle.pair(&top_out);
            let co = bot_out.copair(&right.neg());
            check(&mut failures, pair.is_injective() && is_exact_at(&pair, &co), "right square is not a pullback");
        }
        Symmetry::AntiSymmetric => {
            let l1 = lambda_one(g)?;
            let ext = exterior(g)?;
            let qminus = l1.param().clone();
            let top_in = l1.carrier_inclusion()?;
            let top_out = induced_map(&id, &to_q_hat_minus(&qminus)?)?;
            let bot_in = tq.carrier_inclusion()?;
            let bot_out = induced_map(&id, &to_q_hat_minus(q)?)?;
            let v_one = AbHom::new(
                qminus.carrier().clone(),
                q.carrier().clone(),
                Matrix::from_cols(&[q.p_one().0.clone()], q.carrier().ngens()),
            )?;
            let left = tensor_hom(&id, &v_one);
            let middle = induced_map(&id, &from_q_minus(q)?)?;
            groups.push(("Λ₁(G)".into(), l1.group().orders().to_vec()));
            groups.push(("Λ(G)".into(), ext.group().orders().to_vec()));
            groups.push(("G ⊗ Q_e".into(), bot_in.source().canonical().orders().to_vec()));
            check(&mut failures, is_short_exact(&top_in, &top_out), "0 → G⊗Z₂ → Λ₁(G) → Λ(G) → 0 is not exact");
            check(&mut failures, is_short_exact(&bot_in, &bot_out), "0 → G⊗Q_e → G⊗Q → Λ(G) → 0 is not exact");
            check(&mut failures, commutes(&middle, &top_in, &bot_in, &left)?, "left square does not commute");
            check(&mut failures, bot_out.compose(&middle)?.equals(&top_out), "right square does not commute");
            let co = middle.copair(&bot_in);
            let pair = top_in.pair(&left.neg());
            check(&mut failures, co.is_surjective() && is_exact_at(&pair, &co), "left square is not a pushout");
        }
    }
    Ok(SequenceReport { symmetry: q.symmetry(), groups, failures })
}


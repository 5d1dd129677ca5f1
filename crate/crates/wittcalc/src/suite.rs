//! The acceptance suite: eleven exact checks, each reported as one pass/fail line.

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{AbHom, FinAbGroup};
use crate::error::Result;
use crate::formparam::{
    aut_generators, from_q_minus, from_q_plus, maximal_splitting, zp_morphism, FormParameter, QuasiWu, StandardName,
    Symmetry,
};
use crate::matrix::Matrix;
use crate::oracle::{brute_force_absorbing, absorbing_probes, cyclic_pair_table, cyclic_table, delta, delta_bar, democratic_arf};
use crate::qform::{absorb_embed, isometry_verify, metabolic_search, signature_of_matrix, MetabolicSearch, QForm};
use crate::qtensor::present;
use crate::sample::{random_coords, random_form, random_parameter, random_small_form};
use crate::witt::{
    arf, check_lambda_kernel, check_sigma_image, f_invariant, gamma_form, gw_class, gw_group, induced_witt_map,
    lambda_diagram, metabolic_verdict, rho, rho_with_lift, sigma_diagram, witt_class, witt_group, Metabolicity,
};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// What was checked on success, or the first failure.
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.2?}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed,
            self.detail
        )
    }
}

type Check = fn(&mut ChaCha8Rng) -> std::result::Result<String, String>;

const CRITERIA: [(&str, Check, Option<u64>); 11] = [
    ("indecomposable Witt groups", indecomposable, Some(1)),
    ("quadratic tensor table", tensor_table, Some(10)),
    ("split Witt groups and generators", split_examples, None),
    ("induced-map matrices", induced_matrices, None),
    ("natural description", natural_description, Some(60)),
    ("diagram theorems", diagrams, None),
    ("F inverts γ", round_trip, None),
    ("stably metabolic, not metabolic", witness, None),
    ("Grothendieck–Witt groups", grothendieck_witt, None),
    ("absorbing forms", absorbing, Some(300)),
    ("ρ well-definedness", rho_congruences, None),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based) with its own RNG stream derived from `seed`.
pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    let (title, check, limit) = CRITERIA[usize::from(id) - 1];
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(u64::from(id)));
    let start = Instant::now();
    let outcome = check(&mut rng);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    if let Some(secs) = limit {
        if passed && elapsed > Duration::from_secs(secs) {
            passed = false;
            detail = format!("{detail}; exceeded the {secs} s limit");
        }
    }
    CriterionResult { id, title, passed, detail, elapsed }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA.len() as u8).map(|id| run_criterion(id, seed)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn param(name: StandardName) -> FormParameter {
    FormParameter::standard(name).expect("standard parameters are valid")
}

fn indecomposable(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let mut cases: Vec<(StandardName, Vec<u64>)> = vec![
        (StandardName::QPlus, vec![0]),
        (StandardName::Zp(0), vec![0, 0]),
        (StandardName::QHatPlus, vec![0]),
        (StandardName::QMinus, vec![2]),
        (StandardName::QHatMinus, vec![]),
    ];
    for k in 1..=6u32 {
        let mut orders = if k == 1 { vec![] } else { vec![1u64 << (k - 1)] };
        orders.push(0);
        cases.push((StandardName::Zp(k), orders));
    }
    for k in 2..=6u32 {
        cases.push((StandardName::ZLambda(k), vec![]));
    }
    for (name, expected) in &cases {
        let got = lib(witt_group(&param(*name)))?.canonical;
        ensure(got.orders() == expected.as_slice(), || format!("W₀({name}) = {got}, expected {:?}", expected))?;
    }
    // 8Z: the Q+ generator has signature 8.
    let e8 = &crate::witt::indec_generator_forms(StandardName::QPlus)[0];
    ensure(lib(crate::qform::signature(e8))? == 8, || "the Q+ generator does not have signature 8".into())?;
    Ok(format!("{} parameters", cases.len()))
}

fn tensor_table(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let names = StandardName::all_up_to(6);
    let mut count = 0;
    for &q in &names {
        let qp = param(q);
        for n in 1..=16u64 {
            let got = lib(present(&FinAbGroup::cyclic(n), &qp))?;
            let want = FinAbGroup::new(cyclic_table(n, q));
            ensure(got.group().is_isomorphic(&want), || format!("Z_{n} ⊗ {q} = {}, expected {want}", got.group()))?;
            count += 1;
        }
        for n in 1..=12u64 {
            for m in n..=12u64 {
                let got = lib(present(&FinAbGroup::new(vec![n, m]), &qp))?;
                let want = FinAbGroup::new(cyclic_pair_table(n, m, q));
                ensure(got.group().is_isomorphic(&want), || {
                    format!("(Z_{n} ⊕ Z_{m}) ⊗ {q} = {}, expected {want}", got.group())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} presentations over {} parameters", names.len()))
}

fn form(p: &FormParameter, rows: &[Vec<i64>], mu: &[Vec<i64>]) -> std::result::Result<QForm, String> {
    lib(QForm::new(p.clone(), Matrix::from_rows(rows, rows.len()), mu.to_vec()))
}

/// The class of `f` has zero indecomposable part and its tensor part generates `G ⊗_Z Q`, cyclic of
/// order `order`.
fn generates_torsion(f: &QForm, order: u64) -> std::result::Result<(), String> {
    let c = lib(witt_class(f))?;
    let k = c.indec().coords().len();
    let d = lib(witt_group(f.param()))?;
    let tensor = d.group.orders()[k..].to_vec();
    let size: u64 = tensor.iter().product();
    ensure(c.indec().coords().iter().all(|&x| x == 0), || format!("{f:?} has a nonzero indecomposable part"))?;
    ensure(size == order, || format!("tensor summand {tensor:?} has order {size}, expected {order}"))?;
    let sub = FinAbGroup::new(tensor);
    ensure(sub.order_of(c.tensor()) == Some(order), || format!("{:?} does not generate Z_{order}", c.tensor()))
}

fn split_examples(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    for l in 1..=12u64 {
        let g = FinAbGroup::cyclic(l);
        let expect = |name: StandardName, orders: Vec<u64>| -> std::result::Result<FormParameter, String> {
            let p = param(name).split_sum(&g);
            let got = lib(witt_group(&p))?.canonical;
            let want = FinAbGroup::new(orders);
            ensure(got.is_isomorphic(&want), || format!("W₀({name} ⊕ Z_{l}) = {got}, expected {want}"))?;
            Ok(p)
        };
        let p = expect(StandardName::QPlus, vec![0, l])?;
        generates_torsion(&form(&p, &[vec![0, 1], vec![1, 0]], &[vec![0, 1], vec![0, 1]])?, l)?;
        let p = expect(StandardName::QHatPlus, vec![0, delta(l)])?;
        let sum = form(&p, &[vec![1]], &[vec![1, 0]])?.direct_sum(&form(&p, &[vec![-1]], &[vec![-1, 1]])?);
        generates_torsion(&lib(sum)?, delta(l))?;
        let p = expect(StandardName::QMinus, vec![2, delta_bar(l)])?;
        generates_torsion(&form(&p, &[vec![0, 1], vec![-1, 0]], &[vec![0, 1], vec![0, 1]])?, delta_bar(l))?;
        expect(StandardName::QHatMinus, vec![])?;
    }
    Ok("l = 1..12 for Q+, Q^+, Q−, Q^−".into())
}

fn matrix_hom(h: &AbHom, rows: &[Vec<i64>]) -> std::result::Result<AbHom, String> {
    lib(AbHom::new(h.source().clone(), h.target().clone(), Matrix::from_rows(rows, h.source().ngens())))
}

fn induced_matrices(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let w = lib(induced_witt_map(&lib(from_q_plus(&param(StandardName::Zp(0))))?))?;
    ensure(w.equals(&matrix_hom(&w, &[vec![8], vec![1]])?), || format!("Q+ → ZP gives {:?}", w.matrix()))?;
    let mut count = 1;
    let pairs = [(0, 0), (0, 2), (0, 3), (0, 4), (2, 2), (3, 2), (3, 3), (4, 2), (4, 4), (5, 3), (6, 6)];
    for (k, l) in pairs {
        for n in -2i64..=2 {
            let w = lib(induced_witt_map(&lib(zp_morphism(n, k, l))?))?;
            let want = matrix_hom(&w, &[vec![1, 0], vec![-n * (n + 1) / 2, (2 * n + 1) * (2 * n + 1)]])?;
            ensure(w.equals(&want), || format!("n = {n}, ZP_{k} → ZP_{l} gives {:?}", w.matrix()))?;
            count += 1;
        }
    }
    for k in 2..=6u32 {
        let auts = lib(aut_generators(StandardName::Zp(k)))?;
        let beta = lib(induced_witt_map(&auts[0]))?;
        ensure(beta.equals(&AbHom::identity(beta.source())), || format!("W₀(β) on ZP_{k} is {:?}", beta.matrix()))?;
        let gamma = lib(induced_witt_map(&auts[1]))?;
        ensure(gamma.equals(&matrix_hom(&gamma, &[vec![1, 0], vec![-1, 9]])?), || {
            format!("W₀(γ_{k}) is {:?}", gamma.matrix())
        })?;
        count += 2;
    }
    Ok(format!("{count} morphisms"))
}

fn natural_description(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let (mut symmetric, mut anti) = (0, 0);
    for _ in 0..25 {
        let p = random_parameter(rng);
        let failures = match p.symmetry() {
            Symmetry::Symmetric => {
                symmetric += 1;
                lib(check_sigma_image(&p))?
            }
            Symmetry::AntiSymmetric => {
                anti += 1;
                lib(check_lambda_kernel(&p))?
            }
        };
        ensure(failures.is_empty(), || format!("{p:?}: {}", failures.join("; ")))?;
    }
    Ok(format!("{symmetric} symmetric, {anti} anti-symmetric parameters"))
}

fn diagrams(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let mut params: Vec<FormParameter> = StandardName::all_up_to(6).into_iter().map(param).collect();
    let mut decomposable = 0;
    while decomposable < 10 {
        let p = random_parameter(rng);
        if !lib(maximal_splitting(&p))?.complement.is_trivial() {
            params.push(p);
            decomposable += 1;
        }
    }
    let mut z4 = 0;
    for p in &params {
        let report = match p.quasi_wu() {
            QuasiWu::Slice(v) => {
                let r = lib(sigma_diagram(&v))?;
                let splits_off = lib(maximal_splitting(p))?.standard == StandardName::QHatPlus;
                let c = r.group("C(v)").unwrap_or_default().to_vec();
                let want = if splits_off { vec![4] } else { vec![8] };
                ensure(c == want, || format!("{p:?}: C(v) = {c:?}, expected {want:?}"))?;
                z4 += usize::from(splits_off);
                r
            }
            QuasiWu::Coslice(v) => lib(lambda_diagram(&v))?,
        };
        ensure(report.is_ok(), || format!("{p:?}: {}", report.failures.join("; ")))?;
    }
    Ok(format!("{} quasi-Wu classes, C(v) ≅ Z₄ in {z4}", params.len()))
}

fn round_trip(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let cases: [(StandardName, &[u64]); 10] = [
        (StandardName::QPlus, &[6]),
        (StandardName::QHatPlus, &[4, 0]),
        (StandardName::Zp(0), &[2, 3]),
        (StandardName::Zp(2), &[4]),
        (StandardName::Zp(3), &[0]),
        (StandardName::QMinus, &[2, 4]),
        (StandardName::QMinus, &[0, 6]),
        (StandardName::ZLambda(2), &[8]),
        (StandardName::ZLambda(3), &[2, 0]),
        (StandardName::QHatMinus, &[4, 6]),
    ];
    for (name, orders) in cases {
        let q = param(name);
        let g = FinAbGroup::new(orders.to_vec());
        let pres = lib(present(&g, &q))?;
        for _ in 0..20 {
            let t = random_coords(rng, pres.group(), 9);
            let f = lib(gamma_form(&t, &q, &g))?;
            let back = lib(f_invariant(&f, &q, &g))?;
            ensure(back.0 == t, || format!("{name} ⊕ {g}: F(γ({t:?})) = {back:?}"))?;
        }
    }
    Ok("200 tensor elements over 10 split parameters".into())
}

fn witness(_: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let qm = param(StandardName::QMinus);
    let c = form(&qm, &[vec![0, 1], vec![-1, 0]], &[vec![1], vec![1]])?;
    ensure(lib(arf(&c))? == 1 && democratic_arf(&c) == 1, || "the Arf-1 form does not have Arf invariant 1".into())?;
    let zl = param(StandardName::ZLambda(2));
    let pushed = lib(c.pushforward(&lib(from_q_minus(&zl))?))?;
    ensure(lib(witt_class(&pushed))?.is_zero(), || "the pushed form has a nonzero Witt class".into())?;
    for bound in 1..=5 {
        let s = lib(metabolic_search(&pushed, bound))?;
        ensure(s == MetabolicSearch::NotFoundWithinBound, || format!("B = {bound}: {s:?}"))?;
    }
    let v = lib(metabolic_verdict(&pushed, 5))?;
    ensure(v.witt_zero && matches!(v.metabolic, Metabolicity::NotMetabolic(_)), || format!("verdict {v:?}"))?;
    Ok("Witt class 0, no lagrangian for B ≤ 5, Arf obstruction certifies".into())
}

fn grothendieck_witt(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    for name in StandardName::all_up_to(4) {
        let p = param(name);
        let gw = lib(gw_group(&p))?;
        let w = lib(witt_group(&p))?;
        let want = FinAbGroup::free(1).direct_sum(&w.canonical).canonical();
        ensure(gw.group == want, || format!("GW₀({name}) = {}, expected {want}", gw.group))?;
    }
    let (mut symmetric, mut anti) = (0, 0);
    while symmetric < 100 || anti < 100 {
        let p = random_parameter(rng);
        let slot = match p.symmetry() {
            Symmetry::Symmetric => &mut symmetric,
            Symmetry::AntiSymmetric => &mut anti,
        };
        if *slot >= 100 {
            continue;
        }
        *slot += 1;
        let f = random_form(rng, &p, 4);
        let c = lib(gw_class(&f))?;
        let d = lib(gw_group(&p))?;
        let rank = c.rank as i64;
        let parity = match p.symmetry() {
            Symmetry::Symmetric => (signature_of_matrix(f.lambda()) - rank).rem_euclid(2) == 0,
            Symmetry::AntiSymmetric => rank % 2 == 0,
        };
        ensure(parity && d.contains(rank, &c.witt), || format!("{f:?}: rank {rank}, class {:?}", c.witt))?;
    }
    Ok("standard parameters and 100 random forms per symmetry".into())
}

fn absorbing(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let params = [
        param(StandardName::QHatPlus),
        param(StandardName::Zp(0)),
        param(StandardName::QMinus),
        param(StandardName::ZLambda(2)),
        param(StandardName::QPlus).split_sum(&FinAbGroup::cyclic(2)),
    ];
    let (mut absorbing_count, mut embeddings) = (0, 0);
    for p in &params {
        for _ in 0..6 {
            let f = random_small_form(rng, p, 4, 2).ok_or_else(|| format!("no nonsingular sample over {p:?}"))?;
            let claimed = lib(f.is_absorbing())?;
            let brute = brute_force_absorbing(&f, 3, 3, 20_000_000)
                .ok_or_else(|| format!("{f:?}: embedding search budget exhausted"))?;
            ensure(claimed == brute, || format!("{f:?}: is_absorbing = {claimed}, brute force = {brute}"))?;
            if claimed {
                absorbing_count += 1;
                for eta in absorbing_probes(&f) {
                    let emb = lib(absorb_embed(&f, &eta, 3))?;
                    ensure(isometry_verify(&emb.source, &emb.target, &emb.matrix) || emb.verify(), || {
                        format!("{f:?}: embedding of {eta:?} fails its pullback check")
                    })?;
                    embeddings += 1;
                }
            }
        }
    }
    Ok(format!("30 forms, {absorbing_count} absorbing, {embeddings} embeddings verified"))
}

fn rho_congruences(rng: &mut ChaCha8Rng) -> std::result::Result<String, String> {
    let names: Vec<StandardName> = (0..=5).map(StandardName::Zp).collect();
    use rand::seq::SliceRandom;
    use rand::Rng;
    for _ in 0..100 {
        let name = *names.choose(rng).expect("nonempty");
        let p = param(name);
        let f = random_form(rng, &p, 6);
        let data = lib(rho(&f))?;
        ensure((i128::from(data.sigma) - data.omega_hat_square).rem_euclid(8) == 0, || {
            format!("{f:?}: σ = {} and ω̂² = {} differ mod 8", data.sigma, data.omega_hat_square)
        })?;
        if let StandardName::Zp(k) = name {
            if k > 0 {
                let shift = 1i64 << (k + 1);
                let other: Vec<i64> = data.omega.iter().map(|w| w + shift * rng.gen_range(-3i64..=3)).collect();
                let raw = lib(rho_with_lift(&f, &other))?;
                ensure((raw - data.raw).rem_euclid(1 << (k - 1)) == 0, || {
                    format!("{f:?}: ρ_{k} changes from {} to {raw} under another lift", data.raw)
                })?;
            }
        }
    }
    Ok("100 forms over ZP and ZP_1..ZP_5".into())
}

//! Signature-defect invariants `ρ_∞`, `ρ_k` and the Arf invariant.

use crate::error::{internal, validation, Result};
use crate::formparam::{FormParameter, StandardName};
use crate::qform::{signature, QForm};

/// Which of `ZP`, `ZP_k` the form lives over, as `k` (`0` for `ZP`).
fn zp_index(p: &FormParameter) -> Option<u32> {
    let k = match p.carrier().orders() {
        [0, 0] => 0,
        [0, n] if n.is_power_of_two() && *n > 1 => n.trailing_zeros(),
        _ => return None,
    };
    let standard = FormParameter::standard(StandardName::Zp(k)).ok()?;
    (&standard == p).then_some(k)
}

/// `ω̂² = ωᵀ M⁻¹ ω` for a lift `ω` of `Sμ`.
fn omega_hat_square(f: &QForm, omega: &[i64]) -> Result<i128> {
    let inv = match f.lambda().inverse_unimodular() {
        Some(m) => m,
        None => return validation("ρ needs a nonsingular form"),
    };
    let hat = inv.apply(omega);
    Ok(hat.iter().zip(omega).map(|(&a, &b)| a as i128 * b as i128).sum())
}

/// Values of `ρ_∞` or `ρ_k` with the data they are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoData {
    pub sigma: i64,
    /// The lift `ω: X → Z` of `Sμ` on the basis, smallest non-negative residues.
    pub omega: Vec<i64>,
    pub omega_hat_square: i128,
    /// `(σ − ω̂²)/8` before reduction.
    pub raw: i128,
    /// `None` for `ZP`, `Some(2^{k−1})` for `ZP_k`.
    pub modulus: Option<u64>,
}

impl RhoData {
    /// `ρ_∞`, or `ρ_k` reduced to `[0, 2^{k−1})`.
    pub fn value(&self) -> i64 {
        match self.modulus {
            None => self.raw as i64,
            Some(m) => self.raw.rem_euclid(m as i128) as i64,
        }
    }
}

/// `Sμ` on the basis as integers: `(a, b) ↦ a + 2b`, reduced mod `2^{k+1}` over `ZP_k`.
fn omega_lift(f: &QForm, k: u32) -> Vec<i64> {
    f.mu_basis()
        .iter()
        .map(|m| {
            let w = m[0] + 2 * m[1];
            if k == 0 {
                w
            } else {
                w.rem_euclid(1 << (k + 1))
            }
        })
        .collect()
}

/// `(σ − ω̂²)/8` for an explicit lift `ω`.
pub fn rho_with_lift(f: &QForm, omega: &[i64]) -> Result<i128> {
    let sigma = signature(f)? as i128;
    let sq = omega_hat_square(f, omega)?;
    if (sigma - sq) % 8 != 0 {
        return internal(format!("σ = {sigma} and ω̂² = {sq} differ mod 8"));
    }
    Ok((sigma - sq) / 8)
}

/// `ρ_∞` over `ZP` or `ρ_k` over `ZP_k`.
///
/// Over `ZP_k` the value is recomputed with every basis lift shifted by `2^{k+1}` and the two
/// results must agree mod `2^{k−1}`.
pub fn rho(f: &QForm) -> Result<RhoData> {
    let Some(k) = zp_index(f.param()) else {
        return validation("ρ is defined over ZP and ZP_k only");
    };
    if !f.is_nonsingular() {
        return validation("ρ needs a nonsingular form");
    }
    let omega = omega_lift(f, k);
    let sigma = signature(f)?;
    let omega_hat_square = omega_hat_square(f, &omega)?;
    let raw = rho_with_lift(f, &omega)?;
    let modulus = (k > 0).then(|| 1u64 << (k - 1));
    if let Some(m) = modulus {
        let shifted: Vec<i64> = omega.iter().map(|w| w + (1 << (k + 1))).collect();
        let other = rho_with_lift(f, &shifted)?;
        if (other - raw).rem_euclid(m as i128) != 0 {
            return internal(format!("ρ_{k} depends on the lift: {raw} vs {other}"));
        }
    }
    Ok(RhoData { sigma, omega, omega_hat_square, raw, modulus })
}

/// Arf invariant of a nonsingular form over `Q−`.
///
/// `μ` factors through `X/2X`, so a symplectic basis of `λ mod 2` suffices; the result is
/// `Σ μ(eᵢ)μ(fᵢ) mod 2`.
pub fn arf(f: &QForm) -> Result<u8> {
    if f.param() != &FormParameter::standard(StandardName::QMinus)? {
        return validation("the Arf invariant is defined over Q− only");
    }
    if !f.is_nonsingular() {
        return validation("the Arf invariant needs a nonsingular form");
    }
    let n = f.rank();
    let pair = |x: &[i64], y: &[i64]| f.lambda_eval(x, y).rem_euclid(2);
    let q = |x: &[i64]| f.mu_eval(x)[0].rem_euclid(2);
    let mut pool: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut total = 0;
    while let Some(pos) = pool.iter().position(|v| v.iter().any(|&c| c != 0)) {
        let e = pool.swap_remove(pos);
        let Some(fpos) = pool.iter().position(|v| pair(&e, v) == 1) else {
            return internal("λ mod 2 is degenerate on the remaining span");
        };
        let g = pool.swap_remove(fpos);
        total += q(&e) * q(&g);
        for v in pool.iter_mut() {
            let (a, b) = (pair(v, &g), pair(v, &e));
            for i in 0..n {
                v[i] = (v[i] + a * e[i] + b * g[i]).rem_euclid(2);
            }
        }
        pool.retain(|v| v.iter().any(|&c| c != 0));
    }
    Ok((total % 2) as u8)
}

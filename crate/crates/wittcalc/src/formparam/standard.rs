//! The indecomposable standard parameters.

use std::fmt;
use std::str::FromStr;

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};

use super::{FormParameter, Symmetry};

/// Largest `k` accepted for `ZP_k` and `ZL_k`.
pub const MAX_INDEX: u32 = 40;

/// Names of the standard parameters. `Zp(0)` is `ZP`; `Zp(k)` for `k ≥ 1` is `ZP_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StandardName {
    /// `(Z, ×2, 1)`
    QPlus,
    /// `(Z, ×1, 2)`
    QHatPlus,
    /// `(Z₂, 0, 1)`
    QMinus,
    /// `(0, 0, 0)`
    QHatMinus,
    Zp(u32),
    /// `ZΛ_k`, `k ≥ 2`.
    ZLambda(u32),
}

impl StandardName {
    pub fn symmetry(self) -> Symmetry {
        match self {
            StandardName::QPlus | StandardName::QHatPlus | StandardName::Zp(_) => Symmetry::Symmetric,
            _ => Symmetry::AntiSymmetric,
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            StandardName::Zp(k) if k > MAX_INDEX => Err(Error::Validation(format!("ZP_{k}: index too large"))),
            StandardName::ZLambda(k) if !(2..=MAX_INDEX).contains(&k) => {
                Err(Error::Validation(format!("ZL_{k}: index must lie in 2..={MAX_INDEX}")))
            }
            other => Ok(other),
        }
    }

    /// Every standard with index at most `max_index`.
    pub fn all_up_to(max_index: u32) -> Vec<StandardName> {
        let mut out = vec![StandardName::QPlus, StandardName::QHatPlus, StandardName::QMinus, StandardName::QHatMinus, StandardName::Zp(0)];
        out.extend((1..=max_index).map(StandardName::Zp));
        out.extend((2..=max_index).map(StandardName::ZLambda));
        out
    }
}

impl fmt::Display for StandardName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardName::QPlus => write!(f, "Q+"),
            StandardName::QHatPlus => write!(f, "Q^+"),
            StandardName::QMinus => write!(f, "Q-"),
            StandardName::QHatMinus => write!(f, "Q^-"),
            StandardName::Zp(0) => write!(f, "ZP"),
            StandardName::Zp(k) => write!(f, "ZP_{k}"),
            StandardName::ZLambda(k) => write!(f, "ZL_{k}"),
        }
    }
}

impl FromStr for StandardName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('\u{2212}', "-");
        let name = match s.as_str() {
            "Q+" => StandardName::QPlus,
            "Q^+" => StandardName::QHatPlus,
            "Q-" => StandardName::QMinus,
            "Q^-" => StandardName::QHatMinus,
            "ZP" => StandardName::Zp(0),
            _ => {
                let parse = |rest: &str| {
                    rest.parse::<u32>().map_err(|_| Error::Schema(format!("bad index in parameter name {s:?}")))
                };
                if let Some(rest) = s.strip_prefix("ZP_") {
                    let k = parse(rest)?;
                    if k == 0 {
                        return Err(Error::Validation("ZP_k needs k ≥ 1".into()));
                    }
                    StandardName::Zp(k)
                } else if let Some(rest) = s.strip_prefix("ZL_") {
                    StandardName::ZLambda(parse(rest)?)
                } else {
                    return Err(Error::Schema(format!("unknown standard parameter {s:?}")));
                }
            }
        };
        name.validate()
    }
}

pub(super) fn build(name: StandardName) -> Result<FormParameter> {
    let name = name.validate()?;
    let p = match name {
        StandardName::QPlus => FormParameter::new(FinAbGroup::free(1), &[2], &[1]),
        StandardName::QHatPlus => FormParameter::new(FinAbGroup::free(1), &[1], &[2]),
        StandardName::QMinus => FormParameter::new(FinAbGroup::cyclic(2), &[0], &[1]),
        StandardName::QHatMinus => FormParameter::new(FinAbGroup::trivial(), &[], &[]),
        StandardName::Zp(0) => FormParameter::new(FinAbGroup::free(2), &[1, 0], &[2, -1]),
        StandardName::Zp(k) => FormParameter::new(FinAbGroup::new(vec![0, 1 << k]), &[1, 0], &[2, -1]),
        StandardName::ZLambda(k) => FormParameter::new(FinAbGroup::cyclic(1 << k), &[0], &[1 << (k - 1)]),
    };
    Ok(p.expect("standard parameters satisfy the axioms"))
}

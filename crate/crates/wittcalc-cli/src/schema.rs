//! Request payloads and their conversion into library values.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use wittcalc::abelian::FinAbGroup;
use wittcalc::formparam::{FPMorphism, FormParameter, StandardName};
use wittcalc::qform::QForm;
use wittcalc::{Error, Matrix, Result};

/// `[2, 0]` or `{"orders": [2, 0]}`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Orders(Vec<u64>),
    Object { orders: Vec<u64> },
}

impl GroupInput {
    pub fn build(&self) -> Result<FinAbGroup> {
        let orders = match self {
            GroupInput::Orders(o) | GroupInput::Object { orders: o } => o,
        };
        if orders.contains(&1) {
            return Err(Error::Schema("cyclic factors of order 1 are not allowed".into()));
        }
        Ok(FinAbGroup::new(orders.clone()))
    }
}

/// A standard name, a standard name plus a split summand, or an explicit `(carrier, h, p(1))`.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum ParamInput {
    Name(String),
    Named(NamedParam),
    Explicit(ExplicitParam),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedParam {
    name: String,
    #[serde(default)]
    sum: Option<GroupInput>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitParam {
    carrier: GroupInput,
    h: Vec<i64>,
    #[serde(rename = "pOne")]
    p_one: Vec<i64>,
}

impl ParamInput {
    pub fn build(&self) -> Result<FormParameter> {
        match self {
            ParamInput::Name(name) => FormParameter::standard(name.parse::<StandardName>()?),
            ParamInput::Named(NamedParam { name, sum }) => {
                let q = FormParameter::standard(name.parse::<StandardName>()?)?;
                match sum {
                    Some(g) => Ok(q.split_sum(&g.build()?)),
                    None => Ok(q),
                }
            }
            ParamInput::Explicit(ExplicitParam { carrier, h, p_one }) => {
                let carrier = carrier.build()?;
                if p_one.len() != carrier.ngens() {
                    return Err(Error::Schema(format!(
                        "pOne has {} coordinates, carrier has {} generators",
                        p_one.len(),
                        carrier.ngens()
                    )));
                }
                FormParameter::new(carrier, h, p_one)
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormInput {
    param: ParamInput,
    lambda: Vec<Vec<i64>>,
    mu: Vec<Vec<i64>>,
}

impl FormInput {
    pub fn build(&self) -> Result<QForm> {
        let param = self.param.build()?;
        let lambda = square_matrix(&self.lambda, "lambda")?;
        let n = param.carrier().ngens();
        if let Some(bad) = self.mu.iter().position(|m| m.len() != n) {
            return Err(Error::Schema(format!("mu[{bad}] needs {n} carrier coordinates")));
        }
        QForm::new(param, lambda, self.mu.clone())
    }
}

pub fn square_matrix(rows: &[Vec<i64>], what: &str) -> Result<Matrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Schema(format!("{what} must be a square matrix")));
    }
    Ok(Matrix::from_rows(rows, n))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorRequest {
    #[serde(rename = "G")]
    pub g: GroupInput,
    #[serde(rename = "Q")]
    pub q: ParamInput,
}

/// A morphism given by its carrier matrix, columns being the images of the source generators.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismInput {
    source: ParamInput,
    target: ParamInput,
    matrix: Vec<Vec<i64>>,
}

impl MorphismInput {
    pub fn build(&self) -> Result<FPMorphism> {
        let source = self.source.build()?;
        let target = self.target.build()?;
        let (rows, cols) = (target.carrier().ngens(), source.carrier().ngens());
        if self.matrix.len() != rows || self.matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::Schema(format!("matrix must be {rows}x{cols} (target by source generators)")));
        }
        FPMorphism::new(source, target, Matrix::from_rows(&self.matrix, cols))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryRequest {
    pub f: FormInput,
    pub g: FormInput,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedRequest {
    pub form: FormInput,
    #[serde(default)]
    pub eta: Option<FormInput>,
}

pub fn parse<T: DeserializeOwned>(payload: &str) -> Result<T> {
    serde_json::from_str(payload).map_err(|e| Error::Schema(e.to_string()))
}

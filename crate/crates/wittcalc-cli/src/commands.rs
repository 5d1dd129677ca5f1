//! One handler per subcommand; each returns the JSON report.

use serde_json::{json, Value};
use wittcalc::formparam::{classify, maximal_splitting, Height, Symmetry};
use wittcalc::oracle::absorbing_probes;
use wittcalc::qform::{absorb_embed, isometry_search, IsometrySearch, QForm};
use wittcalc::qtensor::present;
use wittcalc::witt::{gw_group, induced_witt_map, metabolic_verdict, witt_class, witt_group, GWImage, Metabolicity};
use wittcalc::{Error, Result};

use crate::report;
use crate::schema::{parse, EmbedRequest, FormInput, IsometryRequest, MorphismInput, ParamInput, TensorRequest};

pub fn classify_cmd(payload: &str) -> Result<Value> {
    let p = parse::<ParamInput>(payload)?.build()?;
    let c = classify(&p)?;
    let symmetry = match c.symmetry {
        Symmetry::Symmetric => 1,
        Symmetry::AntiSymmetric => -1,
    };
    let height = match c.height {
        Height::Finite(k) => json!(k),
        Height::Infinite => json!("inf"),
    };
    Ok(json!({ "symmetry": symmetry, "height": height, "complement": c.complement.canonical().orders() }))
}

pub fn split(payload: &str) -> Result<Value> {
    let p = parse::<ParamInput>(payload)?.build()?;
    let ms = maximal_splitting(&p)?;
    Ok(json!({
        "standard": ms.standard.to_string(),
        "complement": ms.complement.orders(),
        "iso": report::hom(ms.iso.map()),
        "param": report::param(&p),
        "split": report::param(ms.iso.target()),
    }))
}

pub fn witt_class_cmd(payload: &str) -> Result<Value> {
    let f = parse::<FormInput>(payload)?.build()?;
    let class = witt_class(&f)?;
    let d = witt_group(f.param())?;
    Ok(json!({
        "coords": class.coords(),
        "zero": class.is_zero(),
        "group": d.group.orders(),
        "generators": d.generators,
        "standard": class.standard().to_string(),
        "complement": class.complement().orders(),
        "form": report::form(&f),
    }))
}

pub fn witt_group_cmd(payload: &str) -> Result<Value> {
    let p = parse::<ParamInput>(payload)?.build()?;
    let d = witt_group(&p)?;
    Ok(json!({
        "group": d.canonical.orders(),
        "presented": d.group.orders(),
        "generators": d.generators,
        "standard": d.splitting.standard.to_string(),
        "complement": d.splitting.complement.orders(),
        "param": report::param(&p),
    }))
}

pub fn gw_group_cmd(payload: &str) -> Result<Value> {
    let p = parse::<ParamInput>(payload)?.build()?;
    let d = gw_group(&p)?;
    let w = witt_group(&p)?;
    let image = match d.image {
        GWImage::SignatureParity => "rank ≡ signature mod 2",
        GWImage::EvenRank => "even rank",
    };
    Ok(json!({
        "group": d.group.orders(),
        "witt": w.canonical.orders(),
        "image": image,
        "param": report::param(&p),
    }))
}

pub fn tensor(payload: &str) -> Result<Value> {
    let req = parse::<TensorRequest>(payload)?;
    let (g, q) = (req.g.build()?, req.q.build()?);
    let pres = present(&g, &q)?;
    let images: Vec<Value> = pres
        .labels()
        .into_iter()
        .zip(pres.basis_map())
        .map(|(symbol, image)| json!({ "symbol": symbol, "image": image.coords() }))
        .collect();
    Ok(json!({ "group": pres.group().orders(), "generators": images, "G": report::group(&g), "Q": report::param(&q) }))
}

pub fn induced_map(payload: &str) -> Result<Value> {
    let alpha = parse::<MorphismInput>(payload)?.build()?;
    let w = induced_witt_map(&alpha)?;
    let (d1, d2) = (witt_group(alpha.source())?, witt_group(alpha.target())?);
    Ok(json!({
        "matrix": report::matrix(w.matrix()),
        "source": w.source().orders(),
        "target": w.target().orders(),
        "source_generators": d1.generators,
        "target_generators": d2.generators,
        "morphism": report::hom(alpha.map()),
        "source_param": report::param(alpha.source()),
        "target_param": report::param(alpha.target()),
    }))
}

pub fn metabolic(payload: &str, bound: i64) -> Result<Value> {
    let f = parse::<FormInput>(payload)?.build()?;
    let v = metabolic_verdict(&f, bound)?;
    let (verdict, evidence) = match &v.metabolic {
        Metabolicity::Metabolic(l) => ("yes", json!({ "lagrangian": l })),
        Metabolicity::NotMetabolic(why) => ("no", json!({ "reason": why })),
        Metabolicity::Unknown => ("unknown", json!({ "reason": format!("no lagrangian with entries in [-{bound}, {bound}]") })),
    };
    let summary = if v.witt_zero {
        format!("Witt class zero (stably metabolic); metabolic within bound: {verdict}")
    } else {
        format!("Witt class nonzero; metabolic: {verdict}")
    };
    Ok(json!({
        "witt_zero": v.witt_zero,
        "metabolic": verdict,
        "evidence": evidence,
        "summary": summary,
        "bound": bound,
        "form": report::form(&f),
    }))
}

pub fn isometric(payload: &str, bound: i64) -> Result<Value> {
    let req = parse::<IsometryRequest>(payload)?;
    let (f, g) = (req.f.build()?, req.g.build()?);
    let (verdict, evidence) = match isometry_search(&f, &g, bound) {
        IsometrySearch::Isometry(m) => ("yes", json!({ "matrix": report::matrix(&m) })),
        IsometrySearch::NotIsometric(why) => ("no", json!({ "reason": why })),
        IsometrySearch::NotFoundWithinBound => {
            ("unknown", json!({ "reason": format!("no isometry with entries in [-{bound}, {bound}]") }))
        }
    };
    Ok(json!({ "isometric": verdict, "evidence": evidence, "bound": bound, "f": report::form(&f), "g": report::form(&g) }))
}

pub fn absorbing(payload: &str) -> Result<Value> {
    let f = parse::<FormInput>(payload)?.build()?;
    Ok(json!({
        "absorbing": f.is_absorbing()?,
        "full": f.is_full(),
        "indefinite": f.is_indefinite(),
        "form": report::form(&f),
    }))
}

/// Embeds `eta` (or every rank-2 probe form when absent) into `f ⊕ f ⊕ f`.
pub fn embed(payload: &str, bound: i64) -> Result<Value> {
    let req = parse::<EmbedRequest>(payload)?;
    let f = req.form.build()?;
    let etas: Vec<QForm> = match &req.eta {
        Some(e) => vec![e.build()?],
        None => absorbing_probes(&f),
    };
    let mut out = Vec::with_capacity(etas.len());
    for eta in &etas {
        let entry = match absorb_embed(&f, eta, bound) {
            Ok(e) => json!({ "eta": report::form(eta), "matrix": report::matrix(&e.matrix), "verified": e.verify() }),
            Err(Error::BoundExhausted(why)) => json!({ "eta": report::form(eta), "matrix": null, "reason": why }),
            Err(other) => return Err(other),
        };
        out.push(entry);
    }
    Ok(json!({ "embeddings": out, "copies": 3, "bound": bound, "form": report::form(&f) }))
}

//! The non-example subcommands: `forms`, `analyze`, `betti`.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use syzforms::dist::{cw_homology, projective_dimension, random_vanishing_form, Distribution};
use syzforms::forms::PForm;
use syzforms::groebner::Ideal;
use syzforms::syzforms::{brute_force_space, SyzygyForms};
use syzforms::{Error, MonomialOrder, OrderKind, Result};

use crate::golden::betti_json;

/// Reads a form file: a `vars: N` header, `#` comments, and the form text on the remaining lines.
pub fn parse_form_file(text: &str) -> Result<PForm> {
    let mut nvars = None;
    let mut body = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match nvars {
            None => {
                let n = line
                    .strip_prefix("vars:")
                    .and_then(|rest| rest.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidInput("form file must start with a `vars: N` header".into()))?;
                nvars = Some(n);
            }
            Some(_) => {
                body.push_str(line);
                body.push(' ');
            }
        }
    }
    let n = nvars.ok_or_else(|| Error::InvalidInput("form file must start with a `vars: N` header".into()))?;
    PForm::parse(&body, n)
}

#[derive(Clone, Debug)]
pub struct FormsOptions {
    pub p: usize,
    /// A single degree; when absent every `d` from 0 to the degree bound is reported.
    pub d: Option<i64>,
    /// Defaults to `regularity + 2`.
    pub degree_bound: Option<i64>,
    pub oracle: bool,
}

/// Bases of `𝒜^p(Z)_d`, with the brute-force comparison when asked.
/// The flag is false when some oracle comparison disagreed.
pub fn forms(ideal: &Ideal, opts: &FormsOptions) -> Result<(Value, bool)> {
    let n = ideal.nvars();
    if opts.p == 0 || opts.p >= n {
        return Err(Error::InvalidInput(format!("p must lie in 1..{} for {n} variables", n - 1)));
    }
    let sf = SyzygyForms::new(ideal);
    let reg = sf.resolution().betti()?.regularity();
    let degrees: Vec<i64> = match opts.d {
        Some(d) if d < 0 => return Err(Error::InvalidInput(format!("degree {d} is negative"))),
        Some(d) => vec![d],
        None => (0..=opts.degree_bound.unwrap_or(reg + 2)).collect(),
    };
    let mut ok = true;
    let mut spaces = Vec::new();
    for d in degrees {
        let space = sf.form_space(opts.p, d)?;
        let mut v = space.to_json();
        v["d"] = json!(d);
        if opts.oracle {
            let brute = brute_force_space(ideal, opts.p, d);
            let same = space.same_span(&brute);
            ok &= same;
            v["oracle"] = json!({"dim": brute.dim(), "same_span": same});
        }
        spaces.push(v);
    }
    Ok((json!({"p": opts.p, "regularity": reg, "spaces": spaces}), ok))
}

pub fn forms_text(v: &Value) -> String {
    let mut s = format!("p = {}, regularity = {}\n", v["p"], v["regularity"]);
    for space in v["spaces"].as_array().into_iter().flatten() {
        s.push_str(&format!(
            "d = {}: dim {} (tor {}, radial {})",
            space["d"], space["dim"], space["split"]["tor"], space["split"]["radial"]
        ));
        if let Some(o) = space.get("oracle") {
            let verdict = if o["same_span"] == json!(true) { "agrees" } else { "DISAGREES" };
            s.push_str(&format!(", brute force dim {} {verdict}", o["dim"]));
        }
        s.push('\n');
        for w in space["basis"].as_array().into_iter().flatten() {
            s.push_str(&format!("  {}\n", form_from_json_text(w)));
        }
    }
    s
}

/// Human-readable text of a form JSON object, without re-parsing.
fn form_from_json_text(w: &Value) -> String {
    let terms: Vec<String> = w["terms"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|t| {
            let idx: Vec<String> = t["idx"].as_array().into_iter().flatten().map(|i| format!("dx_{i}")).collect();
            format!("({}) {}", t["coef"].as_str().unwrap_or("?"), idx.join("^"))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Twist applied to the conormal sheaf; defaults to the degree of the distribution.
    pub twist: Option<i64>,
    /// `(i, t)`: report `h^i(F(t))`.
    pub cohomology: Vec<(usize, i64)>,
    /// When given, the singular scheme is compared with it.
    pub ideal: Option<Ideal>,
}

/// Random element of `𝒜^p(Z)_d` for `analyze --random`.
pub fn random_form(ideal: &Ideal, p: usize, d: i64, seed: u64) -> Result<PForm> {
    random_vanishing_form(p, d, ideal, seed)
}

/// LDS and integrability, singular scheme, and for LDS forms the conormal sheaf twisted by
/// `F = N^∨(t)` with its Chern classes (on `P^3`) and the requested cohomology.
pub fn analyze(omega: &PForm, opts: &AnalyzeOptions) -> Result<Value> {
    let dist = Distribution::new(omega.clone())?;
    let mut out: BTreeMap<String, Value> = BTreeMap::new();
    out.insert("form".into(), json!(omega.to_string()));
    out.insert("n".into(), json!(dist.n()));
    out.insert("p".into(), json!(dist.p()));
    out.insert("degree".into(), json!(dist.degree()));
    let sing = dist.sing_scheme();
    out.insert("sing".into(), json!(sing.minimal_generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()));
    out.insert("sing_dim".into(), json!(projective_dimension(&sing)));
    if let Some(z) = &opts.ideal {
        if z.nvars() != omega.nvars() {
            return Err(Error::RingMismatch { left: z.nvars(), right: omega.nvars() });
        }
        out.insert("sing_equals_ideal".into(), json!(sing.equal(z)));
    }
    let lds = dist.is_lds();
    out.insert("lds".into(), json!(lds));
    if !lds {
        out.insert("integrable".into(), Value::Null);
        out.insert("tangent_homology_zero".into(), json!(cw_homology(omega)?.is_zero()));
        return Ok(Value::Object(out.into_iter().collect()));
    }
    out.insert("integrable".into(), json!(dist.is_integrable()?));
    let tangent = dist.tangent_sheaf()?;
    out.insert("tangent_rank".into(), json!(tangent.rank()));
    let conormal = dist.conormal_sheaf()?;
    out.insert("conormal_rank".into(), json!(conormal.rank()));
    let t = opts.twist.unwrap_or(dist.degree());
    let f = conormal.twist(t);
    out.insert("twist".into(), json!(t));
    let chern = match f.chern_classes() {
        Ok(c) => c.to_json(),
        Err(e) => json!({"error": e.to_string()}),
    };
    out.insert("chern".into(), chern);
    let mut coh = Vec::new();
    for &(i, d) in &opts.cohomology {
        coh.push(json!({"i": i, "twist": d, "dim": f.cohomology_dim(i, d)?}));
    }
    out.insert("cohomology".into(), json!(coh));
    Ok(Value::Object(out.into_iter().collect()))
}

pub fn analyze_text(v: &Value) -> String {
    let mut s = String::new();
    for (k, val) in v.as_object().into_iter().flatten() {
        s.push_str(&crate::scenario::render_value(k, val));
    }
    s
}

/// Betti table, regularity and the Gröbner basis in the requested order.
pub fn betti(ideal: &Ideal, order: OrderKind, dump: bool) -> Result<Value> {
    let ordered = ideal.with_order(MonomialOrder::new(order, ideal.nvars()));
    let sf = SyzygyForms::new(ideal);
    let table = sf.resolution().betti()?;
    let mut v = json!({
        "betti": betti_json(&table)["betti"],
        "regularity": table.regularity(),
        "order": order,
        "groebner_basis": ordered.groebner_basis().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "table": table.to_string(),
    });
    if dump {
        v["resolution"] = json!(sf.resolution().dump());
    }
    Ok(v)
}

pub fn betti_text(v: &Value) -> String {
    let mut s = v["table"].as_str().unwrap_or("").to_string();
    s.push_str(&format!("regularity: {}\n", v["regularity"]));
    s.push_str(&format!("Gröbner basis ({}):\n", v["order"].as_str().unwrap_or("")));
    for g in v["groebner_basis"].as_array().into_iter().flatten() {
        s.push_str(&format!("  {}\n", g.as_str().unwrap_or("")));
    }
    if let Some(r) = v.get("resolution").and_then(Value::as_str) {
        s.push_str(r);
    }
    s
}

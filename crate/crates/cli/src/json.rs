//! JSON interchange for algebras, tensor elements, series, groups and reports.
//!
//! Rationals are `"p/q"` strings. A monomial is either a list of factors
//! (`["t", "u^2"]`, with `["1"]` or `[]` for the unit) or an exponent
//! vector (`[1, 2]`). A tensor term is `[m1, ..., mk, "p/q"]`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use fgl_core::formal_group::{AxiomReport, FormalGroupLaw};
use fgl_core::hopf::{AlgebraSpec, CoproductSpec, Generator, HopfAlgebra, Monomial, TensorElement};
use fgl_core::parse::parse_series;
use fgl_core::series::{Precision, Series};
use fgl_core::Rational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: u32,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct AlgebraJson {
    pub generators: Vec<GeneratorJson>,
    pub degree_bound: u32,
    #[serde(default)]
    pub coproduct: BTreeMap<String, Value>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: Vec<Value>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SeriesJson {
    pub variables: Vec<String>,
    pub order: u32,
    pub arity: usize,
    /// `"complete"` or the order through which the series is exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<Value>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GroupJson {
    pub hopf: Value,
    pub order: u32,
    /// A series object or an inline expression in `X`, `Y`.
    pub series: Value,
}

#[derive(Serialize, Clone, Debug)]
pub struct ViolationJson {
    pub axiom: String,
    pub defect: Value,
}

#[derive(Serialize, Clone, Debug)]
pub struct ReportJson {
    pub pass: bool,
    pub violations: Vec<ViolationJson>,
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_fraction_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|e| anyhow!("bad rational {s:?}: {e}")),
        Value::Number(n) => n
            .as_i64()
            .map(Rational::from_integer)
            .ok_or_else(|| anyhow!("bad rational {n}: only integers may be given as numbers")),
        other => bail!("bad rational {other}"),
    }
}

fn monomial_to_json(alg: &HopfAlgebra, m: &Monomial) -> Value {
    if m.is_one() {
        return Value::Array(vec![Value::String("1".into())]);
    }
    let factors = alg
        .generators()
        .iter()
        .zip(m.exponents())
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| {
            Value::String(if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
        })
        .collect();
    Value::Array(factors)
}

fn monomial_from_json(names: &[String], v: &Value) -> Result<Monomial> {
    let items = v.as_array().ok_or_else(|| anyhow!("monomial must be a list, got {v}"))?;
    let mut exps = vec![0u32; names.len()];
    if !items.is_empty() && items.iter().all(Value::is_u64) {
        if items.len() != names.len() {
            bail!("exponent vector {v} has {} entries for {} generators", items.len(), names.len());
        }
        for (e, item) in exps.iter_mut().zip(items) {
            *e = u32::try_from(item.as_u64().unwrap()).context("exponent too large")?;
        }
        return Ok(Monomial::new(exps));
    }
    for item in items {
        let s = item.as_str().ok_or_else(|| anyhow!("monomial factor must be a string, got {item}"))?;
        let s = s.trim();
        if s == "1" {
            continue;
        }
        let (name, power) = match s.split_once('^') {
            Some((n, p)) => (n.trim(), p.trim().parse::<u32>().with_context(|| format!("bad exponent in {s:?}"))?),
            None => (s, 1),
        };
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| anyhow!("unknown generator {name:?}"))?;
        exps[i] = exps[i].checked_add(power).ok_or_else(|| anyhow!("exponent too large in {s:?}"))?;
    }
    Ok(Monomial::new(exps))
}

fn tensor_term_to_json(alg: &HopfAlgebra, monomials: &[&Monomial], r: &Rational) -> Value {
    let mut parts: Vec<Value> = monomials.iter().map(|m| monomial_to_json(alg, m)).collect();
    parts.push(rational_to_json(r));
    Value::Array(parts)
}

fn tensor_term_from_json(names: &[String], arity: usize, v: &Value) -> Result<(Vec<Monomial>, Rational)> {
    let parts = v.as_array().ok_or_else(|| anyhow!("tensor term must be a list, got {v}"))?;
    if parts.len() != arity + 1 {
        bail!("tensor term {v} should have {arity} monomials and a coefficient");
    }
    let monomials =
        parts[..arity].iter().map(|m| monomial_from_json(names, m)).collect::<Result<Vec<_>>>()?;
    Ok((monomials, rational_from_json(&parts[arity])?))
}

fn generator_names(alg: &HopfAlgebra) -> Vec<String> {
    alg.generators().iter().map(|g| g.name.clone()).collect()
}

pub fn tensor_to_json(t: &TensorElement) -> Value {
    let alg = t.algebra();
    Value::Array(t.terms().map(|(ms, r)| tensor_term_to_json(alg, &ms, r)).collect())
}

pub fn tensor_from_json(alg: &Arc<HopfAlgebra>, arity: usize, v: &Value) -> Result<TensorElement> {
    let names = generator_names(alg);
    let items = v.as_array().ok_or_else(|| anyhow!("tensor element must be a list of terms"))?;
    let terms = items
        .iter()
        .map(|t| tensor_term_from_json(&names, arity, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(TensorElement::from_monomials(alg, arity, terms)?)
}

impl AlgebraJson {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        // Build without checks so that the monomial names can be rendered.
        let alg = spec.build_unchecked()?;
        let mut coproduct = BTreeMap::new();
        for (g, cp) in spec.generators.iter().zip(&spec.coproduct) {
            let v = match cp {
                CoproductSpec::Primitive => Value::String("primitive".into()),
                CoproductSpec::Terms(terms) => Value::Array(
                    terms.iter().map(|(l, r, c)| tensor_term_to_json(&alg, &[l, r], c)).collect(),
                ),
            };
            coproduct.insert(g.name.clone(), v);
        }
        Ok(AlgebraJson {
            generators: spec
                .generators
                .iter()
                .map(|g| GeneratorJson { name: g.name.clone(), degree: g.degree })
                .collect(),
            degree_bound: spec.degree_bound,
            coproduct,
        })
    }

    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        for key in self.coproduct.keys() {
            if !names.contains(key) {
                bail!("coproduct given for unknown generator {key:?}");
            }
        }
        let mut coproduct = Vec::new();
        for name in &names {
            let cp = match self.coproduct.get(name) {
                None => bail!("no coproduct given for generator {name:?}"),
                Some(Value::String(s)) if s == "primitive" => CoproductSpec::Primitive,
                Some(Value::Array(terms)) => CoproductSpec::Terms(
                    terms
                        .iter()
                        .map(|t| {
                            let (mut ms, r) = tensor_term_from_json(&names, 2, t)?;
                            let right = ms.pop().unwrap();
                            let left = ms.pop().unwrap();
                            Ok((left, right, r))
                        })
                        .collect::<Result<Vec<_>>>()?,
                ),
                Some(other) => bail!("bad coproduct for {name:?}: {other}"),
            };
            coproduct.push(cp);
        }
        Ok(AlgebraSpec {
            generators: self.generators.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect(),
            degree_bound: self.degree_bound,
            coproduct,
        })
    }
}

pub fn default_variables(vars: usize) -> Vec<String> {
    let names: &[&str] = match vars {
        1 => &["x"],
        2 => &["X", "Y"],
        _ => &["X", "Y", "Z"],
    };
    names.iter().map(|s| s.to_string()).collect()
}

pub fn series_to_json(s: &Series) -> SeriesJson {
    let precision = match s.precision() {
        Precision::Complete => Value::String("complete".into()),
        Precision::Through(n) => Value::from(n),
    };
    SeriesJson {
        variables: default_variables(s.vars()),
        order: s.order(),
        arity: s.arity(),
        precision: Some(precision),
        terms: s
            .terms()
            .into_iter()
            .map(|(exp, c)| {
                let coeff = match tensor_to_json(&c) {
                    Value::Array(items) => items,
                    _ => unreachable!(),
                };
                TermJson { exp, coeff }
            })
            .collect(),
    }
}

pub fn series_from_json(alg: &Arc<HopfAlgebra>, j: &SeriesJson) -> Result<Series> {
    let vars = j.variables.len();
    if !(1..=3).contains(&vars) {
        bail!("a series has 1 to 3 variables, got {vars}");
    }
    let precision = match &j.precision {
        None => Precision::Complete,
        Some(Value::String(s)) if s == "complete" => Precision::Complete,
        Some(Value::Number(n)) => {
            Precision::Through(n.as_i64().ok_or_else(|| anyhow!("bad precision {n}"))?)
        }
        Some(other) => bail!("bad precision {other}"),
    };
    let mut terms = Vec::new();
    for t in &j.terms {
        if t.exp.len() != vars {
            bail!("exponent {:?} does not match {vars} variables", t.exp);
        }
        let c = tensor_from_json(alg, j.arity, &Value::Array(t.coeff.clone()))?;
        terms.push((t.exp.clone(), c));
    }
    Ok(Series::from_terms(alg, j.arity, vars, j.order, precision, terms)?)
}

/// A series given either as a JSON object or as an inline expression.
pub fn series_from_value(
    alg: &Arc<HopfAlgebra>,
    arity: usize,
    vars: usize,
    order: u32,
    v: &Value,
) -> Result<Series> {
    let s = match v {
        Value::String(src) => {
            let names = default_variables(vars);
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            parse_series(alg, arity, &names, order, src)?
        }
        other => {
            let j: SeriesJson = serde_json::from_value(other.clone()).context("bad series object")?;
            series_from_json(alg, &j)?
        }
    };
    if s.arity() != arity || s.vars() != vars {
        bail!("expected a series in {vars} variable(s) over H^⊗{arity}");
    }
    Ok(s)
}

/// Resolves the `hopf` field of a group file: an inline description, a
/// builtin name or a path relative to `base`.
pub fn algebra_from_value(v: &Value, base: Option<&Path>, bound: Option<u32>) -> Result<AlgebraSpec> {
    match v {
        Value::String(s) => crate::load_algebra_spec(s, base, bound),
        other => {
            let j: AlgebraJson = serde_json::from_value(other.clone()).context("bad algebra description")?;
            let mut spec = j.to_spec()?;
            if let Some(d) = bound {
                spec.degree_bound = d;
            }
            Ok(spec)
        }
    }
}

pub fn group_to_json(spec: &AlgebraSpec, law: &FormalGroupLaw) -> Result<GroupJson> {
    Ok(GroupJson {
        hopf: serde_json::to_value(AlgebraJson::from_spec(spec)?)?,
        order: law.order(),
        series: serde_json::to_value(series_to_json(law.series()))?,
    })
}

pub fn axiom_report_to_json(report: &AxiomReport) -> ReportJson {
    ReportJson {
        pass: report.passed(),
        violations: report
            .defects
            .iter()
            .map(|d| ViolationJson {
                axiom: d.axiom.name().into(),
                defect: serde_json::to_value(series_to_json(&d.defect)).expect("serializable"),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt() -> Arc<HopfAlgebra> {
        Arc::new(AlgebraSpec::primitive(&[("t", 1)], 6).build().unwrap())
    }

    #[test]
    fn rationals() {
        let r = rational_from_json(&Value::from("-6/4")).unwrap();
        assert_eq!(rational_to_json(&r), Value::from("-3/2"));
        assert_eq!(rational_from_json(&Value::from(5)).unwrap(), Rational::from_integer(5));
        assert!(rational_from_json(&Value::from(0.5)).is_err());
        assert!(rational_from_json(&Value::from("1/0")).is_err());
    }

    #[test]
    fn monomial_forms_agree() {
        let names = vec!["t".to_string(), "u".to_string()];
        let a = monomial_from_json(&names, &serde_json::json!(["t^2", "u"])).unwrap();
        let b = monomial_from_json(&names, &serde_json::json!([2, 1])).unwrap();
        assert_eq!(a, b);
        assert!(monomial_from_json(&names, &serde_json::json!(["1"])).unwrap().is_one());
        assert!(monomial_from_json(&names, &serde_json::json!([])).unwrap().is_one());
        assert!(monomial_from_json(&names, &serde_json::json!(["v"])).is_err());
        assert!(monomial_from_json(&names, &serde_json::json!([1])).is_err());
        assert!(monomial_from_json(&names, &serde_json::json!(["t^4294967295", "t"])).is_err());
    }

    #[test]
    fn algebra_description() {
        let text = r#"{ "generators": [{"name": "t", "degree": 2}], "degree_bound": 6,
            "coproduct": {"t": [[["t"],["1"],"1"], [["1"],["t"],"1"]]} }"#;
        let j: AlgebraJson = serde_json::from_str(text).unwrap();
        let spec = j.to_spec().unwrap();
        let alg = spec.build().unwrap();
        assert_eq!(alg.dimension(), 4);
        let back = AlgebraJson::from_spec(&spec).unwrap();
        assert_eq!(back.to_spec().unwrap(), spec);

        let prim: AlgebraJson = serde_json::from_str(
            r#"{ "generators": [{"name": "t", "degree": 2}], "degree_bound": 6, "coproduct": {"t": "primitive"} }"#,
        )
        .unwrap();
        assert_eq!(prim.to_spec().unwrap().build().unwrap().dimension(), 4);

        let missing: AlgebraJson =
            serde_json::from_str(r#"{ "generators": [{"name": "t", "degree": 2}], "degree_bound": 6 }"#).unwrap();
        assert!(missing.to_spec().is_err());
    }

    #[test]
    fn precision_defaults_to_complete() {
        let alg = qt();
        let j: SeriesJson = serde_json::from_str(
            r#"{ "variables": ["X","Y"], "order": 3, "arity": 2,
                 "terms": [{"exp": [1,1], "coeff": [[["t"],["t"],"2/1"]]}] }"#,
        )
        .unwrap();
        let s = series_from_json(&alg, &j).unwrap();
        assert!(s.precision().is_complete());
        assert_eq!(s.to_string(), "2(t⊗t)·X·Y");
        let j2 = series_to_json(&s);
        assert_eq!(j2.precision, Some(Value::from("complete")));
        assert_eq!(series_from_json(&alg, &j2).unwrap(), s);
    }

    #[test]
    fn inline_series_and_shape_checks() {
        let alg = qt();
        let s = series_from_value(&alg, 2, 2, 4, &Value::from("t (x) t + X + Y")).unwrap();
        assert_eq!(s.order(), 4);
        assert!(series_from_value(&alg, 1, 1, 4, &Value::from("X + Y")).is_err());
        assert!(series_from_value(&alg, 2, 2, 4, &serde_json::json!({"terms": 3})).is_err());
    }

    #[test]
    fn tensor_terms_checked() {
        let alg = qt();
        let c = tensor_from_json(&alg, 2, &serde_json::json!([[["t"], ["t^2"], "1"]])).unwrap();
        assert_eq!(tensor_to_json(&c), serde_json::json!([[["t"], ["t^2"], "1/1"]]));
        assert!(tensor_from_json(&alg, 2, &serde_json::json!([[["t"], "1"]])).is_err());
        // Terms above the degree bound are truncated away.
        assert!(tensor_from_json(&alg, 2, &serde_json::json!([[["t^9"], ["1"], "1"]])).unwrap().is_zero());
    }
}

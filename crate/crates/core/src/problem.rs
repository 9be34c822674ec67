//! Problem files: TOML documents carrying a shift system, named tuples,
//! vertex configurations and equivalence data. Polynomials are expression
//! strings in the [`parse_poly`] grammar; rationals are integers or strings
//! such as `"-3/2"`, never floats.
//!
//! ```toml
//! alpha = [[-1, 1, 0], [0, -1, 1]]
//!
//! [tuples.sym]
//! entries = ["u1 - 1/2", "(u1 - 1/2)*(u2 - 1/2)", "u2 - 1/2"]
//!
//! [configs.piece]
//! generator = "u1"
//! pair = [1, 2]
//! edges = [[1, 0, 1], [0, 1, 1]]
//! ```
//!
//! Index pairs are one-based in files and zero-based in memory.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consistency::SolutionTuple;
use crate::equivalence::AutomorphismSpec;
use crate::factored::FactoredPoly;
use crate::matrix::Matrix;
use crate::parse::{parse_poly, parse_rational};
use crate::poly::{fmt_rational, int, Poly, Rational};
use crate::shift::ShiftSystem;
use crate::vertex::{ClassificationRecord, VertexConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("malformed problem file: {0}")]
    Toml(String),
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, message: impl ToString) -> ProblemError {
    ProblemError::Invalid { context: context.into(), message: message.to_string() }
}

/// A rational written as a TOML integer or a string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawNum {
    Int(i64),
    Str(String),
}

impl RawNum {
    fn from_rational(r: &Rational) -> Self {
        match (r.is_integer(), num_traits::ToPrimitive::to_i64(&r.to_integer())) {
            (true, Some(v)) => RawNum::Int(v),
            _ => RawNum::Str(fmt_rational(r)),
        }
    }

    fn to_rational(&self, context: &str) -> Result<Rational, ProblemError> {
        match self {
            RawNum::Int(v) => Ok(int(*v)),
            RawNum::Str(s) => parse_rational(s).map_err(|e| invalid(context, e)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    #[default]
    Sym,
    Nonsym,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFactor {
    pub f: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

fn is_one(v: &u32) -> bool {
    *v == 1
}

/// One factored entry: a plain list of monic factors (repeats give
/// multiplicities), or a table with a unit and explicit multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawFactored {
    List(Vec<String>),
    Full {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<RawNum>,
        #[serde(default)]
        factors: Vec<RawFactor>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTuple {
    #[serde(default)]
    pub form: Form,
    /// Overrides the file-level `alpha` for this tuple.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<RawNum>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factored: Option<Vec<RawFactored>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub generator: String,
    pub pair: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub edges: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEquiv {
    pub a: String,
    pub b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forward: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<RawNum>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub search: bool,
}

/// The file as written, before any polynomial is parsed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawProblem {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<RawNum>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<RawNum>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tuples: BTreeMap<String, RawTuple>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub configs: BTreeMap<String, RawConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equiv: Option<RawEquiv>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedTuple {
    pub form: Form,
    pub tuple: SolutionTuple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivMap {
    Explicit(AutomorphismSpec),
    Linear(Matrix),
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivSpec {
    pub a: String,
    pub b: String,
    pub map: EquivMap,
}

/// A parsed and checked problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub sys: Option<ShiftSystem>,
    pub beta: Option<Matrix>,
    pub tuples: BTreeMap<String, NamedTuple>,
    pub configs: BTreeMap<String, VertexConfig>,
    pub equiv: Option<EquivSpec>,
}

fn matrix(rows: &[Vec<RawNum>], context: &str) -> Result<Matrix, ProblemError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_rational(context)).collect())
        .collect::<Result<Vec<Vec<Rational>>, _>>()?;
    Matrix::from_rows(rows).map_err(|e| invalid(context, e))
}

fn raw_matrix(a: &Matrix) -> Vec<Vec<RawNum>> {
    a.to_rows().iter().map(|r| r.iter().map(RawNum::from_rational).collect()).collect()
}

fn poly(text: &str, m: usize, context: &str) -> Result<Poly, ProblemError> {
    parse_poly(text, m).map_err(|e| invalid(context, format!("{e} in {text:?}")))
}

fn pair(p: [usize; 2], context: &str) -> Result<(usize, usize), ProblemError> {
    if p[0] == 0 || p[1] == 0 {
        return Err(invalid(context, "pair indices are one-based"));
    }
    Ok((p[0] - 1, p[1] - 1))
}

impl Problem {
    pub fn from_toml(text: &str) -> Result<Problem, ProblemError> {
        let raw: RawProblem = toml::from_str(text).map_err(|e| ProblemError::Toml(e.to_string()))?;
        Problem::from_raw(&raw)
    }

    pub fn from_raw(raw: &RawProblem) -> Result<Problem, ProblemError> {
        let beta = raw.beta.as_ref().map(|b| matrix(b, "beta")).transpose()?;
        let alpha = match (&raw.alpha, &beta) {
            (Some(a), _) => Some(matrix(a, "alpha")?),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        };
        let sys = alpha.map(|a| ShiftSystem::new(a).map_err(|e| invalid("alpha", e))).transpose()?;
        if let Some(s) = &sys {
            if raw.m.is_some_and(|m| m != s.m()) || raw.n.is_some_and(|n| n != s.n()) {
                return Err(invalid(
                    "alpha",
                    format!("declared m = {:?}, n = {:?} but alpha is {}x{}", raw.m, raw.n, s.m(), s.n()),
                ));
            }
        }

        let mut tuples = BTreeMap::new();
        for (name, t) in &raw.tuples {
            let ctx = format!("tuple {name}");
            let tsys = match (&t.alpha, &sys) {
                (Some(a), _) => ShiftSystem::new(matrix(a, &ctx)?).map_err(|e| invalid(&ctx, e))?,
                (None, Some(s)) => s.clone(),
                (None, None) => return Err(invalid(&ctx, "no alpha given")),
            };
            let tuple = load_tuple(t, tsys, &ctx)?;
            tuples.insert(name.clone(), NamedTuple { form: t.form, tuple });
        }

        let mut configs = BTreeMap::new();
        for (name, c) in &raw.configs {
            let ctx = format!("config {name}");
            let s = sys.as_ref().ok_or_else(|| invalid(&ctx, "no alpha given"))?;
            configs.insert(name.clone(), load_config(c, s, &ctx)?);
        }

        let equiv = raw.equiv.as_ref().map(|e| load_equiv(e, &tuples)).transpose()?;
        Ok(Problem { sys, beta, tuples, configs, equiv })
    }

    pub fn system(&self) -> Result<&ShiftSystem, ProblemError> {
        self.sys.as_ref().ok_or_else(|| invalid("problem", "no alpha given"))
    }

    /// The named tuple, or the only one if `name` is `None`.
    pub fn tuple(&self, name: Option<&str>) -> Result<&NamedTuple, ProblemError> {
        pick(&self.tuples, name, "tuple")
    }

    /// The named configuration, or the only one if `name` is `None`.
    pub fn config(&self, name: Option<&str>) -> Result<&VertexConfig, ProblemError> {
        pick(&self.configs, name, "config")
    }
}

fn pick<'a, T>(map: &'a BTreeMap<String, T>, name: Option<&str>, what: &str) -> Result<&'a T, ProblemError> {
    match name {
        Some(n) => map.get(n).ok_or_else(|| invalid(what, format!("no {what} named {n:?}"))),
        None if map.len() == 1 => Ok(map.values().next().expect("one entry")),
        None if map.is_empty() => Err(invalid(what, format!("file has no {what}s"))),
        None => Err(invalid(
            what,
            format!(
                "file has several {what}s ({}); pick one by name",
                map.keys().cloned().collect::<Vec<_>>().join(", ")
            ),
        )),
    }
}

fn load_tuple(t: &RawTuple, sys: ShiftSystem, ctx: &str) -> Result<SolutionTuple, ProblemError> {
    let m = sys.m();
    match (&t.entries, &t.factored) {
        (Some(entries), None) => {
            let polys = entries.iter().map(|e| poly(e, m, ctx)).collect::<Result<Vec<_>, _>>()?;
            SolutionTuple::factored_from_polys(sys.clone(), polys.clone())
                .or_else(|_| SolutionTuple::from_polys(sys, polys))
                .map_err(|e| invalid(ctx, e))
        }
        (None, Some(entries)) => {
            let entries = entries
                .iter()
                .map(|e| {
                    let (unit, factors) = match e {
                        RawFactored::List(fs) => (
                            int(1),
                            fs.iter().map(|f| Ok((poly(f, m, ctx)?, 1))).collect::<Result<Vec<_>, ProblemError>>()?,
                        ),
                        RawFactored::Full { unit, factors } => (
                            unit.as_ref().map(|u| u.to_rational(ctx)).transpose()?.unwrap_or_else(|| int(1)),
                            factors
                                .iter()
                                .map(|f| Ok((poly(&f.f, m, ctx)?, f.mult)))
                                .collect::<Result<Vec<_>, ProblemError>>()?,
                        ),
                    };
                    FactoredPoly::new(m, unit, factors).map_err(|e| invalid(ctx, e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            SolutionTuple::new(sys, entries).map_err(|e| invalid(ctx, e))
        }
        _ => Err(invalid(ctx, "give exactly one of `entries` and `factored`")),
    }
}

fn load_config(c: &RawConfig, sys: &ShiftSystem, ctx: &str) -> Result<VertexConfig, ProblemError> {
    let generator = poly(&c.generator, sys.m(), ctx)?;
    let p = pair(c.pair, ctx)?;
    let edges = c
        .edges
        .iter()
        .map(|&[x, y, mult]| {
            u32::try_from(mult).map(|m| ((x, y), m)).map_err(|_| invalid(ctx, format!("bad multiplicity {mult}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    match &c.lattice {
        Some(l) => VertexConfig::with_lattice(sys, generator, p, l, edges),
        None => VertexConfig::new(sys, generator, p, edges),
    }
    .map_err(|e| invalid(ctx, e))
}

fn load_equiv(e: &RawEquiv, tuples: &BTreeMap<String, NamedTuple>) -> Result<EquivSpec, ProblemError> {
    let ctx = "equiv";
    let ta = tuples.get(&e.a).ok_or_else(|| invalid(ctx, format!("no tuple named {:?}", e.a)))?;
    if !tuples.contains_key(&e.b) {
        return Err(invalid(ctx, format!("no tuple named {:?}", e.b)));
    }
    let m = ta.tuple.sys().m();
    let map = match (&e.forward, &e.inverse, &e.g, e.search) {
        (Some(f), Some(i), None, false) => {
            let f = f.iter().map(|s| poly(s, m, ctx)).collect::<Result<Vec<_>, _>>()?;
            let i = i.iter().map(|s| poly(s, m, ctx)).collect::<Result<Vec<_>, _>>()?;
            EquivMap::Explicit(AutomorphismSpec::new(f, i).map_err(|err| invalid(ctx, err))?)
        }
        (None, None, Some(g), false) => EquivMap::Linear(matrix(g, ctx)?),
        (None, None, None, true) => EquivMap::Search,
        _ => return Err(invalid(ctx, "give `forward` and `inverse`, or `g`, or `search = true`")),
    };
    Ok(EquivSpec { a: e.a.clone(), b: e.b.clone(), map })
}

/// Raw form of a tuple, factored.
pub fn raw_tuple(t: &SolutionTuple, form: Form, alpha: bool) -> RawTuple {
    RawTuple {
        form,
        alpha: alpha.then(|| raw_matrix(t.sys().alpha())),
        entries: None,
        factored: Some(
            t.entries()
                .iter()
                .map(|e| {
                    if *e.unit() == int(1) {
                        RawFactored::List(
                            e.factors()
                                .iter()
                                .flat_map(|(f, mult)| std::iter::repeat_n(f.to_string(), *mult as usize))
                                .collect(),
                        )
                    } else {
                        RawFactored::Full {
                            unit: Some(RawNum::from_rational(e.unit())),
                            factors: e
                                .factors()
                                .iter()
                                .map(|(f, mult)| RawFactor { f: f.to_string(), mult: *mult })
                                .collect(),
                        }
                    }
                })
                .collect(),
        ),
    }
}

pub fn raw_config(c: &VertexConfig) -> RawConfig {
    let (i, j) = c.pair();
    RawConfig {
        generator: c.generator().to_string(),
        pair: [i + 1, j + 1],
        lattice: Some(c.lattice().basis().to_vec()),
        edges: c.edges().iter().map(|(&(x, y), &mult)| [x, y, i64::from(mult)]).collect(),
    }
}

/// A file holding only the system of `sys`.
pub fn raw_system(sys: &ShiftSystem) -> RawProblem {
    RawProblem { m: Some(sys.m()), n: Some(sys.n()), alpha: Some(raw_matrix(sys.alpha())), ..Default::default() }
}

/// Configurations `piece1`, `piece2`, ... of a classification.
pub fn raw_classification(sys: &ShiftSystem, record: &ClassificationRecord) -> RawProblem {
    let mut raw = raw_system(sys);
    for (k, e) in record.entries.iter().enumerate() {
        raw.configs.insert(format!("piece{}", k + 1), raw_config(&e.config));
    }
    raw
}

pub fn to_toml(raw: &RawProblem) -> String {
    toml::to_string(raw).expect("problem files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::symmetrize;
    use crate::vertex::classify;

    const GL3: &str = r#"
alpha = [[-1, 1, 0], [0, -1, 1]]

[tuples.t]
form = "nonsym"
entries = ["u1 - 1", "u1*(u2 - 1)", "u2"]

[tuples.f]
factored = [
  ["u1 - 1/2"],
  { unit = "2", factors = [{ f = "u1 - 1/2" }, { f = "u2 - 1/2", mult = 1 }] },
  ["u2 - 1/2", "u2 - 1/2"],
]

[configs.c]
generator = "u1"
pair = [1, 2]
lattice = [[1, 1]]
edges = [[1, 0, 1]]
"#;

    #[test]
    fn loads() {
        let p = Problem::from_toml(GL3).unwrap();
        let t = p.tuple(Some("t")).unwrap();
        assert_eq!(t.form, Form::Nonsym);
        assert_eq!(t.tuple.entry(1).factors().len(), 2);
        assert_eq!(p.tuple(Some("f")).unwrap().tuple.entry(1).unit(), &int(2));
        assert_eq!(p.tuple(Some("f")).unwrap().tuple.entry(2).factors()[0].1, 2);
        assert_eq!(p.config(None).unwrap().pair(), (0, 1));
        assert!(p.tuple(None).is_err());
    }

    #[test]
    fn rejects_floats_and_bad_polys() {
        assert!(matches!(Problem::from_toml("alpha = [[0.5]]"), Err(ProblemError::Toml(_))));
        let bad = "alpha = [[1]]\n[tuples.x]\nentries = [\"u1 u1\"]\n";
        assert!(matches!(Problem::from_toml(bad), Err(ProblemError::Invalid { .. })));
        let wrong = "alpha = [[1, 2]]\nm = 2\n";
        assert!(Problem::from_toml(wrong).is_err());
    }

    #[test]
    fn round_trips() {
        let p = Problem::from_toml(GL3).unwrap();
        let t = &p.tuple(Some("t")).unwrap().tuple;
        let sym = symmetrize(t);
        let mut raw = raw_system(t.sys());
        raw.tuples.insert("sym".into(), raw_tuple(&sym, Form::Sym, false));
        let back = Problem::from_toml(&to_toml(&raw)).unwrap();
        assert_eq!(back.tuple(None).unwrap().tuple, sym);

        let record = classify(&sym).unwrap();
        let raw = raw_classification(sym.sys(), &record);
        let back = Problem::from_toml(&to_toml(&raw)).unwrap();
        assert_eq!(back.configs.len(), 2);
        assert_eq!(back.configs["piece2"], record.entries[1].config);
    }

    #[test]
    fn beta_only() {
        let p = Problem::from_toml("beta = [[2, -2]]").unwrap();
        assert_eq!(p.system().unwrap().alpha(), &Matrix::from_i64(&[&[2, -2]]));
    }
}

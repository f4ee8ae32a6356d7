//! The JSON problem file.

use std::sync::Arc;

use serde::Deserialize;

use crate::deformation::{BetaSpec, DeformedP, Handle, InvariantPoly, Weighted};
use crate::engine::{Marking, PairingSpec, SummationMode, SummationSpec};
use crate::error::{Error, Result};
use crate::lie::{AlcovePoint, Family, RootSystem, DEFAULT_WEYL_BUDGET};
use crate::poly::{parse_polynomial, PolyContext, Polynomial};
use crate::rational::{parse_rational, Q};

/// A rational given as a JSON string (`"p/q"`, `"3"`, `"0.25"`) or integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Text(String),
    Int(i64),
}

impl Rational {
    fn parse(&self, at: &str) -> Result<Q> {
        match self {
            Rational::Int(n) => Ok(Q::from_integer(*n)),
            Rational::Text(s) => parse_rational(s).map_err(|e| Error::Input(format!("{at}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub family: String,
    pub rank: usize,
    #[serde(default)]
    pub scale: Option<Rational>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkingSpec {
    pub mu: Vec<Rational>,
    #[serde(rename = "Q", default)]
    pub q: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPoly {
    pub name: String,
    pub poly: String,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HandleSpec {
    #[serde(default)]
    pub eps1: Vec<NamedPoly>,
    #[serde(default)]
    pub eps2: Vec<NamedPoly>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaFile {
    #[serde(default)]
    pub sigmas: Vec<NamedPoly>,
    #[serde(default)]
    pub handles: Vec<HandleSpec>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummationFile {
    pub mode: Option<String>,
    pub radius: Option<f64>,
    pub epsilons: Option<Vec<f64>>,
    pub tolerance: Option<f64>,
    pub precision: Option<String>,
    pub accelerate: Option<bool>,
    pub max_weights: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub group: GroupSpec,
    pub genus: usize,
    #[serde(default)]
    pub markings: Vec<MarkingSpec>,
    #[serde(default)]
    pub deformation: Vec<NamedPoly>,
    #[serde(default)]
    pub beta: BetaFile,
    pub truncation: Option<u32>,
    #[serde(default)]
    pub summation: SummationFile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    DoubleDouble,
}

impl Precision {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "double" | "f64" => Ok(Precision::Double),
            "double-double" | "dd" => Ok(Precision::DoubleDouble),
            _ => Err(Error::Input(format!("unknown precision {s:?} (use double or double-double)"))),
        }
    }
}

/// Parses a problem file; errors carry the JSON path or line and column.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Input(format!("problem file at {path} (line {}, column {}): {inner}", inner.line(), inner.column()))
    })
}

/// Builds the root system, refusing E8 unless explicitly allowed.
pub fn build_group(g: &GroupSpec, allow_e8: bool) -> Result<RootSystem> {
    let scale = match &g.scale {
        Some(s) => s.parse("group.scale")?,
        None => Q::from_integer(1),
    };
    if scale <= Q::from_integer(0) {
        return Err(Error::Input("group.scale must be positive".into()));
    }
    let family: Family = g.family.parse().map_err(|e| Error::Input(format!("group.type: {e}")))?;
    if family == Family::E && g.rank == 8 && !allow_e8 {
        return Err(Error::Input("E8 has a Weyl group of order 696729600; pass --allow-e8 to proceed".into()));
    }
    RootSystem::build(&g.family, g.rank, scale).map_err(|e| Error::Input(format!("group: {e}")))
}

pub fn weyl_budget(allow_e8: bool) -> u64 {
    if allow_e8 {
        u64::MAX
    } else {
        DEFAULT_WEYL_BUDGET
    }
}

fn poly(src: &str, ctx: &PolyContext, at: &str) -> Result<Polynomial> {
    parse_polynomial(src, ctx).map_err(|e| Error::Input(format!("{at}: {e}")))
}

fn weighted(rs: &RootSystem, ctx: &PolyContext, list: &[NamedPoly], at: &str) -> Result<Vec<Weighted>> {
    list.iter()
        .enumerate()
        .map(|(i, n)| {
            let at = format!("{at}[{i}].poly");
            let p = InvariantPoly::full(rs, poly(&n.poly, ctx, &at)?).map_err(|e| Error::Input(format!("{at}: {e}")))?;
            Ok(Weighted::new(&n.name, p))
        })
        .collect()
}

impl ProblemFile {
    pub fn precision(&self) -> Result<Precision> {
        self.summation.precision.as_deref().map(Precision::parse).unwrap_or(Ok(Precision::Double))
    }

    pub fn to_spec(&self, allow_e8: bool) -> Result<PairingSpec> {
        let rs = Arc::new(build_group(&self.group, allow_e8)?);
        let ctx = PolyContext::of(&rs);
        let budget = weyl_budget(allow_e8);
        let mut markings = Vec::with_capacity(self.markings.len());
        for (l, m) in self.markings.iter().enumerate() {
            let mu = m
                .mu
                .iter()
                .enumerate()
                .map(|(i, x)| x.parse(&format!("markings[{l}].mu[{i}]")))
                .collect::<Result<Vec<Q>>>()?;
            let at = format!("markings[{l}]");
            let point = AlcovePoint::new(&rs, mu).map_err(|e| Error::Input(format!("{at}.mu: {e}")))?;
            let q = poly(m.q.as_deref().unwrap_or("1"), &ctx, &format!("{at}.Q"))?;
            markings.push(Marking::new(&rs, point, q, budget).map_err(|e| Error::Input(format!("{at}: {e}")))?);
        }
        let terms = weighted(&rs, &ctx, &self.deformation, "deformation")?;
        let p = DeformedP::new(rs.clone(), terms.into_iter().map(|w| (w.name, w.poly)).collect())
            .map_err(|e| Error::Input(format!("deformation: {e}")))?;
        let beta = BetaSpec {
            sigmas: weighted(&rs, &ctx, &self.beta.sigmas, "beta.sigmas")?,
            handles: self
                .beta
                .handles
                .iter()
                .enumerate()
                .map(|(j, h)| {
                    Ok(Handle {
                        eps1: weighted(&rs, &ctx, &h.eps1, &format!("beta.handles[{j}].eps1"))?,
                        eps2: weighted(&rs, &ctx, &h.eps2, &format!("beta.handles[{j}].eps2"))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let s = &self.summation;
        let mut summation = SummationSpec::default();
        summation.mode = match s.mode.as_deref() {
            None | Some("auto") => None,
            Some("truncate") => Some(SummationMode::Truncate),
            Some("convergence_factor") => Some(SummationMode::ConvergenceFactor),
            Some(m) => return Err(Error::Input(format!("summation.mode: unknown mode {m:?}"))),
        };
        if let Some(r) = s.radius {
            summation.radius = r;
        }
        if let Some(e) = &s.epsilons {
            summation.epsilons = e.clone();
        }
        if let Some(t) = s.tolerance {
            summation.tolerance = t;
        }
        if let Some(a) = s.accelerate {
            summation.accelerate = a;
        }
        if let Some(m) = s.max_weights {
            summation.max_weights = m;
        }
        let truncation = self.truncation.unwrap_or(crate::series::DEFAULT_TRUNCATION);
        PairingSpec::new(self.genus, markings, p, beta, truncation, summation).map_err(|e| Error::Input(e.to_string()))
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{make_family, FamilyName, FamilySpec};
use crate::error::{Error, Result};
use crate::geometry::{Curve3, GraphAxis, Metric, Rect, Surface};
use crate::jets::{parse_bivariate, parse_univariate, Expr, Interval, SmoothFn1};

/// Points per function used to validate declared domains.
const DOMAIN_SAMPLES: usize = 257;
/// Nodes per axis used to validate generic embeddings.
const EMBEDDING_SAMPLES: usize = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecKind {
    Translation,
    Homothetical,
    Generic,
    Family,
}

impl SpecKind {
    fn name(self) -> &'static str {
        match self {
            SpecKind::Translation => "translation",
            SpecKind::Homothetical => "homothetical",
            SpecKind::Generic => "generic",
            SpecKind::Family => "family",
        }
    }
}

/// JSON surface description. Function fields are S-expressions.
///
/// * `translation`: either `f1, f2, g1, g2` (graph normal form) or `alpha`,
///   `beta` as coordinate triples; `domain` required.
/// * `homothetical`: `f`, `g`, optional `axis` (`"z"` or `"x"`); `domain` required.
/// * `generic`: `embedding`, three expressions in `s` and `t`; `domain` required.
/// * `family`: `family`, optional `params` and `domain`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpecDoc {
    pub kind: SpecKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Metric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<GraphAxis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Rect>,
}

impl SurfaceSpecDoc {
    fn empty(kind: SpecKind) -> Self {
        Self {
            kind,
            metric: None,
            f: None,
            g: None,
            axis: None,
            f1: None,
            f2: None,
            g1: None,
            g2: None,
            alpha: None,
            beta: None,
            embedding: None,
            family: None,
            params: None,
            domain: None,
        }
    }

    pub fn from_family(spec: &FamilySpec, metric: Option<Metric>) -> Self {
        Self {
            metric,
            family: Some(spec.family),
            params: (!spec.params.is_empty()).then(|| spec.params.clone()),
            domain: spec.domain,
            ..Self::empty(SpecKind::Family)
        }
    }

    pub fn homothetical(f: &SmoothFn1, g: &SmoothFn1, axis: GraphAxis, metric: Metric) -> Self {
        Self {
            metric: Some(metric),
            f: Some(f.to_sexpr()),
            g: Some(g.to_sexpr()),
            axis: Some(axis),
            domain: Some(Rect::new(f.domain(), g.domain())),
            ..Self::empty(SpecKind::Homothetical)
        }
    }

    pub fn translation_normal(fns: [&SmoothFn1; 4], metric: Metric) -> Self {
        Self {
            metric: Some(metric),
            f1: Some(fns[0].to_sexpr()),
            f2: Some(fns[1].to_sexpr()),
            g1: Some(fns[2].to_sexpr()),
            g2: Some(fns[3].to_sexpr()),
            domain: Some(Rect::new(fns[0].domain(), fns[2].domain())),
            ..Self::empty(SpecKind::Translation)
        }
    }

    pub fn generic(embedding: &[Expr; 3], domain: Rect, metric: Metric) -> Self {
        Self {
            metric: Some(metric),
            embedding: Some(embedding.clone().map(|e| e.to_sexpr(&["s", "t"]))),
            domain: Some(domain),
            ..Self::empty(SpecKind::Generic)
        }
    }

    fn present_keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        let mut mark = |present: bool, key| {
            if present {
                keys.push(key)
            }
        };
        mark(self.f.is_some(), "f");
        mark(self.g.is_some(), "g");
        mark(self.axis.is_some(), "axis");
        mark(self.f1.is_some(), "f1");
        mark(self.f2.is_some(), "f2");
        mark(self.g1.is_some(), "g1");
        mark(self.g2.is_some(), "g2");
        mark(self.alpha.is_some(), "alpha");
        mark(self.beta.is_some(), "beta");
        mark(self.embedding.is_some(), "embedding");
        mark(self.family.is_some(), "family");
        mark(self.params.is_some(), "params");
        keys
    }

    fn check_allowed(&self, allowed: &[&str]) -> Result<()> {
        for key in self.present_keys() {
            if !allowed.contains(&key) {
                return Err(Error::spec(
                    key,
                    format!("not allowed for kind \"{}\"", self.kind.name()),
                ));
            }
        }
        Ok(())
    }

    fn domain(&self) -> Result<Rect> {
        self.domain
            .ok_or_else(|| Error::spec("domain", format!("required for kind \"{}\"", self.kind.name())))
    }

    /// Builds the surface and its ambient metric.
    pub fn build(&self) -> Result<(Surface, Metric)> {
        let metric = self.metric.unwrap_or_default();
        match self.kind {
            SpecKind::Family => {
                self.check_allowed(&["family", "params"])?;
                let family = self
                    .family
                    .ok_or_else(|| Error::spec("family", "required for kind \"family\""))?;
                let spec = FamilySpec {
                    family,
                    params: self.params.clone().unwrap_or_default(),
                    domain: self.domain,
                };
                Ok((make_family(&spec)?, self.metric.unwrap_or(family.metric())))
            }
            SpecKind::Homothetical => {
                self.check_allowed(&["f", "g", "axis"])?;
                let dom = self.domain()?;
                let f = univariate("f", self.f.as_deref(), dom.s)?;
                let g = univariate("g", self.g.as_deref(), dom.t)?;
                Ok((Surface::homothetical(f, g, self.axis.unwrap_or_default()), metric))
            }
            SpecKind::Translation => {
                let dom = self.domain()?;
                if self.alpha.is_some() || self.beta.is_some() {
                    self.check_allowed(&["alpha", "beta"])?;
                    let alpha = curve("alpha", self.alpha.as_ref(), dom.s)?;
                    let beta = curve("beta", self.beta.as_ref(), dom.t)?;
                    Ok((Surface::translation(alpha, beta), metric))
                } else {
                    self.check_allowed(&["f1", "f2", "g1", "g2"])?;
                    let f1 = univariate("f1", self.f1.as_deref(), dom.s)?;
                    let f2 = univariate("f2", self.f2.as_deref(), dom.s)?;
                    let g1 = univariate("g1", self.g1.as_deref(), dom.t)?;
                    let g2 = univariate("g2", self.g2.as_deref(), dom.t)?;
                    Ok((Surface::translation_normal(f1, f2, g1, g2)?, metric))
                }
            }
            SpecKind::Generic => {
                self.check_allowed(&["embedding"])?;
                let dom = self.domain()?;
                let texts = self
                    .embedding
                    .as_ref()
                    .ok_or_else(|| Error::spec("embedding", "required for kind \"generic\""))?;
                let mut exprs = Vec::with_capacity(3);
                for (i, text) in texts.iter().enumerate() {
                    exprs.push(parse_bivariate(text).map_err(|e| keyed(&format!("embedding[{i}]"), e))?);
                }
                let x: [Expr; 3] = exprs.try_into().expect("three expressions");
                let surface = Surface::generic(x, dom)?;
                surface.probe_domain(EMBEDDING_SAMPLES).map_err(|e| {
                    Error::spec(
                        "embedding",
                        format!("not evaluable on domain {:?}: {e}", dom.as_array()),
                    )
                })?;
                Ok((surface, metric))
            }
        }
    }
}

/// Attaches the offending key to an error.
fn keyed(key: &str, e: Error) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos,
            msg: format!("in `{key}`: {msg}"),
        },
        Error::Spec { detail, .. } => Error::spec(key, detail),
        other => Error::spec(key, other.to_string()),
    }
}

fn univariate(key: &str, text: Option<&str>, domain: Interval) -> Result<SmoothFn1> {
    let text = text.ok_or_else(|| Error::spec(key, "required"))?;
    let expr = parse_univariate(text).map_err(|e| keyed(key, e))?;
    let f = SmoothFn1::new(expr, domain).map_err(|e| keyed(key, e))?;
    f.probe_domain(DOMAIN_SAMPLES)
        .map_err(|e| Error::spec(key, format!("{text} is not evaluable on its domain {domain}: {e}")))?;
    Ok(f)
}

fn curve(key: &str, texts: Option<&[String; 3]>, domain: Interval) -> Result<Curve3> {
    let texts = texts.ok_or_else(|| Error::spec(key, "required"))?;
    let mut comps = Vec::with_capacity(3);
    for (i, text) in texts.iter().enumerate() {
        comps.push(univariate(&format!("{key}[{i}]"), Some(text), domain)?);
    }
    Curve3::from_fns(comps.try_into().expect("three components"))
}

/// Parses a JSON surface document. Errors name the offending key; JSON
/// syntax errors carry the byte offset.
pub fn parse_surface_spec(text: &str) -> Result<(Surface, Metric)> {
    parse_doc(text)?.build()
}

pub fn parse_doc(text: &str) -> Result<SurfaceSpecDoc> {
    serde_json::from_str(text).map_err(|e| json_error(text, &e))
}

/// Converts a serde error position (1-based line and column) into a byte offset.
pub(crate) fn json_error(text: &str, e: &serde_json::Error) -> Error {
    let pos = if e.line() == 0 {
        0
    } else {
        text.split_inclusive('\n')
            .take(e.line() - 1)
            .map(str::len)
            .sum::<usize>()
            + e.column().saturating_sub(1)
    };
    let msg = e.to_string();
    // Unknown-field messages name the key; surface it as a spec error.
    if let Some(rest) = msg.strip_prefix("unknown field `") {
        if let Some(key) = rest.split('`').next() {
            return Error::spec(key, "unknown key");
        }
    }
    Error::Parse { pos, msg }
}

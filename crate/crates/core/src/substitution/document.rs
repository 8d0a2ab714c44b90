//! Substitution spec documents.
//!
//! Canonical form is a JSON object:
//!
//! ```text
//! {"kind":"simple","alphas":[1,1]}
//! {"kind":"nonsimple","m":1,"p":1,"alphas":[2,1]}
//! ```
//!
//! The shorthand `simple:1,1` / `nonsimple:m=1,p=1:2,1` is accepted on the
//! command line.

use serde::{Deserialize, Serialize};

use super::{ParrySubstitution, SubstitutionKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SpecDocument {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    pub alphas: Vec<i64>,
}

impl From<ParrySubstitution> for SpecDocument {
    fn from(sub: ParrySubstitution) -> Self {
        let (m, p) = match sub.kind {
            SubstitutionKind::Simple => (None, None),
            SubstitutionKind::NonSimple => (Some(sub.m as i64), Some(sub.p as i64)),
        };
        SpecDocument {
            kind: match sub.kind {
                SubstitutionKind::Simple => "simple".into(),
                SubstitutionKind::NonSimple => "nonsimple".into(),
            },
            m,
            p,
            alphas: sub.alphas.iter().map(|&a| a as i64).collect(),
        }
    }
}

impl TryFrom<SpecDocument> for ParrySubstitution {
    type Error = Error;

    fn try_from(doc: SpecDocument) -> Result<Self> {
        let alphas = doc
            .alphas
            .iter()
            .map(|&a| exponent(a))
            .collect::<Result<Vec<u32>>>()?;
        match doc.kind.as_str() {
            "simple" => {
                if alphas.is_empty() {
                    return Err(Error::Syntax(
                        "empty alphabet: `alphas` has no entries".into(),
                    ));
                }
                if let Some(m) = doc.m {
                    if m != alphas.len() as i64 {
                        return Err(Error::Syntax(format!(
                            "simple substitution with m={m} but {} exponents",
                            alphas.len()
                        )));
                    }
                }
                if doc.p.is_some_and(|p| p != 0) {
                    return Err(Error::Syntax("simple substitution takes no `p`".into()));
                }
                check_alphabet(alphas.len())?;
                Ok(ParrySubstitution::simple(alphas))
            }
            "nonsimple" => {
                let m = doc
                    .m
                    .ok_or_else(|| Error::Syntax("nonsimple substitution needs `m`".into()))?;
                let p = doc
                    .p
                    .ok_or_else(|| Error::Syntax("nonsimple substitution needs `p`".into()))?;
                if m < 1 {
                    return Err(Error::Range(format!("m must be ≥ 1, got {m}")));
                }
                if p < 0 {
                    return Err(Error::Range(format!("p must be ≥ 0, got {p}")));
                }
                if alphas.is_empty() {
                    return Err(Error::Syntax(
                        "empty alphabet: `alphas` has no entries".into(),
                    ));
                }
                if m + p != alphas.len() as i64 {
                    return Err(Error::Syntax(format!(
                        "m+p = {} but {} exponents given",
                        m + p,
                        alphas.len()
                    )));
                }
                check_alphabet(alphas.len())?;
                Ok(ParrySubstitution::non_simple(m as u32, p as u32, alphas))
            }
            other => Err(Error::Syntax(format!(
                "unknown kind {other:?}, expected \"simple\" or \"nonsimple\""
            ))),
        }
    }
}

fn exponent(a: i64) -> Result<u32> {
    if a < 0 {
        return Err(Error::Range(format!("negative exponent {a}")));
    }
    u32::try_from(a).map_err(|_| Error::Range(format!("exponent {a} too large")))
}

fn check_alphabet(size: usize) -> Result<()> {
    if size > usize::from(u8::MAX) + 1 {
        return Err(Error::Range(format!(
            "alphabet of {size} letters exceeds 256"
        )));
    }
    Ok(())
}

/// Parses a canonical JSON spec document. Parry constraints are not checked here.
pub fn parse_spec(text: &str) -> Result<ParrySubstitution> {
    let doc: SpecDocument = serde_json::from_str(text)
        .map_err(|e| Error::Syntax(format!("malformed spec document: {e}")))?;
    ParrySubstitution::try_from(doc)
}

/// Parses the shorthand `simple:1,1` or `nonsimple:m=1,p=1:2,1`.
pub fn parse_shorthand(text: &str) -> Result<ParrySubstitution> {
    let text = text.trim();
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Syntax(format!("expected `kind:...`, got {text:?}")))?;
    let doc = match kind {
        "simple" => SpecDocument {
            kind: kind.into(),
            m: None,
            p: None,
            alphas: integer_list(rest)?,
        },
        "nonsimple" => {
            let (params, alphas) = rest
                .split_once(':')
                .ok_or_else(|| Error::Syntax("expected `nonsimple:m=..,p=..:alphas`".into()))?;
            let mut m = None;
            let mut p = None;
            for kv in params.split(',') {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Syntax(format!("bad parameter {kv:?}")))?;
                let v = integer(v)?;
                match k.trim() {
                    "m" => m = Some(v),
                    "p" => p = Some(v),
                    other => return Err(Error::Syntax(format!("unknown parameter {other:?}"))),
                }
            }
            SpecDocument {
                kind: kind.into(),
                m,
                p,
                alphas: integer_list(alphas)?,
            }
        }
        other => return Err(Error::Syntax(format!("unknown kind {other:?}"))),
    };
    ParrySubstitution::try_from(doc)
}

fn integer(t: &str) -> Result<i64> {
    t.trim()
        .parse()
        .map_err(|_| Error::Syntax(format!("bad integer {t:?}")))
}

fn integer_list(t: &str) -> Result<Vec<i64>> {
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(integer).collect()
}

//! The nine spaces: a base scale (`ℓ`, `ces`, `d`) at an exact, `p+` or `p-` grade.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Scale {
    Ell,
    Ces,
    D,
}

impl Scale {
    pub const ALL: [Scale; 3] = [Scale::Ell, Scale::Ces, Scale::D];

    pub fn key(self) -> &'static str {
        match self {
            Scale::Ell => "ell",
            Scale::Ces => "ces",
            Scale::D => "d",
        }
    }
}

/// `Exact(p)`: the Banach space at `p ∈ (1, ∞)`.
/// `Plus(p)`: `∩_{q > p}`, for `p ∈ [1, ∞)`.
/// `Minus(p)`: `∪_{1 < q < p}`, for `p ∈ (1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grade {
    Exact(f64),
    Plus(f64),
    Minus(f64),
}

impl Grade {
    pub fn exponent(self) -> f64 {
        match self {
            Grade::Exact(p) | Grade::Plus(p) | Grade::Minus(p) => p,
        }
    }

    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Grade::Exact(p) => p > 1.0 && p.is_finite(),
            Grade::Plus(p) => p >= 1.0 && p.is_finite(),
            Grade::Minus(p) => p > 1.0,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidParameter(format!("grade {self} is outside its domain")))
        }
    }
}

fn fmt_exponent(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Grade::Exact(p) => write!(f, "{}", fmt_exponent(p)),
            Grade::Plus(p) => write!(f, "{}+", fmt_exponent(p)),
            Grade::Minus(p) => write!(f, "{}-", fmt_exponent(p)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SpaceSpec {
    pub scale: Scale,
    pub grade: Grade,
}

impl SpaceSpec {
    /// Validated constructor.
    pub fn new(scale: Scale, grade: Grade) -> Result<Self> {
        Ok(Self { scale, grade: grade.validate()? })
    }

    pub fn exact(scale: Scale, p: f64) -> Result<Self> {
        Self::new(scale, Grade::Exact(p))
    }

    pub fn plus(scale: Scale, p: f64) -> Result<Self> {
        Self::new(scale, Grade::Plus(p))
    }

    pub fn minus(scale: Scale, p: f64) -> Result<Self> {
        Self::new(scale, Grade::Minus(p))
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.scale.key(), self.grade)
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// `scale:grade`, e.g. `ell:2`, `ces:2+`, `d:3-`, `d:inf-`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("space spec `{s}` is not of the form <ell|ces|d>:<p>[+|-]"));
        let (scale, grade) = s.trim().split_once(':').ok_or_else(bad)?;
        let scale = match scale.to_ascii_lowercase().as_str() {
            "ell" | "l" => Scale::Ell,
            "ces" => Scale::Ces,
            "d" => Scale::D,
            _ => return Err(bad()),
        };
        let (num, kind): (&str, fn(f64) -> Grade) = if let Some(n) = grade.strip_suffix('+') {
            (n, Grade::Plus)
        } else if let Some(n) = grade.strip_suffix('-') {
            (n, Grade::Minus)
        } else {
            (grade, Grade::Exact)
        };
        let p: f64 = match num {
            "inf" | "∞" => f64::INFINITY,
            _ => num.parse().map_err(|_| bad())?,
        };
        if p.is_nan() {
            return Err(bad());
        }
        Self::new(scale, kind(p))
    }
}

impl TryFrom<String> for SpaceSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SpaceSpec> for String {
    fn from(s: SpaceSpec) -> String {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        for (text, scale, grade) in [
            ("ell:2", Scale::Ell, Grade::Exact(2.0)),
            ("ces:2+", Scale::Ces, Grade::Plus(2.0)),
            ("d:3-", Scale::D, Grade::Minus(3.0)),
            ("d:inf-", Scale::D, Grade::Minus(f64::INFINITY)),
            ("ell:1+", Scale::Ell, Grade::Plus(1.0)),
            ("ces:2.5", Scale::Ces, Grade::Exact(2.5)),
        ] {
            let spec: SpaceSpec = text.parse().unwrap();
            assert_eq!(spec, SpaceSpec { scale, grade });
            assert_eq!(spec.to_string(), text);
        }
    }

    #[test]
    fn rejects_out_of_domain_and_garbage() {
        for text in ["ell:1", "ces:1-", "d:inf", "d:inf+", "ell:0.5+", "foo:2", "ell", "ell:x", "ell:nan", "d:2*"] {
            assert!(text.parse::<SpaceSpec>().is_err(), "{text}");
        }
    }

    #[test]
    fn serde_uses_the_string_form() {
        let spec: SpaceSpec = "d:2+".parse().unwrap();
        assert_eq!(serde_json::to_string(&spec).unwrap(), "\"d:2+\"");
        let back: SpaceSpec = serde_json::from_str("\"d:2+\"").unwrap();
        assert_eq!(back, spec);
    }
}

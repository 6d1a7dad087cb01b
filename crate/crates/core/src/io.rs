//! Point-set files.
//!
//! ```text
//! # dim=2 scalar=rational
//! 0,0
//! 3/2,-1
//! ```
//!
//! Cyclotomic files use `scalar=cyclotomic:<m>` and write each coordinate as
//! its bracketed power-basis coefficients in `Q(ζ_m)`, for example
//! `[0 1/2 0 0]`. Lines starting with `#` after the header are comments.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::PointConfig;
use crate::scalar::{parse_rational, Cyclotomic, Rational, Scalar, ScalarKind};

/// A configuration in either scalar realization.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyConfig {
    Rational(PointConfig<Rational>),
    Cyclotomic(PointConfig<Cyclotomic>),
}

impl AnyConfig {
    pub fn len(&self) -> usize {
        match self {
            AnyConfig::Rational(c) => c.len(),
            AnyConfig::Cyclotomic(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyConfig::Rational(c) => c.dim(),
            AnyConfig::Cyclotomic(c) => c.dim(),
        }
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        match self {
            AnyConfig::Rational(c) => c.scalar_kind(),
            AnyConfig::Cyclotomic(c) => c.scalar_kind(),
        }
    }

    pub fn to_csv(&self) -> String {
        match self {
            AnyConfig::Rational(c) => write_config(c),
            AnyConfig::Cyclotomic(c) => write_config(c),
        }
    }

    /// Coordinates as exact strings, point by point.
    pub fn exact_coordinates(&self) -> Vec<Vec<String>> {
        match self {
            AnyConfig::Rational(c) => exact_coordinates(c),
            AnyConfig::Cyclotomic(c) => exact_coordinates(c),
        }
    }
}

fn exact_coordinates<S: Scalar>(config: &PointConfig<S>) -> Vec<Vec<String>> {
    config
        .points()
        .iter()
        .map(|p| p.iter().map(|x| x.to_exact_string()).collect())
        .collect()
}

/// Serializes a configuration; cyclotomic coordinates are all written in the
/// configuration's common field.
pub fn write_config<S: Scalar>(config: &PointConfig<S>) -> String {
    let kind = config.scalar_kind();
    let mut out = format!("# dim={} scalar={}\n", config.dim(), kind);
    for p in config.points() {
        let coords: Vec<String> = p.iter().map(|x| x.to_exact_string_in(kind)).collect();
        let _ = writeln!(out, "{}", coords.join(","));
    }
    out
}

fn parse_header(line: &str) -> Result<(usize, ScalarKind)> {
    let err = |m: &str| Error::Parse {
        line: 1,
        message: m.to_string(),
    };
    let body = line
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| err("missing '# dim=<d> scalar=<kind>' header"))?;
    let mut dim = None;
    let mut kind = None;
    for token in body.split_whitespace() {
        if let Some(v) = token.strip_prefix("dim=") {
            dim = Some(v.parse::<usize>().map_err(|_| err("bad dim"))?);
        } else if let Some(v) = token.strip_prefix("scalar=") {
            kind = Some(if v == "rational" {
                ScalarKind::Rational
            } else if let Some(m) = v.strip_prefix("cyclotomic:") {
                let m: u32 = m.parse().map_err(|_| err("bad cyclotomic order"))?;
                if m == 0 {
                    return Err(err("cyclotomic order must be positive"));
                }
                ScalarKind::Cyclotomic(m)
            } else {
                return Err(err("scalar must be 'rational' or 'cyclotomic:<m>'"));
            });
        } else {
            return Err(err(&format!("unexpected header token {token:?}")));
        }
    }
    let dim = dim.ok_or_else(|| err("header lacks dim"))?;
    if dim == 0 {
        return Err(err("dim must be positive"));
    }
    Ok((dim, kind.ok_or_else(|| err("header lacks scalar"))?))
}

fn parse_cyclotomic(text: &str, order: u32, line: usize) -> Result<Cyclotomic> {
    let err = |m: String| Error::Parse { line, message: m };
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(format!("expected [c0 c1 ...], found {text:?}")))?;
    let coeffs = inner
        .split_whitespace()
        .map(|t| parse_rational(t).ok_or_else(|| err(format!("bad coefficient {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Cyclotomic::from_coefficients(order, &coeffs)
        .ok_or_else(|| err(format!("{text} is not a real element of Q(ζ_{order})")))
}

/// Parses a point-set file. An empty point list is reported as
/// [`Error::TooFewPoints`].
pub fn parse_config(text: &str) -> Result<AnyConfig> {
    let mut lines = text.lines().enumerate();
    let (dim, kind) = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break parse_header(l)?,
            None => return Err(parse_header("").unwrap_err()),
        }
    };
    let mut rational = Vec::new();
    let mut cyclotomic = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = l.split(',').collect();
        if fields.len() != dim {
            return Err(Error::Parse {
                line,
                message: format!("expected {dim} coordinates, found {}", fields.len()),
            });
        }
        match kind {
            ScalarKind::Rational => rational.push(
                fields
                    .iter()
                    .map(|f| {
                        parse_rational(f).ok_or_else(|| Error::Parse {
                            line,
                            message: format!("bad rational {:?}", f.trim()),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            ScalarKind::Cyclotomic(m) => cyclotomic.push(
                fields
                    .iter()
                    .map(|f| parse_cyclotomic(f, m, line))
                    .collect::<Result<Vec<_>>>()?,
            ),
        }
    }
    Ok(match kind {
        ScalarKind::Rational => AnyConfig::Rational(PointConfig::new(dim, rational)?),
        ScalarKind::Cyclotomic(_) => AnyConfig::Cyclotomic(PointConfig::new(dim, cyclotomic)?),
    })
}

pub fn read_config_file(path: &Path) -> Result<AnyConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

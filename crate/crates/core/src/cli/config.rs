//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! d=3
//! flag=1,2
//! lattice diag=0,0,0
//! lattice matrix=[[1,0,0],[0,t,0],[0,0,1]]
//! seed=7
//! ```

use std::fmt;

use serde::Serialize;

use crate::building::{Configuration, Matrix, Vertex};
use crate::degeneration::{Convention, FlagType};
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderChoice {
    #[default]
    Degrevlex,
    Lex,
}

impl OrderChoice {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "degrevlex" => Some(OrderChoice::Degrevlex),
            "lex" => Some(OrderChoice::Lex),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderChoice::Degrevlex => "degrevlex",
            OrderChoice::Lex => "lex",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LatticeSpec {
    Diag(Vec<i64>),
    Matrix(Matrix),
}

impl LatticeSpec {
    fn vertex(&self) -> Result<Vertex> {
        match self {
            LatticeSpec::Diag(a) => Vertex::diagonal(a),
            LatticeSpec::Matrix(m) => Vertex::from_matrix(m.clone()),
        }
    }

    fn dim(&self) -> usize {
        match self {
            LatticeSpec::Diag(a) => a.len(),
            LatticeSpec::Matrix(m) => m.rows(),
        }
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::Diag(a) => {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "diag={}", parts.join(","))
            }
            LatticeSpec::Matrix(m) => write!(f, "matrix={m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub d: usize,
    pub ranks: Vec<usize>,
    pub lattices: Vec<LatticeSpec>,
    pub seed: u64,
    pub radius: i64,
    pub order: OrderChoice,
    pub format: Format,
    pub convention: Convention,
}

impl RunConfig {
    pub fn new(d: usize, ranks: Vec<usize>, lattices: Vec<LatticeSpec>) -> Self {
        RunConfig {
            d,
            ranks,
            lattices,
            seed: 1,
            radius: 1,
            order: OrderChoice::default(),
            format: Format::default(),
            convention: Convention::default(),
        }
    }

    pub fn flag(&self) -> Result<FlagType> {
        FlagType::new(self.d, &self.ranks)
    }

    pub fn configuration(&self) -> Result<Configuration> {
        let vs = self
            .lattices
            .iter()
            .map(LatticeSpec::vertex)
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(vs)
    }

    fn validate(&self) -> Result<()> {
        self.flag()?;
        if self.lattices.is_empty() {
            return Err(Error::InvalidConfiguration("no lattice lines".into()));
        }
        if let Some(l) = self.lattices.iter().find(|l| l.dim() != self.d) {
            return Err(Error::DimensionMismatch(format!("lattice {l} in a configuration with d={}", self.d)));
        }
        self.configuration().map(|_| ())
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d={}", self.d)?;
        let ranks: Vec<String> = self.ranks.iter().map(|k| k.to_string()).collect();
        writeln!(f, "flag={}", ranks.join(","))?;
        for l in &self.lattices {
            writeln!(f, "lattice {l}")?;
        }
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "radius={}", self.radius)?;
        writeln!(f, "order={}", self.order.name())?;
        let format = match self.format {
            Format::Text => "text",
            Format::Json => "json",
        };
        writeln!(f, "format={format}")?;
        let conv = match self.convention {
            Convention::Direct => "direct",
            Convention::Inverse => "inverse",
        };
        writeln!(f, "convention={conv}")
    }
}

fn ints<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, ParseError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| ParseError::new(line, format!("expected an integer, found `{}`", x.trim())))
        })
        .collect()
}

fn single<T: std::str::FromStr>(line: usize, key: &str, s: &str) -> Result<T, ParseError> {
    s.trim()
        .parse()
        .map_err(|_| ParseError::new(line, format!("bad value `{s}` for `{key}`")))
}

/// Parses the line format; error positions are 1-based line numbers.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut d = None;
    let mut ranks = None;
    let mut cfg = RunConfig::new(0, Vec::new(), Vec::new());
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("lattice") {
            let rest = rest.trim();
            let spec = if let Some(v) = rest.strip_prefix("diag=") {
                LatticeSpec::Diag(ints(line, v)?)
            } else if let Some(v) = rest.strip_prefix("matrix=") {
                let m = Matrix::parse(v).map_err(|e| ParseError::new(line, e.message))?;
                if m.rows() != m.cols() {
                    return Err(ParseError::new(line, "lattice matrix must be square").into());
                }
                LatticeSpec::Matrix(m)
            } else {
                return Err(ParseError::new(line, "expected `lattice diag=...` or `lattice matrix=...`").into());
            };
            cfg.lattices.push(spec);
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(ParseError::new(line, format!("expected key=value, found `{body}`")).into());
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "d" => d = Some(single::<usize>(line, key, value)?),
            "flag" => ranks = Some(ints::<usize>(line, value)?),
            "seed" => cfg.seed = single(line, key, value)?,
            "radius" => cfg.radius = single(line, key, value)?,
            "order" => {
                cfg.order = OrderChoice::parse(value)
                    .ok_or_else(|| ParseError::new(line, format!("unknown order `{value}`")))?
            }
            "format" => {
                cfg.format = match value {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => return Err(ParseError::new(line, format!("unknown format `{value}`")).into()),
                }
            }
            "convention" => {
                cfg.convention = match value {
                    "direct" => Convention::Direct,
                    "inverse" => Convention::Inverse,
                    _ => return Err(ParseError::new(line, format!("unknown convention `{value}`")).into()),
                }
            }
            _ => return Err(ParseError::new(line, format!("unknown key `{key}`")).into()),
        }
    }
    let last = text.lines().count().max(1);
    cfg.d = d.ok_or_else(|| ParseError::new(last, "missing `d=`"))?;
    cfg.ranks = ranks.ok_or_else(|| ParseError::new(last, "missing `flag=`"))?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE_VERTICES: &str = "d=3\nflag=1,2\nlattice diag=0,0,0\nlattice diag=1,0,0\nlattice diag=0,0,1\n";

    #[test]
    fn three_vertex_configuration() {
        let c = parse_config(THREE_VERTICES).unwrap();
        assert_eq!(c.configuration().unwrap().to_string(), "{L1=(0,0,0), L2=(1,0,0), L3=(0,0,1)}");
        assert_eq!(c.flag().unwrap().to_string(), "(1<2)");
    }

    #[test]
    fn matrix_equals_diag() {
        let a = parse_config("d=2\nflag=1\nlattice matrix=[[1,0],[0,t]]\n").unwrap();
        let b = parse_config("d=2\nflag=1\nlattice diag=0,1\n").unwrap();
        let (va, vb) = (a.configuration().unwrap(), b.configuration().unwrap());
        assert!(crate::building::vertex_equal(va.vertex(0), vb.vertex(0)));
    }

    #[test]
    fn round_trip() {
        let text = "d=2 # dimension\nflag=1\nlattice diag=0,0\nlattice matrix=[[1,t^-1],[0,t]]\nseed=9\n";
        let c = parse_config(text).unwrap();
        assert_eq!(parse_config(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn diagnostics() {
        let e = parse_config("d=3\nflag=1,2\nlattice diag=0,x,0\n").unwrap_err();
        assert!(matches!(e, Error::Parse(ParseError { position: 3, .. })), "{e}");
        assert!(parse_config("d=3\nflag=1,2\nlattice diag=0,0\n").is_err());
        assert!(parse_config("d=2\nflag=1\nlattice diag=0,0\nlattice diag=1,1\n").is_err());
        assert!(parse_config("d=2\nflag=1\nlattice matrix=[[1,1],[1,1]]\n").is_err());
        assert!(parse_config("d=2\nflag=3\nlattice diag=0,0\n").is_err());
        assert!(parse_config("flag=1\nlattice diag=0,0\n").is_err());
    }
}

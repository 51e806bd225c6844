//! Graph selection shared by the subcommands: a named family with
//! parameters, or a DIMACS file.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};

use ekr_core::error::{Error, Result};
use ekr_core::graph::{BaseKind, Graph, PendantSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Complete,
    Path,
    Cycle,
    DisjointCliques,
    Power,
    PendantComplete,
    PendantPath,
    PendantCycle,
    PendantGeneral,
    PendantUniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PowerBase {
    Path,
    Cycle,
    Complete,
}

/// One graph source: `--family` plus parameters, or `--input <dimacs>`.
#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph family to construct.
    #[arg(long, value_enum, conflicts_with = "input")]
    pub family: Option<FamilyName>,
    /// Base size n.
    #[arg(long)]
    pub n: Option<usize>,
    /// Clique size m (disjoint-cliques, pendant-uniform).
    #[arg(long)]
    pub m: Option<usize>,
    /// Comma-separated clique sizes (pendant-general), e.g. `1,2,2`.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    /// Power exponent (family `power`).
    #[arg(long)]
    pub k: Option<usize>,
    /// Base family for `power`.
    #[arg(long, value_enum, default_value_t = PowerBase::Path)]
    pub base: PowerBase,
    /// Read the graph from a DIMACS-with-roles file instead.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl GraphArgs {
    pub fn build(&self) -> Result<Graph> {
        if let Some(path) = &self.input {
            let file = std::fs::File::open(path)?;
            return ekr_core::dimacs::read_graph(std::io::BufReader::new(file));
        }
        let family = self.family.ok_or_else(|| {
            Error::InvalidParameter("either --family or --input is required".into())
        })?;
        let n = |what: &str| {
            self.n
                .ok_or_else(|| Error::InvalidParameter(format!("{what} needs --n")))
        };
        let m = |what: &str| {
            self.m
                .ok_or_else(|| Error::InvalidParameter(format!("{what} needs --m")))
        };
        match family {
            FamilyName::Complete => Graph::complete(n("complete")?),
            FamilyName::Path => Graph::path(n("path")?),
            FamilyName::Cycle => Graph::cycle(n("cycle")?),
            FamilyName::DisjointCliques => {
                Graph::disjoint_cliques(n("disjoint-cliques")?, m("disjoint-cliques")?)
            }
            FamilyName::Power => {
                let k = self
                    .k
                    .ok_or_else(|| Error::InvalidParameter("power needs --k".into()))?;
                let n = n("power")?;
                let base = match self.base {
                    PowerBase::Path => BaseKind::Path(n),
                    PowerBase::Cycle => BaseKind::Cycle(n),
                    PowerBase::Complete => BaseKind::Complete(n),
                };
                BaseKind::Power {
                    base: Box::new(base),
                    k,
                }
                .build()
            }
            FamilyName::PendantComplete => {
                PendantSpec::star(BaseKind::Complete(n("pendant-complete")?)).build()
            }
            FamilyName::PendantPath => {
                PendantSpec::star(BaseKind::Path(n("pendant-path")?)).build()
            }
            FamilyName::PendantCycle => {
                PendantSpec::star(BaseKind::Cycle(n("pendant-cycle")?)).build()
            }
            FamilyName::PendantGeneral => {
                let s = self.s.clone().ok_or_else(|| {
                    Error::InvalidParameter("pendant-general needs --s, e.g. --s 1,2,2".into())
                })?;
                if let Some(n) = self.n {
                    if n != s.len() {
                        return Err(Error::InvalidParameter(format!(
                            "--n {n} disagrees with --s of length {}",
                            s.len()
                        )));
                    }
                }
                PendantSpec {
                    base: BaseKind::Complete(s.len()),
                    s,
                }
                .build()
            }
            FamilyName::PendantUniform => PendantSpec::uniform(
                BaseKind::Complete(n("pendant-uniform")?),
                m("pendant-uniform")?,
            )
            .build(),
        }
    }

    /// Star-formula family for `star-table`, when the graph has one.
    pub fn star_formula(&self) -> Result<ekr_core::theorems::StarFormulaFamily> {
        use ekr_core::theorems::StarFormulaFamily;
        match self.family {
            Some(FamilyName::PendantComplete) => Ok(StarFormulaFamily::PendantComplete {
                n: self
                    .n
                    .ok_or_else(|| Error::InvalidParameter("pendant-complete needs --n".into()))?
                    as u64,
            }),
            Some(FamilyName::PendantUniform) => {
                Ok(StarFormulaFamily::Uniform {
                    n: self.n.ok_or_else(|| {
                        Error::InvalidParameter("pendant-uniform needs --n".into())
                    })? as u64,
                    m: self.m.ok_or_else(|| {
                        Error::InvalidParameter("pendant-uniform needs --m".into())
                    })? as u64,
                })
            }
            Some(FamilyName::PendantGeneral) => {
                let s = self
                    .s
                    .clone()
                    .ok_or_else(|| Error::InvalidParameter("pendant-general needs --s".into()))?;
                Ok(StarFormulaFamily::General {
                    s: s.into_iter().map(|v| v as u64).collect(),
                })
            }
            _ => Err(Error::InvalidParameter(
                "star-table needs a pendant family over a complete base \
                 (pendant-complete, pendant-uniform, pendant-general)"
                    .into(),
            )),
        }
    }
}

/// Inclusive r range: `4` or `1..6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RRange {
    pub lo: usize,
    pub hi: usize,
}

impl RRange {
    pub fn values(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

impl FromStr for RRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad r value `{t}`"))
        };
        match s.split_once("..") {
            Some((lo, hi)) => Ok(RRange {
                lo: parse(lo)?,
                hi: parse(hi)?,
            }),
            None => {
                let v = parse(s)?;
                Ok(RRange { lo: v, hi: v })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!("4".parse::<RRange>().unwrap(), RRange { lo: 4, hi: 4 });
        assert_eq!("1..6".parse::<RRange>().unwrap(), RRange { lo: 1, hi: 6 });
        assert!("6..1".parse::<RRange>().unwrap().is_empty());
        assert!("x".parse::<RRange>().is_err());
    }
}

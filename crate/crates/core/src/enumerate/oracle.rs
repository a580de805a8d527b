use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::trees::Address;

/// Anything that can report the child count of a vertex of the fixed
/// infinite tree.
pub trait Branching {
    /// Child count of the vertex at `v`; always at least 1.
    fn children(&self, v: &Address) -> usize;
}

/// Finite description of a fixed infinite ordered tree in which every
/// vertex has a finite, positive number of children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchingOracle {
    /// Every vertex has `k` children.
    Constant(usize),
    /// A vertex at depth `d` has `counts[d]` children; the last entry repeats.
    ByDepth(Vec<usize>),
    /// Explicit counts for listed addresses, a constant or depth rule elsewhere.
    Table {
        entries: BTreeMap<Address, usize>,
        default: Box<BranchingOracle>,
    },
}

impl BranchingOracle {
    pub fn constant(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Oracle("child counts must be positive".into()));
        }
        Ok(BranchingOracle::Constant(k))
    }

    pub fn by_depth(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Oracle("depth rule needs at least one count".into()));
        }
        if counts.contains(&0) {
            return Err(Error::Oracle("child counts must be positive".into()));
        }
        Ok(BranchingOracle::ByDepth(counts))
    }

    pub fn table(entries: BTreeMap<Address, usize>, default: BranchingOracle) -> Result<Self> {
        if matches!(default, BranchingOracle::Table { .. }) {
            return Err(Error::Oracle("a table default must be a const or depth rule".into()));
        }
        if let Some((a, _)) = entries.iter().find(|(_, &k)| k == 0) {
            return Err(Error::Oracle(format!("address {a:?} has child count 0")));
        }
        Ok(BranchingOracle::Table {
            entries,
            default: Box::new(default),
        })
    }

    /// Parses `const:K`, `depth:K1,...,Kj`, or `file:PATH` (the last reads
    /// a JSON table from disk).
    pub fn from_spec(spec: &str) -> Result<Self> {
        match spec.strip_prefix("file:") {
            Some(path) => Self::from_json_file(Path::new(path)),
            None => spec.parse(),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Oracle(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Parses a JSON object mapping slash-joined addresses (`"0/2/1"`, with
    /// `""` for the root) to child counts, plus a required `"default"`
    /// entry holding a `const:` or `depth:` rule.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Oracle(format!("bad JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Oracle("oracle file must hold a JSON object".into()))?;
        let mut default = None;
        let mut entries = BTreeMap::new();
        for (key, v) in obj {
            if key == "default" {
                let rule = v
                    .as_str()
                    .ok_or_else(|| Error::Oracle("\"default\" must be a rule string".into()))?;
                default = Some(rule.parse::<BranchingOracle>()?);
                continue;
            }
            let address: Address = key
                .parse()
                .map_err(|_| Error::Oracle(format!("bad address key {key:?}")))?;
            let count = v
                .as_u64()
                .filter(|&k| k >= 1)
                .and_then(|k| usize::try_from(k).ok())
                .ok_or_else(|| Error::Oracle(format!("count for {key:?} must be a positive integer, got {v}")))?;
            entries.insert(address, count);
        }
        let default = default.ok_or_else(|| Error::Oracle("missing \"default\" entry".into()))?;
        Self::table(entries, default)
    }
}

fn count_token(token: &str) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(k) if k >= 1 && token.bytes().all(|b| b.is_ascii_digit()) => Ok(k),
        _ => Err(Error::Oracle(format!("bad child count {token:?}"))),
    }
}

/// `const:K` or `depth:K1,...,Kj`. Table oracles come from [`BranchingOracle::from_json`].
impl FromStr for BranchingOracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(k) = s.strip_prefix("const:") {
            Self::constant(count_token(k)?)
        } else if let Some(ks) = s.strip_prefix("depth:") {
            let counts = ks.split(',').map(count_token).collect::<Result<Vec<_>>>()?;
            Self::by_depth(counts)
        } else {
            let head = s.split(':').next().unwrap_or(s);
            Err(Error::Oracle(format!(
                "unknown oracle rule {head:?}; expected const:K, depth:K1,..,Kj or file:PATH"
            )))
        }
    }
}

impl fmt::Display for BranchingOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchingOracle::Constant(k) => write!(f, "const:{k}"),
            BranchingOracle::ByDepth(ks) => {
                let ks: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "depth:{}", ks.join(","))
            }
            BranchingOracle::Table { entries, default } => {
                f.write_str("table[")?;
                for (a, k) in entries {
                    write!(f, "{a}={k};")?;
                }
                write!(f, "default={default}]")
            }
        }
    }
}

impl Branching for BranchingOracle {
    fn children(&self, v: &Address) -> usize {
        match self {
            BranchingOracle::Constant(k) => *k,
            BranchingOracle::ByDepth(ks) => ks[v.depth().min(ks.len() - 1)],
            BranchingOracle::Table { entries, default } => {
                entries.get(v).copied().unwrap_or_else(|| default.children(v))
            }
        }
    }
}

impl<B: Branching + ?Sized> Branching for &B {
    fn children(&self, v: &Address) -> usize {
        (**self).children(v)
    }
}

/// Adapts a closure into a [`Branching`].
pub struct FromFn<F>(pub F);

impl<F: Fn(&Address) -> usize> Branching for FromFn<F> {
    fn children(&self, v: &Address) -> usize {
        (self.0)(v)
    }
}

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A vertex position given by the child index taken at each level below
/// the root. The empty address is the root; binary trees use 0 for left and
/// 1 for right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(Vec<usize>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, index: usize) -> Address {
        let mut steps = Vec::with_capacity(self.0.len() + 1);
        steps.extend_from_slice(&self.0);
        steps.push(index);
        Address(steps)
    }

    pub fn parent(&self) -> Option<Address> {
        let (_, rest) = self.0.split_last()?;
        Some(Address(rest.to_vec()))
    }

    /// Strict ancestors, root first.
    pub fn ancestors(&self) -> impl Iterator<Item = Address> + '_ {
        (0..self.0.len()).map(|k| Address(self.0[..k].to_vec()))
    }
}

impl From<Vec<usize>> for Address {
    fn from(steps: Vec<usize>) -> Self {
        Address(steps)
    }
}

/// Slash-joined steps, e.g. `0/2/1`; the root renders as the empty string.
impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Address({self})")
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Address::root());
        }
        let mut steps = Vec::new();
        let mut offset = 0;
        for part in s.split('/') {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(offset, format!("bad address step {part:?}")));
            }
            let step = part
                .parse()
                .map_err(|_| Error::parse(offset, format!("address step {part:?} out of range")))?;
            steps.push(step);
            offset += part.len() + 1;
        }
        Ok(Address(steps))
    }
}

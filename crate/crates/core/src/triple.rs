use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{parse_group, Group};
use crate::set::GSubset;

/// Sets `A`, `B` and the forbidden differences `S`, all in one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub a: GSubset,
    pub b: GSubset,
    pub s: GSubset,
}

impl Triple {
    pub fn new(a: GSubset, b: GSubset, s: GSubset) -> Result<Triple> {
        a.same_group(&b)?;
        a.same_group(&s)?;
        Ok(Triple { a, b, s })
    }

    pub fn group(&self) -> &Group {
        self.a.group()
    }

    pub fn record(&self) -> TripleRecord {
        TripleRecord {
            group: self.group().label().to_string(),
            a: self.a.to_indices(),
            b: self.b.to_indices(),
            s: self.s.to_indices(),
        }
    }
}

/// Serialized triple: a group presentation and three sorted index arrays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TripleRecord {
    pub group: String,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub s: Vec<usize>,
}

impl TripleRecord {
    pub fn resolve(&self) -> Result<Triple> {
        let g = parse_group(&self.group)?;
        self.resolve_in(&g)
    }

    pub fn resolve_in(&self, g: &Group) -> Result<Triple> {
        Triple::new(
            GSubset::from_indices(g, self.a.iter().copied())?,
            GSubset::from_indices(g, self.b.iter().copied())?,
            GSubset::from_indices(g, self.s.iter().copied())?,
        )
    }
}

//! Homology dimension tables and their JSON / text renderings.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Cube,
    Koszul,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Cube => f.write_str("cube"),
            Construction::Koszul => f.write_str("koszul"),
        }
    }
}

/// Chromatic homology dimensions `(i, a, d) -> dim`; `a` is always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTable {
    pub construction: Construction,
    pub max_q: usize,
    /// Largest cohomological degree (the edge count).
    pub max_i: usize,
    entries: BTreeMap<(usize, usize, usize), usize>,
}

impl HomologyTable {
    pub fn new(construction: Construction, max_q: usize, max_i: usize) -> Self {
        HomologyTable {
            construction,
            max_q,
            max_i,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, i: usize, a: usize, d: usize, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(i, a, d));
        } else {
            self.entries.insert((i, a, d), dim);
        }
    }

    pub fn get(&self, i: usize, a: usize, d: usize) -> usize {
        self.entries.get(&(i, a, d)).copied().unwrap_or(0)
    }

    /// Nonzero entries sorted by `(i, a, d)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same nonzero entries, regardless of construction tag.
    pub fn same_dimensions(&self, other: &HomologyTable) -> bool {
        self.max_q == other.max_q && self.entries == other.entries
    }

    /// `Σ_i (-1)^i dim(i, 0, d)`.
    pub fn euler(&self, d: usize) -> i64 {
        self.entries
            .iter()
            .filter(|(k, _)| k.2 == d)
            .map(|(k, &v)| if k.0 % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            a: usize,
            d: usize,
            dim: usize,
        }
        #[derive(Serialize)]
        struct Doc {
            construction: Construction,
            #[serde(rename = "D")]
            max_q: usize,
            entries: Vec<Entry>,
        }
        let doc = Doc {
            construction: self.construction,
            max_q: self.max_q,
            entries: self
                .entries()
                .map(|((i, a, d), dim)| Entry { i, a, d, dim })
                .collect(),
        };
        serde_json::to_value(doc).expect("table serializes")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "chromatic homology ({}), q-degrees 0..={}",
            self.construction, self.max_q
        );
        let _ = write!(out, "{:>4} |", "i");
        for d in 0..=self.max_q {
            let _ = write!(out, " {:>5}", format!("d={}", d));
        }
        out.push('\n');
        for i in 0..=self.max_i {
            let _ = write!(out, "{:>4} |", i);
            for d in 0..=self.max_q {
                let _ = write!(out, " {:>5}", self.get(i, 0, d));
            }
            out.push('\n');
        }
        out
    }
}

/// Dichromatic homology dimensions `(j, a, d) -> dim` with `-m <= j <= 0`;
/// the bidegree `(a, d)` stands for `t^{-a} q^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplyGradedTable {
    pub max_q: usize,
    /// The edge count; `j` ranges over `-min_j..=0`.
    pub min_j: usize,
    entries: BTreeMap<(i64, usize, usize), usize>,
}

impl TriplyGradedTable {
    pub fn new(max_q: usize, edges: usize) -> Self {
        TriplyGradedTable {
            max_q,
            min_j: edges,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, j: i64, a: usize, d: usize, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(j, a, d));
        } else {
            self.entries.insert((j, a, d), dim);
        }
    }

    pub fn get(&self, j: i64, a: usize, d: usize) -> usize {
        self.entries.get(&(j, a, d)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `a` with a nonzero entry.
    pub fn max_a(&self) -> usize {
        self.entries.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// `Σ_j (-1)^j dim(j, a, d)`.
    pub fn euler(&self, a: usize, d: usize) -> i64 {
        self.entries
            .iter()
            .filter(|(k, _)| k.1 == a && k.2 == d)
            .map(|(k, &v)| if k.0 % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            j: i64,
            a: usize,
            d: usize,
            dim: usize,
        }
        #[derive(Serialize)]
        struct Doc {
            #[serde(rename = "D")]
            max_q: usize,
            entries: Vec<Entry>,
        }
        let doc = Doc {
            max_q: self.max_q,
            entries: self
                .entries()
                .map(|((j, a, d), dim)| Entry { j, a, d, dim })
                .collect(),
        };
        serde_json::to_value(doc).expect("table serializes")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dichromatic homology, q-degrees 0..={}", self.max_q);
        let max_a = self.max_a();
        for j in (-(self.min_j as i64))..=0 {
            let _ = writeln!(out, "j = {}", j);
            let _ = write!(out, "{:>4} |", "a");
            for d in 0..=self.max_q {
                let _ = write!(out, " {:>5}", format!("d={}", d));
            }
            out.push('\n');
            for a in 0..=max_a {
                let _ = write!(out, "{:>4} |", a);
                for d in 0..=self.max_q {
                    let _ = write!(out, " {:>5}", self.get(j, a, d));
                }
                out.push('\n');
            }
        }
        out
    }
}

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{check_axioms, small_generating_set, Elem, Group, Subgroup};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("multiplication table has {got} entries, expected {order}^2")]
    BadSize { order: usize, got: usize },
    #[error("table entry {0} is out of range")]
    OutOfRange(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative")]
    NotAssociative,
    #[error("label list has {got} entries, expected {order}")]
    BadLabels { order: usize, got: usize },
    #[error("empty group")]
    Empty,
    #[error("malformed group JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// On-disk form of a group table: flat row-major multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableJson {
    pub order: usize,
    pub mult: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
}

/// A group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    identity: Elem,
    gens: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    /// Validates and wraps a row-major table (`mult[a*n + b] = a*b`).
    pub fn new(n: usize, mult: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::Empty);
        }
        if mult.len() != n * n {
            return Err(TableError::BadSize { order: n, got: mult.len() });
        }
        if let Some(&bad) = mult.iter().find(|&&x| x >= n) {
            return Err(TableError::OutOfRange(bad));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(TableError::BadLabels { order: n, got: l.len() });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e * n + a] == a && mult[a * n + e] == a))
            .ok_or(TableError::NoIdentity)?;
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| mult[a * n + b] == identity).ok_or(TableError::NoInverse(a))?;
            if mult[b * n + a] != identity {
                return Err(TableError::NoInverse(a));
            }
            inv[a] = b as u32;
        }
        let mut t = CayleyTable {
            n,
            mult: mult.into_iter().map(|x| x as u32).collect(),
            inv,
            identity,
            gens: Vec::new(),
            labels,
        };
        if !check_axioms(&t, 1 << 21) {
            return Err(TableError::NotAssociative);
        }
        t.gens = small_generating_set(&t);
        Ok(t)
    }

    /// Tabulates any group. Generators carry over.
    pub fn from_group<G: Group + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = g.mul(a, b) as u32;
            }
        }
        CayleyTable {
            n,
            mult,
            inv: (0..n).map(|a| g.inv(a) as u32).collect(),
            identity: g.identity(),
            gens: g.generators(),
            labels: Some((0..n).map(|a| g.label(a)).collect()),
        }
    }

    /// The subgroup `h` as a standalone table; element `i` is `h.members()[i]`.
    pub fn from_subgroup<G: Group + ?Sized>(g: &G, h: &Subgroup) -> Self {
        let members = h.members();
        let n = members.len();
        let mut pos = std::collections::HashMap::with_capacity(n);
        for (i, &m) in members.iter().enumerate() {
            pos.insert(m, i as u32);
        }
        let mut mult = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mult[i * n + j] = pos[&g.mul(a, b)];
            }
        }
        CayleyTable {
            n,
            mult,
            inv: members.iter().map(|&a| pos[&g.inv(a)]).collect(),
            identity: pos[&g.identity()] as usize,
            gens: h.gens().iter().map(|a| pos[a] as usize).collect(),
            labels: Some(members.iter().map(|&a| g.label(a)).collect()),
        }
    }

    pub(crate) fn from_raw(
        n: usize,
        mult: Vec<u32>,
        identity: Elem,
        gens: Vec<Elem>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mult[a * n + b] as usize == identity {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        CayleyTable { n, mult, inv, identity, gens, labels }
    }

    pub fn with_generators(mut self, gens: Vec<Elem>) -> Self {
        self.gens = gens;
        self
    }

    pub fn to_json(&self, prime: Option<u32>) -> TableJson {
        TableJson {
            order: self.n,
            mult: self.mult.iter().map(|&x| x as usize).collect(),
            labels: self.labels.clone(),
            prime,
        }
    }

    pub fn from_json(j: TableJson) -> Result<Self, TableError> {
        Self::new(j.order, j.mult, j.labels)
    }

    pub fn from_json_str(s: &str) -> Result<(Self, Option<u32>), TableError> {
        let j: TableJson = serde_json::from_str(s)?;
        let prime = j.prime;
        Ok((Self::from_json(j)?, prime))
    }
}

impl Group for CayleyTable {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> Elem {
        self.identity
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.n + b] as usize
    }
    fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }
    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
    fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("g{a}"),
        }
    }
}

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// What a variable stands for. Only the roles matter to the engine; the
/// names are for rendering and parsing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarRole {
    /// Initial cluster variable `x_i` of a generalized seed (0-based `i`).
    Cluster(usize),
    /// Initial cluster variable `x_{il}` of the composite seed.
    CompositeCluster(usize, usize),
    /// Generator of the coefficient semifield (`y_i`, `z_{il}`, tropical `u`).
    Coefficient,
    /// Splitting variable `s_{il}`.
    Splitting(usize, usize),
    /// Formal variable of an F-polynomial (`y_i`, `z_{il}`, or `ỹ_{il}`).
    Formal,
    /// Elementary symmetric symbol `e_{il}` produced by reduction.
    Elementary(usize, usize),
}

/// Ordered variable names with roles. Polynomials only store exponent
/// vectors; the table gives them names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
    roles: Vec<VarRole>,
    index: HashMap<String, usize>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, role: VarRole) -> Result<usize> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(Error::VariableTableMismatch(format!(
                "'{name}' is not a valid identifier"
            )));
        }
        if self.index.contains_key(&name) {
            return Err(Error::VariableTableMismatch(format!(
                "duplicate variable '{name}'"
            )));
        }
        let idx = self.names.len();
        self.index.insert(name.clone(), idx);
        self.names.push(name);
        self.roles.push(role);
        Ok(idx)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn role(&self, i: usize) -> &VarRole {
        &self.roles[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn find_role(&self, role: &VarRole) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    /// Splitting variables grouped by block: entry `i` lists the indices of
    /// `s_{i1}, ..., s_{i r_i}` in order.
    pub fn splitting_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<(usize, usize)>> = Vec::new();
        for (idx, role) in self.roles.iter().enumerate() {
            if let VarRole::Splitting(i, l) = *role {
                if blocks.len() <= i {
                    blocks.resize_with(i + 1, Vec::new);
                }
                blocks[i].push((l, idx));
            }
        }
        blocks
            .into_iter()
            .map(|mut b| {
                b.sort();
                b.into_iter().map(|(_, idx)| idx).collect()
            })
            .collect()
    }

    pub fn is_splitting(&self, i: usize) -> bool {
        matches!(self.roles[i], VarRole::Splitting(..))
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

/// Table used by seeds and composite seeds: generalized cluster variables,
/// composite cluster variables, coefficient generators, splitting variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedTable {
    pub table: VariableTable,
    pub degrees: Vec<usize>,
    pub cluster: Vec<usize>,
    pub composite_cluster: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    pub splitting: Vec<Vec<usize>>,
}

impl SeedTable {
    pub fn new(degrees: &[usize], generators: &[String]) -> Result<Self> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::DegreeMismatch);
        }
        let mut table = VariableTable::new();
        let mut cluster = Vec::new();
        for i in 0..degrees.len() {
            cluster.push(table.push(format!("x{}", i + 1), VarRole::Cluster(i))?);
        }
        let mut composite_cluster = Vec::new();
        for (i, &r) in degrees.iter().enumerate() {
            let mut block = Vec::new();
            for l in 0..r {
                block.push(table.push(
                    format!("x{}_{}", i + 1, l + 1),
                    VarRole::CompositeCluster(i, l),
                )?);
            }
            composite_cluster.push(block);
        }
        let mut gens = Vec::new();
        for g in generators {
            gens.push(table.push(g.clone(), VarRole::Coefficient)?);
        }
        let mut splitting = Vec::new();
        for (i, &r) in degrees.iter().enumerate() {
            let mut block = Vec::new();
            for l in 0..r {
                block.push(table.push(format!("s{}_{}", i + 1, l + 1), VarRole::Splitting(i, l))?);
            }
            splitting.push(block);
        }
        Ok(SeedTable {
            table,
            degrees: degrees.to_vec(),
            cluster,
            composite_cluster,
            generators: gens,
            splitting,
        })
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn pseudo_rank(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Flat index of `(i, l)` in the composite ordering.
    pub fn flat(&self, i: usize, l: usize) -> usize {
        self.degrees[..i].iter().sum::<usize>() + l
    }

    /// Inverse of [`SeedTable::flat`].
    pub fn unflat(&self, mut idx: usize) -> (usize, usize) {
        for (i, &r) in self.degrees.iter().enumerate() {
            if idx < r {
                return (i, idx);
            }
            idx -= r;
        }
        panic!("composite index out of range")
    }
}

//! Finite function tables between labeled value grids.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{fresh_label, Space, LABEL_JOIN};

/// A total function between two finite labeled sets, stored as a lookup
/// table from domain ordinal to codomain ordinal.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFunction {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    map: Vec<usize>,
}

/// Derived injectivity/surjectivity statistics of a [`FiniteFunction`].
///
/// Counts follow the usual accounting for reversible implementations:
/// `n = n_b + n_n` and `m = (n_b + m_n) + m_nr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionStats {
    /// Domain size.
    pub n: usize,
    /// Codomain size.
    pub m: usize,
    /// Range size |Im f|.
    pub m_r: usize,
    /// Codomain elements with no preimage.
    pub m_nr: usize,
    /// Domain elements mapped injectively (their image has one preimage).
    pub n_b: usize,
    /// Domain elements sharing their image with another element.
    pub n_n: usize,
    /// Range elements with two or more preimages.
    pub m_n: usize,
    /// Preimage multiplicity per codomain ordinal (0 for non-range elements).
    pub multiplicities: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(domain: Arc<Space>, codomain: Arc<Space>, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.dim() {
            return Err(Error::InvalidFunction(format!(
                "map has {} entries for domain of size {}",
                map.len(),
                domain.dim()
            )));
        }
        for (j, &i) in map.iter().enumerate() {
            if i >= codomain.dim() {
                return Err(Error::InvalidFunction(format!(
                    "f({}) = ordinal {} outside codomain of size {}",
                    domain.label(j),
                    i,
                    codomain.dim()
                )));
            }
        }
        Ok(FiniteFunction {
            domain,
            codomain,
            map,
        })
    }

    /// Build from plain label lists.
    pub fn from_labels(
        domain: Vec<String>,
        codomain: Vec<String>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let d = Space::new("domain", domain)?;
        let c = Space::new("codomain", codomain)?;
        FiniteFunction::new(d, c, map)
    }

    /// Identity function on a space.
    pub fn identity(space: Arc<Space>) -> Self {
        let map = (0..space.dim()).collect();
        FiniteFunction {
            domain: space.clone(),
            codomain: space,
            map,
        }
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    /// Domain size.
    pub fn n(&self) -> usize {
        self.domain.dim()
    }

    /// Codomain size.
    pub fn m(&self) -> usize {
        self.codomain.dim()
    }

    /// Codomain ordinal of domain ordinal `j`.
    pub fn value(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Domain ordinals mapping to codomain ordinal `i`, in domain order.
    pub fn preimage(&self, i: usize) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == i)
            .map(|(j, _)| j)
            .collect()
    }

    /// Image of a set of domain ordinals.
    pub fn image_of(&self, members: &std::collections::BTreeSet<usize>) -> std::collections::BTreeSet<usize> {
        members.iter().map(|&j| self.map[j]).collect()
    }

    pub fn stats(&self) -> FunctionStats {
        let n = self.n();
        let m = self.m();
        let mut multiplicities = vec![0usize; m];
        for &i in &self.map {
            multiplicities[i] += 1;
        }
        let m_r = multiplicities.iter().filter(|&&c| c > 0).count();
        let m_nr = m - m_r;
        let n_b = self
            .map
            .iter()
            .filter(|&&i| multiplicities[i] == 1)
            .count();
        let n_n = n - n_b;
        let m_n = multiplicities.iter().filter(|&&c| c >= 2).count();
        FunctionStats {
            n,
            m,
            m_r,
            m_nr,
            n_b,
            n_n,
            m_n,
            multiplicities,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.stats().n_n == 0
    }

    pub fn is_surjective(&self) -> bool {
        self.stats().m_nr == 0
    }

    pub fn is_bijective(&self) -> bool {
        let s = self.stats();
        s.n_n == 0 && s.m_nr == 0 && s.n == s.m
    }

    /// Codomain ordinals in the range, in codomain order.
    pub fn range_ordinals(&self) -> Vec<usize> {
        let stats = self.stats();
        (0..self.m())
            .filter(|&i| stats.multiplicities[i] > 0)
            .collect()
    }

    /// Codomain ordinals outside the range, in codomain order.
    pub fn non_range_ordinals(&self) -> Vec<usize> {
        let stats = self.stats();
        (0..self.m())
            .filter(|&i| stats.multiplicities[i] == 0)
            .collect()
    }

    /// Labels of codomain elements with no preimage.
    pub fn missing_range_labels(&self) -> Vec<String> {
        self.non_range_ordinals()
            .into_iter()
            .map(|i| self.codomain.label(i).to_string())
            .collect()
    }

    /// Extend the smaller of domain/codomain with fresh labels so n = m,
    /// as unary qubit-map circuits require.
    ///
    /// A padded codomain gains unused (non-range) elements. Padded domain
    /// elements are wired bijectively onto currently unused codomain
    /// elements, so the function restricted to the original labels is
    /// unchanged and the padding stays inert for set inputs.
    pub fn pad_to_square(&self) -> Result<FiniteFunction> {
        let n = self.n();
        let m = self.m();
        if n == m {
            return Ok(self.clone());
        }
        if m < n {
            let codomain = Space::extend_back(&self.codomain, "pad", n - m, "codomain");
            return FiniteFunction::new(self.domain.clone(), codomain, self.map.clone());
        }
        // n < m: map each new domain element onto a distinct non-range element.
        let spare = self.non_range_ordinals();
        if spare.len() < m - n {
            return Err(Error::InvalidFunction(
                "cannot pad domain: not enough unused codomain elements".into(),
            ));
        }
        let domain = Space::extend_back(&self.domain, "pad", m - n, "domain");
        let mut map = self.map.clone();
        map.extend_from_slice(&spare[..m - n]);
        FiniteFunction::new(domain, self.codomain.clone(), map)
    }
}

/// A two-argument function on a value grid, tabulated over the row-major
/// pair domain. Domain labels are `"a⊗b"` composites of the grid labels.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryFunction {
    grid: Arc<Space>,
    table: FiniteFunction,
}

impl BinaryFunction {
    /// Wrap a pair-domain table. The domain must have exactly
    /// `grid.dim()²` entries laid out row-major.
    pub fn new(grid: Arc<Space>, table: FiniteFunction) -> Result<Self> {
        let n = grid.dim();
        if table.n() != n * n {
            return Err(Error::NotBinaryFunction {
                domain: table.n(),
                codomain: n,
            });
        }
        Ok(BinaryFunction { grid, table })
    }

    /// Tabulate `f(j, k)` over an argument grid into a codomain space.
    pub fn tabulate(
        grid: Arc<Space>,
        codomain: Arc<Space>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = grid.dim();
        let mut labels = Vec::with_capacity(n * n);
        let mut map = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                labels.push(format!(
                    "{}{LABEL_JOIN}{}",
                    grid.label(j),
                    grid.label(k)
                ));
                map.push(f(j, k));
            }
        }
        let domain = Space::new("domain", labels)?;
        let table = FiniteFunction::new(domain, codomain, map)?;
        Ok(BinaryFunction { grid, table })
    }

    pub fn grid(&self) -> &Arc<Space> {
        &self.grid
    }

    /// Grid size n (the pair domain has n² elements).
    pub fn grid_dim(&self) -> usize {
        self.grid.dim()
    }

    /// The underlying pair-domain table.
    pub fn table(&self) -> &FiniteFunction {
        &self.table
    }

    /// Codomain ordinal of the pair `(j, k)`.
    pub fn value(&self, j: usize, k: usize) -> usize {
        self.table.value(j * self.grid_dim() + k)
    }
}

/// Fresh-label helper re-exported for padded spaces in callers.
pub(crate) fn _fresh(preferred: &str, taken: &[String]) -> String {
    fresh_label(preferred, taken)
}

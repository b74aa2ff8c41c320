//! Function tables for neural-network-flavored operations on value grids:
//! squashing functions, scaled/truncated sums, and products.
//!
//! Real-valued functions are discretized onto the grid by nearest-point
//! rounding with ties toward the lower point, so generated tables are
//! reproducible bit for bit.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::function::{BinaryFunction, FiniteFunction};
use crate::space::Space;

/// Point spacing rule of a [`GridSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

/// A finite value grid: `n ≥ 2` strictly increasing points between two bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    n: usize,
    lo: f64,
    hi: f64,
    spacing: Spacing,
}

impl GridSpec {
    pub fn uniform(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        if !(lo < hi) {
            return Err(Error::InvalidGrid(format!(
                "bounds must increase: lo={lo}, hi={hi}"
            )));
        }
        Ok(GridSpec {
            n,
            lo,
            hi,
            spacing: Spacing::Uniform,
        })
    }

    pub fn logarithmic(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        if !(lo > 0.0 && lo < hi) {
            return Err(Error::InvalidGrid(format!(
                "logarithmic grids need 0 < lo < hi, got lo={lo}, hi={hi}"
            )));
        }
        Ok(GridSpec {
            n,
            lo,
            hi,
            spacing: Spacing::Logarithmic,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Uniform step Δx; only meaningful for uniform grids.
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.n - 1) as f64;
        match self.spacing {
            Spacing::Uniform => (0..self.n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / last)
                .collect(),
            Spacing::Logarithmic => (0..self.n)
                .map(|i| self.lo * (self.hi / self.lo).powf(i as f64 / last))
                .collect(),
        }
    }

    /// Labeled space with one label per point (shortest f64 formatting).
    pub fn space(&self, name: impl Into<String>) -> Result<Arc<Space>> {
        let labels = self.points().iter().map(|p| p.to_string()).collect();
        Space::new(name, labels)
    }

    /// Ordinal of the nearest grid point, ties toward the lower point.
    pub fn nearest(&self, v: f64) -> usize {
        let points = self.points();
        let mut best = 0usize;
        let mut best_d = (v - points[0]).abs();
        for (i, &p) in points.iter().enumerate().skip(1) {
            let d = (v - p).abs();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }

    fn require_zero_based_uniform(&self, what: &str) -> Result<()> {
        if self.spacing != Spacing::Uniform || self.lo != 0.0 {
            return Err(Error::InvalidGrid(format!(
                "{what} needs a uniform grid starting at 0"
            )));
        }
        Ok(())
    }
}

/// Unary squashing function to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquashKind {
    /// tanh(x)/tanh(1), the sigmoid normalized to fix ±1.
    TanhRestricted,
    /// Hard limiter: clamp to [-1, 1].
    Truncation,
}

impl SquashKind {
    pub fn name(self) -> &'static str {
        match self {
            SquashKind::TanhRestricted => "tanh-restricted",
            SquashKind::Truncation => "truncation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "tanh-restricted" => Some(SquashKind::TanhRestricted),
            "truncation" => Some(SquashKind::Truncation),
            _ => None,
        }
    }
}

/// Tabulate a squashing function over a grid: each grid point maps to the
/// grid point nearest the function value.
pub fn squash_table(kind: SquashKind, grid: &GridSpec) -> Result<FiniteFunction> {
    if kind == SquashKind::TanhRestricted && !(grid.lo <= -1.0 && grid.hi >= 1.0) {
        return Err(Error::InvalidGrid(format!(
            "tanh-restricted needs the grid to cover [-1, 1], got [{}, {}]",
            grid.lo, grid.hi
        )));
    }
    let space = grid.space("grid")?;
    let map = grid
        .points()
        .iter()
        .map(|&x| {
            let clamped = x.clamp(-1.0, 1.0);
            let y = match kind {
                SquashKind::TanhRestricted => clamped.tanh() / 1f64.tanh(),
                SquashKind::Truncation => clamped,
            };
            grid.nearest(y)
        })
        .collect();
    FiniteFunction::new(space.clone(), space, map)
}

/// Two-argument sum flavor to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// Truncated sum min(x+y, x_max) back onto the argument grid.
    Tsum,
    /// Half sum (x+y)/2 rounded back onto the argument grid.
    Hsum,
    /// Exact sum onto the doubled codomain grid {0, Δx, ..., 2(n-1)Δx}.
    Wide,
}

impl SumKind {
    pub fn name(self) -> &'static str {
        match self {
            SumKind::Tsum => "tsum",
            SumKind::Hsum => "hsum",
            SumKind::Wide => "wide",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "tsum" => Some(SumKind::Tsum),
            "hsum" => Some(SumKind::Hsum),
            "wide" => Some(SumKind::Wide),
            _ => None,
        }
    }
}

/// Tabulate a two-argument sum over a uniform, zero-based grid.
///
/// With ordinals j, k: tsum gives min(j+k, n−1) (all pairs past the main
/// anti-diagonal truncate to the top point), hsum gives ⌊(j+k)/2⌋ (the exact
/// halfway value ties toward the lower point), wide gives j+k on the doubled
/// codomain.
pub fn sum_table(kind: SumKind, grid: &GridSpec) -> Result<BinaryFunction> {
    grid.require_zero_based_uniform("sum_table")?;
    let n = grid.n;
    let space = grid.space("grid")?;
    match kind {
        SumKind::Tsum => {
            BinaryFunction::tabulate(space.clone(), space, |j, k| (j + k).min(n - 1))
        }
        SumKind::Hsum => BinaryFunction::tabulate(space.clone(), space, |j, k| (j + k) / 2),
        SumKind::Wide => {
            let wide = GridSpec::uniform(2 * n - 1, 0.0, 2.0 * grid.hi)?;
            let codomain = wide.space("wide-grid")?;
            BinaryFunction::tabulate(space, codomain, |j, k| j + k)
        }
    }
}

/// Tabulate truncated multiplication over a uniform grid on [0, x_max]:
/// (x, y) ↦ the grid point nearest min(x·y, x_max).
pub fn product_table(grid: &GridSpec) -> Result<BinaryFunction> {
    grid.require_zero_based_uniform("product_table")?;
    let points = grid.points();
    let space = grid.space("grid")?;
    let hi = grid.hi;
    let g = grid.clone();
    BinaryFunction::tabulate(space.clone(), space, move |j, k| {
        g.nearest((points[j] * points[k]).min(hi))
    })
}

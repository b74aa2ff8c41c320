//! States and operators over labeled bases.
//!
//! An [`AmplitudeVector`] holds one complex amplitude per basis label of its
//! [`Space`]. A [`BasisMapOperator`] is a complex matrix between two labeled
//! spaces. All constructions in this crate produce operators whose entries
//! are exact permutation entries or ±1/√k values, so unitarity residuals are
//! expected to sit near machine epsilon; [`UNITARY_TOL`] is the acceptance
//! threshold throughout.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::space::Space;

/// Tolerance for unitarity residuals and norm checks.
pub const UNITARY_TOL: f64 = 1e-12;

/// Largest dimension stored densely; larger matrices use a coordinate list.
pub const DENSE_LIMIT: usize = 4096;

/// A complex state over a labeled basis.
///
/// Squared norm may be below 1: sub-normalized states arise when the garbage
/// component of a kernel output is projected away.
#[derive(Debug, Clone)]
pub struct AmplitudeVector {
    space: Arc<Space>,
    amplitudes: Vec<Complex64>,
}

impl AmplitudeVector {
    pub fn new(space: Arc<Space>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::LengthMismatch(format!(
                "{} amplitudes for space {} of dimension {}",
                amplitudes.len(),
                space.name(),
                space.dim()
            )));
        }
        Ok(AmplitudeVector { space, amplitudes })
    }

    /// All-zero state.
    pub fn zero(space: Arc<Space>) -> Self {
        let dim = space.dim();
        AmplitudeVector {
            space,
            amplitudes: vec![Complex64::ZERO; dim],
        }
    }

    /// Basis state `|ordinal⟩`.
    pub fn basis_state(space: Arc<Space>, ordinal: usize) -> Result<Self> {
        if ordinal >= space.dim() {
            return Err(Error::OrdinalOutOfRange {
                ordinal,
                dim: space.dim(),
                space: space.name().to_string(),
            });
        }
        let mut v = AmplitudeVector::zero(space);
        v.amplitudes[ordinal] = Complex64::ONE;
        Ok(v)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, ordinal: usize) -> Complex64 {
        self.amplitudes[ordinal]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// ⟨self|other⟩ with the conjugate on `self`.
    pub fn inner(&self, other: &AmplitudeVector) -> Result<Complex64> {
        check_space(&self.space, &other.space)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product; `self` labels major, `b` labels minor.
    ///
    /// `tensor(e_i, e_j)` puts its 1 at composite ordinal `i * b.dim() + j`.
    pub fn tensor(&self, b: &AmplitudeVector) -> AmplitudeVector {
        let space = Space::tensor(&self.space, &b.space);
        let mut amplitudes = Vec::with_capacity(self.dim() * b.dim());
        for &x in &self.amplitudes {
            for &y in &b.amplitudes {
                amplitudes.push(x * y);
            }
        }
        AmplitudeVector { space, amplitudes }
    }
}

fn check_space(expected: &Arc<Space>, found: &Arc<Space>) -> Result<()> {
    if Arc::ptr_eq(expected, found) || expected == found {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            expected: format!("{} (dim {})", expected.name(), expected.dim()),
            found: format!("{} (dim {})", found.name(), found.dim()),
        })
    }
}

/// Matrix storage: dense row-major up to [`DENSE_LIMIT`], coordinate list above.
#[derive(Debug, Clone)]
enum Storage {
    Dense(Vec<Complex64>),
    Sparse(Vec<(usize, usize, Complex64)>),
}

/// A complex matrix between labeled bases with input/output register structure.
#[derive(Debug, Clone)]
pub struct BasisMapOperator {
    input: Arc<Space>,
    output: Arc<Space>,
    storage: Storage,
}

impl BasisMapOperator {
    /// Build from a coordinate list of nonzero entries. Duplicate coordinates
    /// accumulate. Entries are stored dense or sparse depending on dimension.
    pub fn from_entries(
        input: Arc<Space>,
        output: Arc<Space>,
        entries: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self> {
        let (rows, cols) = (output.dim(), input.dim());
        if rows.max(cols) <= DENSE_LIMIT {
            let mut data = vec![Complex64::ZERO; rows * cols];
            for (r, c, v) in entries {
                check_coord(r, c, rows, cols)?;
                data[r * cols + c] += v;
            }
            Ok(BasisMapOperator {
                input,
                output,
                storage: Storage::Dense(data),
            })
        } else {
            let mut acc: HashMap<(usize, usize), Complex64> = HashMap::new();
            for (r, c, v) in entries {
                check_coord(r, c, rows, cols)?;
                *acc.entry((r, c)).or_insert(Complex64::ZERO) += v;
            }
            let mut list: Vec<(usize, usize, Complex64)> = acc
                .into_iter()
                .filter(|(_, v)| *v != Complex64::ZERO)
                .map(|((r, c), v)| (r, c, v))
                .collect();
            list.sort_unstable_by_key(|&(r, c, _)| (r, c));
            Ok(BasisMapOperator {
                input,
                output,
                storage: Storage::Sparse(list),
            })
        }
    }

    /// Identity on a space.
    pub fn identity(space: Arc<Space>) -> Self {
        let dim = space.dim();
        BasisMapOperator::from_entries(
            space.clone(),
            space,
            (0..dim).map(|i| (i, i, Complex64::ONE)),
        )
        .expect("identity entries are in range")
    }

    pub fn input_space(&self) -> &Arc<Space> {
        &self.input
    }

    pub fn output_space(&self) -> &Arc<Space> {
        &self.output
    }

    pub fn rows(&self) -> usize {
        self.output.dim()
    }

    pub fn cols(&self) -> usize {
        self.input.dim()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        match &self.storage {
            Storage::Dense(data) => data[row * self.cols() + col],
            Storage::Sparse(list) => list
                .iter()
                .find(|&&(r, c, _)| r == row && c == col)
                .map(|&(_, _, v)| v)
                .unwrap_or(Complex64::ZERO),
        }
    }

    /// Iterate nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, Complex64)> {
        match &self.storage {
            Storage::Dense(data) => {
                let cols = self.cols();
                data.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != Complex64::ZERO)
                    .map(|(i, &v)| (i / cols, i % cols, v))
                    .collect()
            }
            Storage::Sparse(list) => list.clone(),
        }
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(data) => data.iter().filter(|v| **v != Complex64::ZERO).count(),
            Storage::Sparse(list) => list.len(),
        }
    }

    /// Matrix-vector product. The output carries this operator's output labels.
    pub fn apply(&self, v: &AmplitudeVector) -> Result<AmplitudeVector> {
        check_space(&self.input, &v.space)?;
        let mut out = vec![Complex64::ZERO; self.rows()];
        match &self.storage {
            Storage::Dense(data) => {
                let cols = self.cols();
                for (r, out_r) in out.iter_mut().enumerate() {
                    let row = &data[r * cols..(r + 1) * cols];
                    *out_r = row
                        .iter()
                        .zip(&v.amplitudes)
                        .map(|(m, a)| m * a)
                        .sum();
                }
            }
            Storage::Sparse(list) => {
                for &(r, c, m) in list {
                    out[r] += m * v.amplitudes[c];
                }
            }
        }
        AmplitudeVector::new(self.output.clone(), out)
    }

    /// Conjugate transpose; input and output bases swap.
    pub fn adjoint(&self) -> BasisMapOperator {
        let entries: Vec<_> = self
            .nonzeros()
            .into_iter()
            .map(|(r, c, v)| (c, r, v.conj()))
            .collect();
        BasisMapOperator::from_entries(self.output.clone(), self.input.clone(), entries)
            .expect("transposed entries are in range")
    }

    /// Matrix product `self · f` (apply `f` first).
    pub fn compose(&self, f: &BasisMapOperator) -> Result<BasisMapOperator> {
        check_space(&self.input, &f.output)?;
        let mut by_col: HashMap<usize, Vec<(usize, Complex64)>> = HashMap::new();
        for (r, c, v) in self.nonzeros() {
            by_col.entry(c).or_default().push((r, v));
        }
        let mut acc: HashMap<(usize, usize), Complex64> = HashMap::new();
        for (j, k, fv) in f.nonzeros() {
            if let Some(rows) = by_col.get(&j) {
                for &(i, gv) in rows {
                    *acc.entry((i, k)).or_insert(Complex64::ZERO) += gv * fv;
                }
            }
        }
        BasisMapOperator::from_entries(
            f.input.clone(),
            self.output.clone(),
            acc.into_iter().map(|((r, c), v)| (r, c, v)),
        )
    }

    /// max(‖U†U−I‖_max, ‖UU†−I‖_max) for a square operator.
    pub fn unitarity_residual(&self) -> Result<f64> {
        if self.rows() != self.cols() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let entries = self.nonzeros();
        Ok(gram_residual(&entries, self.cols(), GramSide::ColCol)
            .max(gram_residual(&entries, self.rows(), GramSide::RowRow)))
    }

    /// True when the unitarity residual is within [`UNITARY_TOL`].
    pub fn is_unitary(&self) -> bool {
        matches!(self.unitarity_residual(), Ok(r) if r <= UNITARY_TOL)
    }
}

enum GramSide {
    /// U†U: group entries by row, pair columns.
    ColCol,
    /// UU†: group entries by column, pair rows.
    RowRow,
}

/// ‖G − I‖_max where G is U†U (ColCol) or UU† (RowRow), computed from
/// nonzero entries only. Missing diagonal entries count as |0 − 1| = 1.
fn gram_residual(entries: &[(usize, usize, Complex64)], dim: usize, side: GramSide) -> f64 {
    let mut groups: HashMap<usize, Vec<(usize, Complex64)>> = HashMap::new();
    for &(r, c, v) in entries {
        match side {
            GramSide::ColCol => groups.entry(r).or_default().push((c, v)),
            GramSide::RowRow => groups.entry(c).or_default().push((r, v)),
        }
    }
    let mut gram: HashMap<(usize, usize), Complex64> = HashMap::new();
    for items in groups.values() {
        for &(a, va) in items {
            for &(b, vb) in items {
                *gram.entry((a, b)).or_insert(Complex64::ZERO) += va.conj() * vb;
            }
        }
    }
    let mut residual = 0.0f64;
    for (&(a, b), &v) in &gram {
        let target = if a == b { Complex64::ONE } else { Complex64::ZERO };
        residual = residual.max((v - target).norm());
    }
    for d in 0..dim {
        if !gram.contains_key(&(d, d)) {
            residual = residual.max(1.0);
        }
    }
    residual
}

fn check_coord(r: usize, c: usize, rows: usize, cols: usize) -> Result<()> {
    if r >= rows || c >= cols {
        return Err(Error::LengthMismatch(format!(
            "entry ({r},{c}) outside {rows}x{cols} matrix"
        )));
    }
    Ok(())
}

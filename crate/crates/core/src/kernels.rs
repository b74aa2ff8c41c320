//! Unitary graph-kernel constructions over topographic basis maps.
//!
//! A graph kernel realizes a finite function by wiring input basis vectors
//! to output basis vectors. Bijections compile to plain permutation
//! matrices. Non-surjective injections get an ancilla register and become a
//! permutation of the composite basis. Non-injective surjections split the
//! input space into a nonnull part (which computes the function, attenuated
//! by 1/√n_x for preimage multiplicity n_x) and a null part (which carries
//! garbage needed for reversibility). Arbitrary functions combine both on an
//! extended (m+1)(n+1)-dimensional space.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::space::Space;
use crate::state::{AmplitudeVector, BasisMapOperator};

/// Default threshold for reading a set out of an amplitude vector.
///
/// One stage over grids of fewer than 100 points leaves legitimate
/// amplitudes at 1/√n_x ≥ 0.1; chained stages attenuate geometrically, so
/// deep pipelines should raise the threshold check accordingly.
pub const DEFAULT_SET_EPS: f64 = 1e-9;

/// Which of the four constructions produced a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Bijection,
    Injection,
    Surjection,
    Arbitrary,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Bijection => "bijection",
            KernelKind::Injection => "injection",
            KernelKind::Surjection => "surjection",
            KernelKind::Arbitrary => "arbitrary",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "bijection" => Some(KernelKind::Bijection),
            "injection" => Some(KernelKind::Injection),
            "surjection" => Some(KernelKind::Surjection),
            "arbitrary" => Some(KernelKind::Arbitrary),
            _ => None,
        }
    }
}

/// A compiled unitary together with the coordinates that carry the function's
/// argument and result.
///
/// `domain_coords[j]` is the input coordinate of `|x_j⟩` tensored with the
/// fixed ancilla state; `codomain_coords[i]` is the output coordinate whose
/// amplitude signals `y_i`. Output coordinates outside `codomain_coords` are
/// garbage: required for reversibility, ignored by readout.
#[derive(Debug, Clone)]
pub struct FunctionKernel {
    pub kind: KernelKind,
    pub operator: BasisMapOperator,
    pub domain: Arc<Space>,
    pub codomain: Arc<Space>,
    pub domain_coords: Vec<usize>,
    pub codomain_coords: Vec<usize>,
}

/// Result of pushing a crisp set through a kernel.
#[derive(Debug, Clone)]
pub struct SetImage {
    /// Full output state, garbage included.
    pub output: AmplitudeVector,
    /// Codomain ordinals read out above threshold.
    pub image: BTreeSet<usize>,
    /// Norm of the output component outside the computational coordinates.
    pub garbage_norm: f64,
}

impl FunctionKernel {
    /// Dimension of the (square) compiled operator.
    pub fn dim(&self) -> usize {
        self.operator.rows()
    }

    /// Embed a state over the domain space into the kernel's input space
    /// (tensoring with the fixed ancilla basis state where one exists).
    pub fn embed_state(&self, v: &AmplitudeVector) -> Result<AmplitudeVector> {
        if v.space() != &self.domain {
            return Err(Error::SpaceMismatch {
                expected: format!("{} (dim {})", self.domain.name(), self.domain.dim()),
                found: format!("{} (dim {})", v.space().name(), v.space().dim()),
            });
        }
        let mut full = AmplitudeVector::zero(self.operator.input_space().clone());
        let mut amps = vec![Complex64::ZERO; full.dim()];
        for (j, &coord) in self.domain_coords.iter().enumerate() {
            amps[coord] = v.amplitude(j);
        }
        full = AmplitudeVector::new(self.operator.input_space().clone(), amps)?;
        Ok(full)
    }

    /// Embed a crisp subset of the domain as an equal-amplitude state.
    pub fn embed_set(&self, members: &BTreeSet<usize>) -> Result<AmplitudeVector> {
        let v = represent_set(members, &self.domain)?;
        self.embed_state(&v)
    }

    /// Read the represented set off an output state: codomain ordinals whose
    /// computational coordinate carries amplitude above `eps`.
    pub fn extract_set(&self, out: &AmplitudeVector, eps: f64) -> BTreeSet<usize> {
        self.codomain_coords
            .iter()
            .enumerate()
            .filter(|&(_, &coord)| out.amplitude(coord).norm() > eps)
            .map(|(i, _)| i)
            .collect()
    }

    /// Norm of the output component outside the computational coordinates.
    pub fn garbage_norm(&self, out: &AmplitudeVector) -> f64 {
        let total = out.norm_sqr();
        let kept: f64 = self
            .codomain_coords
            .iter()
            .map(|&c| out.amplitude(c).norm_sqr())
            .sum();
        (total - kept).max(0.0).sqrt()
    }

    /// Apply the kernel to a crisp set and read out its image.
    pub fn apply_set(&self, members: &BTreeSet<usize>) -> Result<SetImage> {
        let input = self.embed_set(members)?;
        let output = self.operator.apply(&input)?;
        let image = self.extract_set(&output, DEFAULT_SET_EPS);
        let garbage_norm = self.garbage_norm(&output);
        Ok(SetImage {
            output,
            image,
            garbage_norm,
        })
    }
}

/// One structural block of a kernel construction: the basis-vector dyads it
/// maps and the matrix entries realizing them.
#[derive(Debug, Clone)]
pub struct KernelBlock {
    pub name: &'static str,
    /// Number of input basis vectors (or orthonormal combinations) mapped.
    pub dyads: usize,
    pub entries: Vec<(usize, usize, Complex64)>,
}

// ---------------------------------------------------------------------------
// Bijections: plain permutation matrices.
// ---------------------------------------------------------------------------

/// Permutation kernel of a bijection: `T |x_j⟩ = |f(x_j)⟩`.
pub fn bijection_kernel(f: &FiniteFunction) -> Result<FunctionKernel> {
    let stats = f.stats();
    if stats.n != stats.m {
        return Err(Error::NotBijective(format!(
            "domain size {} != codomain size {}",
            stats.n, stats.m
        )));
    }
    if stats.n_n > 0 || stats.m_nr > 0 {
        return Err(Error::NotBijective(format!(
            "{} non-injective domain elements, {} unreached codomain elements",
            stats.n_n, stats.m_nr
        )));
    }
    let entries = (0..f.n()).map(|j| (f.value(j), j, Complex64::ONE));
    let operator =
        BasisMapOperator::from_entries(f.domain().clone(), f.codomain().clone(), entries)?;
    Ok(FunctionKernel {
        kind: KernelKind::Bijection,
        operator,
        domain: f.domain().clone(),
        codomain: f.codomain().clone(),
        domain_coords: (0..f.n()).collect(),
        codomain_coords: (0..f.m()).collect(),
    })
}

// ---------------------------------------------------------------------------
// Non-surjective injections: permutation of an mn-dimensional composite basis.
// ---------------------------------------------------------------------------

/// The four permutation blocks of the injection construction.
///
/// Input space is H(Ω)⊗H_C with the codomain basis reused for the constant
/// register H_C; output space is H(Ω′)⊗H_G with the domain basis reused for
/// the garbage register. Composite coordinates are row-major.
pub fn injection_blocks(f: &FiniteFunction) -> Result<Vec<KernelBlock>> {
    let stats = f.stats();
    if stats.n_n > 0 {
        return Err(Error::NotInjective(format!(
            "{} domain elements share an image",
            stats.n_n
        )));
    }
    if stats.n >= stats.m {
        return Err(Error::NotInjective(format!(
            "domain size {} must be smaller than codomain size {} (use the bijection kernel when equal)",
            stats.n, stats.m
        )));
    }
    let (n, m) = (stats.n, stats.m);
    let m_nr = stats.m_nr;
    let non_range = f.non_range_ordinals();
    let one = Complex64::ONE;

    // in-coordinate (x_j, w_b) = j*m + b; out-coordinate (y_i, v_a) = i*n + a
    let mut function = Vec::with_capacity(n);
    for j in 0..n {
        function.push((f.value(j) * n, j * m, one));
    }
    let mut nonrange = Vec::with_capacity(m_nr);
    for (t, &z) in non_range.iter().enumerate() {
        nonrange.push((z * n, t + 1, one));
    }
    let mut bulk = Vec::with_capacity((m - 1) * (n - 1));
    for i in 1..m {
        for j in 1..n {
            bulk.push((i * n + j, j * m + i, one));
        }
    }
    // The leftover x_1 columns feed the leftover garbage coordinates of y_1.
    // The constant-register index starts one past the non-range block so the
    // blocks stay disjoint.
    let mut remainder = Vec::with_capacity(n - 1);
    for j in 1..n {
        remainder.push((j, m_nr + j, one));
    }

    Ok(vec![
        KernelBlock {
            name: "function",
            dyads: function.len(),
            entries: function,
        },
        KernelBlock {
            name: "non-range",
            dyads: nonrange.len(),
            entries: nonrange,
        },
        KernelBlock {
            name: "bulk",
            dyads: bulk.len(),
            entries: bulk,
        },
        KernelBlock {
            name: "remainder",
            dyads: remainder.len(),
            entries: remainder,
        },
    ])
}

/// Unitary embedding of a non-surjective injection on the mn-dimensional
/// composite space: `U(|x⟩⊗|w_1⟩) = |f(x)⟩⊗|v_1⟩`.
pub fn injection_unitary(f: &FiniteFunction) -> Result<FunctionKernel> {
    let blocks = injection_blocks(f)?;
    let input = Space::tensor(f.domain(), f.codomain());
    let output = Space::tensor(f.codomain(), f.domain());
    let entries = blocks.into_iter().flat_map(|b| b.entries);
    let operator = BasisMapOperator::from_entries(input, output, entries)?;
    let (n, m) = (f.n(), f.m());
    Ok(FunctionKernel {
        kind: KernelKind::Injection,
        operator,
        domain: f.domain().clone(),
        codomain: f.codomain().clone(),
        domain_coords: (0..n).map(|j| j * m).collect(),
        codomain_coords: (0..m).map(|i| i * n).collect(),
    })
}

// ---------------------------------------------------------------------------
// Non-injective surjections: nonnull/null decomposition.
// ---------------------------------------------------------------------------

/// Orthonormal split of the input space driven by the preimage structure of
/// a surjection.
///
/// `nonnull[i]` is the normalized equal superposition over the preimage of
/// `y_i`; `null` spans the complement, built per preimage block from
/// differences against the block's first element (Gram–Schmidt in index
/// order); `garbage` are the output-side coordinates that receive the null
/// components.
#[derive(Debug, Clone)]
pub struct SurjectionDecomposition {
    pub nonnull: Vec<AmplitudeVector>,
    pub null: Vec<AmplitudeVector>,
    pub garbage: Vec<AmplitudeVector>,
    pub multiplicities: Vec<usize>,
    /// The output space: codomain labels followed by garbage coordinates.
    pub output_space: Arc<Space>,
}

fn require_surjective(f: &FiniteFunction) -> Result<()> {
    let missing = f.missing_range_labels();
    if !missing.is_empty() {
        return Err(Error::NotSurjective { missing });
    }
    Ok(())
}

/// Decompose the input space of a surjection into nonnull and null bases.
pub fn surjection_decomposition(f: &FiniteFunction) -> Result<SurjectionDecomposition> {
    require_surjective(f)?;
    let stats = f.stats();
    let (n, m) = (stats.n, stats.m);
    let domain = f.domain().clone();
    let output_space = Space::extend_back(f.codomain(), "w", n - m, "range+garbage");

    let mut nonnull = Vec::with_capacity(m);
    let mut null = Vec::new();
    for i in 0..m {
        let block = f.preimage(i);
        let k = block.len();
        let scale = Complex64::new(1.0 / (k as f64).sqrt(), 0.0);
        let mut amps = vec![Complex64::ZERO; n];
        for &j in &block {
            amps[j] = scale;
        }
        nonnull.push(AmplitudeVector::new(domain.clone(), amps)?);
        null.extend(block_null_vectors(&domain, &block)?);
    }
    let garbage = (0..n - m)
        .map(|k| AmplitudeVector::basis_state(output_space.clone(), m + k))
        .collect::<Result<Vec<_>>>()?;
    Ok(SurjectionDecomposition {
        nonnull,
        null,
        garbage,
        multiplicities: stats.multiplicities,
        output_space,
    })
}

/// Null vectors for one preimage block: Gram–Schmidt over the differences
/// |first⟩ − |other⟩ in block index order.
fn block_null_vectors(domain: &Arc<Space>, block: &[usize]) -> Result<Vec<AmplitudeVector>> {
    let n = domain.dim();
    let mut vectors: Vec<Vec<Complex64>> = Vec::new();
    for t in 1..block.len() {
        let mut d = vec![Complex64::ZERO; n];
        d[block[0]] += Complex64::ONE;
        d[block[t]] -= Complex64::ONE;
        for prev in &vectors {
            let overlap: Complex64 = prev
                .iter()
                .zip(&d)
                .map(|(p, x)| p.conj() * x)
                .sum();
            for (di, pi) in d.iter_mut().zip(prev) {
                *di -= overlap * pi;
            }
        }
        let norm = d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut d {
            *z /= Complex64::new(norm, 0.0);
        }
        vectors.push(d);
    }
    vectors
        .into_iter()
        .map(|amps| AmplitudeVector::new(domain.clone(), amps))
        .collect()
}

/// Unitary kernel of a surjection on the n-dimensional space:
/// `T|x⟩ = (1/√n_x)|f(x)⟩ + |γ⟩` with `‖γ‖ = √((n_x−1)/n_x)`.
pub fn surjection_unitary(f: &FiniteFunction) -> Result<FunctionKernel> {
    let dec = surjection_decomposition(f)?;
    let m = f.m();
    let mut entries = Vec::new();
    for (i, u) in dec.nonnull.iter().enumerate() {
        for (j, &a) in u.amplitudes().iter().enumerate() {
            if a != Complex64::ZERO {
                entries.push((i, j, a.conj()));
            }
        }
    }
    for (k, v) in dec.null.iter().enumerate() {
        for (j, &a) in v.amplitudes().iter().enumerate() {
            if a != Complex64::ZERO {
                entries.push((m + k, j, a.conj()));
            }
        }
    }
    let operator =
        BasisMapOperator::from_entries(f.domain().clone(), dec.output_space.clone(), entries)?;
    Ok(FunctionKernel {
        kind: KernelKind::Surjection,
        operator,
        domain: f.domain().clone(),
        codomain: f.codomain().clone(),
        domain_coords: (0..f.n()).collect(),
        codomain_coords: (0..m).collect(),
    })
}

// ---------------------------------------------------------------------------
// Arbitrary functions: extended (m+1)(n+1)-dimensional construction.
// ---------------------------------------------------------------------------

/// The six blocks of the arbitrary-function construction over
/// H(Ω°)⊗H(Ω*) → H(Ω*)⊗H(Ω°), where Ω° and Ω* prepend the garbage slots
/// x0 and y0 to the domain and codomain.
pub fn arbitrary_blocks(f: &FiniteFunction) -> Vec<KernelBlock> {
    let stats = f.stats();
    let (n, m) = (stats.n, stats.m);
    let range = f.range_ordinals();
    let non_range = f.non_range_ordinals();
    let m_r = range.len();
    let m_nr = non_range.len();
    let n_o = n - m_r;
    let one = Complex64::ONE;

    // in-coordinate (a, b) = a*(m+1) + b with a=0 ↦ x0; out (c, d) = c*(n+1) + d with c=0 ↦ y0
    let in_coord = |a: usize, b: usize| a * (m + 1) + b;
    let out_coord = |c: usize, d: usize| c * (n + 1) + d;

    // "function": each range element receives its preimage superposition.
    let mut function = Vec::new();
    let mut m_dyads = 0;
    for &r in &range {
        let block = f.preimage(r);
        let scale = Complex64::new(1.0 / (block.len() as f64).sqrt(), 0.0);
        for &j in &block {
            function.push((out_coord(r + 1, 0), in_coord(j + 1, 0), scale));
        }
        m_dyads += 1;
    }

    // "null": null-space components drop into the y0 garbage block.
    let mut null_entries = Vec::new();
    let mut n_dyads = 0;
    let domain = f.domain().clone();
    for &r in &range {
        let block = f.preimage(r);
        for v in block_null_vectors(&domain, &block).expect("null vectors over the domain") {
            n_dyads += 1;
            for (j, &a) in v.amplitudes().iter().enumerate() {
                if a != Complex64::ZERO {
                    null_entries.push((out_coord(0, n_dyads), in_coord(j + 1, 0), a.conj()));
                }
            }
        }
    }
    debug_assert_eq!(n_dyads, n_o);

    // "non-range": ancilla zeros feed codomain elements with no preimage.
    let mut nonrange = Vec::with_capacity(m_nr);
    for (t, &z) in non_range.iter().enumerate() {
        nonrange.push((out_coord(z + 1, 0), in_coord(0, t + 1), one));
    }

    // "swap": composite vectors with neither garbage slot map to their reverses.
    let mut swap = Vec::with_capacity(m * n);
    for i in 1..=m {
        for j in 1..=n {
            swap.push((out_coord(i, j), in_coord(j, i)));
        }
    }
    let swap: Vec<_> = swap.into_iter().map(|(r, c)| (r, c, one)).collect();

    // "remainder": leftover x0-column vectors fill the y0 coordinates unused
    // by the null block.
    let mut remainder = Vec::with_capacity(m_r);
    for t in 0..m_r {
        remainder.push((out_coord(0, n_o + t + 1), in_coord(0, m_nr + t + 1), one));
    }

    // "anchor": the pure garbage state maps to its reverse.
    let anchor = vec![(out_coord(0, 0), in_coord(0, 0), one)];

    vec![
        KernelBlock {
            name: "function",
            dyads: m_dyads,
            entries: function,
        },
        KernelBlock {
            name: "null",
            dyads: n_dyads,
            entries: null_entries,
        },
        KernelBlock {
            name: "non-range",
            dyads: nonrange.len(),
            entries: nonrange,
        },
        KernelBlock {
            name: "swap",
            dyads: swap.len(),
            entries: swap,
        },
        KernelBlock {
            name: "remainder",
            dyads: remainder.len(),
            entries: remainder,
        },
        KernelBlock {
            name: "anchor",
            dyads: 1,
            entries: anchor,
        },
    ]
}

/// Unitary kernel of an arbitrary finite function on the
/// (m+1)(n+1)-dimensional extended space:
/// `U[(s|x⟩ + t|x0⟩)⊗|y0⟩] = s·s_x|f(x),x0⟩ + |y0⟩(s|γ⟩ + t|x0⟩)`.
pub fn arbitrary_unitary(f: &FiniteFunction) -> FunctionKernel {
    let blocks = arbitrary_blocks(f);
    let ext_domain = Space::extend_front(f.domain(), "x0", "domain°");
    let ext_codomain = Space::extend_front(f.codomain(), "y0", "codomain*");
    let input = Space::tensor(&ext_domain, &ext_codomain);
    let output = Space::tensor(&ext_codomain, &ext_domain);
    let entries = blocks.into_iter().flat_map(|b| b.entries);
    let operator = BasisMapOperator::from_entries(input, output, entries)
        .expect("extended-space entries are in range");
    let (n, m) = (f.n(), f.m());
    FunctionKernel {
        kind: KernelKind::Arbitrary,
        operator,
        domain: f.domain().clone(),
        codomain: f.codomain().clone(),
        domain_coords: (0..n).map(|j| (j + 1) * (m + 1)).collect(),
        codomain_coords: (0..m).map(|i| (i + 1) * (n + 1)).collect(),
    }
}

/// Compile a function with the construction matching its shape.
pub fn compile(kind: KernelKind, f: &FiniteFunction) -> Result<FunctionKernel> {
    match kind {
        KernelKind::Bijection => bijection_kernel(f),
        KernelKind::Injection => injection_unitary(f),
        KernelKind::Surjection => surjection_unitary(f),
        KernelKind::Arbitrary => Ok(arbitrary_unitary(f)),
    }
}

// ---------------------------------------------------------------------------
// Set semantics over basis-map states.
// ---------------------------------------------------------------------------

/// Equal-amplitude state over a crisp subset: 1/√|S| on members, 0 elsewhere.
/// The empty set is the zero vector.
pub fn represent_set(members: &BTreeSet<usize>, space: &Arc<Space>) -> Result<AmplitudeVector> {
    let mut amps = vec![Complex64::ZERO; space.dim()];
    if members.is_empty() {
        return AmplitudeVector::new(space.clone(), amps);
    }
    let scale = Complex64::new(1.0 / (members.len() as f64).sqrt(), 0.0);
    for &j in members {
        if j >= space.dim() {
            return Err(Error::OrdinalOutOfRange {
                ordinal: j,
                dim: space.dim(),
                space: space.name().to_string(),
            });
        }
        amps[j] = scale;
    }
    AmplitudeVector::new(space.clone(), amps)
}

/// Ordinals whose amplitude magnitude exceeds `eps`, for a state directly
/// over a value space. Kernel outputs should use
/// [`FunctionKernel::extract_set`], which skips garbage coordinates.
pub fn extract_set(v: &AmplitudeVector, eps: f64) -> BTreeSet<usize> {
    v.amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > eps)
        .map(|(j, _)| j)
        .collect()
}

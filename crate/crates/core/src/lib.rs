//! Compile finite functions into unitary operators over labeled basis maps
//! and into reversible gate circuits over qubit maps, then simulate and
//! verify them.
//!
//! The crate is organized around two map representations:
//!
//! - **Basis maps** ([`state`], [`kernels`]): each value of a finite grid is
//!   one basis vector of a labeled Hilbert space; a function becomes a
//!   unitary "graph kernel" wiring inputs to outputs, with ancilla and
//!   garbage registers making non-bijective functions reversible.
//! - **Qubit maps** ([`circuit`], [`synth`], [`sim`]): each value gets one
//!   qubit whose |1⟩-amplitude encodes (possibly fuzzy) membership; functions
//!   compile to X/CNOT/CCNOT/CSWAP circuits replayable classically on crisp
//!   sets or exactly on a dense state vector.
//!
//! [`tables`] and [`plan`] generate the function tables used by
//! neural-network-style pipelines (squashing, truncated sums, products,
//! inner products) and estimate qubit budgets. [`io`] pins the reproducible
//! text formats for every artifact.

pub mod circuit;
pub mod error;
pub mod function;
pub mod io;
pub mod kernels;
pub mod plan;
pub mod sim;
pub mod space;
pub mod state;
pub mod synth;
pub mod tables;

pub use circuit::{FinalRole, Gate, GateCircuit, InitialRole, RegisterLayout};
pub use error::{Error, Result};
pub use function::{BinaryFunction, FiniteFunction, FunctionStats};
pub use kernels::{
    arbitrary_unitary, bijection_kernel, extract_set, injection_unitary, represent_set,
    surjection_decomposition, surjection_unitary, FunctionKernel, KernelKind,
    SurjectionDecomposition,
};
pub use plan::{estimate_layer, inner_product_plan, InnerProductPlan, LayerEstimate};
pub use sim::{simulate_basis, simulate_statevector, MembershipVector};
pub use space::Space;
pub use state::{AmplitudeVector, BasisMapOperator, UNITARY_TOL};
pub use synth::{
    binary_map_circuit, copy_crisp_map, demux_circuit, or2_circuit, orn_circuit,
    outer_product_circuit, unary_map_circuit,
};
pub use tables::{product_table, squash_table, sum_table, GridSpec, SquashKind, SumKind};

//! Two simulation backends for gate circuits.
//!
//! All gates permute computational basis states, so crisp (basis-state)
//! semantics replays classically in O(gates) on any qubit count. Amplitude
//! semantics uses a dense state vector and is capped at
//! [`DEFAULT_QUBIT_CAP`] qubits. Bit strings and state indices are read
//! with qubit 0 as the most significant bit.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;

use crate::circuit::{Gate, GateCircuit, InitialRole, RegisterLayout};
use crate::error::{Error, Result};
use crate::space::Space;
use crate::state::AmplitudeVector;

/// Default cap for dense state-vector simulation.
pub const DEFAULT_QUBIT_CAP: usize = 20;

/// Crisp or fuzzy membership values over a value grid: one value in [0, 1]
/// per location. Location j encodes qubit j as √(1−m²)|0⟩ + m|1⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipVector {
    values: Vec<f64>,
}

impl MembershipVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (j, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::LengthMismatch(format!(
                    "membership value {v} at location {j} outside [0, 1]"
                )));
            }
        }
        Ok(MembershipVector { values })
    }

    /// Crisp map of a subset of `n` locations.
    pub fn crisp(members: &BTreeSet<usize>, n: usize) -> Result<Self> {
        let mut values = vec![0.0; n];
        for &j in members {
            if j >= n {
                return Err(Error::LengthMismatch(format!(
                    "member {j} outside map of {n} locations"
                )));
            }
            values[j] = 1.0;
        }
        Ok(MembershipVector { values })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        MembershipVector {
            values: bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// True when every membership is exactly 0 or 1.
    pub fn is_crisp(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }
}

/// Fill a full per-qubit membership assignment from per-argument maps,
/// with ancillae at their constants.
pub fn initial_memberships(
    layout: &RegisterLayout,
    args: &[&MembershipVector],
) -> Result<MembershipVector> {
    let mut per_arg_next = vec![0usize; args.len()];
    let mut values = Vec::with_capacity(layout.qubit_count());
    for role in &layout.initial {
        values.push(match role {
            InitialRole::InputMap { arg } => {
                let a = *arg;
                if a >= args.len() {
                    return Err(Error::LengthMismatch(format!(
                        "circuit expects argument {a}, got {} arguments",
                        args.len()
                    )));
                }
                let k = per_arg_next[a];
                per_arg_next[a] += 1;
                *args[a].values().get(k).ok_or_else(|| {
                    Error::LengthMismatch(format!(
                        "argument {a} has {} locations, need at least {}",
                        args[a].len(),
                        k + 1
                    ))
                })?
            }
            InitialRole::AncillaZero => 0.0,
            InitialRole::AncillaOne => 1.0,
        });
    }
    MembershipVector::new(values)
}

/// Exact classical replay of a circuit on a basis state.
pub fn simulate_basis(circuit: &GateCircuit, input: &[bool]) -> Result<Vec<bool>> {
    if input.len() != circuit.qubit_count() {
        return Err(Error::LengthMismatch(format!(
            "{} input bits for {} qubits",
            input.len(),
            circuit.qubit_count()
        )));
    }
    let mut bits = input.to_vec();
    for gate in circuit.gates() {
        match *gate {
            Gate::X { target } => bits[target] = !bits[target],
            Gate::Cnot { control, target } => {
                if bits[control] {
                    bits[target] = !bits[target];
                }
            }
            Gate::Ccnot { c1, c2, target } => {
                if bits[c1] && bits[c2] {
                    bits[target] = !bits[target];
                }
            }
            Gate::Swap { a, b } => bits.swap(a, b),
            Gate::Cswap { control, a, b } => {
                if bits[control] {
                    bits.swap(a, b);
                }
            }
        }
    }
    Ok(bits)
}

/// Space whose labels are the 2^q bit strings of q qubits, qubit 0 leftmost.
pub fn bitstring_space(qubits: usize) -> Arc<Space> {
    let dim = 1usize << qubits;
    let labels = (0..dim)
        .map(|i| {
            (0..qubits)
                .map(|q| if i >> (qubits - 1 - q) & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect();
    Space::new(format!("{qubits}q"), labels).expect("bit strings are unique")
}

/// Index of a basis state given its bits (qubit 0 most significant).
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

/// Bits of a basis state index (qubit 0 most significant).
pub fn index_to_bits(index: usize, qubits: usize) -> Vec<bool> {
    (0..qubits)
        .map(|q| index >> (qubits - 1 - q) & 1 == 1)
        .collect()
}

/// Dense state-vector simulation from per-qubit product inputs, capped at
/// [`DEFAULT_QUBIT_CAP`] qubits.
pub fn simulate_statevector(
    circuit: &GateCircuit,
    inputs: &MembershipVector,
) -> Result<AmplitudeVector> {
    simulate_statevector_with_cap(circuit, inputs, DEFAULT_QUBIT_CAP)
}

/// Dense state-vector simulation with an explicit qubit cap.
pub fn simulate_statevector_with_cap(
    circuit: &GateCircuit,
    inputs: &MembershipVector,
    cap: usize,
) -> Result<AmplitudeVector> {
    let q = circuit.qubit_count();
    if q > cap {
        return Err(Error::QubitCapExceeded { qubits: q, cap });
    }
    if inputs.len() != q {
        return Err(Error::LengthMismatch(format!(
            "{} membership values for {} qubits",
            inputs.len(),
            q
        )));
    }

    // Product-state initialization in MSB-first index order.
    let mut amps = vec![Complex64::ONE];
    for &m in inputs.values() {
        let a1 = Complex64::new(m, 0.0);
        let a0 = Complex64::new((1.0 - m * m).max(0.0).sqrt(), 0.0);
        let mut next = Vec::with_capacity(amps.len() * 2);
        for &a in &amps {
            next.push(a * a0);
            next.push(a * a1);
        }
        amps = next;
    }

    let mask = |qubit: usize| 1usize << (q - 1 - qubit);
    for gate in circuit.gates() {
        match *gate {
            Gate::X { target } => {
                let mt = mask(target);
                for i in 0..amps.len() {
                    if i & mt == 0 {
                        amps.swap(i, i | mt);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (mc, mt) = (mask(control), mask(target));
                for i in 0..amps.len() {
                    if i & mc != 0 && i & mt == 0 {
                        amps.swap(i, i | mt);
                    }
                }
            }
            Gate::Ccnot { c1, c2, target } => {
                let (m1, m2, mt) = (mask(c1), mask(c2), mask(target));
                for i in 0..amps.len() {
                    if i & m1 != 0 && i & m2 != 0 && i & mt == 0 {
                        amps.swap(i, i | mt);
                    }
                }
            }
            Gate::Swap { a, b } => {
                let (ma, mb) = (mask(a), mask(b));
                for i in 0..amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        amps.swap(i, i ^ ma ^ mb);
                    }
                }
            }
            Gate::Cswap { control, a, b } => {
                let (mc, ma, mb) = (mask(control), mask(a), mask(b));
                for i in 0..amps.len() {
                    if i & mc != 0 && i & ma != 0 && i & mb == 0 {
                        amps.swap(i, i ^ ma ^ mb);
                    }
                }
            }
        }
    }
    AmplitudeVector::new(bitstring_space(q), amps)
}

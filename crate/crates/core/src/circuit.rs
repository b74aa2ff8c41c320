//! Reversible gate circuits over indexed qubits.
//!
//! Every gate in the set {X, CNOT, CCNOT, SWAP, CSWAP} permutes computational
//! basis states and is its own inverse, so a circuit is inverted by replaying
//! its gate list backwards.

use crate::error::{Error, Result};

/// A reversible gate. Controls and targets are qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    X { target: usize },
    Cnot { control: usize, target: usize },
    Ccnot { c1: usize, c2: usize, target: usize },
    Swap { a: usize, b: usize },
    Cswap { control: usize, a: usize, b: usize },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::X { target } => vec![target],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Ccnot { c1, c2, target } => vec![c1, c2, target],
            Gate::Swap { a, b } => vec![a, b],
            Gate::Cswap { control, a, b } => vec![control, a, b],
        }
    }
}

/// An ordered list of reversible gates over a fixed set of qubits.
#[derive(Debug, Clone, Default)]
pub struct GateCircuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl GateCircuit {
    pub fn new(qubits: usize) -> Self {
        GateCircuit {
            qubits,
            gates: Vec::new(),
        }
    }

    /// Append a gate, checking index bounds and distinctness.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        for &q in &qs {
            if q >= self.qubits {
                return Err(Error::InvalidGate(format!(
                    "qubit {q} outside circuit of {} qubits",
                    self.qubits
                )));
            }
        }
        for (i, &a) in qs.iter().enumerate() {
            if qs[i + 1..].contains(&a) {
                return Err(Error::InvalidGate(format!(
                    "gate {gate:?} repeats qubit {a}"
                )));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// The inverse circuit: gates in reverse order (each gate is self-inverse).
    pub fn inverted(&self) -> GateCircuit {
        GateCircuit {
            qubits: self.qubits,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }
}

/// Initial role of a qubit: what it must hold when the circuit starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialRole {
    /// Carries one location of an input map; `arg` distinguishes the
    /// argument for multi-argument circuits.
    InputMap { arg: usize },
    /// Constant |0⟩ ancilla.
    AncillaZero,
    /// Constant |1⟩ ancilla.
    AncillaOne,
}

/// Final role of a qubit: what it holds when the circuit ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalRole {
    /// Carries the named codomain ordinal of the output map.
    OutputMap { codomain: usize },
    /// Entangled leftovers; must be retained but carries no result.
    Garbage,
    /// An input (or register) that survives unchanged.
    Passthrough,
}

/// Role annotations for every qubit of a circuit: one initial role and one
/// final role per index. Input-map qubits appear first and in argument
/// order, so the k-th input-map qubit of an argument carries that
/// argument's k-th map location.
#[derive(Debug, Clone)]
pub struct RegisterLayout {
    pub initial: Vec<InitialRole>,
    pub fin: Vec<FinalRole>,
}

impl RegisterLayout {
    pub fn new(initial: Vec<InitialRole>, fin: Vec<FinalRole>) -> Result<Self> {
        if initial.len() != fin.len() {
            return Err(Error::LengthMismatch(format!(
                "{} initial roles vs {} final roles",
                initial.len(),
                fin.len()
            )));
        }
        Ok(RegisterLayout { initial, fin })
    }

    pub fn qubit_count(&self) -> usize {
        self.initial.len()
    }

    /// Indices of input-map qubits for one argument, in map order.
    pub fn input_qubits(&self, arg: usize) -> Vec<usize> {
        self.initial
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, InitialRole::InputMap { arg: a } if *a == arg))
            .map(|(q, _)| q)
            .collect()
    }

    /// Qubit index carrying codomain ordinal `i`, if any.
    pub fn output_qubit(&self, codomain: usize) -> Option<usize> {
        self.fin.iter().position(
            |r| matches!(r, FinalRole::OutputMap { codomain: c } if *c == codomain),
        )
    }

    /// All `(qubit, codomain ordinal)` output pairs, by qubit index.
    pub fn output_qubits(&self) -> Vec<(usize, usize)> {
        self.fin
            .iter()
            .enumerate()
            .filter_map(|(q, r)| match r {
                FinalRole::OutputMap { codomain } => Some((q, *codomain)),
                _ => None,
            })
            .collect()
    }

    pub fn count_initial(&self, want: fn(&InitialRole) -> bool) -> usize {
        self.initial.iter().filter(|r| want(r)).count()
    }

    pub fn ancilla_zero_count(&self) -> usize {
        self.count_initial(|r| matches!(r, InitialRole::AncillaZero))
    }

    pub fn ancilla_one_count(&self) -> usize {
        self.count_initial(|r| matches!(r, InitialRole::AncillaOne))
    }

    pub fn input_count(&self) -> usize {
        self.count_initial(|r| matches!(r, InitialRole::InputMap { .. }))
    }

    pub fn garbage_count(&self) -> usize {
        self.fin
            .iter()
            .filter(|r| matches!(r, FinalRole::Garbage))
            .count()
    }

    pub fn passthrough_count(&self) -> usize {
        self.fin
            .iter()
            .filter(|r| matches!(r, FinalRole::Passthrough))
            .count()
    }

    pub fn output_count(&self) -> usize {
        self.fin
            .iter()
            .filter(|r| matches!(r, FinalRole::OutputMap { .. }))
            .count()
    }

    /// Build the full initial bit assignment from per-argument crisp maps:
    /// input-map qubits take the given bits, ancillae their constants.
    pub fn initial_bits(&self, args: &[&[bool]]) -> Result<Vec<bool>> {
        let mut per_arg_next = vec![0usize; args.len()];
        let mut bits = Vec::with_capacity(self.qubit_count());
        for role in &self.initial {
            bits.push(match role {
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
                    *args[a].get(k).ok_or_else(|| {
                        Error::LengthMismatch(format!(
                            "argument {a} has {} bits, need at least {}",
                            args[a].len(),
                            k + 1
                        ))
                    })?
                }
                InitialRole::AncillaZero => false,
                InitialRole::AncillaOne => true,
            });
        }
        for (a, &next) in per_arg_next.iter().enumerate() {
            if next != args[a].len() {
                return Err(Error::LengthMismatch(format!(
                    "argument {a} has {} bits but the circuit consumes {next}",
                    args[a].len()
                )));
            }
        }
        Ok(bits)
    }

    /// Map final bits back to the set of codomain ordinals that read 1.
    pub fn read_output_set(&self, bits: &[bool]) -> Result<std::collections::BTreeSet<usize>> {
        if bits.len() != self.qubit_count() {
            return Err(Error::LengthMismatch(format!(
                "{} bits for {} qubits",
                bits.len(),
                self.qubit_count()
            )));
        }
        Ok(self
            .output_qubits()
            .into_iter()
            .filter(|&(q, _)| bits[q])
            .map(|(_, i)| i)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_checks_bounds_and_distinctness() {
        let mut c = GateCircuit::new(2);
        assert!(c.push(Gate::Cnot { control: 0, target: 1 }).is_ok());
        assert!(c.push(Gate::X { target: 2 }).is_err());
        assert!(c.push(Gate::Cnot { control: 1, target: 1 }).is_err());
        assert_eq!(c.gate_count(), 1);
    }

    #[test]
    fn inverted_reverses_gate_order() {
        let mut c = GateCircuit::new(3);
        c.push(Gate::X { target: 0 }).unwrap();
        c.push(Gate::Ccnot { c1: 0, c2: 1, target: 2 }).unwrap();
        let inv = c.inverted();
        assert_eq!(inv.gates()[0], Gate::Ccnot { c1: 0, c2: 1, target: 2 });
        assert_eq!(inv.gates()[1], Gate::X { target: 0 });
    }

    #[test]
    fn layout_initial_bits_fill_ancillae() {
        let layout = RegisterLayout::new(
            vec![
                InitialRole::InputMap { arg: 0 },
                InitialRole::InputMap { arg: 0 },
                InitialRole::AncillaZero,
                InitialRole::AncillaOne,
            ],
            vec![
                FinalRole::Garbage,
                FinalRole::Garbage,
                FinalRole::OutputMap { codomain: 0 },
                FinalRole::OutputMap { codomain: 1 },
            ],
        )
        .unwrap();
        let bits = layout.initial_bits(&[&[true, false]]).unwrap();
        assert_eq!(bits, vec![true, false, false, true]);
        let set = layout.read_output_set(&[true, true, false, true]).unwrap();
        assert_eq!(set, [1].into());
    }
}

//! Synthesis of reversible circuits computing functions on topographic
//! qubit maps.
//!
//! Each map location gets one qubit; |1⟩-amplitude encodes membership.
//! Non-range outputs are fed constant |0⟩ ancillae, injectively mapped
//! locations are passed through by relabeling, and locations with several
//! preimages receive the OR of their preimage qubits via Toffoli cascades.
//! Qubit order is always: input maps (argument order), then the |0⟩
//! ancilla block, then the |1⟩ ancilla block. Output roles are annotations
//! over final positions.

use crate::circuit::{FinalRole, Gate, GateCircuit, InitialRole, RegisterLayout};
use crate::error::{Error, Result};
use crate::function::{BinaryFunction, FiniteFunction};

/// Two-input OR: X on both inputs, then a Toffoli into the |1⟩ ancilla.
/// The ancilla ends up carrying p ∨ q; the inputs end up negated (garbage).
pub fn or2_circuit(q1: usize, q2: usize, anc: usize) -> Result<GateCircuit> {
    if q1 == q2 || q1 == anc || q2 == anc {
        return Err(Error::InvalidGate(format!(
            "or2 needs three distinct qubits, got {q1}, {q2}, {anc}"
        )));
    }
    let mut c = GateCircuit::new(q1.max(q2).max(anc) + 1);
    push_or2(&mut c, q1, q2, anc)?;
    Ok(c)
}

fn push_or2(c: &mut GateCircuit, q1: usize, q2: usize, anc: usize) -> Result<()> {
    c.push(Gate::X { target: q1 })?;
    c.push(Gate::X { target: q2 })?;
    c.push(Gate::Ccnot {
        c1: q1,
        c2: q2,
        target: anc,
    })
}

/// OR of `inputs.len()` qubits as a left-to-right cascade of two-input ORs.
/// Needs one |1⟩ ancilla per cascade step; the last ancilla carries the OR.
/// A single input is the identity (empty circuit).
pub fn orn_circuit(inputs: &[usize], ancs: &[usize]) -> Result<GateCircuit> {
    if inputs.is_empty() {
        return Err(Error::LengthMismatch("orn needs at least one input".into()));
    }
    if ancs.len() + 1 != inputs.len() {
        return Err(Error::LengthMismatch(format!(
            "orn over {} inputs needs {} ancillae, got {}",
            inputs.len(),
            inputs.len() - 1,
            ancs.len()
        )));
    }
    let top = inputs.iter().chain(ancs).max().copied().unwrap_or(0);
    let mut c = GateCircuit::new(top + 1);
    let mut acc = inputs[0];
    for (step, &next) in inputs[1..].iter().enumerate() {
        push_or2(&mut c, acc, next, ancs[step])?;
        acc = ancs[step];
    }
    Ok(c)
}

/// Reversible circuit computing a unary function between equal-sized maps.
///
/// Uses `2n_n + n_b + m_nr − m_n` qubits; on a crisp input map with the
/// ancillae at their constants, the output-map qubits read the image set and
/// `2(n_n − m_n)` qubits end as garbage.
pub fn unary_map_circuit(f: &FiniteFunction) -> Result<(GateCircuit, RegisterLayout)> {
    let stats = f.stats();
    if stats.n != stats.m {
        return Err(Error::NotSquareFunction {
            n: stats.n,
            m: stats.m,
        });
    }
    let n = stats.n;
    let zero_count = stats.m_nr;
    let one_count = stats.n_n - stats.m_n;
    let total = n + zero_count + one_count;

    let mut initial = Vec::with_capacity(total);
    initial.extend((0..n).map(|_| InitialRole::InputMap { arg: 0 }));
    initial.extend((0..zero_count).map(|_| InitialRole::AncillaZero));
    initial.extend((0..one_count).map(|_| InitialRole::AncillaOne));

    let mut fin = vec![FinalRole::Garbage; total];
    let mut circuit = GateCircuit::new(total);

    // Non-range outputs read their |0⟩ ancillae directly.
    for (t, z) in f.non_range_ordinals().into_iter().enumerate() {
        fin[n + t] = FinalRole::OutputMap { codomain: z };
    }
    // Injective inputs become outputs by relabeling.
    // Non-injective blocks feed OR cascades into fresh |1⟩ ancillae.
    let mut next_one = n + zero_count;
    for i in 0..stats.m {
        let block = f.preimage(i);
        match block.len() {
            0 => {}
            1 => fin[block[0]] = FinalRole::OutputMap { codomain: i },
            k => {
                let ancs: Vec<usize> = (0..k - 1).map(|s| next_one + s).collect();
                next_one += k - 1;
                let mut acc = block[0];
                for (step, &next) in block[1..].iter().enumerate() {
                    push_or2(&mut circuit, acc, next, ancs[step])?;
                    acc = ancs[step];
                }
                fin[acc] = FinalRole::OutputMap { codomain: i };
            }
        }
    }
    debug_assert_eq!(next_one, total);

    let layout = RegisterLayout::new(initial, fin)?;
    Ok((circuit, layout))
}

/// Pairwise conjunction of two n-qubit maps into an n²-qubit grid:
/// one Toffoli per pair, inputs passed through along rows and columns.
pub fn outer_product_circuit(n: usize) -> (GateCircuit, RegisterLayout) {
    let total = 2 * n + n * n;
    let mut initial = Vec::with_capacity(total);
    initial.extend((0..n).map(|_| InitialRole::InputMap { arg: 0 }));
    initial.extend((0..n).map(|_| InitialRole::InputMap { arg: 1 }));
    initial.extend((0..n * n).map(|_| InitialRole::AncillaZero));

    let mut fin = vec![FinalRole::Passthrough; 2 * n];
    fin.extend((0..n * n).map(|p| FinalRole::OutputMap { codomain: p }));

    let mut circuit = GateCircuit::new(total);
    for j in 0..n {
        for k in 0..n {
            circuit
                .push(Gate::Ccnot {
                    c1: j,
                    c2: n + k,
                    target: 2 * n + j * n + k,
                })
                .expect("outer product indices are in range");
        }
    }
    let layout = RegisterLayout::new(initial, fin).expect("equal role lengths");
    (circuit, layout)
}

/// Reversible circuit computing a two-argument function on one grid.
///
/// Computes the n² pair conjunctions, then maps pairs to outputs as in the
/// unary construction. Uses `2n² + n + 2·m_nr` qubits; the two argument maps
/// pass through and `2(n² − n + m_nr)` qubits end as garbage.
pub fn binary_map_circuit(f: &BinaryFunction) -> Result<(GateCircuit, RegisterLayout)> {
    let n = f.grid_dim();
    let table = f.table();
    let stats = table.stats();
    let pair_base = 2 * n;
    let zero_extra = stats.m_nr; // |0⟩ feeds for non-range outputs
    let one_count = n * n - n + stats.m_nr;
    let total = 2 * n * n + n + 2 * stats.m_nr;

    let mut initial = Vec::with_capacity(total);
    initial.extend((0..n).map(|_| InitialRole::InputMap { arg: 0 }));
    initial.extend((0..n).map(|_| InitialRole::InputMap { arg: 1 }));
    initial.extend((0..n * n + zero_extra).map(|_| InitialRole::AncillaZero));
    initial.extend((0..one_count).map(|_| InitialRole::AncillaOne));
    debug_assert_eq!(initial.len(), total);

    let mut fin = vec![FinalRole::Garbage; total];
    for q in 0..2 * n {
        fin[q] = FinalRole::Passthrough;
    }

    let mut circuit = GateCircuit::new(total);
    for j in 0..n {
        for k in 0..n {
            circuit.push(Gate::Ccnot {
                c1: j,
                c2: n + k,
                target: pair_base + j * n + k,
            })?;
        }
    }

    let zero_base = pair_base + n * n;
    let mut next_zero = zero_base;
    let mut next_one = zero_base + zero_extra;
    for i in 0..n {
        let block = table.preimage(i);
        match block.len() {
            0 => {
                fin[next_zero] = FinalRole::OutputMap { codomain: i };
                next_zero += 1;
            }
            1 => fin[pair_base + block[0]] = FinalRole::OutputMap { codomain: i },
            k => {
                let mut acc = pair_base + block[0];
                for &p in &block[1..] {
                    push_or2(&mut circuit, acc, pair_base + p, next_one)?;
                    acc = next_one;
                    next_one += 1;
                }
                let _ = k;
                fin[acc] = FinalRole::OutputMap { codomain: i };
            }
        }
    }
    debug_assert_eq!(next_zero, zero_base + zero_extra);
    debug_assert_eq!(next_one, total);

    let layout = RegisterLayout::new(initial, fin)?;
    Ok((circuit, layout))
}

/// Demultiplexer: route a token |1⟩ to the map position selected by an
/// `m_bits`-qubit binary register (most significant bit first) using a
/// Fredkin-gate tree. The register passes through unchanged.
pub fn demux_circuit(m_bits: usize) -> Result<(GateCircuit, RegisterLayout)> {
    if m_bits == 0 {
        return Err(Error::InvalidGate("demux needs at least one address bit".into()));
    }
    let n = 1usize << m_bits;
    let total = m_bits + n;

    let mut initial = Vec::with_capacity(total);
    initial.extend((0..m_bits).map(|_| InitialRole::InputMap { arg: 0 }));
    initial.push(InitialRole::AncillaOne);
    initial.extend((1..n).map(|_| InitialRole::AncillaZero));

    let mut fin = vec![FinalRole::Passthrough; m_bits];
    fin.extend((0..n).map(|p| FinalRole::OutputMap { codomain: p }));

    let mut circuit = GateCircuit::new(total);
    for level in 0..m_bits {
        let stride = 1usize << (m_bits - level);
        for prefix in 0..(1usize << level) {
            let lo = prefix * stride;
            let mid = lo + stride / 2;
            circuit.push(Gate::Cswap {
                control: level,
                a: m_bits + lo,
                b: m_bits + mid,
            })?;
        }
    }
    let layout = RegisterLayout::new(initial, fin)?;
    Ok((circuit, layout))
}

/// Fan a crisp n-qubit map out onto n fresh |0⟩ qubits with n CNOTs.
/// Crisp sources copy exactly; fuzzy sources entangle instead (no cloning).
pub fn copy_crisp_map(n: usize) -> GateCircuit {
    let mut circuit = GateCircuit::new(2 * n);
    for j in 0..n {
        circuit
            .push(Gate::Cnot {
                control: j,
                target: n + j,
            })
            .expect("copy indices are in range");
    }
    circuit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FiniteFunction;
    use crate::space::Space;

    fn fun(domain: &[&str], codomain: &[&str], map: &[usize]) -> FiniteFunction {
        FiniteFunction::from_labels(
            domain.iter().map(|s| s.to_string()).collect(),
            codomain.iter().map(|s| s.to_string()).collect(),
            map.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn or2_rejects_duplicates() {
        assert!(or2_circuit(0, 0, 1).is_err());
        assert!(or2_circuit(0, 1, 2).is_ok());
    }

    #[test]
    fn or1_is_identity() {
        let c = orn_circuit(&[3], &[]).unwrap();
        assert_eq!(c.gate_count(), 0);
    }

    #[test]
    fn orn_checks_ancilla_count() {
        assert!(orn_circuit(&[0, 1, 2], &[3]).is_err());
        assert!(orn_circuit(&[0, 1, 2], &[3, 4]).is_ok());
    }

    #[test]
    fn unary_layout_matches_prop_counts() {
        // n=4: f(x1)=f(x2)=y2, f(x3)=y3, f(x4)=y4
        let f = fun(
            &["x1", "x2", "x3", "x4"],
            &["y1", "y2", "y3", "y4"],
            &[1, 1, 2, 3],
        );
        let (circuit, layout) = unary_map_circuit(&f).unwrap();
        assert_eq!(circuit.qubit_count(), 6);
        assert_eq!(layout.input_count(), 4);
        assert_eq!(layout.ancilla_zero_count(), 1);
        assert_eq!(layout.ancilla_one_count(), 1);
        assert_eq!(layout.output_count(), 4);
        assert_eq!(layout.garbage_count(), 2);
    }

    #[test]
    fn unary_identity_is_gateless() {
        let f = FiniteFunction::identity(Space::indexed("v", 3));
        let (circuit, layout) = unary_map_circuit(&f).unwrap();
        assert_eq!(circuit.gate_count(), 0);
        assert_eq!(circuit.qubit_count(), 3);
        assert_eq!(layout.ancilla_zero_count(), 0);
        assert_eq!(layout.ancilla_one_count(), 0);
        assert_eq!(layout.garbage_count(), 0);
    }

    #[test]
    fn unary_rejects_rectangular_functions() {
        let f = fun(&["a", "b"], &["p", "q", "r"], &[0, 1]);
        assert!(matches!(
            unary_map_circuit(&f),
            Err(Error::NotSquareFunction { n: 2, m: 3 })
        ));
    }

    #[test]
    fn outer_product_counts() {
        let (circuit, layout) = outer_product_circuit(3);
        assert_eq!(circuit.qubit_count(), 15);
        assert_eq!(circuit.gate_count(), 9);
        assert_eq!(layout.passthrough_count(), 6);
        assert_eq!(layout.output_count(), 9);
    }

    #[test]
    fn demux_counts() {
        let (circuit, layout) = demux_circuit(3).unwrap();
        assert_eq!(circuit.qubit_count(), 3 + 8);
        assert_eq!(circuit.gate_count(), 7);
        assert_eq!(layout.passthrough_count(), 3);
        assert_eq!(layout.ancilla_one_count(), 1);
        assert_eq!(layout.ancilla_zero_count(), 7);
        assert!(demux_circuit(0).is_err());
    }

    #[test]
    fn copy_builds_n_cnots() {
        let c = copy_crisp_map(4);
        assert_eq!(c.qubit_count(), 8);
        assert_eq!(c.gate_count(), 4);
    }
}

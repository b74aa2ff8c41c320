//! Inner-product pipelines over qubit-map circuits and layer-level qubit
//! resource estimates.

use crate::error::{Error, Result};
use crate::sim::simulate_basis;
use crate::synth::binary_map_circuit;
use crate::tables::{product_table, sum_table, GridSpec, SumKind};

/// Which table a pipeline stage applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageOp {
    Product,
    Tsum,
}

impl StageOp {
    pub fn name(self) -> &'static str {
        match self {
            StageOp::Product => "product",
            StageOp::Tsum => "tsum",
        }
    }
}

/// One operand of a pipeline stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageInput {
    /// The i-th input vector component (1-based).
    X(usize),
    /// The i-th weight component (1-based).
    W(usize),
    /// The result of an earlier stage (1-based stage index).
    Stage(usize),
}

impl std::fmt::Display for StageInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StageInput::X(i) => write!(f, "x[{i}]"),
            StageInput::W(i) => write!(f, "w[{i}]"),
            StageInput::Stage(i) => write!(f, "stage[{i}]"),
        }
    }
}

/// One stage of an inner-product plan.
#[derive(Debug, Clone)]
pub struct PlanStage {
    /// 1-based stage index; stages run in order.
    pub index: usize,
    pub op: StageOp,
    pub inputs: [StageInput; 2],
}

/// An ordered list of circuit stages computing a truncated inner product:
/// N multiplications followed by N−1 truncated additions folding the
/// products left to right.
#[derive(Debug, Clone)]
pub struct InnerProductPlan {
    pub terms: usize,
    pub grid: GridSpec,
    pub stages: Vec<PlanStage>,
    /// The leading-order figure 2N²n².
    pub leading_order_qubits: u64,
    /// Sum of the exact per-stage qubit counts 2n² + n + 2·m_nr.
    pub itemized_qubits: u64,
}

/// Plan an N-term inner product on a uniform zero-based grid.
pub fn inner_product_plan(terms: usize, grid: &GridSpec) -> Result<InnerProductPlan> {
    if terms < 1 {
        return Err(Error::InvalidGrid("inner product needs at least one term".into()));
    }
    let n = grid.len() as u64;
    let product = product_table(grid)?;
    let tsum = sum_table(SumKind::Tsum, grid)?;
    let stage_qubits = |m_nr: usize| 2 * n * n + n + 2 * m_nr as u64;
    let product_qubits = stage_qubits(product.table().stats().m_nr);
    let tsum_qubits = stage_qubits(tsum.table().stats().m_nr);

    let mut stages = Vec::with_capacity(2 * terms - 1);
    for i in 1..=terms {
        stages.push(PlanStage {
            index: i,
            op: StageOp::Product,
            inputs: [StageInput::X(i), StageInput::W(i)],
        });
    }
    let mut acc = StageInput::Stage(1);
    for k in 2..=terms {
        let index = terms + k - 1;
        stages.push(PlanStage {
            index,
            op: StageOp::Tsum,
            inputs: [acc, StageInput::Stage(k)],
        });
        acc = StageInput::Stage(index);
    }

    let leading_order_qubits = 2 * (terms as u64).pow(2) * n * n;
    let itemized_qubits =
        terms as u64 * product_qubits + (terms as u64 - 1) * tsum_qubits;
    Ok(InnerProductPlan {
        terms,
        grid: grid.clone(),
        stages,
        leading_order_qubits,
        itemized_qubits,
    })
}

impl InnerProductPlan {
    /// Number of multiply stages.
    pub fn multiplies(&self) -> usize {
        self.terms
    }

    /// Number of truncated-add stages.
    pub fn adds(&self) -> usize {
        self.terms - 1
    }

    /// Run the plan on crisp singleton inputs through the qubit-map
    /// circuits, returning the grid ordinal of the result singleton.
    ///
    /// `xs[i]` and `ws[i]` are grid ordinals of the i-th components.
    pub fn execute_singletons(&self, xs: &[usize], ws: &[usize]) -> Result<usize> {
        if xs.len() != self.terms || ws.len() != self.terms {
            return Err(Error::LengthMismatch(format!(
                "plan over {} terms got {} xs and {} ws",
                self.terms,
                xs.len(),
                ws.len()
            )));
        }
        let product = product_table(&self.grid)?;
        let tsum = sum_table(SumKind::Tsum, &self.grid)?;
        let (product_circuit, product_layout) = binary_map_circuit(&product)?;
        let (tsum_circuit, tsum_layout) = binary_map_circuit(&tsum)?;
        let n = self.grid.len();

        let run_stage = |op: StageOp, a: usize, b: usize| -> Result<usize> {
            let (circuit, layout) = match op {
                StageOp::Product => (&product_circuit, &product_layout),
                StageOp::Tsum => (&tsum_circuit, &tsum_layout),
            };
            let mut map_a = vec![false; n];
            map_a[a] = true;
            let mut map_b = vec![false; n];
            map_b[b] = true;
            let bits = layout.initial_bits(&[map_a.as_slice(), map_b.as_slice()])?;
            let out = simulate_basis(circuit, &bits)?;
            let set = layout.read_output_set(&out)?;
            if set.len() != 1 {
                return Err(Error::LengthMismatch(format!(
                    "singleton stage produced {} outputs",
                    set.len()
                )));
            }
            Ok(set.into_iter().next().unwrap())
        };

        let mut results = vec![0usize; self.stages.len() + 1];
        let resolve = |input: StageInput, results: &[usize]| -> usize {
            match input {
                StageInput::X(i) => xs[i - 1],
                StageInput::W(i) => ws[i - 1],
                StageInput::Stage(s) => results[s],
            }
        };
        for stage in &self.stages {
            let a = resolve(stage.inputs[0], &results);
            let b = resolve(stage.inputs[1], &results);
            results[stage.index] = run_stage(stage.op, a, b)?;
        }
        Ok(results[self.stages.len()])
    }
}

/// Qubit budget for one neural-network layer: N inputs through an M×N
/// weight matrix on an n-point grid.
///
/// `total` is the leading-order figure 2MN²n²; the itemized fields break
/// out multiplies (2n² each), adds (2n² each), and the (M−1)n ancillae
/// spent copying the input map for the M inner products. The itemized parts
/// intentionally undershoot the headline: the leading-order figure keeps
/// only the dominant N² term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerEstimate {
    pub neurons: u64,
    pub inputs: u64,
    pub grid: u64,
    pub multiply_qubits: u64,
    pub add_qubits: u64,
    pub copy_ancillae: u64,
    pub total: u64,
}

/// Estimate the qubit budget of one M-neuron layer over N inputs on an
/// n-point grid.
pub fn estimate_layer(neurons: u64, inputs: u64, grid: u64) -> LayerEstimate {
    let per_op = 2 * grid * grid;
    LayerEstimate {
        neurons,
        inputs,
        grid,
        multiply_qubits: neurons * inputs * per_op,
        add_qubits: neurons * (inputs - 1) * per_op,
        copy_ancillae: (neurons - 1) * grid,
        total: 2 * neurons * inputs * inputs * grid * grid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_plan_has_one_multiply() {
        let g = GridSpec::uniform(4, 0.0, 3.0).unwrap();
        let p = inner_product_plan(1, &g).unwrap();
        assert_eq!(p.multiplies(), 1);
        assert_eq!(p.adds(), 0);
        assert_eq!(p.stages.len(), 1);
    }

    #[test]
    fn three_term_plan_counts_and_estimate() {
        let g = GridSpec::uniform(4, 0.0, 3.0).unwrap();
        let p = inner_product_plan(3, &g).unwrap();
        assert_eq!(p.stages.len(), 5);
        assert_eq!(p.leading_order_qubits, 2 * 9 * 16);
        // product and tsum are both surjective on this grid: 5 × (2·16+4)
        assert_eq!(p.itemized_qubits, 5 * 36);
    }

    #[test]
    fn plan_execution_matches_scalar_pipeline() {
        let g = GridSpec::uniform(4, 0.0, 3.0).unwrap();
        let plan = inner_product_plan(2, &g).unwrap();
        let points = g.points();
        for x1 in 0..4 {
            for w1 in 0..4 {
                let got = plan.execute_singletons(&[x1, 2], &[w1, 1]).unwrap();
                // independent scalar route: round each product, truncate adds
                let p1 = g.nearest((points[x1] * points[w1]).min(3.0));
                let p2 = g.nearest((points[2] * points[1]).min(3.0));
                let want = (p1 + p2).min(3);
                assert_eq!(got, want, "x1={x1} w1={w1}");
            }
        }
    }

    #[test]
    fn layer_estimate_examples() {
        let e = estimate_layer(2, 3, 4);
        assert_eq!(e.total, 576);
        assert_eq!(e.copy_ancillae, 4);
        assert_eq!(e.multiply_qubits, 2 * 3 * 32);
        assert_eq!(e.add_qubits, 2 * 2 * 32);

        let single = estimate_layer(1, 3, 4);
        assert_eq!(single.copy_ancillae, 0);

        // total scales linearly in the neuron count
        assert_eq!(estimate_layer(4, 3, 4).total, 2 * e.total);
    }
}

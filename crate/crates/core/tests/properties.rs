//! Property and invariant tests across the crate: norm preservation,
//! set functoriality, cross-backend agreement, and table/oracle agreement.

mod common;

use std::collections::BTreeSet;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use topoq_core::sim::{bits_to_index, index_to_bits, initial_memberships};
use topoq_core::*;

fn unit_vector(space: &std::sync::Arc<Space>, parts: &[(f64, f64)]) -> AmplitudeVector {
    let mut amps: Vec<Complex64> = parts
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for a in &mut amps {
            *a /= Complex64::new(norm, 0.0);
        }
    } else {
        amps[0] = Complex64::ONE;
    }
    AmplitudeVector::new(space.clone(), amps).unwrap()
}

proptest! {
    #[test]
    fn tensor_norm_is_multiplicative(
        a in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
        b in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
    ) {
        let sa = Space::indexed("a", a.len());
        let sb = Space::indexed("b", b.len());
        let va = AmplitudeVector::new(sa, a.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap();
        let vb = AmplitudeVector::new(sb, b.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap();
        let t = va.tensor(&vb);
        prop_assert!((t.norm() - va.norm() * vb.norm()).abs() < 1e-12);
    }

    #[test]
    fn or_marginal_probability_law(p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let c = or2_circuit(0, 1, 2).unwrap();
        let inputs = MembershipVector::new(vec![p, q, 1.0]).unwrap();
        let out = simulate_statevector(&c, &inputs).unwrap();
        let got: f64 = (0..8usize)
            .filter(|i| i & 1 == 1)
            .map(|i| out.amplitude(i).norm_sqr())
            .sum();
        let want = 1.0 - (1.0 - p * p) * (1.0 - q * q);
        prop_assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn statevector_preserves_norm(p in proptest::collection::vec(0.0f64..1.0, 3)) {
        let c = or2_circuit(0, 1, 2).unwrap();
        let inputs = MembershipVector::new(p).unwrap();
        let out = simulate_statevector(&c, &inputs).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn unitary_apply_preserves_inner_products() {
    let mut r = rng(11);
    for trial in 0..40 {
        let n = r.random_range(2..=8usize);
        let m = r.random_range(1..=n);
        let k = surjection_unitary(&random_surjection(&mut r, n, m)).unwrap();
        let space = k.operator.input_space().clone();
        let parts_a: Vec<(f64, f64)> = (0..n).map(|_| (r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect();
        let parts_b: Vec<(f64, f64)> = (0..n).map(|_| (r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect();
        let va = unit_vector(&space, &parts_a);
        let vb = unit_vector(&space, &parts_b);
        let before = va.inner(&vb).unwrap();
        let after = k
            .operator
            .apply(&va)
            .unwrap()
            .inner(&k.operator.apply(&vb).unwrap())
            .unwrap();
        assert!(
            (after - before).norm() <= 1e-10,
            "trial {trial}: |⟨Uφ,Uψ⟩−⟨φ,ψ⟩| = {}",
            (after - before).norm()
        );
    }
}

#[test]
fn unitary_apply_preserves_norm_on_random_units() {
    let mut r = rng(12);
    for _ in 0..40 {
        let n = r.random_range(1..=6usize);
        let m = r.random_range(1..=6usize);
        let k = arbitrary_unitary(&random_function(&mut r, n, m));
        let dim = k.dim();
        let parts: Vec<(f64, f64)> = (0..dim)
            .map(|_| (r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
            .collect();
        let v = unit_vector(k.operator.input_space(), &parts);
        let out = k.operator.apply(&v).unwrap();
        assert!((out.norm() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn injection_operator_is_a_permutation_matrix() {
    let mut r = rng(13);
    for _ in 0..25 {
        let m = r.random_range(2..=8usize);
        let n = r.random_range(1..m);
        let k = injection_unitary(&random_injection(&mut r, n, m)).unwrap();
        let entries = k.operator.nonzeros();
        assert_eq!(entries.len(), n * m);
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for (row, col, v) in entries {
            assert_eq!(v, Complex64::ONE);
            assert!(rows.insert(row), "duplicate row {row}");
            assert!(cols.insert(col), "duplicate col {col}");
        }
        assert_eq!(rows.len(), n * m);
    }
}

#[test]
fn arbitrary_permutation_blocks_are_partial_permutations() {
    let mut r = rng(14);
    for _ in 0..25 {
        let n = r.random_range(1..=6usize);
        let m = r.random_range(1..=6usize);
        let f = random_function(&mut r, n, m);
        for block in topoq_core::kernels::arbitrary_blocks(&f) {
            if matches!(block.name, "non-range" | "swap" | "remainder" | "anchor") {
                let mut rows = BTreeSet::new();
                let mut cols = BTreeSet::new();
                for (row, col, v) in &block.entries {
                    assert_eq!(*v, Complex64::ONE, "block {}", block.name);
                    assert!(rows.insert(*row));
                    assert!(cols.insert(*col));
                }
                assert_eq!(rows.len(), block.dyads);
            }
        }
    }
}

#[test]
fn zero_amplitudes_map_to_zero_amplitudes() {
    // coordinates of the codomain outside f[S] stay below 1e-12
    let mut r = rng(15);
    for _ in 0..60 {
        let n = r.random_range(1..=6usize);
        let m = r.random_range(1..=6usize);
        let f = random_function(&mut r, n, m);
        let k = arbitrary_unitary(&f);
        let members: BTreeSet<usize> = (0..n).filter(|_| r.random_bool(0.5)).collect();
        let image = f.image_of(&members);
        let out = k.apply_set(&members).unwrap();
        for i in 0..m {
            if !image.contains(&i) {
                assert!(
                    out.output.amplitude(k.codomain_coords[i]).norm() <= 1e-12,
                    "ghost amplitude on unreached output {i}"
                );
            }
        }
    }
}

#[test]
fn kernel_set_semantics_agree_across_constructions() {
    // every construction whose preconditions admit f computes the same image
    let mut r = rng(16);
    for _ in 0..30 {
        let n = r.random_range(2..=6usize);
        let m = r.random_range(1..=n);
        let f = random_surjection(&mut r, n, m);
        let arb = arbitrary_unitary(&f);
        let sur = surjection_unitary(&f).unwrap();
        for members in [BTreeSet::from([0]), (0..n).step_by(2).collect::<BTreeSet<_>>()] {
            let a = arb.apply_set(&members).unwrap().image;
            let s = sur.apply_set(&members).unwrap().image;
            assert_eq!(a, s);
            assert_eq!(a, f.image_of(&members));
        }
    }
}

#[test]
fn crisp_set_functoriality_exhaustive_small() {
    // unary circuits compute f[S] for every f: n→n and every subset, n ≤ 4
    for n in 1..=4usize {
        for_each_function(n, n, |f| {
            let (circuit, layout) = unary_map_circuit(f).unwrap();
            for members in all_subsets(n) {
                let map: Vec<bool> = (0..n).map(|j| members.contains(&j)).collect();
                let bits = layout.initial_bits(&[map.as_slice()]).unwrap();
                let out = simulate_basis(&circuit, &bits).unwrap();
                let got = layout.read_output_set(&out).unwrap();
                assert_eq!(got, f.image_of(&members), "n={n} S={members:?}");
            }
        });
    }
}

#[test]
fn binary_circuits_compute_pairwise_images() {
    let mut r = rng(17);
    let grid3 = GridSpec::uniform(3, 0.0, 2.0).unwrap();
    let space = grid3.space("g").unwrap();
    for _ in 0..10 {
        let table = {
            let map: Vec<usize> = (0..9).map(|_| r.random_range(0..3usize)).collect();
            let pair_domain: Vec<String> = (0..3)
                .flat_map(|j| (0..3).map(move |k| format!("{j}⊗{k}")))
                .collect();
            BinaryFunction::new(
                space.clone(),
                FiniteFunction::from_labels(
                    pair_domain,
                    space.labels().to_vec(),
                    map,
                )
                .unwrap(),
            )
            .unwrap()
        };
        let (circuit, layout) = binary_map_circuit(&table).unwrap();
        for a_bits in 0..8usize {
            for b_bits in 0..8usize {
                let map_a: Vec<bool> = (0..3).map(|j| a_bits >> j & 1 == 1).collect();
                let map_b: Vec<bool> = (0..3).map(|j| b_bits >> j & 1 == 1).collect();
                let bits = layout
                    .initial_bits(&[map_a.as_slice(), map_b.as_slice()])
                    .unwrap();
                let out = simulate_basis(&circuit, &bits).unwrap();
                let got = layout.read_output_set(&out).unwrap();
                let mut want = BTreeSet::new();
                for j in 0..3 {
                    for k in 0..3 {
                        if map_a[j] && map_b[k] {
                            want.insert(table.value(j, k));
                        }
                    }
                }
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn outer_product_pair_amplitudes() {
    // single conjunction: p̄q̄|000⟩ + pq̄|100⟩ + p̄q|010⟩ + pq|111⟩
    let (circuit, layout) = outer_product_circuit(1);
    let p = 0.6f64;
    let q = 0.8f64;
    let ma = MembershipVector::new(vec![p]).unwrap();
    let mb = MembershipVector::new(vec![q]).unwrap();
    let init = initial_memberships(&layout, &[&ma, &mb]).unwrap();
    let out = simulate_statevector(&circuit, &init).unwrap();
    let pb = (1.0 - p * p).sqrt();
    let qb = (1.0 - q * q).sqrt();
    let expect = [
        (0b000, pb * qb),
        (0b100, p * qb),
        (0b010, pb * q),
        (0b111, p * q),
    ];
    for (idx, want) in expect {
        assert!((out.amplitude(idx).re - want).abs() < 1e-15, "index {idx:b}");
    }
    assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
}

#[test]
fn cross_backend_agreement_on_basis_inputs() {
    // statevector and classical replay agree wherever both run
    let mut circuits: Vec<GateCircuit> = vec![
        or2_circuit(0, 1, 2).unwrap(),
        orn_circuit(&[0, 1, 2], &[3, 4]).unwrap(),
        copy_crisp_map(3),
        outer_product_circuit(2).0,
        demux_circuit(2).unwrap().0,
        unary_map_circuit(&abs_function(2).pad_to_square().unwrap()).unwrap().0,
    ];
    let grid = GridSpec::uniform(2, 0.0, 1.0).unwrap();
    circuits.push(binary_map_circuit(&sum_table(SumKind::Tsum, &grid).unwrap()).unwrap().0);

    let mut r = rng(18);
    for circuit in &circuits {
        let q = circuit.qubit_count();
        assert!(q <= 20, "cross-backend circuits stay under the cap");
        let exhaustive = q <= 8;
        let cases: Vec<usize> = if exhaustive {
            (0..1usize << q).collect()
        } else {
            (0..24).map(|_| r.random_range(0..1usize << q)).collect()
        };
        for idx in cases {
            let bits = index_to_bits(idx, q);
            let replay = simulate_basis(circuit, &bits).unwrap();
            let sv = simulate_statevector(circuit, &MembershipVector::from_bits(&bits)).unwrap();
            let out_idx = bits_to_index(&replay);
            assert!((sv.amplitude(out_idx).norm() - 1.0).abs() < 1e-12);
            assert!((sv.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn cross_backend_agreement_at_the_cap() {
    // demux over 4 address bits runs on exactly 20 qubits
    let (circuit, _) = demux_circuit(4).unwrap();
    assert_eq!(circuit.qubit_count(), 20);
    let mut r = rng(19);
    for _ in 0..3 {
        let idx = r.random_range(0..1usize << 20);
        let mut bits = index_to_bits(idx, 20);
        bits[4] = true; // token qubit
        let replay = simulate_basis(&circuit, &bits).unwrap();
        let sv = simulate_statevector(&circuit, &MembershipVector::from_bits(&bits)).unwrap();
        assert!((sv.amplitude(bits_to_index(&replay)).norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn generated_tables_are_valid_up_to_64_points() {
    for n in [2usize, 3, 5, 16, 33, 64] {
        let hi = (n - 1) as f64;
        let grid = GridSpec::uniform(n, 0.0, hi).unwrap();
        for kind in [SumKind::Tsum, SumKind::Hsum, SumKind::Wide] {
            let f = sum_table(kind, &grid).unwrap();
            assert_eq!(f.table().n(), n * n);
            assert!(f.table().map().iter().all(|&v| v < f.table().m()));
        }
        let p = product_table(&grid).unwrap();
        assert!(p.table().map().iter().all(|&v| v < n));
        let wide = GridSpec::uniform(n, -2.0, 2.0).unwrap();
        let s = squash_table(SquashKind::Truncation, &wide).unwrap();
        assert!(s.map().iter().all(|&v| v < n));
    }
}

#[test]
fn sum_and_product_tables_match_scalar_oracle_exhaustively() {
    for n in 2..=16usize {
        let hi = (n - 1) as f64;
        let grid = GridSpec::uniform(n, 0.0, hi).unwrap();
        let points = grid.points();
        let nearest = |v: f64| -> usize {
            let mut best = 0;
            for (i, &p) in points.iter().enumerate() {
                if (v - p).abs() < (v - points[best]).abs() {
                    best = i;
                }
            }
            best
        };
        let tsum = sum_table(SumKind::Tsum, &grid).unwrap();
        let hsum = sum_table(SumKind::Hsum, &grid).unwrap();
        let prod = product_table(&grid).unwrap();
        for j in 0..n {
            for k in 0..n {
                assert_eq!(tsum.value(j, k), nearest((points[j] + points[k]).min(hi)));
                // the scan keeps the first (lower) point on exact ties
                assert_eq!(hsum.value(j, k), nearest((points[j] + points[k]) / 2.0));
                assert_eq!(prod.value(j, k), nearest((points[j] * points[k]).min(hi)));
            }
        }
    }
}

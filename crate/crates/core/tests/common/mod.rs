//! Shared helpers for integration tests: deterministic random function
//! generators and exhaustive sweeps.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use topoq_core::FiniteFunction;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Function over generated labels x0..x{n-1} → y0..y{m-1}.
pub fn make_function(n: usize, m: usize, map: Vec<usize>) -> FiniteFunction {
    let domain = (0..n).map(|j| format!("x{j}")).collect();
    let codomain = (0..m).map(|i| format!("y{i}")).collect();
    FiniteFunction::from_labels(domain, codomain, map).expect("generated tables are valid")
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize, m: usize) -> FiniteFunction {
    let map = (0..n).map(|_| rng.random_range(0..m)).collect();
    make_function(n, m, map)
}

pub fn random_bijection(rng: &mut ChaCha8Rng, n: usize) -> FiniteFunction {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    make_function(n, n, map)
}

/// Random injection into a strictly larger codomain.
pub fn random_injection(rng: &mut ChaCha8Rng, n: usize, m: usize) -> FiniteFunction {
    assert!(n < m);
    let mut targets: Vec<usize> = (0..m).collect();
    targets.shuffle(rng);
    make_function(n, m, targets[..n].to_vec())
}

/// Random surjection onto a codomain of at most the domain size.
pub fn random_surjection(rng: &mut ChaCha8Rng, n: usize, m: usize) -> FiniteFunction {
    assert!(m <= n);
    let mut map: Vec<usize> = (0..m).chain((m..n).map(|_| rng.random_range(0..m))).collect();
    map.shuffle(rng);
    make_function(n, m, map)
}

/// The absolute-value table on {-(N-1)Δ, ..., (N-1)Δ} with Δ = 1.
pub fn abs_function(big_n: usize) -> FiniteFunction {
    let lo = -(big_n as i64 - 1);
    let domain = (lo..big_n as i64).map(|k| k.to_string()).collect();
    let codomain = (0..big_n as i64).map(|k| k.to_string()).collect();
    let map = (lo..big_n as i64).map(|k| k.unsigned_abs() as usize).collect();
    FiniteFunction::from_labels(domain, codomain, map).expect("abs table is valid")
}

/// Visit every total function from an n-point domain to an m-point codomain.
pub fn for_each_function(n: usize, m: usize, mut visit: impl FnMut(&FiniteFunction)) {
    let mut map = vec![0usize; n];
    loop {
        visit(&make_function(n, m, map.clone()));
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            map[pos] += 1;
            if map[pos] < m {
                break;
            }
            map[pos] = 0;
            pos += 1;
        }
    }
}

/// All subsets of 0..n as ordered sets.
pub fn all_subsets(n: usize) -> Vec<std::collections::BTreeSet<usize>> {
    (0..1usize << n)
        .map(|bits| (0..n).filter(|j| bits >> j & 1 == 1).collect())
        .collect()
}

/// Random bit string of the given length.
pub fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.random_bool(0.5)).collect()
}

use std::collections::HashSet;

use super::{KripkeModel, World};
use crate::syntax::Atom;

/// Largest world count supported by the enumeration.
const MAX_WORLDS: usize = 6;

/// All preorders on worlds `0..n`, as successor bitmasks. They are produced
/// as reflexive-transitive closures of every set of off-diagonal edges, in
/// edge-subset order, keeping the first occurrence of each closure.
pub fn preorders(n: usize) -> Vec<Vec<u32>> {
    assert!(n <= MAX_WORLDS, "at most {MAX_WORLDS} worlds");
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in 0u64..(1u64 << edges.len()) {
        let mut succ: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for (k, &(i, j)) in edges.iter().enumerate() {
            if subset >> k & 1 == 1 {
                succ[i] |= 1 << j;
            }
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if succ[i] >> k & 1 == 1 {
                    succ[i] |= succ[k];
                }
            }
        }
        if seen.insert(succ.clone()) {
            out.push(succ);
        }
    }
    out
}

/// World sets closed upwards under `succ`, in bitmask order.
fn up_sets(succ: &[u32]) -> Vec<u32> {
    let n = succ.len();
    (0u32..(1 << n))
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || succ[i] & !s == 0))
        .collect()
}

fn models_over(succ: Vec<u32>, atoms: &[Atom]) -> impl Iterator<Item = KripkeModel> {
    let n = succ.len();
    let ups = up_sets(&succ);
    let rel: Vec<(World, World)> = (0..n)
        .flat_map(|i| (0..n).filter(|&j| succ[i] >> j & 1 == 1).map(move |j| (i as World, j as World)).collect::<Vec<_>>())
        .collect();
    let atoms = atoms.to_vec();
    let total = ups.len().pow(atoms.len() as u32);
    (0..total).map(move |mut code| {
        // Odometer over atoms, first atom varying fastest.
        let mut val = Vec::new();
        for &a in &atoms {
            let s = ups[code % ups.len()];
            code /= ups.len();
            val.extend((0..n).filter(|&i| s >> i & 1 == 1).map(|i| (a, i as World)));
        }
        KripkeModel::new(0..n as World, rel.iter().copied(), val).expect("worlds in range")
    })
}

/// Every valid model on worlds `0..n` for `1 ≤ n ≤ max_worlds`: every
/// preorder paired with every persistent valuation of `atoms`. Deterministic
/// order; isomorphic copies are not pruned.
pub fn enumerate_models(max_worlds: usize, atoms: &[Atom]) -> impl Iterator<Item = KripkeModel> {
    let atoms = atoms.to_vec();
    (1..=max_worlds).flat_map(move |n| {
        let atoms = atoms.clone();
        preorders(n).into_iter().flat_map(move |succ| models_over(succ, &atoms))
    })
}

//! Seeded random formulas for property tests and fuzzing.

use rand::Rng;

use crate::syntax::{Atom, Formula};

/// Random formula with exactly `size` nodes (rounded down to the nearest odd
/// number, as every binary tree has an odd node count) over atoms
/// `0..atoms`. Leaves are atoms or `Bot`.
pub fn formula<R: Rng + ?Sized>(rng: &mut R, size: usize, atoms: Atom) -> Formula {
    let size = if size.is_multiple_of(2) { size.saturating_sub(1).max(1) } else { size };
    if size == 1 {
        // One leaf in (atoms + 1) is falsum.
        let pick = rng.gen_range(0..=atoms);
        return if pick == atoms { Formula::Bot } else { Formula::Atom(pick) };
    }
    let inner = size - 1;
    let left = 2 * rng.gen_range(0..inner / 2) + 1;
    let a = formula(rng, left, atoms);
    let b = formula(rng, inner - left, atoms);
    match rng.gen_range(0..3) {
        0 => Formula::implies(a, b),
        1 => Formula::and(a, b),
        _ => Formula::or(a, b),
    }
}

/// Random formula with at most `max_size` nodes.
pub fn formula_up_to<R: Rng + ?Sized>(rng: &mut R, max_size: usize, atoms: Atom) -> Formula {
    let max_size = max_size.max(1);
    let size = rng.gen_range(0..max_size.div_ceil(2)) * 2 + 1;
    formula(rng, size, atoms)
}

/// Every formula with at most `max_size` nodes over atoms `0..atoms` and `Bot`.
pub fn all_formulas(max_size: usize, atoms: Atom) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = (0..atoms).map(Formula::Atom).chain(std::iter::once(Formula::Bot)).collect();
    }
    for size in (3..=max_size).step_by(2) {
        let mut level = Vec::new();
        for left in (1..size - 1).step_by(2) {
            let right = size - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(Formula::implies(a.clone(), b.clone()));
                    level.push(Formula::and(a.clone(), b.clone()));
                    level.push(Formula::or(a.clone(), b.clone()));
                }
            }
        }
        by_size[size] = level;
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in [1, 3, 5, 9, 15] {
            for _ in 0..20 {
                let p = formula(&mut rng, size, 2);
                assert_eq!(p.size(), size);
                assert!(p.atoms().iter().all(|&a| a < 2));
            }
        }
    }

    #[test]
    fn census_of_small_formulas() {
        // size 1: p0 p1 false; size 3: 3 ops * 3 * 3; size 5: 3 ops * (3*27 + 27*3)
        assert_eq!(all_formulas(1, 2).len(), 3);
        assert_eq!(all_formulas(3, 2).len(), 3 + 27);
        assert_eq!(all_formulas(5, 2).len(), 3 + 27 + 486);
    }
}

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{scheme_instance, Context, Derivation};
use crate::gen;
use crate::syntax::{Atom, Formula};

struct Generator<'a> {
    rng: ChaCha8Rng,
    hyps: Vec<&'a Formula>,
    atoms: Atom,
}

impl Generator<'_> {
    fn param(&mut self) -> Formula {
        gen::formula_up_to(&mut self.rng, 3, self.atoms)
    }

    fn leaf(&mut self) -> Derivation {
        if !self.hyps.is_empty() && self.rng.gen_bool(0.3) {
            return Derivation::Ax((*self.hyps.choose(&mut self.rng).unwrap()).clone());
        }
        let (p, q, r) = (self.param(), self.param(), self.param());
        match self.rng.gen_range(0..10) {
            0 => Derivation::K(p, q),
            1 => Derivation::S(p, q, r),
            2 => Derivation::Exf(p),
            3 => Derivation::Pr1(p, q),
            4 => Derivation::Pr2(p, q),
            5 => Derivation::Pair(p, q),
            6 => Derivation::Inr(p, q),
            7 => Derivation::Inl(p, q),
            8 => Derivation::Case(p, q, r),
            _ => Derivation::K(p.clone(), p),
        }
    }

    /// A scheme instance whose antecedent is exactly `x`.
    fn eliminator(&mut self, x: &Formula) -> Derivation {
        let z = self.param();
        let mut options = vec![
            Derivation::K(x.clone(), z.clone()),
            Derivation::Pair(x.clone(), z.clone()),
            Derivation::Inr(x.clone(), z.clone()),
            Derivation::Inl(z.clone(), x.clone()),
        ];
        match x {
            Formula::And(a, b) => {
                options.push(Derivation::Pr1((**a).clone(), (**b).clone()));
                options.push(Derivation::Pr2((**a).clone(), (**b).clone()));
            }
            Formula::Impl(a, r) => {
                options.push(Derivation::Case((**a).clone(), z.clone(), (**r).clone()));
                if let Formula::Impl(b, c) = r.as_ref() {
                    options.push(Derivation::S((**a).clone(), (**b).clone(), (**c).clone()));
                }
            }
            Formula::Bot => options.push(Derivation::Exf(z)),
            _ => {}
        }
        // Prefer structure-specific eliminators when they exist.
        let n = options.len();
        let idx = if n > 4 && self.rng.gen_bool(0.6) { self.rng.gen_range(4..n) } else { self.rng.gen_range(0..n) };
        options.swap_remove(idx)
    }

    fn derive(&mut self, depth: usize) -> (Derivation, Formula) {
        if depth == 0 || self.rng.gen_bool(0.15) {
            let d = self.leaf();
            let c = d.scheme_conclusion().expect("leaf");
            return (d, c);
        }
        if self.rng.gen_bool(0.5) {
            let (major, conclusion) = self.derive(depth - 1);
            if let Formula::Impl(a, b) = &conclusion {
                let minor = if self.hyps.contains(&a.as_ref()) {
                    Some(Derivation::Ax((**a).clone()))
                } else {
                    scheme_instance(a)
                };
                if let Some(minor) = minor {
                    return (Derivation::mp(major, minor), (**b).clone());
                }
            }
            return self.eliminate(major, conclusion);
        }
        let (minor, x) = self.derive(depth - 1);
        self.eliminate(minor, x)
    }

    fn eliminate(&mut self, minor: Derivation, x: Formula) -> (Derivation, Formula) {
        let major = self.eliminator(&x);
        let Some(Formula::Impl(_, out)) = major.scheme_conclusion() else { unreachable!() };
        (Derivation::mp(major, minor), (*out).clone())
    }
}

/// A random derivation of depth at most `depth`, valid in `ctx`, with its
/// conclusion. Scheme parameters range over atoms `p0..p2`. The output is a
/// deterministic function of the arguments.
pub fn random_derivation(ctx: &Context, depth: usize, seed: u64) -> (Derivation, Formula) {
    random_derivation_over(ctx, depth, seed, 3)
}

/// As [`random_derivation`], with scheme parameters over atoms `0..atoms`.
pub fn random_derivation_over(ctx: &Context, depth: usize, seed: u64, atoms: Atom) -> (Derivation, Formula) {
    let mut g = Generator { rng: ChaCha8Rng::seed_from_u64(seed), hyps: ctx.iter().collect(), atoms };
    g.derive(depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check;
    use crate::syntax::parse;
    use std::collections::HashSet;

    #[test]
    fn generated_derivations_check() {
        let ctx: Context = ["p0", "p1 -> p2", "p0 & p1"].iter().map(|s| parse(s).unwrap()).collect();
        for seed in 0..300 {
            for depth in [0, 1, 3, 6] {
                let (d, c) = random_derivation(&ctx, depth, seed);
                assert!(d.depth() <= depth);
                assert!(check(&d, &ctx, &c).is_accept(), "seed {seed} depth {depth}: {d}");
            }
        }
    }

    #[test]
    fn depth_zero_is_a_leaf() {
        let ctx: Context = [parse("p0").unwrap()].into_iter().collect();
        for seed in 0..50 {
            let (d, _) = random_derivation(&ctx, 0, seed);
            assert!(!matches!(d, Derivation::Mp(..)));
        }
    }

    #[test]
    fn deterministic_and_diverse() {
        let ctx = Context::new();
        assert_eq!(random_derivation(&ctx, 4, 11), random_derivation(&ctx, 4, 11));
        let conclusions: HashSet<Formula> = (0..100).map(|s| random_derivation(&ctx, 4, s).1).collect();
        assert!(conclusions.len() >= 50, "only {} distinct", conclusions.len());
    }
}

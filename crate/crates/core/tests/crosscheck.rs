//! The decision procedure, the Henkin route and brute-force model search
//! must agree.

use ipl_core::decision::{derivable, DecisionResult};
use ipl_core::gen;
use ipl_core::henkin::{code_bound_covering, has_disj_in, Henkin, Theory};
use ipl_core::proof::{check, random_derivation, Context, Verdict};
use ipl_core::semantics::{check_consequence_on, enumerate_models, Consequence, KripkeModel};
use ipl_core::syntax::{parse, subformulas, Formula};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

// Small IPL non-theorems over two atoms all have countermodels with at most
// three worlds, so a refutation must show up there and a proof must not.
#[test]
fn decide_agrees_with_model_search() {
    let models: Vec<KripkeModel> = enumerate_models(3, &[0, 1]).collect();
    for p in gen::all_formulas(5, 2) {
        let result = derivable(&Context::new(), &p).unwrap();
        let search = check_consequence_on(models.iter().cloned(), &Context::new(), &p);
        match (&result, &search) {
            (DecisionResult::Provable, Consequence::NoCounterexample) => {}
            (DecisionResult::Refuted(m, w), Consequence::Counterexample(..)) => {
                assert_eq!(m.validate_frame(), Ok(()));
                assert_eq!(m.forces(*w, &p), Ok(false), "{p}");
            }
            _ => panic!("{p}: decision {result:?} vs search {search:?}"),
        }
    }
}

#[test]
fn decide_is_monotone_in_context() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let ctx: Context = (0..rng.gen_range(0..3)).map(|_| gen::formula_up_to(&mut rng, 5, 2)).collect();
        let p = gen::formula_up_to(&mut rng, 5, 2);
        let extra = gen::formula_up_to(&mut rng, 5, 2);
        if derivable(&ctx, &p).unwrap().is_provable() {
            assert!(derivable(&ctx.with(extra), &p).unwrap().is_provable());
        }
    }
}

#[test]
fn accepted_proofs_have_no_countermodel() {
    let h = Henkin::default();
    for seed in 0..150 {
        let ctx: Context = [f("p0 -> p1")].into_iter().collect();
        let (d, concl) = random_derivation(&ctx, 4, seed);
        assert_eq!(check(&d, &ctx, &concl), Verdict::Accept);
        if subformulas(&concl).len() + 3 > h.max_fragment() {
            continue;
        }
        assert!(h.countermodel(&ctx, &concl).unwrap().is_none(), "seed {seed}: {concl}");
        assert!(derivable(&ctx, &concl).unwrap().is_provable());
    }
}

#[test]
fn decide_and_countermodel_agree() {
    let h = Henkin::default();
    for p in gen::all_formulas(5, 2) {
        let provable = derivable(&Context::new(), &p).unwrap().is_provable();
        assert_eq!(h.countermodel(&Context::new(), &p).unwrap().is_none(), provable, "{p}");
    }
}

#[test]
fn prime_stages_grow_then_settle() {
    let h = Henkin::default();
    let bound = code_bound_covering(&gen::all_formulas(3, 2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    while checked < 40 {
        let gamma: Context = (0..2).map(|_| gen::formula_up_to(&mut rng, 5, 2)).collect();
        let r = gen::formula_up_to(&mut rng, 3, 2);
        if derivable(&gamma, &r).unwrap().is_provable() {
            continue;
        }
        checked += 1;
        let trace = h.prime_trace(&Theory::new(gamma, r), 4, bound).unwrap();
        for pair in trace.stages.windows(2) {
            assert!(pair[0].is_subset(&pair[1]));
        }
        // Idempotent at the bound: stages past the third add nothing.
        assert_eq!(trace.stages[4], trace.stages[3]);
        if let Some(k) = trace.stages.windows(2).position(|w| w[0] == w[1]) {
            assert!(trace.stages[k..].iter().all(|s| *s == trace.stages[k]));
        }
    }
}

#[test]
fn insert_form_dichotomy() {
    let h = Henkin::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let t: Context = (0..rng.gen_range(0..3)).map(|_| gen::formula_up_to(&mut rng, 3, 2)).collect();
        let [p, q, r] = [0; 3].map(|_| gen::formula_up_to(&mut rng, 3, 2));
        let out = h.insert_form(&t, &p, &q, &r).unwrap();
        let expected = if derivable(&t.with(p.clone()), &r).unwrap().is_provable() { t.with(q) } else { t.with(p) };
        assert_eq!(out, expected);
    }
}

#[test]
fn canonical_worlds_are_prime_in_fragment() {
    let h = Henkin::default();
    for s in ["p0 | ~p0", "(p0 -> p1) | (p1 -> p0)", "~~(p0 | p1) -> ~~p0 | ~~p1"] {
        let frag = subformulas(&f(s));
        let cm = h.build_canonical(&frag).unwrap();
        for label in &cm.labels {
            let t: Context = label.iter().cloned().collect();
            assert!(h.is_closed(&t, &frag).unwrap());
            assert!(has_disj_in(&t, &frag));
            assert!(h.prover().consistent(&t).unwrap());
        }
    }
}

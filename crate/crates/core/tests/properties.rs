mod common;

use lambek_core::{
    balanced, check_proof, prove, subformulas, CalculusMode, Formula, Prover, RuleKind, Sequent,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{atoms, forward_derivable, mutants, random_sequent};

fn derivable(s: &Sequent, mode: CalculusMode) -> bool {
    prove(s, mode).unwrap().proof.is_some()
}

fn lolli_occurrences(s: &Sequent) -> usize {
    s.formulas().map(Formula::linimps).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forward_built_sequents_are_found(seed: u64, mode_ix in 0usize..3) {
        let mode = CalculusMode::ALL[mode_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ant, succ) = forward_derivable(&mut rng, &atoms(&["p", "q"]), mode, 4);
        let s = Sequent::new(ant, succ).unwrap();
        let out = prove(&s, mode).unwrap();
        let p = out.proof.expect("derivable by construction");
        prop_assert!(check_proof(&p, mode));
        prop_assert!(out.stats.max_depth <= s.connectives() as u64 + 1);
        let subs = subformulas(&s);
        for n in p.nodes() {
            prop_assert!(balanced(&n.conclusion));
            prop_assert!(n.conclusion.formulas().all(|f| subs.contains(f)));
        }
    }

    #[test]
    fn mode_monotonicity(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sequent(&mut rng, &atoms(&["p", "q"]), 3, 2);
        let sdl = derivable(&s, CalculusMode::Sdl);
        prop_assert!(!derivable(&s, CalculusMode::L) || sdl);
        prop_assert!(!derivable(&s, CalculusMode::SdlMinus) || sdl);
    }

    // Each positive -o is discharged exactly once.
    #[test]
    fn lolli_rule_count(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ant, succ) = forward_derivable(&mut rng, &atoms(&["p", "q", "r"]), CalculusMode::Sdl, 4);
        let s = Sequent::new(ant, succ).unwrap();
        let p = prove(&s, CalculusMode::Sdl).unwrap().proof.unwrap();
        if s.succedent().linimps() == 0 {
            prop_assert_eq!(p.rule_count(RuleKind::LinImpR), lolli_occurrences(&s));
        }
    }

    #[test]
    fn checker_rejects_mutants(seed: u64, mode_ix in 0usize..3) {
        let mode = CalculusMode::ALL[mode_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ant, succ) = forward_derivable(&mut rng, &atoms(&["p", "q"]), mode, 3);
        let s = Sequent::new(ant, succ).unwrap();
        let p = prove(&s, mode).unwrap().proof.unwrap();
        for m in mutants(&p) {
            prop_assert!(!check_proof(&m, mode), "accepted mutant of {}", s);
        }
    }

    #[test]
    fn enumerated_proofs_are_distinct_and_valid(seed: u64, mode_ix in 0usize..3) {
        let mode = CalculusMode::ALL[mode_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ant, succ) = forward_derivable(&mut rng, &atoms(&["p", "q"]), mode, 3);
        let s = Sequent::new(ant, succ).unwrap();
        let all = Prover::new(mode).enumerate(&s, 50).unwrap();
        prop_assert!(!all.is_empty());
        for (i, p) in all.iter().enumerate() {
            prop_assert!(check_proof(p, mode));
            prop_assert_eq!(&p.conclusion, &s);
            prop_assert!(all[..i].iter().all(|q| q != p));
        }
    }
}

#[test]
fn search_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let atoms = atoms(&["p", "q"]);
    for _ in 0..100 {
        let s = random_sequent(&mut rng, &atoms, 3, 2);
        for mode in CalculusMode::ALL {
            let a = prove(&s, mode).unwrap();
            let b = prove(&s, mode).unwrap();
            assert_eq!(a.proof, b.proof);
            assert_eq!(a.stats, b.stats);
        }
    }
}

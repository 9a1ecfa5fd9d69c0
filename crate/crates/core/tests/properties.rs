mod common;

use common::{random_quantum, random_word, single_mutations, Shape};
use proptest::prelude::*;
use q1ca::format::{parse_machine, serialize_machine};
use q1ca::model::{CounterSign, Machine, MachineKind};
use q1ca::sim::{run, run_branch_observed, run_density_observed, Engine, EngineOptions, Semantics};
use q1ca::validate::{check_blind, check_general_q, check_simple_q, validate};
use q1ca::zoo::{build_m1, build_m2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KINDS: [MachineKind; 3] = [MachineKind::Rtq1ca, MachineKind::Kq1ca, MachineKind::OneWay];

fn machine_from(seed: u64, kind_index: usize, blind: bool, simple: bool) -> Machine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kind = KINDS[kind_index];
    let states = rng.gen_range(1..=3);
    random_quantum(&mut rng, &Shape { kind, states, symbols: 2, blind, simple: simple && kind != MachineKind::OneWay })
}

fn word_from(seed: u64) -> String {
    random_word(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed), &['a', 'b'], 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_machines_are_well_formed(seed in any::<u64>(), kind in 0usize..3, blind in any::<bool>(), simple in any::<bool>()) {
        let m = machine_from(seed, kind, blind, simple);
        let report = validate(&m);
        prop_assert!(report.ok(), "{}", report);
    }

    #[test]
    fn mass_is_conserved_step_by_step(seed in any::<u64>(), kind in 0usize..3, blind in any::<bool>()) {
        let m = machine_from(seed, kind, blind, false);
        let w = word_from(seed);
        let semantics = Semantics::for_kind(m.kind()).unwrap();
        let opts = EngineOptions { max_steps: Some(40), ..EngineOptions::default() };
        let mut worst: f64 = 0.0;
        let branch = run_branch_observed(&m, &w, semantics, &opts, |_, mix| {
            worst = worst.max((mix.total_mass() - 1.0).abs());
        }).unwrap();
        let density = run_density_observed(&m, &w, semantics, &opts, |_, st| {
            worst = worst.max((st.total_mass() - 1.0).abs());
            worst = worst.max(st.rho.hermiticity_defect());
        }).unwrap();
        prop_assert!(worst <= 1e-9, "per-step deviation {}", worst);
        for out in [branch, density] {
            prop_assert!((out.accept + out.reject + out.unresolved - 1.0).abs() <= 1e-9, "{}", out);
        }
        prop_assert!((branch.accept - density.accept).abs() <= 1e-9);
        prop_assert!((branch.reject - density.reject).abs() <= 1e-9);
        prop_assert!((branch.unresolved - density.unresolved).abs() <= 1e-9);
        if m.kind() != MachineKind::OneWay {
            prop_assert_eq!(branch.unresolved, 0.0);
        }
    }

    #[test]
    fn simple_and_general_checks_agree(seed in any::<u64>(), kind in 0usize..2, mutate in any::<bool>()) {
        let mut m = machine_from(seed, kind, false, true);
        if mutate {
            let mutations = single_mutations(&m);
            m = mutations[(seed as usize) % mutations.len()].clone();
        }
        let simple = check_simple_q(&m).unwrap().ok();
        let general = check_general_q(&m.as_general()).unwrap().ok();
        prop_assert_eq!(simple, general);
        prop_assert_eq!(simple, !mutate);
    }

    #[test]
    fn serialization_round_trip(seed in any::<u64>(), kind in 0usize..3, blind in any::<bool>(), simple in any::<bool>()) {
        let m = machine_from(seed, kind, blind, simple);
        let back = parse_machine(&serialize_machine(&m)).unwrap();
        prop_assert_eq!(&back, &m);
        let opts = EngineOptions { max_steps: Some(30), ..EngineOptions::default() };
        for w in ["", "a", "ab", "bba"] {
            let (x, y) = (run(&m, w, &opts).unwrap(), run(&back, w, &opts).unwrap());
            prop_assert!((x.accept - y.accept).abs() <= 1e-12 && (x.reject - y.reject).abs() <= 1e-12);
        }
    }

    #[test]
    fn blind_lookups_ignore_the_sign(seed in any::<u64>(), kind in 0usize..3) {
        let m = machine_from(seed, kind, true, false);
        prop_assert!(check_blind(&m).unwrap().ok());
        for (q, s, _, _) in m.columns() {
            let zero = m.targets(q, s, CounterSign::Zero);
            prop_assert_eq!(zero, m.targets(q, s, CounterSign::Plus));
            prop_assert_eq!(zero, m.targets(q, s, CounterSign::Minus));
        }
    }

    #[test]
    fn blind_runs_are_shift_invariant(seed in any::<u64>(), kind in 0usize..3) {
        let m = machine_from(seed, kind, true, false);
        let w = word_from(seed);
        let base = EngineOptions { max_steps: Some(40), ..EngineOptions::default() };
        let shifted = EngineOptions { counter_origin: 5, ..base.clone() };
        let (x, y) = (run(&m, &w, &base).unwrap(), run(&m, &w, &shifted).unwrap());
        prop_assert!((x.accept - y.accept).abs() <= 1e-12 && (x.reject - y.reject).abs() <= 1e-12);
    }
}

#[test]
fn zoo_machines_are_shift_invariant() {
    let shifted = EngineOptions { counter_origin: 5, ..EngineOptions::default() };
    let machines = [build_m1(), build_m2(2).unwrap(), build_m2(3).unwrap()];
    for m in &machines {
        for w in common::words(&["a", "b", "c"], 4) {
            let (x, y) = (run(m, &w, &EngineOptions::default()).unwrap(), run(m, &w, &shifted).unwrap());
            assert!((x.accept - y.accept).abs() <= 1e-12, "{w}");
        }
    }
}

#[test]
fn zoo_machines_round_trip() {
    for m in [build_m1(), build_m2(2).unwrap(), build_m2(5).unwrap()] {
        let back = parse_machine(&serialize_machine(&m)).unwrap();
        assert_eq!(back, m);
    }
}

#[test]
fn every_mutation_of_the_zoo_is_caught() {
    for m in [build_m1(), build_m2(2).unwrap()] {
        for (i, mutated) in single_mutations(&m).iter().enumerate() {
            assert!(!validate(mutated).ok(), "mutation {i} went unnoticed");
        }
    }
}

#[test]
fn density_engine_option_dispatches() {
    let opts = EngineOptions { engine: Engine::Density, ..EngineOptions::default() };
    let out = run(&build_m1(), "aacc", &opts).unwrap();
    assert!((out.accept - 0.25).abs() <= 1e-9);
}

use q1ca::model::{Amplitude, CounterMode, HeadMove, Increment, Machine, MachineBuilder, MachineKind, SignSpec, Symbol, Target, CENT};
use q1ca::sim::{run, run_1q1ca, run_density, run_kq1ca, run_rtq1ca, EngineOptions, SimError};
use q1ca::zoo::{build_m1, build_m2};

/// One-state kq1ca that writes `register` on `¢` and then stays neutral.
fn writes_on_cent(register: usize, mode: CounterMode) -> Machine {
    let mut b = MachineBuilder::new(MachineKind::Kq1ca);
    b.counter_mode(mode);
    b.states(&["q"]).unwrap().input(&["a"]).unwrap();
    b.registers(&["n", "a", "r"]).unwrap().initial_register("n").unwrap().accept(&["a"]).unwrap().reject(&["r"]).unwrap();
    for s in 0..3 {
        let w = if s == 0 { register } else { 0 };
        let t = Target { to: 0, inc: Increment::Keep, head: None, register: Some(w), amp: Amplitude::new(1.0, 0.0) };
        b.transition(0, Symbol(s), SignSpec::Any, t).unwrap();
    }
    b.build().unwrap()
}

#[test]
fn immediate_reject() {
    let out = run_kq1ca(&writes_on_cent(2, CounterMode::Checked), "aa", &EngineOptions::default()).unwrap();
    assert_eq!((out.accept, out.reject, out.steps), (0.0, 1.0, 1));
}

#[test]
fn immediate_accept() {
    let out = run_kq1ca(&writes_on_cent(1, CounterMode::Checked), "aa", &EngineOptions::default()).unwrap();
    assert_eq!((out.accept, out.reject, out.steps), (1.0, 0.0, 1));
}

#[test]
fn blind_accept_before_the_end_counts_as_reject() {
    let m = writes_on_cent(1, CounterMode::Blind);
    let out = run_kq1ca(&m, "aa", &EngineOptions::default()).unwrap();
    assert_eq!((out.accept, out.reject), (0.0, 1.0));
    let density = run_density(&m, "aa", &EngineOptions::density()).unwrap();
    assert_eq!((density.accept, density.reject), (0.0, 1.0));
}

#[test]
fn real_time_run_observes_only_at_the_end() {
    // the early `a` is overwritten by later steps under real-time semantics
    let out = run_rtq1ca(&writes_on_cent(1, CounterMode::Checked), "aa", &EngineOptions::default()).unwrap();
    assert_eq!((out.accept, out.reject, out.steps), (0.0, 1.0, 4));
}

#[test]
fn kinds_are_checked() {
    let m1 = build_m1();
    assert!(matches!(run_1q1ca(&m1, "a", &EngineOptions::default()), Err(SimError::WrongKind { .. })));
    let m2 = build_m2(2).unwrap();
    assert!(matches!(run_kq1ca(&m2, "a", &EngineOptions::default()), Err(SimError::WrongKind { .. })));
}

#[test]
fn foreign_input_symbol() {
    assert!(matches!(run(&build_m1(), "abd", &EngineOptions::default()), Err(SimError::Model(_))));
}

#[test]
fn option_limits() {
    let m1 = build_m1();
    let short = EngineOptions { max_steps: Some(2), ..EngineOptions::default() };
    assert!(matches!(run(&m1, "abc", &short), Err(SimError::Options(_))));
    let no_branches = EngineOptions { branch_cap: 0, ..EngineOptions::default() };
    assert!(matches!(run(&m1, "abc", &no_branches), Err(SimError::Options(_))));
}

#[test]
fn branch_cap_recommends_density() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let p = q1ca::transform::random_rtp1ca(&mut rng, 3, 2);
    let lifted = q1ca::transform::lift_p_to_q(&q1ca::transform::simplify_rtp1ca(&p).unwrap()).unwrap();
    let tight = EngineOptions { branch_cap: 1, ..EngineOptions::default() };
    let err = run(&lifted, "ab", &tight).unwrap_err();
    assert!(matches!(err, SimError::BranchCap { .. }));
    assert!(err.to_string().contains("density"));
}

#[test]
fn density_cap() {
    let tight = EngineOptions { density_cap: 1, ..EngineOptions::density() };
    assert!(matches!(run(&build_m1(), "ab", &tight), Err(SimError::DensityCap { .. })));
}

#[test]
fn head_overrun_is_reported() {
    let mut b = MachineBuilder::new(MachineKind::OneWay);
    b.states(&["q"]).unwrap().input(&["a"]).unwrap();
    b.registers(&["n", "r"]).unwrap().initial_register("n").unwrap().reject(&["r"]).unwrap();
    for s in 0..3 {
        let t = Target { to: 0, inc: Increment::Keep, head: Some(HeadMove::Right), register: Some(0), amp: Amplitude::new(1.0, 0.0) };
        b.transition(0, Symbol(s), SignSpec::Any, t).unwrap();
    }
    let m = b.build().unwrap();
    assert!(matches!(run(&m, "a", &EngineOptions::default()), Err(SimError::HeadOverrun { step: 3, .. })));
}

#[test]
fn endless_pause_is_unresolved() {
    let mut b = MachineBuilder::new(MachineKind::OneWay);
    b.states(&["q"]).unwrap().input(&["a"]).unwrap();
    b.registers(&["n", "r"]).unwrap().initial_register("n").unwrap().reject(&["r"]).unwrap();
    let t = Target { to: 0, inc: Increment::Keep, head: Some(HeadMove::Stay), register: Some(0), amp: Amplitude::new(1.0, 0.0) };
    b.transition(0, CENT, SignSpec::Any, t).unwrap();
    let m = b.build().unwrap();
    let opts = EngineOptions { max_steps: Some(10), ..EngineOptions::default() };
    let out = run(&m, "a", &opts).unwrap();
    assert_eq!((out.accept, out.reject, out.unresolved, out.steps), (0.0, 0.0, 1.0, 10));
    assert_eq!(run_density(&m, "a", &opts).unwrap(), out);
}

#[test]
fn engines_agree_on_short_words() {
    let machines = [build_m1(), build_m2(2).unwrap()];
    for m in &machines {
        for w in q1ca::zoo::enumerate_words(m.input_alphabet(), 3) {
            let branch = run(m, &w, &EngineOptions::default()).unwrap();
            let density = run(m, &w, &EngineOptions::density()).unwrap();
            assert!((branch.accept - density.accept).abs() <= 1e-9, "{w}");
            assert!((branch.reject - density.reject).abs() <= 1e-9, "{w}");
            assert_eq!(branch.steps, density.steps);
        }
    }
}

#[test]
fn outcome_rendering() {
    let out = run(&build_m1(), "aacc", &EngineOptions::default()).unwrap();
    assert_eq!(out.to_string(), "ACCEPT 0.25 REJECT 0.75 UNRESOLVED 0 STEPS 6");
}

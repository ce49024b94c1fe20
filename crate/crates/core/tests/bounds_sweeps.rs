use cqe_core::bounds::{check_fannes, dpi_check, run_sweep, ssa_check, Suite, LABEL_E_PRIME};
use cqe_core::random::{random_density, random_pure_state, seeded_rng};

#[test]
fn every_suite_passes_200_trials() {
    for suite in Suite::ALL {
        let s = run_sweep(suite, 200, 0xC0FFEE).unwrap();
        assert_eq!(s.violations, 0, "{s:?}");
    }
}

#[test]
fn different_seeds_give_different_worst_slack() {
    let a = run_sweep(Suite::Fannes, 50, 1).unwrap();
    let b = run_sweep(Suite::Fannes, 50, 2).unwrap();
    assert_ne!(a.worst_slack, b.worst_slack);
}

#[test]
fn fannes_tighter_for_close_states() {
    let mut rng = seeded_rng(3);
    let rho = random_density(&mut rng, &[2], &["A"]);
    let far = random_density(&mut rng, &[2], &["A"]);
    let m = &rho.matrix().scale(0.99) + &far.matrix().scale(0.01);
    let near = cqe_core::qlinalg::DensityOperator::single(m, "A").unwrap();
    let r = check_fannes(&rho, &near).unwrap();
    assert!(r.satisfied && r.rhs < 0.2);
}

#[test]
fn dpi_on_qutrit_split() {
    let mut rng = seeded_rng(77);
    for _ in 0..20 {
        let blocks: Vec<_> = [0.2, 0.3, 0.5]
            .into_iter()
            .map(|p| {
                (
                    p,
                    random_pure_state(&mut rng, &[2, 2, 3, 2], &["A", "B", LABEL_E_PRIME, "E"]),
                )
            })
            .collect();
        assert!(dpi_check(&blocks).unwrap().satisfied());
    }
}

#[test]
fn ssa_on_qutrit_tripartite() {
    let mut rng = seeded_rng(5);
    for _ in 0..20 {
        let rho = random_density(&mut rng, &[3, 2, 2], &["A", "B", "C"]);
        assert!(ssa_check(&rho).unwrap().satisfied);
    }
}

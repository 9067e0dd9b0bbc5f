//! Statistical checks of the simulator against exact values.

use consensus_core::analytics::{expected_t1_complete, expected_t1_star};
use consensus_core::graph::{complete_graph, path_graph, star_graph};
use consensus_core::sim::{run_monte_carlo, run_trials, TrialStatus};
use consensus_core::{Execution, InitSpec, NodeState};

fn within_3_se(mean: f64, stderr: f64, exact: f64) -> bool {
    (mean - exact).abs() <= 3.0 * stderr
}

#[test]
fn two_node_clock_is_unit_exponential() {
    let q = path_graph(2).unwrap();
    let init = InitSpec::explicit(vec![NodeState::One, NodeState::Zero]);
    let s = run_monte_carlo(&q, &init, 100_000, 1, None).unwrap();
    let t1 = s.t1.unwrap();
    assert!(within_3_se(t1.mean, t1.stderr, 1.0), "{t1:?}");
    // One against one is a tie: every trial stops as a draw at the first contact.
    assert_eq!(s.draws, s.trials);
    assert_eq!(s.truncated, 0);
    assert!(s.t2.is_none());
}

#[test]
fn complete_three_nodes() {
    let q = complete_graph(3).unwrap();
    let s = run_monte_carlo(&q, &InitSpec::prefix(2, 1), 100_000, 2, None).unwrap();
    let t1 = s.t1.unwrap();
    assert!((expected_t1_complete(3, 2, 1).unwrap() - 1.0).abs() < 1e-15);
    assert!(within_3_se(t1.mean, t1.stderr, 1.0), "{t1:?}");
    assert!(s.all_correct && s.completed == s.trials);
}

#[test]
fn star_mode_sum_matches_simulation() {
    let (n, s0, s1) = (100, 75, 25);
    let q = star_graph(n).unwrap();
    let hub_zero = InitSpec::prefix(s0, s1);
    let hub_one = InitSpec::explicit(
        std::iter::repeat_n(NodeState::One, s1)
            .chain(std::iter::repeat_n(NodeState::Zero, s0))
            .collect(),
    );
    for (init, hub) in [(hub_zero, NodeState::Zero), (hub_one, NodeState::One)] {
        let exact = expected_t1_star(n, s0, s1, hub).unwrap();
        let s = run_monte_carlo(&q, &init, 5000, 3, None).unwrap();
        let t1 = s.t1.unwrap();
        assert!(within_3_se(t1.mean, t1.stderr, exact), "{hub:?}: {} vs {exact}", t1.mean);
    }
}

#[test]
fn draws_stop_after_phase_one() {
    let q = complete_graph(8).unwrap();
    let outcomes = run_trials(&q, &InitSpec::prefix(4, 4), 200, 0, None, Execution::default()).unwrap();
    for o in &outcomes {
        assert_eq!(o.status, TrialStatus::Draw);
        assert_eq!(o.final_config.count(NodeState::One), 0);
        assert_eq!(o.final_config.count(NodeState::Zero), 0);
        assert!(o.t2.is_none() && !o.correct);
    }
    let mean = outcomes.iter().map(|o| o.t1.unwrap()).sum::<f64>() / 200.0;
    let exact = expected_t1_complete(8, 4, 4).unwrap();
    assert!((mean / exact - 1.0).abs() < 0.25);
}

#![allow(clippy::needless_range_loop)]

use lbnes_core::{
    build_oligopoly, check_diagonal_dominance, interaction_matrix, nash_equilibrium,
    reference_scenario, payoff, pseudo_gradient, Matrix, OligopolyParams, QuadraticGame,
};
use proptest::prelude::*;

fn random_game(n: usize, entries: &[f64]) -> QuadraticGame {
    // Each player gets a symmetric Hessian with a strongly negative own entry.
    let mut hessians = Vec::new();
    let mut linear = Vec::new();
    let mut constants = Vec::new();
    let mut it = entries.iter().cycle();
    for i in 0..n {
        let mut h = Matrix::zeros(n, n);
        for r in 0..n {
            for c in r..n {
                let v = *it.next().unwrap();
                h[(r, c)] = v;
                h[(c, r)] = v;
            }
        }
        h[(i, i)] = -(n as f64) * 3.0 - h[(i, i)].abs();
        hessians.push(h);
        linear.push((0..n).map(|_| *it.next().unwrap()).collect());
        constants.push(*it.next().unwrap());
    }
    QuadraticGame::new(hessians, linear, constants).unwrap()
}

fn double_sum(game: &QuadraticGame, i: usize, x: &[f64]) -> f64 {
    let h = &game.hessians()[i];
    let n = x.len();
    let mut q = 0.0;
    for j in 0..n {
        for k in 0..n {
            q += h[(j, k)] * x[j] * x[k];
        }
    }
    let l: f64 = (0..n).map(|j| game.linear_terms()[i][j] * x[j]).sum();
    0.5 * q + l + game.constants()[i]
}

proptest! {
    #[test]
    fn payoff_matches_double_sum(
        n in 1usize..5,
        entries in prop::collection::vec(-2.0f64..2.0, 64),
        x in prop::collection::vec(-10.0f64..10.0, 4),
    ) {
        let game = random_game(n, &entries);
        let x = &x[..n];
        for i in 0..n {
            let got = payoff(&game, i, x).unwrap();
            let want = double_sum(&game, i, x);
            prop_assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn pseudo_gradient_matches_central_difference(
        n in 1usize..5,
        entries in prop::collection::vec(-2.0f64..2.0, 64),
        x in prop::collection::vec(-10.0f64..10.0, 4),
    ) {
        let game = random_game(n, &entries);
        let x = x[..n].to_vec();
        let g = pseudo_gradient(&game, &x).unwrap();
        let step = 1e-4;
        for i in 0..n {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[i] += step;
            minus[i] -= step;
            // Exact for quadratics up to rounding.
            let fd = (payoff(&game, i, &plus).unwrap() - payoff(&game, i, &minus).unwrap()) / (2.0 * step);
            prop_assert!((g[i] - fd).abs() < 1e-6 * (1.0 + g[i].abs()), "{} vs {}", g[i], fd);
        }
        let im = interaction_matrix(&game);
        let hx = im.h_matrix.mul_vec(&x).unwrap();
        for i in 0..n {
            prop_assert!((g[i] - hx[i] - im.h_vector[i]).abs() < 1e-10 * (1.0 + g[i].abs()));
        }
    }

    #[test]
    fn second_difference_is_own_curvature(
        n in 1usize..5,
        entries in prop::collection::vec(-2.0f64..2.0, 64),
        x in prop::collection::vec(-10.0f64..10.0, 4),
    ) {
        let game = random_game(n, &entries);
        let x = x[..n].to_vec();
        let s = 0.5;
        for i in 0..n {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[i] += s;
            minus[i] -= s;
            let d2 = (payoff(&game, i, &plus).unwrap() - 2.0 * payoff(&game, i, &x).unwrap()
                + payoff(&game, i, &minus).unwrap()) / (s * s);
            let want = game.hessians()[i][(i, i)];
            prop_assert!((d2 - want).abs() < 1e-9 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn random_markets_are_well_posed(
        r in prop::array::uniform4(0.05f64..5.0),
        m in prop::array::uniform4(1.0f64..100.0),
        sd in 1.0f64..500.0,
    ) {
        let game = build_oligopoly(&OligopolyParams { resistances: r, marginal_costs: m, total_demand: sd }).unwrap();
        prop_assert!(check_diagonal_dominance(&game).pass);
        for (i, h) in game.hessians().iter().enumerate() {
            prop_assert!(h[(i, i)] < 0.0);
            prop_assert!(h.asymmetry() == 0.0);
        }
        let hm = interaction_matrix(&game).h_matrix;
        prop_assert!(hm.asymmetry() < 1e-15);
    }
}

#[test]
fn reference_market_equilibrium() {
    let game = build_oligopoly(&OligopolyParams::reference()).unwrap();
    let nash = nash_equilibrium(&game).unwrap();
    let theta = [42.8818, 40.9300, 37.8363, 35.0874];
    let payoffs = [524.0208, 293.4217, 238.4846, 209.6584];
    for i in 0..4 {
        assert!((nash.actions[i] - theta[i]).abs() < 1e-3, "θ*[{i}] = {}", nash.actions[i]);
        assert!((nash.payoffs[i] - payoffs[i]).abs() < 1e-3, "J*[{i}] = {}", nash.payoffs[i]);
    }
    let g = pseudo_gradient(&game, &nash.actions).unwrap();
    assert!(g.iter().all(|v| v.abs() < 1e-10));
}

#[test]
fn aggregated_matrices_match_written_form() {
    let p = OligopolyParams::reference();
    let [r1, r2, r3, r4] = p.resistances;
    let [m1, m2, m3, m4] = p.marginal_costs;
    let sd = p.total_demand;
    let d = r2 * r3 * r4 + r1 * r3 * r4 + r1 * r2 * r4 + r1 * r2 * r3;
    let h_expected = [
        [-2.0 * (r3 * r4 + r2 * r4 + r2 * r3), r3 * r4, r2 * r4, r2 * r3],
        [r3 * r4, -2.0 * (r3 * r4 + r1 * r4 + r1 * r3), r1 * r4, r1 * r3],
        [r2 * r4, r1 * r4, -2.0 * (r2 * r4 + r1 * r4 + r1 * r2), r1 * r2],
        [r2 * r3, r1 * r3, r1 * r2, -2.0 * (r2 * r3 + r1 * r3 + r1 * r2)],
    ];
    let h_vec = [
        m1 * (r3 * r4 + r2 * r4 + r2 * r3) + sd * r2 * r3 * r4,
        m2 * (r3 * r4 + r1 * r4 + r1 * r3) + sd * r1 * r3 * r4,
        m3 * (r2 * r4 + r1 * r4 + r1 * r2) + sd * r1 * r2 * r4,
        m4 * (r2 * r3 + r1 * r3 + r1 * r2) + sd * r1 * r2 * r3,
    ];
    let game = build_oligopoly(&p).unwrap();
    let im = interaction_matrix(&game);
    for i in 0..4 {
        for j in 0..4 {
            assert!((im.h_matrix[(i, j)] - h_expected[i][j] / d).abs() < 1e-12);
        }
        assert!((im.h_vector[i] - h_vec[i] / d).abs() < 1e-10);
    }
    // Constants: −mᵢ·S_d·(other three R's)/D.
    let c = [
        -m1 * sd * r2 * r3 * r4 / d,
        -m2 * sd * r1 * r3 * r4 / d,
        -m3 * sd * r1 * r2 * r4 / d,
        -m4 * sd * r1 * r2 * r3 / d,
    ];
    for i in 0..4 {
        assert!((game.constants()[i] - c[i]).abs() < 1e-10);
    }
    // Firm 2 only couples through row/column 2.
    let h2 = &game.hessians()[1];
    assert_eq!(h2[(0, 2)], 0.0);
    assert_eq!(h2[(3, 3)], 0.0);
    assert!((game.linear_terms()[1][0] + m2 * r3 * r4 / d).abs() < 1e-12);
}

#[test]
fn symmetric_firms_price_alike() {
    let game = build_oligopoly(&OligopolyParams {
        resistances: [1.0; 4],
        marginal_costs: [10.0; 4],
        total_demand: 40.0,
    })
    .unwrap();
    let theta = nash_equilibrium(&game).unwrap().actions;
    for v in &theta[1..] {
        assert!((v - theta[0]).abs() < 1e-10);
    }
}

#[test]
fn scenario_bundle() {
    let s = reference_scenario();
    assert_eq!(s.game, build_oligopoly(&OligopolyParams::reference()).unwrap());
    assert_eq!(s.plan.q_product, 1);
    assert_eq!(s.plan.omega_tilde, 1.0);
    assert_eq!(s.plan.multipliers, vec![30, 24, 44, 36]);
    assert_eq!(s.seeker.gains(), &[6.0, 18.0, 10.0, 24.0]);
    assert_eq!(s.theta0, vec![52.0, 40.93, 33.5, 35.09]);
    assert_eq!(s.t_end, 100.0);
}

#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;

use lbnes_core::{
    averaged_rhs, build_frequency_plan, error_matrix, full_rhs, interaction_matrix, lie_bracket,
    nu_numeric, nu_table, reference_scenario, payoff, pseudo_gradient, update_rate, vector_fields,
    Error, RationalRatio, SeekerParams, DEFAULT_NU_SUBINTERVALS,
};
use proptest::prelude::*;

fn ratio(p: u64, q: u64) -> RationalRatio {
    RationalRatio::new(p, q).unwrap()
}

proptest! {
    #[test]
    fn plan_invariants(
        pq in prop::collection::vec((1u64..12, 1u64..6), 1..5),
        omega in 0.1f64..50.0,
    ) {
        let ratios: Vec<_> = pq.iter().map(|&(p, q)| ratio(p, q)).collect();
        match build_frequency_plan(&ratios, omega) {
            Ok(plan) => {
                for (i, r) in ratios.iter().enumerate() {
                    // ωᵢ = nᵢ·ω̃
                    let rebuilt = plan.multipliers[i] as f64 * plan.omega_tilde;
                    prop_assert!((rebuilt - plan.omegas[i]).abs() <= 1e-12 * plan.omegas[i]);
                    prop_assert!((plan.omegas[i] - r.value() * omega).abs() <= 1e-12 * plan.omegas[i]);
                }
                let q: u64 = ratios.iter().map(|r| r.q()).product();
                prop_assert_eq!(plan.q_product, q);
                let scaled = plan.scaled(3.0).unwrap();
                prop_assert_eq!(&scaled.multipliers, &plan.multipliers);
                prop_assert!((scaled.omega_tilde - 3.0 * plan.omega_tilde).abs() <= 1e-12 * scaled.omega_tilde);
            }
            Err(Error::AssumptionViolation { .. }) => {
                let mut seen = ratios.clone();
                seen.sort_by(|a, b| a.value().partial_cmp(&b.value()).unwrap());
                seen.dedup();
                prop_assert!(seen.len() < ratios.len());
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn update_rate_expands_by_angle_difference(t in 0.0f64..20.0, y in -100.0f64..100.0) {
        let s = reference_scenario();
        for i in 0..4 {
            let (a, w, k) = (s.seeker.alphas()[i], s.plan.omegas[i], s.seeker.gains()[i]);
            let got = update_rate(i, t, y, &s.seeker, &s.plan);
            let want = (a * w).sqrt() * ((w * t).cos() * (k * y).cos() + (w * t).sin() * (k * y).sin());
            prop_assert!((got - want).abs() < 1e-9);
            prop_assert!(got.abs() <= (a * w).sqrt() * (1.0 + 1e-15));
        }
    }

    #[test]
    fn fields_reconstruct_the_law(
        t in 0.0f64..20.0,
        theta in prop::array::uniform4(20.0f64..60.0),
    ) {
        let s = reference_scenario();
        let rhs = full_rhs(&s.game, &s.seeker, &s.plan, t, &theta).unwrap();
        for j in 0..4 {
            let (b1, b2) = vector_fields(&s.game, &s.seeker, j, &theta).unwrap();
            let a = s.seeker.alphas()[j];
            prop_assert!(((b1[j] * b1[j] + b2[j] * b2[j]) - a).abs() < 1e-12);
            let w = s.plan.omegas[j];
            // √ω·(b₁ sin ωt + b₂ cos ωt) is the j-th rate.
            let rebuilt = w.sqrt() * (b1[j] * (w * t).sin() + b2[j] * (w * t).cos());
            prop_assert!((rebuilt - rhs[j]).abs() < 1e-9);
            for m in (0..4).filter(|&m| m != j) {
                prop_assert_eq!(b1[m], 0.0);
                prop_assert_eq!(b2[m], 0.0);
            }
        }
    }

    #[test]
    fn bracket_matches_finite_difference(theta in prop::array::uniform4(20.0f64..60.0)) {
        let s = reference_scenario();
        let fd_jac = |field: usize, j: usize, x: &[f64]| -> f64 {
            // ∂(b_field)_j/∂θ_j by central difference; fields act on coordinate j only.
            let step = 1e-6;
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[j] += step;
            m[j] -= step;
            let pick = |v: &[f64]| {
                let (b1, b2) = vector_fields(&s.game, &s.seeker, j, v).unwrap();
                if field == 1 { b1[j] } else { b2[j] }
            };
            (pick(&p) - pick(&m)) / (2.0 * step)
        };
        for j in 0..4 {
            let (b1, b2) = vector_fields(&s.game, &s.seeker, j, &theta).unwrap();
            // [b₁, b₂] = (∂b₂/∂θ)b₁ − (∂b₁/∂θ)b₂
            let fd = fd_jac(2, j, &theta) * b1[j] - fd_jac(1, j, &theta) * b2[j];
            let br = lie_bracket(&s.game, &s.seeker, j, &theta).unwrap();
            prop_assert!((br[j] - fd).abs() < 1e-5 * (1.0 + fd.abs()), "{} vs {}", br[j], fd);
        }
    }

    #[test]
    fn averaged_rhs_two_routes(theta in prop::array::uniform4(20.0f64..60.0)) {
        let s = reference_scenario();
        let direct = averaged_rhs(&s.game, &s.seeker, &theta).unwrap();
        let mut from_brackets = [0.0; 4];
        for j in 0..4 {
            let b = lie_bracket(&s.game, &s.seeker, j, &theta).unwrap();
            for (acc, v) in from_brackets.iter_mut().zip(&b) {
                *acc -= 0.5 * v;
            }
        }
        let em = error_matrix(&s.game, &s.seeker).unwrap();
        let nash = lbnes_core::nash_equilibrium(&s.game).unwrap().actions;
        let offset: Vec<f64> = theta.iter().zip(&nash).map(|(a, b)| a - b).collect();
        let linear = em.a_matrix.mul_vec(&offset).unwrap();
        for i in 0..4 {
            prop_assert!((direct[i] - from_brackets[i]).abs() < 1e-12);
            prop_assert!((direct[i] - linear[i]).abs() < 1e-9 * (1.0 + direct[i].abs()));
        }
    }
}

#[test]
fn rhs_is_periodic_and_decentralized() {
    let s = reference_scenario();
    let theta = [45.0, 41.0, 36.0, 34.0];
    let period = s.plan.period();
    let a = full_rhs(&s.game, &s.seeker, &s.plan, 0.37, &theta).unwrap();
    let b = full_rhs(&s.game, &s.seeker, &s.plan, 0.37 + period, &theta).unwrap();
    for i in 0..4 {
        assert!((a[i] - b[i]).abs() < 1e-9);
    }
    // Entry i sees the state only through Jᵢ.
    for i in 0..4 {
        let y = payoff(&s.game, i, &theta).unwrap();
        assert_eq!(a[i], update_rate(i, 0.37, y, &s.seeker, &s.plan));
    }
}

#[test]
fn error_matrix_is_linear_in_gains() {
    let s = reference_scenario();
    let base = error_matrix(&s.game, &s.seeker).unwrap();
    let doubled = SeekerParams::new(
        s.seeker.alphas().to_vec(),
        s.seeker.gains().iter().map(|k| 2.0 * k).collect(),
    )
    .unwrap();
    let twice = error_matrix(&s.game, &doubled).unwrap();
    let h = interaction_matrix(&s.game).h_matrix;
    for i in 0..4 {
        let kappa = 0.5 * s.seeker.alphas()[i] * s.seeker.gains()[i];
        for j in 0..4 {
            assert!((twice.a_matrix[(i, j)] - 2.0 * base.a_matrix[(i, j)]).abs() < 1e-15);
            assert!((base.a_matrix[(i, j)] - kappa * h[(i, j)]).abs() < 1e-15);
        }
    }
}

#[test]
fn averaged_rhs_vanishes_at_equilibrium() {
    let s = reference_scenario();
    let nash = lbnes_core::nash_equilibrium(&s.game).unwrap().actions;
    let v = averaged_rhs(&s.game, &s.seeker, &nash).unwrap();
    assert!(v.iter().all(|x| x.abs() < 1e-12));
    let g = pseudo_gradient(&s.game, &[50.0, 50.0, 50.0, 50.0]).unwrap();
    let v = averaged_rhs(&s.game, &s.seeker, &[50.0, 50.0, 50.0, 50.0]).unwrap();
    for i in 0..4 {
        assert!((v[i] - 0.5 * 0.05 * s.seeker.gains()[i] * g[i]).abs() < 1e-12);
    }
}

#[test]
fn nu_cross_harmonics_vanish() {
    for ni in 1..=10u64 {
        for nj in (1..=10u64).filter(|&n| n != ni) {
            for k in 1..=2u8 {
                for l in 1..=2u8 {
                    let v = nu_numeric(k, l, ni, nj, DEFAULT_NU_SUBINTERVALS).unwrap();
                    assert!(v.abs() < 1e-10, "ν{k}{l}({ni},{nj}) = {v}");
                }
            }
        }
    }
}

#[test]
fn nu_same_harmonic() {
    for n in 1..=10u64 {
        let half = 1.0 / (2.0 * n as f64);
        assert!((nu_numeric(1, 2, n, n, DEFAULT_NU_SUBINTERVALS).unwrap() - half).abs() < 1e-8);
        assert!((nu_numeric(2, 1, n, n, DEFAULT_NU_SUBINTERVALS).unwrap() + half).abs() < 1e-8);
        // The diagonal entries integrate to zero, not −1/(2n).
        assert!(nu_numeric(1, 1, n, n, DEFAULT_NU_SUBINTERVALS).unwrap().abs() < 1e-10);
        assert!(nu_numeric(2, 2, n, n, DEFAULT_NU_SUBINTERVALS).unwrap().abs() < 1e-10);
    }
}

#[test]
fn nu_simpson_agrees_with_brute_force() {
    // Independent route: cumulative trapezoid for the inner integral,
    // trapezoid again for the outer one.
    let brute = |k: u8, l: u8, ni: f64, nj: f64| {
        let m = 4000;
        let h = 2.0 * PI / m as f64;
        let u = |idx: u8, x: f64| if idx == 1 { x.sin() } else { x.cos() };
        let mut inner = 0.0;
        let mut prev = 0.0;
        for s in 0..=m {
            let x = s as f64 * h;
            if s > 0 {
                inner += 0.5 * h * (u(l, nj * (x - h)) + u(l, nj * x));
            }
            let f = u(k, ni * x) * inner;
            if s > 0 {
                prev += 0.5 * h * f;
            }
            if s < m {
                prev += 0.5 * h * f;
            }
        }
        prev / (2.0 * PI)
    };
    for &(k, l, ni, nj) in &[(1u8, 2u8, 3u64, 3u64), (2, 1, 2, 2), (1, 1, 2, 5), (2, 2, 4, 1)] {
        let s = nu_numeric(k, l, ni, nj, DEFAULT_NU_SUBINTERVALS).unwrap();
        let b = brute(k, l, ni as f64, nj as f64);
        assert!((s - b).abs() < 1e-4, "({k},{l},{ni},{nj}): {s} vs {b}");
    }
}

#[test]
fn nu_table_covers_every_pair() {
    let s = reference_scenario();
    let table = nu_table(&s.plan, DEFAULT_NU_SUBINTERVALS).unwrap();
    assert_eq!(table.len(), 4 * 4 * 4);
    for e in &table {
        if e.n_i != e.n_j {
            assert!(e.value.abs() < 1e-9);
        }
    }
}

mod common;

use common::*;
use euler_entropy::riemann::{
    classify_wave_pattern, intermediate_states, shock_speeds, solve_intermediate_pressure,
    solve_riemann, solve_riemann_general, two_shock_residual, WaveFamily, WaveKind,
};
use euler_entropy::{GasConstants, GasState, RiemannData};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn moderate_compression_matches_bisection_oracle() {
    let data = RiemannData::new(st(1.0, 0.0, 1.0), st(1.0, -10.0, 1.0)).unwrap();
    let g = GasConstants::default();
    let expected = two_shock_pressure_oracle(&data, 1.5);
    let p_m = solve_intermediate_pressure(&data, g).unwrap();
    assert!(rel(p_m, expected) <= 1e-12, "{p_m} vs {expected}");
    assert!(two_shock_residual(&data, p_m, g).abs() / 10.0 <= 1e-10);
}

#[test]
fn paper_pressure_matches_bisection_oracle() {
    let data = RiemannData::paper_preset();
    let expected = two_shock_pressure_oracle(&data, 1.5);
    let p_m = solve_intermediate_pressure(&data, GasConstants::default()).unwrap();
    assert!(rel(p_m, expected) <= 1e-12);
}

#[test]
fn double_rarefaction_matches_isentropic_oracle() {
    let g = GasConstants::default();
    let gamma = g.adiabatic_exponent();
    let data = RiemannData::new(st(1.0, 0.0, 1.0), st(1.0, 3.0, 1.0)).unwrap();
    let sol = solve_riemann(&data, g).unwrap();
    assert_eq!(sol.pattern.left, Some(WaveKind::Rarefaction));
    assert_eq!(sol.pattern.right, Some(WaveKind::Rarefaction));
    // symmetric data: equal densities on both sides of the contact
    assert!(!sol.pattern.contact);

    let (p_star, v_star) = double_rarefaction_oracle(&data, gamma);
    assert!(rel(sol.p_m, p_star) <= 1e-9, "{} vs {p_star}", sol.p_m);
    assert!((sol.v_m2 - v_star).abs() <= 1e-9);
    assert!((sol.v_m2 - 1.5).abs() <= 1e-12);

    let fan = sol.waves[0];
    assert_eq!(fan.family, WaveFamily::Left);
    for k in 1..10 {
        let xi = fan.speed_lo + (fan.speed_hi - fan.speed_lo) * k as f64 / 10.0;
        let got = sol.sample(xi);
        let want = left_fan_state_oracle(&data.left, xi, sol.p_m, gamma);
        assert!(
            rel(got.p, want.p) <= 1e-9,
            "xi = {xi}: {} vs {}",
            got.p,
            want.p
        );
        assert!(rel(got.rho, want.rho) <= 1e-9);
        assert!((got.v2 - want.v2).abs() <= 1e-9);
    }
}

#[test]
fn expansive_pattern_classification() {
    let g = GasConstants::default();
    let data = RiemannData::new(st(1.0, 0.0, 1.0), st(1.0, 3.0, 1.0)).unwrap();
    let p = classify_wave_pattern(&data, g).unwrap();
    assert_eq!(
        p.kinds(),
        vec![WaveKind::Rarefaction, WaveKind::Rarefaction]
    );
    // unequal densities keep the contact
    let data = RiemannData::new(st(1.0, 0.0, 1.0), st(2.0, 3.0, 1.0)).unwrap();
    let p = classify_wave_pattern(&data, g).unwrap();
    assert_eq!(
        p.kinds(),
        vec![
            WaveKind::Rarefaction,
            WaveKind::Contact,
            WaveKind::Rarefaction
        ]
    );
}

#[test]
fn sod_problem_is_rarefaction_contact_shock() {
    // c_v = 5/2 gives γ = 1.4
    let g = GasConstants::new(2.5).unwrap();
    let data = RiemannData::new(st(1.0, 0.0, 1.0), st(0.125, 0.0, 0.1)).unwrap();
    let sol = solve_riemann(&data, g).unwrap();
    assert_eq!(sol.pattern.to_string(), "Rarefaction-Contact-Shock");
    // reference star values of the Sod tube
    assert!((sol.p_m - 0.30313).abs() < 1e-5);
    assert!((sol.v_m2 - 0.92745).abs() < 1e-5);
    assert!((sol.states[2].rho - 0.26557).abs() < 1e-5);
    assert!((sol.states[1].rho - 0.42632).abs() < 1e-5);
}

#[test]
fn random_two_shock_data_follow_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    for _ in 0..200 {
        let g = random_gas(&mut rng);
        let data = random_two_shock_data(&mut rng);
        let Ok(sol) = solve_riemann(&data, g) else {
            continue;
        };
        if !sol.pattern.is_two_shock() {
            continue;
        }
        let p_m = solve_intermediate_pressure(&data, g).unwrap();
        let inter = intermediate_states(&data, p_m, g);
        let speeds = shock_speeds(&data, &inter, g).unwrap();
        assert_eq!(sol.p_m, p_m);
        assert_eq!(sol.waves[0].speed_lo, speeds.sigma_minus);
        assert_eq!(sol.waves.last().unwrap().speed_lo, speeds.sigma_plus);

        let general = solve_riemann_general(&data, g).unwrap();
        assert!(rel(general.p_m, sol.p_m) <= 1e-9);
        for (a, b) in sol.waves.iter().zip(&general.waves) {
            assert!((a.speed_lo - b.speed_lo).abs() <= 1e-9 * a.speed_lo.abs().max(1.0));
        }
        tested += 1;
    }
    assert!(tested >= 150, "only {tested} two-shock samples");
}

#[test]
fn all_patterns_satisfy_jump_conditions_and_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = std::collections::HashSet::new();
    for _ in 0..500 {
        let g = random_gas(&mut rng);
        let data = RiemannData::new(random_state(&mut rng), random_state(&mut rng)).unwrap();
        let Ok(sol) = solve_riemann(&data, g) else {
            continue;
        };
        seen.insert(sol.pattern.to_string());
        assert_eq!(sol.states.len(), sol.waves.len() + 1);
        assert!(sol.waves.windows(2).all(|w| w[0].speed_hi <= w[1].speed_lo));
        assert!(sol.max_jump_residual() <= 1e-9, "{:?}", sol);
        for w in &sol.waves {
            match w.kind {
                WaveKind::Shock => assert!(w.entropy_production(g) >= -1e-10),
                WaveKind::Contact => {
                    assert!(rel(w.pre_state.p, w.post_state.p) <= 1e-12);
                    assert_eq!(w.pre_state.v2, w.post_state.v2);
                    assert_eq!(w.speed_lo, w.pre_state.v2);
                    assert!(
                        w.entropy_production(g).abs()
                            <= 1e-9
                                * w.pre_state.entropy_density(g).abs().max(1.0)
                                * w.speed_lo.abs().max(1.0)
                    );
                }
                WaveKind::Rarefaction => assert!(w.speed_lo <= w.speed_hi),
            }
        }
    }
    assert!(seen.len() >= 3, "patterns seen: {seen:?}");
}

#[test]
fn tangential_velocity_only_changes_the_contact() {
    let g = GasConstants::default();
    let base = RiemannData::paper_preset();
    let a = solve_riemann(&base, g).unwrap();
    let mut shifted = base;
    shifted.left.v1 = 3.0;
    shifted.right.v1 = -7.0;
    let b = solve_riemann(&shifted, g).unwrap();
    assert_eq!(a.p_m, b.p_m);
    assert_eq!(a.v_m2, b.v_m2);
    for (wa, wb) in a.waves.iter().zip(&b.waves) {
        assert_eq!(wa.speed_lo, wb.speed_lo);
        assert_eq!(wa.post_state.rho, wb.post_state.rho);
    }
    let contact = b
        .waves
        .iter()
        .find(|w| w.kind == WaveKind::Contact)
        .unwrap();
    assert_eq!(contact.pre_state.v1, 3.0);
    assert_eq!(contact.post_state.v1, -7.0);
}

#[test]
fn mirrored_paper_data_negates_speeds() {
    let g = GasConstants::default();
    let a = solve_riemann(&RiemannData::paper_preset(), g).unwrap();
    let b = solve_riemann(&RiemannData::paper_preset().mirrored(), g).unwrap();
    let n = a.waves.len();
    for i in 0..n {
        let (wa, wb) = (&a.waves[i], &b.waves[n - 1 - i]);
        assert!((wa.speed_lo + wb.speed_hi).abs() <= 1e-9 * wa.speed_lo.abs());
    }
}

fn state_strategy() -> impl Strategy<Value = GasState> {
    (-1.0..1.5f64, -3.0..3.0f64, -5.0..5.0f64, -1.0..2.0f64).prop_map(|(lr, v1, v2, lp)| GasState {
        rho: 10f64.powf(lr),
        v1,
        v2,
        p: 10f64.powf(lp),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn solution_is_self_similar(l in state_strategy(), r in state_strategy(), x in -20.0..20.0f64,
                                t in 0.01..5.0f64, lambda in 0.01..100.0f64) {
        let g = GasConstants::default();
        let data = RiemannData::new(l, r).unwrap();
        if let Ok(sol) = solve_riemann(&data, g) {
            // x/t and (λx)/(λt) differ by rounding; stay clear of the fronts
            let xi = x / t;
            if sol.waves.iter().any(|w| (w.speed_lo - xi).abs() < 1e-9 || (w.speed_hi - xi).abs() < 1e-9) {
                return Ok(());
            }
            let (a, b) = (sol.state_at(t, x), sol.state_at(lambda * t, lambda * x));
            prop_assert!((a.rho - b.rho).abs() <= 1e-12 * a.rho);
            prop_assert!((a.p - b.p).abs() <= 1e-12 * a.p);
            prop_assert!((a.v2 - b.v2).abs() <= 1e-12 * a.v2.abs().max(1.0));
            prop_assert_eq!(a.v1, b.v1);
        }
    }

    #[test]
    fn mirror_symmetry(l in state_strategy(), r in state_strategy(), cv in 0.5..3.0f64, xi in -20.0..20.0f64) {
        let g = GasConstants::new(cv).unwrap();
        let data = RiemannData::new(l, r).unwrap();
        let (Ok(a), Ok(b)) = (solve_riemann(&data, g), solve_riemann(&data.mirrored(), g)) else {
            return Ok(());
        };
        prop_assert_eq!(a.waves.len(), b.waves.len());
        prop_assert!((a.p_m - b.p_m).abs() <= 1e-9 * a.p_m);
        prop_assert!((a.v_m2 + b.v_m2).abs() <= 1e-9 * a.v_m2.abs().max(1.0));
        let n = a.waves.len();
        for i in 0..n {
            let (wa, wb) = (&a.waves[i], &b.waves[n - 1 - i]);
            prop_assert_eq!(wa.kind, wb.kind);
            prop_assert!((wa.speed_lo + wb.speed_hi).abs() <= 1e-9 * wa.speed_lo.abs().max(1.0));
        }
        // sampled states reflect, away from fronts
        let near_front = a.waves.iter().any(|w| (w.speed_lo - xi).abs() < 1e-6 || (w.speed_hi - xi).abs() < 1e-6);
        if !near_front {
            let (sa, sb) = (a.sample(xi), b.sample(-xi));
            prop_assert!((sa.rho - sb.rho).abs() <= 1e-8 * sa.rho);
            prop_assert!((sa.p - sb.p).abs() <= 1e-8 * sa.p);
            prop_assert!((sa.v2 + sb.v2).abs() <= 1e-8 * sa.v2.abs().max(1.0));
        }
    }
}

//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the solver paths it is used to check.

#![allow(dead_code)]

use euler_entropy::{GasConstants, GasState, RiemannData};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn st(rho: f64, v2: f64, p: f64) -> GasState {
    GasState {
        rho,
        v1: 0.0,
        v2,
        p,
    }
}

/// Plain bisection for a function with `f(lo) · f(hi) < 0`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, rtol: f64) -> f64 {
    let f_lo = f(lo);
    assert!(f_lo * f(hi) < 0.0, "no sign change on [{lo}, {hi}]");
    let lo_positive = f_lo > 0.0;
    while hi - lo > rtol * hi.abs().max(lo.abs()) {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Two-shock pressure equation, written out again from scratch.
pub fn two_shock_equation(d: &RiemannData, c_v: f64, p: f64) -> f64 {
    let k = 2.0 * c_v + 1.0;
    let left = (p - d.left.p) / (d.left.rho * (d.left.p + k * p)).sqrt();
    let right = (p - d.right.p) / (d.right.rho * (d.right.p + k * p)).sqrt();
    -(2.0 * c_v).sqrt() * (left + right) - (d.right.v2 - d.left.v2)
}

pub fn two_shock_pressure_oracle(d: &RiemannData, c_v: f64) -> f64 {
    bisect(
        |p| two_shock_equation(d, c_v, p),
        d.left.p.max(d.right.p),
        1e6,
        1e-14,
    )
}

/// `∫_{p}^{p_side} dp' / (ρ a)` along the isentrope through `side`, by
/// composite Gauss–Legendre quadrature in `log p'`.
pub fn isentropic_velocity_change(side: &GasState, p: f64, gamma: f64) -> f64 {
    let nodes = [
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (-0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (0.0, 0.568_888_888_888_888_9),
        (0.538_469_310_105_683, 0.478_628_670_499_366_5),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let (a, b) = (p.ln(), side.p.ln());
    let panels = 400;
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for i in 0..panels {
        let mid = a + (i as f64 + 0.5) * h;
        for (x, w) in nodes {
            let q = (mid + 0.5 * h * x).exp();
            let rho = side.rho * (q / side.p).powf(1.0 / gamma);
            let c = (gamma * q / rho).sqrt();
            // dp = q d(log q)
            sum += 0.5 * h * w * q / (rho * c);
        }
    }
    sum
}

/// Intermediate pressure and velocity of a double-rarefaction solution from
/// the numerically integrated isentropic relations.
pub fn double_rarefaction_oracle(d: &RiemannData, gamma: f64) -> (f64, f64) {
    let upper = d.left.p.min(d.right.p);
    let f = |p: f64| {
        isentropic_velocity_change(&d.left, p, gamma)
            + isentropic_velocity_change(&d.right, p, gamma)
            - (d.right.v2 - d.left.v2)
    };
    let p = bisect(f, upper * 1e-6, upper * (1.0 - 1e-12), 1e-13);
    (p, d.left.v2 + isentropic_velocity_change(&d.left, p, gamma))
}

/// State inside the left rarefaction fan at `ξ`, found by solving
/// `v(p) − c(p) = ξ` along the left isentrope.
pub fn left_fan_state_oracle(left: &GasState, xi: f64, p_star: f64, gamma: f64) -> GasState {
    let state_at = |p: f64| {
        let rho = left.rho * (p / left.p).powf(1.0 / gamma);
        let v = left.v2 + isentropic_velocity_change(left, p, gamma);
        (rho, v, (gamma * p / rho).sqrt())
    };
    let p = bisect(
        |p| {
            let (_, v, c) = state_at(p);
            v - c - xi
        },
        p_star,
        left.p,
        1e-13,
    );
    let (rho, v, _) = state_at(p);
    GasState {
        rho,
        v1: left.v1,
        v2: v,
        p,
    }
}

/// Fan subsolution by elimination: the mass and momentum conditions reduce
/// to a quadratic in β; the energy conditions are then linear in `(E₁, p₁)`.
/// Returns the root with `μ₋ < μ₊` as `(μ₋, μ₊, β, p₁, C₁, γ)`.
pub fn subsolution_by_elimination(d: &RiemannData, rho1: f64, c_v: f64) -> [f64; 6] {
    let (l, r) = (&d.left, &d.right);
    let (ml, mr) = (l.rho * l.v2, r.rho * r.v2);
    let (k1, k2) = (1.0 / (l.rho - rho1), 1.0 / (rho1 - r.rho));
    // ρ₋v₋² + p₋ − k1 (ml − ρ₁β)² − k2 (ρ₁β − mr)² − ρ₊v₊² − p₊ = 0
    let qa = -(k1 + k2) * rho1 * rho1;
    let qb = 2.0 * rho1 * (k1 * ml + k2 * mr);
    let qc = l.rho * l.v2 * l.v2 + l.p - r.rho * r.v2 * r.v2 - r.p - k1 * ml * ml - k2 * mr * mr;
    let disc = (qb * qb - 4.0 * qa * qc).sqrt();
    let roots = [(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)];
    let e_l = 0.5 * l.rho * l.v2 * l.v2 + c_v * l.p;
    let e_r = 0.5 * r.rho * r.v2 * r.v2 + c_v * r.p;
    for beta in roots {
        let mu_m = (ml - rho1 * beta) * k1;
        let mu_p = (rho1 * beta - mr) * k2;
        if mu_m >= mu_p {
            continue;
        }
        let e_1 =
            ((e_l + l.p) * l.v2 - mu_m * e_l + mu_p * e_r - (e_r + r.p) * r.v2) / (mu_p - mu_m);
        let p1 = ((e_l + l.p) * l.v2 - mu_m * e_l - (beta - mu_m) * e_1) / beta;
        let flux = l.rho * l.v2 * l.v2 + l.p - mu_m * (ml - rho1 * beta);
        let c1 = 2.0 * (e_1 - c_v * p1) / rho1;
        let gamma = 0.5 * c1 - (flux - p1) / rho1;
        return [mu_m, mu_p, beta, p1, c1, gamma];
    }
    panic!("no root with ordered fronts");
}

/// Random valid state.
pub fn random_state(rng: &mut ChaCha8Rng) -> GasState {
    GasState {
        rho: 10f64.powf(rng.gen_range(-1.0..1.5)),
        v1: rng.gen_range(-3.0..3.0),
        v2: rng.gen_range(-5.0..5.0),
        p: 10f64.powf(rng.gen_range(-1.0..2.0)),
    }
}

/// Random data compressed hard enough that both outer waves are shocks.
pub fn random_two_shock_data(rng: &mut ChaCha8Rng) -> RiemannData {
    let mut left = random_state(rng);
    let mut right = random_state(rng);
    let c = (5.0 / 3.0 * left.p / left.rho).sqrt() + (5.0 / 3.0 * right.p / right.rho).sqrt();
    left.v2 = rng.gen_range(0.0..10.0);
    right.v2 = left.v2 - c * rng.gen_range(2.0..20.0);
    RiemannData { left, right }
}

pub fn random_gas(rng: &mut ChaCha8Rng) -> GasConstants {
    GasConstants::new(rng.gen_range(0.5..3.0)).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

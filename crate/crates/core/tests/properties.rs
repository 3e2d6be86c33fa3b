//! Randomized invariants: transform identities, structural spline
//! properties on arbitrary data, serialization fidelity, and the
//! optimality of both boundary estimators.

use proptest::collection::vec as pvec;
use proptest::prelude::*;

use splinedft::boundary::{
    exact_boundary, method1_boundary, method2_boundary, objective_consecutive,
    objective_theta_energy, zero_boundary, BoundaryVector,
};
use splinedft::numerics::{dft, idft, Complex, PrecisionContext, Real};
use splinedft::spline::{build_spline, SampleGrid, SplineFunction};

fn ctx() -> PrecisionContext {
    PrecisionContext::binary64()
}

fn to_complex(values: &[f64], c: &PrecisionContext) -> Vec<Complex<f64>> {
    values.iter().map(|&v| Complex::from_re(v, c)).collect()
}

/// Random samples wrapped in a grid on [0, 2]. The values land in
/// [-100, 100] so every tolerance below can be scale-relative with a
/// fixed floor.
fn grid(values: Vec<f64>, c: &PrecisionContext) -> SampleGrid<f64> {
    SampleGrid::new(0.0, 2.0, values, c).expect("valid grid")
}

fn sample_values() -> impl Strategy<Value = Vec<f64>> {
    pvec(-100.0..100.0f64, 5..=13)
}

proptest! {
    #[test]
    fn dft_then_idft_returns_the_input(values in pvec(-100.0..100.0f64, 1..48)) {
        let c = ctx();
        let x = to_complex(&values, &c);
        let back = idft(&dft(&x, &c).unwrap(), &c).unwrap();
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in x.iter().zip(&back) {
            prop_assert!(a.sub_ref(b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn dft_preserves_energy(values in pvec(-100.0..100.0f64, 1..48)) {
        let c = ctx();
        let x = to_complex(&values, &c);
        let spec = dft(&x, &c).unwrap();
        let time_energy: f64 = values.iter().map(|v| v * v).sum();
        let freq_energy: f64 =
            spec.iter().map(|z| z.abs() * z.abs()).sum::<f64>() / values.len() as f64;
        prop_assert!((time_energy - freq_energy).abs() <= 1e-10 * time_energy.max(1.0));
    }

    #[test]
    fn dft_of_real_input_is_conjugate_symmetric(values in pvec(-100.0..100.0f64, 2..48)) {
        let c = ctx();
        let spec = dft(&to_complex(&values, &c), &c).unwrap();
        let n = values.len();
        let scale = spec.iter().fold(1.0f64, |m, z| m.max(z.abs()));
        for k in 1..n {
            let a = &spec[k];
            let b = &spec[n - k];
            prop_assert!((a.re.clone() - b.re.clone()).abs() <= 1e-12 * scale);
            prop_assert!((a.im.clone() + b.im.clone()).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn dft_is_linear(
        xs in pvec(-10.0..10.0f64, 3..24),
        seed in -4.0..4.0f64,
        alpha in -3.0..3.0f64,
    ) {
        let c = ctx();
        let n = xs.len();
        // A second vector derived deterministically so both share a length.
        let ys: Vec<f64> = (0..n).map(|j| (seed * (j as f64 + 1.0)).sin() * 5.0).collect();
        let combined: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| alpha * x + y).collect();

        let fx = dft(&to_complex(&xs, &c), &c).unwrap();
        let fy = dft(&to_complex(&ys, &c), &c).unwrap();
        let fc = dft(&to_complex(&combined, &c), &c).unwrap();
        let scale = fc.iter().fold(1.0f64, |m, z| m.max(z.abs()));
        for k in 0..n {
            let lhs = fx[k].scale(&alpha).add_ref(&fy[k]);
            prop_assert!(lhs.sub_ref(&fc[k]).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn spline_interpolates_every_node(
        values in sample_values(),
        theta in 1usize..=5,
    ) {
        let c = ctx();
        let n = values.len() - 1;
        prop_assume!(!(theta % 2 == 0 && n % 2 == 0));
        let samples = grid(values.clone(), &c);
        let b = zero_boundary(&samples, theta, &c);
        let s = build_spline(&samples, theta, b.values(), &c).unwrap();
        for (j, v) in values[..n].iter().enumerate() {
            let got = s.eval_offset(j, &0.0, 0).unwrap();
            prop_assert_eq!(got.to_bits(), v.to_bits(), "node {}", j);
        }
    }

    #[test]
    fn spline_joins_are_smooth_to_order_theta_minus_one(
        values in sample_values(),
        theta in 2usize..=5,
    ) {
        let c = ctx();
        let n = values.len() - 1;
        prop_assume!(!(theta % 2 == 0 && n % 2 == 0));
        let samples = grid(values, &c);
        let b = zero_boundary(&samples, theta, &c);
        let s = build_spline(&samples, theta, b.values(), &c).unwrap();
        let dt = s.delta_t();
        for j in 1..n {
            for beta in 0..theta {
                let left = s.eval_offset(j - 1, &dt, beta).unwrap();
                let right = s.eval_offset(j, &0.0, beta).unwrap();
                let scale = left.abs().max(right.abs()).max(1.0);
                prop_assert!(
                    (left - right).abs() <= 1e-7 * scale,
                    "join {} order {}: {} vs {}", j, beta, left, right
                );
            }
        }
    }

    #[test]
    fn degree_one_spline_is_forward_differences(values in sample_values()) {
        let c = ctx();
        let n = values.len() - 1;
        let samples = grid(values.clone(), &c);
        let b = zero_boundary(&samples, 1, &c);
        let s = build_spline(&samples, 1, b.values(), &c).unwrap();
        let dt = 2.0 / n as f64;
        let row = s.deriv_row(1).unwrap();
        for j in 0..n {
            let fd = (values[j + 1] - values[j]) / dt;
            let scale = fd.abs().max(1.0);
            prop_assert!((row[j] - fd).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn cubic_spline_reproduces_cubics_exactly(
        a in -2.0..2.0f64,
        b2 in -2.0..2.0f64,
        cc in -2.0..2.0f64,
        d in -2.0..2.0f64,
        n in 5usize..=11,
        at in 0.05..1.95f64,
    ) {
        let c = ctx();
        let p = |t: f64| a * t * t * t + b2 * t * t + cc * t + d;
        let samples = SampleGrid::from_fn(0.0, 2.0, n, &c, p).unwrap();
        // b_mu = p^(mu)(2) - p^(mu)(0) for mu = 1, 2.
        let diffs = vec![3.0 * a * 4.0 + 2.0 * b2 * 2.0, 6.0 * a * 2.0];
        let bv = exact_boundary(&samples, 3, &diffs).unwrap();
        let s = build_spline(&samples, 3, bv.values(), &c).unwrap();

        let got = s.eval(&at, 0).unwrap();
        let want = p(at);
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0));

        let integral = s.integrate(&0.0, &2.0).unwrap();
        let anti = |t: f64| a * t.powi(4) / 4.0 + b2 * t.powi(3) / 3.0 + cc * t * t / 2.0 + d * t;
        let exact = anti(2.0) - anti(0.0);
        prop_assert!((integral - exact).abs() <= 1e-9 * exact.abs().max(1.0));
    }

    #[test]
    fn serialized_spline_restores_bit_for_bit(
        values in sample_values(),
        theta in 1usize..=4,
    ) {
        let c = ctx();
        let n = values.len() - 1;
        prop_assume!(!(theta % 2 == 0 && n % 2 == 0));
        let samples = grid(values, &c);
        let b = zero_boundary(&samples, theta, &c);
        let s = build_spline(&samples, theta, b.values(), &c).unwrap();
        let restored = SplineFunction::<f64>::from_json(&s.to_json(), &c).unwrap();
        prop_assert_eq!(restored.theta(), s.theta());
        prop_assert_eq!(restored.n(), s.n());
        for mu in 0..=theta {
            let orig = s.deriv_row(mu).unwrap();
            let back = restored.deriv_row(mu).unwrap();
            for (x, y) in orig.iter().zip(back) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn method1_lands_below_random_boundary_guesses(
        values in pvec(-10.0..10.0f64, 8..=10),
        delta in pvec(-0.5..0.5f64, 4),
    ) {
        let c = ctx();
        let theta = 3usize;
        let values = values[..8].to_vec(); // N = 7 intervals, odd
        let samples = grid(values, &c);
        let best = method1_boundary(&samples, theta, &c).unwrap();
        let at_best = objective_theta_energy(&samples, theta, &best, &c).unwrap();

        let mut nudged = best.values().to_vec();
        for (i, d) in delta.iter().take(theta - 1).enumerate() {
            nudged[i + 1] += d;
        }
        let at_nudged =
            objective_theta_energy(&samples, theta, &BoundaryVector::from_values(nudged), &c)
                .unwrap();
        prop_assert!(at_best <= at_nudged * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn method2_lands_below_random_boundary_guesses(
        values in pvec(-10.0..10.0f64, 8..=10),
        delta in pvec(-0.5..0.5f64, 4),
    ) {
        let c = ctx();
        let theta = 3usize;
        let values = values[..8].to_vec(); // N = 7 intervals, odd
        let samples = grid(values, &c);
        let best = method2_boundary(&samples, theta, &c).unwrap();
        let at_best = objective_consecutive(&samples, theta, &best, &c).unwrap();

        let mut nudged = best.values().to_vec();
        for (i, d) in delta.iter().take(theta - 1).enumerate() {
            nudged[i + 1] += d;
        }
        let at_nudged =
            objective_consecutive(&samples, theta, &BoundaryVector::from_values(nudged), &c)
                .unwrap();
        prop_assert!(at_best <= at_nudged * (1.0 + 1e-9) + 1e-12);
    }
}

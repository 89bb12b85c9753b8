use icav::{AtomCavityParams, DetuningGrid};
use icav::quantum::{dark_transmission, full_response, sweep, Model};
use icav::{analytic_linewidth, coupling_regime, make_basis};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = AtomCavityParams> {
    (0u64..3000, 0.0..3.0f64, 0.01..20.0f64, 0.05..10.0f64, 0.0..10.0f64, 0.0..2.0f64)
        .prop_map(|(n, g, o, k, ge, gs)| AtomCavityParams::new(n, g, o, k, ge).with_gamma_s(gs))
}

proptest! {
    #[test]
    fn transmission_symmetric_and_bounded(p in params(), delta in -50.0..50.0f64) {
        let kd = make_basis(&p).unwrap().kappa_d;
        let plus = full_response(delta, &p).unwrap().transmission();
        let minus = full_response(-delta, &p).unwrap().transmission();
        prop_assert!((plus - minus).abs() <= 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&plus));
        let dark = dark_transmission(delta, kd).unwrap();
        prop_assert!((dark - dark_transmission(-delta, kd).unwrap()).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&dark));
    }

    #[test]
    fn dimensionless_outputs_are_unit_free(p in params(), delta in -20.0..20.0f64, scale in 1e-3..1e3f64) {
        let q = p.scaled(scale);
        let t = full_response(delta, &p).unwrap().transmission();
        let tq = full_response(delta * scale, &q).unwrap().transmission();
        prop_assert!((t - tq).abs() <= 1e-9);
        let b = make_basis(&p).unwrap();
        let bq = make_basis(&q).unwrap();
        prop_assert!((b.cos2_theta() - bq.cos2_theta()).abs() <= 1e-12);
        let ratio = analytic_linewidth(&p).unwrap() / p.empty_cavity_linewidth();
        let ratio_q = analytic_linewidth(&q).unwrap() / q.empty_cavity_linewidth();
        prop_assert!((ratio - ratio_q).abs() <= 1e-12 * ratio);
    }

    #[test]
    fn resonant_transmission(p in params()) {
        let lossless = p.with_gamma_s(0.0);
        prop_assert!((full_response(0.0, &lossless).unwrap().transmission() - 1.0).abs() <= 1e-12);
        if p.gamma_s > 1e-6 && p.n_atoms > 0 && p.g > 1e-3 {
            prop_assert!(full_response(0.0, &p).unwrap().transmission() < 1.0);
        }
    }

    #[test]
    fn narrowing_scaling_law(n in 100u64..100_000, g in 0.1..3.0f64, frac in 1e-4..0.1f64) {
        // Ng² ≥ 100·Ω²
        let ng2 = n as f64 * g * g;
        let omega = frac * ng2.sqrt();
        let p = AtomCavityParams::new(n, g, omega, 1.0, 1.0);
        let v = analytic_linewidth(&p).unwrap();
        let law = v * ng2 / (p.empty_cavity_linewidth() * omega * omega);
        prop_assert!((0.99..=1.0).contains(&law), "{law}");
    }
}

#[test]
fn sweep_partition_independent() {
    let p = AtomCavityParams::new(400, 1.0, 5.0, 1.0, 1.0);
    let whole = sweep(&p, &DetuningGrid::new(-2.0, 2.0, 401).unwrap(), Model::FullLinear).unwrap();
    let left = sweep(&p, &DetuningGrid::new(-2.0, 0.0, 201).unwrap(), Model::FullLinear).unwrap();
    let right = sweep(&p, &DetuningGrid::new(0.0, 2.0, 201).unwrap(), Model::FullLinear).unwrap();
    let mut joined = left.transmission.clone();
    joined.extend_from_slice(&right.transmission[1..]);
    assert_eq!(joined.len(), whole.len());
    for (a, b) in joined.iter().zip(&whole.transmission) {
        assert!((a - b).abs() < 1e-12);
    }
    let again = sweep(&p, &DetuningGrid::new(-2.0, 2.0, 401).unwrap(), Model::FullLinear).unwrap();
    assert_eq!(again, whole);
}

/// κ_B ≪ bright-polariton splitting is not enough on its own: with a large
/// bare κ and Ω ≳ √N·g the bright polariton sits inside ±3κ_D.
#[test]
fn margin_alone_does_not_guarantee_oracle_agreement() {
    let p = AtomCavityParams::new(297, 0.40749424463934414, 19.38571565425893, 7.797717127343058, 0.3304970133057285);
    let regime = coupling_regime(&p).unwrap();
    assert!(regime.margin >= 20.0);
    let kd = make_basis(&p).unwrap().kappa_d;
    let grid = DetuningGrid::symmetric(3.0 * kd, 601).unwrap();
    let worst = grid
        .values()
        .into_iter()
        .map(|d| (full_response(d, &p).unwrap().transmission() - dark_transmission(d, kd).unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(worst > 0.1, "{worst}");
}

use super::*;
use crate::dynamics::{hermitian_eig, Propagator};
use crate::hamiltonian::SystemParams;
use crate::hilbert::Ket;
use crate::C64;
use alloc::vec::Vec;
use core::f64::consts::PI;

fn engine_amplitudes(block: &BlockSolution, initial: usize, times: &[f64]) -> Vec<Vec<C64>> {
    let prop = Propagator::new(&block.matrix).unwrap();
    let psi = Ket::basis_index(block.matrix.space(), initial).unwrap();
    times.iter().map(|&t| prop.evolve(&psi, t).unwrap().into_amplitudes()).collect()
}

fn grid(period: f64) -> Vec<f64> {
    (0..100).map(|k| period * k as f64 / 99.0).collect()
}

fn max_dev(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn unit_norm(v: &[C64]) -> bool {
    (v.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12
}

#[test]
fn double_block_spectrum_is_offset_by_the_diagonal() {
    let l = -0.3;
    let block = vac_double_block(0.0, l);
    let eig = hermitian_eig(&block.matrix).unwrap();
    let expected = [4.0 * l, 2.0 * l, 2.0 * l, 0.0];
    for (x, y) in eig.values.iter().zip(expected) {
        assert!((x - y).abs() < 1e-14, "{x} vs {y}");
    }
    assert!(block.reconstruction_residual() < 1e-14);
}

#[test]
fn double_block_closed_form() {
    let (w, l) = (1.7, -0.25);
    let block = vac_double_block(w, l);
    assert_eq!(block.amplitudes(0.0), [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);

    let t_swap = PI / (2.0 * l.abs());
    let a = vac_double_from_ee1(w, l, t_swap);
    assert!((a[3].norm() - 1.0).abs() < 1e-14);

    let times = grid(PI / l.abs());
    let engine = engine_amplitudes(&block, 0, &times);
    for (t, num) in times.iter().zip(&engine) {
        let closed = vac_double_from_ee1(w, l, *t);
        assert!(unit_norm(&closed));
        assert!(max_dev(&closed, num) <= 1e-9);
        assert!(max_dev(&block.amplitudes(*t), num) <= 1e-9);
    }
}

#[test]
fn double_block_from_gg4_is_the_mirror_image() {
    let (w, l) = (0.0, 0.4);
    let block = vac_double_block(w, l);
    for t in grid(PI / l) {
        let from_ee1 = vac_double_from_ee1(w, l, t);
        let from_gg4 = block.amplitudes_from(3, t);
        let mirrored: Vec<C64> = from_ee1.iter().rev().copied().collect();
        assert!(max_dev(&from_gg4, &mirrored) < 1e-14);
    }
}

#[test]
fn single_blocks() {
    let l: f64 = -0.5;
    let t = PI / (2.0 * l.abs());
    let vac = vac_single_from_eg1(0.0, l, PhotonSector::Vacuum, t);
    let ph = vac_single_from_eg1(0.0, l, PhotonSector::SinglePhoton, t);
    assert!((vac[1] - C64::new(-1.0, 0.0)).norm() < 1e-15);
    assert!((ph[1] - C64::new(1.0, 0.0)).norm() < 1e-15);

    for sector in [PhotonSector::Vacuum, PhotonSector::SinglePhoton] {
        let w = 2.3;
        let block = vac_single_block(w, l, sector);
        assert_eq!(vac_single_from_eg1(w, l, sector, 0.0), [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        assert!(block.reconstruction_residual() < 1e-14);
        let times = grid(PI / l.abs());
        for (t, num) in times.iter().zip(engine_amplitudes(&block, 0, &times)) {
            let closed = vac_single_from_eg1(w, l, sector, *t);
            assert!(unit_norm(&closed));
            assert!(max_dev(&closed, &num) <= 1e-9);
        }
    }
}

#[test]
fn mismatch_block_reduces_to_resonant_block() {
    let (w, lp) = (3.0, 0.2);
    let mis = mismatch_block(0.0, lp, w, w);
    assert_eq!(mis.matrix, vac_double_block(w, -lp).matrix);
}

#[test]
fn mismatch_block_eigensystem() {
    for (delta, lp) in [(0.3, 0.15), (0.3, 0.4), (0.5, 0.1), (0.0, 0.3), (-0.2, 0.3), (0.2, 0.0)] {
        let (wa, wb) = (1.0 - delta / 2.0, 1.0 + delta / 2.0);
        let mis = mismatch_block(delta, lp, wa, wb);
        assert!(mis.reconstruction_residual() <= 1e-10, "δ={delta}, λ'={lp}");
        let gram = &mis.eigenvectors.dagger() * &mis.eigenvectors;
        assert!((&gram - &crate::hilbert::Operator::identity(gram.space())).max_abs() < 1e-14);

        let s = core::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(mis.eigenvectors.get(0, 1).re, s);
        assert_eq!(mis.eigenvectors.get(3, 1).re, -s);

        let omega = (delta * delta + 4.0 * lp * lp).sqrt();
        let values = hermitian_eig(&mis.matrix).unwrap().values;
        assert!((values[3] - values[0] - 2.0 * omega).abs() < 1e-12);

        let period = if omega > 0.0 { 2.0 * PI / omega } else { 1.0 };
        let times = grid(period);
        for initial in [0, 3] {
            for (t, num) in times.iter().zip(engine_amplitudes(&mis, initial, &times)) {
                let closed = mis.amplitudes_from(initial, *t);
                assert!(unit_norm(&closed));
                assert!(max_dev(&closed, &num) <= 1e-9);
            }
        }
    }
}

#[test]
fn ames_timing() {
    let lp = 0.7;
    let resonant = ames_time_and_condition(0.0, lp).unwrap();
    assert!((resonant.time.unwrap() - PI / (4.0 * lp)).abs() < 1e-15);

    let equal = ames_time_and_condition(2.0 * lp, lp).unwrap();
    assert_eq!(equal.margin, 0.0);
    let omega = (8.0f64).sqrt() * lp;
    assert!((equal.time.unwrap() - PI / omega).abs() < 1e-15);

    let physical = ames_time_and_condition(2.0 * PI * 304e6, 2.0 * PI * 152e6).unwrap();
    let t = physical.time.unwrap();
    assert!((t - PI / (2.0 * PI * 304e6 * 2f64.sqrt())).abs() < 1e-22);

    let blocked = ames_time_and_condition(3.0 * lp, lp).unwrap();
    assert!(!blocked.achievable());
    assert!((blocked.margin - (4.0 - 9.0) * lp * lp).abs() < 1e-12);
    assert!(!ames_time_and_condition(0.1, 0.0).unwrap().achievable());
}

#[test]
fn ames_condition_zeroes_the_outer_overlap() {
    for (delta, lp) in [(0.4, 0.2), (0.4, 0.5), (0.0, 0.3)] {
        let t = ames_time_and_condition(delta, lp).unwrap().time.unwrap();
        let mis = mismatch_block(delta, lp, 1.0, 1.0 + delta);
        let amps = mis.amplitudes_from(3, t);
        assert!((amps[0] + amps[3]).norm() < 1e-12);
        assert!(ames_overlap(delta, lp, t).abs() < 1e-12);
        assert!((ames_best_phase_fidelity(delta, lp, t) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn best_phase_fidelity_matches_block_amplitudes() {
    for (delta, lp) in [(1.0, 0.3), (1.0, 0.5), (0.5, 0.8), (0.0, 0.4)] {
        let mis = mismatch_block(delta, lp, 2.0, 2.0 + delta);
        for t in grid(10.0) {
            let amps = mis.amplitudes_from(3, t);
            let sum: f64 = amps.iter().map(|a| a.norm()).sum();
            // local qubit phases can align all four amplitudes
            let mismatch = amps[0].arg() + amps[3].arg() - amps[1].arg() - amps[2].arg();
            assert!(crate::math::wrap_phase(mismatch).abs() < 1e-9 || amps.iter().any(|a| a.norm() < 1e-9));
            assert!((0.25 * sum * sum - ames_best_phase_fidelity(delta, lp, t)).abs() < 1e-12);
        }
    }
}

#[test]
fn max_fidelity_is_monotone_below_the_condition() {
    let delta = 1.0;
    let mut last = 0.0;
    for k in 0..=50 {
        let lp = 0.5 * k as f64 / 50.0;
        let f = ames_max_fidelity(delta, lp);
        assert!(f >= last - 1e-15);
        last = f;
        if lp > 0.0 {
            let omega = (delta * delta + 4.0 * lp * lp).sqrt();
            let sampled = (0..2000)
                .map(|s| ames_best_phase_fidelity(delta, lp, 2.0 * PI / omega * s as f64 / 1999.0))
                .fold(0.0, f64::max);
            assert!(sampled <= f + 1e-12);
            assert!(f - sampled < 1e-5);
        }
    }
    assert!((last - 1.0).abs() < 1e-6);
    assert!(ames_max_fidelity(delta, 0.3) < 1.0);
}

#[test]
fn ledger_records_both_appendices() {
    let resonant =
        SystemParams::new(2.0 * PI * 192e12, 2.0 * PI * 192e12 - 2.0 * PI * 1.52e12, 2.0 * PI * 15.2e9, 0.0, 2)
            .unwrap();
    let mismatch = SystemParams::from_lambda_prime(
        resonant.omega_op(),
        resonant.omega_at(),
        2.0 * PI * 152e6,
        2.0 * PI * 304e6,
        2,
    )
    .unwrap();
    let ledger = typo_ledger(&resonant, &mismatch).unwrap();
    let find = |loc: &str| ledger.iter().find(|e| e.location == loc).unwrap();

    let spectrum = find("appendix A: double-excitation eigenvalues");
    assert!((spectrum.max_deviation - resonant.omega_at()).abs() <= 1e-6 * resonant.omega_at());

    let coeffs = find("appendix B: expansion coefficients of the initial state");
    assert!(coeffs.max_deviation > 1.0);
    assert!(coeffs.recomputed.contains("e"));

    let expansion = find("appendix A: expansion of the initial state");
    assert_eq!(expansion.max_deviation, 1.0);

    let evolved = find("appendix A: evolved double-excitation vector");
    assert!(evolved.max_deviation > 1.0);

    let matrix = find("appendix B: mismatched double-excitation matrix");
    assert!(
        (matrix.max_deviation - 4.0 * mismatch.lambda_prime()).abs()
            < 1e-6 * mismatch.lambda_prime() + 1e-3 * matrix.max_deviation
    );
}

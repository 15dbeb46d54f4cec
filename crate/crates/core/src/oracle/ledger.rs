//! Machine-readable record of printed closed forms that disagree with the
//! matrices they are derived from.
//!
//! Each entry quotes the printed claim, evaluates the recomputed value at the
//! supplied parameters, and reports the largest absolute deviation between
//! the two (in the units of the quantity; 0 for pure labelling issues).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::block::{mismatch_block, vac_double_block, vac_double_from_ee1};
use crate::dynamics::hermitian_eig;
use crate::error::Result;
use crate::hamiltonian::SystemParams;
use crate::math::{abs, cis, sqrt};
use crate::C64;

/// Off-diagonal structure shared by every double-excitation block.
const COUPLING_PATTERN: [[f64; 4]; 4] = [[0., 1., 1., 0.], [1., 0., 0., 1.], [1., 0., 0., 1.], [0., 1., 1., 0.]];

#[derive(Debug, Clone, PartialEq)]
pub struct TypoEntry {
    pub location: String,
    pub printed: String,
    pub recomputed: String,
    pub max_deviation: f64,
}

fn entry(location: &str, printed: String, recomputed: String, max_deviation: f64) -> TypoEntry {
    TypoEntry { location: location.into(), printed, recomputed, max_deviation }
}

fn list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|v| format!("{v:e}")).collect();
    format!("[{}]", items.join(", "))
}

fn max_pairwise(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| abs(x - y)).fold(0.0, f64::max)
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    v
}

/// Builds the ledger. `resonant` fixes `ω_at` and `λ`; `mismatch` fixes
/// `ω_A`, `ω_B`, `δ`, `g_A` and `λ'`.
pub fn typo_ledger(resonant: &SystemParams, mismatch: &SystemParams) -> Result<Vec<TypoEntry>> {
    let mut out = Vec::new();
    let (w, l) = (resonant.omega_at(), resonant.lambda());

    // resonant double-excitation spectrum
    let block = vac_double_block(w, l);
    let numeric = hermitian_eig(&block.matrix)?.values;
    let printed = sorted(vec![2.0 * w, w + 2.0 * l, w + 2.0 * l, w + 4.0 * l]);
    out.push(entry(
        "appendix A: double-excitation eigenvalues",
        format!("{{2ω_at, ω_at+2λ, ω_at+2λ, ω_at+4λ}} = {}", list(&printed)),
        format!("{{2ω_at, 2ω_at+2λ, 2ω_at+2λ, 2ω_at+4λ}} = {}", list(&numeric)),
        max_pairwise(&printed, &numeric),
    ));

    out.push(entry(
        "appendix A: double-excitation eigenvector labels",
        "sign patterns over |ee1⟩, |eg2⟩, |ge3⟩, |gg4⟩".into(),
        "the coupled states are |ge2⟩ and |eg3⟩ (D_A pairs qubit A with |1⟩↔|2⟩); coefficients agree positionally"
            .into(),
        0.0,
    ));

    // "|ee1⟩ = ½ΣE_k" with the printed sign patterns
    let half_sum: Vec<f64> =
        (0..4).map(|i| (0..4).map(|k| block.eigenvectors.get(i, k).re).sum::<f64>() / 2.0).collect();
    out.push(entry(
        "appendix A: expansion of the initial state",
        "|ee1⟩ = ½(|E_1⟩+|E_2⟩+|E_3⟩+|E_4⟩)".into(),
        format!("½ΣE_k = {half_sum:?} over (ee1, ge2, eg3, gg4), i.e. |gg4⟩"),
        max_pairwise(&half_sum, &[1.0, 0.0, 0.0, 0.0]),
    ));

    // evolved vector: printed form is unnormalized and follows |gg4⟩
    let lam_t = if l == 0.0 { 1.0 } else { 1.0 / abs(l) };
    let mut worst = 0.0f64;
    for s in 0..=100 {
        let t = lam_t * core::f64::consts::PI * s as f64 / 100.0;
        let e2 = cis(-2.0 * l * t);
        let e4 = cis(-4.0 * l * t);
        let one = C64::new(1.0, 0.0);
        let printed = [one - e2 * 2.0 + e4, e4 - one, e4 - one, one + e2 * 2.0 + e4];
        let exact = vac_double_from_ee1(0.0, l, t);
        for (p, e) in printed.iter().zip(exact.iter()) {
            worst = worst.max((p - e).norm());
        }
    }
    out.push(entry(
        "appendix A: evolved double-excitation vector",
        "(1−2e^{−i2λt}+e^{−i4λt}, −1+e^{−i4λt}, −1+e^{−i4λt}, 1+2e^{−i2λt}+e^{−i4λt}) for |ee1⟩".into(),
        "¼(1+2e^{−i2λt}+e^{−i4λt}, −1+e^{−i4λt}, −1+e^{−i4λt}, 1−2e^{−i2λt}+e^{−i4λt}); the printed ordering is the evolution of |gg4⟩ without the ¼".into(),
        worst,
    ));

    // mismatched model
    let (delta, lp) = (mismatch.delta(), mismatch.lambda_prime());
    let (wa, wb) = (mismatch.omega_a(), mismatch.omega_b());
    let d = mismatch.detuning();
    let g = mismatch.g_a();
    let printed_lp = if delta == 0.0 { f64::INFINITY } else { g * g / -delta };
    out.push(entry(
        "appendix B: definition of λ'",
        format!("λ' ≡ g_A²/(−δ) = {printed_lp:e}"),
        format!("λ' = g_A²/(Δ−δ/2) = g_B²/(Δ+δ/2) = {lp:e} (Δ = {d:e})"),
        abs(printed_lp - lp),
    ));

    let mis = mismatch_block(delta, lp, wa, wb);
    let printed_diag = [wa + wb + 2.0 * lp, 2.0 * wb + 2.0 * lp, 2.0 * wa + 2.0 * lp, wa + wb + 2.0 * lp];
    let mut matrix_dev = 0.0f64;
    for (i, pattern) in COUPLING_PATTERN.iter().enumerate() {
        for (j, c) in pattern.iter().enumerate() {
            let p = if i == j { printed_diag[i] } else { lp * c };
            matrix_dev = matrix_dev.max(abs(p - mis.matrix.get(i, j).re));
        }
    }
    out.push(entry(
        "appendix B: mismatched double-excitation matrix",
        "diagonal (ω_A+ω_B, 2ω_B, 2ω_A, ω_A+ω_B) + 2λ', couplings +λ'".into(),
        "H_0,mis − λ'(D_A†D_A + D_B†D_B) gives diagonal … − 2λ' and couplings −λ'".into(),
        matrix_dev,
    ));

    let omega = sqrt(delta * delta + 4.0 * lp * lp);
    let printed_e = sorted(vec![wa + wb + omega, wa + wb, wa + wb, wa + wb - omega]);
    // eigenvalues of the printed (+λ') matrix
    let shifted =
        sorted(vec![wa + wb + 2.0 * lp + omega, wa + wb + 2.0 * lp, wa + wb + 2.0 * lp, wa + wb + 2.0 * lp - omega]);
    out.push(entry(
        "appendix B: mismatched eigenvalues",
        format!("{{ω_A+ω_B ± Ω, ω_A+ω_B (×2)}} = {}", list(&printed_e)),
        format!("the printed matrix has {{ω_A+ω_B+2λ' ± Ω, ω_A+ω_B+2λ' (×2)}} = {}", list(&shifted)),
        max_pairwise(&printed_e, &shifted),
    ));

    // expansion coefficients of |ee1⟩ in the printed eigenbasis (+λ' matrix)
    let norm = sqrt(2.0 * omega * omega + 2.0 * delta * delta + 8.0 * lp * lp);
    let printed_coeffs = [
        lp * norm / (2.0 * omega * omega),
        -core::f64::consts::FRAC_1_SQRT_2,
        if lp == 0.0 { f64::INFINITY } else { delta * sqrt(8.0 * lp * lp + 2.0 * delta * delta) / (2.0 * lp * lp) },
        lp * norm / (2.0 * omega * omega),
    ];
    let exact_coeffs = [lp / omega, core::f64::consts::FRAC_1_SQRT_2, delta / (sqrt(2.0) * omega), lp / omega];
    out.push(entry(
        "appendix B: expansion coefficients of the initial state",
        format!("(a, b, c, d) = {}", list(&printed_coeffs)),
        format!(
            "(λ'/Ω, 1/√2, δ/(√2Ω), λ'/Ω) = {}; the printed b is the |gg4⟩ coefficient, c fails normalization",
            list(&exact_coeffs)
        ),
        max_pairwise(&printed_coeffs, &exact_coeffs),
    ));

    out.push(entry(
        "appendix B: AMES time condition",
        "cos Ωt_e = −δ²/4γ²".into(),
        "γ is undefined; reading γ = λ' reproduces T_e = π/Ω at 4λ'² = δ²".into(),
        0.0,
    ));

    out.push(entry(
        "section II: coefficient-to-level map of the target state",
        "C_ge → |2⟩, C_eg → |3⟩".into(),
        "the coupling graph (|eg1⟩ ↔ |gg2⟩ via mode a) transfers C_eg → |2⟩, C_ge → |3⟩".into(),
        1.0,
    ));

    Ok(out)
}

//! Model Hamiltonians, Schrieffer–Wolff generators and single-qubit gates.
//!
//! Two spaces are used: the atomic space (qubit A, qubit B, ququart; 16
//! levels) for the effective models, and the cavity space (atoms plus two
//! truncated modes) for the full models. Collective dipoles are
//!
//! * `D_A = σ_A + |1⟩⟨2| + |3⟩⟨4|`, coupled to mode a,
//! * `D_B = σ_B + |1⟩⟨3| + |2⟩⟨4|`, coupled to mode b,
//!
//! with `σ = |g⟩⟨e|`. All effective models drop constant photon energies.

mod params;

use alloc::vec::Vec;

pub use params::SystemParams;

use crate::error::{Error, Result};
use crate::hilbert::layout::{EXCITED, MODE_A, MODE_B, QUBIT_A, QUBIT_B, QUQUART};
use crate::hilbert::{annihilation, embed, Factor, HilbertSpace, Operator};
use crate::math::cis;
use crate::C64;

/// Exciton number of each ququart level `|1⟩..|4⟩`.
pub const QUQUART_WEIGHTS: [usize; 4] = [0, 1, 1, 2];

fn require_atoms(space: &HilbertSpace) -> Result<()> {
    if space.has_atoms() {
        Ok(())
    } else {
        Err(Error::Layout("factors 0..3 must be qubit, qubit, ququart"))
    }
}

fn require_modes(space: &HilbertSpace) -> Result<(usize, usize)> {
    match space.mode_truncations() {
        Some((na, nb)) if na >= 1 && nb >= 1 => Ok((na, nb)),
        Some(_) => Err(Error::InvalidTruncation),
        None => Err(Error::Layout("expected qubit, qubit, ququart, mode a, mode b")),
    }
}

fn is_atomic(space: &HilbertSpace) -> bool {
    space.has_atoms() && space.num_factors() == 3
}

/// Diagonal operator whose entries are computed from the factor levels.
fn diagonal_from(space: &HilbertSpace, f: impl Fn(&[usize]) -> f64) -> Operator {
    let diag: Vec<f64> = (0..space.total_dim()).map(|i| f(&space.levels_of(i))).collect();
    Operator::from_diagonal(space, &diag).expect("length matches by construction")
}

fn ququart_transitions(pairs: &[(usize, usize)]) -> Operator {
    let mut op = Operator::transition(4, pairs[0].0, pairs[0].1).expect("valid levels");
    for &(to, from) in &pairs[1..] {
        op = &op + &Operator::transition(4, to, from).expect("valid levels");
    }
    op
}

/// `|1⟩⟨2| + |3⟩⟨4|`, the ququart part of `D_A`.
fn ququart_a() -> Operator {
    ququart_transitions(&[(0, 1), (2, 3)])
}

/// `|1⟩⟨3| + |2⟩⟨4|`, the ququart part of `D_B`.
fn ququart_b() -> Operator {
    ququart_transitions(&[(0, 2), (1, 3)])
}

fn lowering_on(space: &HilbertSpace, qubit: usize) -> Result<Operator> {
    embed(&Operator::transition(2, 0, 1)?, qubit, space)
}

fn mode_lowering(space: &HilbertSpace, mode: usize) -> Result<Operator> {
    match space.factor(mode)? {
        Factor::Mode { n_max } => embed(&annihilation(n_max)?, mode, space),
        Factor::Qudit(_) => Err(Error::Layout("expected a bosonic mode")),
    }
}

/// `(D_A, D_B)` embedded in `space`, which must start with the three atoms.
pub fn collective_dipoles(space: &HilbertSpace) -> Result<(Operator, Operator)> {
    require_atoms(space)?;
    let d_a = &lowering_on(space, QUBIT_A)? + &embed(&ququart_a(), QUQUART, space)?;
    let d_b = &lowering_on(space, QUBIT_B)? + &embed(&ququart_b(), QUQUART, space)?;
    Ok((d_a, d_b))
}

/// `D^z = D†D − DD†`
pub fn dipole_z(d: &Operator) -> Operator {
    let dd = d.dagger();
    &(&dd * d) - &(d * &dd)
}

/// `a†a + b†b` on a cavity space.
pub fn photon_number(space: &HilbertSpace) -> Result<Operator> {
    require_modes(space)?;
    Ok(diagonal_from(space, |l| (l[MODE_A] + l[MODE_B]) as f64))
}

/// Total excitation number: both qubits, the ququart exciton weight
/// `(0, 1, 1, 2)` and, when present, both photon numbers.
pub fn excitation_number(space: &HilbertSpace) -> Result<Operator> {
    require_atoms(space)?;
    let has_modes = !is_atomic(space);
    if has_modes {
        require_modes(space)?;
    }
    Ok(diagonal_from(space, |l| {
        let atoms = l[QUBIT_A] + l[QUBIT_B] + QUQUART_WEIGHTS[l[QUQUART]];
        let photons = if has_modes { l[MODE_A] + l[MODE_B] } else { 0 };
        (atoms + photons) as f64
    }))
}

fn photon_energy(space: &HilbertSpace, omega_op: f64, l: &[usize]) -> f64 {
    if is_atomic(space) {
        0.0
    } else {
        omega_op * (l[MODE_A] + l[MODE_B]) as f64
    }
}

/// `H_0 = ω_at(σ_A†σ_A + σ_B†σ_B + |2⟩⟨2| + |3⟩⟨3| + 2|4⟩⟨4|) + ω_op(a†a + b†b)`.
/// On the atomic space the photon term is omitted.
pub fn bare_energy(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    require_atoms(space)?;
    if !is_atomic(space) {
        require_modes(space)?;
    }
    let w = params.omega_at();
    Ok(diagonal_from(space, |l| {
        w * (l[QUBIT_A] + l[QUBIT_B] + QUQUART_WEIGHTS[l[QUQUART]]) as f64 + photon_energy(space, params.omega_op(), l)
    }))
}

/// Bare energy of the mismatched model:
/// `ω_A(σ_A†σ_A + |3⟩⟨3| + |4⟩⟨4|) + ω_B(σ_B†σ_B + |2⟩⟨2| + |4⟩⟨4|) + ω_op(a†a + b†b)`.
pub fn bare_energy_mismatch(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    require_atoms(space)?;
    if !is_atomic(space) {
        require_modes(space)?;
    }
    let (wa, wb) = (params.omega_a(), params.omega_b());
    Ok(diagonal_from(space, |l| {
        let q = l[QUQUART];
        let n_a = l[QUBIT_A] + usize::from(q == 2 || q == 3);
        let n_b = l[QUBIT_B] + usize::from(q == 1 || q == 3);
        wa * n_a as f64 + wb * n_b as f64 + photon_energy(space, params.omega_op(), l)
    }))
}

/// `H_I = g_A(a†D_A + D_A†a) + g_B(b†D_B + D_B†b)`
pub fn interaction(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    require_modes(space)?;
    let (d_a, d_b) = collective_dipoles(space)?;
    let a = mode_lowering(space, MODE_A)?;
    let b = mode_lowering(space, MODE_B)?;
    let half_a = &a.dagger() * &d_a;
    let half_b = &b.dagger() * &d_b;
    let h_a = &(&half_a + &half_a.dagger()) * params.g_a();
    let h_b = &(&half_b + &half_b.dagger()) * params.g_b();
    Ok(&h_a + &h_b)
}

/// Full cavity Hamiltonian `H_0 + H_I`, valid at any detuning.
pub fn build_full(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    Ok(&bare_energy(params, space)? + &interaction(params, space)?)
}

/// Full cavity Hamiltonian of the mismatched model.
pub fn build_mismatch_full(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    Ok(&bare_energy_mismatch(params, space)? + &interaction(params, space)?)
}

/// `c(a†X − X†a)`
fn generator_term(mode: &Operator, x: &Operator, c: f64) -> Operator {
    let up = &mode.dagger() * x;
    &(&up - &up.dagger()) * c
}

/// `S = (g_A/Δ)(a†D_A − D_A†a) + (g_B/Δ)(b†D_B − D_B†b)`, which cancels
/// `H_I` to first order: `H_I + [S, H_0] = 0`.
pub fn sw_generator(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    let d = params.detuning();
    if d == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    require_modes(space)?;
    let (d_a, d_b) = collective_dipoles(space)?;
    let a = mode_lowering(space, MODE_A)?;
    let b = mode_lowering(space, MODE_B)?;
    Ok(&generator_term(&a, &d_a, params.g_a() / d) + &generator_term(&b, &d_b, params.g_b() / d))
}

/// Generator of the mismatched model: qubit terms keep `1/Δ`, the ququart
/// transitions driven by mode a use `1/(Δ − δ/2)` and those driven by mode b
/// use `1/(Δ + δ/2)`.
pub fn sw_generator_mismatch(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    let d = params.detuning();
    let half = params.delta() / 2.0;
    if d == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    if d - half == 0.0 || d + half == 0.0 {
        return Err(Error::InvalidParameter { name: "delta", reason: "Δ ± δ/2 must be non-zero".into() });
    }
    require_modes(space)?;
    let a = mode_lowering(space, MODE_A)?;
    let b = mode_lowering(space, MODE_B)?;
    let (g_a, g_b) = (params.g_a(), params.g_b());
    let terms = [
        generator_term(&a, &lowering_on(space, QUBIT_A)?, g_a / d),
        generator_term(&a, &embed(&ququart_a(), QUQUART, space)?, g_a / (d - half)),
        generator_term(&b, &lowering_on(space, QUBIT_B)?, g_b / d),
        generator_term(&b, &embed(&ququart_b(), QUQUART, space)?, g_b / (d + half)),
    ];
    Ok(&(&terms[0] + &terms[1]) + &(&terms[2] + &terms[3]))
}

/// Dispersive Hamiltonian on the cavity space:
/// `H_0 + λ_A(D_A†D_A + D_A^z a†a) + λ_B(D_B†D_B + D_B^z b†b)` with
/// `λ_{A,B} = −g_{A,B}²/Δ`.
pub fn build_effective(params: &SystemParams, space: &HilbertSpace) -> Result<Operator> {
    params.check_far_detuned()?;
    require_modes(space)?;
    let (d_a, d_b) = collective_dipoles(space)?;
    let n_a = diagonal_from(space, |l| l[MODE_A] as f64);
    let n_b = diagonal_from(space, |l| l[MODE_B] as f64);
    let part =
        |d: &Operator, n: &Operator, lambda: f64| -> Operator { &(&(&d.dagger() * d) + &(&dipole_z(d) * n)) * lambda };
    let h = &bare_energy(params, space)? + &part(&d_a, &n_a, params.lambda());
    Ok(&h + &part(&d_b, &n_b, params.lambda_b()))
}

fn atomic_effective(params: &SystemParams, with_stark: bool) -> Result<Operator> {
    params.check_far_detuned()?;
    let space = HilbertSpace::atoms();
    let (d_a, d_b) = collective_dipoles(&space)?;
    let part = |d: &Operator, lambda: f64| -> Operator {
        let mut op = &d.dagger() * d;
        if with_stark {
            op = &op + &dipole_z(d);
        }
        &op * lambda
    };
    let h = &bare_energy(params, &space)? + &part(&d_a, params.lambda());
    Ok(&h + &part(&d_b, params.lambda_b()))
}

/// `H_0 + λ(D_A†D_A + D_B†D_B)` on the atomic space (both modes in vacuum).
pub fn effective_vacuum(params: &SystemParams) -> Result<Operator> {
    atomic_effective(params, false)
}

/// `H_0 + λ(D_A†D_A + D_B†D_B + D_A^z + D_B^z)` on the atomic space (one
/// photon in each mode; the constant `2ω_op` is dropped).
pub fn effective_single_photon(params: &SystemParams) -> Result<Operator> {
    atomic_effective(params, true)
}

/// `H_0,mis − λ'(D_A†D_A + D_B†D_B)` on the atomic space.
pub fn effective_mismatch(params: &SystemParams) -> Result<Operator> {
    params.check_far_detuned()?;
    params.check_mismatch()?;
    let space = HilbertSpace::atoms();
    let (d_a, d_b) = collective_dipoles(&space)?;
    let h = &bare_energy_mismatch(params, &space)? - &(&(&d_a.dagger() * &d_a) * params.lambda_prime());
    Ok(&h - &(&(&d_b.dagger() * &d_b) * params.lambda_prime_b()))
}

/// `|g⟩⟨g| + e^{iφ}|e⟩⟨e|` on one qubit factor, identity elsewhere.
pub fn phase_gate(space: &HilbertSpace, qubit: usize, phi: f64) -> Result<Operator> {
    if space.factor(qubit)? != Factor::Qudit(2) {
        return Err(Error::Layout("phase gates act on qubit factors"));
    }
    let phase = cis(phi);
    let diag: Vec<C64> = (0..space.total_dim())
        .map(|i| if space.level(i, qubit) == EXCITED { phase } else { C64::new(1.0, 0.0) })
        .collect();
    Ok(Operator::from_fn(space, |i, j| if i == j { diag[i] } else { C64::new(0.0, 0.0) }))
}

/// Keeps only the matrix elements that conserve `a†a` and `b†b` separately
/// and that do not touch the truncation level of either mode (where the
/// truncated ladder operators no longer satisfy `[a, a†] = 1`).
pub fn photon_conserving_part(op: &Operator) -> Result<Operator> {
    let space = op.space();
    let (na_max, nb_max) = require_modes(space)?;
    let photons: Vec<(usize, usize)> =
        (0..space.total_dim()).map(|i| (space.level(i, MODE_A), space.level(i, MODE_B))).collect();
    let keep = |i: usize| photons[i].0 < na_max && photons[i].1 < nb_max;
    Ok(Operator::from_fn(space, |i, j| {
        if keep(i) && keep(j) && photons[i] == photons[j] {
            op.get(i, j)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::states::{fidelity4, QubitPairState, QuquartState};
use crate::dynamics::hermitian_eig;
use crate::error::{Error, Result};
use crate::hilbert::{Factor, HilbertSpace, Ket, Operator};
use crate::math::sqrt;
use crate::C64;

/// 4×4 complex matrix, `m[row][col]`.
pub type Matrix4 = [[C64; 4]; 4];

const ZERO: C64 = C64::new(0.0, 0.0);
/// Tolerance on `‖16·M†M − 1‖_max` for a branch map `M` of a maximally
/// entangled resource.
const MAX_ENTANGLED_TOL: f64 = 1e-9;

/// Two-qubit Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn name(self) -> &'static str {
        match self {
            Bell::PhiPlus => "Phi+",
            Bell::PhiMinus => "Phi-",
            Bell::PsiPlus => "Psi+",
            Bell::PsiMinus => "Psi-",
        }
    }

    /// Amplitudes in basis order `gg, ge, eg, ee`:
    /// `Φ± = (|gg⟩ ± |ee⟩)/√2`, `Ψ± = (|ge⟩ ± |eg⟩)/√2`.
    pub fn amplitudes(self) -> [C64; 4] {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            Bell::PhiPlus => [s, ZERO, ZERO, s],
            Bell::PhiMinus => [s, ZERO, ZERO, -s],
            Bell::PsiPlus => [ZERO, s, s, ZERO],
            Bell::PsiMinus => [ZERO, s, -s, ZERO],
        }
    }
}

/// The four Bell states as kets on two qubits, in [`Bell::ALL`] order.
pub fn bell_basis() -> [Ket; 4] {
    let space = HilbertSpace::qudits(&[2, 2]).expect("two qubits");
    Bell::ALL.map(|b| Ket::from_amplitudes(&space, b.amplitudes().to_vec()).expect("normalized"))
}

/// Element `|j, m⟩ = ½ Σ_k i^{jk} |k⟩|k + m mod 4⟩` of the generalized Bell
/// basis of two ququarts, as amplitudes over the 16 product states.
pub fn generalized_bell(j: usize, m: usize) -> [C64; 16] {
    let mut out = [ZERO; 16];
    let phases = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)];
    for k in 0..4 {
        out[k * 4 + (k + m) % 4] = phases[(j * k) % 4] * 0.5;
    }
    out
}

/// Joint outcome of the two Bell measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellOutcome {
    pub alice: Bell,
    pub bob: Bell,
    pub probability: f64,
}

/// Result of a projective measurement on two factors of a state.
#[derive(Debug, Clone)]
pub struct PairMeasurement<K> {
    pub outcome: K,
    pub probability: f64,
    /// Normalized post-measurement state of the remaining factors.
    pub collapsed: Ket,
}

/// Contracts factors `pair = (p, q)` of `joint` with `⟨bra|`, where `bra`
/// is indexed `l_p·d_q + l_q`. Returns the remaining space and the
/// unnormalized amplitudes on it.
fn project_pair(joint: &Ket, pair: (usize, usize), bra: &[C64]) -> Result<(HilbertSpace, Vec<C64>)> {
    let space = joint.space();
    let (p, q) = pair;
    let (dp, dq) = (space.dim(p)?, space.dim(q)?);
    if p == q {
        return Err(Error::Layout("a pair measurement needs two distinct factors"));
    }
    if bra.len() != dp * dq {
        return Err(Error::DimensionMismatch { expected: dp * dq, found: bra.len() });
    }
    let rest: Vec<Factor> =
        space.factors().iter().enumerate().filter(|(i, _)| *i != p && *i != q).map(|(_, f)| *f).collect();
    if rest.is_empty() {
        return Err(Error::Layout("the measured pair must leave at least one factor"));
    }
    let reduced = HilbertSpace::new(rest)?;
    let mut out = vec![ZERO; reduced.total_dim()];
    let mut kept = Vec::with_capacity(reduced.num_factors());
    for (i, a) in joint.amplitudes().iter().enumerate() {
        if *a == ZERO {
            continue;
        }
        let levels = space.levels_of(i);
        let b = bra[levels[p] * dq + levels[q]];
        if b == ZERO {
            continue;
        }
        kept.clear();
        kept.extend(levels.iter().enumerate().filter(|(f, _)| *f != p && *f != q).map(|(_, l)| *l));
        out[reduced.index_of(&kept)?] += b.conj() * a;
    }
    Ok((reduced, out))
}

fn sample_index<R: Rng + ?Sized>(probabilities: &[f64], rng: &mut R) -> usize {
    let total: f64 = probabilities.iter().sum();
    let r = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &p) in probabilities.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        last_positive = i;
        acc += p;
        if r < acc {
            return i;
        }
    }
    last_positive
}

fn measure<K: Copy, R: Rng + ?Sized>(
    joint: &Ket,
    pair: (usize, usize),
    basis: &[(K, Vec<C64>)],
    rng: &mut R,
) -> Result<PairMeasurement<K>> {
    let mut branches = Vec::with_capacity(basis.len());
    for (_, bra) in basis {
        branches.push(project_pair(joint, pair, bra)?);
    }
    let probs: Vec<f64> = branches.iter().map(|(_, v)| v.iter().map(|z| z.norm_sqr()).sum()).collect();
    let k = sample_index(&probs, rng);
    let (space, amps) = branches.swap_remove(k);
    Ok(PairMeasurement { outcome: basis[k].0, probability: probs[k], collapsed: Ket::normalized(&space, amps)? })
}

/// Bell measurement of the qubit factors `pair` with Born-rule sampling.
pub fn bell_measure<R: Rng + ?Sized>(joint: &Ket, pair: (usize, usize), rng: &mut R) -> Result<PairMeasurement<Bell>> {
    let space = joint.space();
    if space.factor(pair.0)? != Factor::Qudit(2) || space.factor(pair.1)? != Factor::Qudit(2) {
        return Err(Error::Layout("Bell measurements act on two qubits"));
    }
    let basis: Vec<(Bell, Vec<C64>)> = Bell::ALL.iter().map(|b| (*b, b.amplitudes().to_vec())).collect();
    measure(joint, pair, &basis, rng)
}

/// Generalized Bell measurement of two ququart factors; outcome `(j, m)`.
pub fn generalized_bell_measure<R: Rng + ?Sized>(
    joint: &Ket,
    pair: (usize, usize),
    rng: &mut R,
) -> Result<PairMeasurement<(usize, usize)>> {
    let space = joint.space();
    if space.factor(pair.0)? != Factor::Qudit(4) || space.factor(pair.1)? != Factor::Qudit(4) {
        return Err(Error::Layout("generalized Bell measurements act on two ququarts"));
    }
    let basis: Vec<((usize, usize), Vec<C64>)> =
        generalized_outcomes().map(|(j, m)| ((j, m), generalized_bell(j, m).to_vec())).collect();
    measure(joint, pair, &basis, rng)
}

fn generalized_outcomes() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|j| (0..4).map(move |m| (j, m)))
}

fn bell_pairs() -> impl Iterator<Item = (Bell, Bell)> {
    Bell::ALL.into_iter().flat_map(|a| Bell::ALL.into_iter().map(move |b| (a, b)))
}

/// One row of a correction table.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch<K> {
    pub outcome: K,
    /// Linear map from the input amplitudes to the unnormalized conditional
    /// output of this branch.
    pub map: Matrix4,
    /// Unitary applied to the conditional output.
    pub correction: Matrix4,
}

/// Outcome-indexed corrections derived from a resource state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionTable<K> {
    pub branches: Vec<Branch<K>>,
}

impl<K: PartialEq + Copy> CorrectionTable<K> {
    pub fn get(&self, outcome: K) -> Option<&Branch<K>> {
        self.branches.iter().find(|b| b.outcome == outcome)
    }
}

fn mat_vec(m: &Matrix4, x: &[C64; 4]) -> [C64; 4] {
    core::array::from_fn(|i| (0..4).map(|k| m[i][k] * x[k]).sum())
}

fn op4(m: &Matrix4) -> Operator {
    let space = HilbertSpace::qudits(&[4]).expect("dimension 4");
    Operator::from_fn(&space, |i, j| m[i][j])
}

/// Inverse of the unitary polar factor of `m`, and the worst-case
/// fidelity `4 p_min p_max/(p_min + p_max)²` left by that correction, where
/// `p` are the singular values of `m`.
fn polar_correction(m: &Matrix4) -> Result<(Matrix4, f64)> {
    let op = op4(m);
    let gram = &op.dagger() * &op;
    let eig = hermitian_eig(&gram)?;
    let p: Vec<f64> = eig.values.iter().map(|&v| sqrt(v.max(0.0))).collect();
    let (p_min, p_max) = (p[0], p[3]);
    if p_max == 0.0 {
        return Ok(([[ZERO; 4]; 4], 0.0));
    }
    let worst = 4.0 * p_min * p_max / ((p_min + p_max) * (p_min + p_max));
    if p_min <= 1e-14 * p_max {
        return Ok(([[ZERO; 4]; 4], 0.0));
    }
    let v = &eig.vectors;
    let inv_sqrt =
        Operator::from_fn(gram.space(), |i, j| (0..4).map(|k| v.get(i, k) * v.get(j, k).conj() / p[k]).sum());
    let u = &op * &inv_sqrt;
    let ud = u.dagger();
    Ok((core::array::from_fn(|i| core::array::from_fn(|j| ud.get(i, j))), worst))
}

fn build_table<K: Copy>(maps: Vec<(K, Matrix4)>) -> Result<CorrectionTable<K>> {
    let mut branches = Vec::with_capacity(maps.len());
    let mut worst_case = 1.0f64;
    let mut exact = true;
    for (outcome, map) in maps {
        let (correction, worst) = polar_correction(&map)?;
        worst_case = worst_case.min(worst);
        let m = op4(&map);
        let scaled = &(&m.dagger() * &m) * 16.0;
        exact &= (&scaled - &Operator::identity(scaled.space())).max_abs() <= MAX_ENTANGLED_TOL;
        branches.push(Branch { outcome, map, correction });
    }
    if !exact {
        return Err(Error::NotMaximallyEntangled { worst_case_fidelity: worst_case });
    }
    Ok(CorrectionTable { branches })
}

fn require_atomic(resource: &Ket) -> Result<()> {
    let s = resource.space();
    if s.has_atoms() && s.num_factors() == 3 {
        Ok(())
    } else {
        Err(Error::Layout("the resource lives on qubit A, qubit B and the ququart"))
    }
}

fn two_qubit_ket(c: &[C64; 4]) -> Ket {
    Ket::from_unitary_image(&HilbertSpace::qudits(&[2, 2]).expect("two qubits"), c.to_vec())
}

fn ququart_ket(c: &[C64; 4]) -> Ket {
    Ket::from_unitary_image(&HilbertSpace::qudits(&[4]).expect("ququart"), c.to_vec())
}

fn basis4(k: usize) -> [C64; 4] {
    core::array::from_fn(|i| if i == k { C64::new(1.0, 0.0) } else { ZERO })
}

fn to_array(v: &[C64]) -> [C64; 4] {
    core::array::from_fn(|i| v[i])
}

/// Branch maps of the forward protocol: the joint state is
/// `|input⟩_{d₁d₂} ⊗ |resource⟩_{ABC}`; Alice measures `(d₁, A)`, Bob `(d₂, B)`.
#[allow(clippy::needless_range_loop)] // fills the map column by column
fn forward_maps(resource: &Ket) -> Result<Vec<((Bell, Bell), Matrix4)>> {
    require_atomic(resource)?;
    let mut out = Vec::with_capacity(16);
    for (alice, bob) in bell_pairs() {
        let mut map = [[ZERO; 4]; 4];
        for k in 0..4 {
            let joint = two_qubit_ket(&basis4(k)).tensor(resource);
            let (after_alice, amps) = project_pair(&joint, (0, 2), &alice.amplitudes())?;
            let partial = Ket::from_unitary_image(&after_alice, amps);
            let (_, amps) = project_pair(&partial, (0, 1), &bob.amplitudes())?;
            for (row, a) in amps.iter().enumerate() {
                map[row][k] = *a;
            }
        }
        out.push(((alice, bob), map));
    }
    Ok(out)
}

/// Branch maps of the reverse protocol: the joint state is
/// `|input⟩_{C'} ⊗ |resource⟩_{ABC}`; Charles measures `(C', C)`.
#[allow(clippy::needless_range_loop)] // fills the map column by column
fn reverse_maps(resource: &Ket) -> Result<Vec<((usize, usize), Matrix4)>> {
    require_atomic(resource)?;
    let mut out = Vec::with_capacity(16);
    for (j, m) in generalized_outcomes() {
        let bra = generalized_bell(j, m);
        let mut map = [[ZERO; 4]; 4];
        for k in 0..4 {
            let joint = ququart_ket(&basis4(k)).tensor(resource);
            let (_, amps) = project_pair(&joint, (0, 3), &bra)?;
            for (row, a) in amps.iter().enumerate() {
                map[row][k] = *a;
            }
        }
        out.push(((j, m), map));
    }
    Ok(out)
}

/// Corrections for teleporting two qubits onto the ququart, derived from
/// the resource by brute force. Fails with the worst-case fidelity reachable
/// by polar-factor corrections when the resource is not maximally entangled.
pub fn derive_correction_table(resource: &Ket) -> Result<CorrectionTable<(Bell, Bell)>> {
    build_table(forward_maps(resource)?)
}

/// Corrections for teleporting a ququart onto the two qubits.
pub fn derive_reverse_correction_table(resource: &Ket) -> Result<CorrectionTable<(usize, usize)>> {
    build_table(reverse_maps(resource)?)
}

/// Result of one branch of a teleportation protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchResult<K> {
    pub outcome: K,
    pub probability: f64,
    /// Corrected output amplitudes.
    pub output: [C64; 4],
    /// Fidelity of the corrected output to the input amplitudes.
    pub fidelity: f64,
}

fn run_branch<K: Copy>(branch: &Branch<K>, input: &[C64; 4]) -> Result<BranchResult<K>> {
    let raw = mat_vec(&branch.map, input);
    let probability: f64 = raw.iter().map(|z| z.norm_sqr()).sum();
    if probability == 0.0 {
        return Err(Error::ZeroVector);
    }
    let norm = sqrt(probability);
    let output = mat_vec(&branch.correction, &raw.map(|z| z / norm));
    Ok(BranchResult { outcome: branch.outcome, probability, output, fidelity: fidelity4(input, &output) })
}

fn all_branches<K: Copy>(table: &CorrectionTable<K>, input: &[C64; 4]) -> Result<Vec<BranchResult<K>>> {
    table.branches.iter().map(|b| run_branch(b, input)).collect()
}

/// Every measurement branch of the forward protocol, with exact
/// probabilities and corrected fidelities.
pub fn teleport_all_branches(
    input: &QubitPairState,
    table: &CorrectionTable<(Bell, Bell)>,
) -> Result<Vec<BranchResult<(Bell, Bell)>>> {
    all_branches(table, &input.amplitudes())
}

/// Every measurement branch of the reverse protocol.
pub fn reverse_all_branches(
    input: &QuquartState,
    table: &CorrectionTable<(usize, usize)>,
) -> Result<Vec<BranchResult<(usize, usize)>>> {
    all_branches(table, &input.amplitudes())
}

/// One sampled run of the forward protocol.
#[derive(Debug, Clone)]
pub struct Teleportation {
    pub outcome: BellOutcome,
    pub correction: Matrix4,
    pub output: QuquartState,
    pub fidelity: f64,
}

/// One sampled run of the reverse protocol.
#[derive(Debug, Clone)]
pub struct ReverseTeleportation {
    pub outcome: (usize, usize),
    pub probability: f64,
    pub correction: Matrix4,
    pub output: QubitPairState,
    pub fidelity: f64,
}

fn renormalize(v: &[C64; 4]) -> [C64; 4] {
    let n = sqrt(v.iter().map(|z| z.norm_sqr()).sum());
    v.map(|z| z / n)
}

/// Teleports a two-qubit state onto the ququart of `resource`. The two Bell
/// measurements are sampled with a ChaCha8 generator seeded by `seed`.
pub fn teleport(input: &QubitPairState, resource: &Ket, seed: u64) -> Result<Teleportation> {
    let table = derive_correction_table(resource)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let joint = two_qubit_ket(&input.amplitudes()).tensor(resource);
    let alice = bell_measure(&joint, (0, 2), &mut rng)?;
    let bob = bell_measure(&alice.collapsed, (0, 1), &mut rng)?;
    let outcome =
        BellOutcome { alice: alice.outcome, bob: bob.outcome, probability: alice.probability * bob.probability };
    let branch = table.get((alice.outcome, bob.outcome)).expect("table covers every outcome");
    let corrected = renormalize(&mat_vec(&branch.correction, &to_array(bob.collapsed.amplitudes())));
    let output = QuquartState::new(corrected)?;
    Ok(Teleportation {
        outcome,
        correction: branch.correction,
        fidelity: fidelity4(&input.amplitudes(), &corrected),
        output,
    })
}

/// Teleports a ququart state onto qubits A and B of `resource` via a
/// generalized Bell measurement on Charles's two ququarts.
pub fn reverse_teleport(input: &QuquartState, resource: &Ket, seed: u64) -> Result<ReverseTeleportation> {
    let table = derive_reverse_correction_table(resource)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let joint = ququart_ket(&input.amplitudes()).tensor(resource);
    let charles = generalized_bell_measure(&joint, (0, 3), &mut rng)?;
    let branch = table.get(charles.outcome).expect("table covers every outcome");
    let corrected = renormalize(&mat_vec(&branch.correction, &to_array(charles.collapsed.amplitudes())));
    Ok(ReverseTeleportation {
        outcome: charles.outcome,
        probability: charles.probability,
        correction: branch.correction,
        fidelity: fidelity4(&input.amplitudes(), &corrected),
        output: QubitPairState::new(corrected)?,
    })
}

/// `(|gg1⟩ + |ge2⟩ + |eg3⟩ + |ee4⟩)/2`, the resource whose correction for
/// `(Φ+, Φ+)` is the identity.
pub fn ideal_resource() -> Ket {
    let space = HilbertSpace::atoms();
    let mut amps = vec![ZERO; space.total_dim()];
    for k in 0..4 {
        amps[space.index_of(&[k / 2, k % 2, k]).expect("valid levels")] = C64::new(0.5, 0.0);
    }
    Ket::from_amplitudes(&space, amps).expect("normalized")
}

fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    core::array::from_fn(|i| core::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

/// Kraus operators `C_b·M_b` of forward teleportation through `resource`
/// when the corrections come from `table` (typically derived from an ideal
/// resource).
pub fn teleport_channel(resource: &Ket, table: &CorrectionTable<(Bell, Bell)>) -> Result<Vec<Matrix4>> {
    forward_maps(resource)?
        .into_iter()
        .map(|(outcome, map)| {
            let branch = table.get(outcome).ok_or(Error::Layout("correction table misses an outcome"))?;
            Ok(mat_mul(&branch.correction, &map))
        })
        .collect()
}

/// `Σ_k |tr K_k|²/d²` for a channel on a `d = 4` system.
pub fn entanglement_fidelity(kraus: &[Matrix4]) -> f64 {
    kraus.iter().map(|k| (0..4).map(|i| k[i][i]).sum::<C64>().norm_sqr()).sum::<f64>() / 16.0
}

/// Input-averaged fidelity `(d·F_e + 1)/(d + 1)` of a `d = 4` channel.
pub fn average_fidelity(kraus: &[Matrix4]) -> f64 {
    (4.0 * entanglement_fidelity(kraus) + 1.0) / 5.0
}

use alloc::string::String;
use alloc::vec::Vec;

use super::{Frame, Propagator};
use crate::error::{Error, Result};
use crate::hilbert::{expectation, fidelity, Ket, Operator};
use crate::math::abs;
use crate::C64;

/// A basis state whose amplitude is recorded along a trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedState {
    pub label: String,
    pub index: usize,
}

impl TrackedState {
    pub fn new(label: impl Into<String>, index: usize) -> Self {
        Self { label: label.into(), index }
    }
}

/// Uniformly sampled trajectory.
///
/// `amplitudes[k][s]` is the amplitude of tracked state `k` at sample `s`,
/// reported in the frame the trace was taken in; `states` holds the full
/// lab-frame state at each sample.
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub labels: Vec<String>,
    pub amplitudes: Vec<Vec<C64>>,
    pub populations: Vec<Vec<f64>>,
    pub fidelity: Vec<f64>,
    pub states: Vec<Ket>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Largest `|‖ψ(t)‖ − 1|` over the samples.
    pub fn max_norm_error(&self) -> f64 {
        self.states.iter().map(|s| abs(s.norm() - 1.0)).fold(0.0, f64::max)
    }
}

/// Samples `ψ(t) = e^{−iHt} ψ0` at `n_samples` uniformly spaced times in
/// `[0, t_end]`. Amplitudes and the fidelity to `target` are evaluated in
/// `frame`; populations are frame independent.
pub fn trace_evolution(
    h: &Operator,
    psi0: &Ket,
    t_end: f64,
    n_samples: usize,
    tracked: &[TrackedState],
    target: &Ket,
    frame: &Frame,
) -> Result<TimeSeries> {
    if tracked.is_empty() {
        return Err(Error::NoTrackedStates);
    }
    if n_samples < 2 {
        return Err(Error::TooFewSamples(n_samples));
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::InvalidTimeSpan(t_end));
    }
    if psi0.space() != h.space() || target.space() != h.space() {
        return Err(Error::SpaceMismatch);
    }
    let dim = h.dim();
    if let Some(bad) = tracked.iter().find(|s| s.index >= dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.index });
    }

    let prop = Propagator::new(h)?;
    let mut series = TimeSeries {
        times: Vec::with_capacity(n_samples),
        labels: tracked.iter().map(|s| s.label.clone()).collect(),
        amplitudes: tracked.iter().map(|_| Vec::with_capacity(n_samples)).collect(),
        populations: tracked.iter().map(|_| Vec::with_capacity(n_samples)).collect(),
        fidelity: Vec::with_capacity(n_samples),
        states: Vec::with_capacity(n_samples),
    };
    let step = t_end / (n_samples - 1) as f64;
    for s in 0..n_samples {
        let t = if s == n_samples - 1 { t_end } else { step * s as f64 };
        let psi = prop.evolve(psi0, t)?;
        let viewed = frame.apply(&psi, t)?;
        for (k, ts) in tracked.iter().enumerate() {
            let a = viewed.amplitude(ts.index);
            series.amplitudes[k].push(a);
            series.populations[k].push(a.norm_sqr());
        }
        series.fidelity.push(fidelity(&viewed, target)?);
        series.times.push(t);
        series.states.push(psi);
    }
    Ok(series)
}

/// `max_t |⟨H⟩(t) − ⟨H⟩(0)|` over the lab-frame states of a trace.
pub fn energy_drift(h: &Operator, series: &TimeSeries) -> Result<f64> {
    let Some(first) = series.states.first() else {
        return Ok(0.0);
    };
    let e0 = expectation(h, first)?.re;
    let mut worst = 0.0f64;
    for psi in &series.states[1..] {
        worst = worst.max(abs(expectation(h, psi)?.re - e0));
    }
    Ok(worst)
}

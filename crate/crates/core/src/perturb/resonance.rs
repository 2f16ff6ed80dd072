//! Detection of resonant mode pairs for a given driving frequency.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::staticmodes::StaticBasis;

/// The physical process a resonance drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResonanceKind {
    /// `ω_p = ω⁰_n − ω⁰_m`: `α_nm` grows linearly.
    ModeMixing,
    /// `ω_p = ω⁰_n + ω⁰_m`: `β_nm` grows linearly.
    PairCreation,
}

/// One resonant ordered pair of basis positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Resonance {
    /// Basis position of the first mode.
    pub n: usize,
    /// Basis position of the second mode.
    pub m: usize,
    /// Multi-index of the first mode.
    pub n_index: Vec<usize>,
    /// Multi-index of the second mode.
    pub m_index: Vec<usize>,
    pub kind: ResonanceKind,
    /// Signed mismatch `ω⁰_n ∓ ω⁰_m − ω_p`.
    pub detuning: f64,
}

/// All ordered pairs `(n, m)` within `tolerance` of a mode-mixing or
/// pair-creation resonance with `omega_p`.
///
/// Pairs are reported in basis order, mode-mixing entries before
/// pair-creation entries for the same pair.
pub fn find_resonances(basis: &StaticBasis, omega_p: f64, tolerance: f64) -> Result<Vec<Resonance>> {
    if !(omega_p.is_finite() && omega_p > 0.0) {
        return Err(Error::InvalidArgument(format!("driving frequency must be positive, got {omega_p}")));
    }
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {tolerance}")));
    }
    let modes = basis.modes();
    let mut out = Vec::new();
    for (n, a) in modes.iter().enumerate() {
        for (m, b) in modes.iter().enumerate() {
            let candidates = [
                (ResonanceKind::ModeMixing, a.frequency() - b.frequency() - omega_p),
                (ResonanceKind::PairCreation, a.frequency() + b.frequency() - omega_p),
            ];
            for (kind, detuning) in candidates {
                if detuning.abs() <= tolerance {
                    out.push(Resonance {
                        n,
                        m,
                        n_index: a.index().to_vec(),
                        m_index: b.index().to_vec(),
                        kind,
                        detuning,
                    });
                }
            }
        }
    }
    Ok(out)
}

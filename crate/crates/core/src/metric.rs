//! Spatial metric profiles and the scalar quantities derived from them.
//!
//! The spatial metric is `h_ij(t) = h⁰_ij + ε Δh_ij(t)`, diagonal, and
//! homogeneous in space.  From it we derive the expansion rate
//! `q = ∂_t log √h`, the scalar `R̄ = 2q̇ + q² − ¼ (∂_t h^{ij})(∂_t h_ij)`, their
//! first-order coefficients `Δr` and `ΔR̄`, and the positivity shift `F(t)`.

use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::signal::Waveform;

/// Positive floor added to `F(t)` when `ξR^h + m²` fails to be positive.
pub const F_EPSILON: f64 = 1e-12;

/// Diagonal spatial metric `h_ii(t) = h⁰_ii + ε Δh_ii(t)` in one or three
/// spatial dimensions.
#[derive(Debug, Clone)]
pub struct MetricProfile {
    spatial_dim: usize,
    h0: Vec<f64>,
    delta_h: Vec<Waveform>,
    epsilon: f64,
    spatial_curvature: Waveform,
}

impl MetricProfile {
    /// Builds and validates a profile.
    ///
    /// `h0` and `delta_h` must both have `spatial_dim ∈ {1, 3}` entries and
    /// `h0` must be positive definite.
    pub fn new(spatial_dim: usize, h0: Vec<f64>, delta_h: Vec<Waveform>, epsilon: f64) -> Result<Self> {
        if spatial_dim != 1 && spatial_dim != 3 {
            return Err(Error::InvalidArgument(format!(
                "spatial dimension must be 1 or 3, got {spatial_dim}"
            )));
        }
        if h0.len() != spatial_dim || delta_h.len() != spatial_dim {
            return Err(Error::InvalidArgument(format!(
                "expected {spatial_dim} diagonal metric entries, got h0: {}, delta_h: {}",
                h0.len(),
                delta_h.len()
            )));
        }
        if let Some(bad) = h0.iter().find(|&&x| !(x.is_finite() && x > 0.0)) {
            return Err(Error::InvalidMetric(format!(
                "static metric entries must be positive, found {bad}"
            )));
        }
        if !epsilon.is_finite() {
            return Err(Error::InvalidArgument(format!("ε must be finite, got {epsilon}")));
        }
        Ok(Self { spatial_dim, h0, delta_h, epsilon, spatial_curvature: Waveform::zero() })
    }

    /// Flat static metric (`h⁰ = I`, `Δh = 0`).
    pub fn flat(spatial_dim: usize) -> Result<Self> {
        Self::new(
            spatial_dim,
            vec![1.0; spatial_dim],
            vec![Waveform::zero(); spatial_dim],
            0.0,
        )
    }

    /// Sets the spatial scalar curvature `R^h(t)` (zero by default, as for
    /// every spatially homogeneous diagonal metric).
    pub fn with_spatial_curvature(mut self, curvature: Waveform) -> Self {
        self.spatial_curvature = curvature;
        self
    }

    pub fn spatial_dim(&self) -> usize {
        self.spatial_dim
    }

    pub fn h0(&self) -> &[f64] {
        &self.h0
    }

    pub fn delta_h(&self) -> &[Waveform] {
        &self.delta_h
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Full metric entry `h_ii(t)`.
    pub fn h(&self, axis: usize, t: f64) -> Result<f64> {
        let v = self.h0[axis] + self.epsilon * self.delta_h[axis].try_value(t)?;
        if v <= 0.0 {
            return Err(Error::InvalidMetric(format!(
                "h_{axis}{axis}({t}) = {v} is not positive"
            )));
        }
        Ok(v)
    }
}

/// The five scalar functions derived from a metric profile and field.
///
/// Every accessor is a pure function of time; the struct is cheap to clone
/// and safe to share between threads.
#[derive(Debug, Clone)]
pub struct DerivedMetricScalars {
    profile: MetricProfile,
    params: FieldParams,
}

/// Derives `q`, `R̄`, `Δr`, `ΔR̄` and `F` for a profile.
pub fn derive_metric_scalars(profile: &MetricProfile, params: &FieldParams) -> DerivedMetricScalars {
    DerivedMetricScalars { profile: profile.clone(), params: *params }
}

impl DerivedMetricScalars {
    /// Per-axis `(h, ḣ, ḧ)` of the full metric.
    fn axis_data(&self, t: f64) -> Result<Vec<(f64, f64, f64)>> {
        let p = &self.profile;
        (0..p.spatial_dim)
            .map(|i| {
                let h = p.h(i, t)?;
                let dh = p.epsilon * p.delta_h[i].derivative(t);
                let ddh = p.epsilon * p.delta_h[i].second_derivative(t);
                if !(dh.is_finite() && ddh.is_finite()) {
                    return Err(Error::Evaluation { t, reason: "metric derivative is not finite".into() });
                }
                Ok((h, dh, ddh))
            })
            .collect()
    }

    /// Expansion rate `q(t) = ∂_t log √h = ½ Σ_i ḣ_ii / h_ii`.
    pub fn q(&self, t: f64) -> Result<f64> {
        Ok(0.5 * self.axis_data(t)?.iter().map(|(h, dh, _)| dh / h).sum::<f64>())
    }

    /// `R̄(t) = 2q̇ + q² + ¼ Σ_i (ḣ_ii / h_ii)²` (the last term is
    /// `−¼ (∂_t h^{ij})(∂_t h_ij)` for a diagonal metric).
    pub fn r_bar(&self, t: f64) -> Result<f64> {
        let data = self.axis_data(t)?;
        let q: f64 = 0.5 * data.iter().map(|(h, dh, _)| dh / h).sum::<f64>();
        let q_dot: f64 = 0.5 * data.iter().map(|(h, dh, ddh)| ddh / h - (dh / h).powi(2)).sum::<f64>();
        let last: f64 = 0.25 * data.iter().map(|(h, dh, _)| (dh / h).powi(2)).sum::<f64>();
        Ok(2.0 * q_dot + q * q + last)
    }

    /// `Δr(t) = ½ ∂_ε log det h |_{ε=0} = ½ Σ_i Δh_ii / h⁰_ii`.
    pub fn delta_r(&self, t: f64) -> Result<f64> {
        let p = &self.profile;
        let mut acc = 0.0;
        for i in 0..p.spatial_dim {
            acc += p.delta_h[i].try_value(t)? / p.h0[i];
        }
        Ok(0.5 * acc)
    }

    /// `ΔR̄(t) = ∂_ε R̄ |_{ε=0} = Σ_i Δḧ_ii / h⁰_ii` (the quadratic terms of
    /// `R̄` do not contribute at first order).
    pub fn delta_r_bar(&self, t: f64) -> Result<f64> {
        let p = &self.profile;
        let mut acc = 0.0;
        for i in 0..p.spatial_dim {
            let v = p.delta_h[i].second_derivative(t);
            if !v.is_finite() {
                return Err(Error::Evaluation { t, reason: "metric second derivative is not finite".into() });
            }
            acc += v / p.h0[i];
        }
        Ok(acc)
    }

    /// Positivity shift `F(t)`: zero if `ξR^h + m² > 0`, otherwise
    /// `−(ξR^h + m²) + ε_F` with `ε_F` = [`F_EPSILON`].
    ///
    /// The metric is spatially homogeneous, so the essential infimum over the
    /// slice is the value itself; the condition is evaluated per time sample.
    pub fn f_term(&self, t: f64) -> Result<f64> {
        let curvature = self.profile.spatial_curvature.try_value(t)?;
        let s = self.params.coupling_xi() * curvature + self.params.mass().powi(2);
        Ok(if s > 0.0 { 0.0 } else { -s + F_EPSILON })
    }

    /// Spatial scalar curvature `R^h(t)`.
    pub fn spatial_curvature(&self, t: f64) -> Result<f64> {
        self.profile.spatial_curvature.try_value(t)
    }

    pub fn profile(&self) -> &MetricProfile {
        &self.profile
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{central_first, central_second, Envelope};

    fn gw_profile(eps: f64, omega: f64) -> MetricProfile {
        MetricProfile::new(
            3,
            vec![1.0; 3],
            vec![
                Waveform::sine(1.0, omega, Envelope::Constant),
                Waveform::sine(-1.0, omega, Envelope::Constant),
                Waveform::zero(),
            ],
            eps,
        )
        .unwrap()
    }

    #[test]
    fn flat_metric_has_vanishing_scalars() {
        let p = MetricProfile::flat(1).unwrap();
        let s = derive_metric_scalars(&p, &FieldParams::minimal(0.0).unwrap());
        for t in [0.0, 1.3, -4.0] {
            assert_eq!(s.q(t).unwrap(), 0.0);
            assert_eq!(s.r_bar(t).unwrap(), 0.0);
            assert_eq!(s.delta_r(t).unwrap(), 0.0);
            assert_eq!(s.delta_r_bar(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn gravitational_wave_has_no_volume_change() {
        let s = derive_metric_scalars(&gw_profile(1e-3, 2.0), &FieldParams::minimal(0.0).unwrap());
        for t in [0.1, 0.7, 2.9] {
            assert!(s.delta_r(t).unwrap().abs() < 1e-16);
            assert!(s.delta_r_bar(t).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn massive_minimal_field_has_zero_f() {
        let s = derive_metric_scalars(&gw_profile(1e-2, 1.0), &FieldParams::minimal(0.5).unwrap());
        assert_eq!(s.f_term(0.3).unwrap(), 0.0);
        let massless = derive_metric_scalars(&gw_profile(1e-2, 1.0), &FieldParams::minimal(0.0).unwrap());
        assert_eq!(massless.f_term(0.3).unwrap(), F_EPSILON);
    }

    #[test]
    fn negative_curvature_triggers_f_branch() {
        let p = MetricProfile::flat(3)
            .unwrap()
            .with_spatial_curvature(Waveform::custom("R", 1e-4, |_| -2.0));
        let s = derive_metric_scalars(&p, &FieldParams::new(0.5, 1.0).unwrap());
        // ξR + m² = −2 + 0.25
        assert!((s.f_term(0.0).unwrap() - (1.75 + F_EPSILON)).abs() < 1e-15);
    }

    #[test]
    fn isotropic_scaling_gives_d_over_two() {
        let wave = Waveform::custom("s", 1e-4, |t: f64| (0.3 * t).cos() + 0.1 * t);
        let p = MetricProfile::new(3, vec![2.0, 0.5, 1.5], vec![wave.scaled(2.0), wave.scaled(0.5), wave.scaled(1.5)], 1e-3).unwrap();
        let s = derive_metric_scalars(&p, &FieldParams::minimal(1.0).unwrap());
        let t = 0.8;
        let expected = 1.5 * wave.value(t);
        assert!((s.delta_r(t).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn delta_r_bar_matches_epsilon_derivative() {
        let omega = 1.7;
        let make = |eps: f64| {
            let p = MetricProfile::new(
                3,
                vec![1.0, 2.0, 0.5],
                vec![
                    Waveform::sine(1.0, omega, Envelope::Constant),
                    Waveform::sine(0.4, 0.5 * omega, Envelope::Constant),
                    Waveform::custom("c", 1e-4, |t: f64| (0.9 * t).cos()),
                ],
                eps,
            )
            .unwrap();
            derive_metric_scalars(&p, &FieldParams::minimal(1.0).unwrap())
        };
        let t = 0.37;
        let h = 1e-4;
        let numeric = (make(h).r_bar(t).unwrap() - make(-h).r_bar(t).unwrap()) / (2.0 * h);
        let analytic = make(0.0).delta_r_bar(t).unwrap();
        assert!((numeric - analytic).abs() <= 1e-6 * analytic.abs().max(1.0));
        // q is ∂_t of ½ log det h
        let s = make(1e-2);
        let half_log = |t: f64| {
            let p = s.profile();
            0.5 * (0..3).map(|i| p.h(i, t).unwrap().ln()).sum::<f64>()
        };
        assert!((s.q(t).unwrap() - central_first(half_log, t, 1e-3)).abs() < 1e-10);
        let q = |t: f64| s.q(t).unwrap();
        let p = s.profile();
        let last: f64 = 0.25
            * (0..3)
                .map(|i| (central_first(|t| p.h(i, t).unwrap(), t, 1e-3) / p.h(i, t).unwrap()).powi(2))
                .sum::<f64>();
        let rb = 2.0 * central_first(q, t, 1e-3) + q(t).powi(2) + last;
        assert!((s.r_bar(t).unwrap() - rb).abs() < 1e-8);
        // ΔR̄ is twice the second derivative of Δr
        let d = make(0.0);
        let ddr = central_second(|t| d.delta_r(t).unwrap(), t, 1e-3);
        assert!((2.0 * ddr - analytic).abs() < 1e-6);
    }

    #[test]
    fn invalid_metrics_rejected() {
        assert!(matches!(
            MetricProfile::new(1, vec![-1.0], vec![Waveform::zero()], 0.1),
            Err(Error::InvalidMetric(_))
        ));
        assert!(MetricProfile::new(2, vec![1.0; 2], vec![Waveform::zero(); 2], 0.1).is_err());
        let p = MetricProfile::new(1, vec![1.0], vec![Waveform::custom("nan", 1e-3, |_| f64::NAN)], 0.1).unwrap();
        let s = derive_metric_scalars(&p, &FieldParams::minimal(0.0).unwrap());
        assert!(matches!(s.delta_r(0.0), Err(Error::Evaluation { .. })));
    }
}

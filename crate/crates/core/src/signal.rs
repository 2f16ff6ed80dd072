//! Time-dependent scalar signals: windowing envelopes, finite harmonic sums
//! and user-supplied waveforms.
//!
//! A [`HarmonicSum`] is the closed-form currency of the perturbative path:
//! coupling matrices are harmonic sums, and their products with complex
//! exponentials integrate in closed form.  A [`Waveform`] is what trajectories
//! and metric perturbations are built from; it is either a harmonic sum or an
//! arbitrary closure differentiated numerically.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smooth switching window multiplying every harmonic of a sum.
///
/// Enveloped drives start and end with static boundaries, which is what
/// gives the Bogoliubov coefficients their particle interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Envelope {
    /// No window: the harmonics extend over all times.
    #[default]
    Constant,
    /// Raised cosine `sin²(π(t − start)/duration)` on `[start, start + duration]`,
    /// zero outside.  Continuous with continuous first derivative.
    Hann { start: f64, duration: f64 },
    /// Gaussian `exp(−(t − center)²/(2 width²))`.
    Gaussian { center: f64, width: f64 },
}

impl Envelope {
    /// Checks that the window parameters are finite and positive.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Envelope::Constant => Ok(()),
            Envelope::Hann { start, duration } => {
                if start.is_finite() && duration.is_finite() && duration > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "raised-cosine window needs a finite start and positive duration, got ({start}, {duration})"
                    )))
                }
            }
            Envelope::Gaussian { center, width } => {
                if center.is_finite() && width.is_finite() && width > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "Gaussian window needs a finite center and positive width, got ({center}, {width})"
                    )))
                }
            }
        }
    }

    /// Window value `w(t)`.
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Envelope::Constant => 1.0,
            Envelope::Hann { start, duration } => {
                let u = (t - start) / duration;
                if (0.0..=1.0).contains(&u) {
                    (std::f64::consts::PI * u).sin().powi(2)
                } else {
                    0.0
                }
            }
            Envelope::Gaussian { center, width } => {
                let s = (t - center) / width;
                (-0.5 * s * s).exp()
            }
        }
    }

    /// First derivative `w'(t)`.
    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            Envelope::Constant => 0.0,
            Envelope::Hann { start, duration } => {
                let u = (t - start) / duration;
                if (0.0..=1.0).contains(&u) {
                    std::f64::consts::PI / duration * (2.0 * std::f64::consts::PI * u).sin()
                } else {
                    0.0
                }
            }
            Envelope::Gaussian { center, width } => {
                let d = t - center;
                -d / (width * width) * self.value(t)
            }
        }
    }

    /// Second derivative `w''(t)` (one-sided limits at the raised-cosine edges
    /// are resolved towards the interior).
    pub fn second_derivative(&self, t: f64) -> f64 {
        match *self {
            Envelope::Constant => 0.0,
            Envelope::Hann { start, duration } => {
                let u = (t - start) / duration;
                if (0.0..=1.0).contains(&u) {
                    let k = std::f64::consts::PI / duration;
                    2.0 * k * k * (2.0 * std::f64::consts::PI * u).cos()
                } else {
                    0.0
                }
            }
            Envelope::Gaussian { center, width } => {
                let d = t - center;
                let w2 = width * width;
                (d * d / (w2 * w2) - 1.0 / w2) * self.value(t)
            }
        }
    }

    /// Closed interval outside of which the window vanishes identically.
    pub fn support(&self) -> Option<(f64, f64)> {
        match *self {
            Envelope::Hann { start, duration } => Some((start, start + duration)),
            _ => None,
        }
    }

    /// `true` if the window is integrable over the whole real line.
    pub fn is_integrable(&self) -> bool {
        !matches!(self, Envelope::Constant)
    }

    /// `∫_{t0}^{tf} w(t) e^{iνt} dt` in closed form, when one exists.
    ///
    /// Returns `None` for the Gaussian window on a finite interval (the
    /// closed form would need the complex error function).
    pub fn exp_integral(&self, nu: f64, t0: f64, tf: f64) -> Option<Complex64> {
        match *self {
            Envelope::Constant => Some(exp_integral(nu, t0, tf)),
            Envelope::Hann { start, duration } => {
                let a = t0.max(start);
                let b = tf.min(start + duration);
                Some(hann_exp_integral(nu, start, duration, a, b))
            }
            Envelope::Gaussian { .. } => None,
        }
    }

    /// `∫_{−∞}^{∞} w(t) e^{iνt} dt`; `None` for the non-integrable constant window.
    pub fn fourier_integral(&self, nu: f64) -> Option<Complex64> {
        match *self {
            Envelope::Constant => None,
            Envelope::Hann { start, duration } => Some(hann_exp_integral(
                nu,
                start,
                duration,
                start,
                start + duration,
            )),
            Envelope::Gaussian { center, width } => {
                let amp = width * (2.0 * std::f64::consts::PI).sqrt() * (-0.5 * width * width * nu * nu).exp();
                Some(Complex64::from_polar(amp, nu * center))
            }
        }
    }
}

/// `sin(x)/x`, accurate near zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `∫_a^b e^{iνt} dt`, stable for small `ν(b − a)`; zero for `b ≤ a`.
pub fn exp_integral(nu: f64, a: f64, b: f64) -> Complex64 {
    if b <= a {
        return Complex64::new(0.0, 0.0);
    }
    let len = b - a;
    let mid = 0.5 * (a + b);
    Complex64::from_polar(len * sinc(0.5 * nu * len), nu * mid)
}

/// Raised-cosine window integral over `[a, b] ⊂ [start, start + duration]`,
/// using `sin²(κ(t−s)/2) = ½ − ¼e^{iκ(t−s)} − ¼e^{−iκ(t−s)}` with `κ = 2π/duration`.
fn hann_exp_integral(nu: f64, start: f64, duration: f64, a: f64, b: f64) -> Complex64 {
    if b <= a {
        return Complex64::new(0.0, 0.0);
    }
    let kappa = 2.0 * std::f64::consts::PI / duration;
    let phase = Complex64::from_polar(1.0, -kappa * start);
    0.5 * exp_integral(nu, a, b)
        - 0.25 * phase * exp_integral(nu + kappa, a, b)
        - 0.25 * phase.conj() * exp_integral(nu - kappa, a, b)
}

/// Trigonometric form of a harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseForm {
    Sin,
    Cos,
}

/// One term `a · sin(ωt)` or `a · cos(ωt)` with complex amplitude `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub amplitude: Complex64,
    pub frequency: f64,
    pub form: PhaseForm,
}

impl Harmonic {
    /// `a sin(ωt)`.
    pub fn sin(amplitude: Complex64, frequency: f64) -> Self {
        Self { amplitude, frequency, form: PhaseForm::Sin }
    }

    /// `a cos(ωt)`.
    pub fn cos(amplitude: Complex64, frequency: f64) -> Self {
        Self { amplitude, frequency, form: PhaseForm::Cos }
    }

    fn basis(&self, t: f64) -> (f64, f64, f64) {
        let w = self.frequency;
        let (s, c) = (w * t).sin_cos();
        match self.form {
            PhaseForm::Sin => (s, w * c, -w * w * s),
            PhaseForm::Cos => (c, -w * s, -w * w * c),
        }
    }

    /// The harmonic as `c₊ e^{iωt} + c₋ e^{−iωt}`.
    fn exponential_coefficients(&self) -> (Complex64, Complex64) {
        match self.form {
            // sin = (e^{iωt} − e^{−iωt}) / 2i
            PhaseForm::Sin => (self.amplitude / (2.0 * I), -self.amplitude / (2.0 * I)),
            PhaseForm::Cos => (0.5 * self.amplitude, 0.5 * self.amplitude),
        }
    }
}

/// A finite sum of complex-amplitude harmonics sharing one envelope:
/// `h(t) = w(t) Σ_j a_j f_j(ω_j t)` with `f_j ∈ {sin, cos}`.
///
/// Terms are kept sorted by `(frequency, form)` and like terms are merged, so
/// each `(frequency, form)` pair occurs at most once.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct HarmonicSum {
    terms: Vec<Harmonic>,
    envelope: Envelope,
}

impl HarmonicSum {
    /// The zero sum with no window.
    pub fn zero() -> Self {
        Self::default()
    }

    /// An empty sum carrying the given window.
    pub fn with_envelope(envelope: Envelope) -> Self {
        Self { terms: Vec::new(), envelope }
    }

    /// A single harmonic without window.
    pub fn single(harmonic: Harmonic) -> Self {
        let mut s = Self::zero();
        s.push(harmonic);
        s
    }

    /// Builds a sum from terms; the frequencies must be finite and non-negative.
    pub fn from_terms(terms: impl IntoIterator<Item = Harmonic>, envelope: Envelope) -> Result<Self> {
        envelope.validate()?;
        let mut s = Self::with_envelope(envelope);
        for h in terms {
            if !h.frequency.is_finite() || h.frequency < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "harmonic frequencies must be finite and non-negative, got {}",
                    h.frequency
                )));
            }
            if !(h.amplitude.re.is_finite() && h.amplitude.im.is_finite()) {
                return Err(Error::InvalidArgument("harmonic amplitude is not finite".into()));
            }
            s.push(h);
        }
        Ok(s)
    }

    /// Adds one harmonic, merging it with a like term if present.
    ///
    /// Negative frequencies are folded onto their absolute value; `sin(0·t)`
    /// terms are dropped since they vanish identically.
    pub fn push(&mut self, mut h: Harmonic) {
        if h.frequency < 0.0 {
            h.frequency = -h.frequency;
            if h.form == PhaseForm::Sin {
                h.amplitude = -h.amplitude;
            }
        }
        if h.frequency == 0.0 && h.form == PhaseForm::Sin {
            return;
        }
        let key = (h.frequency, h.form);
        match self
            .terms
            .binary_search_by(|t| (t.frequency, t.form).partial_cmp(&key).expect("finite frequencies"))
        {
            Ok(i) => self.terms[i].amplitude += h.amplitude,
            Err(i) => self.terms.insert(i, h),
        }
    }

    /// Terms in ascending `(frequency, form)` order.
    pub fn terms(&self) -> &[Harmonic] {
        &self.terms
    }

    /// The shared window.
    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    /// Replaces the window.
    pub fn set_envelope(&mut self, envelope: Envelope) {
        self.envelope = envelope;
    }

    /// `true` if no term carries a nonzero amplitude.
    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.amplitude == Complex64::new(0.0, 0.0))
    }

    /// Amplitude of the term with the given frequency and form (zero if absent).
    pub fn amplitude(&self, frequency: f64, form: PhaseForm) -> Complex64 {
        self.terms
            .iter()
            .find(|t| t.frequency == frequency && t.form == form)
            .map(|t| t.amplitude)
            .unwrap_or_default()
    }

    /// Largest term modulus.
    pub fn max_amplitude(&self) -> f64 {
        self.terms.iter().map(|t| t.amplitude.norm()).fold(0.0, f64::max)
    }

    /// Drops terms with `|a| ≤ tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|t| t.amplitude.norm() > tol);
    }

    /// Multiplies every amplitude by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut s = self.clone();
        for t in &mut s.terms {
            t.amplitude *= c;
        }
        s
    }

    /// Complex conjugate of every amplitude (the sum of a real waveform is
    /// unchanged).
    pub fn conj(&self) -> Self {
        let mut s = self.clone();
        for t in &mut s.terms {
            t.amplitude = t.amplitude.conj();
        }
        s
    }

    /// Sum of two harmonic sums; the windows must agree (an empty sum adopts
    /// the other's window).
    pub fn try_add(&self, other: &HarmonicSum) -> Result<HarmonicSum> {
        let envelope = if self.terms.is_empty() {
            other.envelope
        } else if other.terms.is_empty() || self.envelope == other.envelope {
            self.envelope
        } else {
            return Err(Error::UnsupportedSpec(
                "cannot add harmonic sums with different windows".into(),
            ));
        };
        let mut s = self.clone();
        s.envelope = envelope;
        for &t in &other.terms {
            s.push(t);
        }
        Ok(s)
    }

    /// `h(t)`.
    pub fn eval(&self, t: f64) -> Complex64 {
        let w = self.envelope.value(t);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for h in &self.terms {
            acc += h.amplitude * h.basis(t).0;
        }
        acc * w
    }

    /// `h'(t)`.
    pub fn derivative(&self, t: f64) -> Complex64 {
        let (w, dw) = (self.envelope.value(t), self.envelope.derivative(t));
        let mut acc = Complex64::new(0.0, 0.0);
        for h in &self.terms {
            let (f, df, _) = h.basis(t);
            acc += h.amplitude * (dw * f + w * df);
        }
        acc
    }

    /// `h''(t)`.
    pub fn second_derivative(&self, t: f64) -> Complex64 {
        let e = &self.envelope;
        let (w, dw, ddw) = (e.value(t), e.derivative(t), e.second_derivative(t));
        let mut acc = Complex64::new(0.0, 0.0);
        for h in &self.terms {
            let (f, df, ddf) = h.basis(t);
            acc += h.amplitude * (ddw * f + 2.0 * dw * df + w * ddf);
        }
        acc
    }

    /// Highest frequency present (zero for an empty sum).
    pub fn max_frequency(&self) -> f64 {
        self.terms.iter().map(|t| t.frequency).fold(0.0, f64::max)
    }

    /// `∫_{t0}^{tf} h(t) e^{iνt} dt`.
    ///
    /// Closed form for the constant and raised-cosine windows; for the
    /// Gaussian window on a finite interval a composite Gauss-Legendre rule
    /// resolving every oscillation is used.
    pub fn integrate_exp(&self, nu: f64, t0: f64, tf: f64) -> Complex64 {
        if tf <= t0 || self.terms.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let closed = self.envelope.exp_integral(0.0, t0, tf).is_some();
        if closed {
            for h in &self.terms {
                let (cp, cm) = h.exponential_coefficients();
                let ip = self.envelope.exp_integral(nu + h.frequency, t0, tf).expect("closed form");
                let im = self.envelope.exp_integral(nu - h.frequency, t0, tf).expect("closed form");
                acc += cp * ip + cm * im;
            }
            return acc;
        }
        // Gaussian window on a finite interval: clip to ±12 widths and
        // integrate numerically, resolving the fastest oscillation.
        let (a, b) = match self.envelope {
            Envelope::Gaussian { center, width } => (t0.max(center - 12.0 * width), tf.min(center + 12.0 * width)),
            _ => (t0, tf),
        };
        if b <= a {
            return acc;
        }
        let rule = GaussLegendre::new(32).expect("static rule");
        let fastest = nu.abs() + self.max_frequency() + 1.0 / self.min_width();
        let panels = (((b - a) * fastest / std::f64::consts::PI).ceil() as usize).clamp(4, 200_000);
        let step = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + p as f64 * step;
            let (xs, ws) = rule.mapped(lo, lo + step);
            for (&x, &w) in xs.iter().zip(&ws) {
                acc += w * self.eval(x) * Complex64::from_polar(1.0, nu * x);
            }
        }
        acc
    }

    fn min_width(&self) -> f64 {
        match self.envelope {
            Envelope::Gaussian { width, .. } => width,
            Envelope::Hann { duration, .. } => duration,
            Envelope::Constant => f64::INFINITY,
        }
    }

    /// `∫_{−∞}^{∞} h(t) e^{iνt} dt`; requires an integrable window.
    pub fn fourier_exp(&self, nu: f64) -> Result<Complex64> {
        if !self.envelope.is_integrable() {
            if self.is_zero() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            return Err(Error::UnsupportedSpec(
                "an infinite sinusoid has no Fourier transform; supply a Gaussian or raised-cosine window".into(),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for h in &self.terms {
            let (cp, cm) = h.exponential_coefficients();
            let ip = self.envelope.fourier_integral(nu + h.frequency).expect("integrable");
            let im = self.envelope.fourier_integral(nu - h.frequency).expect("integrable");
            acc += cp * ip + cm * im;
        }
        Ok(acc)
    }
}

/// Shared closure type for arbitrary real waveforms.
pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real scalar function of time.
///
/// Harmonic waveforms carry analytic derivatives and closed-form Fourier
/// data; custom closures are differentiated by fourth-order central
/// differences with a configurable step.
#[derive(Clone)]
pub enum Waveform {
    /// Real part of a harmonic sum (amplitudes are normally real).
    Harmonic(HarmonicSum),
    /// Arbitrary closure.
    Custom { f: TimeFn, step: f64, label: String },
}

impl fmt::Debug for Waveform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Waveform::Harmonic(h) => f.debug_tuple("Harmonic").field(h).finish(),
            Waveform::Custom { step, label, .. } => f
                .debug_struct("Custom")
                .field("label", label)
                .field("step", step)
                .finish_non_exhaustive(),
        }
    }
}

impl Waveform {
    /// The identically zero waveform.
    pub fn zero() -> Self {
        Waveform::Harmonic(HarmonicSum::zero())
    }

    /// `amplitude · sin(ωt)` under the given window.
    pub fn sine(amplitude: f64, frequency: f64, envelope: Envelope) -> Self {
        let mut h = HarmonicSum::with_envelope(envelope);
        h.push(Harmonic::sin(Complex64::new(amplitude, 0.0), frequency));
        Waveform::Harmonic(h)
    }

    /// Wraps a closure; derivatives use central differences with `step`.
    pub fn custom(label: impl Into<String>, step: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Waveform::Custom { f: Arc::new(f), step, label: label.into() }
    }

    /// The harmonic decomposition, if the waveform has one.
    pub fn as_harmonic(&self) -> Option<&HarmonicSum> {
        match self {
            Waveform::Harmonic(h) => Some(h),
            Waveform::Custom { .. } => None,
        }
    }

    /// `true` if the waveform is the zero harmonic sum.
    pub fn is_zero(&self) -> bool {
        matches!(self, Waveform::Harmonic(h) if h.is_zero())
    }

    /// Multiplies the waveform by a real constant.
    pub fn scaled(&self, c: f64) -> Self {
        match self {
            Waveform::Harmonic(h) => Waveform::Harmonic(h.scaled(Complex64::new(c, 0.0))),
            Waveform::Custom { f, step, label } => {
                let f = f.clone();
                Waveform::Custom { f: Arc::new(move |t| c * f(t)), step: *step, label: label.clone() }
            }
        }
    }

    /// `f(t)`.
    pub fn value(&self, t: f64) -> f64 {
        match self {
            Waveform::Harmonic(h) => h.eval(t).re,
            Waveform::Custom { f, .. } => f(t),
        }
    }

    /// `f(t)`, failing if the value is not finite.
    pub fn try_value(&self, t: f64) -> Result<f64> {
        let v = self.value(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { t, reason: format!("waveform evaluated to {v}") })
        }
    }

    /// `f'(t)`.
    pub fn derivative(&self, t: f64) -> f64 {
        match self {
            Waveform::Harmonic(h) => h.derivative(t).re,
            Waveform::Custom { f, step, .. } => central_first(|s| f(s), t, *step),
        }
    }

    /// `f''(t)`.
    pub fn second_derivative(&self, t: f64) -> f64 {
        match self {
            Waveform::Harmonic(h) => h.second_derivative(t).re,
            Waveform::Custom { f, step, .. } => central_second(|s| f(s), t, *step),
        }
    }
}

/// Fourth-order central first derivative.
pub fn central_first<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h)
}

/// Fourth-order central second derivative.
pub fn central_second<F: Fn(f64) -> f64>(f: F, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2.0 * h)) / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Brute-force `∫ h e^{iνt}` with a fine composite rule.
    fn brute(h: &HarmonicSum, nu: f64, a: f64, b: f64) -> Complex64 {
        let rule = GaussLegendre::new(20).unwrap();
        let panels = 4000;
        let step = (b - a) / panels as f64;
        let mut acc = c(0.0, 0.0);
        for p in 0..panels {
            let lo = a + p as f64 * step;
            let (xs, ws) = rule.mapped(lo, lo + step);
            for (&x, &w) in xs.iter().zip(&ws) {
                acc += w * h.eval(x) * Complex64::from_polar(1.0, nu * x);
            }
        }
        acc
    }

    #[test]
    fn like_terms_merge_and_sort() {
        let mut h = HarmonicSum::zero();
        h.push(Harmonic::sin(c(1.0, 0.0), 3.0));
        h.push(Harmonic::cos(c(2.0, 0.0), 1.0));
        h.push(Harmonic::sin(c(0.5, 1.0), 3.0));
        h.push(Harmonic::sin(c(9.0, 0.0), 0.0));
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[0].frequency, 1.0);
        assert_eq!(h.amplitude(3.0, PhaseForm::Sin), c(1.5, 1.0));
    }

    #[test]
    fn negative_frequency_folds() {
        let mut h = HarmonicSum::zero();
        h.push(Harmonic::sin(c(1.0, 0.0), -2.0));
        assert_eq!(h.amplitude(2.0, PhaseForm::Sin), c(-1.0, 0.0));
        assert!((h.eval(0.3).re - (-2.0f64 * 0.3).sin()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_integral_matches_quadrature() {
        let mut h = HarmonicSum::zero();
        h.push(Harmonic::sin(c(0.3, -1.2), 2.5));
        h.push(Harmonic::cos(c(1.0, 0.4), 0.7));
        h.push(Harmonic::cos(c(-0.2, 0.0), 0.0));
        for nu in [-2.5, -1.0, 0.0, 0.7, 3.3] {
            let exact = h.integrate_exp(nu, -1.3, 7.9);
            let num = brute(&h, nu, -1.3, 7.9);
            assert!((exact - num).norm() < 1e-10, "nu = {nu}: {exact} vs {num}");
        }
    }

    #[test]
    fn hann_window_integral_matches_quadrature() {
        let env = Envelope::Hann { start: 0.5, duration: 6.0 };
        let h = HarmonicSum::from_terms([Harmonic::sin(c(1.0, 0.0), 3.0)], env).unwrap();
        for nu in [-3.0, -2.0, 0.0, 1.0] {
            // window straddling the support on both sides
            let exact = h.integrate_exp(nu, 2.0, 10.0);
            let num = brute(&h, nu, 2.0, 10.0);
            assert!((exact - num).norm() < 1e-10, "nu = {nu}");
            let full = h.fourier_exp(nu).unwrap();
            let num_full = brute(&h, nu, 0.5, 6.5);
            assert!((full - num_full).norm() < 1e-10);
        }
    }

    #[test]
    fn gaussian_integrals() {
        let env = Envelope::Gaussian { center: 0.0, width: 2.0 };
        let h = HarmonicSum::from_terms([Harmonic::sin(c(0.7, 0.0), 1.5)], env).unwrap();
        let nu = -1.5;
        let finite = h.integrate_exp(nu, -30.0, 30.0);
        let full = h.fourier_exp(nu).unwrap();
        let num = brute(&h, nu, -30.0, 30.0);
        assert!((finite - num).norm() < 1e-10);
        assert!((full - num).norm() < 1e-10);
        // resonant modulus: |a| σ √(π/2) (1 − e^{−2Ω²σ²})
        let expected = 0.7 * 2.0 * (std::f64::consts::PI / 2.0).sqrt() * (1.0 - (-2.0f64 * 2.25 * 4.0).exp());
        assert!((full.norm() - expected).abs() < 1e-12);
    }

    #[test]
    fn infinite_sinusoid_has_no_transform() {
        let h = HarmonicSum::single(Harmonic::sin(c(1.0, 0.0), 1.0));
        assert!(matches!(h.fourier_exp(1.0), Err(Error::UnsupportedSpec(_))));
        assert_eq!(HarmonicSum::zero().fourier_exp(1.0).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn analytic_derivatives_match_differences() {
        let env = Envelope::Hann { start: 0.0, duration: 5.0 };
        let h = HarmonicSum::from_terms(
            [Harmonic::sin(c(1.0, 0.0), 2.0), Harmonic::cos(c(0.5, 0.0), 0.3)],
            env,
        )
        .unwrap();
        let t = 1.7;
        let d = central_first(|s| h.eval(s).re, t, 1e-3);
        let dd = central_second(|s| h.eval(s).re, t, 1e-3);
        assert!((h.derivative(t).re - d).abs() < 1e-9);
        assert!((h.second_derivative(t).re - dd).abs() < 1e-6);
        let g = Envelope::Gaussian { center: 0.4, width: 1.1 };
        assert!((g.derivative(t) - central_first(|s| g.value(s), t, 1e-3)).abs() < 1e-10);
        assert!((g.second_derivative(t) - central_second(|s| g.value(s), t, 1e-3)).abs() < 1e-7);
    }

    #[test]
    fn custom_waveform_differentiates_numerically() {
        let w = Waveform::custom("cubic", 1e-3, |t| t * t * t);
        assert!((w.derivative(2.0) - 12.0).abs() < 1e-9);
        assert!((w.second_derivative(2.0) - 12.0).abs() < 1e-6);
        let bad = Waveform::custom("pole", 1e-3, |t| 1.0 / t);
        assert!(bad.try_value(0.0).is_err());
    }

    #[test]
    fn adding_mismatched_windows_fails() {
        let a = HarmonicSum::from_terms([Harmonic::sin(c(1.0, 0.0), 1.0)], Envelope::Constant).unwrap();
        let b = HarmonicSum::from_terms(
            [Harmonic::sin(c(1.0, 0.0), 1.0)],
            Envelope::Gaussian { center: 0.0, width: 1.0 },
        )
        .unwrap();
        assert!(a.try_add(&b).is_err());
        assert_eq!(a.try_add(&HarmonicSum::zero()).unwrap(), a);
    }
}

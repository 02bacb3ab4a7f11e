//! Series algebra: perturbative coefficients, the Borel transform and its
//! inverse, classic Watson expansion coefficients, truncated evaluation.
//!
//! A [`PowerSeries`] is a dense, finite block of complex coefficients whose
//! first entry sits at power `start_index`. Perturbative series start at the
//! first power; Borel transforms start at the zeroth.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{gamma_positive, ln_factorial, ln_gamma};

/// Finite power series with a starting index.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    start_index: usize,
}

impl PowerSeries {
    pub fn new(start_index: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("series must be non-empty".into()));
        }
        if let Some(bad) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Parameter(format!(
                "series coefficient {bad} is not finite"
            )));
        }
        Ok(Self { coeffs, start_index })
    }

    pub fn from_real(start_index: usize, coeffs: &[f64]) -> Result<Self> {
        Self::new(
            start_index,
            coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one coefficient
    }

    /// Highest power carried by the series.
    pub fn max_order(&self) -> usize {
        self.start_index + self.coeffs.len() - 1
    }

    /// Coefficient of z^power (zero outside the stored block).
    pub fn coeff_at(&self, power: usize) -> Complex64 {
        if power < self.start_index || power > self.max_order() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[power - self.start_index]
        }
    }

    /// Full-precision Horner evaluation of every stored term.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powu(self.start_index as u32)
    }
}

/// Parameters of the classic Watson integral kernel e^{-lambda x^alpha} x^{beta-1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WatsonParams {
    alpha: f64,
    beta: f64,
}

impl WatsonParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(Error::Parameter(format!(
                "Watson parameters require alpha > 0 and beta > 0, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// One term of a large-lambda expansion: `coefficient * lambda^{-exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WatsonTerm {
    pub exponent: f64,
    pub coefficient: Complex64,
}

/// Scale factor beta0^n * n! used by the Borel transform, with a log-space
/// fallback once the direct product overflows (n! alone does past 170).
fn borel_scale(n: usize, beta0: f64, running: &mut f64) -> f64 {
    if n > 0 {
        *running *= beta0 * n as f64;
    }
    if running.is_finite() && *running != 0.0 {
        *running
    } else {
        (n as f64 * beta0.ln() + ln_factorial(n)).exp()
    }
}

/// Borel transform b_n = D_{n+1} / (beta0^n n!) of a perturbative series
/// starting at the first power.
pub fn borel_transform(d: &PowerSeries, beta0: f64) -> Result<PowerSeries> {
    if d.start_index() != 1 {
        return Err(Error::Parameter(format!(
            "perturbative series must start at power 1, got start_index {}",
            d.start_index()
        )));
    }
    if !(beta0 > 0.0) {
        return Err(Error::Parameter(format!("beta0 must be positive, got {beta0}")));
    }
    let mut running = 1.0f64;
    let mut out = Vec::with_capacity(d.len());
    for (n, &dn) in d.coeffs().iter().enumerate() {
        let scale = borel_scale(n, beta0, &mut running);
        let b = dn / scale;
        if !b.re.is_finite() || !b.im.is_finite() {
            return Err(Error::Range(format!(
                "Borel coefficient overflow at order {n}"
            )));
        }
        out.push(b);
    }
    PowerSeries::new(0, out)
}

/// Inverse of [`borel_transform`]: D_{n+1} = b_n * beta0^n * n!.
pub fn inverse_borel(b: &PowerSeries, beta0: f64) -> Result<PowerSeries> {
    if b.start_index() != 0 {
        return Err(Error::Parameter(format!(
            "Borel series must start at power 0, got start_index {}",
            b.start_index()
        )));
    }
    if !(beta0 > 0.0) {
        return Err(Error::Parameter(format!("beta0 must be positive, got {beta0}")));
    }
    let mut running = 1.0f64;
    let mut out = Vec::with_capacity(b.len());
    for (n, &bn) in b.coeffs().iter().enumerate() {
        let scale = borel_scale(n, beta0, &mut running);
        let d = bn * scale;
        if !d.re.is_finite() || !d.im.is_finite() {
            return Err(Error::Range(format!(
                "perturbative coefficient overflow at order {n}"
            )));
        }
        out.push(d);
    }
    PowerSeries::new(1, out)
}

/// Expansion terms of the classic Watson integral: the k-th term carries
/// exponent (k+beta)/alpha and coefficient (1/alpha) Gamma((k+beta)/alpha)
/// f^(k)(0) / k!.
///
/// The Gamma-over-factorial ratio is evaluated in log space, so at
/// alpha = beta = 1 it cancels bit-exactly and the coefficient reduces to
/// f^(k)(0).
pub fn watson_coefficients(
    f_derivs: &[Complex64],
    params: WatsonParams,
) -> Result<Vec<WatsonTerm>> {
    if f_derivs.is_empty() {
        return Err(Error::Parameter("need at least one derivative".into()));
    }
    if let Some(bad) = f_derivs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Parameter(format!("derivative {bad} is not finite")));
    }
    let alpha = params.alpha();
    let beta = params.beta();
    // keep gamma's positive-argument contract visible even though k>=0,
    // alpha,beta>0 already guarantee it
    gamma_positive(beta / alpha)?;
    let mut terms = Vec::with_capacity(f_derivs.len());
    for (k, &dk) in f_derivs.iter().enumerate() {
        let exponent = (k as f64 + beta) / alpha;
        let ln_scale = ln_gamma(exponent) - ln_factorial(k) - alpha.ln();
        let scale = ln_scale.exp();
        if !scale.is_finite() {
            return Err(Error::Range(format!(
                "Watson coefficient overflow at k = {k} (ln scale {ln_scale:.1})"
            )));
        }
        terms.push(WatsonTerm {
            exponent,
            coefficient: dk * scale,
        });
    }
    Ok(terms)
}

/// Partial sum of all terms with power <= n, via Horner evaluation.
pub fn evaluate_truncated(s: &PowerSeries, z: Complex64, n: usize) -> Result<Complex64> {
    if n > s.max_order() {
        return Err(Error::Range(format!(
            "truncation order {n} exceeds highest available order {}",
            s.max_order()
        )));
    }
    if n < s.start_index() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let terms = n - s.start_index() + 1;
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in s.coeffs()[..terms].iter().rev() {
        acc = acc * z + c;
    }
    Ok(acc * z.powu(s.start_index() as u32))
}

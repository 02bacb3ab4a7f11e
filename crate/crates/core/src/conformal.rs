//! Conformal mapping of the two-cut Borel plane onto the unit disc and
//! re-expansion of series in powers of the mapped variable.
//!
//! For cuts along u >= q and u <= -p the map is
//!
//!   w(u) = (sqrt(1 + u/p) - sqrt(1 - u/q)) / (sqrt(1 + u/p) + sqrt(1 - u/q))
//!
//! with principal square roots. It sends 0 to 0, the cut plane into |w| < 1,
//! and the cut endpoints -p, q to -1, +1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{evaluate_truncated, PowerSeries};

/// Two-cut disc map. Cut positions default to the renormalon layout
/// (-1 for the left cut, +2 for the right one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalMap {
    cut_negative: f64,
    cut_positive: f64,
}

impl Default for ConformalMap {
    fn default() -> Self {
        Self {
            cut_negative: -1.0,
            cut_positive: 2.0,
        }
    }
}

impl ConformalMap {
    pub fn new(cut_negative: f64, cut_positive: f64) -> Result<Self> {
        if !(cut_negative < 0.0) || !(cut_positive > 0.0) {
            return Err(Error::Parameter(format!(
                "cuts must satisfy cut_negative < 0 < cut_positive, got {cut_negative}, {cut_positive}"
            )));
        }
        Ok(Self {
            cut_negative,
            cut_positive,
        })
    }

    pub fn cut_negative(&self) -> f64 {
        self.cut_negative
    }

    pub fn cut_positive(&self) -> f64 {
        self.cut_positive
    }

    fn on_cut(&self, u: Complex64) -> bool {
        u.im == 0.0 && (u.re >= self.cut_positive || u.re <= self.cut_negative)
    }

    /// Map a point of the cut plane into the unit disc.
    pub fn map_w(&self, u: Complex64) -> Result<Complex64> {
        if self.on_cut(u) {
            return Err(Error::Branch(format!(
                "u = {u} lies on a cut (u >= {} or u <= {})",
                self.cut_positive, self.cut_negative
            )));
        }
        let p = -self.cut_negative;
        let q = self.cut_positive;
        let a = (Complex64::new(1.0, 0.0) + u / p).sqrt();
        let b = (Complex64::new(1.0, 0.0) - u / q).sqrt();
        Ok((a - b) / (a + b))
    }

    /// Inverse map: u = 4 p q w / (q (1-w)^2 + p (1+w)^2), valid on |w| < 1.
    pub fn map_u(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() >= 1.0 {
            return Err(Error::Range(format!(
                "|w| = {} is outside the open unit disc",
                w.norm()
            )));
        }
        let p = -self.cut_negative;
        let q = self.cut_positive;
        let one = Complex64::new(1.0, 0.0);
        let den = q * (one - w) * (one - w) + p * (one + w) * (one + w);
        Ok(4.0 * p * q * w / den)
    }

    /// Taylor coefficients of u(w) around w = 0, orders 0..=n.
    pub fn u_series(&self, n: usize) -> Vec<Complex64> {
        let p = -self.cut_negative;
        let q = self.cut_positive;
        // u(w) = 4pq w / ((p+q) + 2(p-q) w + (p+q) w^2)
        let mut num = vec![Complex64::new(0.0, 0.0); n + 1];
        if n >= 1 {
            num[1] = Complex64::new(4.0 * p * q, 0.0);
        }
        let mut den = vec![Complex64::new(0.0, 0.0); n + 1];
        den[0] = Complex64::new(p + q, 0.0);
        if n >= 1 {
            den[1] = Complex64::new(2.0 * (p - q), 0.0);
        }
        if n >= 2 {
            den[2] = Complex64::new(p + q, 0.0);
        }
        divide_series(&num, &den, n)
    }

    /// Taylor coefficients of the direct map w(u) around u = 0, obtained by
    /// reversion of [`Self::u_series`].
    pub fn w_series(&self, n: usize) -> Vec<Complex64> {
        revert_series(&self.u_series(n), n)
    }
}

/// Truncated product of two coefficient vectors (index = power).
pub(crate) fn mul_series(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for (i, &ai) in a.iter().enumerate().take(n + 1) {
        if ai == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Truncated quotient num/den with den[0] != 0.
pub(crate) fn divide_series(num: &[Complex64], den: &[Complex64], n: usize) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut rem: Vec<Complex64> = (0..=n).map(|i| *num.get(i).unwrap_or(&zero)).collect();
    let mut out = vec![zero; n + 1];
    for i in 0..=n {
        let qi = rem[i] / den[0];
        out[i] = qi;
        for j in 0..=(n - i) {
            let dj = *den.get(j).unwrap_or(&zero);
            rem[i + j] -= qi * dj;
        }
    }
    out
}

/// Horner composition outer(inner(x)) truncated at order n; inner must have
/// zero constant term.
pub(crate) fn compose_series(outer: &[Complex64], inner: &[Complex64], n: usize) -> Vec<Complex64> {
    debug_assert!(inner.first().map_or(true, |c| c.norm() == 0.0));
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = vec![zero; n + 1];
    for &ck in outer.iter().take(n + 1).rev() {
        acc = mul_series(&acc, inner, n);
        acc[0] += ck;
    }
    acc
}

/// Reversion: given u(w) with u_0 = 0, u_1 != 0, return w(u) with
/// u(w(u)) = u through order n. Solved order by order from the composition
/// defect.
pub(crate) fn revert_series(u_of_w: &[Complex64], n: usize) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let u1 = u_of_w.get(1).copied().unwrap_or(zero);
    debug_assert!(u1.norm() > 0.0, "reversion needs a nonzero linear term");
    let mut w = vec![zero; n + 1];
    if n >= 1 {
        w[1] = Complex64::new(1.0, 0.0) / u1;
    }
    for order in 2..=n {
        let composed = compose_series(u_of_w, &w, order);
        // defect at this order: u(w(u)) should be exactly u
        let defect = composed[order];
        w[order] = -defect / u1;
    }
    w
}

/// Re-expand a series in u as a series in w = w(u): coefficients of
/// B(u(w)) = sum c_n w^n through order n.
pub fn recompose(b: &PowerSeries, map: &ConformalMap, n: usize) -> Result<PowerSeries> {
    if n > b.max_order() {
        return Err(Error::Range(format!(
            "recomposition order {n} exceeds available order {}",
            b.max_order()
        )));
    }
    let coeffs: Vec<Complex64> = (0..=n).map(|k| b.coeff_at(k)).collect();
    let u_of_w = map.u_series(n);
    PowerSeries::new(0, compose_series(&coeffs, &u_of_w, n))
}

/// Partial sum sum_{k<=n} c_k w(u)^k at a cut-plane point.
pub fn evaluate_conformal(
    c: &PowerSeries,
    u: Complex64,
    map: &ConformalMap,
    n: usize,
) -> Result<Complex64> {
    let w = map.map_w(u)?;
    evaluate_truncated(c, w, n)
}

/// Truncation errors below this multiple of max(1, |exact|) are treated as
/// double-precision noise and excluded from rate fits.
pub const RATE_FIT_NOISE_FLOOR: f64 = 1e-13;

/// One row of a convergence comparison: truncation errors of the u- and
/// w-expansions at the same order.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub order: usize,
    pub err_u: f64,
    pub err_w: f64,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Geometric rate fitted to the u-series errors (> 1 means divergence).
    pub rate_u: f64,
    /// Geometric rate fitted to the w-series errors.
    pub rate_w: f64,
    /// |w(u_probe)|, the predicted w-series rate.
    pub w_abs: f64,
}

/// Least-squares geometric rate exp(slope of ln err vs order), fitted on the
/// second half of the rows whose error is above the noise floor.
fn fit_rate(points: &[(usize, f64)], floor: f64) -> f64 {
    let valid: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, e)| *e > floor)
        .map(|&(n, e)| (n as f64, e.ln()))
        .collect();
    if valid.len() < 4 {
        return f64::NAN;
    }
    let window = &valid[valid.len() / 2..];
    let m = window.len() as f64;
    let sx: f64 = window.iter().map(|(x, _)| x).sum();
    let sy: f64 = window.iter().map(|(_, y)| y).sum();
    let sxx: f64 = window.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = window.iter().map(|(x, y)| x * y).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    slope.exp()
}

/// Tabulate truncation errors of the u-expansion `b` and its recomposition
/// `c` against the exact value at a probe point, and fit geometric rates.
pub fn convergence_compare(
    b: &PowerSeries,
    c: &PowerSeries,
    exact: Complex64,
    u_probe: Complex64,
    map: &ConformalMap,
    orders: std::ops::RangeInclusive<usize>,
) -> Result<ConvergenceTable> {
    let w = map.map_w(u_probe)?;
    let mut rows = Vec::new();
    for n in orders {
        let su = evaluate_truncated(b, u_probe, n)?;
        let sw = evaluate_truncated(c, w, n)?;
        rows.push(ConvergenceRow {
            order: n,
            err_u: (exact - su).norm(),
            err_w: (exact - sw).norm(),
        });
    }
    let floor = RATE_FIT_NOISE_FLOOR * exact.norm().max(1.0);
    let pts_u: Vec<(usize, f64)> = rows.iter().map(|r| (r.order, r.err_u)).collect();
    let pts_w: Vec<(usize, f64)> = rows.iter().map(|r| (r.order, r.err_w)).collect();
    Ok(ConvergenceTable {
        rate_u: fit_rate(&pts_u, floor),
        rate_w: fit_rate(&pts_w, floor),
        w_abs: w.norm(),
        rows,
    })
}

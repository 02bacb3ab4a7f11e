//! Concrete Borel-plane functions: the integrands f(u) fed to the Laplace
//! engine. Each model evaluates anywhere off its singularities, exposes its
//! Taylor data at the origin, and declares where its singularities sit so
//! contours can keep clearance.

use num_complex::Complex64;

use crate::conformal::{compose_series, ConformalMap};
use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// A simple pole: strength / (location - u).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolePoint {
    pub location: Complex64,
    pub strength: Complex64,
}

/// A branch term: strength * (1 - u/branch_point)^(-exponent), principal
/// branch, cut along the ray from the branch point away from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutTerm {
    pub branch_point: Complex64,
    pub strength: Complex64,
    pub exponent: f64,
}

/// Singular locus of a model, used for contour clearance checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularSet {
    Point(Complex64),
    /// Ray from `start` to infinity in the direction start/|start|.
    Ray { start: Complex64 },
}

impl SingularSet {
    /// Euclidean distance from a point to the locus.
    pub fn distance(&self, u: Complex64) -> f64 {
        match *self {
            SingularSet::Point(p) => (u - p).norm(),
            SingularSet::Ray { start } => {
                let dir = start / start.norm();
                // coordinates of u along/across the ray
                let rel = (u - start) * dir.conj();
                if rel.re <= 0.0 {
                    (u - start).norm()
                } else {
                    rel.im.abs()
                }
            }
        }
    }
}

/// Evaluator of f(u) in the Borel plane.
#[derive(Debug, Clone, PartialEq)]
pub enum BorelFunction {
    /// Sum of simple poles.
    Rational { poles: Vec<PolePoint> },
    /// Sum of branch-cut terms.
    BranchCut { cuts: Vec<CutTerm> },
    /// A polynomial given by its coefficients (entire).
    TruncatedSeries { series: PowerSeries },
    /// Series in the mapped variable: sum c_n w(u)^n.
    ConformalSeries { series: PowerSeries, map: ConformalMap },
    /// Sum of sub-models.
    Composite(Vec<BorelFunction>),
}

impl BorelFunction {
    /// f == value everywhere.
    pub fn constant(value: f64) -> Self {
        BorelFunction::TruncatedSeries {
            series: PowerSeries::from_real(0, &[value]).expect("constant series"),
        }
    }

    /// f == 1.
    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// Single simple pole strength/(location - u). A positive real location
    /// with unit strength gives 1/(location - u).
    pub fn simple_pole(location: f64, strength: f64) -> Result<Self> {
        Self::rational(vec![PolePoint {
            location: Complex64::new(location, 0.0),
            strength: Complex64::new(strength, 0.0),
        }])
    }

    pub fn rational(poles: Vec<PolePoint>) -> Result<Self> {
        for p in &poles {
            if p.location.norm() == 0.0 {
                return Err(Error::Parameter(
                    "pole at the origin leaves no disc of holomorphy".into(),
                ));
            }
            if !p.location.is_finite() || !p.strength.is_finite() {
                return Err(Error::Parameter("pole data must be finite".into()));
            }
        }
        Ok(BorelFunction::Rational { poles })
    }

    pub fn branch_cut(cuts: Vec<CutTerm>) -> Result<Self> {
        for t in &cuts {
            if t.branch_point.norm() == 0.0 {
                return Err(Error::Parameter(
                    "branch point at the origin leaves no disc of holomorphy".into(),
                ));
            }
            if !t.branch_point.is_finite() || !t.strength.is_finite() || !t.exponent.is_finite() {
                return Err(Error::Parameter("branch term data must be finite".into()));
            }
        }
        Ok(BorelFunction::BranchCut { cuts })
    }

    pub fn truncated_series(series: PowerSeries) -> Self {
        BorelFunction::TruncatedSeries { series }
    }

    pub fn conformal_series(series: PowerSeries, map: ConformalMap) -> Self {
        BorelFunction::ConformalSeries { series, map }
    }

    pub fn composite(parts: Vec<BorelFunction>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parameter("composite model needs at least one part".into()));
        }
        Ok(BorelFunction::Composite(parts))
    }

    /// Evaluate f(u). Finite at every point with positive distance from the
    /// declared singularities.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        match self {
            BorelFunction::Rational { poles } => poles
                .iter()
                .map(|p| p.strength / (p.location - u))
                .sum(),
            BorelFunction::BranchCut { cuts } => cuts
                .iter()
                .map(|t| {
                    let base = Complex64::new(1.0, 0.0) - u / t.branch_point;
                    t.strength * base.powf(-t.exponent)
                })
                .sum(),
            BorelFunction::TruncatedSeries { series } => series.eval(u),
            BorelFunction::ConformalSeries { series, map } => {
                match map.map_w(u) {
                    Ok(w) => series.eval(w),
                    // on-cut evaluation: surface as a non-finite value rather
                    // than panic; quadrature clearance keeps contours away
                    Err(_) => Complex64::new(f64::NAN, f64::NAN),
                }
            }
            BorelFunction::Composite(parts) => parts.iter().map(|p| p.eval(u)).sum(),
        }
    }

    /// Taylor coefficients t_k = f^(k)(0)/k! for k = 0..=n.
    pub fn taylor_coeffs(&self, n: usize) -> Result<Vec<Complex64>> {
        if let Some(max) = self.max_taylor_order() {
            if n > max {
                return Err(Error::Range(format!(
                    "Taylor order {n} exceeds available order {max}"
                )));
            }
        }
        let zero = Complex64::new(0.0, 0.0);
        match self {
            BorelFunction::Rational { poles } => {
                let mut out = vec![zero; n + 1];
                for p in poles {
                    // strength/(u0 - u) = (strength/u0) sum (u/u0)^k
                    let inv = Complex64::new(1.0, 0.0) / p.location;
                    let mut term = p.strength * inv;
                    for slot in out.iter_mut() {
                        *slot += term;
                        term *= inv;
                    }
                }
                Ok(out)
            }
            BorelFunction::BranchCut { cuts } => {
                let mut out = vec![zero; n + 1];
                for t in cuts {
                    // (1 - u/u0)^(-g) = sum poch(g,k)/k! (u/u0)^k
                    let inv = Complex64::new(1.0, 0.0) / t.branch_point;
                    let mut term = t.strength;
                    for (k, slot) in out.iter_mut().enumerate() {
                        *slot += term;
                        let kf = k as f64;
                        term *= inv * ((t.exponent + kf) / (kf + 1.0));
                    }
                }
                Ok(out)
            }
            BorelFunction::TruncatedSeries { series } => {
                Ok((0..=n).map(|k| series.coeff_at(k)).collect())
            }
            BorelFunction::ConformalSeries { series, map } => {
                let w_of_u = map.w_series(n);
                let c: Vec<Complex64> = (0..=n).map(|k| series.coeff_at(k)).collect();
                Ok(compose_series(&c, &w_of_u, n))
            }
            BorelFunction::Composite(parts) => {
                let mut out = vec![zero; n + 1];
                for p in parts {
                    for (slot, v) in out.iter_mut().zip(p.taylor_coeffs(n)?) {
                        *slot += v;
                    }
                }
                Ok(out)
            }
        }
    }

    /// Derivatives f^(k)(0) for k = 0..=n.
    pub fn derivs_at_zero(&self, n: usize) -> Result<Vec<Complex64>> {
        let coeffs = self.taylor_coeffs(n)?;
        let mut fact = 1.0f64;
        let mut out = Vec::with_capacity(coeffs.len());
        for (k, c) in coeffs.into_iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            let d = c * fact;
            if !d.is_finite() {
                return Err(Error::Range(format!("derivative overflow at order {k}")));
            }
            out.push(d);
        }
        Ok(out)
    }

    /// Highest Taylor order available, None when unbounded.
    pub fn max_taylor_order(&self) -> Option<usize> {
        match self {
            BorelFunction::Rational { .. } | BorelFunction::BranchCut { .. } => None,
            BorelFunction::TruncatedSeries { series } => Some(series.max_order()),
            BorelFunction::ConformalSeries { series, .. } => Some(series.max_order()),
            BorelFunction::Composite(parts) => {
                parts.iter().filter_map(|p| p.max_taylor_order()).min()
            }
        }
    }

    /// Declared singular loci.
    pub fn singularities(&self) -> Vec<SingularSet> {
        match self {
            BorelFunction::Rational { poles } => poles
                .iter()
                .map(|p| SingularSet::Point(p.location))
                .collect(),
            BorelFunction::BranchCut { cuts } => cuts
                .iter()
                .map(|t| SingularSet::Ray {
                    start: t.branch_point,
                })
                .collect(),
            BorelFunction::TruncatedSeries { .. } => Vec::new(),
            BorelFunction::ConformalSeries { map, .. } => vec![
                SingularSet::Ray {
                    start: Complex64::new(map.cut_positive(), 0.0),
                },
                SingularSet::Ray {
                    start: Complex64::new(map.cut_negative(), 0.0),
                },
            ],
            BorelFunction::Composite(parts) => {
                parts.iter().flat_map(|p| p.singularities()).collect()
            }
        }
    }

    /// Radius of the disc of holomorphy at the origin: distance to the
    /// nearest declared singularity, infinite for entire models.
    pub fn disc_radius(&self) -> f64 {
        self.singularities()
            .iter()
            .map(|s| s.distance(Complex64::new(0.0, 0.0)))
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn euler_pole_taylor() {
        // f(u) = 1/(1+u): taylor (-1)^k, derivatives (-1)^k k!
        let f = BorelFunction::simple_pole(-1.0, -1.0).unwrap();
        assert!((f.eval(c(1.0)) - c(0.5)).norm() < 1e-15);
        let t = f.taylor_coeffs(6).unwrap();
        for (k, tk) in t.iter().enumerate() {
            let want = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((tk - c(want)).norm() < 1e-14, "t_{k} = {tk}");
        }
        let d = f.derivs_at_zero(4).unwrap();
        assert!((d[3] - c(-6.0)).norm() < 1e-12);
        assert_eq!(f.disc_radius(), 1.0);
    }

    #[test]
    fn ir_pole_taylor() {
        // f(u) = 1/(2-u): taylor 2^{-(k+1)}
        let f = BorelFunction::simple_pole(2.0, 1.0).unwrap();
        let t = f.taylor_coeffs(5).unwrap();
        for (k, tk) in t.iter().enumerate() {
            let want = 0.5f64.powi(k as i32 + 1);
            assert!((tk - c(want)).norm() < 1e-15);
        }
    }

    #[test]
    fn branch_cut_matches_binomial_series() {
        // (1 - u/2)^{-1}: same Taylor data as the simple pole 1/(2-u) scaled by 2.
        let f = BorelFunction::branch_cut(vec![CutTerm {
            branch_point: c(2.0),
            strength: c(1.0),
            exponent: 1.0,
        }])
        .unwrap();
        let pole = BorelFunction::simple_pole(2.0, 2.0).unwrap();
        let tf = f.taylor_coeffs(8).unwrap();
        let tp = pole.taylor_coeffs(8).unwrap();
        for (a, b) in tf.iter().zip(&tp) {
            assert!((a - b).norm() < 1e-13);
        }
        let u = Complex64::new(0.4, 0.8);
        assert!((f.eval(u) - pole.eval(u)).norm() < 1e-13);
    }

    #[test]
    fn branch_cut_half_power_eval() {
        // (1 - u/2)^{-1/2} at u = -2 is 1/sqrt(2)
        let f = BorelFunction::branch_cut(vec![CutTerm {
            branch_point: c(2.0),
            strength: c(1.0),
            exponent: 0.5,
        }])
        .unwrap();
        assert!((f.eval(c(-2.0)) - c(1.0 / 2.0f64.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn truncated_series_order_limit() {
        let f = BorelFunction::truncated_series(
            PowerSeries::from_real(0, &[1.0, 2.0, 3.0]).unwrap(),
        );
        assert_eq!(f.max_taylor_order(), Some(2));
        assert!(f.taylor_coeffs(2).is_ok());
        assert!(matches!(f.taylor_coeffs(3), Err(Error::Range(_))));
        assert_eq!(f.disc_radius(), f64::INFINITY);
    }

    #[test]
    fn conformal_series_taylor_roundtrip() {
        // c-series obtained from a rational model should reproduce its
        // u-Taylor data through the map and back.
        let map = ConformalMap::default();
        let base = BorelFunction::simple_pole(2.0, 1.0).unwrap();
        let n = 10;
        let b = PowerSeries::new(0, base.taylor_coeffs(n).unwrap()).unwrap();
        let cser = crate::conformal::recompose(&b, &map, n).unwrap();
        let f = BorelFunction::conformal_series(cser, map);
        let t = f.taylor_coeffs(n).unwrap();
        let want = base.taylor_coeffs(n).unwrap();
        for (k, (a, b)) in t.iter().zip(&want).enumerate() {
            assert!((a - b).norm() < 1e-10, "order {k}: {a} vs {b}");
        }
        assert_eq!(f.disc_radius(), 1.0);
    }

    #[test]
    fn composite_sums_parts() {
        let f = BorelFunction::composite(vec![
            BorelFunction::simple_pole(2.0, 1.0).unwrap(),
            BorelFunction::simple_pole(3.0, 1.0).unwrap(),
        ])
        .unwrap();
        let u = c(1.0);
        assert!((f.eval(u) - c(1.0 + 0.5)).norm() < 1e-15);
        assert_eq!(f.singularities().len(), 2);
        assert_eq!(f.disc_radius(), 2.0);
    }

    #[test]
    fn ray_distance() {
        let ray = SingularSet::Ray { start: c(2.0) };
        assert!((ray.distance(c(5.0)) - 0.0).abs() < 1e-15);
        assert!((ray.distance(Complex64::new(5.0, 0.7)) - 0.7).abs() < 1e-15);
        assert!((ray.distance(c(0.0)) - 2.0).abs() < 1e-15);
        assert!((ray.distance(Complex64::new(1.0, 1.0)) - 2.0f64.sqrt()).abs() < 1e-15);
        let left = SingularSet::Ray { start: c(-1.0) };
        assert!((left.distance(c(0.5)) - 1.5).abs() < 1e-15);
        assert!((left.distance(c(-4.0)) - 0.0).abs() < 1e-15);
    }

    #[test]
    fn origin_singularity_rejected() {
        assert!(BorelFunction::simple_pole(0.0, 1.0).is_err());
        assert!(BorelFunction::branch_cut(vec![CutTerm {
            branch_point: c(0.0),
            strength: c(1.0),
            exponent: 1.0,
        }])
        .is_err());
    }
}

//! Contours G(r) = r exp(i g(r)) in the Borel plane, admissibility checks,
//! and the validity sectors they induce in the lambda- and z-planes.
//!
//! The phase g(r) is piecewise linear between nodes and constant past the
//! last node, so G' exists everywhere except at the finitely many corner
//! radii, where the quadrature splits. By construction |G(r)| = r, which is
//! exactly why contours touching or doubly crossing a circle about the
//! origin cannot be expressed here at all; they are out of scope rather than
//! re-parameterized.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::BorelFunction;

/// Default threshold radius below which phase excursions do not count
/// towards the inf/sup of g.
pub const DEFAULT_R0: f64 = 1.0;

/// Contour in the Borel plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    /// (radius, phase) nodes; strictly increasing radii, first at r = 0.
    nodes: Vec<(f64, f64)>,
    /// Endpoint radius, possibly infinite.
    c: f64,
    /// Threshold radius for the phase extrema.
    r0: f64,
}

impl Contour {
    pub fn new(nodes: Vec<(f64, f64)>, c: f64, r0: f64) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Parameter("contour needs at least one node".into()));
        }
        if nodes[0].0 != 0.0 {
            return Err(Error::Parameter(format!(
                "first node must sit at r = 0, got r = {}",
                nodes[0].0
            )));
        }
        for pair in nodes.windows(2) {
            if !(pair[1].0 > pair[0].0) {
                return Err(Error::Parameter(format!(
                    "node radii must be strictly increasing, got {} then {}",
                    pair[0].0, pair[1].0
                )));
            }
        }
        if nodes.iter().any(|&(r, g)| !r.is_finite() || !g.is_finite()) {
            return Err(Error::Parameter("node values must be finite".into()));
        }
        if !(c > 0.0) {
            return Err(Error::Parameter(format!("endpoint must be positive, got {c}")));
        }
        if c.is_finite() && nodes.last().unwrap().0 > c {
            return Err(Error::Parameter(format!(
                "last node radius {} exceeds endpoint {}",
                nodes.last().unwrap().0,
                c
            )));
        }
        if !(r0 > 0.0) || !(r0 < c) {
            return Err(Error::Parameter(format!(
                "threshold must satisfy 0 < r0 < c, got r0 = {r0}, c = {c}"
            )));
        }
        Ok(Self { nodes, c, r0 })
    }

    /// Infinite ray at constant phase, default threshold.
    pub fn ray(phase: f64) -> Self {
        Self::new(vec![(0.0, phase)], f64::INFINITY, DEFAULT_R0).expect("ray is always valid")
    }

    /// Constant-phase contour cut off at radius `c`.
    pub fn ray_to(phase: f64, c: f64) -> Result<Self> {
        let r0 = if c.is_finite() { (c / 2.0).min(DEFAULT_R0) } else { DEFAULT_R0 };
        Self::new(vec![(0.0, phase)], c, r0)
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn endpoint(&self) -> f64 {
        self.c
    }

    pub fn threshold(&self) -> f64 {
        self.r0
    }

    pub fn is_infinite(&self) -> bool {
        self.c.is_infinite()
    }

    /// Phase at the start of the constant tail.
    pub fn tail_phase(&self) -> f64 {
        self.nodes.last().unwrap().1
    }

    /// Radius where the constant tail begins.
    pub fn tail_start(&self) -> f64 {
        self.nodes.last().unwrap().0
    }

    /// g(r): piecewise-linear interpolation, constant past the last node.
    /// Total on [0, inf); range checks live in [`Self::point`].
    pub fn phase(&self, r: f64) -> f64 {
        match self.segment_index(r) {
            Some(i) => {
                let (r0, g0) = self.nodes[i];
                let (r1, g1) = self.nodes[i + 1];
                g0 + (g1 - g0) * (r - r0) / (r1 - r0)
            }
            None => self.tail_phase(),
        }
    }

    /// dg/dr at r, right-sided at the nodes, zero on the constant tail.
    pub fn phase_slope(&self, r: f64) -> f64 {
        match self.segment_index(r) {
            Some(i) => {
                let (r0, g0) = self.nodes[i];
                let (r1, g1) = self.nodes[i + 1];
                (g1 - g0) / (r1 - r0)
            }
            None => 0.0,
        }
    }

    /// Index of the node segment containing r (right-closed at nodes), or
    /// None on the constant tail.
    fn segment_index(&self, r: f64) -> Option<usize> {
        if r >= self.tail_start() {
            return None;
        }
        // nodes are few; linear scan keeps this trivially correct
        let mut idx = 0;
        for (i, &(ri, _)) in self.nodes.iter().enumerate() {
            if r >= ri {
                idx = i;
            } else {
                break;
            }
        }
        Some(idx)
    }

    fn check_domain(&self, r: f64) -> Result<()> {
        if !(0.0..self.c).contains(&r) {
            return Err(Error::Range(format!(
                "r = {r} outside the contour domain [0, {})",
                self.c
            )));
        }
        Ok(())
    }

    /// G(r) = r exp(i g(r)).
    pub fn point(&self, r: f64) -> Result<Complex64> {
        self.check_domain(r)?;
        Ok(self.point_unchecked(r))
    }

    /// G'(r) = (1 + i r g'(r)) exp(i g(r)); right-sided at the nodes.
    pub fn derivative(&self, r: f64) -> Result<Complex64> {
        self.check_domain(r)?;
        Ok(self.derivative_unchecked(r))
    }

    pub(crate) fn point_unchecked(&self, r: f64) -> Complex64 {
        Complex64::from_polar(r, self.phase(r))
    }

    pub(crate) fn derivative_unchecked(&self, r: f64) -> Complex64 {
        let g = self.phase(r);
        let m = self.phase_slope(r);
        Complex64::new(1.0, r * m) * Complex64::from_polar(1.0, g)
    }

    /// Segment breakpoints covering [0, r_max]: node radii plus the cap.
    pub(crate) fn breakpoints(&self, r_max: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .nodes
            .iter()
            .map(|&(r, _)| r)
            .filter(|&r| r < r_max)
            .collect();
        pts.push(r_max);
        pts
    }
}

/// Admissibility data of a contour: phase extrema on [r0, c), fitted
/// envelope constants, and the ceiling on epsilon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourValidation {
    /// inf of g on [r0, c).
    pub a_inf: f64,
    /// sup of g on [r0, c).
    pub b_sup: f64,
    /// |G'(r)| <= k1 r^gamma1 on [r0, c).
    pub k1: f64,
    pub gamma1: f64,
    /// |f(G(r))| <= k2 r^gamma2, when fitted against a model.
    pub k2: Option<f64>,
    pub gamma2: f64,
    /// Largest admissible epsilon: pi/2 - (B - A)/2.
    pub epsilon_max: f64,
}

/// Exact extrema of the piecewise-linear phase on [r0, c): attained at the
/// interval ends or at interior nodes.
fn phase_extrema(contour: &Contour) -> (f64, f64) {
    let r0 = contour.threshold();
    let c = contour.endpoint();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut push = |g: f64| {
        lo = lo.min(g);
        hi = hi.max(g);
    };
    push(contour.phase(r0));
    for &(r, g) in contour.nodes() {
        if r > r0 && r < c {
            push(g);
        }
    }
    if c.is_finite() {
        push(contour.phase(c)); // sup over [r0, c) includes the limit at c
    } else {
        push(contour.tail_phase());
    }
    (lo, hi)
}

fn fit_envelope<F: Fn(f64) -> f64>(
    contour: &Contour,
    gamma: f64,
    magnitude: F,
) -> Result<f64> {
    let r0 = contour.threshold();
    let c = contour.endpoint();
    if contour.is_infinite() && gamma < 0.0 {
        return Err(Error::Validation(format!(
            "envelope r^{gamma} decays along the infinite tail; no finite constant bounds it"
        )));
    }
    // sample cap: follow the infinite tail a few decades past the last node
    let cap = if c.is_finite() {
        c
    } else {
        (contour.tail_start() + 1.0).max(10.0 * r0) * 100.0
    };
    let mut sup = 0.0f64;
    let segments = contour.breakpoints(cap);
    let mut prev = 0.0f64;
    for &end in &segments {
        let lo = prev.max(r0);
        prev = end;
        if lo >= end {
            continue;
        }
        const SAMPLES: usize = 128;
        for k in 0..=SAMPLES {
            let r = lo + (end - lo) * (k as f64) / (SAMPLES as f64);
            let r = r.min(end * (1.0 - 1e-12)); // stay inside [r0, c)
            if r < r0 {
                continue;
            }
            let v = magnitude(r) / r.powf(gamma);
            if v.is_finite() {
                sup = sup.max(v);
            }
        }
    }
    Ok(sup)
}

/// Check Lemma hypotheses for a contour at a given epsilon: exact phase
/// extrema, fitted derivative envelope (gamma1 = 0), and the angular
/// admissibility condition B - A < pi - 2 epsilon.
pub fn validate(contour: &Contour, epsilon: f64) -> Result<ContourValidation> {
    validate_with(contour, epsilon, None, 0.0, 0.0)
}

/// [`validate`], additionally fitting the integrand envelope constant
/// |f(G(r))| <= K2 r^gamma2 against a concrete model.
pub fn validate_against(
    contour: &Contour,
    epsilon: f64,
    f: &BorelFunction,
    gamma1: f64,
    gamma2: f64,
) -> Result<ContourValidation> {
    validate_with(contour, epsilon, Some(f), gamma1, gamma2)
}

fn validate_with(
    contour: &Contour,
    epsilon: f64,
    f: Option<&BorelFunction>,
    gamma1: f64,
    gamma2: f64,
) -> Result<ContourValidation> {
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let (a_inf, b_sup) = phase_extrema(contour);
    let epsilon_max = std::f64::consts::FRAC_PI_2 - (b_sup - a_inf) / 2.0;
    if b_sup - a_inf >= std::f64::consts::PI - 2.0 * epsilon {
        return Err(Error::Validation(format!(
            "B - A = {:.6} violates B - A < pi - 2*epsilon = {:.6}; epsilon must stay below {:.6}",
            b_sup - a_inf,
            std::f64::consts::PI - 2.0 * epsilon,
            epsilon_max
        )));
    }
    let k1 = fit_envelope(contour, gamma1, |r| contour.derivative_unchecked(r).norm())?;
    let k2 = match f {
        Some(model) => Some(fit_envelope(contour, gamma2, |r| {
            model.eval(contour.point_unchecked(r)).norm()
        })?),
        None => None,
    };
    Ok(ContourValidation {
        a_inf,
        b_sup,
        k1,
        gamma1,
        k2,
        gamma2,
        epsilon_max,
    })
}

/// Plane a sector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Lambda,
    Z,
}

/// Open angular sector phi_min < arg < phi_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub phi_min: f64,
    pub phi_max: f64,
    pub plane: Plane,
}

impl Sector {
    pub fn width(&self) -> f64 {
        self.phi_max - self.phi_min
    }

    pub fn contains(&self, angle: f64) -> bool {
        angle > self.phi_min && angle < self.phi_max
    }
}

/// Validity sector in the lambda plane:
/// -pi/2 - A + eps < arg lambda < pi/2 - B - eps.
pub fn sector_lambda(v: &ContourValidation, epsilon: f64) -> Result<Sector> {
    let phi_min = -std::f64::consts::FRAC_PI_2 - v.a_inf + epsilon;
    let phi_max = std::f64::consts::FRAC_PI_2 - v.b_sup - epsilon;
    if !(phi_max > phi_min) {
        return Err(Error::Validation(format!(
            "lambda sector is empty at epsilon = {epsilon}: ({phi_min}, {phi_max})"
        )));
    }
    Ok(Sector {
        phi_min,
        phi_max,
        plane: Plane::Lambda,
    })
}

/// Validity sector in the z plane (z = 1/lambda):
/// -pi/2 + B + eps < arg z < pi/2 + A - eps.
pub fn sector_z(v: &ContourValidation, epsilon: f64) -> Result<Sector> {
    let phi_min = -std::f64::consts::FRAC_PI_2 + v.b_sup + epsilon;
    let phi_max = std::f64::consts::FRAC_PI_2 + v.a_inf - epsilon;
    if !(phi_max > phi_min) {
        return Err(Error::Validation(format!(
            "z sector is empty at epsilon = {epsilon}: ({phi_min}, {phi_max})"
        )));
    }
    Ok(Sector {
        phi_min,
        phi_max,
        plane: Plane::Z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn straight_ray_is_watson_case() {
        let contour = Contour::ray(0.0);
        let v = validate(&contour, 0.1).unwrap();
        assert_eq!(v.a_inf, 0.0);
        assert_eq!(v.b_sup, 0.0);
        assert!((v.epsilon_max - FRAC_PI_2).abs() < 1e-15);
        assert!((v.k1 - 1.0).abs() < 1e-12);
        let s = sector_lambda(&v, 0.1).unwrap();
        assert!((s.phi_min - (-FRAC_PI_2 + 0.1)).abs() < 1e-15);
        assert!((s.phi_max - (FRAC_PI_2 - 0.1)).abs() < 1e-15);
    }

    #[test]
    fn rigid_rotation_admissible() {
        let contour = Contour::ray(FRAC_PI_4);
        let v = validate(&contour, 0.1).unwrap();
        assert_eq!(v.a_inf, FRAC_PI_4);
        assert_eq!(v.b_sup, FRAC_PI_4);
        let s = sector_lambda(&v, 0.1).unwrap();
        assert!((s.phi_min - (-3.0 * FRAC_PI_4 + 0.1)).abs() < 1e-14);
        assert!((s.phi_max - (FRAC_PI_4 - 0.1)).abs() < 1e-14);
        let z = sector_z(&v, 0.1).unwrap();
        assert!((z.phi_min - (-FRAC_PI_4 + 0.1)).abs() < 1e-14);
        assert!((z.phi_max - (3.0 * FRAC_PI_4 - 0.1)).abs() < 1e-14);
    }

    #[test]
    fn wide_phase_ramp_rejected() {
        // g ramps 0 -> 3pi/4 across [r0, c): B - A = 3pi/4 > pi - 0.6
        let contour = Contour::new(
            vec![(0.0, 0.0), (10.0, 3.0 * PI / 4.0)],
            f64::INFINITY,
            1.0,
        )
        .unwrap();
        let err = validate(&contour, 0.3);
        match err {
            Err(Error::Validation(msg)) => {
                assert!(msg.contains("B - A"), "message should name the inequality: {msg}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn ramp_before_threshold_does_not_count() {
        // phase excursion confined below r0 = 1: extrema see only the tail
        let contour = Contour::new(
            vec![(0.0, 0.0), (0.5, 1.4), (0.9, 0.3)],
            f64::INFINITY,
            1.0,
        )
        .unwrap();
        let v = validate(&contour, 0.2).unwrap();
        // on [1, inf) the phase is the constant tail value 0.3
        assert!((v.a_inf - 0.3).abs() < 1e-12);
        assert!((v.b_sup - 0.3).abs() < 1e-12);
    }

    #[test]
    fn sector_example_partial_ramp() {
        // A = 0, B = pi/2, eps = 0.2 -> lambda sector (-pi/2 + 0.2, -0.2)
        let v = ContourValidation {
            a_inf: 0.0,
            b_sup: FRAC_PI_2,
            k1: 1.0,
            gamma1: 0.0,
            k2: None,
            gamma2: 0.0,
            epsilon_max: FRAC_PI_2 - FRAC_PI_4,
        };
        let s = sector_lambda(&v, 0.2).unwrap();
        assert!((s.phi_min - (-FRAC_PI_2 + 0.2)).abs() < 1e-15);
        assert!((s.phi_max - (-0.2)).abs() < 1e-15);
    }

    #[test]
    fn points_and_derivatives() {
        let straight = Contour::ray(0.0);
        assert_eq!(straight.point(2.5).unwrap(), Complex64::new(2.5, 0.0));
        assert_eq!(straight.derivative(2.5).unwrap(), Complex64::new(1.0, 0.0));

        let rotated = Contour::ray(0.7);
        let p = rotated.point(3.0).unwrap();
        assert!((p - Complex64::from_polar(3.0, 0.7)).norm() < 1e-15);
        let d = rotated.derivative(3.0).unwrap();
        assert!((d - Complex64::from_polar(1.0, 0.7)).norm() < 1e-15);

        // linear phase g = m r: |G'|^2 = 1 + m^2 r^2
        let m = 0.2;
        let ramp = Contour::new(vec![(0.0, 0.0), (10.0, 2.0)], f64::INFINITY, 1.0).unwrap();
        for r in [0.5, 1.5, 4.0, 9.0] {
            let d = ramp.derivative(r).unwrap();
            assert!((d.norm_sqr() - (1.0 + m * m * r * r)).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let contour = Contour::new(
            vec![(0.0, 0.1), (2.0, 0.5), (5.0, -0.2)],
            f64::INFINITY,
            1.0,
        )
        .unwrap();
        let h = 1e-6;
        for r in [0.7, 3.0, 6.5] {
            let fd = (contour.point(r + h).unwrap() - contour.point(r - h).unwrap()) / (2.0 * h);
            let an = contour.derivative(r).unwrap();
            assert!((fd - an).norm() < 1e-8, "r={r}: {fd} vs {an}");
        }
    }

    #[test]
    fn domain_errors() {
        let contour = Contour::ray_to(0.0, 5.0).unwrap();
        assert!(matches!(contour.point(5.0), Err(Error::Range(_))));
        assert!(matches!(contour.point(-0.1), Err(Error::Range(_))));
        assert!(contour.point(4.999).is_ok());
    }

    #[test]
    fn construction_errors() {
        assert!(Contour::new(vec![], f64::INFINITY, 1.0).is_err());
        assert!(Contour::new(vec![(0.5, 0.0)], f64::INFINITY, 1.0).is_err());
        assert!(Contour::new(vec![(0.0, 0.0), (1.0, 0.1), (1.0, 0.2)], f64::INFINITY, 1.0).is_err());
        assert!(Contour::new(vec![(0.0, 0.0), (2.0, 0.1), (1.0, 0.2)], f64::INFINITY, 1.0).is_err());
        assert!(Contour::new(vec![(0.0, 0.0)], -1.0, 1.0).is_err());
        assert!(Contour::new(vec![(0.0, 0.0)], 0.5, 1.0).is_err()); // r0 >= c
    }

    #[test]
    fn modulus_equals_radius() {
        let contour = Contour::new(
            vec![(0.0, 0.3), (1.0, -0.4), (4.0, 1.0)],
            f64::INFINITY,
            1.0,
        )
        .unwrap();
        for r in [0.0, 0.3, 1.0, 2.5, 7.0] {
            assert!((contour.point(r).unwrap().norm() - r).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn sectors_are_mutual_reflections(
            a in -1.0f64..1.0,
            spread in 0.0f64..1.0,
            eps_frac in 0.05f64..0.9,
        ) {
            let b = a + spread;
            let epsilon_max = FRAC_PI_2 - spread / 2.0;
            prop_assume!(epsilon_max > 0.01);
            let eps = eps_frac * epsilon_max;
            let v = ContourValidation {
                a_inf: a, b_sup: b, k1: 1.0, gamma1: 0.0, k2: None, gamma2: 0.0,
                epsilon_max,
            };
            let t = sector_lambda(&v, eps).unwrap();
            let z = sector_z(&v, eps).unwrap();
            prop_assert!((t.width() - z.width()).abs() < 1e-12);
            prop_assert!((t.width() - (PI - (b - a) - 2.0*eps)).abs() < 1e-12);
            // phi in T  <=>  -phi in Z
            for k in 0..32 {
                let phi = t.phi_min - 0.3 + (t.width() + 0.6) * (k as f64) / 31.0;
                prop_assert_eq!(t.contains(phi), z.contains(-phi));
            }
        }
    }
}

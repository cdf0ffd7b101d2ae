//! Region geometry and uniform samplers.
//!
//! Coordinates are in metres with the ground plane at z = 0. For the uplink the
//! ground node sits at the origin; for the downlink the UAV sits at (0, 0, h)
//! and its coverage ball of radius R_S is cut by the ground plane into the
//! above-ground cap S1 and the below-ground cap S2.

use std::f64::consts::PI;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::stream::uniform01;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        Point3::new(self.x - other.x, self.y - other.y, self.z - other.z).norm()
    }
}

/// Isosceles triangle formed by the ground node G and the trajectory segment
/// AB, with GA = GB = `b` and AB = `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordGeometry {
    pub b: f64,
    pub l: f64,
}

impl ChordGeometry {
    pub fn new(b: f64, l: f64) -> Result<Self> {
        if !(l > 0.0 && b.is_finite() && l <= 2.0 * b) {
            return Err(Error::InvalidScenario(format!(
                "chord needs 0 < l <= 2b (b = {b}, l = {l})"
            )));
        }
        Ok(Self { b, l })
    }

    /// Squared distance from G to the chord midpoint, b² − l²/4.
    pub fn c(&self) -> f64 {
        (self.b * self.b - 0.25 * self.l * self.l).max(0.0)
    }

    pub fn min_distance(&self) -> f64 {
        self.c().sqrt()
    }
}

/// Coverage ball of radius `r_s` centred at altitude `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapGeometry {
    pub r_s: f64,
    pub h: f64,
}

impl CapGeometry {
    pub fn new(r_s: f64, h: f64) -> Result<Self> {
        if !(r_s > 0.0 && r_s.is_finite() && h >= 0.0 && h <= r_s) {
            return Err(Error::InvalidScenario(format!(
                "cap needs 0 <= h <= R_S and R_S > 0 (R_S = {r_s}, h = {h})"
            )));
        }
        Ok(Self { r_s, h })
    }

    /// Radius of the ground disk where the ball meets z = 0.
    pub fn r_c(&self) -> f64 {
        (self.r_s * self.r_s - self.h * self.h).max(0.0).sqrt()
    }

    pub fn center(&self) -> Point3 {
        Point3::new(0.0, 0.0, self.h)
    }

    pub fn has_lower_cap(&self) -> bool {
        self.h < self.r_s
    }

    pub fn volumes(&self) -> RegionVolumes {
        region_volumes(self)
    }
}

/// Volumes of the coverage regions, m³.
///
/// `lower_cap_paper` and `upper_cap_paper` are the closed forms printed with
/// the original model: a cap of height h and its complement in the ball. For
/// 0 < h < R_S they agree with the true below/above-ground volumes only at
/// h = R_S/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVolumes {
    pub sphere: f64,
    pub upper_cap: f64,
    pub lower_cap: f64,
    pub lower_cap_paper: f64,
    pub upper_cap_paper: f64,
}

pub fn region_volumes(cap: &CapGeometry) -> RegionVolumes {
    let (r, h) = (cap.r_s, cap.h);
    let sphere = 4.0 / 3.0 * PI * r.powi(3);
    let lower_cap = PI * (r - h).powi(2) * (2.0 * r + h) / 3.0;
    RegionVolumes {
        sphere,
        upper_cap: sphere - lower_cap,
        lower_cap,
        lower_cap_paper: PI * h * h * (r - h / 3.0),
        upper_cap_paper: PI / 3.0 * (4.0 * r.powi(3) - 3.0 * r * h * h + h.powi(3)),
    }
}

/// Distance from G to a point uniform on the chord.
///
/// The point sits at arclength x ~ U[0, l] from A; by the law of cosines with
/// cos A = l/(2b) its distance is √(b² + x² − l·x) = √((x − l/2)² + c).
pub fn sample_chord_point<R: RngCore + ?Sized>(g: &ChordGeometry, rng: &mut R) -> f64 {
    let x = g.l * uniform01(rng);
    let off = x - 0.5 * g.l;
    (off * off + g.c()).sqrt().min(g.b)
}

fn isotropic_direction<R: RngCore + ?Sized>(cos_theta: f64, rng: &mut R) -> (f64, f64, f64) {
    let phi = 2.0 * PI * uniform01(rng);
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    (sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta)
}

/// Uniform point in the upper hemisphere {|p| ≤ R, z ≥ 0}.
pub fn sample_uniform_hemisphere<R: RngCore + ?Sized>(radius: f64, rng: &mut R) -> Point3 {
    debug_assert!(radius > 0.0);
    let d = radius * uniform01(rng).cbrt();
    let (ux, uy, uz) = isotropic_direction(uniform01(rng), rng);
    Point3::new(d * ux, d * uy, d * uz)
}

/// Uniform point in the ball {|p| ≤ R}.
pub fn sample_uniform_ball<R: RngCore + ?Sized>(radius: f64, rng: &mut R) -> Point3 {
    debug_assert!(radius > 0.0);
    let d = radius * uniform01(rng).cbrt();
    let (ux, uy, uz) = isotropic_direction(2.0 * uniform01(rng) - 1.0, rng);
    Point3::new(d * ux, d * uy, d * uz)
}

/// Uniform point in S1, plus the number of ball proposals it took.
pub fn sample_upper_cap_counted<R: RngCore + ?Sized>(cap: &CapGeometry, rng: &mut R) -> (Point3, u32) {
    let mut proposals = 0;
    loop {
        proposals += 1;
        let p = sample_uniform_ball(cap.r_s, rng);
        if p.z + cap.h >= 0.0 {
            return (Point3::new(p.x, p.y, p.z + cap.h), proposals);
        }
    }
}

/// Uniform point in S1 = {|p − (0,0,h)| ≤ R_S, z ≥ 0}, by rejection from the ball.
pub fn sample_uniform_upper_cap<R: RngCore + ?Sized>(cap: &CapGeometry, rng: &mut R) -> Point3 {
    sample_upper_cap_counted(cap, rng).0
}

/// Uniform point in S2 = {|p − (0,0,h)| ≤ R_S, z ≤ 0}.
///
/// Rejection from the bounding cylinder of radius R_C and height R_S − h;
/// the cap fills at least half of that cylinder for every h.
pub fn sample_uniform_lower_cap<R: RngCore + ?Sized>(cap: &CapGeometry, rng: &mut R) -> Result<Point3> {
    if !cap.has_lower_cap() {
        return Err(Error::DegenerateRegion("lower cap is empty when h = R_S"));
    }
    let r_c = cap.r_c();
    let depth = cap.r_s - cap.h;
    let r2 = cap.r_s * cap.r_s;
    loop {
        let rho = r_c * uniform01(rng).sqrt();
        let phi = 2.0 * PI * uniform01(rng);
        let z = -depth * uniform01(rng);
        let dz = z - cap.h;
        if rho * rho + dz * dz <= r2 {
            return Ok(Point3::new(rho * phi.cos(), rho * phi.sin(), z));
        }
    }
}

/// Uniform point on the ground disk of radius `r_c` (z = 0). Distances are
/// measured by the caller from the transmitter at (0, 0, h).
pub fn sample_uniform_disk<R: RngCore + ?Sized>(r_c: f64, rng: &mut R) -> Point3 {
    let rho = r_c * uniform01(rng).sqrt();
    let phi = 2.0 * PI * uniform01(rng);
    Point3::new(rho * phi.cos(), rho * phi.sin(), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::RandomStream;
    use approx::assert_relative_eq;

    #[test]
    fn volumes_at_extremes() {
        let full = CapGeometry::new(1.0, 1.0).unwrap().volumes();
        assert_eq!(full.lower_cap, 0.0);
        assert_relative_eq!(full.upper_cap, full.sphere, max_relative = 1e-15);

        let half = CapGeometry::new(1.0, 0.0).unwrap().volumes();
        assert_relative_eq!(half.upper_cap, 2.0 / 3.0 * PI, max_relative = 1e-14);
        // The printed S1 formula gives the whole sphere at h = 0.
        assert_relative_eq!(half.upper_cap_paper, half.sphere, max_relative = 1e-14);
    }

    #[test]
    fn volumes_at_defaults() {
        let v = CapGeometry::new(20.0, 10.0).unwrap().volumes();
        assert_relative_eq!(v.lower_cap, PI * 5000.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(v.lower_cap_paper, PI * 100.0 * (20.0 - 10.0 / 3.0), max_relative = 1e-14);
        assert_relative_eq!(v.upper_cap + v.lower_cap, v.sphere, max_relative = 1e-12);
    }

    #[test]
    fn paper_lower_cap_differs_except_at_half_radius() {
        for &h in &[1.0, 5.0, 9.0, 11.0, 15.0, 19.0] {
            let v = CapGeometry::new(20.0, h).unwrap().volumes();
            assert!((v.lower_cap - v.lower_cap_paper).abs() > 1e-6 * v.sphere, "h = {h}");
        }
        let v = CapGeometry::new(20.0, 10.0).unwrap().volumes();
        assert_relative_eq!(v.lower_cap, v.lower_cap_paper, max_relative = 1e-12);
    }

    #[test]
    fn invalid_geometry() {
        assert!(ChordGeometry::new(5.0, 11.0).is_err());
        assert!(ChordGeometry::new(5.0, 0.0).is_err());
        assert!(CapGeometry::new(20.0, 25.0).is_err());
        assert!(CapGeometry::new(20.0, -1.0).is_err());
        let degenerate = CapGeometry::new(20.0, 20.0).unwrap();
        let mut rng = RandomStream::new(1, 0).sequential();
        assert!(matches!(
            sample_uniform_lower_cap(&degenerate, &mut rng),
            Err(Error::DegenerateRegion(_))
        ));
    }

    #[test]
    fn sampler_supports() {
        let mut rng = RandomStream::new(3, 1).sequential();
        let chord = ChordGeometry::new(15.0, 20.0).unwrap();
        let cap = CapGeometry::new(20.0, 10.0).unwrap();
        for _ in 0..20_000 {
            let d = sample_chord_point(&chord, &mut rng);
            assert!(d >= chord.min_distance() && d <= chord.b);

            let p = sample_uniform_hemisphere(15.0, &mut rng);
            assert!(p.norm() <= 15.0 + 1e-12 && p.z >= 0.0);

            let p = sample_uniform_ball(15.0, &mut rng);
            assert!(p.norm() <= 15.0 + 1e-12);

            let p = sample_uniform_upper_cap(&cap, &mut rng);
            assert!(p.z >= 0.0 && p.distance(&cap.center()) <= 20.0 + 1e-12);

            let p = sample_uniform_lower_cap(&cap, &mut rng).unwrap();
            let d = p.distance(&cap.center());
            assert!(p.z <= 0.0 && (10.0 - 1e-12..=20.0 + 1e-12).contains(&d));

            let p = sample_uniform_disk(cap.r_c(), &mut rng);
            assert!(p.z == 0.0 && p.norm() <= cap.r_c() + 1e-12);
        }
    }

    #[test]
    fn upper_cap_acceptance_ratio() {
        for &(h, expected) in &[(20.0, 1.0), (0.0, 0.5)] {
            let cap = CapGeometry::new(20.0, h).unwrap();
            let mut rng = RandomStream::new(9, 0).sequential();
            let trials = 200_000;
            let proposals: u64 = (0..trials)
                .map(|_| u64::from(sample_upper_cap_counted(&cap, &mut rng).1))
                .sum();
            let ratio = trials as f64 / proposals as f64;
            let se = (expected * (1.0 - expected) / proposals as f64).sqrt();
            assert!((ratio - expected).abs() <= 3.0 * se + 1e-12, "h = {h}: {ratio}");
        }
    }
}

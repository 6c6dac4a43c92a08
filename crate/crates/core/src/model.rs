//! Scenario data model: area, users, UAVs, placements, and the
//! geometric predicates everything else is built on.
//!
//! Distances are meters, energies joules, powers watts, times seconds.

use serde::{Deserialize, Serialize};

use crate::energy::EnergyParams;
use crate::error::{Error, Result};
use crate::rng::{self, domain};

/// 2D ground-plane position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        ground_distance(*self, *other)
    }
}

/// Ground user with quasi-static position and an activity flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UserNode {
    pub id: usize,
    pub pos: Point,
    pub active: bool,
}

/// UAV fog node. All UAVs share one altitude; only ground coordinates vary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavNode {
    pub id: usize,
    pub pos: Point,
    pub residual_energy: f64,
}

/// How UAV-user coverage distance is measured.
///
/// UAV-UAV links are always ground-plane distances since the fleet shares
/// one altitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverageMode {
    /// User is covered when the ground projection is within the radius.
    #[serde(rename = "ground_2d")]
    Ground2D,
    /// User is covered when the 3D slant distance is within the radius.
    /// With a high altitude and a small radius this can make coverage
    /// impossible; callers opt in deliberately.
    #[serde(rename = "slant_3d")]
    Slant3D,
}

/// One problem instance: bounded area, fleet size, users, radio and
/// energy parameters, and the master seed for every derived stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub area_width: f64,
    pub area_height: f64,
    /// Shared flight altitude H.
    pub altitude: f64,
    pub n_uavs: usize,
    /// Uniform coverage and link radius.
    pub comm_radius: f64,
    pub users: Vec<UserNode>,
    pub energy: EnergyParams,
    /// Battery capacity per UAV at frame zero.
    pub initial_energy: f64,
    pub seed: u64,
    pub coverage_mode: CoverageMode,
}

impl Scenario {
    /// Checks every structural invariant; returns the first violation.
    pub fn validate(&self) -> Result<()> {
        if !(self.area_width > 0.0) || !(self.area_height > 0.0) {
            return Err(Error::InvalidScenario(format!(
                "area must be positive, got {} x {}",
                self.area_width, self.area_height
            )));
        }
        if !(self.altitude >= 0.0) {
            return Err(Error::InvalidScenario(format!(
                "altitude must be >= 0, got {}",
                self.altitude
            )));
        }
        if !(self.comm_radius > 0.0) {
            return Err(Error::InvalidScenario(format!(
                "comm radius must be > 0, got {}",
                self.comm_radius
            )));
        }
        if self.n_uavs == 0 {
            return Err(Error::InvalidScenario("fleet must have at least one UAV".into()));
        }
        if !(self.initial_energy > 0.0) {
            return Err(Error::InvalidScenario(format!(
                "initial energy must be > 0, got {}",
                self.initial_energy
            )));
        }
        for user in &self.users {
            if !self.contains(user.pos) {
                return Err(Error::InvalidScenario(format!(
                    "user {} at ({}, {}) lies outside the area",
                    user.id, user.pos.x, user.pos.y
                )));
            }
        }
        for (i, user) in self.users.iter().enumerate() {
            if user.id != i {
                return Err(Error::InvalidScenario(format!(
                    "user ids must be dense 0..m, found id {} at index {}",
                    user.id, i
                )));
            }
        }
        self.energy.validate()?;
        Ok(())
    }

    pub fn m_users(&self) -> usize {
        self.users.len()
    }

    pub fn m_active(&self) -> usize {
        self.users.iter().filter(|u| u.active).count()
    }

    pub fn contains(&self, p: Point) -> bool {
        (0.0..=self.area_width).contains(&p.x) && (0.0..=self.area_height).contains(&p.y)
    }

    pub fn clamp_point(&self, p: Point) -> Point {
        Point {
            x: p.x.clamp(0.0, self.area_width),
            y: p.y.clamp(0.0, self.area_height),
        }
    }

    /// Draws `m` active users uniformly over the area, keyed off the seed.
    pub fn generate_users(seed: u64, m: usize, width: f64, height: f64) -> Vec<UserNode> {
        (0..m)
            .map(|i| UserNode {
                id: i,
                pos: Point {
                    x: rng::unit(seed, domain::USERS, i as u64, 0, 0) * width,
                    y: rng::unit(seed, domain::USERS, i as u64, 1, 0) * height,
                },
                active: true,
            })
            .collect()
    }
}

/// Flat candidate solution: `[x0, y0, x1, y1, ...]`, one pair per UAV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementVector(Vec<f64>);

impl PlacementVector {
    /// Wraps raw coordinates, rejecting a length mismatch.
    pub fn new(coords: Vec<f64>, n_uavs: usize) -> Result<Self> {
        if coords.len() != 2 * n_uavs {
            return Err(Error::PlacementLength {
                n_uavs,
                expected: 2 * n_uavs,
                actual: coords.len(),
            });
        }
        Ok(PlacementVector(coords))
    }

    pub fn from_points(points: &[Point]) -> Self {
        let mut coords = Vec::with_capacity(points.len() * 2);
        for p in points {
            coords.push(p.x);
            coords.push(p.y);
        }
        PlacementVector(coords)
    }

    pub fn n_uavs(&self) -> usize {
        self.0.len() / 2
    }

    pub fn position(&self, uav: usize) -> Point {
        Point {
            x: self.0[2 * uav],
            y: self.0[2 * uav + 1],
        }
    }

    pub fn set_position(&mut self, uav: usize, p: Point) {
        self.0[2 * uav] = p.x;
        self.0[2 * uav + 1] = p.y;
    }

    /// Exchanges the positions of two UAVs in place.
    pub fn swap_positions(&mut self, a: usize, b: usize) {
        self.0.swap(2 * a, 2 * b);
        self.0.swap(2 * a + 1, 2 * b + 1);
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    /// True when every coordinate lies within the scenario area.
    pub fn within_bounds(&self, scenario: &Scenario) -> bool {
        (0..self.n_uavs()).all(|i| scenario.contains(self.position(i)))
    }

    /// Clamps every coordinate onto the area rectangle.
    pub fn clamp_to(&mut self, scenario: &Scenario) {
        for i in 0..self.n_uavs() {
            let p = scenario.clamp_point(self.position(i));
            self.set_position(i, p);
        }
    }
}

/// Euclidean distance in the ground plane.
pub fn ground_distance(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// 3D distance from a UAV at altitude `h` to a ground point below.
pub fn slant_distance(uav: Point, user: Point, h: f64) -> f64 {
    let dx = uav.x - user.x;
    let dy = uav.y - user.y;
    (dx * dx + dy * dy + h * h).sqrt()
}

/// Coverage test between raw positions; boundary equality counts.
pub fn covers_point(uav: Point, user: Point, mode: CoverageMode, altitude: f64, radius: f64) -> bool {
    let d = match mode {
        CoverageMode::Ground2D => ground_distance(uav, user),
        CoverageMode::Slant3D => slant_distance(uav, user, altitude),
    };
    d <= radius
}

/// True when the UAV covers an active user under the scenario's mode.
/// Inactive users are never covered.
pub fn covers_user(uav: &UavNode, user: &UserNode, scenario: &Scenario) -> bool {
    user.active
        && covers_point(
            uav.pos,
            user.pos,
            scenario.coverage_mode,
            scenario.altitude,
            scenario.comm_radius,
        )
}

/// True when two distinct UAVs are within link range. Links always use
/// ground distance; the fleet flies at one altitude.
pub fn uavs_linked(a: &UavNode, b: &UavNode, comm_radius: f64) -> Result<bool> {
    if a.id == b.id {
        return Err(Error::SelfLink(a.id));
    }
    Ok(ground_distance(a.pos, b.pos) <= comm_radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::EnergyParams;

    fn test_scenario(mode: CoverageMode) -> Scenario {
        Scenario {
            area_width: 1000.0,
            area_height: 1000.0,
            altitude: 400.0,
            n_uavs: 3,
            comm_radius: 100.0,
            users: vec![],
            energy: EnergyParams::default(),
            initial_energy: 1.0e6,
            seed: 42,
            coverage_mode: mode,
        }
    }

    #[test]
    fn ground_distance_matches_pythagoras() {
        let d = ground_distance(Point::new(0.0, 0.0), Point::new(3.0, 4.0));
        assert_eq!(d, 5.0);
        assert_eq!(ground_distance(Point::new(7.0, 9.0), Point::new(7.0, 9.0)), 0.0);
    }

    #[test]
    fn slant_distance_adds_altitude_leg() {
        // 30-40-120 box gives the 130 diagonal.
        let d = slant_distance(Point::new(0.0, 0.0), Point::new(30.0, 40.0), 120.0);
        assert!((d - 130.0).abs() < 1e-12);
        // Zero altitude degenerates to ground distance.
        let g = slant_distance(Point::new(1.0, 2.0), Point::new(4.0, 6.0), 0.0);
        assert_eq!(g, 5.0);
    }

    #[test]
    fn ground_coverage_includes_boundary_and_excludes_beyond() {
        let scn = test_scenario(CoverageMode::Ground2D);
        let uav = UavNode { id: 0, pos: Point::new(0.0, 0.0), residual_energy: 1.0 };
        let on_circle = UserNode { id: 0, pos: Point::new(60.0, 80.0), active: true };
        let outside = UserNode { id: 1, pos: Point::new(100.01, 0.0), active: true };
        assert!(covers_user(&uav, &on_circle, &scn), "boundary distance 100 must count");
        assert!(!covers_user(&uav, &outside, &scn), "100.01 m exceeds a 100 m radius");
    }

    #[test]
    fn slant_coverage_fails_under_high_altitude() {
        let scn = test_scenario(CoverageMode::Slant3D);
        let uav = UavNode { id: 0, pos: Point::new(0.0, 0.0), residual_energy: 1.0 };
        let below = UserNode { id: 0, pos: Point::new(0.0, 0.0), active: true };
        // Directly underneath, but the slant leg is the 400 m altitude.
        assert!(!covers_user(&uav, &below, &scn));
    }

    #[test]
    fn inactive_users_are_never_covered() {
        let scn = test_scenario(CoverageMode::Ground2D);
        let uav = UavNode { id: 0, pos: Point::new(0.0, 0.0), residual_energy: 1.0 };
        let idle = UserNode { id: 0, pos: Point::new(0.0, 0.0), active: false };
        assert!(!covers_user(&uav, &idle, &scn));
    }

    #[test]
    fn links_use_ground_distance_and_reject_self_links() {
        let a = UavNode { id: 0, pos: Point::new(0.0, 0.0), residual_energy: 1.0 };
        let b = UavNode { id: 1, pos: Point::new(100.0, 0.0), residual_energy: 1.0 };
        let c = UavNode { id: 2, pos: Point::new(100.2, 0.0), residual_energy: 1.0 };
        assert!(uavs_linked(&a, &b, 100.0).unwrap(), "boundary link must count");
        assert!(!uavs_linked(&a, &c, 100.0).unwrap());
        assert!(matches!(uavs_linked(&a, &a, 100.0), Err(Error::SelfLink(0))));
    }

    #[test]
    fn placement_layout_round_trips() {
        let mut p = PlacementVector::new(vec![1.0, 2.0, 3.0, 4.0], 2).unwrap();
        assert_eq!(p.n_uavs(), 2);
        assert_eq!(p.position(1), Point::new(3.0, 4.0));
        p.swap_positions(0, 1);
        assert_eq!(p.position(0), Point::new(3.0, 4.0));
        assert_eq!(p.position(1), Point::new(1.0, 2.0));
        assert!(matches!(
            PlacementVector::new(vec![0.0; 5], 3),
            Err(Error::PlacementLength { expected: 6, actual: 5, .. })
        ));
    }

    #[test]
    fn clamping_pins_strays_to_the_rectangle() {
        let scn = test_scenario(CoverageMode::Ground2D);
        let mut p = PlacementVector::new(vec![-5.0, 500.0, 1200.0, -0.1], 2).unwrap();
        assert!(!p.within_bounds(&scn));
        p.clamp_to(&scn);
        assert!(p.within_bounds(&scn));
        assert_eq!(p.position(0), Point::new(0.0, 500.0));
        assert_eq!(p.position(1), Point::new(1000.0, 0.0));
    }

    #[test]
    fn generated_users_are_deterministic_and_in_bounds() {
        let a = Scenario::generate_users(42, 120, 1000.0, 1000.0);
        let b = Scenario::generate_users(42, 120, 1000.0, 1000.0);
        let c = Scenario::generate_users(43, 120, 1000.0, 1000.0);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().all(|u| u.active));
        assert!(a
            .iter()
            .all(|u| (0.0..=1000.0).contains(&u.pos.x) && (0.0..=1000.0).contains(&u.pos.y)));
    }

    #[test]
    fn validate_rejects_structural_violations() {
        let mut scn = test_scenario(CoverageMode::Ground2D);
        scn.users = Scenario::generate_users(1, 5, 1000.0, 1000.0);
        assert!(scn.validate().is_ok());

        let mut bad = scn.clone();
        bad.comm_radius = 0.0;
        assert!(bad.validate().is_err());

        let mut bad = scn.clone();
        bad.users[3].pos.x = 1000.5;
        assert!(bad.validate().is_err());

        let mut bad = scn;
        bad.n_uavs = 0;
        assert!(bad.validate().is_err());
    }
}

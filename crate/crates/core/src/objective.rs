//! Connected-coverage fitness.
//!
//! A placement scores `H = NCV2 / m`: the share of all users covered by
//! members of the largest connected UAV component. Users covered only by
//! fragments outside `G*` count toward global coverage `NCV1` but not
//! toward fitness, which is what pushes the optimizer to keep the fleet
//! in one mesh instead of scattering it.

use serde::Serialize;

use crate::error::Result;
use crate::model::{PlacementVector, Scenario};
use crate::topology::{build_topology, build_topology_masked, Topology};

/// Fitness summary for one placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitnessReport {
    /// Size of the largest connected component.
    pub nc: usize,
    /// Users covered by any alive UAV.
    pub ncv1: usize,
    /// Users covered by the largest component.
    pub ncv2: usize,
    /// `ncv2 / m` over all users; zero when the scenario has no users.
    pub h_value: f64,
    /// Active users at evaluation time.
    pub m_active: usize,
}

/// Users covered by at least one alive UAV (`NCV1`).
pub fn coverage_global(topology: &Topology) -> usize {
    topology.user_cover_any.iter().filter(|&&c| c).count()
}

/// Users covered by the largest component (`NCV2`).
pub fn coverage_connected(topology: &Topology) -> usize {
    topology.user_cover_largest.iter().filter(|&&c| c).count()
}

/// Builds the report from an already constructed topology.
pub fn fitness_from_topology(topology: &Topology, scenario: &Scenario) -> FitnessReport {
    let m = scenario.users.len();
    let ncv2 = coverage_connected(topology);
    FitnessReport {
        nc: topology.nc_largest(),
        ncv1: coverage_global(topology),
        ncv2,
        h_value: if m == 0 { 0.0 } else { ncv2 as f64 / m as f64 },
        m_active: scenario.m_active(),
    }
}

/// Evaluates a placement with the whole fleet alive.
pub fn fitness_h(placement: &PlacementVector, scenario: &Scenario) -> Result<FitnessReport> {
    Ok(fitness_from_topology(&build_topology(placement, scenario)?, scenario))
}

/// Evaluates a placement over the alive subset of the fleet.
pub fn fitness_h_masked(
    placement: &PlacementVector,
    scenario: &Scenario,
    alive: &[bool],
) -> Result<FitnessReport> {
    Ok(fitness_from_topology(
        &build_topology_masked(placement, scenario, alive)?,
        scenario,
    ))
}

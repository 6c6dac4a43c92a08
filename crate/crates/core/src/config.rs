//! JSON configuration documents.
//!
//! A single document carries the scenario plus optimizer and simulation
//! parameters. Absent fields take documented defaults; unknown keys are
//! rejected. `normalized` materializes generated user positions so the
//! echoed document is self-contained and byte-stable: parsing an echo
//! and normalizing it again reproduces the same bytes.

use serde::{Deserialize, Serialize};

use crate::energy::EnergyParams;
use crate::error::{Error, Result};
use crate::model::{CoverageMode, Scenario, UserNode};
use crate::optimizer::{PsoParams, WoaParams};
use crate::sim::SimConfig;

/// Advisory parameter ranges; values outside them warn but still run.
pub mod advisory {
    pub const N_UAVS: (usize, usize) = (10, 120);
    pub const N_USERS: (usize, usize) = (30, 200);
    pub const COMM_RADIUS: (f64, f64) = (90.0, 200.0);
    pub const ALTITUDE: (f64, f64) = (300.0, 600.0);
    pub const FRAME_DURATION: (f64, f64) = (1200.0, 3600.0);
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub area_width: f64,
    pub area_height: f64,
    pub altitude_h: f64,
    pub n_uavs: usize,
    pub comm_radius_gamma: f64,
    pub n_users: usize,
    /// Explicit user layout; generated from the seed when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub users: Option<Vec<UserNode>>,
    pub initial_energy: f64,
    pub seed: u64,
    pub coverage_mode: CoverageMode,
    pub energy_params: EnergyParams,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            area_width: 1000.0,
            area_height: 1000.0,
            altitude_h: 400.0,
            n_uavs: 45,
            comm_radius_gamma: 100.0,
            n_users: 120,
            users: None,
            initial_energy: 2.7e6,
            seed: 42,
            coverage_mode: CoverageMode::Ground2D,
            energy_params: EnergyParams::default(),
        }
    }
}

impl ScenarioConfig {
    /// Builds the runtime scenario, generating users when none are given.
    pub fn build_scenario(&self) -> Result<Scenario> {
        let users = match &self.users {
            Some(list) => {
                if list.len() != self.n_users {
                    return Err(Error::InvalidScenario(format!(
                        "n_users is {} but the users array holds {} entries",
                        self.n_users,
                        list.len()
                    )));
                }
                list.clone()
            }
            None => Scenario::generate_users(
                self.seed,
                self.n_users,
                self.area_width,
                self.area_height,
            ),
        };
        let scenario = Scenario {
            area_width: self.area_width,
            area_height: self.area_height,
            altitude: self.altitude_h,
            n_uavs: self.n_uavs,
            comm_radius: self.comm_radius_gamma,
            users,
            energy: self.energy_params.clone(),
            initial_energy: self.initial_energy,
            seed: self.seed,
            coverage_mode: self.coverage_mode,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Human-readable notes for values outside the documented ranges.
    pub fn range_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let mut check = |name: &str, value: f64, lo: f64, hi: f64| {
            if value < lo || value > hi {
                warnings.push(format!(
                    "{name} = {value} lies outside the documented range [{lo}, {hi}]"
                ));
            }
        };
        check("n_uavs", self.n_uavs as f64, advisory::N_UAVS.0 as f64, advisory::N_UAVS.1 as f64);
        check(
            "n_users",
            self.n_users as f64,
            advisory::N_USERS.0 as f64,
            advisory::N_USERS.1 as f64,
        );
        check(
            "comm_radius_gamma",
            self.comm_radius_gamma,
            advisory::COMM_RADIUS.0,
            advisory::COMM_RADIUS.1,
        );
        check("altitude_h", self.altitude_h, advisory::ALTITUDE.0, advisory::ALTITUDE.1);
        check(
            "frame_duration",
            self.energy_params.frame_duration,
            advisory::FRAME_DURATION.0,
            advisory::FRAME_DURATION.1,
        );
        warnings
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigDocument {
    pub scenario: ScenarioConfig,
    pub woa: WoaParams,
    pub pso: PsoParams,
    pub sim: SimConfig,
}

impl ConfigDocument {
    pub fn from_json(text: &str) -> Result<ConfigDocument> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Validates every section and materializes the user layout.
    pub fn normalized(&self) -> Result<ConfigDocument> {
        let scenario = self.scenario.build_scenario()?;
        self.woa.validate()?;
        self.pso.validate()?;
        self.sim.validate()?;
        let mut out = self.clone();
        out.scenario.users = Some(scenario.users);
        out.scenario.n_users = out.scenario.users.as_ref().unwrap().len();
        Ok(out)
    }

    pub fn to_json_pretty(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }
}

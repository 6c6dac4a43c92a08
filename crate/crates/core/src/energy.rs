//! Energy model: free-space channel gains, Shannon link rates, and the
//! hover / travel / communication drain charged to each UAV per frame.
//!
//! Per frame a UAV pays hover power for the time it is not traveling,
//! travel power for repositioning, and per assigned user the airtime
//! energy to receive that user's uplink data and transmit the processed
//! result back down. Dead UAVs consume nothing and stay at zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{PlacementVector, Point, Scenario};
use crate::topology::Topology;

/// Direction of a UAV-user link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// User data flowing up to the UAV.
    Uplink,
    /// Processed result flowing back down to the user.
    Downlink,
}

/// Radio and motion parameters shared by the whole fleet.
///
/// Defaults model a fog node relaying and processing a continuous
/// telemetry/video stream per served user (about 11 Mbit/s sustained),
/// with per-stream service power covering radio and edge compute. Data
/// volumes are per user per frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergyParams {
    /// Watts burned holding position.
    pub p_hover: f64,
    /// Watts burned while repositioning.
    pub p_travel: f64,
    /// Meters per second while repositioning.
    pub cruise_speed: f64,
    /// Watts while serving a user's uplink stream (receive + processing).
    pub p_transmit_uav: f64,
    /// Watts charged against downlink result delivery.
    pub p_receive_uav: f64,
    /// User terminal transmit watts; kept for configuration completeness.
    pub p_transmit_user: f64,
    /// UAV downlink transmit watts (sets the downlink rate).
    pub p_transmit_uav_dl: f64,
    /// Channel bandwidth in hertz.
    pub bandwidth_b: f64,
    /// Reference channel gain at one meter.
    pub beta0: f64,
    /// Noise power in watts.
    pub noise_sigma2: f64,
    /// Uplink payload per user per frame, bits.
    pub input_data_bits: f64,
    /// Downlink payload per user per frame, bits.
    pub output_data_bits: f64,
    /// Timeframe length in seconds.
    pub frame_duration: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        EnergyParams {
            p_hover: 150.0,
            p_travel: 200.0,
            cruise_speed: 10.0,
            p_transmit_uav: 20.0,
            p_receive_uav: 20.0,
            p_transmit_user: 0.1,
            p_transmit_uav_dl: 20.0,
            bandwidth_b: 1.0e6,
            beta0: 1.0e-4,
            noise_sigma2: 1.0e-13,
            input_data_bits: 6.0e10,
            output_data_bits: 3.0e10,
            frame_duration: 1800.0,
        }
    }
}

impl EnergyParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("cruise_speed", self.cruise_speed),
            ("p_transmit_uav", self.p_transmit_uav),
            ("p_transmit_uav_dl", self.p_transmit_uav_dl),
            ("bandwidth_b", self.bandwidth_b),
            ("beta0", self.beta0),
            ("noise_sigma2", self.noise_sigma2),
            ("frame_duration", self.frame_duration),
        ];
        for (name, v) in positive {
            if !(v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
            }
        }
        let non_negative = [
            ("p_hover", self.p_hover),
            ("p_travel", self.p_travel),
            ("p_receive_uav", self.p_receive_uav),
            ("p_transmit_user", self.p_transmit_user),
            ("input_data_bits", self.input_data_bits),
            ("output_data_bits", self.output_data_bits),
        ];
        for (name, v) in non_negative {
            if !(v >= 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Free-space channel gain `beta0 / (dx^2 + dy^2 + H^2)`.
pub fn channel_gain(uav: Point, user: Point, altitude: f64, beta0: f64) -> Result<f64> {
    let dx = uav.x - user.x;
    let dy = uav.y - user.y;
    let d_sq = dx * dx + dy * dy + altitude * altitude;
    if d_sq == 0.0 {
        return Err(Error::SingularGeometry);
    }
    Ok(beta0 / d_sq)
}

/// Shannon rate `B * log2(1 + P * beta0 / (sigma^2 * d^2))` in bits per
/// second, where `d` is the UAV-user slant distance and `P` the transmit
/// power of the sending side.
pub fn link_rate(
    direction: Direction,
    uav: Point,
    user: Point,
    altitude: f64,
    params: &EnergyParams,
) -> Result<f64> {
    if !(params.bandwidth_b > 0.0) {
        return Err(Error::DegenerateRate(format!(
            "bandwidth must be > 0, got {}",
            params.bandwidth_b
        )));
    }
    if !(params.noise_sigma2 > 0.0) {
        return Err(Error::DegenerateRate(format!(
            "noise power must be > 0, got {}",
            params.noise_sigma2
        )));
    }
    let power = match direction {
        Direction::Uplink => params.p_transmit_uav,
        Direction::Downlink => params.p_transmit_uav_dl,
    };
    let dx = uav.x - user.x;
    let dy = uav.y - user.y;
    let d_sq = dx * dx + dy * dy + altitude * altitude;
    if d_sq == 0.0 {
        return Err(Error::SingularGeometry);
    }
    let snr = power * params.beta0 / (params.noise_sigma2 * d_sq);
    let rate = params.bandwidth_b * (1.0 + snr).log2();
    if !(rate > 0.0) {
        return Err(Error::DegenerateRate(format!(
            "non-positive rate {rate} (snr {snr})"
        )));
    }
    Ok(rate)
}

/// Airtime energy for serving one covered user for one frame: uplink
/// receive/processing plus downlink result delivery.
pub fn comm_energy_user(uav: Point, user: Point, altitude: f64, params: &EnergyParams) -> Result<f64> {
    let up = link_rate(Direction::Uplink, uav, user, altitude, params)?;
    let down = link_rate(Direction::Downlink, uav, user, altitude, params)?;
    Ok(params.p_transmit_uav * (params.input_data_bits / up)
        + params.p_receive_uav * (params.output_data_bits / down))
}

/// Communication energy one UAV spends serving `users` for one frame.
pub fn comm_energy_frame(
    uav: Point,
    users: &[Point],
    altitude: f64,
    params: &EnergyParams,
) -> Result<f64> {
    let mut total = 0.0;
    for user in users {
        total += comm_energy_user(uav, *user, altitude, params)?;
    }
    Ok(total)
}

/// Splits one frame into travel and hover energy for a repositioning of
/// `travel_dist` meters. Rejects travel that cannot finish in the frame.
pub fn motion_energy_frame(travel_dist: f64, params: &EnergyParams) -> Result<(f64, f64)> {
    if !(travel_dist >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "travel distance must be >= 0, got {travel_dist}"
        )));
    }
    let travel_time = travel_dist / params.cruise_speed;
    if travel_time > params.frame_duration {
        return Err(Error::TravelExceedsFrame {
            travel_s: travel_time,
            frame_s: params.frame_duration,
        });
    }
    let travel_j = params.p_travel * travel_time;
    let hover_j = params.p_hover * (params.frame_duration - travel_time);
    Ok((travel_j, hover_j))
}

/// Like [`motion_energy_frame`] but saturating: travel longer than the
/// frame consumes the whole frame traveling. Used by the frame charger,
/// which must not fail mid-simulation.
fn motion_energy_saturating(travel_dist: f64, params: &EnergyParams) -> (f64, f64) {
    let travel_time = (travel_dist.max(0.0) / params.cruise_speed).min(params.frame_duration);
    (
        params.p_travel * travel_time,
        params.p_hover * (params.frame_duration - travel_time),
    )
}

/// Per-frame consumption split for one UAV.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Breakdown {
    pub hover_j: f64,
    pub travel_j: f64,
    pub comm_j: f64,
}

impl Breakdown {
    pub fn total(&self) -> f64 {
        self.hover_j + self.travel_j + self.comm_j
    }
}

/// Energy account of one UAV: remaining charge, the latest frame's
/// split, and cumulative totals.
#[derive(Debug, Clone, PartialEq)]
pub struct UavEnergy {
    pub residual: f64,
    pub alive: bool,
    pub frame: Breakdown,
    pub total: Breakdown,
}

/// Fleet-wide energy accounts. Deducted joules always equal recorded
/// breakdown joules, so capacity is conserved exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyLedger {
    pub initial_energy: f64,
    pub uavs: Vec<UavEnergy>,
}

impl EnergyLedger {
    pub fn new(n_uavs: usize, initial_energy: f64) -> Self {
        EnergyLedger {
            initial_energy,
            uavs: vec![
                UavEnergy {
                    residual: initial_energy,
                    alive: true,
                    frame: Breakdown::default(),
                    total: Breakdown::default(),
                };
                n_uavs
            ],
        }
    }

    pub fn alive_mask(&self) -> Vec<bool> {
        self.uavs.iter().map(|u| u.alive).collect()
    }

    pub fn alive_count(&self) -> usize {
        self.uavs.iter().filter(|u| u.alive).count()
    }

    pub fn total_residual(&self) -> f64 {
        self.uavs.iter().map(|u| u.residual).sum()
    }

    /// Deducts a demand split from UAV `i`, clamping at zero. When the
    /// demand exceeds the residual the recorded split is scaled so that
    /// recorded joules still equal deducted joules. Returns true when
    /// the UAV dies on this charge.
    pub fn charge(&mut self, i: usize, hover_j: f64, travel_j: f64, comm_j: f64) -> bool {
        let entry = &mut self.uavs[i];
        if !entry.alive {
            return false;
        }
        let demand = hover_j + travel_j + comm_j;
        let (rec_hover, rec_travel, rec_comm) = if demand <= entry.residual {
            (hover_j, travel_j, comm_j)
        } else if demand > 0.0 {
            let f = entry.residual / demand;
            let h = hover_j * f;
            let t = travel_j * f;
            // Third component absorbs rounding so the split sums exactly.
            (h, t, entry.residual - h - t)
        } else {
            (0.0, 0.0, 0.0)
        };
        let deducted = rec_hover + rec_travel + rec_comm;
        entry.residual = (entry.residual - deducted).max(0.0);
        entry.frame.hover_j += rec_hover;
        entry.frame.travel_j += rec_travel;
        entry.frame.comm_j += rec_comm;
        entry.total.hover_j += rec_hover;
        entry.total.travel_j += rec_travel;
        entry.total.comm_j += rec_comm;
        if entry.residual <= 0.0 {
            entry.residual = 0.0;
            entry.alive = false;
            return true;
        }
        false
    }

    /// Clears the per-frame splits ahead of a new frame.
    pub fn begin_frame(&mut self) {
        for u in &mut self.uavs {
            u.frame = Breakdown::default();
        }
    }
}

/// Charges one frame of hover, travel, and communication energy to every
/// alive UAV and returns the indices that died, in ascending order.
///
/// `per_uav_travel` holds the repositioning distance each UAV flew this
/// frame. Communication is charged per user to the assigned (nearest
/// covering) UAV, so each covered user is paid for exactly once.
pub fn frame_energy_update(
    ledger: &mut EnergyLedger,
    per_uav_travel: &[f64],
    placement: &PlacementVector,
    topology: &Topology,
    scenario: &Scenario,
) -> Vec<usize> {
    let n = scenario.n_uavs;
    assert_eq!(per_uav_travel.len(), n, "travel vector length must match fleet size");
    assert_eq!(ledger.uavs.len(), n, "ledger length must match fleet size");

    let params = &scenario.energy;
    let mut comm = vec![0.0f64; n];
    for (j, assigned) in topology.user_assignment.iter().enumerate() {
        if let Some(i) = *assigned {
            // Coverage distance is positive whenever altitude > 0; a
            // coincident ground-level pair communicates for free.
            comm[i] += comm_energy_user(placement.position(i), scenario.users[j].pos, scenario.altitude, params)
                .unwrap_or(0.0);
        }
    }

    let mut newly_dead = Vec::new();
    for i in 0..n {
        if !ledger.uavs[i].alive {
            continue;
        }
        let (travel_j, hover_j) = motion_energy_saturating(per_uav_travel[i], params);
        if ledger.charge(i, hover_j, travel_j, comm[i]) {
            newly_dead.push(i);
        }
    }
    newly_dead
}

/// Sum of residual energy over the largest component's members.
pub fn network_lifespan_sum(ledger: &EnergyLedger, topology: &Topology) -> f64 {
    topology.largest.iter().map(|&i| ledger.uavs[i].residual).sum()
}

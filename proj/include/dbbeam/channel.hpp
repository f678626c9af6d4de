// SPDX-License-Identifier: Apache-2.0
//
// dbbeam - dual-band channel synthesis and hybrid beam selection toolkit
// Copyright (C) 2026 The dbbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "dbbeam/scenario.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dbbeam
{

inline constexpr double speed_of_light = 299792458.0;

// One propagation cluster as seen at a single trajectory step. The same
// geometry drives both bands.
struct ClusterState
{
    double azimuth_aod_rad = 0.0;
    double elevation_aod_rad = 0.0;
    double azimuth_aoa_rad = 0.0;
    double elevation_aoa_rad = 0.0;
    double delay_s = 0.0;
    double power_linear = 0.0;

    // Speed of approach along the arrival direction. The Doppler shift at a
    // carrier f is radial_velocity_mps * f / c.
    double radial_velocity_mps = 0.0;

    // Rows: receive polarization (+45, -45); columns: transmit polarization.
    Eigen::Matrix2cd polarization_coupling = Eigen::Matrix2cd::Identity();

    double doppler_hz(double carrier_hz) const { return radial_velocity_mps * carrier_hz / speed_of_light; }

    bool operator==(const ClusterState &) const = default;
};

struct LocationSample
{
    double x_m = 0.0;
    double y_m = 0.0;
    double z_m = 0.0;
    double timestamp_s = 0.0;

    bool operator==(const LocationSample &) const = default;
};

struct TrajectoryStep
{
    LocationSample location;
    std::vector<ClusterState> clusters;

    bool operator==(const TrajectoryStep &) const = default;
};

struct Trajectory
{
    std::vector<TrajectoryStep> steps;

    std::size_t size() const { return steps.size(); }
    const TrajectoryStep &operator[](std::size_t i) const { return steps[i]; }
    bool operator==(const Trajectory &) const = default;
};

// Uplink sub-6 channel: rows 0..N-1 are the +45 deg BS ports, rows N..2N-1
// the -45 deg ports; one column per subcarrier.
struct Sub6Snapshot
{
    Eigen::MatrixXcd h;
    double timestamp_s = 0.0;
};

// Downlink mmWave channel, one (2 N_rx) x (2 N_tx) matrix per subcarrier in
// the block layout [[+45, +-45], [-+45, -45]].
struct MmWaveChannel
{
    std::vector<Eigen::MatrixXcd> H;
    double timestamp_s = 0.0;

    std::size_t subcarriers() const { return H.size(); }
};

/*
Straight-line UE trajectory with `steps` samples spaced sample_interval_s
apart. Cluster angles drift linearly with travelled distance at per-cluster
rates bounded by max_angle_drift_rad_per_m, and delays follow the path length
change along each arrival direction. The result depends only on cfg (and its
seed). Throws std::invalid_argument if steps < sequence_length + 1.
*/
Trajectory generate_trajectory(const ScenarioConfig &cfg, std::size_t steps);

Sub6Snapshot sub6_channel_at(const ScenarioConfig &cfg, const TrajectoryStep &step);

MmWaveChannel mmwave_channel_at(const ScenarioConfig &cfg, const TrajectoryStep &step);

// Adds complex Gaussian noise with per-entry variance equal to the mean
// per-entry signal power divided by 10^(snr_db / 10). snr_db = +inf returns
// the input unchanged.
Sub6Snapshot add_measurement_noise(const Sub6Snapshot &snapshot, double snr_db, std::uint64_t noise_seed);

} // namespace dbbeam

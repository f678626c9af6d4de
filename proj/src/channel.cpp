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

#include "dbbeam/channel.hpp"

#include "dbbeam/codebook.hpp"
#include "dbbeam/random.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace dbbeam
{

namespace
{
constexpr double pi = 3.141592653589793;
constexpr double deg = pi / 180.0;

// Stand-in large-scale parameters loosely following an urban-macro NLOS
// profile: delay spread, delay scaling, per-cluster shadowing and angular
// spreads around the line-of-sight geometry.
constexpr double bs_height_m = 25.0;
constexpr double ue_height_m = 1.5;
constexpr double min_distance_m = 50.0;
constexpr double max_distance_m = 200.0;
constexpr double delay_spread_s = 363e-9;
constexpr double delay_scaling = 2.3;
constexpr double cluster_shadowing_db = 3.0;
constexpr double aod_azimuth_spread = 20.0 * deg;
constexpr double aod_elevation_spread = 5.0 * deg;
constexpr double aoa_azimuth_spread = 50.0 * deg;
constexpr double aoa_elevation_spread = 10.0 * deg;

constexpr std::uint64_t trajectory_stream = 0x7472616a; // "traj"

// Initial draw of one cluster plus its per-metre drift rates.
struct ClusterSeed
{
    ClusterState initial;
    double aod_az_rate = 0.0;
    double aod_el_rate = 0.0;
    double aoa_az_rate = 0.0;
    double aoa_el_rate = 0.0;
    double delay_rate_s_per_m = 0.0;
    double arrival_azimuth_global = 0.0;
};

double inverse_xpr(const ScenarioConfig &cfg)
{
    return cfg.cross_polarization_enabled() ? 1.0 / db_to_linear(cfg.xpr_db) : 0.0;
}

// Makes the expected per-entry power equal to one for unit total cluster power.
double normalization(const ScenarioConfig &cfg)
{
    return std::sqrt(2.0 / (1.0 + inverse_xpr(cfg)));
}

void check_step(const ScenarioConfig &cfg, const TrajectoryStep &step)
{
    if (step.clusters.size() != cfg.cluster_count)
        throw std::invalid_argument("trajectory step has " + std::to_string(step.clusters.size()) +
                                    " clusters, configuration expects " + std::to_string(cfg.cluster_count));
}
} // namespace

Trajectory generate_trajectory(const ScenarioConfig &cfg, std::size_t steps)
{
    cfg.validate();
    if (steps < cfg.sequence_length + 1)
        throw std::invalid_argument("trajectory needs at least sequence_length + 1 = " +
                                    std::to_string(cfg.sequence_length + 1) + " steps, got " +
                                    std::to_string(steps));

    Rng rng(derive_seed(cfg.seed, {trajectory_stream}));

    const double distance = rng.uniform(min_distance_m, max_distance_m);
    const double los_azimuth = rng.uniform(-pi / 3.0, pi / 3.0);
    const double heading = rng.phase();
    const double los_elevation = std::atan2(ue_height_m - bs_height_m, distance);
    const double ue_facing = los_azimuth + pi; // UE broadside points back at the BS

    const double x0 = distance * std::cos(los_azimuth);
    const double y0 = distance * std::sin(los_azimuth);
    const double dx = std::cos(heading);
    const double dy = std::sin(heading);
    const double los_delay = std::hypot(distance, bs_height_m - ue_height_m) / speed_of_light;

    // ----- Cluster delays and powers ------------------------------------
    std::vector<double> excess(cfg.cluster_count);
    for (auto &e : excess)
    {
        double u = rng.uniform();
        while (u <= 0.0)
            u = rng.uniform();
        e = -delay_scaling * delay_spread_s * std::log(u);
    }
    std::sort(excess.begin(), excess.end());
    const double first = excess.front();
    for (auto &e : excess)
        e -= first;

    std::vector<double> power(cfg.cluster_count);
    double total = 0.0;
    for (std::size_t c = 0; c < cfg.cluster_count; ++c)
    {
        const double shadow = rng.normal() * cluster_shadowing_db;
        power[c] = std::exp(-excess[c] * (delay_scaling - 1.0) / (delay_scaling * delay_spread_s)) *
                   std::pow(10.0, -shadow / 10.0);
        total += power[c];
    }

    // ----- Angles, drift rates and polarization --------------------------
    const double rate = cfg.max_angle_drift_rad_per_m;
    const double leak = std::sqrt(inverse_xpr(cfg));

    std::vector<ClusterSeed> seeds(cfg.cluster_count);
    for (std::size_t c = 0; c < cfg.cluster_count; ++c)
    {
        auto &s = seeds[c];
        auto &cl = s.initial;
        cl.power_linear = power[c] / total;
        cl.delay_s = los_delay + excess[c];
        cl.azimuth_aod_rad = los_azimuth + rng.normal() * aod_azimuth_spread;
        cl.elevation_aod_rad = los_elevation + rng.normal() * aod_elevation_spread;
        cl.azimuth_aoa_rad = rng.normal() * aoa_azimuth_spread;
        cl.elevation_aoa_rad = rng.normal() * aoa_elevation_spread;

        s.aod_az_rate = rng.uniform(-1.0, 1.0) * rate;
        s.aod_el_rate = rng.uniform(-0.5, 0.5) * rate;
        s.aoa_az_rate = rng.uniform(-1.0, 1.0) * rate;
        s.aoa_el_rate = rng.uniform(-0.5, 0.5) * rate;

        // Moving towards the arrival direction shortens the path.
        s.arrival_azimuth_global = ue_facing + cl.azimuth_aoa_rad;
        s.delay_rate_s_per_m =
            -std::cos(s.arrival_azimuth_global - heading) * std::cos(cl.elevation_aoa_rad) / speed_of_light;

        const double p[4] = {rng.phase(), rng.phase(), rng.phase(), rng.phase()};
        cl.polarization_coupling << std::polar(1.0, p[0]), std::polar(leak, p[1]), std::polar(leak, p[2]),
            std::polar(1.0, p[3]);
    }

    // ----- Evolve along the route ----------------------------------------
    Trajectory traj;
    traj.steps.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t)
    {
        const double time = static_cast<double>(t) * cfg.sample_interval_s;
        const double travelled = cfg.ue_speed_mps * time;

        TrajectoryStep step;
        step.location = {x0 + travelled * dx, y0 + travelled * dy, ue_height_m, time};
        step.clusters.reserve(cfg.cluster_count);
        for (const auto &s : seeds)
        {
            ClusterState cl = s.initial;
            cl.azimuth_aod_rad += s.aod_az_rate * travelled;
            cl.elevation_aod_rad += s.aod_el_rate * travelled;
            cl.azimuth_aoa_rad += s.aoa_az_rate * travelled;
            cl.elevation_aoa_rad += s.aoa_el_rate * travelled;
            cl.delay_s = std::max(0.0, cl.delay_s + s.delay_rate_s_per_m * travelled);
            cl.radial_velocity_mps = cfg.ue_speed_mps * std::cos(ue_facing + cl.azimuth_aoa_rad - heading) *
                                     std::cos(cl.elevation_aoa_rad);
            step.clusters.push_back(cl);
        }
        traj.steps.push_back(std::move(step));
    }
    return traj;
}

Sub6Snapshot sub6_channel_at(const ScenarioConfig &cfg, const TrajectoryStep &step)
{
    check_step(cfg, step);

    const std::size_t n = cfg.bs_sub6_panel.size();
    const auto N = static_cast<Eigen::Index>(n);
    const std::size_t K = cfg.sub6_subcarriers;
    const double spacing = cfg.sub6_bandwidth_hz / static_cast<double>(K);
    const double t = step.location.timestamp_s;
    const double scale = normalization(cfg);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Sub6Snapshot out;
    out.timestamp_s = t;
    out.h = Eigen::MatrixXcd::Zero(2 * N, static_cast<Eigen::Index>(K));

    for (const auto &cl : step.clusters)
    {
        // Array response with unit-magnitude entries.
        const Eigen::VectorXcd a = steering_vector(cfg.bs_sub6_panel, cl.azimuth_aod_rad, cl.elevation_aod_rad) *
                                   std::sqrt(static_cast<double>(n));
        const std::complex<double> gain =
            std::sqrt(cl.power_linear) * scale * std::polar(1.0, 2.0 * pi * cl.doppler_hz(cfg.sub6_carrier_hz) * t);

        // Single UE antenna exciting both polarizations equally.
        const auto &M = cl.polarization_coupling;
        const std::complex<double> w_plus = (M(0, 0) + M(0, 1)) * inv_sqrt2;
        const std::complex<double> w_minus = (M(1, 0) + M(1, 1)) * inv_sqrt2;

        for (std::size_t k = 0; k < K; ++k)
        {
            const auto col = static_cast<Eigen::Index>(k);
            const std::complex<double> g =
                gain * std::polar(1.0, -2.0 * pi * static_cast<double>(k) * spacing * cl.delay_s);
            out.h.col(col).head(N) += (g * w_plus) * a;
            out.h.col(col).tail(N) += (g * w_minus) * a;
        }
    }
    return out;
}

MmWaveChannel mmwave_channel_at(const ScenarioConfig &cfg, const TrajectoryStep &step)
{
    check_step(cfg, step);

    const std::size_t n_tx = cfg.bs_mmwave_panel.size();
    const std::size_t n_rx = cfg.ue_mmwave_panel.size();
    const auto Ntx = static_cast<Eigen::Index>(n_tx);
    const auto Nrx = static_cast<Eigen::Index>(n_rx);
    const std::size_t Kbar = cfg.mmwave_subcarriers;
    const double spacing = cfg.mmwave_bandwidth_hz / static_cast<double>(Kbar);
    const double t = step.location.timestamp_s;
    const double scale = normalization(cfg);

    // Per-cluster outer products a_rx a_tx^H and complex gains.
    std::vector<Eigen::MatrixXcd> outer;
    std::vector<std::complex<double>> gain;
    outer.reserve(step.clusters.size());
    gain.reserve(step.clusters.size());
    for (const auto &cl : step.clusters)
    {
        const Eigen::VectorXcd a_tx = steering_vector(cfg.bs_mmwave_panel, cl.azimuth_aod_rad,
                                                      cl.elevation_aod_rad) *
                                      std::sqrt(static_cast<double>(n_tx));
        const Eigen::VectorXcd a_rx = steering_vector(cfg.ue_mmwave_panel, cl.azimuth_aoa_rad,
                                                      cl.elevation_aoa_rad) *
                                      std::sqrt(static_cast<double>(n_rx));
        outer.push_back(a_rx * a_tx.adjoint());
        gain.push_back(std::sqrt(cl.power_linear) * scale *
                       std::polar(1.0, 2.0 * pi * cl.doppler_hz(cfg.mmwave_carrier_hz) * t));
    }

    MmWaveChannel out;
    out.timestamp_s = t;
    out.H.assign(Kbar, Eigen::MatrixXcd::Zero(2 * Nrx, 2 * Ntx));
    for (std::size_t k = 0; k < Kbar; ++k)
    {
        auto &H = out.H[k];
        for (std::size_t c = 0; c < step.clusters.size(); ++c)
        {
            const auto &cl = step.clusters[c];
            const std::complex<double> g =
                gain[c] * std::polar(1.0, -2.0 * pi * static_cast<double>(k) * spacing * cl.delay_s);
            for (Eigen::Index p = 0; p < 2; ++p)
                for (Eigen::Index q = 0; q < 2; ++q)
                {
                    const std::complex<double> m = cl.polarization_coupling(p, q);
                    if (m == 0.0)
                        continue;
                    H.block(p * Nrx, q * Ntx, Nrx, Ntx) += (g * m) * outer[c];
                }
        }
    }
    return out;
}

Sub6Snapshot add_measurement_noise(const Sub6Snapshot &snapshot, double snr_db, std::uint64_t noise_seed)
{
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("snr_db must be finite or +inf");

    Sub6Snapshot out = snapshot;
    if (snr_db == std::numeric_limits<double>::infinity() || snapshot.h.size() == 0)
        return out;

    const double signal = snapshot.h.squaredNorm() / static_cast<double>(snapshot.h.size());
    const double variance = signal / db_to_linear(snr_db);

    Rng rng(noise_seed);
    // Column-major order: port fastest, then subcarrier.
    for (Eigen::Index j = 0; j < out.h.cols(); ++j)
        for (Eigen::Index i = 0; i < out.h.rows(); ++i)
            out.h(i, j) += rng.complex_normal(variance);
    return out;
}

} // namespace dbbeam

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

#include <cstddef>
#include <cstdint>
#include <limits>

namespace dbbeam
{

// Uniform planar array dimensions. Elements are indexed row-major:
// element (r, c) has linear index r * cols + c.
struct Panel
{
    std::size_t rows = 1;
    std::size_t cols = 1;

    constexpr std::size_t size() const { return rows * cols; }
    constexpr bool operator==(const Panel &) const = default;
};

// All array, OFDM, codebook and mobility parameters. Defaults reproduce the
// reference dual-band setup (3.6 GHz / 26 GHz, 4x4 and 8x8 BS panels, 2x2 UE
// panel, two RF chains, 32 beams, sequence length 5, 30 km/h).
struct ScenarioConfig
{
    double sub6_carrier_hz = 3.6e9;
    double mmwave_carrier_hz = 26e9;
    double sub6_bandwidth_hz = 20e6;
    double mmwave_bandwidth_hz = 800e6;

    std::size_t sub6_subcarriers = 32;    // K
    std::size_t mmwave_subcarriers = 512; // Kbar

    Panel bs_sub6_panel{4, 4};
    Panel bs_mmwave_panel{8, 8};
    Panel ue_mmwave_panel{2, 2};

    std::size_t rf_chains = 2;
    std::size_t streams = 2;
    std::size_t codebook_size = 32;

    // Beam grid of the DFT codebook. Zero selects the factorization of
    // codebook_size whose aspect ratio best matches the subarray panel.
    std::size_t codebook_elevation_beams = 0;
    std::size_t codebook_azimuth_beams = 0;

    std::size_t sequence_length = 5; // T

    double ue_speed_mps = 30.0 / 3.6;
    double sample_interval_s = 0.1;

    std::size_t cluster_count = 8;
    double xpr_db = 8.0; // +inf disables cross-polarized coupling
    double max_angle_drift_rad_per_m = 0.02;

    std::uint64_t seed = 1;

    std::size_t sub6_ports() const { return 2 * bs_sub6_panel.size(); }
    std::size_t bs_mmwave_ports() const { return 2 * bs_mmwave_panel.size(); }
    std::size_t ue_mmwave_ports() const { return 2 * ue_mmwave_panel.size(); }
    std::size_t subarray_elements() const { return bs_mmwave_panel.size() / rf_chains; }

    double step_length_m() const { return ue_speed_mps * sample_interval_s; }

    // Largest per-step change of any cluster angle.
    double max_drift_rad() const { return max_angle_drift_rad_per_m * step_length_m(); }

    // Panel of one RF chain's subarray: the contiguous row-major block of
    // subarray_elements() elements. Throws ConfigError if that block is not
    // rectangular.
    Panel subarray_panel() const;

    // Throws ConfigError naming the first violated constraint.
    void validate() const;

    bool cross_polarization_enabled() const
    {
        return xpr_db < std::numeric_limits<double>::infinity();
    }
};

double db_to_linear(double db);

} // namespace dbbeam

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

#include "dbbeam/scenario.hpp"

#include "dbbeam/errors.hpp"

#include <cmath>
#include <string>

namespace dbbeam
{

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

Panel ScenarioConfig::subarray_panel() const
{
    if (rf_chains == 0 || bs_mmwave_panel.size() % rf_chains != 0)
        throw ConfigError("mmWave panel of " + std::to_string(bs_mmwave_panel.size()) +
                              " elements cannot be split into " + std::to_string(rf_chains) + " subarrays",
                          "rf_chains");

    const std::size_t m = subarray_elements();
    const std::size_t cols = bs_mmwave_panel.cols;
    if (m % cols == 0)
        return Panel{m / cols, cols};
    if (cols % m == 0)
        return Panel{1, m};

    throw ConfigError("subarray of " + std::to_string(m) + " elements does not form a rectangle on a " +
                          std::to_string(bs_mmwave_panel.rows) + "x" + std::to_string(cols) + " panel",
                      "rf_chains");
}

void ScenarioConfig::validate() const
{
    auto require = [](bool ok, const char *key, const std::string &what)
    {
        if (!ok)
            throw ConfigError(std::string(key) + ": " + what, key);
    };

    require(sub6_carrier_hz > 0.0 && std::isfinite(sub6_carrier_hz), "sub6_carrier_hz", "must be positive");
    require(mmwave_carrier_hz > 0.0 && std::isfinite(mmwave_carrier_hz), "mmwave_carrier_hz", "must be positive");
    require(sub6_bandwidth_hz > 0.0 && std::isfinite(sub6_bandwidth_hz), "sub6_bandwidth_hz", "must be positive");
    require(mmwave_bandwidth_hz > 0.0 && std::isfinite(mmwave_bandwidth_hz), "mmwave_bandwidth_hz",
            "must be positive");
    require(sub6_subcarriers >= 1, "sub6_subcarriers", "must be at least 1");
    require(mmwave_subcarriers >= 1, "mmwave_subcarriers", "must be at least 1");
    require(bs_sub6_panel.rows >= 1 && bs_sub6_panel.cols >= 1, "bs_sub6_panel", "dimensions must be at least 1");
    require(bs_mmwave_panel.rows >= 1 && bs_mmwave_panel.cols >= 1, "bs_mmwave_panel",
            "dimensions must be at least 1");
    require(ue_mmwave_panel.rows >= 1 && ue_mmwave_panel.cols >= 1, "ue_mmwave_panel",
            "dimensions must be at least 1");
    require(rf_chains >= 1, "rf_chains", "must be at least 1");
    require(bs_mmwave_panel.size() % rf_chains == 0, "rf_chains", "must divide the mmWave panel element count");
    require(streams >= 1 && streams <= rf_chains, "streams", "must be in [1, rf_chains]");
    require(codebook_size >= 1, "codebook_size", "must be at least 1");
    require(codebook_size <= 65535, "codebook_size", "must fit a 16-bit label");
    require((codebook_elevation_beams == 0) == (codebook_azimuth_beams == 0), "codebook_elevation_beams",
            "elevation and azimuth beam counts must be set together");
    require(codebook_elevation_beams == 0 || codebook_elevation_beams * codebook_azimuth_beams == codebook_size,
            "codebook_elevation_beams", "elevation x azimuth beams must equal codebook_size");
    require(sequence_length >= 1, "sequence_length", "must be at least 1");
    require(ue_speed_mps >= 0.0 && std::isfinite(ue_speed_mps), "ue_speed_mps", "must be non-negative");
    require(sample_interval_s > 0.0 && std::isfinite(sample_interval_s), "sample_interval_s", "must be positive");
    require(cluster_count >= 1, "cluster_count", "must be at least 1");
    require(!std::isnan(xpr_db) && xpr_db > -std::numeric_limits<double>::infinity(), "xpr_db",
            "must be a number or +inf");
    require(max_angle_drift_rad_per_m >= 0.0 && std::isfinite(max_angle_drift_rad_per_m),
            "max_angle_drift_rad_per_m", "must be non-negative");

    (void)subarray_panel();
}

} // namespace dbbeam

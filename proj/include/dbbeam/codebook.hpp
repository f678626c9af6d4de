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
#include <iosfwd>
#include <vector>

namespace dbbeam
{

/*
UPA response with half-wavelength spacing in both dimensions. Element (r, c)
carries the phase pi * (c * sin(azimuth) + r * sin(elevation)), so the
horizontal and vertical spatial frequencies are sin(azimuth) and
sin(elevation) respectively. Entries have magnitude 1 / sqrt(rows * cols).
*/
Eigen::VectorXcd steering_vector(const Panel &panel, double azimuth_rad, double elevation_rad);

// Finite set of constant-modulus, unit-norm subarray beams. Codeword
// e * azimuth_grid.size() + a points at (azimuth_grid[a], elevation_grid[e]).
struct Codebook
{
    Panel subarray;
    std::vector<double> elevation_grid;
    std::vector<double> azimuth_grid;
    std::vector<Eigen::VectorXcd> codewords;

    std::size_t size() const { return codewords.size(); }
    std::size_t length() const { return subarray.size(); }
    const Eigen::VectorXcd &operator[](std::size_t i) const { return codewords[i]; }

    double elevation_of(std::size_t i) const { return elevation_grid[i / azimuth_grid.size()]; }
    double azimuth_of(std::size_t i) const { return azimuth_grid[i % azimuth_grid.size()]; }
};

// Beam grid (elevation beams, azimuth beams) used for a configuration.
std::pair<std::size_t, std::size_t> codebook_grid(const ScenarioConfig &cfg);

// Spatial frequencies -1 + (2m + 1) / count, m = 0..count-1. With count equal
// to the panel dimension the grid is critically sampled (orthogonal beams).
std::vector<double> dft_spatial_frequencies(std::size_t count);

// 2-D DFT codebook on one RF chain's subarray. Throws ConfigError when the
// subarray is not rectangular or the beam grid does not match codebook_size.
Codebook build_codebook(const ScenarioConfig &cfg);

// One row per codeword: index, elevation_rad, azimuth_rad, then re/im pairs.
void write_codebook_csv(const Codebook &cb, std::ostream &out);

} // namespace dbbeam

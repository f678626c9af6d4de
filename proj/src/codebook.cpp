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

#include "dbbeam/codebook.hpp"

#include "dbbeam/errors.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <ostream>

namespace dbbeam
{

Eigen::VectorXcd steering_vector(const Panel &panel, double azimuth_rad, double elevation_rad)
{
    const std::size_t n = panel.size();
    const double u = std::sin(azimuth_rad);
    const double v = std::sin(elevation_rad);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    constexpr double pi = 3.141592653589793;

    Eigen::VectorXcd a(static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < panel.rows; ++r)
        for (std::size_t c = 0; c < panel.cols; ++c)
        {
            const double phase = pi * (static_cast<double>(c) * u + static_cast<double>(r) * v);
            a[static_cast<Eigen::Index>(r * panel.cols + c)] = std::polar(scale, phase);
        }
    return a;
}

std::pair<std::size_t, std::size_t> codebook_grid(const ScenarioConfig &cfg)
{
    if (cfg.codebook_elevation_beams != 0)
        return {cfg.codebook_elevation_beams, cfg.codebook_azimuth_beams};

    // Pick the factorization el * az = |C| closest in aspect ratio to the subarray.
    const Panel sub = cfg.subarray_panel();
    const double target = std::log(static_cast<double>(sub.rows) / static_cast<double>(sub.cols));
    std::size_t best_el = 1;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t el = 1; el <= cfg.codebook_size; ++el)
    {
        if (cfg.codebook_size % el != 0)
            continue;
        const std::size_t az = cfg.codebook_size / el;
        const double err = std::abs(std::log(static_cast<double>(el) / static_cast<double>(az)) - target);
        if (err < best_err - 1e-12)
        {
            best_err = err;
            best_el = el;
        }
    }
    return {best_el, cfg.codebook_size / best_el};
}

std::vector<double> dft_spatial_frequencies(std::size_t count)
{
    std::vector<double> f(count);
    for (std::size_t m = 0; m < count; ++m)
        f[m] = -1.0 + static_cast<double>(2 * m + 1) / static_cast<double>(count);
    return f;
}

Codebook build_codebook(const ScenarioConfig &cfg)
{
    Codebook cb;
    cb.subarray = cfg.subarray_panel();

    const auto [n_el, n_az] = codebook_grid(cfg);
    if (n_el * n_az != cfg.codebook_size)
        throw ConfigError("beam grid does not match codebook_size", "codebook_size");

    for (double v : dft_spatial_frequencies(n_el))
        cb.elevation_grid.push_back(std::asin(v));
    for (double u : dft_spatial_frequencies(n_az))
        cb.azimuth_grid.push_back(std::asin(u));

    cb.codewords.reserve(cfg.codebook_size);
    for (double el : cb.elevation_grid)
        for (double az : cb.azimuth_grid)
            cb.codewords.push_back(steering_vector(cb.subarray, az, el));
    return cb;
}

void write_codebook_csv(const Codebook &cb, std::ostream &out)
{
    out << "index,elevation_rad,azimuth_rad";
    for (std::size_t n = 0; n < cb.length(); ++n)
        out << ",re" << n << ",im" << n;
    out << '\n';

    out << std::setprecision(17);
    for (std::size_t i = 0; i < cb.size(); ++i)
    {
        out << i << ',' << cb.elevation_of(i) << ',' << cb.azimuth_of(i);
        for (const auto &z : cb[i])
            out << ',' << z.real() << ',' << z.imag();
        out << '\n';
    }
}

} // namespace dbbeam

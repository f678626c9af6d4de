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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

using namespace dbbeam;
using cd = std::complex<double>;

namespace
{
// Independent element-by-element steering response.
std::vector<cd> naive_steering(std::size_t rows, std::size_t cols, double az, double el)
{
    std::vector<cd> v;
    const double scale = 1.0 / std::sqrt(double(rows * cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
        {
            const double phase = std::numbers::pi * (double(c) * std::sin(az) + double(r) * std::sin(el));
            v.push_back(scale * cd(std::cos(phase), std::sin(phase)));
        }
    return v;
}

cd naive_dot(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
    cd s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

double max_gram_deviation(const Codebook &cb)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < cb.size(); ++i)
        for (std::size_t j = 0; j < cb.size(); ++j)
            worst = std::max(worst, std::abs(naive_dot(cb[i], cb[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
}
} // namespace

TEST_CASE("Codebook - Steering vector", "[codebook]")
{
    SECTION("Broadside is uniform")
    {
        const auto a = steering_vector({4, 8}, 0.0, 0.0);
        REQUIRE(a.size() == 32);
        for (Eigen::Index i = 0; i < a.size(); ++i)
            CHECK(std::abs(a[i] - cd(1.0 / std::sqrt(32.0), 0.0)) < 1e-15);
    }

    SECTION("Single element")
    {
        const auto a = steering_vector({1, 1}, 0.7, -0.3);
        REQUIRE(a.size() == 1);
        CHECK(std::abs(a[0] - cd(1.0, 0.0)) < 1e-15);
    }

    SECTION("Matches the element-wise formula")
    {
        for (double az : {-1.2, -0.4, 0.0, 0.3, 1.1})
            for (double el : {-0.6, 0.0, 0.25})
            {
                const auto a = steering_vector({3, 5}, az, el);
                const auto ref = naive_steering(3, 5, az, el);
                for (std::size_t i = 0; i < ref.size(); ++i)
                {
                    CHECK(std::abs(a[Eigen::Index(i)] - ref[i]) < 1e-14);
                    CHECK(std::abs(std::abs(a[Eigen::Index(i)]) - 1.0 / std::sqrt(15.0)) < 1e-15);
                }
            }
    }

    SECTION("Critically spaced directions are orthogonal")
    {
        // Spatial frequencies differing by 2/N on an N-element axis.
        const double u1 = -1.0 + 1.0 / 8.0, u2 = u1 + 2.0 / 8.0;
        const auto a = steering_vector({1, 8}, std::asin(u1), 0.0);
        const auto b = steering_vector({1, 8}, std::asin(u2), 0.0);
        CHECK(std::abs(naive_dot(a, b)) < 1e-12);
    }
}

TEST_CASE("Codebook - Spatial frequency grid", "[codebook]")
{
    const auto f = dft_spatial_frequencies(4);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == Catch::Approx(-0.75));
    CHECK(f[1] == Catch::Approx(-0.25));
    CHECK(f[2] == Catch::Approx(0.25));
    CHECK(f[3] == Catch::Approx(0.75));
    CHECK(dft_spatial_frequencies(1) == std::vector<double>{0.0});
}

TEST_CASE("Codebook - Reference geometry", "[codebook]")
{
    const ScenarioConfig cfg;
    const Codebook cb = build_codebook(cfg);
    CHECK(cb.subarray == Panel{4, 8});
    CHECK(cb.size() == 32);
    CHECK(cb.length() == 32);
    CHECK(cb.elevation_grid.size() == 4);
    CHECK(cb.azimuth_grid.size() == 8);
    CHECK(codebook_grid(cfg) == std::pair<std::size_t, std::size_t>{4, 8});

    for (std::size_t i = 0; i < cb.size(); ++i)
    {
        CHECK(std::abs(cb[i].norm() - 1.0) < 1e-12);
        for (Eigen::Index j = 0; j < cb[i].size(); ++j)
            CHECK(std::abs(std::abs(cb[i][j]) - 1.0 / std::sqrt(32.0)) < 1e-14);
        // Elevation-major, azimuth-minor.
        CHECK(cb.elevation_of(i) == cb.elevation_grid[i / 8]);
        CHECK(cb.azimuth_of(i) == cb.azimuth_grid[i % 8]);
        const auto ref = naive_steering(4, 8, cb.azimuth_of(i), cb.elevation_of(i));
        for (std::size_t j = 0; j < ref.size(); ++j)
            CHECK(std::abs(cb[i][Eigen::Index(j)] - ref[j]) < 1e-14);
    }
    CHECK(max_gram_deviation(cb) < 1e-10);
}

TEST_CASE("Codebook - Small orthogonal codebook", "[codebook]")
{
    ScenarioConfig cfg;
    cfg.bs_mmwave_panel = {2, 2};
    cfg.rf_chains = 1;
    cfg.streams = 1;
    cfg.codebook_size = 4;
    const Codebook cb = build_codebook(cfg);
    CHECK(cb.elevation_grid.size() == 2);
    CHECK(cb.azimuth_grid.size() == 2);
    REQUIRE(cb.size() == 4);
    CHECK(max_gram_deviation(cb) < 1e-12);
}

TEST_CASE("Codebook - Grid selection", "[codebook]")
{
    ScenarioConfig cfg;
    cfg.codebook_size = 8;
    CHECK(codebook_grid(cfg) == std::pair<std::size_t, std::size_t>{2, 4});
    cfg.codebook_size = 1;
    CHECK(codebook_grid(cfg) == std::pair<std::size_t, std::size_t>{1, 1});
    cfg.codebook_size = 7;
    CHECK(codebook_grid(cfg) == std::pair<std::size_t, std::size_t>{1, 7});

    cfg.codebook_size = 8;
    cfg.codebook_elevation_beams = 1;
    cfg.codebook_azimuth_beams = 8;
    CHECK(codebook_grid(cfg) == std::pair<std::size_t, std::size_t>{1, 8});
    const Codebook cb = build_codebook(cfg);
    CHECK(cb.size() == 8);
    CHECK(cb.elevation_grid == std::vector<double>{0.0});

    // An 8-beam codebook on 8 columns is critically sampled in azimuth.
    CHECK(max_gram_deviation(cb) < 1e-10);
}

TEST_CASE("Codebook - Deterministic and distinct", "[codebook]")
{
    ScenarioConfig cfg;
    cfg.codebook_size = 8;
    const Codebook a = build_codebook(cfg);
    const Codebook b = build_codebook(cfg);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i] == b[i]);
        for (std::size_t j = i + 1; j < a.size(); ++j)
            CHECK((a[i] - a[j]).norm() > 0.1);
    }
}

TEST_CASE("Codebook - Non-rectangular subarray is a configuration error", "[codebook]")
{
    ScenarioConfig cfg;
    cfg.bs_mmwave_panel = {3, 4};
    CHECK_THROWS_AS(build_codebook(cfg), ConfigError);
}

TEST_CASE("Codebook - CSV export", "[codebook]")
{
    ScenarioConfig cfg;
    cfg.bs_mmwave_panel = {2, 2};
    cfg.rf_chains = 1;
    cfg.streams = 1;
    cfg.codebook_size = 4;
    const Codebook cb = build_codebook(cfg);

    std::ostringstream out;
    write_codebook_csv(cb, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,elevation_rad,azimuth_rad,re0,im0,re1,im1,re2,im2,re3,im3");

    std::size_t rows = 0;
    while (std::getline(in, line))
    {
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            v.push_back(std::stod(cell));
        REQUIRE(v.size() == 3 + 2 * cb.length());
        CHECK(v[0] == double(rows));
        CHECK(v[1] == cb.elevation_of(rows));
        CHECK(v[2] == cb.azimuth_of(rows));
        for (std::size_t j = 0; j < cb.length(); ++j)
        {
            CHECK(v[3 + 2 * j] == cb[rows][Eigen::Index(j)].real());
            CHECK(v[4 + 2 * j] == cb[rows][Eigen::Index(j)].imag());
        }
        ++rows;
    }
    CHECK(rows == 4);
}

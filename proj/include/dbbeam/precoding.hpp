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

#include "dbbeam/channel.hpp"
#include "dbbeam/codebook.hpp"
#include "dbbeam/scenario.hpp"

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <vector>

namespace dbbeam
{

// Codeword indices of a block-diagonal RF precoder: one per RF chain for the
// +45 deg half and one per chain for the -45 deg half.
struct RfSelection
{
    std::vector<std::size_t> plus45;
    std::vector<std::size_t> minus45;

    std::size_t chains() const { return plus45.size(); }

    // Index of output vector r in chain-major order: the +45 deg chains
    // first, then the -45 deg chains.
    std::size_t output(std::size_t r) const { return r < plus45.size() ? plus45[r] : minus45[r - plus45.size()]; }

    // Lexicographic on (plus45..., minus45...): the search tie-break order.
    auto operator<=>(const RfSelection &) const = default;
    bool operator==(const RfSelection &) const = default;
};

// F_rf in C^{2 N_tx x N_rf}. Rows [r m, (r+1) m) of the top half hold the
// +45 deg codeword of chain r, the same rows of the bottom half hold its
// -45 deg codeword (m = N_tx / N_rf); every other entry is zero.
struct RfPrecoder
{
    Eigen::MatrixXcd F;
};

// Throws std::invalid_argument on a wrong chain count or out-of-range index.
RfPrecoder assemble_precoder(const RfSelection &sel, const Codebook &cb, const ScenarioConfig &cfg);

// y = H F_rf F s + n.
Eigen::VectorXcd received_signal(const Eigen::MatrixXcd &H, const Eigen::MatrixXcd &F_rf,
                                 const Eigen::MatrixXcd &F_dig, const Eigen::VectorXcd &s,
                                 const Eigen::VectorXcd &n);

/*
RF-only objective in bits:

    sum_k log2 det(I + rho H[k] F_rf (F_rf^H F_rf)^-1 F_rf^H H[k]^H)

evaluated through the equivalent N_rf x N_rf determinant
det(I + rho (F_rf^H F_rf)^-1 F_rf^H H[k]^H H[k] F_rf). Throws NumericalError
if the Gram matrix is not positive definite.
*/
double mutual_information_rf(const MmWaveChannel &channel, const Eigen::MatrixXcd &F_rf, double snr_linear);

enum class PowerCheck
{
    enforce,
    skip
};

/*
Joint objective for given digital precoders:

    sum_k log2 det(I + rho H[k] F_rf F[k] F[k]^H F_rf^H H[k]^H)

evaluated as the full 2 N_rx x 2 N_rx determinant. With PowerCheck::enforce,
throws std::invalid_argument unless sum_k ||F_rf F[k]||_F^2 = Kbar N_s
within 1e-6.
*/
double mutual_information_joint(const MmWaveChannel &channel, const Eigen::MatrixXcd &F_rf,
                                const std::vector<Eigen::MatrixXcd> &F_dig, double snr_linear,
                                PowerCheck check = PowerCheck::enforce);

// sum_k ||F_rf F[k]||_F^2
double transmit_power(const Eigen::MatrixXcd &F_rf, const std::vector<Eigen::MatrixXcd> &F_dig);

// Digital precoder (F_rf^H F_rf)^{-1/2} U, for which the joint objective
// reduces to the RF-only one when U is unitary and N_s = N_rf.
Eigen::MatrixXcd whitening_precoder(const Eigen::MatrixXcd &F_rf, const Eigen::MatrixXcd &U);

// Spectral efficiency in bit/s/Hz per subcarrier.
inline double spectral_efficiency(double mutual_information_bits, std::size_t subcarriers)
{
    return mutual_information_bits / static_cast<double>(subcarriers);
}

} // namespace dbbeam

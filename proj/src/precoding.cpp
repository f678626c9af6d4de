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

#include "dbbeam/precoding.hpp"

#include "dbbeam/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dbbeam
{

namespace
{
// log2 det of a Hermitian positive definite matrix.
double log2_det_hpd(const Eigen::MatrixXcd &A)
{
    Eigen::LLT<Eigen::MatrixXcd> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericalError("matrix is not positive definite");
    double acc = 0.0;
    const auto &L = llt.matrixLLT();
    for (Eigen::Index i = 0; i < L.rows(); ++i)
        acc += std::log2(L(i, i).real());
    return 2.0 * acc;
}

void check_channel(const MmWaveChannel &channel, const Eigen::MatrixXcd &F_rf)
{
    for (const auto &H : channel.H)
        if (H.cols() != F_rf.rows())
            throw std::invalid_argument("channel has " + std::to_string(H.cols()) + " transmit ports, precoder has " +
                                        std::to_string(F_rf.rows()) + " rows");
}
} // namespace

RfPrecoder assemble_precoder(const RfSelection &sel, const Codebook &cb, const ScenarioConfig &cfg)
{
    const std::size_t chains = cfg.rf_chains;
    if (sel.plus45.size() != chains || sel.minus45.size() != chains)
        throw std::invalid_argument("selection must hold " + std::to_string(chains) + " indices per polarization");

    const std::size_t n_tx = cfg.bs_mmwave_panel.size();
    const std::size_t m = n_tx / chains;
    if (cb.length() != m)
        throw std::invalid_argument("codeword length " + std::to_string(cb.length()) +
                                    " does not match subarray size " + std::to_string(m));

    RfPrecoder out;
    out.F = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(2 * n_tx), static_cast<Eigen::Index>(chains));
    for (std::size_t r = 0; r < chains; ++r)
    {
        for (std::size_t idx : {sel.plus45[r], sel.minus45[r]})
            if (idx >= cb.size())
                throw std::invalid_argument("codeword index " + std::to_string(idx) + " out of range [0, " +
                                            std::to_string(cb.size()) + ")");

        const auto col = static_cast<Eigen::Index>(r);
        const auto len = static_cast<Eigen::Index>(m);
        out.F.block(static_cast<Eigen::Index>(r * m), col, len, 1) = cb[sel.plus45[r]];
        out.F.block(static_cast<Eigen::Index>(n_tx + r * m), col, len, 1) = cb[sel.minus45[r]];
    }
    return out;
}

Eigen::VectorXcd received_signal(const Eigen::MatrixXcd &H, const Eigen::MatrixXcd &F_rf,
                                 const Eigen::MatrixXcd &F_dig, const Eigen::VectorXcd &s,
                                 const Eigen::VectorXcd &n)
{
    if (H.cols() != F_rf.rows() || F_rf.cols() != F_dig.rows() || F_dig.cols() != s.size() ||
        H.rows() != n.size())
        throw std::invalid_argument("received_signal: non-conforming dimensions");
    return H * (F_rf * (F_dig * s)) + n;
}

double mutual_information_rf(const MmWaveChannel &channel, const Eigen::MatrixXcd &F_rf, double snr_linear)
{
    if (!(snr_linear >= 0.0))
        throw std::invalid_argument("snr must be non-negative");
    check_channel(channel, F_rf);

    const Eigen::MatrixXcd gram = F_rf.adjoint() * F_rf;
    Eigen::LLT<Eigen::MatrixXcd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw NumericalError("RF precoder Gram matrix is singular");

    // With G = L L^H, det(I + rho G^-1 A) = det(I + rho L^-1 A L^-H) for
    // A = F^H H^H H F, which keeps the argument Hermitian.
    const auto n = F_rf.cols();
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);
    double total = 0.0;
    for (const auto &H : channel.H)
    {
        const Eigen::MatrixXcd HF = H * F_rf;
        Eigen::MatrixXcd B = llt.matrixL().solve(HF.adjoint());
        Eigen::MatrixXcd W = B * B.adjoint(); // L^-1 F^H H^H H F L^-H
        total += log2_det_hpd(identity + snr_linear * W);
    }
    return total;
}

double transmit_power(const Eigen::MatrixXcd &F_rf, const std::vector<Eigen::MatrixXcd> &F_dig)
{
    double p = 0.0;
    for (const auto &F : F_dig)
        p += (F_rf * F).squaredNorm();
    return p;
}

double mutual_information_joint(const MmWaveChannel &channel, const Eigen::MatrixXcd &F_rf,
                                const std::vector<Eigen::MatrixXcd> &F_dig, double snr_linear, PowerCheck check)
{
    if (!(snr_linear >= 0.0))
        throw std::invalid_argument("snr must be non-negative");
    check_channel(channel, F_rf);
    if (F_dig.size() != channel.subcarriers() || F_dig.empty())
        throw std::invalid_argument("need one digital precoder per subcarrier");

    if (check == PowerCheck::enforce)
    {
        const double target = static_cast<double>(channel.subcarriers()) * static_cast<double>(F_dig.front().cols());
        const double p = transmit_power(F_rf, F_dig);
        if (std::abs(p - target) > 1e-6)
            throw std::invalid_argument("power constraint violated: sum ||F_rf F[k]||^2 = " + std::to_string(p) +
                                        ", expected " + std::to_string(target));
    }

    double total = 0.0;
    for (std::size_t k = 0; k < channel.subcarriers(); ++k)
    {
        const auto &H = channel.H[k];
        if (F_dig[k].rows() != F_rf.cols())
            throw std::invalid_argument("digital precoder rows must equal RF chain count");
        const Eigen::MatrixXcd G = H * F_rf * F_dig[k];
        const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(H.rows(), H.rows()) + snr_linear * G * G.adjoint();
        total += log2_det_hpd(A);
    }
    return total;
}

Eigen::MatrixXcd whitening_precoder(const Eigen::MatrixXcd &F_rf, const Eigen::MatrixXcd &U)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(F_rf.adjoint() * F_rf);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        throw NumericalError("RF precoder Gram matrix is singular");
    return es.operatorInverseSqrt() * U;
}

} // namespace dbbeam

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

#include "dbbeam/search.hpp"

#include "dbbeam/parallel.hpp"

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
using cd = std::complex<double>;

// Effective columns of every candidate (plus, minus) codeword pair of every
// chain, laid out [pair][subcarrier][receive port].
struct PairTable
{
    std::size_t chains = 0;
    std::size_t ports = 0; // 2 N_rx
    std::size_t subcarriers = 0;

    std::vector<std::vector<std::size_t>> plus_index;  // per chain: codeword of each pair
    std::vector<std::vector<std::size_t>> minus_index; // per chain
    std::vector<std::vector<cd>> columns;              // per chain
    std::vector<std::vector<double>> norms;            // per chain: [pair][subcarrier]
    std::vector<std::vector<double>> gram;             // per chain: ||f_plus||^2 + ||f_minus||^2

    std::size_t pairs(std::size_t r) const { return plus_index[r].size(); }
    const cd *column(std::size_t r, std::size_t pair, std::size_t k) const
    {
        return columns[r].data() + (pair * subcarriers + k) * ports;
    }
};

double squared_norm(const Eigen::VectorXcd &v)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s += std::norm(v[i]);
    return s;
}

// out = H(:, first : first + len) * c with a fixed summation order.
void effective_column(const Eigen::MatrixXcd &H, Eigen::Index first, const Eigen::VectorXcd &c, cd *out)
{
    for (Eigen::Index d = 0; d < H.rows(); ++d)
    {
        cd acc = 0.0;
        for (Eigen::Index n = 0; n < c.size(); ++n)
            acc += H(d, first + n) * c[n];
        out[d] = acc;
    }
}

PairTable build_pairs(const MmWaveChannel &channel, const Codebook &cb, const ScenarioConfig &cfg,
                      const std::vector<std::vector<std::size_t>> &candidates)
{
    const std::size_t R = cfg.rf_chains;
    const std::size_t n_tx = cfg.bs_mmwave_panel.size();
    const std::size_t m = n_tx / R;
    const std::size_t K = channel.subcarriers();
    const std::size_t D = cfg.ue_mmwave_ports();

    if (cb.length() != m)
        throw std::invalid_argument("codeword length does not match the subarray size");
    if (candidates.size() != 2 * R)
        throw std::invalid_argument("need " + std::to_string(2 * R) + " candidate lists, got " +
                                    std::to_string(candidates.size()));
    for (const auto &list : candidates)
    {
        if (list.empty())
            throw std::invalid_argument("empty candidate list");
        for (std::size_t idx : list)
            if (idx >= cb.size())
                throw std::invalid_argument("candidate codeword " + std::to_string(idx) + " out of range");
    }
    for (const auto &H : channel.H)
        if (static_cast<std::size_t>(H.rows()) != D || static_cast<std::size_t>(H.cols()) != 2 * n_tx)
            throw std::invalid_argument("channel dimensions do not match the configuration");

    PairTable t;
    t.chains = R;
    t.ports = D;
    t.subcarriers = K;
    t.plus_index.resize(R);
    t.minus_index.resize(R);
    t.columns.resize(R);
    t.norms.resize(R);
    t.gram.resize(R);

    std::vector<cd> g_plus, g_minus;
    for (std::size_t r = 0; r < R; ++r)
    {
        const auto &plus = candidates[r];
        const auto &minus = candidates[R + r];
        const auto plus_first = static_cast<Eigen::Index>(r * m);
        const auto minus_first = static_cast<Eigen::Index>(n_tx + r * m);

        g_plus.assign(plus.size() * K * D, 0.0);
        g_minus.assign(minus.size() * K * D, 0.0);
        for (std::size_t j = 0; j < plus.size(); ++j)
            for (std::size_t k = 0; k < K; ++k)
                effective_column(channel.H[k], plus_first, cb[plus[j]], g_plus.data() + (j * K + k) * D);
        for (std::size_t j = 0; j < minus.size(); ++j)
            for (std::size_t k = 0; k < K; ++k)
                effective_column(channel.H[k], minus_first, cb[minus[j]], g_minus.data() + (j * K + k) * D);

        const std::size_t P = plus.size() * minus.size();
        t.plus_index[r].reserve(P);
        t.minus_index[r].reserve(P);
        t.columns[r].resize(P * K * D);
        t.norms[r].resize(P * K);
        t.gram[r].resize(P);

        std::size_t pair = 0;
        for (std::size_t jp = 0; jp < plus.size(); ++jp)
            for (std::size_t jm = 0; jm < minus.size(); ++jm, ++pair)
            {
                t.plus_index[r].push_back(plus[jp]);
                t.minus_index[r].push_back(minus[jm]);
                t.gram[r][pair] = squared_norm(cb[plus[jp]]) + squared_norm(cb[minus[jm]]);
                for (std::size_t k = 0; k < K; ++k)
                {
                    const cd *gp = g_plus.data() + (jp * K + k) * D;
                    const cd *gm = g_minus.data() + (jm * K + k) * D;
                    cd *a = t.columns[r].data() + (pair * K + k) * D;
                    double nrm = 0.0;
                    for (std::size_t d = 0; d < D; ++d)
                    {
                        a[d] = gp[d] + gm[d];
                        nrm += std::norm(a[d]);
                    }
                    t.norms[r][pair * K + k] = nrm;
                }
            }
    }
    return t;
}

cd inner(const cd *a, const cd *b, std::size_t n)
{
    cd acc = 0.0;
    for (std::size_t d = 0; d < n; ++d)
        acc += std::conj(a[d]) * b[d];
    return acc;
}

// log det of a small Hermitian positive definite matrix (row-major, n x n)
// by in-place Cholesky.
double log2_det_small(std::vector<cd> &A, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
    {
        double d = A[j * n + j].real();
        for (std::size_t p = 0; p < j; ++p)
            d -= std::norm(A[j * n + p]);
        if (!(d > 0.0))
            throw std::runtime_error("search kernel: matrix is not positive definite");
        const double l = std::sqrt(d);
        A[j * n + j] = l;
        acc += std::log2(l);
        for (std::size_t i = j + 1; i < n; ++i)
        {
            cd s = A[i * n + j];
            for (std::size_t p = 0; p < j; ++p)
                s -= A[i * n + p] * std::conj(A[j * n + p]);
            A[i * n + j] = s / l;
        }
    }
    return 2.0 * acc;
}

// Objective of one configuration given its pair index per chain. Both the
// exhaustive and the reduced search evaluate candidates only through here.
double configuration_mi(const PairTable &t, const std::size_t *pair, double rho, std::vector<cd> &scratch)
{
    const std::size_t R = t.chains;
    const std::size_t K = t.subcarriers;
    double total = 0.0;

    if (R == 1)
    {
        const double g = t.gram[0][pair[0]];
        const double *nrm = t.norms[0].data() + pair[0] * K;
        for (std::size_t k = 0; k < K; ++k)
            total += std::log2(1.0 + rho * nrm[k] / g);
        return total;
    }

    if (R == 2)
    {
        const double g1 = t.gram[0][pair[0]];
        const double g2 = t.gram[1][pair[1]];
        const double *n1 = t.norms[0].data() + pair[0] * K;
        const double *n2 = t.norms[1].data() + pair[1] * K;
        const double cross_scale = rho * rho / (g1 * g2);
        for (std::size_t k = 0; k < K; ++k)
        {
            const cd x = inner(t.column(0, pair[0], k), t.column(1, pair[1], k), t.ports);
            const double det = (1.0 + rho * n1[k] / g1) * (1.0 + rho * n2[k] / g2) - cross_scale * std::norm(x);
            total += std::log2(det);
        }
        return total;
    }

    scratch.resize(R * R);
    for (std::size_t k = 0; k < K; ++k)
    {
        for (std::size_t i = 0; i < R; ++i)
        {
            const double gi = t.gram[i][pair[i]];
            scratch[i * R + i] = 1.0 + rho * t.norms[i][pair[i] * K + k] / gi;
            for (std::size_t j = 0; j < i; ++j)
            {
                const double gj = t.gram[j][pair[j]];
                const cd x = inner(t.column(i, pair[i], k), t.column(j, pair[j], k), t.ports);
                scratch[i * R + j] = rho * x / std::sqrt(gi * gj);
                scratch[j * R + i] = std::conj(scratch[i * R + j]);
            }
        }
        total += log2_det_small(scratch, R);
    }
    return total;
}

// Lexicographic order on (plus indices..., minus indices...).
bool selection_less(const PairTable &t, const std::vector<std::size_t> &a, const std::vector<std::size_t> &b)
{
    for (std::size_t r = 0; r < t.chains; ++r)
    {
        const std::size_t x = t.plus_index[r][a[r]], y = t.plus_index[r][b[r]];
        if (x != y)
            return x < y;
    }
    for (std::size_t r = 0; r < t.chains; ++r)
    {
        const std::size_t x = t.minus_index[r][a[r]], y = t.minus_index[r][b[r]];
        if (x != y)
            return x < y;
    }
    return false;
}

struct Best
{
    double mi = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pair;
    std::uint64_t evaluated = 0;
};

void offer(const PairTable &t, Best &best, double mi, const std::vector<std::size_t> &pair)
{
    if (mi > best.mi || (mi == best.mi && !best.pair.empty() && selection_less(t, pair, best.pair)) ||
        best.pair.empty())
    {
        best.mi = mi;
        best.pair = pair;
    }
}
} // namespace

std::uint64_t configuration_count(std::size_t candidates_per_output, std::size_t rf_chains)
{
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < 2 * rf_chains; ++i)
        c *= candidates_per_output;
    return c;
}

SearchResult restricted_search(const MmWaveChannel &channel, const Codebook &cb, const ScenarioConfig &cfg,
                               double snr_linear, const std::vector<std::vector<std::size_t>> &candidates,
                               const SearchOptions &options)
{
    if (!(snr_linear >= 0.0))
        throw std::invalid_argument("snr must be non-negative");

    const PairTable table = build_pairs(channel, cb, cfg, candidates);
    const std::size_t R = table.chains;

    std::uint64_t total = 1;
    for (std::size_t r = 0; r < R; ++r)
        total *= table.pairs(r);

    // Chain 0 is the most significant digit of the configuration counter.
    auto decode = [&](std::uint64_t id, std::vector<std::size_t> &pair)
    {
        for (std::size_t r = R; r-- > 0;)
        {
            pair[r] = static_cast<std::size_t>(id % table.pairs(r));
            id /= table.pairs(r);
        }
    };

    std::vector<Best> partial(resolve_threads(options.threads));
    parallel_for(static_cast<std::size_t>(total), options.threads,
                 [&](std::size_t begin, std::size_t end, std::size_t worker)
                 {
                     Best &best = partial[worker];
                     std::vector<std::size_t> pair(R);
                     std::vector<cd> scratch;
                     decode(begin, pair);
                     for (std::size_t id = begin; id < end; ++id)
                     {
                         const double mi = configuration_mi(table, pair.data(), snr_linear, scratch);
                         offer(table, best, mi, pair);
                         ++best.evaluated;
                         for (std::size_t r = R; r-- > 0;)
                         {
                             if (++pair[r] < table.pairs(r))
                                 break;
                             pair[r] = 0;
                         }
                     }
                 });

    Best best;
    std::uint64_t evaluated = 0;
    for (const auto &p : partial)
    {
        evaluated += p.evaluated;
        if (!p.pair.empty())
            offer(table, best, p.mi, p.pair);
    }

    SearchResult result;
    result.mutual_information = best.mi;
    result.evaluated = evaluated;
    result.selection.plus45.resize(R);
    result.selection.minus45.resize(R);
    for (std::size_t r = 0; r < R; ++r)
    {
        result.selection.plus45[r] = table.plus_index[r][best.pair[r]];
        result.selection.minus45[r] = table.minus_index[r][best.pair[r]];
    }
    return result;
}

SearchResult exhaustive_search(const MmWaveChannel &channel, const Codebook &cb, const ScenarioConfig &cfg,
                               double snr_linear, const SearchOptions &options)
{
    std::vector<std::size_t> all(cb.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    return restricted_search(channel, cb, cfg, snr_linear,
                             std::vector<std::vector<std::size_t>>(2 * cfg.rf_chains, all), options);
}

SearchResult candidate_set_search(const MmWaveChannel &channel, const Codebook &cb, const ScenarioConfig &cfg,
                                  double snr_linear, const PredictionScores &scores, std::size_t n,
                                  const SearchOptions &options)
{
    if (scores.outputs() != 2 * cfg.rf_chains || scores.codebook_size() != cb.size())
        throw std::invalid_argument("prediction scores do not match the codebook/RF chain configuration");
    if (n < 1 || n > cb.size())
        throw std::invalid_argument("n must be in [1, " + std::to_string(cb.size()) + "], got " +
                                    std::to_string(n));

    std::vector<std::vector<std::size_t>> candidates(scores.outputs());
    for (std::size_t o = 0; o < scores.outputs(); ++o)
    {
        candidates[o] = top_n(scores, o, n);
        std::sort(candidates[o].begin(), candidates[o].end());
    }
    return restricted_search(channel, cb, cfg, snr_linear, candidates, options);
}

} // namespace dbbeam

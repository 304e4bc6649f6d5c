// SPDX-License-Identifier: Apache-2.0
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

#include "irs/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace irs {

double dbm_to_watts(double dbm) {
    if (std::isinf(dbm)) return dbm > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double distance(const Position &a, const Position &b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void ScenarioConfig::validate() const {
    if (m < 1) throw InputError("ScenarioConfig: m must be >= 1");
    if (n < 0) throw InputError("ScenarioConfig: n must be >= 0");
    for (double p : {P_T, sigma2_B, sigma2_E, reference_gain_db})
        if (!std::isfinite(p)) throw InputError("ScenarioConfig: powers must be finite");
    if (std::isnan(P_I) || P_I == -std::numeric_limits<double>::infinity())
        throw InputError("ScenarioConfig: P_I must be finite or +inf");
    for (double a : alpha_direct)
        if (!(a >= 0.0)) throw InputError("ScenarioConfig: path-loss exponents must be >= 0");
    for (double a : alpha_reflect)
        if (!(a >= 0.0)) throw InputError("ScenarioConfig: path-loss exponents must be >= 0");
    const std::array<Position, 5> p{positions.alice, positions.bob, positions.irs, positions.eve, positions.pr};
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            // random nodes are placed later; only the fixed ones must be distinct here
            const bool random_i = (i == 3 && eve_random) || (i == 4 && pr_random);
            const bool random_j = (j == 3 && eve_random) || (j == 4 && pr_random);
            if (!random_i && !random_j && distance(p[i], p[j]) == 0.0)
                throw InputError("ScenarioConfig: node positions must be distinct");
        }
}

cmat cascade(const crow &h_Ix, const cmat &H_AI) {
    if (h_Ix.size() != H_AI.rows()) throw InputError("cascade: h_Ix length must equal the row count of H_AI");
    return h_Ix.transpose().asDiagonal() * H_AI;
}

crow effective_row(const crow &h_Ax, const cmat &H_x, const cvec &s) {
    if (H_x.cols() != h_Ax.size() || H_x.rows() != s.size())
        throw InputError("effective_row: dimension mismatch");
    if (s.size() == 0) return h_Ax;
    return h_Ax + s.adjoint() * H_x;
}

ChannelSet ChannelSet::from_links(crow h_AB, crow h_AE, crow h_AP, crow h_IB, crow h_IE, crow h_IP, cmat H_AI,
                                  double noise_power_B_watts, double noise_power_E_watts) {
    const Eigen::Index m = h_AB.size();
    const Eigen::Index n = H_AI.rows();
    if (h_AE.size() != m || h_AP.size() != m || (n > 0 && H_AI.cols() != m))
        throw InputError("ChannelSet: direct links must all have m entries");
    if (h_IB.size() != n || h_IE.size() != n || h_IP.size() != n)
        throw InputError("ChannelSet: IRS links must all have n entries");
    if (!(noise_power_B_watts > 0.0) || !(noise_power_E_watts > 0.0))
        throw InputError("ChannelSet: noise powers must be positive");

    ChannelSet ch;
    ch.h_AB = std::move(h_AB);
    ch.h_AE = std::move(h_AE);
    ch.h_AP = std::move(h_AP);
    ch.h_IB = std::move(h_IB);
    ch.h_IE = std::move(h_IE);
    ch.h_IP = std::move(h_IP);
    ch.H_AI = n > 0 ? std::move(H_AI) : cmat(0, m);
    ch.H_B = cascade(ch.h_IB, ch.H_AI);
    ch.H_E = cascade(ch.h_IE, ch.H_AI);
    ch.H_P = cascade(ch.h_IP, ch.H_AI);
    ch.sigma_B = std::sqrt(noise_power_B_watts);
    ch.sigma_E = std::sqrt(noise_power_E_watts);
    ch.h_AB_n = ch.h_AB / ch.sigma_B;
    ch.H_B_n = ch.H_B / ch.sigma_B;
    ch.h_AE_n = ch.h_AE / ch.sigma_E;
    ch.H_E_n = ch.H_E / ch.sigma_E;
    return ch;
}

ChannelSet ChannelSet::with_irs_zeroed() const {
    const Eigen::Index n_ = n(), m_ = m();
    return from_links(h_AB, h_AE, h_AP, crow::Zero(n_), crow::Zero(n_), crow::Zero(n_), cmat::Zero(n_, m_),
                      sigma_B * sigma_B, sigma_E * sigma_E);
}

ChannelSet ChannelSet::without_irs() const {
    return from_links(h_AB, h_AE, h_AP, crow(0), crow(0), crow(0), cmat(0, m()), sigma_B * sigma_B,
                      sigma_E * sigma_E);
}

namespace {

cdouble draw_cn(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

double amplitude(const Position &a, const Position &b, double alpha, double reference_gain_db) {
    return std::sqrt(db_to_linear(reference_gain_db) * std::pow(distance(a, b), -alpha));
}

crow draw_row(Eigen::Index len, double amp, std::mt19937_64 &rng) {
    crow r(len);
    for (Eigen::Index i = 0; i < len; ++i) r(i) = amp * draw_cn(rng);
    return r;
}

} // namespace

NodePositions place_nodes(const ScenarioConfig &config, std::mt19937_64 &rng) {
    NodePositions p = config.positions;
    std::uniform_real_distribution<double> square(-50.0, 50.0);
    if (config.pr_random) {
        const double x = square(rng);
        const double y = square(rng);
        p.pr = {p.alice[0] + x, p.alice[1] + y, 0.0};
    }
    if (config.eve_random) {
        const double x = square(rng);
        const double y = square(rng);
        p.eve = {p.bob[0] + x, p.bob[1] + y, 0.0};
    }
    return p;
}

ChannelSet generate_channels(const ScenarioConfig &config, std::mt19937_64 &rng) {
    config.validate();
    const NodePositions p = place_nodes(config, rng);
    const Eigen::Index m = config.m, n = config.n;
    const auto &ad = config.alpha_direct;
    const auto &ar = config.alpha_reflect;
    const double g0 = config.reference_gain_db;

    crow h_AB = draw_row(m, amplitude(p.alice, p.bob, ad[0], g0), rng);
    crow h_AE = draw_row(m, amplitude(p.alice, p.eve, ad[1], g0), rng);
    crow h_AP = draw_row(m, amplitude(p.alice, p.pr, ad[2], g0), rng);
    cmat H_AI(n, m);
    const double a_ai = amplitude(p.alice, p.irs, ar[0], g0);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < m; ++k) H_AI(i, k) = a_ai * draw_cn(rng);
    crow h_IB = draw_row(n, amplitude(p.irs, p.bob, ar[1], g0), rng);
    crow h_IE = draw_row(n, amplitude(p.irs, p.eve, ar[2], g0), rng);
    crow h_IP = draw_row(n, amplitude(p.irs, p.pr, ar[3], g0), rng);

    return ChannelSet::from_links(std::move(h_AB), std::move(h_AE), std::move(h_AP), std::move(h_IB),
                                  std::move(h_IE), std::move(h_IP), std::move(H_AI), dbm_to_watts(config.sigma2_B),
                                  dbm_to_watts(config.sigma2_E));
}

ChannelSet generate_channels(const ScenarioConfig &config) {
    std::mt19937_64 rng(config.seed);
    return generate_channels(config, rng);
}

RateReport rates(const Beamformer &w, const cvec &s, const ChannelSet &ch) {
    if (w.w.size() != ch.m()) throw InputError("rates: beamformer length must equal m");
    RateReport r;
    const double snr_b = std::norm((effective_row(ch.h_AB_n, ch.H_B_n, s) * w.w).value());
    const double snr_e = std::norm((effective_row(ch.h_AE_n, ch.H_E_n, s) * w.w).value());
    r.C_B = std::log2(1.0 + snr_b);
    r.C_E = std::log2(1.0 + snr_e);
    r.C_s = r.C_B - r.C_E;
    r.interference = std::norm((effective_row(ch.h_AP, ch.H_P, s) * w.w).value());
    return r;
}

} // namespace irs

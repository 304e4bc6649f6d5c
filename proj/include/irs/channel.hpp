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

#pragma once

#include "irs/linalg.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>

namespace irs {

using Position = std::array<double, 3>;

/// P[W] = 10^((P[dBm] - 30) / 10). +inf maps to +inf (relaxed constraint).
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

struct NodePositions {
    Position alice{0.0, 0.0, 0.0};
    Position bob{100.0, 0.0, 0.0};
    Position irs{50.0, 0.0, 50.0};
    Position eve{100.0, 30.0, 0.0};
    Position pr{-20.0, 20.0, 0.0};
};

/// Scenario parameters. Powers are in dBm, distances in meters.
struct ScenarioConfig {
    int m = 4;
    int n = 8;
    double P_T = 30.0;
    double P_I = 30.0; // +inf disables the interference constraint
    double sigma2_B = -100.0;
    double sigma2_E = -100.0;
    /// Alice-Bob, Alice-Eve, Alice-PR
    std::array<double, 3> alpha_direct{3.0, 3.0, 3.0};
    /// Alice-IRS, IRS-Bob, IRS-Eve, IRS-PR
    std::array<double, 4> alpha_reflect{2.5, 2.5, 2.5, 2.5};
    /// Large-scale power gain at the 1 m reference distance, dB, applied per link.
    double reference_gain_db = 0.0;
    NodePositions positions;
    /// Resample Eve uniformly in x in [50,150], y in [-50,50] per realization.
    bool eve_random = true;
    /// Resample PR uniformly in x,y in [-50,50] per realization.
    bool pr_random = true;
    std::uint64_t seed = 1;

    double P_T_watts() const { return dbm_to_watts(P_T); }
    double P_I_watts() const { return dbm_to_watts(P_I); }

    /// Throws InputError when an invariant is broken.
    void validate() const;
};

/// All direct and cascaded links of one fading block.
///
/// Rows are 1 x m (direct) or 1 x n (IRS-to-node). Cascades are n x m:
/// H_x = diag(h_Ix^T) H_AI. The `_n` members are divided by the noise
/// amplitude of their receiver (Bob or Eve). The PR link stays in raw units (watts).
struct ChannelSet {
    crow h_AB, h_AE, h_AP;
    crow h_IB, h_IE, h_IP;
    cmat H_AI;
    cmat H_B, H_E, H_P;
    crow h_AB_n, h_AE_n;
    cmat H_B_n, H_E_n;
    double sigma_B = 1.0; // noise amplitude sqrt(sigma_B^2) in sqrt(W)
    double sigma_E = 1.0;

    Eigen::Index m() const { return h_AB.size(); }
    Eigen::Index n() const { return H_AI.rows(); }

    /// Builds cascades and noise-normalized copies from raw links.
    static ChannelSet from_links(crow h_AB, crow h_AE, crow h_AP, crow h_IB, crow h_IE, crow h_IP, cmat H_AI,
                                 double noise_power_B_watts, double noise_power_E_watts);

    /// Same direct links, every reflecting link zero (n kept).
    ChannelSet with_irs_zeroed() const;
    /// Same direct links with n = 0.
    ChannelSet without_irs() const;
};

struct Beamformer {
    cvec w;
    double power() const { return w.squaredNorm(); }
};

ChannelSet generate_channels(const ScenarioConfig &config);

/// Same, drawing from a caller-owned stream (positions first if randomized).
ChannelSet generate_channels(const ScenarioConfig &config, std::mt19937_64 &rng);

/// Node positions actually used for a config (random nodes drawn from rng).
NodePositions place_nodes(const ScenarioConfig &config, std::mt19937_64 &rng);

double distance(const Position &a, const Position &b);

/// out(i,k) = h_Ix(i) * H_AI(i,k)
cmat cascade(const crow &h_Ix, const cmat &H_AI);

/// h_Ax + s^H H_x
crow effective_row(const crow &h_Ax, const cmat &H_x, const cvec &s);
inline crow effective_row(const crow &h_Ax, const cmat &H_x, const PhaseVector &s) {
    return effective_row(h_Ax, H_x, s.values());
}

struct RateReport {
    double C_B = 0.0;
    double C_E = 0.0;
    double C_s = 0.0;          // C_B - C_E, not clamped
    double interference = 0.0; // watts at PR
};

RateReport rates(const Beamformer &w, const cvec &s, const ChannelSet &ch);
inline RateReport rates(const Beamformer &w, const PhaseVector &s, const ChannelSet &ch) {
    return rates(w, s.values(), ch);
}

/// Flat `key = value` file. Blank lines and `#` comments are skipped.
using KeyValueMap = std::map<std::string, std::string>;
KeyValueMap parse_key_values(std::istream &in);

ScenarioConfig config_from_map(const KeyValueMap &kv);
ScenarioConfig read_config(std::istream &in);
void write_config(std::ostream &out, const ScenarioConfig &config);

} // namespace irs

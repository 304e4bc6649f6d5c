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

// Worst-case secrecy-rate design under bounded Eve channel errors: a line
// search over the certified Eve power tau, each sample solved by alternating
// robust beamformer and penalty convex-concave phase steps.

#include "irs/result.hpp"
#include "irs/subproblems.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace irs {

/// J(s) = ||h_AB + s^H H_B||^2 on the noise-normalized Bob links.
double bob_gain(const ChannelSet &ch, const cvec &s);

struct TauBound {
    double tau_max = 0.0; // P_T * J(s_opt)
    PhaseVector s_opt;
    int iterations = 0;
};

/// Maximizes J over unit-modulus s by majorization with closed-form phases.
TauBound tau_upper_bound(const ChannelSet &ch, double P_T, double tolerance = 1e-9, int max_iterations = 1000);

struct RobustAoOptions {
    double tolerance = 1e-3;      // relative change of |h_B w|^2 between AO rounds
    int max_iterations = 30;
    double beam_tolerance = 1e-6; // relative change inside the beamformer SCA
    int beam_iterations = 50;
    double slack_tolerance = 1e-4;
    double pccp_tolerance = 1e-4; // relative change of |h_B w|^2 at the largest penalty
    int pccp_iterations = 100;
};

/// Smallest certified Eve power passed to the robust programs.
constexpr double kTauFloor = 1e-6;

struct RobustAoResult {
    bool feasible = false;
    double tau = 0.0; // certified Eve power actually used
    double phi = -std::numeric_limits<double>::infinity(); // (1 + |h_B w|^2) / (1 + tau)
    Beamformer w;
    cvec s;
    LmiMultipliers u;
    std::vector<double> trace; // |h_B w|^2 after each AO round, index 0 = start
    double slack_sum = 0.0;    // at the last penalty step
    double modulus_error = 0.0; // max ||s_i| - 1| before the final projection
    int iterations = 0;
    int phase_steps = 0;
};

/// Alternating optimization at a fixed tau (at least kTauFloor) from the phase start s0.
RobustAoResult ao_robust(double tau, const ChannelSet &ch, const UncertaintyBounds &eps, double P_T, double P_I,
                         const PhaseVector &s0, const RobustAoOptions &options = {});

struct TauGridOptions {
    double spacing = 1e-2;  // on [0, min(1, tau_max)]
    int log_samples = 20;   // log-spaced on (1, tau_max]
};

std::vector<double> tau_grid(double tau_max, const TauGridOptions &options = {});

struct TauSample {
    double tau = 0.0;
    double phi = 0.0;
    bool feasible = false;
};

struct LineSearchOptions {
    TauGridOptions grid;
    RobustAoOptions ao;
    int threads = 1;
    std::vector<TauSample> *samples = nullptr; // filled in grid order
};

/// Best worst-case design over the tau grid. `certified_rate` is
/// max(0, log2 phi(tau_opt)); `rates` holds the nominal-channel rates.
RunResult line_search_tau(const ChannelSet &ch, const UncertaintyBounds &eps, double P_T, double P_I,
                          const PhaseVector &s0, const LineSearchOptions &options = {});

/// Largest Eve power |(h_AE + d_AE + s^H (H_E + D_E)) w|^2 over `draws` random
/// admissible errors, half of them on the boundary of the error sets.
double sampled_eve_power(const cvec &w, const cvec &s, const ChannelSet &ch, const UncertaintyBounds &eps, int draws,
                         std::uint64_t seed);

} // namespace irs

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

// Artificial-noise scheme without Eve CSI: minimum information power for a
// QoS target at Bob, the remaining power sent as noise in the null space of
// the Bob and PR effective channels.

#include "irs/result.hpp"
#include "irs/subproblems.hpp"

#include <vector>

namespace irs {

struct QosTarget {
    double T = 1.0; // SNR at Bob, linear

    QosTarget() = default;
    explicit QosTarget(double snr);
    static QosTarget from_db(double snr_db);
};

struct MaxSnrOptions {
    double tolerance = 1e-9; // relative increase of |h_B w|^2
    int max_iterations = 500;
};

struct MaxSnrTrace {
    PhaseVector s;
    std::vector<double> snr; // |h_B w|^2 per iterate, index 0 = start
};

/// Majorization ascent on |h_B(s) w|^2 under the interference limit.
MaxSnrTrace max_snr_phase(const cvec &w, const ChannelSet &ch, double P_I, const PhaseVector &s0,
                          const MaxSnrOptions &options = {});

struct PowerMinOptions {
    double tolerance = 1e-3;      // relative change of ||w||^2 between AO rounds
    int max_iterations = 100;
    double beam_tolerance = 1e-9; // relative change inside the beamformer SCA
    int beam_iterations = 200;
    MaxSnrOptions phase;
};

struct PowerMinResult {
    bool feasible = false;
    Beamformer w;
    PhaseVector s;
    double P_S = 0.0;          // ||w||^2 in watts
    std::vector<double> trace; // ||w||^2 after each AO round, index 0 = first beamformer
    int iterations = 0;
    bool converged = false;
};

/// Alternates min-power beamforming and SNR-maximizing phases from s0.
PowerMinResult ao_power_min(const ChannelSet &ch, const QosTarget &target, double P_I, const PhaseVector &s0,
                            const PowerMinOptions &options = {});

struct AnCovariance {
    cmat R_AN;
    cmat U_AN;
    double power = 0.0;
    bool available = false; // false when no null-space dimension is left
};

/// Equal-power noise over the null space of the stacked raw Bob and PR rows.
AnCovariance an_covariance(const cvec &w, const cvec &s, const ChannelSet &ch, double P_T, double P_S);

/// log2(1+T) - log2(1 + Eve SINR) with the noise covariance, raw Eve links.
double actual_secrecy_rate(const cvec &w, const cvec &s, const AnCovariance &an, const ChannelSet &ch,
                           const QosTarget &target);

/// Power minimization, noise design and rate evaluation. Infeasible targets
/// (beamformer power above P_T) return C_s = 0 with the "infeasible" flag.
RunResult run_no_csi(const ChannelSet &ch, const QosTarget &target, double P_T, double P_I, const PhaseVector &s0,
                     const PowerMinOptions &options = {});

} // namespace irs

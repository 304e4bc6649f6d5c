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

// Convex inner problems used by the alternating optimizers.

#include "irs/channel.hpp"
#include "irs/conic.hpp"
#include "irs/linalg.hpp"

#include <cstdint>

namespace irs {

/// h(s) = 1 + s^H quadratic s + 2 Re{s^H linear} + constant
struct QuadraticForm {
    double constant = 0.0;
    cvec linear;
    HermitianMatrix quadratic;

    /// Full value including the leading 1.
    double evaluate(const cvec &s) const;
    /// Value without the leading 1 (used for received power in watts).
    double power(const cvec &s) const { return evaluate(s) - 1.0; }
};

/// Expansion of 1 + (h_A + s^H H) R (h_A + s^H H)^H in s.
QuadraticForm quadratic_params(const cmat &R, const crow &h_A, const cmat &H);

/// Tight upper bound of x^H A x at x_tilde:
///   x^H A x <= scale ||x||^2 - 2 Re{x^H linear_shift} + constant
struct Majorizer {
    double scale = 0.0;
    cvec linear_shift;
    double constant = 0.0;

    double bound(const cvec &x) const;
};

Majorizer majorize(const HermitianMatrix &A, const cvec &x_tilde);

struct BeamformerSolution {
    Beamformer w;
    double ratio = 1.0;      // (1 + |h_B w|^2) / (1 + |h_E w|^2)
    double sdp_ratio = 1.0;  // optimal value of the lifted problem
    double rank_ratio = 0.0; // lambda_2 / lambda_1 of the lifted optimum
    bool randomized = false; // Gaussian randomization fallback used
    double relative_gap = 0.0;
};

/// Global optimum of max (1 + h_B R h_B^H)/(1 + h_E R h_E^H) over
/// tr R <= P_T, h_P R h_P^H <= P_I, R >= 0, followed by rank-one extraction.
/// h_B and h_E are noise-normalized rows, h_P is raw (P_I in watts, may be inf).
BeamformerSolution solve_beamformer_full(const crow &h_B, const crow &h_E, const crow &h_P, double P_T, double P_I);
BeamformerSolution solve_beamformer_full(const cvec &s, const ChannelSet &ch, double P_T, double P_I);

struct LmiMultipliers {
    double u1 = 0.0;
    double u2 = 0.0;
};

/// Eve error radii in noise-normalized units.
struct UncertaintyBounds {
    double eps_E = 0.0;
    double eps_AE = 0.0;

    UncertaintyBounds() = default;
    UncertaintyBounds(double eps_E, double eps_AE);
    /// From radii in raw channel units, divided once by sigma_E.
    static UncertaintyBounds from_raw(double eps_E_raw, double eps_AE_raw, double sigma_E);
};

/// Largest |(h_AE + d_AE + s^H (H_E + D_E)) w| over all admissible errors.
double worst_case_eve_amplitude(const cvec &w, const cvec &s, const ChannelSet &ch, const UncertaintyBounds &eps);

struct RobustBeamformerStep {
    Beamformer w;
    LmiMultipliers u;
    double objective = 0.0; // |h_B w|^2 (normalized)
    bool feasible = false;
};

/// One SCA step of the robust beamformer problem at fixed s and tau.
RobustBeamformerStep solve_beamformer_robust_step(const cvec &s, double tau, const ChannelSet &ch,
                                                  const UncertaintyBounds &eps, double P_T, double P_I,
                                                  const Beamformer &w_tilde);

struct PccpState {
    rvec b;
    rvec c;
    double gamma = 10.0;
    double gamma_max = 1e3;
    double t = 5.0;

    void advance();
};

struct PccpStep {
    cvec s;
    rvec b;
    rvec c;
    LmiMultipliers u;
    double objective = 0.0; // surrogate + gamma * (sum b + sum c) at the penalty used
    double slack_sum = 0.0;
    bool feasible = false;
};

/// One penalty convex-concave step on the phases at fixed w and tau. The
/// penalty weight in `state` is used and then advanced.
PccpStep pccp_phase_step(const cvec &w, double tau, const ChannelSet &ch, const UncertaintyBounds &eps,
                         const cvec &s_tilde, double P_I, PccpState &state);

struct MinPowerStep {
    Beamformer w;
    bool feasible = false;
};

/// min ||w||^2 s.t. interference <= P_I and the linearized SNR target at w_tilde.
MinPowerStep solve_minpower_step(const cvec &s, const ChannelSet &ch, double T, double P_I, const Beamformer &w_tilde);

} // namespace irs

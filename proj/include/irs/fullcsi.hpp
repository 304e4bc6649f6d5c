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

// Secrecy-rate maximization with perfect CSI: alternating beamformer and
// phase optimization, the phase step solved by fractional programming.

#include "irs/result.hpp"
#include "irs/subproblems.hpp"

#include <vector>

namespace irs {

/// Quadratic forms in s at a fixed transmit covariance.
struct PhaseForms {
    QuadraticForm bob; // 1 + |(h_AB + s^H H_B) w|^2, noise-normalized
    QuadraticForm eve; // 1 + |(h_AE + s^H H_E) w|^2, noise-normalized
    QuadraticForm pr;  // 1 + interference in watts
    double P_I = 0.0;  // +inf disables the interference constraint

    bool ipc_active() const;
    double interference(const cvec &s) const { return pr.power(s); }
};

PhaseForms phase_forms(const cmat &R, const ChannelSet &ch, double P_I);

/// Linear surrogates at s_tilde of
///   f(s) = eve(s) - ratio_u * bob(s)   and   interference(s).
/// On the unit circle f <= objective_constant + 2 Re{s^H combined} and
/// interference <= ipc_constant + 2 Re{s^H ipc_vector}, tight at s_tilde.
struct SurrogateCoeffs {
    cvec combined;
    double objective_constant = 0.0;
    cvec ipc_vector;
    double ipc_constant = 0.0;
    double tilde_P_I = 0.0; // P_I - ipc_constant

    double objective(const cvec &s) const;
    double ipc_value(const cvec &s) const; // 2 Re{s^H ipc_vector}
};

/// Largest eigenvalues used by the majorizers; they depend on ratio_u only.
struct SurrogateScales {
    double objective = 0.0;
    double ipc = 0.0;
};

SurrogateScales surrogate_scales(double ratio_u, const PhaseForms &forms);
SurrogateCoeffs surrogate_coeffs(double ratio_u, const PhaseForms &forms, const cvec &s_tilde);
SurrogateCoeffs surrogate_coeffs(double ratio_u, const PhaseForms &forms, const cvec &s_tilde,
                                 const SurrogateScales &scales);

/// f(s) = eve(s) - ratio_u * bob(s)
double dinkelbach_residual(double ratio_u, const PhaseForms &forms, const cvec &s);

/// Global minimizer of the linear surrogate over unit-modulus s.
PhaseVector phase_update_inactive(const SurrogateCoeffs &c);

/// Global minimizer of the surrogate plus mu * interference surrogate.
PhaseVector phase_update_penalized(const SurrogateCoeffs &c, double mu);

struct PenaltyState {
    double mu = 0.0;
    double mu_lower = 0.0;
    double mu_upper = 1.0;
    int iterations = 0;
};

struct PenaltyResult {
    PhaseVector s;
    PenaltyState state;
};

/// Bisection on the penalty weight until the linearized interference meets
/// tilde_P_I (relative tolerance `tolerance` of P_I). Returns the feasible end.
/// Requires the unpenalized update to violate the constraint.
PenaltyResult penalty_bisection(const SurrogateCoeffs &c, double P_I, double tolerance = 1e-12);

struct ScaTrace {
    PhaseVector s;
    std::vector<double> objective; // f(s_k), index 0 = start
    int iterations = 0;
};

struct ScaOptions {
    double tolerance = 1e-3; // stop when the decrease of f is below tolerance * eve(s)
    int max_iterations = 200;
    bool stop_when_negative = false; // return as soon as f(s) < 0
};

/// Majorization loop on f(s) for a fixed ratio_u under the interference limit.
ScaTrace sca_phase(double ratio_u, const PhaseForms &forms, const PhaseVector &s0, const ScaOptions &options = {});

struct DinkelbachState {
    double u = 0.0; // root estimate of min_s eve(s)/bob(s)
    double lower = 0.0;
    double upper = 0.0;
    double eve_form = 0.0; // at the returned s
    double bob_form = 0.0;
    int iterations = 0;

    /// |eve - u bob| / eve
    double relative_residual() const;
};

struct DinkelbachResult {
    PhaseVector s;
    DinkelbachState state;
};

/// Upper bound on bob(s) over all unit-modulus s for covariance R.
double bob_form_bound(const cmat &R, const ChannelSet &ch);

/// Phase step of the full-CSI AO: maximize bob(s)/eve(s) at w w^H = R,
/// bisecting the ratio in log scale.
struct DinkelbachOptions {
    double tolerance = 1e-4; // bracket width in log(u)
    ScaOptions sca{1e-9, 20000, true};
};

DinkelbachResult dinkelbach_phase(const cmat &R, const ChannelSet &ch, double P_I, const PhaseVector &s0,
                                  const DinkelbachOptions &options = {});

struct AoOptions {
    double tolerance = 1e-3; // relative change of the secrecy rate
    int max_iterations = 100;
    DinkelbachOptions phase;
    std::vector<DinkelbachState> *roots = nullptr; // one entry per phase step
};

/// Alternating optimization from the phase start s0 (w is optimized first).
RunResult ao_full_csi(const ChannelSet &ch, double P_T, double P_I, const PhaseVector &s0,
                      const AoOptions &options = {});

} // namespace irs

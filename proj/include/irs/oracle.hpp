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

// Brute-force reference solvers used to check the optimizers.

#include "irs/linalg.hpp"

#include <cstdint>
#include <functional>
#include <numbers>

namespace irs::oracle {

struct GridSpec {
    double resolution = std::numbers::pi / 180.0; // radians per step
    Eigen::Index dimensions = 1;

    /// Points per dimension, ceil(2 pi / resolution).
    long long steps() const;
    /// Throws InputError if the grid is empty or exceeds 1e7 points.
    void validate() const;
};

struct GridResult {
    bool found = false;
    cvec s;
    double value = 0.0;
};

using PhaseObjective = std::function<double(const cvec &)>;
using PhasePredicate = std::function<bool(const cvec &)>;

/// Exhaustive maximization over the phase grid. `feasible` may be empty.
GridResult grid_search_phase(const PhaseObjective &objective, const PhasePredicate &feasible, const GridSpec &spec);

struct BeamformerSample {
    bool found = false;
    cvec w;
    double value = 0.0;
};

using BeamObjective = std::function<double(const cvec &)>;
using BeamPredicate = std::function<bool(const cvec &)>;

/// Draws isotropic directions, scales each to the largest feasible power not
/// above P_T (bisection on the power; feasibility must be monotone in it) and
/// keeps the best objective.
BeamformerSample random_rank_one_beamformer(const BeamObjective &objective, const BeamPredicate &feasible,
                                            Eigen::Index m, double P_T, long long samples, std::uint64_t seed);

} // namespace irs::oracle

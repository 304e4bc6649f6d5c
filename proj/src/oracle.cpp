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

#include "irs/oracle.hpp"

#include <cmath>
#include <random>

namespace irs::oracle {

long long GridSpec::steps() const {
    return static_cast<long long>(std::ceil(2.0 * std::numbers::pi / resolution - 1e-9));
}

void GridSpec::validate() const {
    if (!(resolution > 0.0) || !std::isfinite(resolution)) throw InputError("GridSpec: resolution must be positive");
    if (dimensions < 1) throw InputError("GridSpec: at least one dimension");
    const double total = std::pow(static_cast<double>(steps()), static_cast<double>(dimensions));
    if (total > 1e7) throw InputError("GridSpec: grid exceeds 1e7 points");
}

GridResult grid_search_phase(const PhaseObjective &objective, const PhasePredicate &feasible, const GridSpec &spec) {
    spec.validate();
    const long long k = spec.steps();
    const Eigen::Index n = spec.dimensions;
    std::vector<cdouble> table(static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i) table[static_cast<std::size_t>(i)] = std::polar(1.0, spec.resolution * i);

    GridResult best;
    std::vector<long long> idx(static_cast<std::size_t>(n), 0);
    cvec s(n);
    while (true) {
        for (Eigen::Index i = 0; i < n; ++i) s(i) = table[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        if (!feasible || feasible(s)) {
            const double v = objective(s);
            if (!best.found || v > best.value) {
                best.found = true;
                best.value = v;
                best.s = s;
            }
        }
        Eigen::Index d = 0;
        while (d < n && ++idx[static_cast<std::size_t>(d)] == k) idx[static_cast<std::size_t>(d++)] = 0;
        if (d == n) break;
    }
    return best;
}

BeamformerSample random_rank_one_beamformer(const BeamObjective &objective, const BeamPredicate &feasible,
                                            Eigen::Index m, double P_T, long long samples, std::uint64_t seed) {
    if (samples < 1) throw InputError("random_rank_one_beamformer: samples must be >= 1");
    if (m < 1 || !(P_T > 0.0)) throw InputError("random_rank_one_beamformer: bad dimensions or power");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    BeamformerSample best;
    cvec dir(m);
    for (long long t = 0; t < samples; ++t) {
        for (Eigen::Index k = 0; k < m; ++k) dir(k) = {g(rng), g(rng)};
        dir.normalize();
        double p = P_T;
        if (!feasible(std::sqrt(p) * dir)) {
            double lo = 0.0, hi = P_T;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (feasible(std::sqrt(mid) * dir) ? lo : hi) = mid;
            }
            p = lo;
        }
        const cvec w = std::sqrt(p) * dir;
        const double v = objective(w);
        if (!best.found || v > best.value) {
            best.found = true;
            best.value = v;
            best.w = w;
        }
    }
    return best;
}

} // namespace irs::oracle

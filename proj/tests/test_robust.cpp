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

#include "irs/fullcsi.hpp"
#include "irs/oracle.hpp"
#include "irs/robust.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace irs;
using namespace irs::testing;

namespace {

constexpr double P_T = 1.0;  // 30 dBm
constexpr double P_I = 1.0;  // 30 dBm

PhaseVector random_start(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return PhaseVector(random_phases(n, rng));
}

LineSearchOptions coarse_search() {
    LineSearchOptions o;
    o.grid.spacing = 0.25;
    o.grid.log_samples = 4;
    return o;
}

} // namespace

TEST_CASE("tau upper bound") {
    SECTION("no reflecting path") {
        const ChannelSet ch = small_channels(3, 4, 11).with_irs_zeroed();
        const TauBound b = tau_upper_bound(ch, P_T);
        CHECK(b.tau_max == Catch::Approx(P_T * ch.h_AB_n.squaredNorm()).epsilon(1e-12));
    }
    SECTION("beats random phases") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const ChannelSet ch = small_channels(3, 6, seed);
            const TauBound b = tau_upper_bound(ch, P_T);
            CHECK(b.s_opt.modulus_error() <= 1e-12);
            std::mt19937_64 rng(seed + 50);
            double best_random = 0.0;
            for (int k = 0; k < 1000; ++k) best_random = std::max(best_random, bob_gain(ch, random_phases(6, rng)));
            CHECK(b.tau_max / P_T >= best_random);
        }
    }
    SECTION("matches the phase grid for two elements") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const ChannelSet ch = small_channels(2, 2, seed);
            const TauBound b = tau_upper_bound(ch, P_T);
            oracle::GridSpec spec;
            spec.dimensions = 2;
            const auto g = oracle::grid_search_phase([&](const cvec &s) { return bob_gain(ch, s); }, {}, spec);
            REQUIRE(g.found);
            CHECK(b.tau_max / P_T >= g.value * (1.0 - 1e-9) - 1e-3);
        }
    }
}

TEST_CASE("tau grid") {
    SECTION("small bound stays on the linear part") {
        const auto g = tau_grid(0.5);
        REQUIRE(g.size() == 51);
        CHECK(g.front() == 0.0);
        CHECK(g.back() == Catch::Approx(0.5));
        for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] - g[k - 1] == Catch::Approx(0.01));
    }
    SECTION("large bound adds log-spaced samples") {
        const auto g = tau_grid(1e4);
        REQUIRE(g.size() == 121);
        CHECK(g[100] == Catch::Approx(1.0));
        CHECK(g.back() == Catch::Approx(1e4));
        for (std::size_t k = 101; k < g.size(); ++k) CHECK(g[k] / g[k - 1] == Catch::Approx(std::pow(1e4, 0.05)));
    }
    SECTION("invalid input") {
        CHECK_THROWS_AS(tau_grid(-1.0), InputError);
        TauGridOptions o;
        o.spacing = 0.0;
        CHECK_THROWS_AS(tau_grid(1.0, o), InputError);
    }
}

TEST_CASE("robust alternating optimization at fixed tau") {
    const ChannelSet ch = small_channels(3, 4, 21);
    const PhaseVector s0 = random_start(4, 22);

    SECTION("exact CSI with the full-CSI leakage as tau") {
        const RunResult full = ao_full_csi(ch, P_T, P_I, s0);
        const double leak = std::norm((effective_row(ch.h_AE_n, ch.H_E_n, full.s) * full.w.w).value());
        const RobustAoResult r = ao_robust(leak, ch, UncertaintyBounds{}, P_T, P_I, s0);
        REQUIRE(r.feasible);
        const double full_ratio = std::exp2(full.rates.C_s);
        CHECK(std::abs(r.phi - full_ratio) <= 0.05 * full_ratio);
    }

    const UncertaintyBounds eps(5.0, 5.0);
    for (double tau : {0.0, 0.3, 50.0}) {
        DYNAMIC_SECTION("bounded errors, tau = " << tau) {
            const RobustAoResult r = ao_robust(tau, ch, eps, P_T, P_I, s0);
            REQUIRE(r.feasible);
            CHECK(r.tau >= tau);
            CHECK(r.phi >= 1.0 / (1.0 + r.tau));
            for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k] >= r.trace[k - 1]);
            CHECK(r.slack_sum <= 1e-4);
            CHECK(r.modulus_error <= 1e-3);
            CHECK(PhaseVector(r.s).modulus_error() <= 1e-9);
            CHECK(r.w.power() <= P_T * (1.0 + 1e-6));
            const double interference = std::norm((effective_row(ch.h_AP, ch.H_P, r.s) * r.w.w).value());
            CHECK(interference <= P_I * (1.0 + 1e-6));
            const double worst = worst_case_eve_amplitude(r.w.w, r.s, ch, eps);
            CHECK(worst * worst <= r.tau * (1.0 + 1e-6) + 1e-9);
            CHECK(sampled_eve_power(r.w.w, r.s, ch, eps, 100, 7) <= r.tau + 1e-6);
        }
    }

    SECTION("zero bound gives the zero-leakage design") {
        const TauBound b = tau_upper_bound(ch, P_T);
        const RobustAoResult r = ao_robust(0.0, ch, UncertaintyBounds{}, P_T, P_I, s0);
        REQUIRE(r.feasible);
        CHECK(r.tau == kTauFloor);
        CHECK(std::log2(r.phi) <= std::log2(1.0 + b.tau_max));
    }

    SECTION("invalid input") {
        CHECK_THROWS_AS(ao_robust(-1.0, ch, eps, P_T, P_I, s0), InputError);
        CHECK_THROWS_AS(ao_robust(1.0, ch, eps, P_T, P_I, random_start(3, 1)), InputError);
    }
}

TEST_CASE("line search over the certified Eve power") {
    const ChannelSet ch = small_channels(2, 3, 31);
    const PhaseVector s0 = random_start(3, 32);

    SECTION("selected sample dominates the grid") {
        std::vector<TauSample> samples;
        LineSearchOptions o = coarse_search();
        o.samples = &samples;
        const UncertaintyBounds eps(5.0, 5.0);
        const RunResult r = line_search_tau(ch, eps, P_T, P_I, s0, o);
        REQUIRE(!samples.empty());
        double best_phi = 0.0;
        for (const auto &smp : samples) best_phi = std::max(best_phi, smp.phi);
        CHECK(r.certified_rate == Catch::Approx(std::max(0.0, std::log2(best_phi))).epsilon(1e-12));
        CHECK(r.certified_rate <= r.rates.C_B);
        CHECK(sampled_eve_power(r.w.w, r.s, ch, eps, 100, 9) <= r.tau_opt + 1e-6);
    }

    SECTION("exact CSI is a relaxation of the fixed-phase full-CSI beamformer") {
        const RunResult r = line_search_tau(ch, UncertaintyBounds{}, P_T, P_I, s0, coarse_search());
        const BeamformerSolution full = solve_beamformer_full(r.s, ch, P_T, P_I);
        CHECK(r.certified_rate <= std::log2(full.sdp_ratio) + 1e-6);
    }

    SECTION("larger error radii never help") {
        double previous = std::numeric_limits<double>::infinity();
        for (double e : {0.0, 2.0, 20.0}) {
            const RunResult r = line_search_tau(ch, UncertaintyBounds(e, e), P_T, P_I, s0, coarse_search());
            CHECK(r.certified_rate <= previous + 1e-6);
            previous = r.certified_rate;
        }
    }
}

TEST_CASE("sampled Eve power") {
    const ChannelSet ch = small_channels(2, 3, 41);
    std::mt19937_64 rng(42);
    const cvec w = random_complex(2, rng);
    const cvec s = random_phases(3, rng);
    const double nominal = std::norm((effective_row(ch.h_AE_n, ch.H_E_n, s) * w).value());
    CHECK(sampled_eve_power(w, s, ch, UncertaintyBounds{}, 10, 1) == Catch::Approx(nominal).epsilon(1e-12));
    const UncertaintyBounds eps(3.0, 2.0);
    const double worst = worst_case_eve_amplitude(w, s, ch, eps);
    const double sampled = sampled_eve_power(w, s, ch, eps, 200, 3);
    CHECK(sampled >= nominal * 0.0);
    CHECK(sampled <= worst * worst * (1.0 + 1e-12));
}

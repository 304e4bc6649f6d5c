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
#include "irs/subproblems.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace irs;
using namespace irs::testing;
using Catch::Approx;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double snr(const crow &h, const cvec &w) { return std::norm((h * w).value()); }

} // namespace

TEST_CASE("quadratic_params expands the effective-channel power") {
    std::mt19937_64 rng(11);
    const ChannelSet ch = small_channels(3, 4, 2);

    SECTION("zero covariance") {
        const auto q = quadratic_params(cmat::Zero(3, 3), ch.h_AB_n, ch.H_B_n);
        CHECK(q.constant == 0.0);
        CHECK(q.linear.norm() == 0.0);
        CHECK(q.quadratic.matrix().norm() == 0.0);
    }
    SECTION("identity covariance") {
        const auto q = quadratic_params(cmat::Identity(3, 3), ch.h_AB_n, ch.H_B_n);
        CHECK(q.constant == Approx(ch.h_AB_n.squaredNorm()).epsilon(1e-12));
        CHECK((q.linear - ch.H_B_n * ch.h_AB_n.adjoint()).norm() <= 1e-12 * q.linear.norm());
        CHECK((q.quadratic.matrix() - ch.H_B_n * ch.H_B_n.adjoint()).norm() <= 1e-12 * q.quadratic.matrix().norm());
    }
    SECTION("random covariance against direct evaluation") {
        const cvec w = random_complex(3, rng);
        const cmat R = w * w.adjoint() + 0.3 * cmat::Identity(3, 3);
        const auto q = quadratic_params(R, ch.h_AB_n, ch.H_B_n);
        for (int t = 0; t < 10; ++t) {
            const cvec s = random_complex(4, rng);
            const crow h = effective_row(ch.h_AB_n, ch.H_B_n, s);
            const double direct = 1.0 + (h * R * h.adjoint()).value().real();
            CHECK(q.evaluate(s) == Approx(direct).epsilon(1e-10));
        }
    }
}

TEST_CASE("majorize gives a tight global upper bound") {
    std::mt19937_64 rng(4);
    SECTION("identity is exact everywhere") {
        const cvec xt = random_complex(3, rng);
        const auto mj = majorize(HermitianMatrix::identity(3), xt);
        const cvec x = random_complex(3, rng);
        CHECK(mj.bound(x) == Approx(x.squaredNorm()).epsilon(1e-12));
    }
    SECTION("tight at the expansion point") {
        cmat a = cmat::Zero(2, 2);
        a(0, 0) = 2.0;
        cvec e2 = cvec::Zero(2);
        e2(1) = 1.0;
        const auto mj = majorize(HermitianMatrix(a), e2);
        CHECK(mj.bound(e2) == Approx(0.0).margin(1e-12));
    }
    SECTION("random matrices and points") {
        for (int trial = 0; trial < 5; ++trial) {
            const HermitianMatrix A(random_hermitian(5, rng));
            const cvec xt = random_complex(5, rng);
            const auto mj = majorize(A, xt);
            CHECK(mj.bound(xt) == Approx(A.quadratic(xt)).margin(1e-12 * (1.0 + std::abs(A.quadratic(xt)))));
            for (int t = 0; t < 100; ++t) {
                const cvec x = random_complex(5, rng);
                CHECK(A.quadratic(x) <= mj.bound(x) + 1e-10);
            }
        }
    }
}

TEST_CASE("full-CSI beamformer limits") {
    const ChannelSet ch = small_channels(3, 0, 5);
    const crow hB = ch.h_AB_n;
    const double P_T = 1.0;

    SECTION("no eavesdropper and no interference limit gives MRT") {
        const auto sol = solve_beamformer_full(hB, crow::Zero(3), ch.h_AP, P_T, inf);
        const double expected = 1.0 + P_T * hB.squaredNorm();
        CHECK(sol.ratio == Approx(expected).epsilon(1e-8));
        const cvec mrt = std::sqrt(P_T) * hB.adjoint() / hB.norm();
        CHECK(std::abs(mrt.dot(sol.w.w)) == Approx(P_T).epsilon(1e-6));
        CHECK_FALSE(sol.randomized);
    }
    SECTION("aligned stronger eavesdropper gives no secrecy") {
        const auto sol = solve_beamformer_full(hB, 2.0 * hB, ch.h_AP, P_T, inf);
        CHECK(sol.ratio == Approx(1.0).margin(1e-9));
        CHECK(sol.sdp_ratio == Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("full-CSI beamformer beats random rank-one beamformers") {
    int tight = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const ChannelSet ch = small_channels(2, 2, seed);
        std::mt19937_64 rng(seed);
        const cvec s = random_phases(2, rng);
        const crow hB = effective_row(ch.h_AB_n, ch.H_B_n, s);
        const crow hE = effective_row(ch.h_AE_n, ch.H_E_n, s);
        const crow hP = effective_row(ch.h_AP, ch.H_P, s);
        const double P_T = 1.0, P_I = 1e-3;
        const auto sol = solve_beamformer_full(hB, hE, hP, P_T, P_I);
        CHECK(sol.w.power() <= P_T * (1.0 + 1e-6));
        CHECK(snr(hP, sol.w.w) <= P_I * (1.0 + 1e-6));
        CHECK(sol.relative_gap <= 1e-7);
        if (sol.rank_ratio <= 1e-6) ++tight;

        auto ratio = [&](const cvec &w) { return (1.0 + snr(hB, w)) / (1.0 + snr(hE, w)); };
        auto feasible = [&](const cvec &w) { return snr(hP, w) <= P_I; };
        const auto best = oracle::random_rank_one_beamformer(ratio, feasible, 2, P_T, 20000, seed);
        CHECK(sol.ratio >= best.value - 1e-6 * best.value);
    }
    CHECK(tight >= 3);
}

TEST_CASE("robust beamformer step") {
    const ChannelSet ch = small_channels(3, 2, 7);
    std::mt19937_64 rng(7);
    const cvec s = random_phases(2, rng);
    const crow hB = effective_row(ch.h_AB_n, ch.H_B_n, s);
    const double P_T = 1.0;

    SECTION("always feasible for tau >= 0") {
        const UncertaintyBounds eps(1e2, 1e2);
        const auto st = solve_beamformer_robust_step(s, 1e-3, ch, eps, P_T, 1.0, Beamformer{cvec::Zero(3)});
        CHECK(st.feasible);
    }
    SECTION("no uncertainty and loose tau approaches MRT") {
        const crow hE = effective_row(ch.h_AE_n, ch.H_E_n, s);
        const double tau = 2.0 * P_T * hE.squaredNorm();
        Beamformer w{1e-3 * hB.adjoint() / hB.norm()};
        for (int it = 0; it < 20; ++it) w = solve_beamformer_robust_step(s, tau, ch, {}, P_T, inf, w).w;
        CHECK(snr(hB, w.w) == Approx(P_T * hB.squaredNorm()).epsilon(1e-5));
    }
    SECTION("SCA ascent and worst-case soundness") {
        const UncertaintyBounds eps(5.0, 5.0);
        const double tau = 0.5;
        Beamformer w{random_complex(3, rng) * 1e-6};
        double prev = snr(hB, w.w);
        for (int it = 0; it < 10; ++it) {
            const auto st = solve_beamformer_robust_step(s, tau, ch, eps, P_T, 1e-3, w);
            REQUIRE(st.feasible);
            CHECK(st.objective >= prev * (1.0 - 1e-6));
            prev = st.objective;
            w = st.w;
        }
        CHECK(w.power() <= P_T * (1.0 + 1e-6));
        CHECK(std::pow(worst_case_eve_amplitude(w.w, s, ch, eps), 2) <= tau * (1.0 + 1e-6) + 1e-8);
        std::normal_distribution<double> g;
        for (int t = 0; t < 100; ++t) {
            cmat dE(2, 3);
            for (Eigen::Index i = 0; i < dE.size(); ++i) dE(i) = {g(rng), g(rng)};
            dE *= eps.eps_E / dE.norm();
            crow dAE = random_complex(3, rng).transpose();
            dAE *= eps.eps_AE / dAE.norm();
            const crow eve = ch.h_AE_n + dAE + s.adjoint() * (ch.H_E_n + dE);
            CHECK(snr(eve, w.w) <= tau + 1e-6);
        }
    }
}

TEST_CASE("P-CCP penalty schedule") {
    PccpState st;
    CHECK(st.gamma == 10.0);
    st.advance();
    CHECK(st.gamma == 50.0);
    st.gamma = 500.0;
    st.advance();
    CHECK(st.gamma == 1000.0);
}

TEST_CASE("P-CCP phase step") {
    SECTION("single element aligns with the grid optimum") {
        const ChannelSet ch = small_channels(2, 1, 3);
        std::mt19937_64 rng(3);
        const cvec w = 0.5 * random_complex(2, rng);
        cvec s = cvec::Ones(1);
        PccpState st;
        for (int it = 0; it < 60; ++it) {
            const auto step = pccp_phase_step(w, 1e12, ch, {}, s, inf, st);
            REQUIRE(step.feasible);
            for (Eigen::Index i = 0; i < 1; ++i) {
                CHECK(std::norm(step.s(i)) <= 1.0 + step.c(i) + 1e-7);
                CHECK(std::norm(step.s(i)) >= 1.0 - step.b(i) - 1e-7);
            }
            s = step.s;
        }
        CHECK(std::abs(std::abs(s(0)) - 1.0) <= 1e-3);
        oracle::GridSpec spec;
        spec.dimensions = 1;
        auto obj = [&](const cvec &x) { return std::abs((effective_row(ch.h_AB_n, ch.H_B_n, x) * w).value()); };
        const auto best = oracle::grid_search_phase(obj, {}, spec);
        const cvec unit = s.cwiseQuotient(s.cwiseAbs().cast<cdouble>());
        CHECK(obj(unit) >= best.value * (1.0 - 1e-3));
    }
    SECTION("slacks vanish at the maximum penalty") {
        const ChannelSet ch = small_channels(3, 4, 8);
        std::mt19937_64 rng(8);
        const cvec w = 0.3 * random_complex(3, rng);
        cvec s = random_phases(4, rng);
        PccpState st;
        st.gamma = st.gamma_max;
        PccpStep step;
        for (int it = 0; it < 400; ++it) {
            step = pccp_phase_step(w, 1e12, ch, {}, s, inf, st);
            REQUIRE(step.feasible);
            const double moved = (step.s - s).norm();
            s = step.s;
            if (moved < 1e-7) break;
        }
        CHECK(step.slack_sum <= 1e-4);
    }
}

TEST_CASE("min-power SCA step") {
    const double T = 1e4;
    SECTION("zero target") {
        const ChannelSet ch = small_channels(3, 2, 1);
        const auto st = solve_minpower_step(cvec::Ones(2), ch, 0.0, inf, Beamformer{cvec::Ones(3)});
        CHECK(st.feasible);
        CHECK(st.w.power() == 0.0);
    }
    SECTION("loose interference limit gives MRT") {
        const ChannelSet ch = small_channels(3, 2, 1);
        const cvec s = cvec::Ones(2);
        const crow hB = effective_row(ch.h_AB_n, ch.H_B_n, s);
        Beamformer w{std::sqrt(4.0 * T) * hB.adjoint() / hB.squaredNorm()};
        for (int it = 0; it < 30; ++it) w = solve_minpower_step(s, ch, T, inf, w).w;
        CHECK(w.power() == Approx(T / hB.squaredNorm()).epsilon(1e-4));
        CHECK(snr(hB, w.w) == Approx(T).epsilon(1e-3));
    }
    SECTION("random instance beats scaled random directions") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const ChannelSet ch = small_channels(2, 2, seed);
            std::mt19937_64 rng(seed);
            const cvec s = random_phases(2, rng);
            const crow hB = effective_row(ch.h_AB_n, ch.H_B_n, s);
            const crow hP = effective_row(ch.h_AP, ch.H_P, s);
            const double P_I = 0.2 * T / hB.squaredNorm() * hP.squaredNorm();
            // feasible start: Bob direction projected off the PR row
            cvec d = hB.adjoint() - hP.adjoint() * (hP * hB.adjoint()).value() / hP.squaredNorm();
            Beamformer w{std::sqrt(T) * d / std::abs((hB * d).value())};
            for (int it = 0; it < 60; ++it) {
                const auto st = solve_minpower_step(s, ch, T, P_I, w);
                REQUIRE(st.feasible);
                w = st.w;
            }
            CHECK(snr(hP, w.w) <= P_I * (1.0 + 1e-6));
            CHECK(snr(hB, w.w) >= T * (1.0 - 1e-6));
            std::normal_distribution<double> g;
            double best = inf;
            for (int t = 0; t < 100000; ++t) {
                cvec v(2);
                v << cdouble(g(rng), g(rng)), cdouble(g(rng), g(rng));
                v *= std::sqrt(T) / std::abs((hB * v).value());
                if (snr(hP, v) <= P_I) best = std::min(best, v.squaredNorm());
            }
            CHECK(w.power() <= best * (1.0 + 1e-6));
        }
    }
}

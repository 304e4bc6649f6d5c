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

#include "irs/conic.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace irs;
using namespace irs::conic;
using Catch::Approx;

namespace {

cmat random_hermitian(Eigen::Index d, std::mt19937_64 &rng, double scale = 1.0) {
    std::normal_distribution<double> g;
    cmat a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
    return scale * 0.5 * (a + a.adjoint());
}

} // namespace

TEST_CASE("largest y with A - yI psd is the smallest eigenvalue") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const cmat a = random_hermitian(5, rng);
        LmiProblem p(1);
        p.objective()(0) = 1.0;
        const int b = p.add_hermitian_block(a);
        p.add_hermitian_term(b, 0, -cmat::Identity(5, 5));
        const auto sol = solve(p);
        REQUIRE(sol.status == SolveStatus::optimal);
        const double lmin = hermitian_eig(HermitianMatrix(a)).values.minCoeff();
        CHECK(sol.y(0) == Approx(lmin).margin(1e-8));
        CHECK(sol.relative_gap < 1e-7);
    }
}

TEST_CASE("smallest t with tI - A psd is the largest eigenvalue, badly scaled") {
    std::mt19937_64 rng(5);
    const cmat a = random_hermitian(4, rng, 1e7);
    LmiProblem p(1);
    p.objective()(0) = -1.0;
    const int b = p.add_hermitian_block(-a);
    p.add_hermitian_term(b, 0, cmat::Identity(4, 4));
    const auto sol = solve(p);
    REQUIRE(sol.usable());
    const double lmax = hermitian_eig(HermitianMatrix(a)).values(0);
    CHECK(sol.y(0) == Approx(lmax).epsilon(1e-8));
}

TEST_CASE("linear rows behave as an LP") {
    LmiProblem p(2);
    p.objective() << 1.0, 1.0;
    p.add_linear(1.0, {{0, -1.0}});
    p.add_linear(2.0, {{1, -1.0}});
    p.add_linear(0.0, {{0, 1.0}});
    const auto sol = solve(p);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.y(0) == Approx(1.0).margin(1e-8));
    CHECK(sol.y(1) == Approx(2.0).margin(1e-8));
    CHECK(sol.objective == Approx(3.0).margin(1e-8));
}

TEST_CASE("norm-ball constraint through a Schur block") {
    // maximize c^T y subject to ||y|| <= 2, written as [[2, y^T], [y, 2 I]] >= 0
    LmiProblem p(3);
    p.objective() << 1.0, -2.0, 2.0;
    rmat c = 2.0 * rmat::Identity(4, 4);
    const int b = p.add_symmetric_block(c);
    for (int i = 0; i < 3; ++i) {
        rmat e = rmat::Zero(4, 4);
        e(0, i + 1) = e(i + 1, 0) = 1.0;
        p.add_symmetric_term(b, i, e);
    }
    const auto sol = solve(p);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.objective == Approx(2.0 * 3.0).margin(1e-7));
    CHECK(sol.infeasibility < 1e-8);
}

TEST_CASE("infeasible LMI is reported") {
    LmiProblem p(1);
    p.objective()(0) = 1.0;
    p.add_linear(-1.0, {{0, 1.0}});
    p.add_linear(0.0, {{0, -1.0}});
    const auto sol = solve(p);
    CHECK_FALSE(sol.status == SolveStatus::optimal);
}

TEST_CASE("a variable that enters no constraint is rejected") {
    LmiProblem p(2);
    p.objective() << 1.0, 0.0;
    p.add_linear(1.0, {{0, -1.0}});
    CHECK_THROWS_AS(solve(p), InputError);
}

TEST_CASE("hermitian embedding preserves eigenvalues") {
    std::mt19937_64 rng(9);
    const cmat a = random_hermitian(3, rng);
    const rvec ev = hermitian_eig(HermitianMatrix(a)).values;
    Eigen::SelfAdjointEigenSolver<rmat> es(embed_hermitian(a));
    const rvec emb = es.eigenvalues();
    for (int i = 0; i < 3; ++i) {
        CHECK(emb(2 * i) == Approx(ev(2 - i)).margin(1e-10));
        CHECK(emb(2 * i + 1) == Approx(ev(2 - i)).margin(1e-10));
    }
}

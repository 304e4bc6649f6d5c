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

#include "irs/linalg.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace irs;
using namespace irs::testing;

TEST_CASE("Hermitian matrix construction") {
    cmat a(2, 2);
    a << 1.0, cdouble(0.0, 1.0), cdouble(0.0, -1.0), 2.0;
    const HermitianMatrix h(a);
    CHECK(h.dim() == 2);
    const cvec x = cvec::Ones(2);
    CHECK(h.quadratic(x) == Catch::Approx(3.0));

    cmat bad = a;
    bad(0, 1) = 5.0;
    CHECK_THROWS_AS(HermitianMatrix(bad), InputError);
    CHECK_THROWS_AS(HermitianMatrix(cmat(2, 3)), InputError);
    cmat nan = a;
    nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(HermitianMatrix(nan), InputError);
}

TEST_CASE("Hermitian eigensystem") {
    SECTION("identity") {
        const EigenSystem e = hermitian_eig(HermitianMatrix::identity(2));
        CHECK(e.values(0) == Catch::Approx(1.0));
        CHECK(e.values(1) == Catch::Approx(1.0));
    }
    SECTION("diagonal") {
        cmat d = cmat::Zero(2, 2);
        d(0, 0) = 2.0;
        const EigenSystem e = hermitian_eig(HermitianMatrix(d));
        CHECK(e.values(0) == Catch::Approx(2.0));
        CHECK(std::abs(e.values(1)) <= 1e-15);
        CHECK(std::abs(std::abs(e.vectors(0, 0)) - 1.0) <= 1e-12);
        CHECK(std::abs(std::abs(e.vectors(1, 1)) - 1.0) <= 1e-12);
    }
    SECTION("random reconstruction, ordering, trace") {
        std::mt19937_64 rng(1);
        for (int trial = 0; trial < 20; ++trial) {
            const cmat a = random_hermitian(6, rng);
            const EigenSystem e = hermitian_eig(HermitianMatrix(a));
            const double scale = a.norm();
            for (Eigen::Index i = 1; i < 6; ++i) CHECK(e.values(i) <= e.values(i - 1));
            const cmat rebuilt = e.vectors * e.values.cast<cdouble>().asDiagonal() * e.vectors.adjoint();
            CHECK((rebuilt - a).norm() <= 1e-9 * scale);
            CHECK((e.vectors.adjoint() * e.vectors - cmat::Identity(6, 6)).norm() <= 1e-10);
            for (Eigen::Index i = 0; i < 6; ++i)
                CHECK((a * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).norm() <= 1e-9 * scale);
            CHECK(std::abs(e.values.sum() - a.trace().real()) <= 1e-9 * scale);
            CHECK(lambda_max(HermitianMatrix(a)) == e.values(0));
        }
    }
}

TEST_CASE("null space basis") {
    SECTION("zero matrix") {
        const cmat u = null_space_basis(HermitianMatrix::zero(3));
        REQUIRE(u.cols() == 3);
        CHECK((u.adjoint() * u - cmat::Identity(3, 3)).norm() <= 1e-10);
    }
    SECTION("identity") { CHECK(null_space_basis(HermitianMatrix::identity(4)).cols() == 0); }
    SECTION("rank two") {
        std::mt19937_64 rng(2);
        for (int trial = 0; trial < 10; ++trial) {
            const cvec x = random_complex(4, rng), y = random_complex(4, rng);
            const cmat a = x * x.adjoint() + y * y.adjoint();
            const cmat u = null_space_basis(HermitianMatrix(a));
            REQUIRE(u.cols() == 2);
            CHECK((u.adjoint() * u - cmat::Identity(2, 2)).norm() <= 1e-10);
            CHECK((u.adjoint() * x).norm() <= 1e-9 * x.norm());
            CHECK((u.adjoint() * y).norm() <= 1e-9 * y.norm());
            const cvec w = a * random_complex(4, rng);
            CHECK((u.adjoint() * w).norm() <= 1e-8 * w.norm());
        }
    }
}

TEST_CASE("entrywise phase") {
    cvec v(2);
    v << cdouble(1.0, 0.0), cdouble(0.0, 1.0);
    const PhaseExtraction p = entrywise_phase(v);
    CHECK(std::abs(p.phases[0] - cdouble(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(p.phases[1] - cdouble(0.0, 1.0)) <= 1e-15);
    CHECK(p.degenerate.empty());

    std::mt19937_64 rng(3);
    const cvec r = random_complex(8, rng);
    const PhaseExtraction a = entrywise_phase(r), b = entrywise_phase(r * 7.5);
    CHECK((a.phases.values() - b.phases.values()).norm() <= 1e-15);
    CHECK(a.phases.modulus_error() <= 1e-15);

    cvec z = r;
    z(3) = 0.0;
    const PhaseExtraction d = entrywise_phase(z);
    REQUIRE(d.degenerate.size() == 1);
    CHECK(d.degenerate[0] == 3);
    CHECK(d.phases[3] == cdouble(1.0, 0.0));
    CHECK_THROWS_AS(entrywise_phase_strict(z), InputError);
}

TEST_CASE("phase vector") {
    CHECK_THROWS_AS(PhaseVector(cvec::Constant(2, 1.1)), InputError);
    CHECK_NOTHROW(PhaseVector(cvec::Constant(2, 1.0005), 1e-3));
    CHECK(PhaseVector::ones(3).modulus_error() == 0.0);
    rvec theta(2);
    theta << 0.0, std::numbers::pi / 2.0;
    const PhaseVector s = PhaseVector::from_angles(theta);
    CHECK(std::abs(s[1] - cdouble(0.0, 1.0)) <= 1e-15);
}

TEST_CASE("bisection") {
    SECTION("increasing") {
        BisectionSpec spec;
        spec.lower = 0.0;
        spec.upper = 4.0;
        spec.evaluator = [](double x) { return x - 2.0; };
        const BisectionResult r = bisect(spec);
        CHECK(std::abs(r.root - 2.0) <= 1e-3);
        CHECK(r.upper - r.lower <= 1e-3);
        CHECK(r.iterations <= static_cast<int>(std::ceil(std::log2(4.0 / 1e-3))) + 1);
    }
    SECTION("decreasing") {
        BisectionSpec spec;
        spec.lower = -1.0;
        spec.upper = 1.0;
        spec.tolerance = 1e-6;
        spec.direction = Monotonicity::decreasing;
        spec.evaluator = [](double x) { return -x + 0.1234; };
        const BisectionResult r = bisect(spec);
        CHECK(std::abs(r.root - 0.1234) <= 1e-6);
        CHECK(r.lower <= r.root);
        CHECK(r.root <= r.upper);
    }
    SECTION("same-signed bracket") {
        BisectionSpec spec;
        spec.evaluator = [](double x) { return x + 1.0; };
        CHECK_THROWS_AS(bisect(spec), BracketError);
    }
    SECTION("invalid bracket") {
        BisectionSpec spec;
        spec.lower = 1.0;
        spec.upper = 0.0;
        spec.evaluator = [](double x) { return x; };
        CHECK_THROWS_AS(bisect(spec), InputError);
    }
}

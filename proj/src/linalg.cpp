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

#include <algorithm>
#include <cmath>
#include <string>

namespace irs {

namespace {

bool all_finite(const cmat &a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

} // namespace

HermitianMatrix::HermitianMatrix(cmat entries) {
    if (entries.rows() != entries.cols() || entries.rows() < 1)
        throw InputError("HermitianMatrix: matrix must be square with dimension >= 1");
    if (!all_finite(entries)) throw InputError("HermitianMatrix: non-finite entries");
    const double scale = std::max(1.0, entries.norm());
    if ((entries - entries.adjoint()).norm() > 1e-12 * scale)
        throw InputError("HermitianMatrix: matrix is not conjugate-symmetric");
    a_ = 0.5 * (entries + entries.adjoint());
    for (Eigen::Index i = 0; i < a_.rows(); ++i) a_(i, i) = a_(i, i).real();
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) { return HermitianMatrix(cmat::Zero(dim, dim)); }

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) { return HermitianMatrix(cmat::Identity(dim, dim)); }

double HermitianMatrix::quadratic(const cvec &x) const { return (x.adjoint() * a_ * x).value().real(); }

EigenSystem hermitian_eig(const HermitianMatrix &a) {
    Eigen::SelfAdjointEigenSolver<cmat> solver(a.matrix());
    if (solver.info() != Eigen::Success) throw InputError("hermitian_eig: eigen decomposition failed");
    const Eigen::Index d = a.dim();
    EigenSystem out{rvec(d), cmat(d, d)};
    // Eigen sorts ascending
    for (Eigen::Index i = 0; i < d; ++i) {
        out.values(i) = solver.eigenvalues()(d - 1 - i);
        out.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
    }
    return out;
}

double lambda_max(const HermitianMatrix &a) {
    if (a.dim() == 1) return a.matrix()(0, 0).real();
    Eigen::SelfAdjointEigenSolver<cmat> solver(a.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(a.dim() - 1);
}

cmat null_space_basis(const HermitianMatrix &a, double rank_tolerance) {
    const EigenSystem eig = hermitian_eig(a);
    const double tol = rank_tolerance >= 0.0 ? rank_tolerance : 1e-9 * std::max(eig.values(0), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) <= tol) keep.push_back(i);
    cmat basis(a.dim(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(keep[k]);
    return basis;
}

PhaseVector::PhaseVector(cvec s, double tolerance) : s_(std::move(s)) {
    for (Eigen::Index i = 0; i < s_.size(); ++i) {
        const double r = std::abs(s_(i));
        if (!std::isfinite(r) || std::abs(r - 1.0) > tolerance)
            throw InputError("PhaseVector: entry " + std::to_string(i) + " violates the unit-modulus constraint");
    }
}

PhaseVector PhaseVector::ones(Eigen::Index n) { return PhaseVector(cvec::Ones(n)); }

PhaseVector PhaseVector::from_angles(const rvec &theta) {
    cvec s(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) s(i) = std::polar(1.0, theta(i));
    return PhaseVector(std::move(s));
}

double PhaseVector::modulus_error() const {
    double err = 0.0;
    for (Eigen::Index i = 0; i < s_.size(); ++i) err = std::max(err, std::abs(std::abs(s_(i)) - 1.0));
    return err;
}

PhaseExtraction entrywise_phase(const cvec &v) {
    cvec s(v.size());
    std::vector<Eigen::Index> degenerate;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double r = std::abs(v(i));
        if (!std::isfinite(r)) throw InputError("entrywise_phase: non-finite entry");
        if (r == 0.0) {
            s(i) = 1.0;
            degenerate.push_back(i);
        } else {
            // polar() keeps |s_i| = 1 to the last bit, v/|v| does not
            s(i) = std::polar(1.0, std::arg(v(i)));
        }
    }
    return {PhaseVector(std::move(s)), std::move(degenerate)};
}

PhaseVector entrywise_phase_strict(const cvec &v) {
    PhaseExtraction out = entrywise_phase(v);
    if (!out.degenerate.empty())
        throw InputError("entrywise_phase: entry " + std::to_string(out.degenerate.front()) + " is zero");
    return std::move(out.phases);
}

BisectionResult bisect(const BisectionSpec &spec) {
    if (!spec.evaluator) throw InputError("bisect: no evaluator");
    if (!(spec.lower < spec.upper)) throw InputError("bisect: lower must be below upper");
    if (!(spec.tolerance > 0.0)) throw InputError("bisect: tolerance must be positive");

    // flip so that the map is increasing: root where g crosses from <=0 to >=0
    const double sign = spec.direction == Monotonicity::increasing ? 1.0 : -1.0;
    BisectionResult r;
    r.lower = spec.lower;
    r.upper = spec.upper;
    r.f_lower = spec.evaluator(r.lower);
    r.f_upper = spec.evaluator(r.upper);
    if (sign * r.f_lower > 0.0 || sign * r.f_upper < 0.0)
        throw BracketError("bisect: evaluator has the same sign at both brackets", r.f_lower, r.f_upper);

    while (r.upper - r.lower > spec.tolerance) {
        const double mid = 0.5 * (r.lower + r.upper);
        if (mid <= r.lower || mid >= r.upper) break; // bracket below floating-point resolution
        const double f = spec.evaluator(mid);
        ++r.iterations;
        if (sign * f <= 0.0) {
            r.lower = mid;
            r.f_lower = f;
        } else {
            r.upper = mid;
            r.f_upper = f;
        }
        if (spec.residual_tolerance > 0.0 && std::abs(f) <= spec.residual_tolerance) {
            r.root = mid;
            return r;
        }
    }
    r.root = 0.5 * (r.lower + r.upper);
    return r;
}

} // namespace irs

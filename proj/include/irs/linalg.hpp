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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace irs {

using cdouble = std::complex<double>;
using cvec = Eigen::VectorXcd;
using crow = Eigen::RowVectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

/// Raised when a numerical routine receives malformed input (wrong shape,
/// NaN/Inf entries, broken Hermitian symmetry, ...).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dense complex Hermitian matrix. Construction checks conjugate symmetry to
/// 1e-12 relative and then stores the exactly symmetrized matrix.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(cmat entries);

    static HermitianMatrix zero(Eigen::Index dim);
    static HermitianMatrix identity(Eigen::Index dim);

    const cmat &matrix() const noexcept { return a_; }
    Eigen::Index dim() const noexcept { return a_.rows(); }

    /// x^H A x (always real for Hermitian A)
    double quadratic(const cvec &x) const;

  private:
    cmat a_;
};

struct EigenSystem {
    rvec values;  // descending
    cmat vectors; // column i belongs to values(i)
};

EigenSystem hermitian_eig(const HermitianMatrix &a);

/// Largest eigenvalue.
double lambda_max(const HermitianMatrix &a);

/// Orthonormal basis of the numerical null space of a PSD matrix: eigenvectors
/// whose eigenvalue is at most `rank_tolerance`. A negative tolerance selects
/// the default 1e-9 * lambda_max.
cmat null_space_basis(const HermitianMatrix &a, double rank_tolerance = -1.0);

/// Vector of unit-modulus reflection coefficients. The unit-modulus tolerance
/// is owned by the caller: closed-form solvers produce exact phases, the
/// penalty convex-concave path only gets within 1e-3.
class PhaseVector {
  public:
    PhaseVector() = default;
    /// Throws InputError if any |s_i| deviates from 1 by more than `tolerance`.
    explicit PhaseVector(cvec s, double tolerance = 1e-9);

    static PhaseVector ones(Eigen::Index n);
    static PhaseVector from_angles(const rvec &theta);

    const cvec &values() const noexcept { return s_; }
    Eigen::Index size() const noexcept { return s_.size(); }
    cdouble operator[](Eigen::Index i) const { return s_(i); }

    /// max_i ||s_i| - 1|
    double modulus_error() const;

  private:
    cvec s_;
};

struct PhaseExtraction {
    PhaseVector phases;
    std::vector<Eigen::Index> degenerate; // entries that were exactly zero
};

/// s_i = v_i / |v_i|. A zero entry has no phase; it is mapped to s_i = 1 and
/// reported in `degenerate`.
PhaseExtraction entrywise_phase(const cvec &v);

/// Same as entrywise_phase but throws InputError on a zero entry.
PhaseVector entrywise_phase_strict(const cvec &v);

enum class Monotonicity { increasing, decreasing };

class BracketError : public std::runtime_error {
  public:
    BracketError(const std::string &what, double f_lower, double f_upper)
        : std::runtime_error(what), f_lower(f_lower), f_upper(f_upper) {}
    double f_lower;
    double f_upper;
};

struct BisectionSpec {
    double lower = 0.0;
    double upper = 1.0;
    double tolerance = 1e-3;
    std::function<double(double)> evaluator;
    Monotonicity direction = Monotonicity::increasing;
    /// Stop early once |f(mid)| <= residual_tolerance. Disabled when <= 0.
    double residual_tolerance = 0.0;
};

struct BisectionResult {
    double root = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double f_lower = 0.0;
    double f_upper = 0.0;
    int iterations = 0;
};

/// Bisection on a monotone scalar map. Both endpoints are evaluated first; a
/// same-signed bracket raises BracketError. The returned root is the midpoint
/// of the final bracket.
BisectionResult bisect(const BisectionSpec &spec);

} // namespace irs

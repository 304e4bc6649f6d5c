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

// Small dense semidefinite programming in LMI form:
//
//     maximize    c^T y
//     subject to  F_k(y) = F_k0 + sum_i y_i F_ki  >= 0   for every block k
//
// Blocks are real symmetric, complex Hermitian (embedded as real symmetric of
// twice the size), or scalar linear inequalities. The solver is an infeasible
// primal-dual path-following method (HKM direction with Mehrotra
// predictor-corrector) meant for problems with a few dozen variables.

#include "irs/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace irs::conic {

class LmiProblem {
  public:
    explicit LmiProblem(int num_vars);

    int num_vars() const noexcept { return num_vars_; }

    /// maximize objective()^T y
    rvec &objective() noexcept { return objective_; }
    const rvec &objective() const noexcept { return objective_; }

    int add_symmetric_block(const rmat &constant);
    void add_symmetric_term(int block, int var, const rmat &coeff);

    int add_hermitian_block(const cmat &constant);
    void add_hermitian_term(int block, int var, const cmat &coeff);

    /// constant + sum coeff_i y_i >= 0
    void add_linear(double constant, const std::vector<std::pair<int, double>> &coeffs);

    struct Block {
        rmat constant;
        std::vector<std::pair<int, rmat>> terms;
    };
    struct LinearRow {
        double constant;
        std::vector<std::pair<int, double>> coeffs;
    };

    /// Real symmetric view of every matrix block (Hermitian blocks embedded).
    std::vector<Block> real_blocks() const;
    const std::vector<LinearRow> &linear_rows() const noexcept { return linear_; }

    /// Smallest eigenvalue over all blocks (matrix and scalar) at y.
    double min_slack_eigenvalue(const rvec &y) const;

  private:
    struct HermitianBlock {
        cmat constant;
        std::vector<std::pair<int, cmat>> terms;
    };
    void check_var(int var) const;

    int num_vars_;
    rvec objective_;
    std::vector<Block> symmetric_;
    std::vector<HermitianBlock> hermitian_;
    std::vector<LinearRow> linear_;
};

/// Real symmetric embedding [[Re H, -Im H], [Im H, Re H]].
rmat embed_hermitian(const cmat &h);

enum class SolveStatus { optimal, inaccurate, infeasible, iteration_limit };

std::string to_string(SolveStatus s);

struct SolveOptions {
    double gap_tolerance = 1e-10;
    double feasibility_tolerance = 1e-10;
    int max_iterations = 120;
    bool verbose = false; // per-iteration log on stderr
};

struct LmiSolution {
    SolveStatus status = SolveStatus::iteration_limit;
    rvec y;
    double objective = 0.0;      // c^T y
    double primal_bound = 0.0;   // objective of the conic dual (upper bound on c^T y)
    double relative_gap = 0.0;   // |primal_bound - objective| / (1 + |objective| + |primal_bound|)
    double infeasibility = 0.0;  // max(0, -min slack eigenvalue) at y
    int iterations = 0;

    bool usable() const { return status == SolveStatus::optimal || status == SolveStatus::inaccurate; }
};

LmiSolution solve(const LmiProblem &problem, const SolveOptions &options = {});

} // namespace irs::conic

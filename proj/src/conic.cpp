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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace irs::conic {

rmat embed_hermitian(const cmat &h) {
    const Eigen::Index d = h.rows();
    rmat out(2 * d, 2 * d);
    out.topLeftCorner(d, d) = h.real();
    out.topRightCorner(d, d) = -h.imag();
    out.bottomLeftCorner(d, d) = h.imag();
    out.bottomRightCorner(d, d) = h.real();
    return out;
}

std::string to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::inaccurate: return "inaccurate";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

LmiProblem::LmiProblem(int num_vars) : num_vars_(num_vars), objective_(rvec::Zero(num_vars)) {
    if (num_vars < 1) throw InputError("LmiProblem: need at least one variable");
}

void LmiProblem::check_var(int var) const {
    if (var < 0 || var >= num_vars_) throw InputError("LmiProblem: variable index out of range");
}

int LmiProblem::add_symmetric_block(const rmat &constant) {
    if (constant.rows() != constant.cols() || constant.rows() < 1)
        throw InputError("LmiProblem: block must be square");
    symmetric_.push_back({0.5 * (constant + constant.transpose()), {}});
    return static_cast<int>(symmetric_.size()) - 1;
}

void LmiProblem::add_symmetric_term(int block, int var, const rmat &coeff) {
    check_var(var);
    auto &b = symmetric_.at(static_cast<std::size_t>(block));
    if (coeff.rows() != b.constant.rows() || coeff.cols() != b.constant.cols())
        throw InputError("LmiProblem: coefficient size mismatch");
    b.terms.emplace_back(var, 0.5 * (coeff + coeff.transpose()));
}

int LmiProblem::add_hermitian_block(const cmat &constant) {
    if (constant.rows() != constant.cols() || constant.rows() < 1)
        throw InputError("LmiProblem: block must be square");
    hermitian_.push_back({0.5 * (constant + constant.adjoint()), {}});
    return static_cast<int>(hermitian_.size()) - 1;
}

void LmiProblem::add_hermitian_term(int block, int var, const cmat &coeff) {
    check_var(var);
    auto &b = hermitian_.at(static_cast<std::size_t>(block));
    if (coeff.rows() != b.constant.rows() || coeff.cols() != b.constant.cols())
        throw InputError("LmiProblem: coefficient size mismatch");
    b.terms.emplace_back(var, 0.5 * (coeff + coeff.adjoint()));
}

void LmiProblem::add_linear(double constant, const std::vector<std::pair<int, double>> &coeffs) {
    for (const auto &[var, a] : coeffs) {
        check_var(var);
        (void)a;
    }
    linear_.push_back({constant, coeffs});
}

std::vector<LmiProblem::Block> LmiProblem::real_blocks() const {
    std::vector<Block> out = symmetric_;
    for (const auto &h : hermitian_) {
        Block b{embed_hermitian(h.constant), {}};
        for (const auto &[var, coeff] : h.terms) b.terms.emplace_back(var, embed_hermitian(coeff));
        out.push_back(std::move(b));
    }
    return out;
}

double LmiProblem::min_slack_eigenvalue(const rvec &y) const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto &b : real_blocks()) {
        rmat f = b.constant;
        for (const auto &[var, coeff] : b.terms) f += y(var) * coeff;
        Eigen::SelfAdjointEigenSolver<rmat> es(f, Eigen::EigenvaluesOnly);
        lo = std::min(lo, es.eigenvalues()(0));
    }
    for (const auto &row : linear_) {
        double v = row.constant;
        for (const auto &[var, a] : row.coeffs) v += a * y(var);
        lo = std::min(lo, v);
    }
    return lo;
}

namespace {

// Standard-form data after scaling. Primal: min <C,X> s.t. <A_i,X> = b_i,
// X >= 0. Dual: max b^T y s.t. Z = C - sum y_i A_i >= 0.
struct StandardForm {
    int nv = 0;
    rvec b;
    std::vector<rmat> C;
    std::vector<std::vector<std::pair<int, rmat>>> A;
    rvec c_lp;
    rmat A_lp; // rows x nv
    rvec var_scale;
    double obj_scale = 1.0;
};

StandardForm to_standard_form(const LmiProblem &p) {
    StandardForm sf;
    sf.nv = p.num_vars();
    const auto blocks = p.real_blocks();
    const auto &rows = p.linear_rows();

    rvec norm = rvec::Zero(sf.nv);
    for (const auto &b : blocks)
        for (const auto &[var, coeff] : b.terms) norm(var) = std::max(norm(var), coeff.norm());
    for (const auto &r : rows)
        for (const auto &[var, a] : r.coeffs) norm(var) = std::max(norm(var), std::abs(a));
    sf.var_scale.resize(sf.nv);
    for (int i = 0; i < sf.nv; ++i) {
        if (!(norm(i) > 0.0) || !std::isfinite(norm(i)))
            throw InputError("conic::solve: variable " + std::to_string(i) + " does not enter any constraint");
        sf.var_scale(i) = 1.0 / norm(i);
    }

    for (const auto &b : blocks) {
        double s = b.constant.norm();
        for (const auto &[var, coeff] : b.terms) s = std::max(s, sf.var_scale(var) * coeff.norm());
        s = s > 0.0 ? 1.0 / s : 1.0;
        // merge repeated variables so each block lists a variable once
        std::vector<std::pair<int, rmat>> merged;
        for (const auto &[var, coeff] : b.terms) {
            auto it = std::find_if(merged.begin(), merged.end(), [v = var](const auto &t) { return t.first == v; });
            const rmat scaled = -s * sf.var_scale(var) * coeff;
            if (it == merged.end()) merged.emplace_back(var, scaled);
            else it->second += scaled;
        }
        sf.C.push_back(s * b.constant);
        sf.A.push_back(std::move(merged));
    }

    const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
    sf.c_lp = rvec::Zero(nr);
    sf.A_lp = rmat::Zero(nr, sf.nv);
    for (Eigen::Index r = 0; r < nr; ++r) {
        const auto &row = rows[static_cast<std::size_t>(r)];
        double s = std::abs(row.constant);
        for (const auto &[var, a] : row.coeffs) s = std::max(s, sf.var_scale(var) * std::abs(a));
        s = s > 0.0 ? 1.0 / s : 1.0;
        sf.c_lp(r) = s * row.constant;
        for (const auto &[var, a] : row.coeffs) sf.A_lp(r, var) += -s * sf.var_scale(var) * a;
    }

    sf.b = p.objective().cwiseProduct(sf.var_scale);
    const double bmax = sf.b.cwiseAbs().maxCoeff();
    sf.obj_scale = bmax > 0.0 ? bmax : 1.0;
    sf.b /= sf.obj_scale;
    return sf;
}

struct Iterate {
    std::vector<rmat> X, Z;
    rvec x, z, y;
};

double inner(const rmat &a, const rmat &b) { return a.cwiseProduct(b).sum(); }

// Largest alpha with m + alpha * dm >= 0 (m positive definite).
double max_step(const rmat &m, const rmat &dm) {
    Eigen::LLT<rmat> llt(m);
    if (llt.info() != Eigen::Success) return 0.0;
    const auto L = llt.matrixL();
    rmat w = L.solve(dm);
    rmat s = L.solve(w.transpose());
    s = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<rmat> es(s, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    return lo >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lo;
}

double max_step(const rvec &v, const rvec &dv) {
    double a = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv(i) < 0.0) a = std::min(a, -v(i) / dv(i));
    return a;
}

class Solver {
  public:
    Solver(const StandardForm &sf, const SolveOptions &opt) : sf_(sf), opt_(opt) {
        for (const auto &c : sf_.C) dim_ += static_cast<double>(c.rows());
        dim_ += static_cast<double>(sf_.c_lp.size());
    }

    LmiSolution run() {
        init();
        LmiSolution out;
        int stalls = 0;
        for (int it = 0; it < opt_.max_iterations; ++it) {
            out.iterations = it;
            if (!factor_z()) break;
            residuals();
            const double pobj = primal_objective();
            const double dobj = sf_.b.dot(s_.y);
            const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
            const double pinf = rp_.norm() / (1.0 + sf_.b.norm());
            const double dinf = dual_residual_norm() / (1.0 + c_norm_);
            last_gap_ = gap;
            last_pobj_ = pobj;
            if (opt_.verbose)
                std::fprintf(stderr, "%3d pobj %+.10e dobj %+.10e gap %.2e pinf %.2e dinf %.2e mu %.2e\n", it, pobj,
                             dobj, gap, pinf, dinf, complementarity() / dim_);
            if (gap < opt_.gap_tolerance && pinf < opt_.feasibility_tolerance && dinf < opt_.feasibility_tolerance) {
                out.status = SolveStatus::optimal;
                break;
            }
            if (primal_trace() > 1e12) {
                out.status = SolveStatus::infeasible;
                break;
            }
            if (!build_schur()) break;

            // predictor
            Direction pred = direction(0.0, nullptr);
            const double ap_aff = std::min(1.0, step_primal(pred));
            const double ad_aff = std::min(1.0, step_dual(pred));
            const double mu = complementarity() / dim_;
            double mu_aff = 0.0;
            for (std::size_t k = 0; k < s_.X.size(); ++k)
                mu_aff += inner(s_.X[k] + ap_aff * pred.dX[k], s_.Z[k] + ad_aff * pred.dZ[k]);
            mu_aff += (s_.x + ap_aff * pred.dx).dot(s_.z + ad_aff * pred.dz);
            mu_aff /= dim_;
            const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

            // corrector
            Direction corr = direction(sigma * mu, &pred);
            const double ap = std::min(1.0, 0.95 * step_primal(corr));
            const double ad = std::min(1.0, 0.95 * step_dual(corr));
            for (std::size_t k = 0; k < s_.X.size(); ++k) {
                s_.X[k] += ap * corr.dX[k];
                s_.Z[k] += ad * corr.dZ[k];
            }
            s_.x += ap * corr.dx;
            s_.z += ad * corr.dz;
            s_.y += ad * corr.dy;
            if (opt_.verbose) std::fprintf(stderr, "    sigma %.2e ap %.2e ad %.2e\n", sigma, ap, ad);

            stalls = (ap < 1e-10 && ad < 1e-10) ? stalls + 1 : 0;
            if (stalls >= 3) break;
        }
        if (out.status == SolveStatus::iteration_limit && last_gap_ < 1e-6) out.status = SolveStatus::inaccurate;

        out.y = s_.y.cwiseProduct(sf_.var_scale);
        out.relative_gap = last_gap_;
        out.objective = sf_.b.dot(s_.y) * sf_.obj_scale;
        out.primal_bound = last_pobj_ * sf_.obj_scale;
        return out;
    }

  private:
    struct Direction {
        std::vector<rmat> dX, dZ;
        rvec dx, dz, dy;
    };

    void init() {
        const double start = std::max(10.0, std::sqrt(dim_));
        s_.X.clear();
        s_.Z.clear();
        for (const auto &c : sf_.C) {
            s_.X.push_back(start * rmat::Identity(c.rows(), c.cols()));
            s_.Z.push_back(start * rmat::Identity(c.rows(), c.cols()));
        }
        s_.x = rvec::Constant(sf_.c_lp.size(), start);
        s_.z = rvec::Constant(sf_.c_lp.size(), start);
        s_.y = rvec::Zero(sf_.nv);
        c_norm_ = std::sqrt(sf_.c_lp.squaredNorm() + [&] {
            double t = 0.0;
            for (const auto &c : sf_.C) t += c.squaredNorm();
            return t;
        }());
    }

    bool factor_z() {
        zinv_.clear();
        for (const auto &z : s_.Z) {
            Eigen::LLT<rmat> llt(z);
            if (llt.info() != Eigen::Success) return false;
            zinv_.push_back(llt.solve(rmat::Identity(z.rows(), z.cols())));
        }
        return true;
    }

    rvec apply_A(const std::vector<rmat> &X, const rvec &x) const {
        rvec out = sf_.A_lp.transpose() * x;
        for (std::size_t k = 0; k < X.size(); ++k)
            for (const auto &[var, a] : sf_.A[k]) out(var) += inner(a, X[k]);
        return out;
    }

    void residuals() {
        rp_ = sf_.b - apply_A(s_.X, s_.x);
        Rd_.resize(sf_.C.size());
        for (std::size_t k = 0; k < sf_.C.size(); ++k) {
            Rd_[k] = sf_.C[k] - s_.Z[k];
            for (const auto &[var, a] : sf_.A[k]) Rd_[k] -= s_.y(var) * a;
        }
        rd_ = sf_.c_lp - sf_.A_lp * s_.y - s_.z;
    }

    double dual_residual_norm() const {
        double t = rd_.squaredNorm();
        for (const auto &r : Rd_) t += r.squaredNorm();
        return std::sqrt(t);
    }

    double primal_objective() const {
        double t = sf_.c_lp.dot(s_.x);
        for (std::size_t k = 0; k < sf_.C.size(); ++k) t += inner(sf_.C[k], s_.X[k]);
        return t;
    }

    double primal_trace() const {
        double t = s_.x.sum();
        for (const auto &x : s_.X) t += x.trace();
        return t;
    }

    double complementarity() const {
        double t = s_.x.dot(s_.z);
        for (std::size_t k = 0; k < s_.X.size(); ++k) t += inner(s_.X[k], s_.Z[k]);
        return t;
    }

    bool build_schur() {
        rmat M = sf_.A_lp.transpose() * (s_.x.cwiseQuotient(s_.z)).asDiagonal() * sf_.A_lp;
        for (std::size_t k = 0; k < sf_.C.size(); ++k) {
            for (const auto &[j, aj] : sf_.A[k]) {
                const rmat t = s_.X[k] * aj * zinv_[k];
                for (const auto &[i, ai] : sf_.A[k]) M(i, j) += inner(ai, t);
            }
        }
        M = 0.5 * (M + M.transpose());
        schur_.compute(M);
        if (schur_.info() == Eigen::Success) {
            use_ldlt_ = false;
            return true;
        }
        const double reg = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
        M.diagonal().array() += reg;
        schur_ldlt_.compute(M);
        use_ldlt_ = true;
        return schur_ldlt_.info() == Eigen::Success;
    }

    Direction direction(double sigma_mu, const Direction *pred) const {
        const std::size_t nb = sf_.C.size();
        std::vector<rmat> K(nb);
        rvec k_lp = rvec::Zero(s_.x.size());
        if (pred) {
            for (std::size_t k = 0; k < nb; ++k) K[k] = pred->dX[k] * pred->dZ[k] * zinv_[k];
            k_lp = pred->dx.cwiseProduct(pred->dz).cwiseQuotient(s_.z);
        }

        // rhs = b - sigma_mu A(Z^-1) + A(X Rd Z^-1) + A(K)
        std::vector<rmat> T(nb);
        for (std::size_t k = 0; k < nb; ++k) {
            T[k] = s_.X[k] * Rd_[k] * zinv_[k] - sigma_mu * zinv_[k];
            if (pred) T[k] += K[k];
        }
        rvec t_lp = s_.x.cwiseProduct(rd_).cwiseQuotient(s_.z) - sigma_mu * s_.z.cwiseInverse() + k_lp;
        const rvec rhs = sf_.b + apply_A(T, t_lp);

        Direction d;
        d.dy = use_ldlt_ ? rvec(schur_ldlt_.solve(rhs)) : rvec(schur_.solve(rhs));
        d.dZ.resize(nb);
        d.dX.resize(nb);
        for (std::size_t k = 0; k < nb; ++k) {
            d.dZ[k] = Rd_[k];
            for (const auto &[var, a] : sf_.A[k]) d.dZ[k] -= d.dy(var) * a;
            rmat dx = sigma_mu * zinv_[k] - s_.X[k] - s_.X[k] * d.dZ[k] * zinv_[k];
            if (pred) dx -= K[k];
            d.dX[k] = 0.5 * (dx + dx.transpose());
        }
        d.dz = rd_ - sf_.A_lp * d.dy;
        d.dx = sigma_mu * s_.z.cwiseInverse() - s_.x - s_.x.cwiseProduct(d.dz).cwiseQuotient(s_.z) - k_lp;
        return d;
    }

    double step_primal(const Direction &d) const {
        double a = max_step(s_.x, d.dx);
        for (std::size_t k = 0; k < s_.X.size(); ++k) a = std::min(a, max_step(s_.X[k], d.dX[k]));
        return a;
    }

    double step_dual(const Direction &d) const {
        double a = max_step(s_.z, d.dz);
        for (std::size_t k = 0; k < s_.Z.size(); ++k) a = std::min(a, max_step(s_.Z[k], d.dZ[k]));
        return a;
    }

    const StandardForm &sf_;
    SolveOptions opt_;
    double dim_ = 0.0;
    double c_norm_ = 0.0;
    Iterate s_;
    std::vector<rmat> zinv_;
    rvec rp_;
    std::vector<rmat> Rd_;
    rvec rd_;
    Eigen::LLT<rmat> schur_;
    Eigen::LDLT<rmat> schur_ldlt_;
    bool use_ldlt_ = false;
    double last_gap_ = 1.0;
    double last_pobj_ = 0.0;
};

} // namespace

LmiSolution solve(const LmiProblem &problem, const SolveOptions &options) {
    const StandardForm sf = to_standard_form(problem);
    Solver solver(sf, options);
    LmiSolution out = solver.run();
    out.infeasibility = std::max(0.0, -problem.min_slack_eigenvalue(out.y));
    return out;
}

} // namespace irs::conic

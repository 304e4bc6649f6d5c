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

#include "irs/subproblems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace irs {

using conic::LmiProblem;

double QuadraticForm::evaluate(const cvec &s) const {
    return 1.0 + quadratic.quadratic(s) + 2.0 * s.dot(linear).real() + constant;
}

QuadraticForm quadratic_params(const cmat &R, const crow &h_A, const cmat &H) {
    if (R.rows() != R.cols() || R.rows() != h_A.size() || H.cols() != h_A.size())
        throw InputError("quadratic_params: dimension mismatch");
    QuadraticForm q;
    q.constant = (h_A * R * h_A.adjoint()).value().real();
    q.linear = H * R * h_A.adjoint();
    const cmat Q = H * R * H.adjoint();
    q.quadratic = HermitianMatrix(0.5 * (Q + Q.adjoint()));
    return q;
}

double Majorizer::bound(const cvec &x) const {
    return scale * x.squaredNorm() - 2.0 * x.dot(linear_shift).real() + constant;
}

Majorizer majorize(const HermitianMatrix &A, const cvec &x_tilde) {
    if (x_tilde.size() != A.dim()) throw InputError("majorize: dimension mismatch");
    Majorizer m;
    m.scale = A.dim() > 0 ? lambda_max(A) : 0.0;
    const cmat shifted = m.scale * cmat::Identity(A.dim(), A.dim()) - A.matrix();
    m.linear_shift = shifted * x_tilde;
    m.constant = x_tilde.dot(m.linear_shift).real();
    return m;
}

namespace {

/// Adds value * z at (r, c) and conj at (c, r) of a Hermitian block, where
/// z = re + j im is a complex scalar split over two real variables. With
/// `conjugate` the entry depends on conj(z) instead.
void add_complex_entry(LmiProblem &p, int block, Eigen::Index dim, Eigen::Index r, Eigen::Index c, cdouble value,
                       int re, int im, bool conjugate = false) {
    const cdouble j(0.0, 1.0);
    const cdouble im_coeff = conjugate ? -j * value : j * value;
    for (const auto &[var, coeff] : {std::pair{re, value}, std::pair{im, im_coeff}}) {
        if (coeff == cdouble(0.0)) continue;
        cmat m = cmat::Zero(dim, dim);
        m(r, c) += coeff;
        m(c, r) += std::conj(coeff);
        p.add_hermitian_term(block, var, m);
    }
}

void add_real_diag(LmiProblem &p, int block, Eigen::Index dim, const std::vector<std::pair<Eigen::Index, double>> &diag,
                   int var) {
    cmat m = cmat::Zero(dim, dim);
    for (const auto &[i, v] : diag) m(i, i) += v;
    p.add_hermitian_term(block, var, m);
}

cvec unpack(const rvec &y, int offset, Eigen::Index len) {
    cvec z(len);
    for (Eigen::Index k = 0; k < len; ++k) z(k) = {y(offset + 2 * k), y(offset + 2 * k + 1)};
    return z;
}

double ratio_of(const cvec &w, const crow &h_B, const crow &h_E) {
    return (1.0 + std::norm((h_B * w).value())) / (1.0 + std::norm((h_E * w).value()));
}

/// Best power along a fixed direction: the ratio is monotone in the power.
cvec scale_direction(const cvec &v, const crow &h_B, const crow &h_E, const crow &h_P, double P_T, double P_I) {
    const double nv = v.squaredNorm();
    if (nv == 0.0) return cvec::Zero(v.size());
    const double a = std::norm((h_B * v).value());
    const double b = std::norm((h_E * v).value());
    if (a <= b) return cvec::Zero(v.size());
    double p = P_T / nv;
    const double leak = std::norm((h_P * v).value());
    if (std::isfinite(P_I) && leak > 0.0) p = std::min(p, P_I / leak);
    return std::sqrt(p) * v;
}

} // namespace

BeamformerSolution solve_beamformer_full(const crow &h_B, const crow &h_E, const crow &h_P, double P_T, double P_I) {
    const Eigen::Index m = h_B.size();
    if (h_E.size() != m || h_P.size() != m) throw InputError("solve_beamformer_full: dimension mismatch");
    if (!(P_T > 0.0) || !(P_I > 0.0)) throw InputError("solve_beamformer_full: P_T and P_I must be positive");

    // Hermitian basis: Z = sum_v y_v B_v
    std::vector<cmat> basis;
    for (Eigen::Index k = 0; k < m; ++k) {
        cmat b = cmat::Zero(m, m);
        b(k, k) = 1.0;
        basis.push_back(b);
    }
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = k + 1; l < m; ++l) {
            cmat re = cmat::Zero(m, m), im = cmat::Zero(m, m);
            re(k, l) = re(l, k) = 1.0;
            im(k, l) = cdouble(0.0, 1.0);
            im(l, k) = cdouble(0.0, -1.0);
            basis.push_back(re);
            basis.push_back(im);
        }
    const int nv = static_cast<int>(basis.size());
    const cmat MB = h_B.adjoint() * h_B;
    const cmat ME = h_E.adjoint() * h_E;
    const cmat MP = h_P.adjoint() * h_P;
    const bool ipc = std::isfinite(P_I);

    // Z = P_T T Y T^H with T = G^{-1/2} brings every constraint row to unit scale.
    cmat G = cmat::Identity(m, m) + P_T * ME;
    if (ipc) G += (P_T / P_I) * MP;
    Eigen::SelfAdjointEigenSolver<cmat> ges(0.5 * (G + G.adjoint()));
    const cmat T = ges.eigenvectors() * ges.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                   ges.eigenvectors().adjoint();
    const cmat A_obj = P_T * T.adjoint() * (MB - ME) * T;
    const cmat A_pow = T.adjoint() * (cmat::Identity(m, m) + P_T * ME) * T;
    const cmat A_ipc = P_T * T.adjoint() * (ME + MP / P_I) * T;
    const double U = std::max(1.0, P_T * (h_B * T).squaredNorm());
    auto inner = [](const cmat &b, const cmat &M) { return (b * M).trace().real(); };

    LmiProblem p(nv);
    const int psd = p.add_hermitian_block(cmat::Zero(m, m));
    std::vector<std::pair<int, double>> row_power, row_ipc;
    for (int v = 0; v < nv; ++v) {
        const auto &b = basis[static_cast<std::size_t>(v)];
        p.objective()(v) = inner(b, A_obj) / U;
        p.add_hermitian_term(psd, v, b);
        row_power.emplace_back(v, -inner(b, A_pow));
        if (ipc) row_ipc.emplace_back(v, -inner(b, A_ipc));
    }
    p.add_linear(1.0, row_power);
    if (ipc) p.add_linear(1.0, row_ipc);

    const auto sol = conic::solve(p);
    if (!sol.usable())
        throw std::runtime_error("solve_beamformer_full: conic solver failed (" + conic::to_string(sol.status) + ")");

    cmat Y = cmat::Zero(m, m);
    for (int v = 0; v < nv; ++v) Y += sol.y(v) * basis[static_cast<std::size_t>(v)];
    cmat Z = P_T * T * Y * T.adjoint();
    Z = 0.5 * (Z + Z.adjoint());

    BeamformerSolution out;
    out.sdp_ratio = 1.0 + U * sol.objective;
    out.relative_gap = sol.relative_gap;
    out.w.w = cvec::Zero(m);
    out.ratio = 1.0;
    if (U * sol.objective <= 1e-9 * out.sdp_ratio) return out; // w = 0 is optimal

    const EigenSystem es = hermitian_eig(HermitianMatrix(Z));
    const double l1 = es.values(0);
    out.rank_ratio = m > 1 && l1 > 0.0 ? std::max(0.0, es.values(1)) / l1 : 0.0;
    cvec best = scale_direction(es.vectors.col(0), h_B, h_E, h_P, P_T, P_I);
    double best_ratio = ratio_of(best, h_B, h_E);

    if (out.rank_ratio > 1e-6) {
        out.randomized = true;
        std::mt19937_64 rng(0x5eedULL);
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        rvec sq = es.values.cwiseMax(0.0).cwiseSqrt();
        for (int trial = 0; trial < 1000; ++trial) {
            cvec r(m);
            for (Eigen::Index k = 0; k < m; ++k) r(k) = {g(rng), g(rng)};
            const cvec dir = es.vectors * (sq.cast<cdouble>().asDiagonal() * r);
            const cvec cand = scale_direction(dir, h_B, h_E, h_P, P_T, P_I);
            const double val = ratio_of(cand, h_B, h_E);
            if (val > best_ratio) {
                best_ratio = val;
                best = cand;
            }
        }
    }
    out.w.w = best;
    out.ratio = best_ratio;
    return out;
}

BeamformerSolution solve_beamformer_full(const cvec &s, const ChannelSet &ch, double P_T, double P_I) {
    return solve_beamformer_full(effective_row(ch.h_AB_n, ch.H_B_n, s), effective_row(ch.h_AE_n, ch.H_E_n, s),
                                 effective_row(ch.h_AP, ch.H_P, s), P_T, P_I);
}

UncertaintyBounds::UncertaintyBounds(double eps_E_, double eps_AE_) : eps_E(eps_E_), eps_AE(eps_AE_) {
    if (!(eps_E >= 0.0) || !(eps_AE >= 0.0) || !std::isfinite(eps_E) || !std::isfinite(eps_AE))
        throw InputError("UncertaintyBounds: radii must be finite and non-negative");
}

UncertaintyBounds UncertaintyBounds::from_raw(double eps_E_raw, double eps_AE_raw, double sigma_E) {
    if (!(sigma_E > 0.0)) throw InputError("UncertaintyBounds: sigma_E must be positive");
    return {eps_E_raw / sigma_E, eps_AE_raw / sigma_E};
}

double worst_case_eve_amplitude(const cvec &w, const cvec &s, const ChannelSet &ch, const UncertaintyBounds &eps) {
    const double nominal = std::abs((effective_row(ch.h_AE_n, ch.H_E_n, s) * w).value());
    return nominal + (eps.eps_AE + eps.eps_E * s.norm()) * w.norm();
}

namespace {

double lmi_entry_scale(double tau) { return tau > 0.0 ? 1.0 / std::sqrt(tau) : 1.0; }

/// Rows and multipliers of the robust Eve LMI. Error sets with zero radius
/// contribute no rows and no multiplier.
struct EveLmiLayout {
    bool with_E = false;
    bool with_AE = false;
    Eigen::Index m = 0;
    Eigen::Index row_E = 2;
    Eigen::Index row_AE = 2;
    Eigen::Index dim = 2;
    int u1 = -1;
    int u2 = -1;

    EveLmiLayout(const UncertaintyBounds &eps, Eigen::Index m_, int first_var) : m(m_) {
        with_E = eps.eps_E > 0.0;
        with_AE = eps.eps_AE > 0.0;
        if (with_E) u1 = first_var++;
        if (with_AE) u2 = first_var++;
        row_AE = row_E + (with_E ? m : 0);
        dim = row_AE + (with_AE ? m : 0);
    }
    int multipliers() const { return static_cast<int>(with_E) + static_cast<int>(with_AE); }
    LmiMultipliers read(const rvec &y) const {
        return {with_E ? std::max(0.0, y(u1)) : 0.0, with_AE ? std::max(0.0, y(u2)) : 0.0};
    }
};

/// Robust Eve LMI on a fresh Hermitian block, congruence-scaled by
/// diag(1/sqrt(tau), 1, I/sqrt(tau), I/sqrt(tau)). `offdiag` holds the
/// constant lower-triangular entries before scaling; the caller adds the terms
/// that depend on its own variables multiplied by lmi_entry_scale(tau).
int add_eve_lmi_block(LmiProblem &p, double tau, const EveLmiLayout &L, double s_norm2, const cmat &offdiag) {
    const double r = lmi_entry_scale(tau);
    const double r2 = r * r;
    cmat c = (offdiag + offdiag.adjoint()) * r;
    c(0, 0) = tau * r2;
    c(1, 1) = 1.0;
    const int blk = p.add_hermitian_block(c);
    if (L.with_E) {
        std::vector<std::pair<Eigen::Index, double>> d{{0, -s_norm2 * r2}};
        for (Eigen::Index k = 0; k < L.m; ++k) d.emplace_back(L.row_E + k, r2);
        add_real_diag(p, blk, L.dim, d, L.u1);
    }
    if (L.with_AE) {
        std::vector<std::pair<Eigen::Index, double>> d{{0, -r2}};
        for (Eigen::Index k = 0; k < L.m; ++k) d.emplace_back(L.row_AE + k, r2);
        add_real_diag(p, blk, L.dim, d, L.u2);
    }
    return blk;
}

} // namespace

RobustBeamformerStep solve_beamformer_robust_step(const cvec &s, double tau, const ChannelSet &ch,
                                                  const UncertaintyBounds &eps, double P_T, double P_I,
                                                  const Beamformer &w_tilde) {
    const Eigen::Index m = ch.m();
    if (!(tau >= 0.0)) throw InputError("solve_beamformer_robust_step: tau must be non-negative");
    if (w_tilde.w.size() != m) throw InputError("solve_beamformer_robust_step: w_tilde has wrong length");
    const crow g = effective_row(ch.h_AB_n, ch.H_B_n, s);
    const crow e = effective_row(ch.h_AE_n, ch.H_E_n, s);
    const crow h_P = effective_row(ch.h_AP, ch.H_P, s);

    const int nw = static_cast<int>(2 * m);
    const EveLmiLayout L(eps, m, nw);
    LmiProblem p(nw + L.multipliers());
    const double r = lmi_entry_scale(tau);
    const bool ipc = std::isfinite(P_I);

    // w = T v with T = G^{-1/2} brings every constraint row to unit scale.
    cmat G = cmat::Identity(m, m) * (1.0 / P_T + (eps.eps_E * eps.eps_E + eps.eps_AE * eps.eps_AE) * r * r) +
             e.adjoint() * e * (r * r);
    if (ipc) G += h_P.adjoint() * h_P / P_I;
    Eigen::SelfAdjointEigenSolver<cmat> ges(0.5 * (G + G.adjoint()));
    const cmat T = ges.eigenvectors() * ges.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                   ges.eigenvectors().adjoint();
    auto add_row = [&](int blk, Eigen::Index dim, Eigen::Index row, Eigen::Index col, const crow &coeff) {
        const crow ct = coeff * T;
        for (Eigen::Index j = 0; j < m; ++j)
            add_complex_entry(p, blk, dim, row, col, ct(j), static_cast<int>(2 * j), static_cast<int>(2 * j + 1));
    };

    cdouble x_tilde = (g * w_tilde.w).value();
    if (std::abs(x_tilde) == 0.0) x_tilde = 1.0;
    const crow gT = g * T;
    const double gmax = gT.cwiseAbs().maxCoeff();
    const double norm = gmax > 0.0 ? std::abs(x_tilde) * gmax : 1.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        const cdouble a = std::conj(x_tilde) * gT(k) / norm;
        p.objective()(2 * k) = a.real();
        p.objective()(2 * k + 1) = -a.imag();
    }

    // ||w||^2 <= P_T
    cmat pc = cmat::Identity(m + 1, m + 1);
    pc(0, 0) = P_T;
    const int pow_blk = p.add_hermitian_block(pc);
    for (Eigen::Index k = 0; k < m; ++k) add_row(pow_blk, m + 1, k + 1, 0, crow::Unit(m, k));

    if (ipc) {
        cmat ic = cmat::Identity(2, 2);
        ic(0, 0) = P_I;
        add_row(p.add_hermitian_block(ic), 2, 0, 1, h_P);
    }

    const int lmi = add_eve_lmi_block(p, tau, L, s.squaredNorm(), cmat::Zero(L.dim, L.dim));
    add_row(lmi, L.dim, 0, 1, e * r);
    for (Eigen::Index k = 0; k < m; ++k) {
        if (L.with_E) add_row(lmi, L.dim, L.row_E + k, 1, crow::Unit(m, k) * (eps.eps_E * r));
        if (L.with_AE) add_row(lmi, L.dim, L.row_AE + k, 1, crow::Unit(m, k) * (eps.eps_AE * r));
    }

    const auto sol = conic::solve(p);
    RobustBeamformerStep out;
    out.w.w = cvec::Zero(m);
    if (!sol.usable()) return out;
    out.feasible = true;
    out.w.w = T * unpack(sol.y, 0, m);
    out.u = L.read(sol.y);
    out.objective = std::norm((g * out.w.w).value());
    return out;
}

void PccpState::advance() { gamma = std::min(t * gamma, gamma_max); }

constexpr double kPccpObjectiveWeight = 100.0;

PccpStep pccp_phase_step(const cvec &w, double tau, const ChannelSet &ch, const UncertaintyBounds &eps,
                         const cvec &s_tilde, double P_I, PccpState &state) {
    const Eigen::Index m = ch.m(), n = ch.n();
    if (s_tilde.size() != n || w.size() != m) throw InputError("pccp_phase_step: dimension mismatch");
    if (n == 0) throw InputError("pccp_phase_step: no reflecting elements");

    const cvec g = ch.H_B_n * w;                        // x(s) = h_AB w + s^H g
    const cdouble x_tilde = (ch.h_AB_n * w).value() + s_tilde.dot(g);
    const cvec gE = ch.H_E_n * w;
    const cvec gP = ch.H_P * w;

    const int ns = static_cast<int>(2 * n);
    const EveLmiLayout L(eps, m, ns);
    const int b0 = ns + L.multipliers(), c0 = b0 + static_cast<int>(n);
    LmiProblem p(c0 + static_cast<int>(n));

    const double gmax = g.cwiseAbs().maxCoeff();
    const double norm = std::abs(x_tilde) * gmax / kPccpObjectiveWeight;
    if (norm > 0.0) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const cdouble q = std::conj(x_tilde) * g(i) / norm;
            p.objective()(2 * i) = q.real();
            p.objective()(2 * i + 1) = q.imag();
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        p.objective()(b0 + i) = -state.gamma;
        p.objective()(c0 + i) = -state.gamma;
    }

    if (std::isfinite(P_I)) {
        cmat ic = cmat::Identity(2, 2);
        ic(0, 0) = P_I;
        ic(0, 1) = (ch.h_AP * w).value();
        ic(1, 0) = std::conj(ic(0, 1));
        const int ipc = p.add_hermitian_block(ic);
        for (Eigen::Index i = 0; i < n; ++i)
            add_complex_entry(p, ipc, 2, 0, 1, gP(i), static_cast<int>(2 * i), static_cast<int>(2 * i + 1), true);
    }

    // Eve LMI with ||s||^2 fixed to n (unit modulus)
    cmat fixed = cmat::Zero(L.dim, L.dim);
    fixed(1, 0) = std::conj((ch.h_AE_n * w).value());
    for (Eigen::Index k = 0; k < m; ++k) {
        if (L.with_E) fixed(L.row_E + k, 1) = eps.eps_E * w(k);
        if (L.with_AE) fixed(L.row_AE + k, 1) = eps.eps_AE * w(k);
    }
    const int lmi = add_eve_lmi_block(p, tau, L, static_cast<double>(n), fixed);
    for (Eigen::Index i = 0; i < n; ++i)
        add_complex_entry(p, lmi, L.dim, 0, 1, gE(i) * lmi_entry_scale(tau), static_cast<int>(2 * i),
                          static_cast<int>(2 * i + 1), true);

    for (Eigen::Index i = 0; i < n; ++i) {
        const int re = static_cast<int>(2 * i), im = re + 1;
        // |s_i|^2 <= 1 + c_i
        rmat ring = rmat::Identity(3, 3);
        const int blk = p.add_symmetric_block(ring);
        rmat ex = rmat::Zero(3, 3), ey = rmat::Zero(3, 3), ec = rmat::Zero(3, 3);
        ex(0, 1) = ex(1, 0) = 1.0;
        ey(0, 2) = ey(2, 0) = 1.0;
        ec(0, 0) = 1.0;
        p.add_symmetric_term(blk, re, ex);
        p.add_symmetric_term(blk, im, ey);
        p.add_symmetric_term(blk, c0 + static_cast<int>(i), ec);
        // 2 Re{conj(st_i) s_i} - |st_i|^2 >= 1 - b_i
        const cdouble st = s_tilde(i);
        p.add_linear(-std::norm(st) - 1.0,
                     {{re, 2.0 * st.real()}, {im, 2.0 * st.imag()}, {b0 + static_cast<int>(i), 1.0}});
        p.add_linear(0.0, {{b0 + static_cast<int>(i), 1.0}});
        p.add_linear(0.0, {{c0 + static_cast<int>(i), 1.0}});
    }

    const auto sol = conic::solve(p);
    PccpStep out;
    out.s = s_tilde;
    out.b = rvec::Zero(n);
    out.c = rvec::Zero(n);
    if (sol.usable()) {
        out.feasible = true;
        out.s = unpack(sol.y, 0, n);
        out.b = sol.y.segment(b0, n).cwiseMax(0.0);
        out.c = sol.y.segment(c0, n).cwiseMax(0.0);
        out.u = L.read(sol.y);
    }
    out.slack_sum = out.b.sum() + out.c.sum();
    const cdouble x = (ch.h_AB_n * w).value() + out.s.dot(g);
    const double lin =
        norm > 0.0 ? -kPccpObjectiveWeight * (std::conj(x_tilde) * x).real() / (std::abs(x_tilde) * gmax) : 0.0;
    out.objective = lin + state.gamma * out.slack_sum;
    state.b = out.b;
    state.c = out.c;
    state.advance();
    return out;
}

MinPowerStep solve_minpower_step(const cvec &s, const ChannelSet &ch, double T, double P_I, const Beamformer &w_tilde) {
    const Eigen::Index m = ch.m();
    if (!(T >= 0.0) || !std::isfinite(T)) throw InputError("solve_minpower_step: T must be finite and >= 0");
    if (w_tilde.w.size() != m) throw InputError("solve_minpower_step: w_tilde has wrong length");
    MinPowerStep out;
    out.w.w = cvec::Zero(m);
    if (T == 0.0) {
        out.feasible = true;
        return out;
    }
    const crow g = effective_row(ch.h_AB_n, ch.H_B_n, s);
    const crow h_P = effective_row(ch.h_AP, ch.H_P, s);
    const cdouble x_tilde = (g * w_tilde.w).value();
    if (std::abs(x_tilde) == 0.0) return out;

    // w = scale * v with scale the MRT amplitude sqrt(T)/||g||
    const double scale = std::sqrt(T) / g.norm();
    const int nw = static_cast<int>(2 * m);
    const int t = nw;
    LmiProblem p(nw + 1);
    p.objective()(t) = -1.0;

    cmat pc = cmat::Identity(m + 1, m + 1);
    pc(0, 0) = 0.0;
    const int pow_blk = p.add_hermitian_block(pc);
    add_real_diag(p, pow_blk, m + 1, {{0, 1.0}}, t);
    for (Eigen::Index k = 0; k < m; ++k)
        add_complex_entry(p, pow_blk, m + 1, k + 1, 0, 1.0, static_cast<int>(2 * k), static_cast<int>(2 * k + 1));

    if (std::isfinite(P_I)) {
        const int ipc = p.add_hermitian_block(cmat::Identity(2, 2));
        const double row_scale = scale / std::sqrt(P_I);
        for (Eigen::Index k = 0; k < m; ++k)
            add_complex_entry(p, ipc, 2, 0, 1, h_P(k) * row_scale, static_cast<int>(2 * k),
                              static_cast<int>(2 * k + 1));
    }

    std::vector<std::pair<int, double>> qos;
    for (Eigen::Index k = 0; k < m; ++k) {
        const cdouble a = 2.0 * std::conj(x_tilde) * g(k) * (scale / T);
        qos.emplace_back(static_cast<int>(2 * k), a.real());
        qos.emplace_back(static_cast<int>(2 * k + 1), -a.imag());
    }
    p.add_linear(-(std::norm(x_tilde) + T) / T, qos);

    const auto sol = conic::solve(p);
    if (!sol.usable()) return out;
    out.feasible = true;
    out.w.w = scale * unpack(sol.y, 0, m);
    return out;
}

} // namespace irs

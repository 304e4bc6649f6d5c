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

#include "irs/robust.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace irs {

double bob_gain(const ChannelSet &ch, const cvec &s) { return effective_row(ch.h_AB_n, ch.H_B_n, s).squaredNorm(); }

TauBound tau_upper_bound(const ChannelSet &ch, double P_T, double tolerance, int max_iterations) {
    if (!(P_T >= 0.0)) throw InputError("tau_upper_bound: P_T must be non-negative");
    const Eigen::Index n = ch.n();
    TauBound out;
    if (n == 0) {
        out.s_opt = PhaseVector(cvec(0));
        out.tau_max = P_T * ch.h_AB_n.squaredNorm();
        return out;
    }
    const HermitianMatrix negative_gain(-(ch.H_B_n * ch.H_B_n.adjoint()));
    const cvec direct = ch.H_B_n * ch.h_AB_n.adjoint();
    PhaseVector s = entrywise_phase(direct).phases;
    double J = bob_gain(ch, s.values());
    for (int k = 0; k < max_iterations; ++k) {
        const Majorizer mj = majorize(negative_gain, s.values());
        const PhaseVector next = entrywise_phase(mj.linear_shift + direct).phases;
        const double J_next = bob_gain(ch, next.values());
        ++out.iterations;
        if (J_next < J) break;
        const double gain = J_next - J;
        s = next;
        J = J_next;
        if (gain <= tolerance * J) break;
    }
    out.s_opt = s;
    out.tau_max = P_T * J;
    return out;
}

namespace {

double bob_power(const ChannelSet &ch, const cvec &s, const cvec &w) {
    return std::norm((effective_row(ch.h_AB_n, ch.H_B_n, s) * w).value());
}

/// Bob-aligned beamformer scaled into the power, interference and
/// worst-case Eve limits.
Beamformer feasible_start(double tau, const ChannelSet &ch, const UncertaintyBounds &eps, double P_T, double P_I,
                          const cvec &s) {
    Beamformer w;
    const crow g = effective_row(ch.h_AB_n, ch.H_B_n, s);
    w.w = g.adjoint();
    if (w.w.norm() == 0.0) w.w = cvec::Ones(ch.m());
    double scale = std::sqrt(P_T) / w.w.norm();
    const double ip = std::abs((effective_row(ch.h_AP, ch.H_P, s) * w.w).value());
    if (std::isfinite(P_I) && ip > 0.0) scale = std::min(scale, std::sqrt(P_I) / ip);
    const double leak = worst_case_eve_amplitude(w.w, s, ch, eps);
    if (leak > 0.0) scale = std::min(scale, std::sqrt(tau) / leak);
    w.w *= scale;
    return w;
}

struct BeamRun {
    Beamformer w;
    LmiMultipliers u;
    double objective = 0.0;
    bool feasible = false;
};

BeamRun beam_sca(double tau, const ChannelSet &ch, const UncertaintyBounds &eps, double P_T, double P_I, const cvec &s,
                 const Beamformer &start, const RobustAoOptions &options) {
    BeamRun out;
    out.w = start;
    out.objective = -1.0;
    for (int k = 0; k < options.beam_iterations; ++k) {
        const RobustBeamformerStep step = solve_beamformer_robust_step(s, tau, ch, eps, P_T, P_I, out.w);
        if (!step.feasible) break;
        const double previous = out.objective;
        if (out.feasible && step.objective < previous) break;
        out.feasible = true;
        out.w = step.w;
        out.u = step.u;
        out.objective = step.objective;
        if (out.objective == 0.0 || out.objective - previous <= options.beam_tolerance * out.objective) break;
    }
    return out;
}

} // namespace

RobustAoResult ao_robust(double tau_requested, const ChannelSet &ch, const UncertaintyBounds &eps, double P_T, double P_I,
                         const PhaseVector &s0, const RobustAoOptions &options) {
    if (!(tau_requested >= 0.0)) throw InputError("ao_robust: tau must be non-negative");
    if (s0.size() != ch.n()) throw InputError("ao_robust: s0 has wrong length");
    const Eigen::Index n = ch.n();
    const double tau = std::max(tau_requested, kTauFloor);
    RobustAoResult r;
    r.tau = tau;
    r.s = s0.values();

    BeamRun beam = beam_sca(tau, ch, eps, P_T, P_I, r.s, feasible_start(tau, ch, eps, P_T, P_I, r.s), options);
    if (!beam.feasible) return r;
    r.feasible = true;
    r.w = beam.w;
    r.u = beam.u;
    r.trace.push_back(beam.objective);

    while (n > 0 && r.iterations < options.max_iterations && r.w.power() > 0.0) {
        ++r.iterations;
        PccpState state;
        cvec s = r.s;
        double slack = 0.0;
        double bob = bob_power(ch, s, r.w.w);
        for (int k = 0; k < options.pccp_iterations; ++k) {
            const double gamma_used = state.gamma;
            const PccpStep step = pccp_phase_step(r.w.w, tau, ch, eps, s, P_I, state);
            ++r.phase_steps;
            if (!step.feasible) break;
            const double bob_next = bob_power(ch, step.s, r.w.w);
            const double change = std::abs(bob_next - bob);
            s = step.s;
            slack = step.slack_sum;
            bob = bob_next;
            if (gamma_used >= state.gamma_max && slack <= options.slack_tolerance &&
                change <= options.pccp_tolerance * bob)
                break;
        }
        const double modulus_error = (s.cwiseAbs() - rvec::Ones(n)).cwiseAbs().maxCoeff();
        const cvec projected = entrywise_phase(s).phases.values();

        const BeamRun next = beam_sca(tau, ch, eps, P_T, P_I, projected, r.w, options);
        const double previous = r.trace.back();
        if (!next.feasible || next.objective < previous) break;
        r.s = projected;
        r.w = next.w;
        r.u = next.u;
        r.slack_sum = slack;
        r.modulus_error = modulus_error;
        r.trace.push_back(next.objective);
        if (next.objective - previous <= options.tolerance * std::max(next.objective, 1e-300)) break;
    }
    r.phi = (1.0 + bob_power(ch, r.s, r.w.w)) / (1.0 + tau);
    return r;
}

std::vector<double> tau_grid(double tau_max, const TauGridOptions &options) {
    if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) throw InputError("tau_grid: tau_max must be finite and >= 0");
    if (!(options.spacing > 0.0)) throw InputError("tau_grid: spacing must be positive");
    std::vector<double> grid;
    const double linear_end = std::min(1.0, tau_max);
    const long long steps = static_cast<long long>(std::floor(linear_end / options.spacing + 1e-9));
    for (long long k = 0; k <= steps; ++k) grid.push_back(static_cast<double>(k) * options.spacing);
    if (grid.back() < linear_end) grid.push_back(linear_end);
    if (tau_max > 1.0 && options.log_samples > 0) {
        const double top = std::log(tau_max);
        for (int k = 1; k <= options.log_samples; ++k) grid.push_back(std::exp(top * k / options.log_samples));
    }
    return grid;
}

RunResult line_search_tau(const ChannelSet &ch, const UncertaintyBounds &eps, double P_T, double P_I,
                          const PhaseVector &s0, const LineSearchOptions &options) {
    const auto t0 = std::chrono::steady_clock::now();
    const TauBound bound = tau_upper_bound(ch, P_T);
    const std::vector<double> grid = tau_grid(bound.tau_max, options.grid);
    std::vector<RobustAoResult> runs(grid.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < grid.size(); k = next++)
            runs[k] = ao_robust(grid[k], ch, eps, P_T, P_I, s0, options.ao);
    };
    const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(grid.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto &th : pool) th.join();
    }

    std::size_t best = grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (options.samples) options.samples->push_back({grid[k], runs[k].phi, runs[k].feasible});
        if (runs[k].feasible && (best == grid.size() || runs[k].phi > runs[best].phi)) best = k;
    }
    if (best == grid.size()) throw std::runtime_error("line_search_tau: every tau sample was infeasible");

    const RobustAoResult &b = runs[best];
    RunResult r;
    r.w = b.w;
    r.s = b.s;
    finalize_rates(r, ch);
    r.tau_opt = b.tau;
    r.certified_rate = std::max(0.0, std::log2(b.phi));
    r.iterations = b.iterations;
    r.trace = b.trace;
    if (b.slack_sum > options.ao.slack_tolerance) r.flag("pccp_slack");
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

double sampled_eve_power(const cvec &w, const cvec &s, const ChannelSet &ch, const UncertaintyBounds &eps, int draws,
                         std::uint64_t seed) {
    const Eigen::Index n = ch.n(), m = ch.m();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&](Eigen::Index rows, Eigen::Index cols, double radius, bool boundary) {
        cmat d(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) d(i, j) = {gauss(rng), gauss(rng)};
        const double norm = d.norm();
        if (norm == 0.0 || radius == 0.0) return cmat(cmat::Zero(rows, cols));
        const double dims = 2.0 * static_cast<double>(rows * cols);
        const double rho = boundary ? 1.0 : std::pow(unit(rng), 1.0 / dims);
        return cmat(d * (radius * rho / norm));
    };
    double worst = 0.0;
    for (int k = 0; k < draws; ++k) {
        const bool boundary = k % 2 == 0;
        const cmat dE = draw(n, m, eps.eps_E, boundary);
        const cmat dAE = draw(1, m, eps.eps_AE, boundary);
        const crow row = ch.h_AE_n + dAE.row(0) + (s.adjoint() * (ch.H_E_n + dE));
        worst = std::max(worst, std::norm((row * w).value()));
    }
    return worst;
}

} // namespace irs

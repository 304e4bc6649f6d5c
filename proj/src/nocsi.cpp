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

#include "irs/nocsi.hpp"

#include "irs/fullcsi.hpp"

#include <chrono>
#include <cmath>

namespace irs {

QosTarget::QosTarget(double snr) : T(snr) {
    if (!(T > 0.0) || !std::isfinite(T)) throw InputError("QosTarget: T must be finite and positive");
}

QosTarget QosTarget::from_db(double snr_db) { return QosTarget(db_to_linear(snr_db)); }

namespace {

cdouble bob_amplitude(const ChannelSet &ch, const cvec &s, const cvec &w) {
    return (effective_row(ch.h_AB_n, ch.H_B_n, s) * w).value();
}

} // namespace

MaxSnrTrace max_snr_phase(const cvec &w, const ChannelSet &ch, double P_I, const PhaseVector &s0,
                          const MaxSnrOptions &options) {
    if (w.size() != ch.m() || s0.size() != ch.n()) throw InputError("max_snr_phase: dimension mismatch");
    MaxSnrTrace out;
    out.s = s0;
    double snr = std::norm(bob_amplitude(ch, s0.values(), w));
    out.snr.push_back(snr);
    if (ch.n() == 0) return out;

    const PhaseForms forms = phase_forms(w * w.adjoint(), ch, P_I);
    SurrogateScales scales;
    scales.ipc = lambda_max(forms.pr.quadratic);
    const cvec g = ch.H_B_n * w;
    const cdouble direct = (ch.h_AB_n * w).value();

    for (int k = 0; k < options.max_iterations; ++k) {
        const cdouble x_tilde = bob_amplitude(ch, out.s.values(), w);
        // -|x|^2 <= |x~|^2 - 2 Re{conj(x~) x}, tight at s~
        SurrogateCoeffs c = surrogate_coeffs(0.0, forms, out.s.values(), scales);
        c.combined = -std::conj(x_tilde) * g;
        c.objective_constant = std::norm(x_tilde) - 2.0 * (std::conj(x_tilde) * direct).real();

        PhaseVector next = phase_update_inactive(c);
        if (forms.ipc_active() && c.ipc_value(next.values()) > c.tilde_P_I) next = penalty_bisection(c, P_I).s;
        if (forms.ipc_active() && forms.interference(next.values()) > P_I) break;
        const double snr_next = std::norm(bob_amplitude(ch, next.values(), w));
        if (!(snr_next > snr)) break;
        const double gain = snr_next - snr;
        out.s = next;
        out.snr.push_back(snr_next);
        snr = snr_next;
        if (gain <= options.tolerance * snr) break;
    }
    return out;
}

namespace {

struct BeamRun {
    Beamformer w;
    bool feasible = false;
};

BeamRun minpower_sca(const ChannelSet &ch, double T, double P_I, const cvec &s, const Beamformer &start,
                     const PowerMinOptions &options) {
    BeamRun out;
    out.w = start;
    double power = start.power();
    for (int k = 0; k < options.beam_iterations; ++k) {
        const MinPowerStep step = solve_minpower_step(s, ch, T, P_I, out.w);
        if (!step.feasible) break;
        const double next = step.w.power();
        if (out.feasible && next > power) break;
        out.feasible = true;
        out.w = step.w;
        const double drop = power - next;
        power = next;
        if (drop <= options.beam_tolerance * power) break;
    }
    return out;
}

} // namespace

PowerMinResult ao_power_min(const ChannelSet &ch, const QosTarget &target, double P_I, const PhaseVector &s0,
                            const PowerMinOptions &options) {
    if (s0.size() != ch.n()) throw InputError("ao_power_min: s0 has wrong length");
    PowerMinResult r;
    r.s = s0;
    const crow g = effective_row(ch.h_AB_n, ch.H_B_n, s0);
    if (g.squaredNorm() == 0.0) return r;
    Beamformer mrt;
    mrt.w = g.adjoint() * (std::sqrt(target.T) / g.squaredNorm());

    BeamRun beam = minpower_sca(ch, target.T, P_I, s0.values(), mrt, options);
    if (!beam.feasible) return r;
    r.feasible = true;
    r.w = beam.w;
    r.trace.push_back(r.w.power());

    while (ch.n() > 0 && r.iterations < options.max_iterations) {
        ++r.iterations;
        const MaxSnrTrace phase = max_snr_phase(r.w.w, ch, P_I, r.s, options.phase);
        const BeamRun next = minpower_sca(ch, target.T, P_I, phase.s.values(), r.w, options);
        const double previous = r.trace.back();
        if (!next.feasible || next.w.power() > previous) {
            r.converged = true;
            break;
        }
        r.s = phase.s;
        r.w = next.w;
        r.trace.push_back(r.w.power());
        if (previous - r.w.power() <= options.tolerance * r.w.power()) {
            r.converged = true;
            break;
        }
    }
    if (ch.n() == 0) r.converged = true;
    r.P_S = r.w.power();
    return r;
}

AnCovariance an_covariance(const cvec &w, const cvec &s, const ChannelSet &ch, double P_T, double P_S) {
    const Eigen::Index m = ch.m();
    if (w.size() != m || s.size() != ch.n()) throw InputError("an_covariance: dimension mismatch");
    if (!(P_S >= 0.0) || P_S > P_T) throw InputError("an_covariance: need 0 <= P_S <= P_T");
    AnCovariance an;
    an.R_AN = cmat::Zero(m, m);
    an.U_AN = cmat::Zero(m, 0);
    if (m <= 2) return an;
    cmat rows(2, m);
    rows.row(0) = effective_row(ch.h_AB, ch.H_B, s);
    rows.row(1) = effective_row(ch.h_AP, ch.H_P, s);
    an.U_AN = null_space_basis(HermitianMatrix(rows.adjoint() * rows));
    if (an.U_AN.cols() == 0) return an;
    an.available = true;
    an.power = P_T - P_S;
    an.R_AN = (an.power / static_cast<double>(an.U_AN.cols())) * an.U_AN * an.U_AN.adjoint();
    return an;
}

double actual_secrecy_rate(const cvec &w, const cvec &s, const AnCovariance &an, const ChannelSet &ch,
                           const QosTarget &target) {
    const crow e = effective_row(ch.h_AE, ch.H_E, s);
    const double signal = std::norm((e * w).value());
    const double noise = ch.sigma_E * ch.sigma_E + (e * an.R_AN * e.adjoint()).value().real();
    return std::log2(1.0 + target.T) - std::log2(1.0 + signal / noise);
}

RunResult run_no_csi(const ChannelSet &ch, const QosTarget &target, double P_T, double P_I, const PhaseVector &s0,
                     const PowerMinOptions &options) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    const PowerMinResult pm = ao_power_min(ch, target, P_I, s0, options);
    r.iterations = pm.iterations;
    r.trace = pm.trace;
    r.s = pm.s.size() == ch.n() ? pm.s.values() : s0.values();
    r.w.w = pm.feasible ? pm.w.w : cvec::Zero(ch.m());
    r.P_S = pm.feasible ? pm.P_S : std::numeric_limits<double>::quiet_NaN();
    finalize_rates(r, ch);
    if (!pm.feasible || pm.P_S > P_T) {
        r.flag("infeasible");
        r.rates.C_s = 0.0;
    } else {
        const AnCovariance an = an_covariance(r.w.w, r.s, ch, P_T, pm.P_S);
        if (!an.available) r.flag("no_null_space");
        r.rates.C_B = std::log2(1.0 + target.T);
        r.rates.C_s = actual_secrecy_rate(r.w.w, r.s, an, ch, target);
        r.rates.C_E = r.rates.C_B - r.rates.C_s;
        r.power = r.w.power() + an.R_AN.trace().real();
    }
    if (!pm.converged) r.flag("not_converged");
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace irs

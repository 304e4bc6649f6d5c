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

#include "irs/fullcsi.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace irs {

bool PhaseForms::ipc_active() const { return std::isfinite(P_I); }

PhaseForms phase_forms(const cmat &R, const ChannelSet &ch, double P_I) {
    PhaseForms f;
    f.bob = quadratic_params(R, ch.h_AB_n, ch.H_B_n);
    f.eve = quadratic_params(R, ch.h_AE_n, ch.H_E_n);
    f.pr = quadratic_params(R, ch.h_AP, ch.H_P);
    f.P_I = P_I;
    return f;
}

double SurrogateCoeffs::objective(const cvec &s) const {
    return objective_constant + 2.0 * s.dot(combined).real();
}

double SurrogateCoeffs::ipc_value(const cvec &s) const { return 2.0 * s.dot(ipc_vector).real(); }

SurrogateScales surrogate_scales(double ratio_u, const PhaseForms &forms) {
    SurrogateScales sc;
    if (forms.bob.linear.size() == 0) return sc;
    sc.objective = lambda_max(HermitianMatrix(forms.eve.quadratic.matrix() - ratio_u * forms.bob.quadratic.matrix()));
    sc.ipc = lambda_max(forms.pr.quadratic);
    return sc;
}

SurrogateCoeffs surrogate_coeffs(double ratio_u, const PhaseForms &forms, const cvec &s_tilde) {
    return surrogate_coeffs(ratio_u, forms, s_tilde, surrogate_scales(ratio_u, forms));
}

SurrogateCoeffs surrogate_coeffs(double ratio_u, const PhaseForms &forms, const cvec &s_tilde,
                                 const SurrogateScales &scales) {
    const Eigen::Index n = s_tilde.size();
    if (forms.bob.linear.size() != n) throw InputError("surrogate_coeffs: dimension mismatch");
    const double dn = static_cast<double>(n);
    SurrogateCoeffs c;
    // (scale I - A) s_tilde with A = eve - u bob quadratic parts
    const cvec shift = scales.objective * s_tilde - (forms.eve.quadratic.matrix() * s_tilde -
                                                     ratio_u * (forms.bob.quadratic.matrix() * s_tilde));
    c.combined = forms.eve.linear - ratio_u * forms.bob.linear - shift;
    c.objective_constant = (1.0 + forms.eve.constant) - ratio_u * (1.0 + forms.bob.constant) +
                           scales.objective * dn + s_tilde.dot(shift).real();

    const cvec pshift = scales.ipc * s_tilde - forms.pr.quadratic.matrix() * s_tilde;
    c.ipc_vector = forms.pr.linear - pshift;
    c.ipc_constant = forms.pr.constant + scales.ipc * dn + s_tilde.dot(pshift).real();
    c.tilde_P_I = forms.P_I - c.ipc_constant;
    return c;
}

double dinkelbach_residual(double ratio_u, const PhaseForms &forms, const cvec &s) {
    return forms.eve.evaluate(s) - ratio_u * forms.bob.evaluate(s);
}

PhaseVector phase_update_inactive(const SurrogateCoeffs &c) { return entrywise_phase(-c.combined).phases; }

PhaseVector phase_update_penalized(const SurrogateCoeffs &c, double mu) {
    if (!(mu >= 0.0)) throw InputError("phase_update_penalized: mu must be >= 0");
    return entrywise_phase(-(c.combined + mu * c.ipc_vector)).phases;
}

PenaltyResult penalty_bisection(const SurrogateCoeffs &c, double P_I, double tolerance) {
    const double vnorm = c.ipc_vector.norm();
    if (vnorm == 0.0) throw std::runtime_error("penalty_bisection: interference does not depend on the phases");
    const double unit = std::max(c.combined.norm(), 1e-300) / vnorm;
    auto excess = [&](double mu_hat) { return c.ipc_value(phase_update_penalized(c, mu_hat * unit).values()) - c.tilde_P_I; };
    const double tol = tolerance * P_I;

    PenaltyResult out;
    out.state.mu_lower = 0.0;
    out.state.mu_upper = 1.0;
    double hi_excess = excess(out.state.mu_upper);
    for (int k = 0; k < 20 && hi_excess > 0.0; ++k) {
        out.state.mu_lower = out.state.mu_upper;
        out.state.mu_upper *= 2.0;
        hi_excess = excess(out.state.mu_upper);
    }
    if (hi_excess > 0.0) throw std::runtime_error("penalty_bisection: constraint still violated at the bracket cap");

    while (hi_excess < -tol && out.state.iterations < 200 &&
           out.state.mu_upper - out.state.mu_lower > 1e-15 * out.state.mu_upper) {
        const double mid = 0.5 * (out.state.mu_lower + out.state.mu_upper);
        const double e = excess(mid);
        ++out.state.iterations;
        if (e > 0.0) {
            out.state.mu_lower = mid;
        } else {
            out.state.mu_upper = mid;
            hi_excess = e;
        }
    }
    out.state.mu = out.state.mu_upper * unit;
    out.s = phase_update_penalized(c, out.state.mu);
    return out;
}

ScaTrace sca_phase(double ratio_u, const PhaseForms &forms, const PhaseVector &s0, const ScaOptions &options) {
    ScaTrace out;
    out.s = s0;
    double f = dinkelbach_residual(ratio_u, forms, s0.values());
    out.objective.push_back(f);
    if (s0.size() == 0 || (options.stop_when_negative && f < 0.0)) return out;
    const SurrogateScales scales = surrogate_scales(ratio_u, forms);
    for (int k = 0; k < options.max_iterations; ++k) {
        const SurrogateCoeffs c = surrogate_coeffs(ratio_u, forms, out.s.values(), scales);
        PhaseVector next = phase_update_inactive(c);
        if (forms.ipc_active() && c.ipc_value(next.values()) > c.tilde_P_I) next = penalty_bisection(c, forms.P_I).s;
        if (forms.ipc_active() && forms.interference(next.values()) > forms.P_I) break;
        const double f_next = dinkelbach_residual(ratio_u, forms, next.values());
        ++out.iterations;
        if (f_next > f) break;
        out.s = next;
        out.objective.push_back(f_next);
        const double change = f - f_next;
        f = f_next;
        if (options.stop_when_negative && f < 0.0) break;
        if (change <= options.tolerance * forms.eve.evaluate(out.s.values())) break;
    }
    return out;
}

double DinkelbachState::relative_residual() const { return std::abs(eve_form - u * bob_form) / eve_form; }

double bob_form_bound(const cmat &R, const ChannelSet &ch) {
    double amp = ch.h_AB_n.norm();
    for (Eigen::Index i = 0; i < ch.H_B_n.rows(); ++i) amp += ch.H_B_n.row(i).norm();
    return 1.0 + R.trace().real() * amp * amp;
}

DinkelbachResult dinkelbach_phase(const cmat &R, const ChannelSet &ch, double P_I, const PhaseVector &s0,
                                  const DinkelbachOptions &options) {
    if (s0.size() != ch.n()) throw InputError("dinkelbach_phase: s0 has wrong length");
    const PhaseForms forms = phase_forms(R, ch, P_I);
    auto ratio = [&](const PhaseVector &s) { return forms.eve.evaluate(s.values()) / forms.bob.evaluate(s.values()); };

    DinkelbachResult out;
    out.s = s0;
    double best = ratio(s0);
    out.state.lower = 1.0 / bob_form_bound(R, ch);
    out.state.upper = best;
    out.state.u = best;

    if (s0.size() > 0 && out.state.upper > out.state.lower * (1.0 + 1e-12)) {
        BisectionSpec spec;
        spec.lower = std::log(out.state.lower);
        spec.upper = std::log(out.state.upper) + 1e-12;
        spec.tolerance = options.tolerance;
        spec.direction = Monotonicity::decreasing;
        spec.evaluator = [&](double log_u) {
            const double u = std::exp(log_u);
            const ScaTrace t = sca_phase(u, forms, out.s, options.sca);
            const double r = ratio(t.s);
            if (r < best) {
                best = r;
                out.s = t.s;
            }
            ++out.state.iterations;
            return t.objective.back() / forms.eve.evaluate(t.s.values());
        };
        const BisectionResult b = bisect(spec);
        out.state.lower = std::exp(b.lower);
        out.state.upper = std::exp(b.upper);
        out.state.u = std::exp(b.root);
    }
    out.state.eve_form = forms.eve.evaluate(out.s.values());
    out.state.bob_form = forms.bob.evaluate(out.s.values());
    return out;
}

RunResult ao_full_csi(const ChannelSet &ch, double P_T, double P_I, const PhaseVector &s0, const AoOptions &options) {
    const auto t0 = std::chrono::steady_clock::now();
    if (s0.size() != ch.n()) throw InputError("ao_full_csi: s0 has wrong length");
    RunResult r;
    PhaseVector s = s0;
    r.w = solve_beamformer_full(s.values(), ch, P_T, P_I).w;
    r.s = s.values();
    finalize_rates(r, ch);
    r.trace.push_back(r.rates.C_s);

    auto ratio_at = [&](const cvec &w, const PhaseVector &ph) {
        const double b = std::norm((effective_row(ch.h_AB_n, ch.H_B_n, ph) * w).value());
        const double e = std::norm((effective_row(ch.h_AE_n, ch.H_E_n, ph) * w).value());
        return (1.0 + b) / (1.0 + e);
    };

    if (ch.n() == 0) {
        r.iterations = 1;
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    bool converged = false;
    while (r.iterations < options.max_iterations) {
        ++r.iterations;
        if (r.w.power() == 0.0) {
            converged = true;
            break;
        }
        const cmat R = r.w.w * r.w.w.adjoint();
        const DinkelbachResult dk = dinkelbach_phase(R, ch, P_I, s, options.phase);
        if (options.roots) options.roots->push_back(dk.state);
        s = dk.s;
        const BeamformerSolution bf = solve_beamformer_full(s.values(), ch, P_T, P_I);
        if (ratio_at(bf.w.w, s) >= ratio_at(r.w.w, s)) r.w = bf.w;
        const double previous = r.rates.C_s;
        r.s = s.values();
        finalize_rates(r, ch);
        r.trace.push_back(r.rates.C_s);
        if (std::abs(r.rates.C_s - previous) <= options.tolerance * std::max(std::abs(r.rates.C_s), 1e-12)) {
            converged = true;
            break;
        }
    }
    if (!converged) r.flag("not_converged");
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace irs

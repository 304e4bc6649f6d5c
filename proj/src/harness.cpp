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

#include "irs/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <thread>

namespace irs {

Mode parse_mode(const std::string &name) {
    if (name == "full-csi") return Mode::FullCsi;
    if (name == "robust") return Mode::Robust;
    if (name == "no-csi") return Mode::NoCsi;
    throw InputError("unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) {
    switch (mode) {
    case Mode::FullCsi: return "full-csi";
    case Mode::Robust: return "robust";
    case Mode::NoCsi: return "no-csi";
    }
    return "unknown";
}

SweepVariable parse_sweep_variable(const std::string &name) {
    if (name == "P_T") return SweepVariable::P_T;
    if (name == "P_I") return SweepVariable::P_I;
    if (name == "T") return SweepVariable::T;
    if (name == "eps") return SweepVariable::eps;
    throw InputError("unknown sweep variable '" + name + "'");
}

std::string sweep_variable_name(SweepVariable v) {
    switch (v) {
    case SweepVariable::P_T: return "P_T";
    case SweepVariable::P_I: return "P_I";
    case SweepVariable::T: return "T";
    case SweepVariable::eps: return "eps";
    }
    return "unknown";
}

namespace {

double parse_number(const std::string &text) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw InputError("sweep: '" + text + "' is not a number");
    return v;
}

} // namespace

Sweep parse_sweep(const std::string &text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InputError("sweep: expected var=start:step:stop");
    Sweep sw;
    sw.variable = parse_sweep_variable(text.substr(0, eq));
    const std::string range = text.substr(eq + 1);
    std::vector<std::string> parts;
    std::size_t from = 0;
    for (auto colon = range.find(':'); colon != std::string::npos; colon = range.find(':', from)) {
        parts.push_back(range.substr(from, colon - from));
        from = colon + 1;
    }
    parts.push_back(range.substr(from));
    if (parts.size() == 1) {
        sw.grid.push_back(parse_number(parts[0]));
        return sw;
    }
    if (parts.size() != 3) throw InputError("sweep: expected var=start:step:stop");
    const double start = parse_number(parts[0]), step = parse_number(parts[1]), stop = parse_number(parts[2]);
    if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step))
        throw InputError("sweep: need finite start/stop and a positive step");
    if (stop < start) throw InputError("sweep: stop is below start");
    const long long count = static_cast<long long>(std::floor((stop - start) / step + 0.5));
    if (count > 100000) throw InputError("sweep: grid too large");
    for (long long k = 0; k <= count; ++k) sw.grid.push_back(start + static_cast<double>(k) * step);
    return sw;
}

void ExperimentSpec::validate() const {
    base.validate();
    if (realizations < 1) throw InputError("experiment: realizations must be >= 1");
    if (threads < 1) throw InputError("experiment: threads must be >= 1");
    if (random_phase_trials < 1) throw InputError("experiment: random-phase trials must be >= 1");
    if ((baseline_no_irs || baseline_random_phase) && mode != Mode::FullCsi)
        throw InputError("experiment: baselines are defined for full-csi mode");
    if (!sweep.grid.empty()) {
        if (sweep.variable == SweepVariable::T && mode != Mode::NoCsi)
            throw InputError("experiment: T sweep needs no-csi mode");
        if (sweep.variable == SweepVariable::eps && mode != Mode::Robust)
            throw InputError("experiment: eps sweep needs robust mode");
        for (double v : sweep.grid)
            if (sweep.variable == SweepVariable::eps && !(v >= 0.0))
                throw InputError("experiment: eps must be non-negative");
    }
    if (!(eps_raw >= 0.0)) throw InputError("experiment: eps must be non-negative");
    if (!std::isfinite(qos_db)) throw InputError("experiment: QoS target must be finite");
}

std::vector<double> ExperimentSpec::grid() const {
    if (!sweep.grid.empty()) return sweep.grid;
    return {base.P_T};
}

std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(master) ^ index);
}

Realization draw_realization(const ScenarioConfig &config, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Realization r;
    r.channels = generate_channels(config, rng);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    cvec s(config.n);
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::polar(1.0, angle(rng));
    r.s0 = PhaseVector(s);
    return r;
}

RunResult baseline_random_phase(const ChannelSet &ch, double P_T, double P_I, int trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("baseline_random_phase: trials must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    if (ch.n() == 0) return baseline_no_irs(ch, P_T, P_I);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    RunResult best;
    bool have = false;
    for (int t = 0; t < trials; ++t) {
        cvec s(ch.n());
        for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::polar(1.0, angle(rng));
        RunResult r;
        r.w = solve_beamformer_full(s, ch, P_T, P_I).w;
        r.s = s;
        finalize_rates(r, ch);
        if (!have || r.rates.C_s > best.rates.C_s) best = r;
        have = true;
    }
    best.iterations = trials;
    best.trace = {best.rates.C_s};
    best.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

RunResult baseline_no_irs(const ChannelSet &ch, double P_T, double P_I) {
    const auto t0 = std::chrono::steady_clock::now();
    const ChannelSet direct = ch.without_irs();
    RunResult r;
    r.w = solve_beamformer_full(direct.h_AB_n, direct.h_AE_n, direct.h_AP, P_T, P_I).w;
    r.s = cvec(0);
    finalize_rates(r, direct);
    r.iterations = 1;
    r.trace = {r.rates.C_s};
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

bool ExperimentOutput::any_flagged() const {
    for (const auto &row : rows)
        if (!row.result.flags.empty()) return true;
    return false;
}

namespace {

struct PointSetting {
    ScenarioConfig config;
    double qos_db = 0.0;
    double eps_raw = 0.0;
};

PointSetting setting_at(const ExperimentSpec &spec, double value) {
    PointSetting p{spec.base, spec.qos_db, spec.eps_raw};
    if (spec.sweep.grid.empty()) return p;
    switch (spec.sweep.variable) {
    case SweepVariable::P_T: p.config.P_T = value; break;
    case SweepVariable::P_I: p.config.P_I = value; break;
    case SweepVariable::T: p.qos_db = value; break;
    case SweepVariable::eps: p.eps_raw = value; break;
    }
    return p;
}

RunResult failed_run(const std::string &what) {
    RunResult r;
    r.rates.C_B = r.rates.C_E = r.rates.C_s = r.rates.interference = std::numeric_limits<double>::quiet_NaN();
    r.power = std::numeric_limits<double>::quiet_NaN();
    r.flag("error:" + what);
    return r;
}

template <class F> RunResult guarded(F &&run) {
    try {
        return run();
    } catch (const std::exception &e) {
        std::string what = e.what();
        for (char &c : what)
            if (c == ',' || c == '\n' || c == '|') c = ' ';
        return failed_run(what);
    }
}

RunResult run_proposed(const ExperimentSpec &spec, const PointSetting &p, const Realization &real) {
    const double P_T = p.config.P_T_watts(), P_I = p.config.P_I_watts();
    switch (spec.mode) {
    case Mode::FullCsi: return ao_full_csi(real.channels, P_T, P_I, real.s0);
    case Mode::Robust: {
        LineSearchOptions o;
        o.grid = spec.tau_grid;
        const auto eps = UncertaintyBounds::from_raw(p.eps_raw, p.eps_raw, real.channels.sigma_E);
        RunResult r = line_search_tau(real.channels, eps, P_T, P_I, real.s0, o);
        r.rates.C_s = r.certified_rate;
        return r;
    }
    case Mode::NoCsi: return run_no_csi(real.channels, QosTarget::from_db(p.qos_db), P_T, P_I, real.s0);
    }
    throw InputError("unknown mode");
}

struct Task {
    std::size_t point = 0;
    std::size_t realization = 0;
    std::vector<ResultRow> rows;
};

void run_task(const ExperimentSpec &spec, const std::vector<double> &grid, Task &task) {
    const double value = grid[task.point];
    const PointSetting p = setting_at(spec, value);
    const std::uint64_t seed = realization_seed(spec.seed, task.realization);
    Realization real;
    try {
        real = draw_realization(p.config, seed);
    } catch (const std::exception &e) {
        task.rows.push_back({mode_name(spec.mode), seed, value, failed_run(e.what())});
        return;
    }
    task.rows.push_back({mode_name(spec.mode), seed, value, guarded([&] { return run_proposed(spec, p, real); })});
    const double P_T = p.config.P_T_watts(), P_I = p.config.P_I_watts();
    if (spec.baseline_random_phase)
        task.rows.push_back({"random-phase", seed, value, guarded([&] {
                                 return baseline_random_phase(real.channels, P_T, P_I, spec.random_phase_trials,
                                                              realization_seed(seed, 1));
                             })});
    if (spec.baseline_no_irs)
        task.rows.push_back(
            {"no-irs", seed, value, guarded([&] { return baseline_no_irs(real.channels, P_T, P_I); })});
}

void append_field(std::string &line, const std::string &field) {
    if (!line.empty()) line += ',';
    line += field;
}

} // namespace

ExperimentOutput run_experiment(const ExperimentSpec &spec) {
    spec.validate();
    const std::vector<double> grid = spec.grid();
    std::vector<Task> tasks;
    for (std::size_t g = 0; g < grid.size(); ++g)
        for (int k = 0; k < spec.realizations; ++k) tasks.push_back({g, static_cast<std::size_t>(k), {}});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) run_task(spec, grid, tasks[k]);
    };
    const int threads = std::max(1, std::min<int>(spec.threads, static_cast<int>(tasks.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto &th : pool) th.join();
    }

    ExperimentOutput out;
    for (auto &t : tasks)
        for (auto &row : t.rows) out.rows.push_back(std::move(row));
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

const std::vector<std::string> &detail_columns() {
    static const std::vector<std::string> cols{"mode",      "seed",           "grid_value",     "C_B",     "C_E",
                                               "C_s",       "power_used_W",   "interference_W", "tau_opt", "P_S_W",
                                               "iterations", "wall_ms",       "flags"};
    return cols;
}

const std::vector<std::string> &aggregate_columns() {
    static const std::vector<std::string> cols{"mode",    "grid_value",     "realizations", "C_B",
                                               "C_E",     "C_s",            "power_used_W", "interference_W",
                                               "tau_opt", "P_S_W",          "iterations",   "flagged"};
    return cols;
}

namespace {

std::string header(const std::vector<std::string> &cols) {
    std::string line;
    for (const auto &c : cols) append_field(line, c);
    return line;
}

std::vector<double> numeric_fields(const RunResult &r) {
    return {r.rates.C_B, r.rates.C_E, r.rates.C_s, r.power, r.rates.interference, r.tau_opt, r.P_S,
            static_cast<double>(r.iterations)};
}

} // namespace

void write_detail_csv(std::ostream &out, const ExperimentOutput &output) {
    out << header(detail_columns()) << '\n';
    for (const auto &row : output.rows) {
        const RunResult &r = row.result;
        std::string line = row.mode;
        append_field(line, std::to_string(row.seed));
        append_field(line, format_number(row.grid_value));
        const auto values = numeric_fields(r);
        for (std::size_t k = 0; k + 1 < values.size(); ++k) append_field(line, format_number(values[k]));
        append_field(line, std::to_string(r.iterations));
        append_field(line, format_number(r.wall_ms));
        append_field(line, r.flag_string());
        out << line << '\n';
    }
}

void write_aggregate_csv(std::ostream &out, const ExperimentOutput &output) {
    struct Group {
        std::string mode;
        double grid_value = 0.0;
        int count = 0;
        int flagged = 0;
        std::vector<double> sum;
        std::vector<int> finite;
    };
    std::vector<Group> groups;
    std::map<std::pair<std::string, double>, std::size_t> index;
    for (const auto &row : output.rows) {
        const auto key = std::make_pair(row.mode, row.grid_value);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, groups.size()).first;
            Group g;
            g.mode = row.mode;
            g.grid_value = row.grid_value;
            groups.push_back(g);
        }
        Group &g = groups[it->second];
        const auto values = numeric_fields(row.result);
        if (g.sum.empty()) {
            g.sum.assign(values.size(), 0.0);
            g.finite.assign(values.size(), 0);
        }
        ++g.count;
        if (!row.result.flags.empty()) ++g.flagged;
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (!std::isfinite(values[k])) continue;
            g.sum[k] += values[k];
            ++g.finite[k];
        }
    }
    out << header(aggregate_columns()) << '\n';
    for (const auto &g : groups) {
        std::string line = g.mode;
        append_field(line, format_number(g.grid_value));
        append_field(line, std::to_string(g.count));
        for (std::size_t k = 0; k < g.sum.size(); ++k)
            append_field(line, format_number(g.finite[k] ? g.sum[k] / g.finite[k]
                                                         : std::numeric_limits<double>::quiet_NaN()));
        append_field(line, std::to_string(g.flagged));
        out << line << '\n';
    }
}

ExperimentOutput run_experiment_to(const ExperimentSpec &spec, const std::string &dir) {
    ExperimentOutput out = run_experiment(spec);
    std::filesystem::create_directories(dir);
    const std::filesystem::path root(dir);
    std::ofstream detail(root / "detail.csv");
    std::ofstream aggregate(root / "aggregate.csv");
    if (!detail || !aggregate) throw InputError("cannot write into '" + dir + "'");
    write_detail_csv(detail, out);
    write_aggregate_csv(aggregate, out);
    return out;
}

void write_trace_csv(std::ostream &out, const ExperimentSpec &spec) {
    spec.validate();
    const PointSetting p = setting_at(spec, spec.grid().front());
    out << "mode,seed,realization,iteration,objective\n";
    for (int k = 0; k < spec.realizations; ++k) {
        const std::uint64_t seed = realization_seed(spec.seed, static_cast<std::uint64_t>(k));
        const Realization real = draw_realization(p.config, seed);
        const RunResult r = run_proposed(spec, p, real);
        for (std::size_t i = 0; i < r.trace.size(); ++i)
            out << mode_name(spec.mode) << ',' << seed << ',' << k << ',' << i << ',' << format_number(r.trace[i])
                << '\n';
    }
}

} // namespace irs

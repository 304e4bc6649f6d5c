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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CommonArgs {
    std::string mode = "full-csi";
    std::string config;
    std::string sweep;
    int realizations = 50;
    std::uint64_t seed = 1;
    int threads = 1;
    double qos_db = 30.0;
    double eps = 0.01;
    std::string out;
};

void add_common(CLI::App *cmd, CommonArgs &a) {
    cmd->add_option("--mode", a.mode, "full-csi, robust or no-csi")
        ->check(CLI::IsMember({"full-csi", "robust", "no-csi"}));
    cmd->add_option("--config", a.config, "Scenario file with key = value lines")->check(CLI::ExistingFile);
    cmd->add_option("--sweep", a.sweep, "var=start:step:stop with var in P_T, P_I (dBm), T (dB), eps");
    cmd->add_option("--realizations", a.realizations, "Channel realizations")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.seed, "Master seed");
    cmd->add_option("--threads", a.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--qos-db", a.qos_db, "Bob SNR target in dB for no-csi mode");
    cmd->add_option("--eps", a.eps, "Raw Eve error radius for robust mode")->check(CLI::NonNegativeNumber);
}

irs::ExperimentSpec build_spec(const CommonArgs &a) {
    irs::ExperimentSpec spec;
    spec.mode = irs::parse_mode(a.mode);
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        spec.base = irs::read_config(in);
    }
    if (!a.sweep.empty()) spec.sweep = irs::parse_sweep(a.sweep);
    spec.realizations = a.realizations;
    spec.seed = a.seed;
    spec.threads = a.threads;
    spec.qos_db = a.qos_db;
    spec.eps_raw = a.eps;
    return spec;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"IRS-assisted cognitive-radio secrecy simulator"};
    app.require_subcommand(1);

    CommonArgs sim;
    bool no_irs = false, random_phase = false, strict = false;
    int trials = 1;
    auto *simulate = app.add_subcommand("simulate", "Monte-Carlo sweep with detail and aggregate CSV output");
    add_common(simulate, sim);
    simulate->add_option("--out", sim.out, "Output directory")->required();
    simulate->add_flag("--baseline-no-irs", no_irs, "Add the no-IRS baseline (full-csi)");
    simulate->add_flag("--baseline-random-phase", random_phase, "Add the random-phase baseline (full-csi)");
    simulate->add_option("--random-trials", trials, "Random phase draws per realization")->check(CLI::PositiveNumber);
    simulate->add_flag("--strict", strict, "Exit with status 2 when any run is flagged");

    CommonArgs tr;
    tr.realizations = 1;
    auto *trace = app.add_subcommand("trace", "Per-iteration objective CSV");
    add_common(trace, tr);
    trace->add_option("--out", tr.out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            irs::ExperimentSpec spec = build_spec(sim);
            spec.baseline_no_irs = no_irs;
            spec.baseline_random_phase = random_phase;
            spec.random_phase_trials = trials;
            const irs::ExperimentOutput out = irs::run_experiment_to(spec, sim.out);
            std::cerr << out.rows.size() << " rows written to " << sim.out << '\n';
            return strict && out.any_flagged() ? 2 : 0;
        }
        const irs::ExperimentSpec spec = build_spec(tr);
        if (tr.out.empty()) {
            irs::write_trace_csv(std::cout, spec);
        } else {
            std::ofstream file(tr.out);
            if (!file) throw irs::InputError("cannot write '" + tr.out + "'");
            irs::write_trace_csv(file, spec);
        }
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

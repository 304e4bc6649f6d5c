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

// Monte-Carlo experiment runner: seeded realizations over a sweep grid,
// baselines, CSV detail and aggregate outputs, convergence traces.

#include "irs/fullcsi.hpp"
#include "irs/nocsi.hpp"
#include "irs/robust.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace irs {

enum class Mode { FullCsi, Robust, NoCsi };

/// "full-csi", "robust", "no-csi"
Mode parse_mode(const std::string &name);
std::string mode_name(Mode mode);

/// P_T and P_I in dBm, T in dB, eps as a raw error radius (both sets).
enum class SweepVariable { P_T, P_I, T, eps };

SweepVariable parse_sweep_variable(const std::string &name);
std::string sweep_variable_name(SweepVariable v);

struct Sweep {
    SweepVariable variable = SweepVariable::P_T;
    std::vector<double> grid;
};

/// "var=start:step:stop" (stop included within half a step) or "var=value".
Sweep parse_sweep(const std::string &text);

struct ExperimentSpec {
    Mode mode = Mode::FullCsi;
    ScenarioConfig base;
    Sweep sweep;                 // empty grid means the base P_T alone
    int realizations = 50;
    std::uint64_t seed = 1;      // master seed
    bool baseline_no_irs = false;
    bool baseline_random_phase = false;
    int random_phase_trials = 1;
    double qos_db = 30.0;        // no-csi target when T is not swept
    double eps_raw = 0.01;       // robust radius when eps is not swept
    TauGridOptions tau_grid;
    int threads = 1;

    /// Throws InputError when an invariant is broken.
    void validate() const;
    /// Grid actually swept (the sweep grid or the base value).
    std::vector<double> grid() const;
};

/// Per-realization seed, independent of execution order.
std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index);

/// One fading block and phase start for a realization.
struct Realization {
    ChannelSet channels;
    PhaseVector s0;
};

Realization draw_realization(const ScenarioConfig &config, std::uint64_t seed);

/// Best of `trials` random phase vectors, beamformer optimized for each.
RunResult baseline_random_phase(const ChannelSet &ch, double P_T, double P_I, int trials, std::uint64_t seed);

/// Optimal beamformer with every reflecting link removed.
RunResult baseline_no_irs(const ChannelSet &ch, double P_T, double P_I);

struct ResultRow {
    std::string mode;
    std::uint64_t seed = 0;
    double grid_value = 0.0;
    RunResult result;
};

struct ExperimentOutput {
    std::vector<ResultRow> rows; // ordered by (grid point, realization, mode)
    bool any_flagged() const;
};

ExperimentOutput run_experiment(const ExperimentSpec &spec);

/// Column order of the detail CSV.
const std::vector<std::string> &detail_columns();
/// Column order of the aggregate CSV.
const std::vector<std::string> &aggregate_columns();

void write_detail_csv(std::ostream &out, const ExperimentOutput &output);
/// Means per (mode, grid value) over finite entries, rows in first-seen order.
void write_aggregate_csv(std::ostream &out, const ExperimentOutput &output);

/// Runs the experiment and writes detail.csv and aggregate.csv into dir.
ExperimentOutput run_experiment_to(const ExperimentSpec &spec, const std::string &dir);

/// Per-iteration objective of the first `realizations` realizations at the
/// first grid value: C_s (full-csi), |h_B w|^2 at tau_opt (robust), ||w||^2 (no-csi).
void write_trace_csv(std::ostream &out, const ExperimentSpec &spec);

/// Shortest round-trip decimal form, "nan" and "inf" spelled out.
std::string format_number(double v);

} // namespace irs

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

#include "irs/channel.hpp"

#include <limits>
#include <string>
#include <vector>

namespace irs {

/// Outcome of one optimizer run on one channel realization.
struct RunResult {
    Beamformer w;
    cvec s;
    RateReport rates;
    double power = 0.0; // ||w||^2 in watts
    double tau_opt = std::numeric_limits<double>::quiet_NaN();
    double P_S = std::numeric_limits<double>::quiet_NaN();
    double certified_rate = std::numeric_limits<double>::quiet_NaN(); // worst-case secrecy rate
    int iterations = 0;
    std::vector<double> trace; // objective after each outer iteration (index 0 = initial point)
    double wall_ms = 0.0;
    std::vector<std::string> flags;

    void flag(const std::string &f);
    bool has_flag(const std::string &f) const;
    /// Flags joined with '|'.
    std::string flag_string() const;
};

/// Fills rates and power from (w, s) on the given channels.
void finalize_rates(RunResult &r, const ChannelSet &ch);

} // namespace irs

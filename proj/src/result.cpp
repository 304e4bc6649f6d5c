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

#include "irs/result.hpp"

#include <algorithm>

namespace irs {

void RunResult::flag(const std::string &f) {
    if (!has_flag(f)) flags.push_back(f);
}

bool RunResult::has_flag(const std::string &f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

std::string RunResult::flag_string() const {
    std::string out;
    for (const auto &f : flags) {
        if (!out.empty()) out += '|';
        out += f;
    }
    return out;
}

void finalize_rates(RunResult &r, const ChannelSet &ch) {
    if (r.s.size() != ch.n()) r.s = cvec::Ones(ch.n());
    r.rates = rates(r.w, r.s, ch);
    r.power = r.w.power();
}

} // namespace irs

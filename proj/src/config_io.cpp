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

#include "irs/channel.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace irs {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &value) {
    if (value == "inf" || value == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception &) {
        throw InputError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

std::vector<double> parse_list(const std::string &key, const std::string &value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    return out;
}

template <std::size_t N> std::array<double, N> parse_array(const std::string &key, const std::string &value) {
    const auto v = parse_list(key, value);
    if (v.size() != N) throw InputError("config: key '" + key + "' expects " + std::to_string(N) + " values");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = v[i];
    return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InputError("config: key '" + key + "' expects true/false");
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

template <std::size_t N> std::string fmt(const std::array<double, N> &a) {
    std::string out;
    for (std::size_t i = 0; i < N; ++i) out += (i ? "," : "") + fmt(a[i]);
    return out;
}

} // namespace

KeyValueMap parse_key_values(std::istream &in) {
    KeyValueMap kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config: line " + std::to_string(lineno) + " is not of the form key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

ScenarioConfig config_from_map(const KeyValueMap &kv) {
    ScenarioConfig c;
    for (const auto &[key, value] : kv) {
        if (key == "m") c.m = static_cast<int>(parse_double(key, value));
        else if (key == "n") c.n = static_cast<int>(parse_double(key, value));
        else if (key == "P_T") c.P_T = parse_double(key, value);
        else if (key == "P_I") c.P_I = parse_double(key, value);
        else if (key == "sigma2_B") c.sigma2_B = parse_double(key, value);
        else if (key == "sigma2_E") c.sigma2_E = parse_double(key, value);
        else if (key == "alpha_direct") c.alpha_direct = parse_array<3>(key, value);
        else if (key == "alpha_reflect") c.alpha_reflect = parse_array<4>(key, value);
        else if (key == "reference_gain_db") c.reference_gain_db = parse_double(key, value);
        else if (key == "positions.alice") c.positions.alice = parse_array<3>(key, value);
        else if (key == "positions.bob") c.positions.bob = parse_array<3>(key, value);
        else if (key == "positions.irs") c.positions.irs = parse_array<3>(key, value);
        else if (key == "positions.eve") c.positions.eve = parse_array<3>(key, value);
        else if (key == "positions.pr") c.positions.pr = parse_array<3>(key, value);
        else if (key == "eve_random") c.eve_random = parse_bool(key, value);
        else if (key == "pr_random") c.pr_random = parse_bool(key, value);
        else if (key == "seed") c.seed = std::stoull(value);
        // anything else belongs to the experiment layer
    }
    c.validate();
    return c;
}

ScenarioConfig read_config(std::istream &in) { return config_from_map(parse_key_values(in)); }

void write_config(std::ostream &out, const ScenarioConfig &c) {
    out << "m = " << c.m << '\n'
        << "n = " << c.n << '\n'
        << "P_T = " << fmt(c.P_T) << '\n'
        << "P_I = " << fmt(c.P_I) << '\n'
        << "sigma2_B = " << fmt(c.sigma2_B) << '\n'
        << "sigma2_E = " << fmt(c.sigma2_E) << '\n'
        << "alpha_direct = " << fmt(c.alpha_direct) << '\n'
        << "alpha_reflect = " << fmt(c.alpha_reflect) << '\n'
        << "reference_gain_db = " << fmt(c.reference_gain_db) << '\n'
        << "positions.alice = " << fmt(c.positions.alice) << '\n'
        << "positions.bob = " << fmt(c.positions.bob) << '\n'
        << "positions.irs = " << fmt(c.positions.irs) << '\n'
        << "positions.eve = " << fmt(c.positions.eve) << '\n'
        << "positions.pr = " << fmt(c.positions.pr) << '\n'
        << "eve_random = " << (c.eve_random ? "true" : "false") << '\n'
        << "pr_random = " << (c.pr_random ? "true" : "false") << '\n'
        << "seed = " << c.seed << '\n';
}

} // namespace irs

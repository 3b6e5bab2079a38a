// SPDX-License-Identifier: Apache-2.0
//
// plccap - capacity bounds for broadband power line channels
// Copyright (C) 2026 The plccap authors
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


#ifndef PLCCAP_CLI_CONFIG_HPP
#define PLCCAP_CLI_CONFIG_HPP

// Scenario documents (schema 1): parsing, validation and built-in presets.

#include "../scenarios.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace plccap::cli
{

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct OutputPaths
{
    std::string csv, json, svg;
};

struct ScenarioConfig
{
    std::string name = "custom";
    LptvChannel channel;
    NoiseModel noise;
    std::string noise_preset; ///< empty unless the innovation came from a preset
    InnovationPdf raw_innovation;
    std::vector<double> snr_db;
    int n_omega = 512;
    std::optional<int> per;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string signal = "complex_baseband";
    double bps_factor = 1.0;
    std::optional<double> truncated_energy_fraction;
    OutputPaths output;
    json document;
};

namespace detail
{
inline void check_keys(const json &j, const std::string &path, std::initializer_list<const char *> allowed)
{
    if (!j.is_object())
        throw ConfigError(path + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[k, v] : j.items())
        if (!ok.count(k))
            throw ConfigError(path + ": unknown key '" + k + "'");
}

inline const json &require(const json &j, const std::string &path, const char *key)
{
    if (!j.contains(key))
        throw ConfigError(path + ": missing key '" + key + "'");
    return j.at(key);
}

inline double num(const json &j, const std::string &path)
{
    if (!j.is_number())
        throw ConfigError(path + ": expected a number");
    return j.get<double>();
}

inline double num_or(const json &j, const std::string &path, const char *key, double dflt)
{
    return j.contains(key) ? num(j.at(key), path + "." + key) : dflt;
}

inline int int_of(const json &j, const std::string &path)
{
    if (!j.is_number_integer())
        throw ConfigError(path + ": expected an integer");
    return j.get<int>();
}

inline int int_or(const json &j, const std::string &path, const char *key, int dflt)
{
    return j.contains(key) ? int_of(j.at(key), path + "." + key) : dflt;
}

inline std::uint64_t seed_or(const json &j, const std::string &path, const char *key, std::uint64_t dflt)
{
    if (!j.contains(key))
        return dflt;
    const auto &v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ConfigError(path + "." + key + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::string str(const json &j, const std::string &path)
{
    if (!j.is_string())
        throw ConfigError(path + ": expected a string");
    return j.get<std::string>();
}

inline Matrix matrix(const json &j, const std::string &path)
{
    if (j.is_number())
        return Matrix::Constant(1, 1, j.get<double>());
    if (!j.is_array() || j.empty())
        throw ConfigError(path + ": expected a number or a non-empty array of rows");
    const auto rows = j.size();
    const auto cols = j.at(0).is_array() ? j.at(0).size() : 0;
    if (cols == 0)
        throw ConfigError(path + ": rows must be non-empty arrays");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
    {
        const auto &row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw ConfigError(path + "[" + std::to_string(r) + "]: ragged matrix row");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                num(row.at(c), path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

inline Vector vector(const json &j, const std::string &path)
{
    if (j.is_number())
        return Vector::Constant(1, j.get<double>());
    if (!j.is_array() || j.empty())
        throw ConfigError(path + ": expected a number or a non-empty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = num(j.at(i), path + "[" + std::to_string(i) + "]");
    return v;
}

inline cplx complex_entry(const json &j, const std::string &path)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2)
        return {num(j.at(0), path + "[0]"), num(j.at(1), path + "[1]")};
    throw ConfigError(path + ": expected a number or a [re, im] pair");
}

inline CMatrix complex_matrix(const json &j, const std::string &path)
{
    if (j.is_number() || (j.is_array() && j.size() == 2 && j.at(0).is_number()))
        return CMatrix::Constant(1, 1, complex_entry(j, path));
    if (!j.is_array() || j.empty() || !j.at(0).is_array() || j.at(0).empty())
        throw ConfigError(path + ": expected a complex matrix");
    const auto rows = j.size(), cols = j.at(0).size();
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
    {
        if (!j.at(r).is_array() || j.at(r).size() != cols)
            throw ConfigError(path + "[" + std::to_string(r) + "]: ragged matrix row");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_entry(j.at(r).at(c), path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

template <class F> auto wrap_model(const std::string &path, F &&f) -> decltype(f())
{
    try
    {
        return f();
    }
    catch (const SingularShaping &)
    {
        throw;
    }
    catch (const ModelError &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

inline std::vector<Matrix> tap_list(const json &j, const std::string &path)
{
    if (!j.is_array() || j.empty())
        throw ConfigError(path + ": expected a non-empty array of tap matrices");
    std::vector<Matrix> taps;
    for (std::size_t i = 0; i < j.size(); ++i)
        taps.push_back(matrix(j.at(i), path + "[" + std::to_string(i) + "]"));
    return taps;
}

inline LptvChannel parse_channel(const json &j, const std::string &path)
{
    const std::string kind = str(require(j, path, "kind"), path + ".kind");
    if (kind == "identity")
    {
        check_keys(j, path, {"kind", "n"});
        const int n = int_or(j, path, "n", 1);
        if (n < 1)
            throw ConfigError(path + ".n: must be positive");
        return LptvChannel::identity(n);
    }
    if (kind == "inline")
    {
        check_keys(j, path, {"kind", "period", "memory", "taps"});
        const int period = int_of(require(j, path, "period"), path + ".period");
        const int memory = int_of(require(j, path, "memory"), path + ".memory");
        auto taps = tap_list(require(j, path, "taps"), path + ".taps");
        return wrap_model(path, [&] { return LptvChannel(period, memory, std::move(taps)); });
    }
    if (kind == "complex")
    {
        check_keys(j, path, {"kind", "period", "memory", "taps"});
        ComplexLptvChannel c;
        c.period = int_of(require(j, path, "period"), path + ".period");
        c.memory = int_of(require(j, path, "memory"), path + ".memory");
        const auto &t = require(j, path, "taps");
        if (!t.is_array() || t.empty())
            throw ConfigError(path + ".taps: expected a non-empty array");
        for (std::size_t i = 0; i < t.size(); ++i)
            c.taps.push_back(complex_matrix(t.at(i), path + ".taps[" + std::to_string(i) + "]"));
        return wrap_model(path, [&] { return complex_to_real(c); });
    }
    if (kind == "synthetic")
    {
        check_keys(j, path,
                   {"kind", "n", "period", "memory", "decay", "depth", "rho", "seed", "min_rcond", "port_normalize"});
        SyntheticChannelSpec s;
        s.n = int_or(j, path, "n", s.n);
        s.period = int_or(j, path, "period", s.period);
        s.memory = int_or(j, path, "memory", s.memory);
        s.decay = num_or(j, path, "decay", s.decay);
        s.depth = num_or(j, path, "depth", s.depth);
        s.rho = num_or(j, path, "rho", s.rho);
        s.seed = seed_or(j, path, "seed", s.seed);
        s.min_rcond = num_or(j, path, "min_rcond", s.min_rcond);
        if (j.contains("port_normalize"))
        {
            if (!j.at("port_normalize").is_boolean())
                throw ConfigError(path + ".port_normalize: expected a boolean");
            s.port_normalize = j.at("port_normalize").get<bool>();
        }
        return wrap_model(path, [&] { return synthetic_channel(s); });
    }
    throw ConfigError(path + ".kind: unknown channel kind '" + kind + "'");
}

inline InnovationPdf parse_innovation(const json &j, const std::string &path, std::string &preset)
{
    if (j.contains("preset"))
    {
        check_keys(j, path, {"preset", "dimension"});
        preset = str(j.at("preset"), path + ".preset");
        const auto id = parse_preset(preset);
        if (!id)
            throw ConfigError(path + ".preset: unknown noise preset '" + preset + "'");
        if (!j.contains("dimension"))
            return preset_innovation(*id);
        const int d = int_of(j.at("dimension"), path + ".dimension");
        return wrap_model(path, [&]() -> InnovationPdf {
            switch (*id)
            {
            case PresetId::GM1: return gm1_params(d);
            case PresetId::GM2: return gm2_params(d);
            case PresetId::MCA: return mca_params(d);
            default:
                if (d != preset_innovation(*id).dimension())
                    throw ModelError("preset '" + preset + "' has a fixed dimension");
                return preset_innovation(*id);
            }
        });
    }
    const std::string type = str(require(j, path, "type"), path + ".type");
    if (type == "gm")
    {
        check_keys(j, path, {"type", "priors", "means", "covariances"});
        GmParams p;
        const auto &pr = require(j, path, "priors");
        const auto &mu = require(j, path, "means");
        const auto &cv = require(j, path, "covariances");
        if (!pr.is_array() || !mu.is_array() || !cv.is_array())
            throw ConfigError(path + ": priors, means and covariances must be arrays");
        for (std::size_t i = 0; i < pr.size(); ++i)
            p.priors.push_back(num(pr.at(i), path + ".priors[" + std::to_string(i) + "]"));
        for (std::size_t i = 0; i < mu.size(); ++i)
            p.means.push_back(vector(mu.at(i), path + ".means[" + std::to_string(i) + "]"));
        for (std::size_t i = 0; i < cv.size(); ++i)
            p.covariances.push_back(matrix(cv.at(i), path + ".covariances[" + std::to_string(i) + "]"));
        return wrap_model(path, [&] { return InnovationPdf(std::move(p)); });
    }
    if (type == "nakagami")
    {
        check_keys(j, path, {"type", "m", "omega", "dimension"});
        NakagamiParams p;
        p.m = num(require(j, path, "m"), path + ".m");
        p.omega = num_or(j, path, "omega", 1.0);
        p.dimension = int_or(j, path, "dimension", 2);
        return wrap_model(path, [&] { return InnovationPdf(p); });
    }
    if (type == "gaussian")
    {
        check_keys(j, path, {"type", "covariance"});
        GaussianParams p{matrix(require(j, path, "covariance"), path + ".covariance")};
        return wrap_model(path, [&] { return InnovationPdf(std::move(p)); });
    }
    throw ConfigError(path + ".type: unknown innovation type '" + type + "'");
}

inline PsdProfile parse_psd(const json &j, const std::string &path)
{
    PsdProfile p;
    const std::string kind = str(require(j, path, "kind"), path + ".kind");
    if (kind == "flat")
    {
        check_keys(j, path, {"kind"});
        p.kind = PsdProfile::Kind::flat;
    }
    else if (kind == "two_level")
    {
        check_keys(j, path, {"kind", "template", "duty", "contrast_db", "tilt_db"});
        p = disturbance_profile(Disturbance::medium);
        if (j.contains("template"))
        {
            const auto t = str(j.at("template"), path + ".template");
            if (t == "medium")
                p = disturbance_profile(Disturbance::medium);
            else if (t == "heavy")
                p = disturbance_profile(Disturbance::heavy);
            else
                throw ConfigError(path + ".template: expected 'medium' or 'heavy'");
        }
        p.duty = num_or(j, path, "duty", p.duty);
        p.contrast_db = num_or(j, path, "contrast_db", p.contrast_db);
        p.tilt_db = num_or(j, path, "tilt_db", p.tilt_db);
    }
    else if (kind == "table")
    {
        check_keys(j, path, {"kind", "values"});
        p.kind = PsdProfile::Kind::table;
        const auto &v = require(j, path, "values");
        if (!v.is_array() || v.empty())
            throw ConfigError(path + ".values: expected a non-empty array of per-phase rows");
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            const Vector row = vector(v.at(i), path + ".values[" + std::to_string(i) + "]");
            p.table.emplace_back(row.data(), row.data() + row.size());
        }
    }
    else
        throw ConfigError(path + ".kind: unknown PSD kind '" + kind + "'");
    return p;
}

inline LptvShapingFilter parse_shaping(const json &j, const std::string &path, int n, std::optional<double> &lost)
{
    const std::string kind = str(require(j, path, "kind"), path + ".kind");
    if (kind == "identity")
    {
        check_keys(j, path, {"kind"});
        return LptvShapingFilter::identity(n);
    }
    if (kind == "inline")
    {
        check_keys(j, path, {"kind", "period", "memory", "taps"});
        const int period = int_of(require(j, path, "period"), path + ".period");
        const int memory = int_of(require(j, path, "memory"), path + ".memory");
        auto taps = tap_list(require(j, path, "taps"), path + ".taps");
        return wrap_model(path, [&] { return LptvShapingFilter(period, memory, std::move(taps)); });
    }
    if (kind == "profile")
    {
        check_keys(j, path, {"kind", "period", "memory", "phase", "rho_w", "psd"});
        const int period = int_or(j, path, "period", 12);
        const int memory = int_or(j, path, "memory", 4);
        FilterPhase phase = FilterPhase::minimum;
        if (j.contains("phase"))
        {
            const auto ph = str(j.at("phase"), path + ".phase");
            if (ph == "zero")
                phase = FilterPhase::zero;
            else if (ph != "minimum")
                throw ConfigError(path + ".phase: expected 'minimum' or 'zero'");
        }
        SpatialProfile sp;
        if (j.contains("rho_w"))
        {
            const auto &r = j.at("rho_w");
            check_keys(r, path + ".rho_w", {"offset", "slope"});
            sp.rho_w.offset = num_or(r, path + ".rho_w", "offset", sp.rho_w.offset);
            sp.rho_w.slope = num_or(r, path + ".rho_w", "slope", sp.rho_w.slope);
        }
        if (j.contains("psd"))
            sp.psd = parse_psd(j.at("psd"), path + ".psd");
        auto syn = wrap_model(path, [&] { return profile_to_filter(sp, period, memory, n, phase); });
        lost = syn.truncated_energy_fraction;
        return syn.filter;
    }
    throw ConfigError(path + ".kind: unknown shaping kind '" + kind + "'");
}

inline std::vector<double> snr_range(double a, double step, double b, const std::string &path)
{
    if (!(step > 0.0) || !(b >= a) || !std::isfinite(a) || !std::isfinite(b))
        throw ConfigError(path + ": SNR range needs start <= stop and a positive step");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 100000)
        throw ConfigError(path + ": SNR range has too many points");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = a + step * static_cast<double>(i);
    return out;
}

inline std::vector<double> parse_snr_json(const json &j, const std::string &path)
{
    if (j.is_number())
        return {j.get<double>()};
    if (j.is_array())
    {
        if (j.empty())
            throw ConfigError(path + ": SNR list is empty");
        std::vector<double> out;
        for (std::size_t i = 0; i < j.size(); ++i)
            out.push_back(num(j.at(i), path + "[" + std::to_string(i) + "]"));
        return out;
    }
    check_keys(j, path, {"start", "step", "stop"});
    return snr_range(num(require(j, path, "start"), path + ".start"), num(require(j, path, "step"), path + ".step"),
                     num(require(j, path, "stop"), path + ".stop"), path);
}
} // namespace detail

/// Parses `A:STEP:B`, a comma-separated list, or a single value.
inline std::vector<double> parse_snr_arg(const std::string &s)
{
    auto to_d = [&](const std::string &t) {
        std::size_t pos = 0;
        double v = 0.0;
        try
        {
            v = std::stod(t, &pos);
        }
        catch (const std::exception &)
        {
            pos = 0;
        }
        if (pos == 0 || pos != t.size())
            throw ConfigError("--snr: cannot parse '" + t + "'");
        return v;
    };
    if (s.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ':');)
            parts.push_back(p);
        if (parts.size() != 3)
            throw ConfigError("--snr: expected A:STEP:B");
        return detail::snr_range(to_d(parts[0]), to_d(parts[1]), to_d(parts[2]), "--snr");
    }
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');)
        out.push_back(to_d(p));
    if (out.empty())
        throw ConfigError("--snr: empty list");
    return out;
}

/// Builds a scenario from a parsed document.
inline ScenarioConfig from_json(const json &doc)
{
    const std::string root = "$";
    detail::check_keys(doc, root, {"schema", "name", "description", "channel", "noise", "sweep", "numerics", "signal",
                                   "output"});
    const auto &schema = detail::require(doc, root, "schema");
    if (!schema.is_number_integer() || schema.get<int>() != 1)
        throw ConfigError("$.schema: unsupported schema version (expected 1)");

    ScenarioConfig c;
    c.document = doc;
    if (doc.contains("name"))
        c.name = detail::str(doc.at("name"), "$.name");
    if (doc.contains("description"))
        detail::str(doc.at("description"), "$.description");

    c.channel = detail::parse_channel(detail::require(doc, root, "channel"), "$.channel");

    const auto &nz = detail::require(doc, root, "noise");
    detail::check_keys(nz, "$.noise", {"innovation", "shaping", "normalize"});
    c.raw_innovation = detail::parse_innovation(detail::require(nz, "$.noise", "innovation"), "$.noise.innovation",
                                                c.noise_preset);
    bool normalize = true;
    if (nz.contains("normalize"))
    {
        if (!nz.at("normalize").is_boolean())
            throw ConfigError("$.noise.normalize: expected a boolean");
        normalize = nz.at("normalize").get<bool>();
    }
    const int n = c.raw_innovation.dimension();
    LptvShapingFilter shaping = LptvShapingFilter::identity(n);
    if (nz.contains("shaping"))
        shaping = detail::parse_shaping(nz.at("shaping"), "$.noise.shaping", n, c.truncated_energy_fraction);
    c.noise = detail::wrap_model("$.noise", [&] { return NoiseModel(c.raw_innovation, shaping, normalize); });
    if (c.channel.n_out() != c.noise.n())
        throw ConfigError("$.noise: noise dimension " + std::to_string(c.noise.n()) +
                          " differs from channel output size " + std::to_string(c.channel.n_out()));

    if (doc.contains("sweep"))
    {
        const auto &sw = doc.at("sweep");
        detail::check_keys(sw, "$.sweep", {"snr_db"});
        c.snr_db = detail::parse_snr_json(detail::require(sw, "$.sweep", "snr_db"), "$.sweep.snr_db");
    }
    else
        c.snr_db = detail::snr_range(0.0, 2.0, 30.0, "$.sweep");

    if (doc.contains("numerics"))
    {
        const auto &nu = doc.at("numerics");
        detail::check_keys(nu, "$.numerics", {"n_omega", "per", "seed", "threads"});
        c.n_omega = detail::int_or(nu, "$.numerics", "n_omega", c.n_omega);
        if (nu.contains("per") && !nu.at("per").is_null())
            c.per = detail::int_of(nu.at("per"), "$.numerics.per");
        c.seed = detail::seed_or(nu, "$.numerics", "seed", 0);
        c.threads = detail::int_or(nu, "$.numerics", "threads", 0);
    }
    if (c.n_omega < 16 || c.n_omega % 2 != 0)
        throw ConfigError("$.numerics.n_omega: must be even and at least 16");

    if (doc.contains("signal"))
    {
        c.signal = detail::str(doc.at("signal"), "$.signal");
        if (c.signal == "complex_baseband")
            c.bps_factor = 1.0;
        else if (c.signal == "real_passband")
            c.bps_factor = 2.0;
        else
            throw ConfigError("$.signal: expected 'complex_baseband' or 'real_passband'");
    }

    if (doc.contains("output"))
    {
        const auto &o = doc.at("output");
        detail::check_keys(o, "$.output", {"csv", "json", "svg"});
        if (o.contains("csv"))
            c.output.csv = detail::str(o.at("csv"), "$.output.csv");
        if (o.contains("json"))
            c.output.json = detail::str(o.at("json"), "$.output.json");
        if (o.contains("svg"))
            c.output.svg = detail::str(o.at("svg"), "$.output.svg");
    }
    return c;
}

/// Parses document text; syntax errors report line and column.
inline json parse_document(const std::string &text, const std::string &origin = "<config>")
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else
                ++col;
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": syntax error: " +
                          e.what());
    }
}

inline ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(parse_document(ss.str(), path));
}

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

inline const std::vector<std::string> &scenario_names()
{
    static const std::vector<std::string> names = {"awgn-iid",   "nakagami-iid", "gm1-iid", "gm1-scalar",
                                                   "gm2-scalar", "mca-scalar",   "mimo-gm", "mimo-mca"};
    return names;
}

inline std::optional<json> scenario_document(const std::string &name)
{
    auto iid = [&](const char *desc, json innovation) {
        return json{{"schema", 1},
                    {"name", name},
                    {"description", desc},
                    {"channel", {{"kind", "identity"}, {"n", 2}}},
                    {"noise", {{"innovation", std::move(innovation)}}},
                    {"sweep", {{"snr_db", {{"start", 0}, {"step", 2}, {"stop", 30}}}}},
                    {"numerics", {{"n_omega", 512}, {"seed", 0}}},
                    {"signal", "complex_baseband"}};
    };
    auto lptv = [&](const char *desc, int n, const char *preset, const char *tmpl) {
        json shaping = {{"kind", "profile"},
                        {"period", 12},
                        {"memory", 4},
                        {"phase", "minimum"},
                        {"psd", {{"kind", "two_level"}, {"template", tmpl}}}};
        if (n == 2)
            shaping["rho_w"] = {{"offset", 0.7}, {"slope", 1.0}};
        return json{{"schema", 1},
                    {"name", name},
                    {"description", desc},
                    {"channel",
                     {{"kind", "synthetic"},
                      {"n", n},
                      {"period", 24},
                      {"memory", 4},
                      {"decay", 0.5},
                      {"depth", 0.5},
                      {"rho", 0.9},
                      {"seed", 1}}},
                    {"noise", {{"innovation", {{"preset", preset}}}, {"shaping", shaping}}},
                    {"sweep", {{"snr_db", {{"start", 0}, {"step", 2}, {"stop", 30}}}}},
                    {"numerics", {{"n_omega", 512}, {"seed", 0}}},
                    {"signal", "real_passband"}};
    };
    if (name == "awgn-iid")
        return iid("complex AWGN reference, identity channel", {{"preset", "gaussian"}});
    if (name == "nakagami-iid")
        return iid("i.i.d. complex Nakagami m=0.8 noise, identity channel", {{"preset", "nakagami"}});
    if (name == "gm1-iid")
        return iid("i.i.d. complex 2-D GM1 noise, identity channel", {{"preset", "gm1"}, {"dimension", 2}});
    if (name == "gm1-scalar")
        return lptv("scalar LPTV channel, GM1 noise, medium disturbance", 1, "gm1", "medium");
    if (name == "gm2-scalar")
        return lptv("scalar LPTV channel, GM2 noise, medium disturbance", 1, "gm2", "medium");
    if (name == "mca-scalar")
        return lptv("scalar LPTV channel, class A noise, heavy disturbance", 1, "mca", "heavy");
    if (name == "mimo-gm")
        return lptv("2x2 LPTV channel, MIMO GM noise, medium disturbance", 2, "mimo-gm", "medium");
    if (name == "mimo-mca")
        return lptv("2x2 LPTV channel, MIMO class A noise, heavy disturbance", 2, "mimo-mca", "heavy");
    return std::nullopt;
}

inline ScenarioConfig load_scenario(const std::string &name)
{
    const auto doc = scenario_document(name);
    if (!doc)
        throw ConfigError("unknown scenario preset '" + name + "'");
    return from_json(*doc);
}

// ---------------------------------------------------------------------------
// Documents for presets
// ---------------------------------------------------------------------------

inline json matrix_json(const Matrix &m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json innovation_json(const InnovationPdf &pdf)
{
    if (pdf.is_gm())
    {
        const auto &p = pdf.gm();
        json means = json::array(), covs = json::array();
        for (const auto &m : p.means)
            means.push_back(std::vector<double>(m.data(), m.data() + m.size()));
        for (const auto &c : p.covariances)
            covs.push_back(matrix_json(c));
        return {{"type", "gm"}, {"priors", p.priors}, {"means", means}, {"covariances", covs}};
    }
    if (pdf.is_nakagami())
    {
        const auto &p = pdf.nakagami();
        return {{"type", "nakagami"}, {"m", p.m}, {"omega", p.omega}, {"dimension", p.dimension}};
    }
    return {{"type", "gaussian"}, {"covariance", matrix_json(pdf.gaussian().covariance)}};
}

/// Noise preset as an inline innovation document plus its normalization data.
inline json noise_preset_document(PresetId id)
{
    const auto raw = preset_innovation(id);
    const auto model = build_preset(id);
    json j = {{"preset", preset_name(id)},
              {"innovation", innovation_json(raw)},
              {"raw_total_variance", raw.total_variance()},
              {"scale_factor", model.scale_factor()},
              {"normalized_innovation", innovation_json(model.innovation())}};
    if (id == PresetId::MCA || id == PresetId::MIMO_MCA)
    {
        const auto w = mca_raw_weights(0.1, 10);
        double sum = 0.0;
        for (double v : w)
            sum += v;
        j["raw_poisson_weights"] = w;
        j["raw_weight_sum"] = sum;
    }
    return j;
}

} // namespace plccap::cli

#endif

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


#ifndef PLCCAP_CLI_OUTPUT_HPP
#define PLCCAP_CLI_OUTPUT_HPP

#include "../capacity.hpp"
#include "config.hpp"

#include <cstdio>
#include <ostream>

namespace plccap::cli
{

inline std::string fmt17(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string join_flags(const std::vector<std::string> &flags)
{
    std::string s;
    for (const auto &f : flags)
    {
        if (!s.empty())
            s += ';';
        for (char ch : f)
            s += (ch == ',' || ch == '\n' || ch == '"') ? '_' : ch;
    }
    return s;
}

inline const char *csv_header =
    "snr_db,p_tilde,upper_bps,lower1_bps,lower2_bps,c_gauss_bps,delta,h_rate_low,h_rate_high,flags";

inline void write_csv(std::ostream &os, const std::vector<BoundsReport> &rows)
{
    os << csv_header << '\n';
    for (const auto &r : rows)
    {
        const auto l2 = r.lower2_bps();
        os << fmt17(r.snr_db) << ',' << fmt17(r.p_tilde) << ',' << fmt17(r.upper_bps()) << ','
           << fmt17(r.lower1_bps()) << ',' << (l2 ? fmt17(*l2) : std::string()) << ',' << fmt17(r.c_gauss_bps())
           << ',' << fmt17(r.delta) << ',' << fmt17(r.entropy_used.lower) << ',' << fmt17(r.entropy_used.upper) << ','
           << join_flags(r.flags) << '\n';
    }
}

inline std::string xml_escape(const std::string &s)
{
    std::string out;
    for (char ch : s)
    {
        switch (ch)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

inline json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json report_json(const ScenarioConfig &cfg, const std::vector<BoundsReport> &rows)
{
    json out = {{"schema", 1},
                {"scenario", cfg.name},
                {"units",
                 {{"rates", "bps/Hz"},
                  {"signal", cfg.signal},
                  {"bps_factor", cfg.bps_factor},
                  {"entropy", "bits per original sample"}}},
                {"n_omega", cfg.n_omega},
                {"seed", cfg.seed}};
    if (cfg.truncated_energy_fraction)
        out["shaping_truncated_energy_fraction"] = *cfg.truncated_energy_fraction;
    json arr = json::array();
    for (const auto &r : rows)
    {
        const auto l2 = r.lower2_bps();
        arr.push_back({{"snr_db", r.snr_db},
                       {"p_tilde", num_or_null(r.p_tilde)},
                       {"ok", r.ok},
                       {"per", r.per},
                       {"upper_bps", num_or_null(r.upper_bps())},
                       {"lower1_bps", num_or_null(r.lower1_bps())},
                       {"lower2_bps", l2 ? num_or_null(*l2) : json(nullptr)},
                       {"c_gauss_bps", num_or_null(r.c_gauss_bps())},
                       {"delta", num_or_null(r.delta)},
                       {"h_rate_low", num_or_null(r.entropy_used.lower)},
                       {"h_rate_high", num_or_null(r.entropy_used.upper)},
                       {"h_gauss", num_or_null(r.h_gauss)},
                       {"power_residual", num_or_null(r.power_residual)},
                       {"flags", r.flags}});
    }
    out["rows"] = std::move(arr);
    return out;
}

/// Static line chart of the three bounds against SNR.
inline void write_svg(std::ostream &os, const std::string &title, const std::vector<BoundsReport> &rows)
{
    constexpr double w = 640, h = 420, ml = 60, mr = 150, mt = 40, mb = 50;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y1 = 0.0;
    for (const auto &r : rows)
    {
        if (!r.ok)
            continue;
        x0 = std::min(x0, r.snr_db);
        x1 = std::max(x1, r.snr_db);
        y1 = std::max({y1, r.upper_bps(), r.lower1_bps(), r.lower2_bps().value_or(0.0)});
    }
    if (!(x1 > x0))
    {
        x0 = std::isfinite(x0) ? x0 - 1.0 : 0.0;
        x1 = x0 + 2.0;
    }
    y1 = y1 > 0.0 ? std::ceil(y1) : 1.0;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - y / y1 * (h - mt - mb); };
    auto f = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.2f", v);
        return std::string(b);
    };
    auto g = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%g", v);
        return std::string(b);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
       << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << ml << "\" y=\"24\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << f(py(0)) << "\" x2=\"" << f(w - mr) << "\" y2=\"" << f(py(0))
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << f(py(0)) << "\" x2=\"" << ml << "\" y2=\"" << f(py(y1))
       << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t)
    {
        const double xv = x0 + (x1 - x0) * t / 5.0, yv = y1 * t / 5.0;
        os << "<text x=\"" << f(px(xv)) << "\" y=\"" << f(h - mb + 18) << "\" text-anchor=\"middle\">" << g(xv)
           << "</text>\n";
        os << "<text x=\"" << f(ml - 8) << "\" y=\"" << f(py(yv) + 4) << "\" text-anchor=\"end\">" << g(yv)
           << "</text>\n";
        os << "<line x1=\"" << ml << "\" y1=\"" << f(py(yv)) << "\" x2=\"" << f(w - mr) << "\" y2=\"" << f(py(yv))
           << "\" stroke=\"#ddd\"/>\n";
    }
    os << "<text x=\"" << f((ml + w - mr) / 2) << "\" y=\"" << f(h - 12) << "\" text-anchor=\"middle\">SNR [dB]</text>\n";
    os << "<text x=\"16\" y=\"" << f((mt + h - mb) / 2) << "\" transform=\"rotate(-90 16 " << f((mt + h - mb) / 2)
       << ")\" text-anchor=\"middle\">rate [bps/Hz]</text>\n";

    struct Series
    {
        const char *name, *color, *dash;
        std::function<std::optional<double>(const BoundsReport &)> get;
    };
    const Series series[] = {
        {"Upper bound", "#c0392b", "", [](const BoundsReport &r) { return std::optional<double>(r.upper_bps()); }},
        {"Lower bound 1", "#2471a3", "6 4",
         [](const BoundsReport &r) { return std::optional<double>(r.lower1_bps()); }},
        {"Lower bound 2", "#1e8449", "2 3", [](const BoundsReport &r) { return r.lower2_bps(); }},
    };
    int idx = 0;
    for (const auto &s : series)
    {
        std::string pts;
        for (const auto &r : rows)
        {
            if (!r.ok)
                continue;
            const auto v = s.get(r);
            if (!v || !std::isfinite(*v))
                continue;
            pts += f(px(r.snr_db)) + ',' + f(py(*v)) + ' ';
        }
        if (!pts.empty())
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
               << (*s.dash ? std::string(" stroke-dasharray=\"") + s.dash + "\"" : std::string()) << " points=\""
               << pts << "\"/>\n";
        const double ly = mt + 10 + 20 * idx++;
        os << "<line x1=\"" << f(w - mr + 10) << "\" y1=\"" << f(ly) << "\" x2=\"" << f(w - mr + 40) << "\" y2=\""
           << f(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
           << (*s.dash ? std::string(" stroke-dasharray=\"") + s.dash + "\"" : std::string()) << "/>\n";
        os << "<text x=\"" << f(w - mr + 46) << "\" y=\"" << f(ly + 4) << "\">" << s.name << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace plccap::cli

#endif

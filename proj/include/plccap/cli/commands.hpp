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


#ifndef PLCCAP_CLI_COMMANDS_HPP
#define PLCCAP_CLI_COMMANDS_HPP

// Verb implementations shared by the plccap tool and its tests. Each returns a process exit code.

#include "../knn_entropy.hpp"
#include "output.hpp"

#include <iomanip>

namespace plccap::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_config = 2,
    exit_invariant = 3
};

struct Options
{
    std::string config;
    std::string preset;
    std::string snr;
    std::string csv, json, svg;
    std::optional<int> n_omega;
    std::optional<std::uint64_t> seed;
    bool mc = false;
};

/// Scenario from --config or --preset with command-line overrides applied.
inline ScenarioConfig resolve(const Options &o, bool allow_noise_preset = false)
{
    if (!o.config.empty() && !o.preset.empty())
        throw ConfigError("use either --config or --preset, not both");
    ScenarioConfig c;
    if (!o.config.empty())
        c = load_config(o.config);
    else if (!o.preset.empty())
    {
        if (scenario_document(o.preset))
            c = load_scenario(o.preset);
        else if (allow_noise_preset && parse_preset(o.preset))
        {
            const auto dim = preset_innovation(*parse_preset(o.preset)).dimension();
            c = from_json(json{{"schema", 1},
                               {"name", o.preset},
                               {"channel", {{"kind", "identity"}, {"n", dim}}},
                               {"noise", {{"innovation", {{"preset", o.preset}}}}}});
        }
        else
            throw ConfigError("unknown preset '" + o.preset + "'");
    }
    else
        throw ConfigError("one of --config or --preset is required");

    if (!o.snr.empty())
        c.snr_db = parse_snr_arg(o.snr);
    if (o.n_omega)
    {
        if (*o.n_omega < 16 || *o.n_omega % 2 != 0)
            throw ConfigError("--n-omega: must be even and at least 16");
        c.n_omega = *o.n_omega;
    }
    if (o.seed)
        c.seed = *o.seed;
    if (!o.csv.empty())
        c.output.csv = o.csv;
    if (!o.json.empty())
        c.output.json = o.json;
    if (!o.svg.empty())
        c.output.svg = o.svg;
    return c;
}

namespace detail
{
inline void write_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError(path + ": cannot open for writing");
    f << content;
    if (!f)
        throw ConfigError(path + ": write failed");
}

inline SweepOptions sweep_options(const ScenarioConfig &c)
{
    SweepOptions s;
    s.n_omega = c.n_omega;
    s.per = c.per;
    s.threads = c.threads;
    s.bps_factor = c.bps_factor;
    return s;
}
} // namespace detail

inline std::vector<BoundsReport> run_sweep(const ScenarioConfig &c)
{
    return snr_sweep(c.channel, c.noise, c.snr_db, detail::sweep_options(c));
}

inline int cmd_bounds(const Options &o, std::ostream &out, std::ostream &err)
{
    ScenarioConfig c;
    try
    {
        c = resolve(o);
    }
    catch (const SingularShaping &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    std::vector<BoundsReport> rows;
    try
    {
        rows = run_sweep(c);
    }
    catch (const ModelError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    std::ostringstream csv;
    write_csv(csv, rows);
    try
    {
        if (c.output.csv.empty())
            out << csv.str();
        else
            detail::write_file(c.output.csv, csv.str());
        if (!c.output.json.empty())
            detail::write_file(c.output.json, report_json(c, rows).dump(2) + "\n");
        if (!c.output.svg.empty())
        {
            std::ostringstream svg;
            write_svg(svg, c.name, rows);
            detail::write_file(c.output.svg, svg.str());
        }
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    for (const auto &r : rows)
        if (!r.ok)
            err << "warning: SNR " << r.snr_db << " dB failed: " << join_flags(r.flags) << '\n';
    return exit_ok;
}

inline std::string interval_text(const EntropyInterval &e)
{
    std::ostringstream s;
    s << std::setprecision(10);
    if (e.exact)
        s << e.lower << " bits (exact)";
    else
        s << "[" << e.lower << ", " << e.upper << "] bits (width " << e.width() << ")";
    return s.str();
}

inline int cmd_entropy(const Options &o, std::ostream &out, std::ostream &err)
{
    ScenarioConfig c;
    try
    {
        c = resolve(o, true);
    }
    catch (const std::exception &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    const auto &inn = c.noise.innovation();
    NoiseEntropyRate r;
    LiftedChannel lifted;
    try
    {
        lifted = lift(c.channel, c.noise, c.per);
        r = noise_entropy_rate(c.noise, lifted, c.n_omega, c.threads);
    }
    catch (const DivergentIntegral &e)
    {
        err << "error: noise entropy rate diverges, the shaping filter response is singular: " << e.what() << '\n';
        return exit_invariant;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }

    out << std::setprecision(10);
    out << "scenario: " << c.name << '\n';
    out << "innovation dimension: " << inn.dimension() << ", scale factor " << c.noise.scale_factor() << '\n';
    if (inn.is_gm())
    {
        const auto &p = inn.gm();
        out << "gaussian mixture, " << p.n_components() << " components\n";
        const bool mca = c.noise_preset == "mca" || c.noise_preset == "mimo-mca";
        std::vector<double> raw;
        double raw_sum = 0.0;
        if (mca)
        {
            raw = mca_raw_weights(0.1, p.n_components());
            for (double v : raw)
                raw_sum += v;
        }
        for (int n = 0; n < p.n_components(); ++n)
        {
            out << "  n=" << n << " prior " << p.priors[static_cast<std::size_t>(n)];
            if (mca)
                out << " = " << raw[static_cast<std::size_t>(n)] << "/" << raw_sum;
            out << '\n';
        }
    }
    else if (inn.is_nakagami())
        out << "complex nakagami, m = " << inn.nakagami().m << ", omega = " << inn.nakagami().omega << '\n';
    else
        out << "gaussian\n";
    out << "innovation entropy: " << interval_text(r.innovation) << '\n';
    out << "szego gain: " << r.szego_gain << " bits per lifted sample (per = " << r.per << ")\n";
    out << "entropy rate per lifted sample: " << interval_text(r.per_lifted) << '\n';
    out << "entropy rate per original sample: " << interval_text(r.per_sample) << '\n';

    if (!o.json.empty())
    {
        json j = {{"schema", 1},
                  {"scenario", c.name},
                  {"per", r.per},
                  {"scale_factor", c.noise.scale_factor()},
                  {"innovation", {{"lower", r.innovation.lower}, {"upper", r.innovation.upper}, {"exact", r.innovation.exact}}},
                  {"szego_gain", r.szego_gain},
                  {"per_lifted", {{"lower", r.per_lifted.lower}, {"upper", r.per_lifted.upper}}},
                  {"per_sample", {{"lower", r.per_sample.lower}, {"upper", r.per_sample.upper}}}};
        try
        {
            detail::write_file(o.json, j.dump(2) + "\n");
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << '\n';
            return exit_config;
        }
    }
    return exit_ok;
}

/// Invariant checks on the configured model; one PASS/FAIL/SKIP line each.
inline int cmd_validate(const Options &o, std::ostream &out, std::ostream &err)
{
    ScenarioConfig c;
    try
    {
        c = resolve(o);
    }
    catch (const SingularShaping &e)
    {
        out << "FAIL shaping_nonsingular: " << e.what() << '\n';
        return exit_invariant;
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }

    bool failed = false;
    auto report = [&](const std::string &name, bool pass, const std::string &detail) {
        out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        failed = failed || !pass;
    };
    auto sci = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.3e", v);
        return std::string(b);
    };
    report("shaping_nonsingular", true, "every F[i,0] has rcond > 1e-10");

    LiftedChannel lifted;
    try
    {
        lifted = lift(c.channel, c.noise, c.per);
    }
    catch (const ModelError &e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }

    // Lifting round trip on a seeded random input of four periods.
    {
        const std::size_t len = 4 * static_cast<std::size_t>(lifted.per);
        const Matrix u = sample_innovation(InnovationPdf(GaussianParams{Matrix::Identity(c.channel.n_in(), c.channel.n_in())}),
                                           len, c.seed);
        std::vector<Vector> x(len);
        for (std::size_t i = 0; i < len; ++i)
            x[i] = u.col(static_cast<Eigen::Index>(i));
        const auto direct = apply_lptv(c.channel.taps().padded(lifted.memory), x);
        const auto via = unstack_blocks(apply_lti(lifted.h, stack_blocks(x, lifted.per)), lifted.per);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < len; ++i)
        {
            num += (direct[i] - via[i]).squaredNorm();
            den += direct[i].squaredNorm();
        }
        const double rel = std::sqrt(num / std::max(den, 1e-300));
        report("lifting_roundtrip", rel < 1e-12, "relative error " + sci(rel));
    }

    SpectralGrid grid;
    try
    {
        grid = build_grid(lifted, c.n_omega, c.threads);
        report("noise_psd_positive_definite", true, std::to_string(c.n_omega) + " nodes");
    }
    catch (const NumericalError &e)
    {
        report("noise_psd_positive_definite", false, e.what());
        return exit_invariant;
    }

    {
        const Matrix sigma = lifted.lifted_innovation_cov();
        double worst = 0.0;
        for (std::size_t j = 0; j < grid.omega.size(); ++j)
        {
            const CMatrix fw = transfer(lifted.f, grid.omega[j]);
            const CMatrix direct = fw * sigma.cast<cplx>() * fw.adjoint();
            worst = std::max(worst, (grid.c[j] - direct).norm() / grid.c[j].norm());
        }
        report("psd_identity", worst < 1e-10, "max relative deviation " + sci(worst));
    }

    NoiseEntropyRate ent;
    try
    {
        ent = noise_entropy_rate(c.noise, lifted, c.n_omega, c.threads);
        report("entropy_interval_ordered", ent.per_lifted.lower <= ent.per_lifted.upper + 1e-12,
               interval_text(ent.per_sample) + " per sample");
    }
    catch (const DivergentIntegral &e)
    {
        report("entropy_rate_finite", false, e.what());
        return exit_invariant;
    }

    // Quadrature convergence of the smooth spectral integrals.
    try
    {
        const SpectralGrid fine = build_grid(lifted, 2 * c.n_omega, c.threads);
        const double hg0 = gaussian_entropy_rate(grid), hg1 = gaussian_entropy_rate(fine);
        const double sz0 = ent.szego_gain, sz1 = szego_logdet(lifted.f, 2 * c.n_omega, c.threads);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); };
        const double worst = std::max(rel(hg0, hg1), rel(sz0, sz1));
        report("quadrature_convergence", worst < 1e-6, "relative change on doubling n_omega " + sci(worst));
    }
    catch (const NumericalError &e)
    {
        report("quadrature_convergence", false, e.what());
    }

    {
        const auto rows = snr_sweep(c.channel, c.noise, c.snr_db, detail::sweep_options(c));
        double worst_order = -std::numeric_limits<double>::infinity(), worst_residual = 0.0;
        bool all_ok = true;
        for (const auto &r : rows)
        {
            all_ok = all_ok && r.ok;
            if (!r.ok)
                continue;
            worst_order = std::max(worst_order, r.lower1 - r.upper);
            if (r.lower2)
                worst_order = std::max(worst_order, *r.lower2 - r.upper);
            worst_residual = std::max(worst_residual, r.power_residual);
        }
        report("sweep_points_ok", all_ok, std::to_string(rows.size()) + " points");
        report("bound_ordering", worst_order <= 1e-9, "max(lower - upper) " + sci(worst_order));
        report("waterfill_power_residual", worst_residual < 1e-6, "max relative residual " + sci(worst_residual));
    }

    if (o.mc)
    {
        const auto &inn = c.noise.innovation();
        if (inn.dimension() > 8)
            out << "SKIP entropy_mc: innovation dimension above 8\n";
        else
        {
            const auto samples = sample_innovation(inn, 200000, c.seed, c.threads);
            const auto est = mc_entropy_estimate(samples, 4, c.seed, c.threads);
            const auto iv = innovation_entropy(inn);
            const double slack = 3.0 * est.std_error;
            const bool pass = est.bits >= iv.lower - slack && est.bits <= iv.upper + slack;
            std::ostringstream d;
            d << std::setprecision(6) << "estimate " << est.bits << " +- " << est.std_error << " within "
              << interval_text(iv);
            report("entropy_mc", pass, d.str());
        }
    }
    return failed ? exit_invariant : exit_ok;
}

inline int cmd_presets_dump(const std::string &name, std::ostream &out, std::ostream &err)
{
    json j;
    if (name.empty())
    {
        json scen = json::object(), noise = json::object();
        for (const auto &n : scenario_names())
            scen[n] = *scenario_document(n);
        for (auto id : all_presets)
            noise[preset_name(id)] = noise_preset_document(id);
        j = {{"schema", 1}, {"scenarios", scen}, {"noise", noise}};
    }
    else if (const auto d = scenario_document(name))
        j = *d;
    else if (const auto id = parse_preset(name))
        j = noise_preset_document(*id);
    else
    {
        err << "config error: unknown preset '" << name << "'\n";
        return exit_config;
    }
    out << j.dump(2) << '\n';
    return exit_ok;
}

} // namespace plccap::cli

#endif

// SPDX-License-Identifier: Apache-2.0
//
// massivese - spectral efficiency optimization for multi-cell massive MIMO
// Copyright (C) 2026 The massivese authors
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

#include "cli_config.hpp"
#include "cli_output.hpp"

#include "massivese/errors.hpp"
#include "massivese/exec.hpp"
#include "massivese/mc_oracle.hpp"
#include "massivese/moments.hpp"
#include "massivese/optimizer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>

#ifndef MASSIVESE_VERSION
#define MASSIVESE_VERSION "unknown"
#endif

using namespace massivese;
using namespace massivese::cli;

namespace
{
struct Context
{
    CLI::App *app = nullptr;
    RunConfig run;
    std::string output;
    std::string plot;
    std::string command;

    Provenance provenance() const
    {
        // the resolved option set, including defaults, identifies the run
        return {MASSIVESE_VERSION, command, fnv1a(app->config_to_str(true, false)), run.seed};
    }

    HexNetwork network() const { return HexNetwork(run.tiers, 1.0, run.kappa); }

    MomentTable moments(InterferenceCase c, const HexNetwork &net) const
    {
        bool hit = false;
        MomentTable t = load_or_compute_moments(run.cache_dir, net, c, run.n_mu_samples, run.seed, Exec::parallel, &hit);
        std::cerr << "moments " << to_string(c) << ": " << (hit ? "cache hit" : "computed") << " in "
                  << run.cache_dir << '\n';
        return t;
    }

    ReuseCatalog catalog(InterferenceCase c) const
    {
        const HexNetwork net = network();
        return ReuseCatalog(net, moments(c, net), run.beta_set);
    }
};

std::string name(Scheme s) { return std::string(to_string(s)); }
std::string name(InterferenceCase c) { return std::string(to_string(c)); }

// K (1 - beta K / S) log2(1 + SINR_inf); infinite when the asymptote is unbounded.
double asymptotic_cell_se(const OptimumPoint &p, const SeConfig &base, const ReuseCatalog &cat)
{
    const AsymptoticSinr a = cat.model(p.beta_star).asymptotic(base.epsilon);
    if (a.is_unbounded())
        return std::numeric_limits<double>::infinity();
    const double k = p.K_star;
    return k * (1.0 - p.beta_star * k / base.S) * std::log2(1.0 + a.value());
}

const std::vector<std::string> sweep_columns{"M",         "scheme",    "case",     "K_star",   "beta_star",
                                            "se_cell",   "se_per_ue", "m_over_k", "se_asymptotic"};

void write_sweep_rows(CsvWriter &csv, const std::vector<OptimumPoint> &pts, InterferenceCase c, const SeConfig &base,
                      const ReuseCatalog &cat, bool with_epsilon)
{
    for (const OptimumPoint &p : pts)
    {
        if (!p.feasible)
        {
            csv.comment("warning: no feasible (K, beta) for M=" + num(p.M) + " scheme=" + name(p.scheme));
            std::cerr << "warning: M=" << p.M << " " << name(p.scheme) << " infeasible, skipped\n";
            continue;
        }
        std::vector<std::string> row{num(p.M),           name(p.scheme),     name(c),
                                     num(p.K_star),      num(p.beta_star),   num(p.se_star),
                                     num(p.per_ue_se),   num(p.antennas_per_ue),
                                     num(asymptotic_cell_se(p, base, cat))};
        if (with_epsilon)
            row.push_back(num(base.epsilon));
        csv.row(row);
    }
}

std::vector<OptimumPoint> run_sweep(const Context &ctx, const ReuseCatalog &cat, const std::vector<std::int64_t> &ms,
                                    const SeConfig &base)
{
    SweepSpec spec;
    spec.m_values = ms;
    spec.schemes = parsed_schemes(ctx.run);
    spec.base = base;
    return sweep(spec, cat);
}

std::vector<Series> se_series(const std::vector<OptimumPoint> &pts, const std::string &suffix = "")
{
    std::map<Scheme, Series> by;
    for (const OptimumPoint &p : pts)
        if (p.feasible)
        {
            Series &s = by[p.scheme];
            s.name = name(p.scheme) + suffix;
            s.points.emplace_back(static_cast<double>(p.M), p.se_star);
        }
    std::vector<Series> out;
    for (auto &[k, v] : by)
        out.push_back(std::move(v));
    return out;
}

void maybe_plot(const Context &ctx, const PlotSpec &spec, const std::vector<Series> &series)
{
    if (!ctx.plot.empty())
        write_svg(ctx.plot, spec, series);
}

int cmd_moments(const Context &ctx, const std::vector<std::string> &cases)
{
    const HexNetwork net = ctx.network();
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.header({"case", "tiers", "kappa", "n_samples", "mu1_sum", "mu2_sum", "file"});
    for (const std::string &cs : cases)
    {
        const InterferenceCase c = parse_interference_case(cs);
        const MomentTable t = ctx.moments(c, net);
        csv.row({name(c), num(t.tiers), num(t.kappa), num(static_cast<std::int64_t>(t.n_samples)),
                 num(t.tier_sum(1, t.tiers)), num(t.tier_sum(2, t.tiers)),
                 moment_cache_path(ctx.run.cache_dir, net, c, ctx.run.n_mu_samples, ctx.run.seed).string()});
    }
    return exit_ok;
}

int cmd_sweep(const Context &ctx)
{
    const InterferenceCase c = parsed_case(ctx.run);
    const ReuseCatalog cat = ctx.catalog(c);
    const SeConfig base = base_se_config(ctx.run);
    const auto pts = run_sweep(ctx, cat, m_values(ctx.run), base);
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    std::vector<std::string> cols = sweep_columns;
    const bool eps = ctx.run.epsilon != 0.0;
    if (eps)
        cols.push_back("epsilon");
    csv.header(cols);
    write_sweep_rows(csv, pts, c, base, cat, eps);
    maybe_plot(ctx, {"Optimized SE per cell (" + name(c) + ")", "M", "SE [bit/s/Hz/cell]", true}, se_series(pts));
    return exit_ok;
}

int cmd_optimize(const Context &ctx, std::int64_t M)
{
    const InterferenceCase c = parsed_case(ctx.run);
    const ReuseCatalog cat = ctx.catalog(c);
    const SeConfig base = base_se_config(ctx.run);
    std::vector<OptimumPoint> pts;
    for (Scheme s : parsed_schemes(ctx.run))
        pts.push_back(optimize_point(M, s, base, cat));
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    std::vector<std::string> cols = sweep_columns;
    const bool eps = ctx.run.epsilon != 0.0;
    if (eps)
        cols.push_back("epsilon");
    csv.header(cols);
    write_sweep_rows(csv, pts, c, base, cat, eps);
    return exit_ok;
}

// Per-K envelope over the candidate reuse factors.
struct KPoint
{
    int K;
    int beta;
    double se;
};

std::vector<KPoint> se_vs_k_envelope(std::int64_t M, Scheme s, const SeConfig &base, const ReuseCatalog &cat, int k_max)
{
    std::map<int, KPoint> best;
    for (int beta : cat.betas())
    {
        std::vector<SeVsKPoint> curve;
        try
        {
            curve = se_vs_k_curve(M, s, base, beta, 1, k_max, cat);
        }
        catch (const InfeasibleConfig &)
        {
            continue;
        }
        for (const SeVsKPoint &p : curve)
        {
            auto it = best.find(p.K);
            if (it == best.end() || p.se_total > it->second.se)
                best[p.K] = {p.K, beta, p.se_total};
        }
    }
    std::vector<KPoint> out;
    for (auto &[k, v] : best)
        out.push_back(v);
    return out;
}

void write_se_vs_k(const Context &ctx, CsvWriter &csv, const ReuseCatalog &cat, const std::vector<std::int64_t> &ms,
                   int k_max, std::vector<Series> *series)
{
    const SeConfig base = base_se_config(ctx.run);
    csv.header({"M", "scheme", "K", "beta", "se_cell", "is_peak"});
    for (std::int64_t M : ms)
        for (Scheme s : parsed_schemes(ctx.run))
        {
            const auto env = se_vs_k_envelope(M, s, base, cat, k_max);
            if (env.empty())
            {
                csv.comment("warning: no feasible K for M=" + num(M) + " scheme=" + name(s));
                continue;
            }
            std::size_t peak = 0;
            for (std::size_t i = 1; i < env.size(); ++i)
                if (env[i].se > env[peak].se)
                    peak = i;
            Series ser{name(s) + " M=" + num(M), {}, {}};
            for (std::size_t i = 0; i < env.size(); ++i)
            {
                csv.row({num(M), name(s), num(env[i].K), num(env[i].beta), num(env[i].se), i == peak ? "1" : "0"});
                ser.points.emplace_back(env[i].K, env[i].se);
            }
            ser.markers.emplace_back(env[peak].K, env[peak].se);
            if (series)
                series->push_back(std::move(ser));
        }
}

int cmd_se_vs_k(const Context &ctx, int k_max)
{
    const ReuseCatalog cat = ctx.catalog(parsed_case(ctx.run));
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    std::vector<Series> series;
    const std::vector<std::int64_t> ms = ctx.run.m_list.empty() ? std::vector<std::int64_t>{100, 500} : ctx.run.m_list;
    write_se_vs_k(ctx, csv, cat, ms, k_max > 0 ? k_max : ctx.run.S, &series);
    maybe_plot(ctx, {"Per-cell SE vs scheduled UEs", "K", "SE [bit/s/Hz/cell]", false}, series);
    return exit_ok;
}

struct ValidateOptions
{
    int K = 10;
    int beta = 3;
    std::uint64_t outer = 200;
    std::uint64_t inner = 10000;
    std::string domain = "gram";
    std::uint64_t duality_draws = 500;
    double mr_zf_rel = 0.03;
    double pzf_rel = 0.10;
    double pzf_sigmas = 3.0;
    double duality_rel = 1e-9;
};

int cmd_validate(const Context &ctx, const ValidateOptions &v)
{
    const HexNetwork net = ctx.network();
    const PilotPlan plan = make_pilot_plan(v.beta, net, v.K);
    const MomentTable table = ctx.moments(InterferenceCase::average, net);
    const std::vector<Scheme> schemes = parsed_schemes(ctx.run);
    const std::vector<std::int64_t> ms = ctx.run.m_list.empty() ? std::vector<std::int64_t>{100, 500} : ctx.run.m_list;
    const McDomain domain = v.domain == "antenna" ? McDomain::antenna : McDomain::gram;

    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.header({"check", "M", "scheme", "closed_form", "monte_carlo", "stderr", "rel_gap", "pass"});
    bool ok = true;
    for (std::int64_t M : ms)
    {
        SeConfig cfg = base_se_config(ctx.run);
        cfg.M = M;
        cfg.K = v.K;
        cfg.beta = v.beta;
        for (Scheme s : schemes)
            cfg.validate(s);
        const auto mc = mc_spectral_efficiency(net, plan, cfg, schemes, v.outer, v.inner, ctx.run.seed, domain);
        for (const McSeEstimate &e : mc)
        {
            const double cf = se_joint(e.scheme, cfg, table, plan).se_total;
            const double rel = std::abs(cf - e.mean_se) / e.mean_se;
            const bool pass = e.scheme == Scheme::pzf ? cf <= e.mean_se + v.pzf_sigmas * e.stderr_se && rel <= v.pzf_rel
                                                      : rel <= v.mr_zf_rel;
            ok = ok && pass;
            csv.row({"se", num(M), name(e.scheme), num(cf), num(e.mean_se), num(e.stderr_se), num(rel),
                     pass ? "1" : "0"});
        }

        // UL/DL duality on one position draw of the same network
        Engine rng = make_stream(ctx.run.seed, streams::positions, 0xd0a1);
        const McScenario sc = sample_scenario(net, plan, cfg, rng);
        std::vector<std::size_t> all(sc.n_cells());
        std::iota(all.begin(), all.end(), 0);
        const double pt = std::accumulate(sc.power.begin(), sc.power.end(), 0.0);
        for (Scheme s : schemes)
        {
            const ChannelExpectations ex = estimate_expectations(s, sc, all, v.duality_draws, ctx.run.seed);
            const auto ul = ul_sinr_all(sc, ex);
            double resid = 0.0;
            bool pass = true;
            try
            {
                const DualitySolution sol = duality_power_control(sc, ex, ul);
                const auto dl = dl_sinr(sc, ex, sol.q);
                resid = std::abs(sol.q.sum() - pt) / pt;
                for (std::size_t u = 0; u < ul.size(); ++u)
                    resid = std::max(resid, std::abs(dl[u] - ul[u]) / ul[u]);
                pass = resid <= v.duality_rel;
            }
            catch (const LinearAlgebraError &err)
            {
                std::cerr << "duality " << name(s) << " M=" << M << ": " << err.what() << '\n';
                pass = false;
                resid = std::numeric_limits<double>::infinity();
            }
            ok = ok && pass;
            csv.row({"duality", num(M), name(s), "", "", "", num(resid), pass ? "1" : "0"});
        }
    }
    std::cerr << (ok ? "validation passed\n" : "validation FAILED\n");
    return ok ? exit_ok : exit_validation;
}

// Figure bundles for `reproduce`.
int reproduce_sweep(const Context &ctx, InterferenceCase c, const std::string &title)
{
    const ReuseCatalog cat = ctx.catalog(c);
    const SeConfig base = base_se_config(ctx.run);
    const auto pts = run_sweep(ctx, cat, m_values(ctx.run), base);
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.header(sweep_columns);
    write_sweep_rows(csv, pts, c, base, cat, false);
    maybe_plot(ctx, {title, "M", "SE [bit/s/Hz/cell]", true}, se_series(pts));
    return exit_ok;
}

std::vector<std::int64_t> m_upto_1000(const Context &ctx)
{
    if (!ctx.run.m_list.empty())
        return ctx.run.m_list;
    return log_m_grid(10, 1000, ctx.run.m_per_decade);
}

int reproduce_closed_vs_mc(const Context &ctx, std::uint64_t outer, std::uint64_t inner)
{
    const int K = 10, beta = 3;
    const HexNetwork net(2, 1.0, ctx.run.kappa);
    const PilotPlan plan = make_pilot_plan(beta, net, K);
    const MomentTable table = ctx.moments(InterferenceCase::average, net);
    const std::vector<Scheme> schemes = parsed_schemes(ctx.run);
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.comment("K=10 beta=3 tiers=2 average case");
    csv.header({"M", "scheme", "source", "se_cell", "stderr"});
    std::map<Scheme, Series> lines;
    for (std::int64_t M : log_m_grid(40, 1000, 20))
    {
        SeConfig cfg = base_se_config(ctx.run);
        cfg.M = M;
        cfg.K = K;
        cfg.beta = beta;
        for (Scheme s : schemes)
            if (cfg.feasible(s))
            {
                const double se = se_joint(s, cfg, table, plan).se_total;
                csv.row({num(M), name(s), "closed_form", num(se), "0"});
                lines[s].name = name(s);
                lines[s].points.emplace_back(M, se);
            }
    }
    const std::vector<std::int64_t> marks =
        ctx.run.m_list.empty() ? std::vector<std::int64_t>{50, 100, 200, 500, 1000} : ctx.run.m_list;
    for (std::int64_t M : marks)
    {
        SeConfig cfg = base_se_config(ctx.run);
        cfg.M = M;
        cfg.K = K;
        cfg.beta = beta;
        std::vector<Scheme> ok;
        for (Scheme s : schemes)
            if (cfg.feasible(s))
                ok.push_back(s);
        for (const McSeEstimate &e :
             mc_spectral_efficiency(net, plan, cfg, ok, outer, inner, ctx.run.seed, McDomain::gram))
        {
            csv.row({num(M), name(e.scheme), "monte_carlo", num(e.mean_se), num(e.stderr_se)});
            lines[e.scheme].markers.emplace_back(M, e.mean_se);
        }
    }
    std::vector<Series> series;
    for (auto &[k, s] : lines)
        series.push_back(std::move(s));
    maybe_plot(ctx, {"Per-cell SE for K = 10 (lines closed form, markers MC)", "M", "SE [bit/s/Hz/cell]", true},
               series);
    return exit_ok;
}

int reproduce_per_ue(const Context &ctx, bool antennas)
{
    const ReuseCatalog cat = ctx.catalog(InterferenceCase::average);
    const auto pts = run_sweep(ctx, cat, m_upto_1000(ctx), base_se_config(ctx.run));
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.header({"M", "scheme", "K_star", "beta_star", antennas ? "m_over_k" : "se_per_ue"});
    std::map<Scheme, Series> by;
    for (const OptimumPoint &p : pts)
    {
        if (!p.feasible)
            continue;
        const double y = antennas ? p.antennas_per_ue : p.per_ue_se;
        csv.row({num(p.M), name(p.scheme), num(p.K_star), num(p.beta_star), num(y)});
        by[p.scheme].name = name(p.scheme);
        by[p.scheme].points.emplace_back(p.M, y);
    }
    std::vector<Series> series;
    for (auto &[k, s] : by)
        series.push_back(std::move(s));
    if (antennas)
        maybe_plot(ctx, {"BS antennas per UE", "M", "M / K*", true}, series);
    else
        maybe_plot(ctx, {"SE per UE", "M", "SE [bit/s/Hz/UE]", true}, series);
    return exit_ok;
}

int reproduce_snr(const Context &ctx)
{
    const ReuseCatalog cat = ctx.catalog(InterferenceCase::average);
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.header({"snr_db", "M", "scheme", "K_star", "beta_star", "se_cell"});
    std::map<std::pair<std::int64_t, Scheme>, Series> by;
    const std::vector<std::int64_t> ms = ctx.run.m_list.empty() ? std::vector<std::int64_t>{100, 500} : ctx.run.m_list;
    for (std::int64_t M : ms)
        for (double db = -10.0; db <= 20.0 + 1e-9; db += 2.5)
        {
            RunConfig r = ctx.run;
            r.snr_db = db;
            const SeConfig base = base_se_config(r);
            for (Scheme s : parsed_schemes(ctx.run))
            {
                const OptimumPoint p = optimize_point(M, s, base, cat);
                csv.row({num(db), num(M), name(s), num(p.K_star), num(p.beta_star), num(p.se_star)});
                Series &ser = by[{M, s}];
                ser.name = name(s) + " M=" + num(M);
                ser.points.emplace_back(db, p.se_star);
            }
        }
    std::vector<Series> series;
    for (auto &[k, s] : by)
        series.push_back(std::move(s));
    maybe_plot(ctx, {"Impact of the SNR", "SNR [dB]", "SE [bit/s/Hz/cell]", false}, series);
    return exit_ok;
}

int reproduce_coherence(const Context &ctx)
{
    const ReuseCatalog cat = ctx.catalog(InterferenceCase::average);
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.header({"S", "M", "scheme", "K_star", "beta_star", "se_cell"});
    std::map<std::pair<std::int64_t, Scheme>, Series> by;
    const std::vector<std::int64_t> ms = ctx.run.m_list.empty() ? std::vector<std::int64_t>{100, 500} : ctx.run.m_list;
    for (std::int64_t M : ms)
        for (int S : {100, 200, 300, 400, 500, 700, 1000, 1500, 2000, 3000, 5000, 7000, 10000})
        {
            SeConfig base = base_se_config(ctx.run);
            base.S = S;
            for (Scheme s : parsed_schemes(ctx.run))
            {
                const OptimumPoint p = optimize_point(M, s, base, cat);
                csv.row({num(S), num(M), name(s), num(p.K_star), num(p.beta_star), num(p.se_star)});
                Series &ser = by[{M, s}];
                ser.name = name(s) + " M=" + num(M);
                ser.points.emplace_back(S, p.se_star);
            }
        }
    std::vector<Series> series;
    for (auto &[k, s] : by)
        series.push_back(std::move(s));
    maybe_plot(ctx, {"Per-cell SE vs coherence block length", "S", "SE [bit/s/Hz/cell]", true}, series);
    return exit_ok;
}

int reproduce_reuse(const Context &ctx)
{
    const HexNetwork net = ctx.network();
    const MomentTable t = ctx.moments(InterferenceCase::average, net);
    const SeConfig base = base_se_config(ctx.run);
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    csv.header({"M", "scheme", "beta", "K_star", "se_cell"});
    std::vector<Series> series;
    for (int beta : {1, 3})
    {
        const ReuseCatalog cat(net, t, {beta});
        const auto pts = run_sweep(ctx, cat, m_upto_1000(ctx), base);
        for (const OptimumPoint &p : pts)
            if (p.feasible)
                csv.row({num(p.M), name(p.scheme), num(beta), num(p.K_star), num(p.se_star)});
        for (Series &s : se_series(pts, " beta=" + std::to_string(beta)))
            series.push_back(std::move(s));
    }
    maybe_plot(ctx, {"Fixed pilot reuse factor", "M", "SE [bit/s/Hz/cell]", true}, series);
    return exit_ok;
}

int reproduce_impairments(const Context &ctx)
{
    const ReuseCatalog cat = ctx.catalog(InterferenceCase::average);
    CsvWriter csv(ctx.output);
    csv.provenance(ctx.provenance());
    std::vector<std::string> cols = sweep_columns;
    cols.push_back("epsilon");
    csv.header(cols);
    std::vector<Series> series;
    for (double eps : {0.0, 0.1})
    {
        SeConfig base = base_se_config(ctx.run);
        base.epsilon = eps;
        const auto pts = run_sweep(ctx, cat, m_values(ctx.run), base);
        write_sweep_rows(csv, pts, InterferenceCase::average, base, cat, true);
        for (Series &s : se_series(pts, " eps=" + num(eps)))
            series.push_back(std::move(s));
    }
    maybe_plot(ctx, {"Optimized SE with and without hardware impairments", "M", "SE [bit/s/Hz/cell]", true},
               series);
    return exit_ok;
}

int cmd_reproduce(const Context &ctx, int figure, std::uint64_t outer, std::uint64_t inner)
{
    switch (figure)
    {
    case 3:
        return reproduce_sweep(ctx, InterferenceCase::average, "Optimized SE, average interference");
    case 4:
        return reproduce_closed_vs_mc(ctx, outer, inner);
    case 5:
        return reproduce_sweep(ctx, InterferenceCase::best, "Optimized SE, best-case interference");
    case 6:
        return reproduce_per_ue(ctx, false);
    case 7:
        return reproduce_per_ue(ctx, true);
    case 8:
        return reproduce_sweep(ctx, InterferenceCase::worst, "Optimized SE, worst-case interference");
    case 9: {
        const ReuseCatalog cat = ctx.catalog(InterferenceCase::average);
        CsvWriter csv(ctx.output);
        csv.provenance(ctx.provenance());
        std::vector<Series> series;
        const std::vector<std::int64_t> ms =
            ctx.run.m_list.empty() ? std::vector<std::int64_t>{100, 500} : ctx.run.m_list;
        write_se_vs_k(ctx, csv, cat, ms, ctx.run.S, &series);
        maybe_plot(ctx, {"Per-cell SE vs scheduled UEs", "K", "SE [bit/s/Hz/cell]", false}, series);
        return exit_ok;
    }
    case 10:
        return reproduce_snr(ctx);
    case 11:
        return reproduce_coherence(ctx);
    case 12:
        return reproduce_reuse(ctx);
    case 13:
        return reproduce_impairments(ctx);
    default:
        throw CLI::ValidationError("--figure", "unknown figure id " + std::to_string(figure) + " (use 3..13)");
    }
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Spectral efficiency optimization for multi-cell massive MIMO"};
    app.set_version_flag("--version", MASSIVESE_VERSION);
    app.set_config("--config", "", "flat key = value configuration file");
    app.require_subcommand(1);

    Context ctx;
    ctx.app = &app;
    add_run_options(app, ctx.run);
    app.add_option("-o,--output", ctx.output, "CSV output file (default stdout)");
    app.add_option("--plot", ctx.plot, "also write an SVG plot");

    std::vector<std::string> cases{"average", "best", "worst"};
    auto *moments = app.add_subcommand("moments", "build or refresh the moment table caches");
    moments->add_option("--cases", cases, "cases to build")->delimiter(',')->capture_default_str();

    app.add_subcommand("sweep", "optimized SE over an M grid");

    std::int64_t opt_m = 100;
    auto *optimize = app.add_subcommand("optimize", "optimum (K*, beta*) at a single M");
    optimize->add_option("-M,--antennas", opt_m, "BS antennas")->capture_default_str();

    int k_max = 0;
    auto *sevsk = app.add_subcommand("se-vs-k", "SE as a function of K at fixed M");
    sevsk->add_option("--k-max", k_max, "largest K (default S)");

    ValidateOptions vopt;
    auto *validate = app.add_subcommand("validate", "closed forms against the Monte-Carlo oracle");
    validate->add_option("-K,--users", vopt.K)->capture_default_str();
    validate->add_option("--beta", vopt.beta)->capture_default_str();
    validate->add_option("--mc-outer", vopt.outer, "position draws")->capture_default_str();
    validate->add_option("--mc-inner", vopt.inner, "channel draws per position")->capture_default_str();
    validate->add_option("--domain", vopt.domain, "gram or antenna")
        ->check(CLI::IsMember({"gram", "antenna"}))
        ->capture_default_str();
    validate->add_option("--duality-draws", vopt.duality_draws)->capture_default_str();

    int figure = 0;
    std::uint64_t rep_outer = 50, rep_inner = 2000;
    auto *reproduce = app.add_subcommand("reproduce", "figure data series");
    reproduce->add_option("--figure", figure, "figure id 3..13")->required();
    reproduce->add_option("--mc-outer", rep_outer, "position draws for figure 4")->capture_default_str();
    reproduce->add_option("--mc-inner", rep_inner, "channel draws for figure 4")->capture_default_str();

    for (CLI::App *sub : app.get_subcommands({}))
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
        CLI::App *sub = app.get_subcommands().front();
        ctx.command = sub->get_name();
        if (sub == validate && app.get_option("--tiers")->count() == 0)
            ctx.run.tiers = 2;
        if (ctx.run.cache_dir.empty())
            ctx.run.cache_dir = "massivese_cache";
        check(ctx.run);
        if (ctx.run.threads > 0)
            set_threads(ctx.run.threads);
        std::filesystem::create_directories(ctx.run.cache_dir);

        if (sub == moments)
            return cmd_moments(ctx, cases);
        if (sub == optimize)
            return cmd_optimize(ctx, opt_m);
        if (sub == sevsk)
            return cmd_se_vs_k(ctx, k_max);
        if (sub == validate)
            return cmd_validate(ctx, vopt);
        if (sub == reproduce)
            return cmd_reproduce(ctx, figure, rep_outer, rep_inner);
        return cmd_sweep(ctx);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }
    catch (const InfeasibleConfig &e)
    {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    }
    catch (const InvalidReuseFactor &e)
    {
        std::cerr << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "usage: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}

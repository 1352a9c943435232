// SPDX-License-Identifier: Apache-2.0
//
// amafris: near-field fed RIS multibeam downlink simulator
// Copyright (C) 2026 The amafris Authors
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

#include "amafris/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "amafris/budget.hpp"
#include "amafris/codebook.hpp"
#include "amafris/errors.hpp"
#include "amafris/montecarlo.hpp"
#include "amafris/multiuser.hpp"
#include "amafris/pem.hpp"
#include "amafris/power.hpp"

#ifndef AMAFRIS_VERSION
#define AMAFRIS_VERSION "0.0.0"
#endif

namespace amafris
{

namespace
{

using Json = nlohmann::ordered_json;

constexpr double kDominanceDb = 20.0;
constexpr double kPointingDemoDeg = 2.5;
constexpr int kDemoQuantBits = 4;

// Square RIS sizes with their feed distances: (N, F).
const std::vector<std::pair<int, double>> kScalingSizes = {{16, 8.0}, {32, 16.0}, {64, 30.0}, {128, 80.0}};

std::string csv_num(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// JSON cannot carry infinities; callers only emit finite numbers or null.
Json json_num(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

class Writer
{
  public:
    Writer(std::filesystem::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    void write(const std::string &name, const std::string &content)
    {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << content;
        out.close();
        if (!out)
            throw std::runtime_error("write failed for " + path.string());
        artifacts_.push_back({name, fnv1a_hex(content)});
    }

    void write_json(const std::string &name, const Json &j) { write(name, j.dump(2) + "\n"); }

    [[nodiscard]] const std::vector<Artifact> &artifacts() const { return artifacts_; }

  private:
    std::filesystem::path dir_;
    std::vector<Artifact> artifacts_;
};

std::string tag(const std::string &stem, std::uint64_t seed) { return stem + "-" + std::to_string(seed); }

// Shared, lazily built state of one run.
class Context
{
  public:
    explicit Context(const SystemConfig &cfg) : cfg_(cfg) {}

    const SystemConfig &cfg() const { return cfg_; }

    const NearFieldChannel &channel()
    {
        if (!channel_)
            channel_ = build_channel(cfg_.channel);
        return *channel_;
    }

    const PemPrecoder &pem()
    {
        if (!pem_)
            pem_ = pem_design(channel());
        return *pem_;
    }

    const std::vector<Vec3> &ris_positions()
    {
        if (ris_.empty())
            ris_ = element_positions(cfg_.channel.ris());
        return ris_;
    }

    const LinkBudget &budget()
    {
        if (!budget_)
            budget_ = link_budget(cfg_.stack(), cfg_.budget, edge_gain_dbi(pem(), cfg_.channel, cfg_.geometry));
        return *budget_;
    }

    const StackedChannel &stack(int modules)
    {
        auto it = stacks_.find(modules);
        if (it == stacks_.end())
            it = stacks_.emplace(modules, build_stack(cfg_.stack(modules))).first;
        return it->second;
    }

  private:
    SystemConfig cfg_;
    std::optional<NearFieldChannel> channel_;
    std::optional<PemPrecoder> pem_;
    std::vector<Vec3> ris_;
    std::optional<LinkBudget> budget_;
    std::map<int, StackedChannel> stacks_;
};

// ---- delay ----------------------------------------------------------------

Json delay_json(const SystemConfig &cfg)
{
    const Direction edge = cell_edge_direction(cfg.geometry);
    const double psi = psi_from_cell(edge.phi, edge.theta);
    const DelayReport r = delay_report(cfg.channel, psi);
    Json j;
    j["psi_deg"] = rad_to_deg(r.psi_rad);
    j["tau_max_ps"] = r.tau_max_s * 1e12;
    j["tau_min_ps"] = r.tau_min_s * 1e12;
    j["delta_tau_ps"] = r.delta_tau_max_s * 1e12;
    j["delta_tau_brute_force_ps"] = r.delta_tau_brute_force_s * 1e12;
    j["w_narrowband_ghz"] = r.w_narrowband_hz / 1e9;
    j["bandwidth_ghz"] = cfg.channel.bandwidth_hz / 1e9;
    j["w_delta_tau"] = cfg.channel.bandwidth_hz * r.delta_tau_max_s;
    j["narrowband"] = cfg.channel.bandwidth_hz * r.delta_tau_max_s <= kNarrowbandProduct;
    j["isi_chips"] = r.isi_length;
    j["n_subcarriers"] = cfg.channel.n_subcarriers;
    j["cp_overhead"] = r.cp_overhead;
    return j;
}

// ---- pem ------------------------------------------------------------------

Json pem_json(Context &ctx)
{
    const PemPrecoder &pem = ctx.pem();
    const TaperStats t = taper_stats(pem);
    Json j;
    j["sigma1"] = pem.sigma1;
    j["sigma_link"] = pem.sigma_link();
    j["gamma_dbi"] = to_db(ris_gain(pem.sigma_link() * pem.u1));
    j["gamma_raw_dbi"] = to_db(ris_gain_raw(pem.sigma1 * pem.u1));
    j["amaf_taper_db"] = t.amaf_taper_db;
    j["ris_taper_db"] = t.ris_taper_db;
    j["amaf_max_sq"] = t.amaf_max_sq;
    j["amaf_min_sq"] = t.amaf_min_sq;
    j["ris_max_sq_db"] = to_db(t.ris_max_sq);
    j["ris_min_sq_db"] = to_db(t.ris_min_sq);
    j["edge_gain_dbi"] = edge_gain_dbi(pem, ctx.cfg().channel, ctx.cfg().geometry);
    return j;
}

std::string pem_csv(Context &ctx)
{
    const PemPrecoder &pem = ctx.pem();
    const auto &ch = ctx.cfg().channel;
    std::ostringstream os;
    os << "array,index,col,row,x,z,magnitude,power_db,phase_rad\n";
    const auto emit = [&](const char *name, const CVector &v, const std::vector<Vec3> &pos, int nx) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
        {
            const auto &p = pos[static_cast<std::size_t>(i)];
            os << name << ',' << i << ',' << i % nx << ',' << i / nx << ',' << csv_num(p.x()) << ','
               << csv_num(p.z()) << ',' << csv_num(std::abs(v[i])) << ',' << csv_num(to_db(std::norm(v[i])))
               << ',' << csv_num(std::arg(v[i])) << '\n';
        }
    };
    emit("amaf", pem.v1, element_positions(ch.amaf()), ch.amaf_nh);
    emit("ris", pem.u1, element_positions(ch.ris()), ch.ris_nx);
    return os.str();
}

// ---- footprint ------------------------------------------------------------

struct FootprintOutput
{
    std::string csv;
    Json summary;
};

FootprintOutput footprint(Context &ctx, Direction target, std::optional<int> subcarrier,
                          std::optional<int> quant_bits, double pointing_sigma_rad, std::uint64_t seed)
{
    const auto &cfg = ctx.cfg();
    const PemPrecoder &pem = ctx.pem();
    const auto &ch = ctx.channel();
    if (subcarrier && (*subcarrier < 0 || *subcarrier >= cfg.channel.n_subcarriers))
        throw ValidationError("subcarrier", "subcarrier index out of range");

    const SteeredProfile sp = steer(pem, ch, ctx.ris_positions(), target, {quant_bits, pointing_sigma_rad, seed});
    const CVector u =
        pem.link_scale() * (subcarrier ? sp.u_nu[static_cast<std::size_t>(*subcarrier)] : sp.u_center);
    const CVector w = sp.w.phasors();
    const auto pixels = rasterize_footprint(u, w, ctx.ris_positions(), cfg.geometry,
                                            cell_grid(cfg.geometry, cfg.experiment.footprint_grid_m));

    FootprintOutput out;
    std::ostringstream os;
    os << "x_m,y_m,gain_dbi\n";
    const FootprintPixel *peak = nullptr;
    for (const auto &px : pixels)
    {
        os << csv_num(px.x_m) << ',' << csv_num(px.y_m) << ',' << csv_num(px.gain_dbi) << '\n';
        if (in_cell({px.x_m, px.y_m}, cfg.geometry) && (peak == nullptr || px.gain_dbi > peak->gain_dbi))
            peak = &px;
    }
    out.csv = os.str();

    Json j;
    j["phi_deg"] = rad_to_deg(target.phi);
    j["theta_deg"] = rad_to_deg(target.theta);
    j["aimed_phi_deg"] = rad_to_deg(sp.aimed.phi);
    j["aimed_theta_deg"] = rad_to_deg(sp.aimed.theta);
    j["subcarrier"] = subcarrier ? Json(*subcarrier) : Json(nullptr);
    j["frequency_offset_ghz"] =
        subcarrier ? ch.subcarrier_freqs[static_cast<std::size_t>(*subcarrier)] / 1e9 : 0.0;
    j["quant_bits"] = quant_bits ? Json(*quant_bits) : Json(nullptr);
    j["pointing_sigma_deg"] = rad_to_deg(pointing_sigma_rad);
    j["target_gain_dbi"] = json_num(to_db(radiation_pattern(u, w, ctx.ris_positions(), target)));
    j["grid_m"] = cfg.experiment.footprint_grid_m;
    j["pixels"] = pixels.size();
    if (peak != nullptr)
    {
        j["peak_x_m"] = peak->x_m;
        j["peak_y_m"] = peak->y_m;
        j["peak_gain_dbi"] = peak->gain_dbi;
    }
    out.summary = j;
    return out;
}

// ---- rates ----------------------------------------------------------------

struct RatesOutput
{
    std::string csv;
    Json summary;
};

RatesOutput rates(Context &ctx, int users, Scenario scenario, std::optional<int> quant_bits,
                  double pointing_sigma_rad, bool ideal)
{
    const auto &cfg = ctx.cfg();
    MonteCarloOptions mc;
    mc.scenario = scenario;
    mc.users = users;
    mc.drops = cfg.experiment.drops;
    mc.min_sep_rad = cfg.experiment.min_sep_rad;
    mc.pointing_sigma_rad = pointing_sigma_rad;
    mc.quant_bits = quant_bits;
    mc.ideal_positions = ideal;
    mc.p_amaf_w = ctx.budget().p_amaf_w();
    mc.noise_w = ctx.budget().noise_w();
    mc.seed = cfg.experiment.seed;
    mc.threads = cfg.experiment.threads;
    const MonteCarloResult res = monte_carlo_cdf(ctx.stack(users), cfg.geometry, mc);

    RatesOutput out;
    std::ostringstream os;
    os << "drop,user,rate_bps_hz\n";
    for (const auto &r : res.rows)
        os << r.drop << ',' << r.user << ',' << csv_num(r.rate) << '\n';
    out.csv = os.str();

    Json j;
    j["scenario"] = scenario == Scenario::codebook ? "codebook" : "pointing";
    j["users"] = users;
    j["drops"] = mc.drops;
    j["seed"] = mc.seed;
    j["min_sep_deg"] = rad_to_deg(mc.min_sep_rad);
    j["pointing_sigma_deg"] = rad_to_deg(pointing_sigma_rad);
    j["quant_bits"] = quant_bits ? Json(*quant_bits) : Json(nullptr);
    j["ideal_positions"] = ideal;
    j["p_amaf_dbm"] = ctx.budget().p_amaf_dbm;
    Json deciles = Json::object();
    for (int d = 1; d <= 9; ++d)
        deciles["p" + std::to_string(10 * d)] = res.cdf.quantile(d / 10.0);
    j["deciles"] = deciles;
    if (users > 1)
    {
        const double worst = *std::min_element(res.margins_db.begin(), res.margins_db.end());
        const auto below = std::count_if(res.margins_db.begin(), res.margins_db.end(),
                                         [](double m) { return m < kDominanceDb; });
        j["min_diagonal_margin_db"] = json_num(worst);
        j["rows_below_20db"] = below;
        j["rows"] = res.margins_db.size();
    }
    Json cdf = Json::array();
    for (std::size_t i = 0; i < res.cdf.probabilities.size(); ++i)
        cdf.push_back({{"p", res.cdf.probabilities[i]}, {"rate_bps_hz", res.cdf.quantiles[i]}});
    j["cdf"] = cdf;
    out.summary = j;
    return out;
}

// ---- codebook -------------------------------------------------------------

std::string codebook_csv(const std::vector<Beam> &beams)
{
    std::ostringstream os;
    os << "beam,ring_m,azimuth_deg,anchor_x_m,anchor_y_m,phi_deg,theta_deg,range_lo_m,range_hi_m,"
          "az_halfwidth_deg,in_subset\n";
    for (std::size_t i = 0; i < beams.size(); ++i)
    {
        const Beam &b = beams[i];
        os << i << ',' << csv_num(b.ring_range_m) << ',' << csv_num(rad_to_deg(b.azimuth_rad)) << ','
           << csv_num(b.anchor.x) << ',' << csv_num(b.anchor.y) << ',' << csv_num(rad_to_deg(b.center.phi)) << ','
           << csv_num(rad_to_deg(b.center.theta)) << ',' << csv_num(b.range_lo_m) << ',' << csv_num(b.range_hi_m)
           << ',' << csv_num(rad_to_deg(b.az_halfwidth_rad)) << ',' << (b.in_subset ? 1 : 0) << '\n';
    }
    return os.str();
}

// Best gain over the coarse subset at each pixel.
std::string codebook_footprint_csv(Context &ctx, const std::vector<Beam> &beams)
{
    const auto &cfg = ctx.cfg();
    const PemPrecoder &pem = ctx.pem();
    const CVector u = pem.sigma_link() * pem.u1;
    const FootprintGrid grid = cell_grid(cfg.geometry, cfg.experiment.footprint_grid_m);
    std::vector<FootprintPixel> best;
    for (const auto &b : beams)
    {
        if (!b.in_subset)
            continue;
        const PhaseProfile w = steering_phases(pem, ctx.ris_positions(), b.center, cfg.experiment.quant_bits);
        const auto px = rasterize_footprint(u, w.phasors(), ctx.ris_positions(), cfg.geometry, grid);
        if (best.empty())
            best = px;
        else
            for (std::size_t i = 0; i < px.size(); ++i)
                best[i].gain_dbi = std::max(best[i].gain_dbi, px[i].gain_dbi);
    }
    std::ostringstream os;
    os << "x_m,y_m,gain_dbi\n";
    for (const auto &px : best)
        os << csv_num(px.x_m) << ',' << csv_num(px.y_m) << ',' << csv_num(px.gain_dbi) << '\n';
    return os.str();
}

Json codebook_json(Context &ctx, const std::vector<Beam> &beams, bool ideal)
{
    const auto &cfg = ctx.cfg();
    Json j;
    j["beams"] = beams.size();
    j["subset_beams"] = std::count_if(beams.begin(), beams.end(), [](const Beam &b) { return b.in_subset; });
    Json runs = Json::object();
    for (int k : {1, cfg.experiment.users})
    {
        if (runs.contains(std::to_string(k) + "u"))
            continue;
        runs[std::to_string(k) + "u"] =
            rates(ctx, k, Scenario::codebook, cfg.experiment.quant_bits, cfg.experiment.pointing_sigma_rad, ideal)
                .summary;
    }
    j["rates"] = runs;
    return j;
}

// ---- budget, power, scaling -----------------------------------------------

Json budget_json(Context &ctx)
{
    const LinkBudget &b = ctx.budget();
    Json j;
    j["slant_max_m"] = b.slant_max_m;
    j["l_max_db"] = b.l_max_db;
    j["noise_dbm"] = b.noise_dbm;
    j["snr_target_db"] = b.snr_target_db;
    j["rx_target_dbm"] = b.rx_target_dbm;
    j["eirp_dbm"] = b.eirp_dbm;
    j["edge_gain_dbi"] = b.edge_gain_dbi;
    j["p_amaf_dbm"] = b.p_amaf_dbm;
    j["p_amaf_mw"] = 1e3 * b.p_amaf_w();
    return j;
}

Json plan_json(const PlanPower &p)
{
    Json groups = Json::array();
    for (const auto &g : p.groups)
        groups.push_back({{"size", g.size},
                          {"max_coeff_db", to_db(g.max_coeff)},
                          {"max_rf_dbm", g.max_rf_dbm},
                          {"splitter_db", g.splitter_db},
                          {"dc_w", g.dc_w}});
    return {{"name", p.name}, {"dc_w", p.dc_w}, {"groups", groups}};
}

Json power_json(Context &ctx)
{
    const PemPrecoder &pem = ctx.pem();
    const PowerReport r = architecture_report(pem, ctx.budget(), load_architecture_presets());
    const TaperStats t = taper_stats(pem);
    Json j;
    j["p_amaf_dbm"] = ctx.budget().p_amaf_dbm;
    j["omega_amaf"] = t.amaf_max_sq;
    j["omega_ris_db"] = to_db(pem.sigma_link() * pem.sigma_link() * t.ris_max_sq);
    j["p1_w"] = r.p1.dc_w;
    j["p1s_w"] = r.p1s.dc_w;
    j["p2_w"] = r.p2.dc_w;
    j["p2s_w"] = r.p2s.dc_w;
    j["architectures"] = Json::array({plan_json(r.p1), plan_json(r.p1s), plan_json(r.p2), plan_json(r.p2s)});
    return j;
}

void scaling_outputs(const SystemConfig &cfg, std::string &csv, Json &summary)
{
    const ScalingResult res = gain_scaling(kScalingSizes, cfg.experiment.threads);
    std::ostringstream os;
    os << "N,F,gamma_dbi\n";
    Json rows = Json::array();
    for (const auto &r : res.rows)
    {
        os << r.n << ',' << csv_num(r.feed_distance) << ',' << csv_num(r.gamma_dbi) << '\n';
        rows.push_back({{"N", r.n}, {"F", r.feed_distance}, {"gamma_dbi", r.gamma_dbi}});
    }
    csv = os.str();
    summary = {{"rows", rows}, {"slope", res.slope}};
}

// ---- dispatch -------------------------------------------------------------

Scenario scenario_of(const RunOptions &o) { return o.codebook ? Scenario::codebook : Scenario::pointing; }

void run_single(const std::string &sub, Context &ctx, Writer &w, const RunOptions &opt)
{
    const auto &cfg = ctx.cfg();
    const std::uint64_t seed = cfg.experiment.seed;
    const auto &e = cfg.experiment;
    if (sub == "delay")
    {
        w.write_json(tag("delay", seed) + ".json", delay_json(cfg));
    }
    else if (sub == "pem")
    {
        w.write(tag("pem", seed) + ".csv", pem_csv(ctx));
        w.write_json(tag("pem", seed) + ".json", pem_json(ctx));
    }
    else if (sub == "footprint")
    {
        const auto f = footprint(ctx, opt.target, opt.subcarrier, e.quant_bits, e.pointing_sigma_rad, seed);
        w.write(tag("footprint", seed) + ".csv", f.csv);
        w.write_json(tag("footprint", seed) + ".json", f.summary);
    }
    else if (sub == "rates")
    {
        const auto r =
            rates(ctx, e.users, scenario_of(opt), e.quant_bits, e.pointing_sigma_rad, opt.ideal_positions);
        w.write(tag("rates", seed) + ".csv", r.csv);
        w.write_json(tag("rates", seed) + ".json", r.summary);
    }
    else if (sub == "codebook")
    {
        const auto beams = naive_codebook(cfg.geometry);
        w.write(tag("codebook", seed) + ".csv", codebook_csv(beams));
        w.write_json(tag("codebook", seed) + ".json", codebook_json(ctx, beams, opt.ideal_positions));
    }
    else if (sub == "budget")
    {
        w.write_json(tag("budget", seed) + ".json", budget_json(ctx));
    }
    else if (sub == "power")
    {
        w.write_json(tag("power", seed) + ".json", power_json(ctx));
    }
    else if (sub == "scaling")
    {
        std::string csv;
        Json j;
        scaling_outputs(cfg, csv, j);
        w.write(tag("scaling", seed) + ".csv", csv);
        w.write_json(tag("scaling", seed) + ".json", j);
    }
    else
    {
        throw ValidationError("subcommand", "unknown subcommand " + sub);
    }
}

void run_all(Context &ctx, Writer &w)
{
    const auto &cfg = ctx.cfg();
    const std::uint64_t seed = cfg.experiment.seed;
    for (const char *sub : {"delay", "pem", "budget", "power", "scaling"})
        run_single(sub, ctx, w, {});

    // Beam footprints: boresight, both band edges, a steered beam with and
    // without phase quantization.
    const auto put_footprint = [&](const std::string &stem, Direction d, std::optional<int> nu,
                                   std::optional<int> qb) {
        const auto f = footprint(ctx, d, nu, qb, 0.0, seed);
        w.write(tag(stem, seed) + ".csv", f.csv);
        w.write_json(tag(stem, seed) + ".json", f.summary);
    };
    const Direction steered{deg_to_rad(30.0), deg_to_rad(10.0)};
    put_footprint("footprint-boresight", {}, std::nullopt, std::nullopt);
    put_footprint("footprint-band-low", {}, 0, std::nullopt);
    put_footprint("footprint-band-high", {}, cfg.channel.n_subcarriers - 1, std::nullopt);
    put_footprint("footprint-steered", steered, std::nullopt, std::nullopt);
    put_footprint("footprint-steered-q" + std::to_string(kDemoQuantBits), steered, std::nullopt, kDemoQuantBits);

    // Rate CDFs: single vs multiuser, pointing error, phase quantization.
    const int k = cfg.experiment.users;
    const double pe = deg_to_rad(kPointingDemoDeg);
    const auto put_rates = [&](const std::string &stem, int users, std::optional<int> qb, double sigma) {
        const auto r = rates(ctx, users, Scenario::pointing, qb, sigma, false);
        w.write(tag(stem, seed) + ".csv", r.csv);
        w.write_json(tag(stem, seed) + ".json", r.summary);
    };
    put_rates("rates-1u", 1, std::nullopt, 0.0);
    put_rates("rates-" + std::to_string(k) + "u", k, std::nullopt, 0.0);
    put_rates("rates-1u-pe2.5", 1, std::nullopt, pe);
    put_rates("rates-" + std::to_string(k) + "u-pe2.5", k, std::nullopt, pe);
    put_rates("rates-" + std::to_string(k) + "u-q" + std::to_string(kDemoQuantBits), k, kDemoQuantBits, 0.0);

    const auto beams = naive_codebook(cfg.geometry);
    w.write(tag("codebook", seed) + ".csv", codebook_csv(beams));
    w.write(tag("codebook-footprint", seed) + ".csv", codebook_footprint_csv(ctx, beams));
    w.write_json(tag("codebook", seed) + ".json", codebook_json(ctx, beams, false));
}

Json manifest_json(const RunManifest &m)
{
    Json cfg = Json::object();
    for (const auto &[k, v] : m.config)
        cfg[k] = v;
    Json arts = Json::array();
    for (const auto &a : m.artifacts)
        arts.push_back({{"file", a.file}, {"fnv1a64", a.checksum}});
    return {{"subcommand", m.subcommand},
            {"seed", m.seed},
            {"version", m.version},
            {"config", cfg},
            {"artifacts", arts}};
}

} // namespace

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string version_string() { return AMAFRIS_VERSION; }

RunManifest run(std::string_view subcommand, const SystemConfig &cfg, const std::filesystem::path &out_dir,
                const RunOptions &options)
{
    const std::string sub(subcommand);
    const auto &names = subcommands();
    if (std::find(names.begin(), names.end(), sub) == names.end())
        throw ValidationError("subcommand", "unknown subcommand " + sub);
    cfg.validate();

    Context ctx(cfg);
    Writer w(out_dir);
    if (sub == "reproduce-all")
        run_all(ctx, w);
    else
        run_single(sub, ctx, w, options);

    RunManifest m{sub, cfg.experiment.seed, version_string(), config_snapshot(cfg), w.artifacts()};
    if (sub == "footprint")
    {
        m.config.emplace_back("target_phi_deg", csv_num(rad_to_deg(options.target.phi)));
        m.config.emplace_back("target_theta_deg", csv_num(rad_to_deg(options.target.theta)));
        m.config.emplace_back("subcarrier", options.subcarrier ? std::to_string(*options.subcarrier) : "center");
    }
    if (sub == "rates" || sub == "codebook")
    {
        m.config.emplace_back("codebook", options.codebook ? "true" : "false");
        m.config.emplace_back("ideal_positions", options.ideal_positions ? "true" : "false");
    }
    Writer mw(out_dir);
    mw.write_json("manifest-" + tag(sub, cfg.experiment.seed) + ".json", manifest_json(m));
    return m;
}

} // namespace amafris

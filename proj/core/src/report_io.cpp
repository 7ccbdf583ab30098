// SPDX-License-Identifier: Apache-2.0
//
// hbf - energy-efficient hybrid beamforming for sub-connected mmWave MIMO
// Copyright (C) 2026 The hbf Authors
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

#include "hbf/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hbf::sim
{

namespace
{

using nlohmann::json;

std::string fmt(const char *spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string num(double v)
{
    return fmt("%.17g", v);
}

// Doubles that JSON cannot carry travel as strings.
json encode(double v)
{
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return "nan";
    return v > 0 ? "inf" : "-inf";
}

double decode(const json &j)
{
    if (j.is_number())
        return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("records: bad number '" + s + "'");
}

json encode(const std::vector<double> &v)
{
    json a = json::array();
    for (double x : v)
        a.push_back(encode(x));
    return a;
}

std::vector<double> decode_list(const json &j)
{
    std::vector<double> v;
    for (const auto &x : j)
        v.push_back(decode(x));
    return v;
}

void reject_unknown(const json &obj, std::initializer_list<const char *> known, const std::string &where)
{
    if (!obj.is_object())
        throw std::invalid_argument("config: '" + where + "' must be an object");
    for (const auto &[key, value] : obj.items())
    {
        bool ok = false;
        for (const char *k : known)
            ok = ok || key == k;
        if (!ok)
            throw std::invalid_argument("config: unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
}

template <typename T>
void read(const json &obj, const char *key, T &out, const std::string &where)
{
    if (!obj.contains(key))
        return;
    try
    {
        out = obj.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw std::invalid_argument("config: bad value for '" + (where.empty() ? std::string(key) : where + "." + key) +
                                    "'");
    }
}

json power_model_json(const PowerModel &pm)
{
    return {{"p_pa", pm.p_pa},     {"p_lna", pm.p_lna},   {"p_dac", pm.p_dac}, {"p_adc", pm.p_adc}, {"p_ps", pm.p_ps},
            {"p_trfc", pm.p_trfc}, {"p_rrfc", pm.p_rrfc}, {"p_bb", pm.p_bb},   {"eta", pm.eta}};
}

json metrics_json(const Metrics &m)
{
    return {{"rate_bits", encode(m.rate_bits)},
            {"consumed_power", encode(m.consumed_power)},
            {"energy_efficiency", encode(m.energy_efficiency)},
            {"transmit_power", encode(m.transmit_power)},
            {"noise_power", encode(m.noise_power)}};
}

Metrics metrics_from(const json &j)
{
    Metrics m;
    m.rate_bits = decode(j.at("rate_bits"));
    m.consumed_power = decode(j.at("consumed_power"));
    m.energy_efficiency = decode(j.at("energy_efficiency"));
    m.transmit_power = decode(j.at("transmit_power"));
    m.noise_power = decode(j.at("noise_power"));
    return m;
}

json outcome_json(const SolverOutcome &o)
{
    json inner = json::array();
    for (const auto &t : o.inner_traces)
        inner.push_back(encode(t));
    return {{"solver", to_string(o.solver)},
            {"ok", o.ok},
            {"metrics", metrics_json(o.metrics)},
            {"lambda_ee", encode(o.lambda_ee)},
            {"dinkelbach_converged", o.dinkelbach_converged},
            {"outer_lambda", encode(o.outer_lambda)},
            {"outer_objective", encode(o.outer_objective)},
            {"inner_traces", inner},
            {"active_bisections", o.active_bisections},
            {"diagnostics", o.diagnostics}};
}

SolverOutcome outcome_from(const json &j)
{
    SolverOutcome o;
    o.solver = parse_solver(j.at("solver").get<std::string>());
    o.ok = j.at("ok").get<bool>();
    o.metrics = metrics_from(j.at("metrics"));
    o.lambda_ee = decode(j.at("lambda_ee"));
    o.dinkelbach_converged = j.at("dinkelbach_converged").get<bool>();
    o.outer_lambda = decode_list(j.at("outer_lambda"));
    o.outer_objective = decode_list(j.at("outer_objective"));
    for (const auto &t : j.at("inner_traces"))
        o.inner_traces.push_back(decode_list(t));
    o.active_bisections = j.at("active_bisections").get<int>();
    o.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return o;
}

json record_json(const TrialRecord &r)
{
    json first = json::array();
    for (const auto &s : r.analog_first_pass)
        first.push_back({{"side", to_string(s.side)},
                         {"subarray", s.subarray},
                         {"initial_value", encode(s.initial_value)},
                         {"values", encode(s.values)}});
    json points = json::array();
    for (const auto &p : r.points)
    {
        json outcomes = json::array();
        for (const auto &o : p.outcomes)
            outcomes.push_back(outcome_json(o));
        points.push_back({{"power_dbm", p.power_dbm}, {"outcomes", outcomes}});
    }
    return {{"trial_index", r.trial_index},
            {"seed", r.seed},
            {"config_hash", r.config_hash},
            {"analog_initial", encode(r.analog_initial)},
            {"analog_trace", encode(r.analog_trace)},
            {"analog_first_pass", first},
            {"analog_capped", r.analog_capped},
            {"points", points},
            {"diagnostics", r.diagnostics}};
}

TrialRecord record_from(const json &j)
{
    TrialRecord r;
    r.trial_index = j.at("trial_index").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config_hash = j.at("config_hash").get<std::uint64_t>();
    r.analog_initial = decode(j.at("analog_initial"));
    r.analog_trace = decode_list(j.at("analog_trace"));
    for (const auto &s : j.at("analog_first_pass"))
    {
        const auto side = s.at("side").get<std::string>();
        if (side != "receive" && side != "transmit")
            throw std::invalid_argument("records: bad side '" + side + "'");
        r.analog_first_pass.push_back({side == "receive" ? Side::receive : Side::transmit, s.at("subarray").get<int>(),
                                       decode(s.at("initial_value")), decode_list(s.at("values"))});
    }
    r.analog_capped = j.at("analog_capped").get<int>();
    for (const auto &p : j.at("points"))
    {
        PowerPointRecord point;
        point.power_dbm = p.at("power_dbm").get<double>();
        for (const auto &o : p.at("outcomes"))
            point.outcomes.push_back(outcome_from(o));
        r.points.push_back(std::move(point));
    }
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return r;
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

std::string trace_label(Solver s, double power_dbm)
{
    return std::string(to_string(s)) + "@" + fmt("%g", power_dbm) + "dBm";
}

} // namespace

std::string config_to_json(const ExperimentConfig &cfg, int indent)
{
    json solvers = json::array();
    for (Solver s : cfg.solvers)
        solvers.push_back(to_string(s));
    const json j = {
        {"dims",
         {{"n_subarrays", cfg.dims.n_subarrays()},
          {"antennas_per_subarray", cfg.dims.antennas_per_subarray()},
          {"total_antennas", cfg.dims.total_antennas()}}},
        {"cluster",
         {{"n_clusters", cfg.cluster.n_clusters},
          {"rays_per_cluster", cfg.cluster.rays_per_cluster},
          {"gain_variance", cfg.cluster.gain_variance},
          {"angular_spread_deg", cfg.cluster.angular_spread_deg},
          {"element_spacing_wavelengths", cfg.cluster.element_spacing_wavelengths}}},
        {"power_grid_dbm", cfg.power_grid_dbm},
        {"noise_dbm", cfg.noise_dbm},
        {"power_model", power_model_json(cfg.power_model)},
        {"trials", cfg.trials},
        {"base_seed", cfg.base_seed},
        {"eps", cfg.eps},
        {"mode", to_string(cfg.mode)},
        {"solvers", solvers},
        {"analog_max_outer", cfg.analog_max_outer},
        {"analog_max_sweeps", cfg.analog_max_sweeps},
        {"digital_max_inner", cfg.digital_max_inner},
        {"digital_max_outer", cfg.digital_max_outer},
    };
    return j.dump(indent);
}

ExperimentConfig config_from_json(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"dims", "cluster", "power_grid_dbm", "noise_dbm", "power_model", "trials", "base_seed", "eps",
                    "mode", "solvers", "analog_max_outer", "analog_max_sweeps", "digital_max_inner",
                    "digital_max_outer"},
                   "");

    ExperimentConfig cfg;
    if (j.contains("dims"))
    {
        const json &d = j.at("dims");
        reject_unknown(d, {"n_subarrays", "antennas_per_subarray", "total_antennas"}, "dims");
        int nr = cfg.dims.n_subarrays();
        int nrf = cfg.dims.antennas_per_subarray();
        read(d, "n_subarrays", nr, "dims");
        read(d, "antennas_per_subarray", nrf, "dims");
        cfg.dims = SystemDims(nr, nrf);
        if (d.contains("total_antennas"))
        {
            int nt = 0;
            read(d, "total_antennas", nt, "dims");
            if (nt != cfg.dims.total_antennas())
                throw std::invalid_argument("config: dims.total_antennas must equal n_subarrays * antennas_per_subarray");
        }
    }
    if (j.contains("cluster"))
    {
        const json &c = j.at("cluster");
        reject_unknown(c,
                       {"n_clusters", "rays_per_cluster", "gain_variance", "angular_spread_deg",
                        "element_spacing_wavelengths"},
                       "cluster");
        read(c, "n_clusters", cfg.cluster.n_clusters, "cluster");
        read(c, "rays_per_cluster", cfg.cluster.rays_per_cluster, "cluster");
        read(c, "gain_variance", cfg.cluster.gain_variance, "cluster");
        read(c, "angular_spread_deg", cfg.cluster.angular_spread_deg, "cluster");
        read(c, "element_spacing_wavelengths", cfg.cluster.element_spacing_wavelengths, "cluster");
    }
    if (j.contains("power_model"))
    {
        const json &p = j.at("power_model");
        reject_unknown(p, {"p_pa", "p_lna", "p_dac", "p_adc", "p_ps", "p_trfc", "p_rrfc", "p_bb", "eta"},
                       "power_model");
        PowerModel &pm = cfg.power_model;
        read(p, "p_pa", pm.p_pa, "power_model");
        read(p, "p_lna", pm.p_lna, "power_model");
        read(p, "p_dac", pm.p_dac, "power_model");
        read(p, "p_adc", pm.p_adc, "power_model");
        read(p, "p_ps", pm.p_ps, "power_model");
        read(p, "p_trfc", pm.p_trfc, "power_model");
        read(p, "p_rrfc", pm.p_rrfc, "power_model");
        read(p, "p_bb", pm.p_bb, "power_model");
        read(p, "eta", pm.eta, "power_model");
    }
    read(j, "power_grid_dbm", cfg.power_grid_dbm, "");
    read(j, "noise_dbm", cfg.noise_dbm, "");
    read(j, "trials", cfg.trials, "");
    read(j, "base_seed", cfg.base_seed, "");
    read(j, "eps", cfg.eps, "");
    read(j, "analog_max_outer", cfg.analog_max_outer, "");
    read(j, "analog_max_sweeps", cfg.analog_max_sweeps, "");
    read(j, "digital_max_inner", cfg.digital_max_inner, "");
    read(j, "digital_max_outer", cfg.digital_max_outer, "");
    if (j.contains("mode"))
    {
        std::string mode;
        read(j, "mode", mode, "");
        cfg.mode = parse_mode(mode);
    }
    if (j.contains("solvers"))
    {
        std::vector<std::string> names;
        read(j, "solvers", names, "");
        cfg.solvers.clear();
        for (const auto &n : names)
            cfg.solvers.push_back(parse_solver(n));
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    return config_from_json(read_file(path));
}

std::string records_to_json(const std::vector<TrialRecord> &records, int indent)
{
    json a = json::array();
    for (const auto &r : records)
        a.push_back(record_json(r));
    return a.dump(indent);
}

std::vector<TrialRecord> records_from_json(const std::string &text)
{
    std::vector<TrialRecord> out;
    try
    {
        for (const auto &r : json::parse(text))
            out.push_back(record_from(r));
    }
    catch (const json::exception &e)
    {
        throw std::invalid_argument(std::string("records: ") + e.what());
    }
    return out;
}

std::vector<TrialRecord> load_records(const std::filesystem::path &path)
{
    return records_from_json(read_file(path));
}

std::string summary_csv(const std::vector<SummaryRow> &summary)
{
    std::string out = std::string(kSummaryHeader) + "\n";
    for (const auto &r : summary)
    {
        out += fmt("%g", r.power_dbm) + "," + to_string(r.solver) + "," + num(r.mean_energy_efficiency) + "," +
               num(r.mean_rate) + "," + num(r.mean_consumed_power) + "," + std::to_string(r.trials) + "," +
               std::to_string(r.failures) + "\n";
    }
    return out;
}

std::string traces_csv(const std::vector<TrialRecord> &records)
{
    std::string out = std::string(kTracesHeader) + "\n";
    auto row = [&out](std::uint64_t seed, const std::string &stage, const std::string &loop, std::size_t it,
                      double value) {
        out += std::to_string(seed) + "," + stage + "," + loop + "," + std::to_string(it) + "," + num(value) + "\n";
    };
    for (const auto &r : records)
    {
        if (!r.analog_trace.empty())
        {
            row(r.seed, "analog", "alternating", 0, r.analog_initial);
            for (std::size_t i = 0; i < r.analog_trace.size(); ++i)
                row(r.seed, "analog", "alternating", i + 1, r.analog_trace[i]);
        }
        for (const auto &s : r.analog_first_pass)
        {
            const std::string loop = std::string(to_string(s.side)) + "[" + std::to_string(s.subarray) + "]";
            row(r.seed, "analog", loop, 0, s.initial_value);
            for (std::size_t i = 0; i < s.values.size(); ++i)
                row(r.seed, "analog", loop, i + 1, s.values[i]);
        }
        for (const auto &p : r.points)
        {
            for (const auto &o : p.outcomes)
            {
                const std::string stage = trace_label(o.solver, p.power_dbm);
                for (std::size_t i = 0; i < o.outer_lambda.size(); ++i)
                    row(r.seed, stage, "outer", i + 1, o.outer_lambda[i]);
                std::size_t it = 0;
                for (const auto &t : o.inner_traces)
                    for (double chi : t)
                        row(r.seed, stage, "inner", ++it, chi);
            }
        }
    }
    return out;
}

void emit_outputs(const std::vector<TrialRecord> &records, const std::vector<SummaryRow> &summary,
                  const ExperimentConfig &cfg, const std::filesystem::path &out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
    write_file(out_dir / "summary.csv", summary_csv(summary));
    write_file(out_dir / "traces.csv", traces_csv(records));
    write_file(out_dir / "config.json", config_to_json(cfg) + "\n");
    write_file(out_dir / "records.json", records_to_json(records) + "\n");
}

} // namespace hbf::sim

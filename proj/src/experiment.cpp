// twirs  IRS-aided two-way relay link simulator
// Copyright (C) 2026 twirs contributors
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

#include "twirs/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "twirs/rate.hpp"
#include "twirs/rng.hpp"

namespace twirs
{

namespace
{

// Seed-derivation purposes; distinct per random use so streams never alias.
constexpr std::uint64_t kPurposeChannels = 0;
constexpr std::uint64_t kPurposeRandomTheta = 1;
constexpr std::uint64_t kPurposeRandomPsi = 2;
constexpr std::uint64_t kPurposeMaxminSlot1 = 3;
constexpr std::uint64_t kPurposeMaxminSlot2 = 4;

constexpr std::size_t kMaxminElementCap = 128;
constexpr double kSizeSweepDistance = 50.0;

// Offset from the segment endpoints so no two nodes coincide.
double clamp_distance(double d)
{
    return std::min(std::max(d, 0.5), 99.5);
}

double pick_metric(const RateReport &rep, RateMetric m)
{
    switch (m)
    {
    case RateMetric::system:
        return rep.system_rate;
    case RateMetric::slot1_sum:
        return rep.sum_first_slot;
    case RateMetric::slot1_min:
        return rep.min_first_slot;
    }
    throw std::logic_error("pick_metric: unhandled metric");
}

double evaluate_method(const ExperimentConfig &cfg, const ChannelSet &chans, Method method,
                       std::uint64_t point, std::uint64_t trial)
{
    const std::size_t n = chans.h_si.size();
    PhaseVector theta;
    PhaseVector psi;
    switch (method)
    {
    case Method::evd:
    {
        theta = max_rps_evd(chans).theta;
        psi = optimize_second_slot(chans, Method::evd, cfg.draws, cfg.gpi);
        break;
    }
    case Method::maxmin:
    {
        RandomStream slot1(derive_seed(cfg.seed, point, trial, kPurposeMaxminSlot1));
        theta = max_min_r(chans, cfg.draws, slot1).theta;
        RandomStream slot2(derive_seed(cfg.seed, point, trial, kPurposeMaxminSlot2));
        psi = optimize_second_slot(chans, Method::maxmin, cfg.draws, cfg.gpi, &slot2);
        break;
    }
    case Method::gpi:
    {
        theta = max_sr_gpi(chans, cfg.gpi).theta;
        psi = optimize_second_slot(chans, Method::gpi, cfg.draws, cfg.gpi);
        break;
    }
    case Method::random:
    {
        RandomStream rt(derive_seed(cfg.seed, point, trial, kPurposeRandomTheta));
        theta = random_phase(n, rt);
        RandomStream rp(derive_seed(cfg.seed, point, trial, kPurposeRandomPsi));
        psi = random_phase(n, rp);
        break;
    }
    case Method::only_rs:
    {
        // Relay-only baseline: silence the surface, phases are then inert.
        ChannelSet bare = chans;
        std::fill(bare.h_ir.data(), bare.h_ir.data() + bare.h_ir.rows() * bare.h_ir.cols(),
                  cdouble(0.0));
        return pick_metric(full_report(bare, PhaseVector::all_ones(n), PhaseVector::all_ones(n)),
                           cfg.rate_metric);
    }
    }
    return pick_metric(full_report(chans, theta, psi), cfg.rate_metric);
}

// Drops methods a sweep cannot afford at this element count, with a notice.
std::vector<Method> affordable_methods(const std::vector<Method> &methods, std::size_t n)
{
    std::vector<Method> kept;
    for (Method m : methods)
    {
        if (m == Method::maxmin && n > kMaxminElementCap)
        {
            std::cerr << "notice: maxmin skipped at n_elements=" << n << " (cap "
                      << kMaxminElementCap << ")\n";
            continue;
        }
        kept.push_back(m);
    }
    return kept;
}

struct PointSpec
{
    std::string sweep_name;
    double sweep_value = 0.0;
    double d = 0.0;
    std::size_t n = 0;
};

std::vector<SweepRow> run_points(const ExperimentConfig &cfg, const std::vector<PointSpec> &points)
{
    cfg.validate();
    std::vector<SweepRow> rows;
    for (std::size_t si = 0; si < points.size(); ++si)
    {
        const PointSpec &pt = points[si];
        const std::vector<Method> methods = affordable_methods(cfg.methods, pt.n);
        if (methods.empty())
            continue;
        const Geometry geom =
            Geometry::standard(clamp_distance(pt.d), pt.n, cfg.m_antennas);
        std::vector<std::vector<double>> values(methods.size());

        for (int ti = 0; ti < cfg.trials; ++ti)
        {
            RandomStream chan_rng(derive_seed(cfg.seed, si, static_cast<std::uint64_t>(ti),
                                              kPurposeChannels));
            const ChannelSet chans = generate_channel_set(geom, cfg.budget, chan_rng);
            for (std::size_t mi = 0; mi < methods.size(); ++mi)
            {
                double v = 0.0;
                try
                {
                    v = evaluate_method(cfg, chans, methods[mi], si,
                                        static_cast<std::uint64_t>(ti));
                }
                catch (const std::exception &e)
                {
                    std::ostringstream msg;
                    msg << "trial failed (" << pt.sweep_name << "=" << pt.sweep_value
                        << ", method=" << method_name(methods[mi]) << ", trial=" << ti
                        << "): " << e.what();
                    throw std::runtime_error(msg.str());
                }
                if (!std::isfinite(v))
                {
                    std::ostringstream msg;
                    msg << "non-finite rate (" << pt.sweep_name << "=" << pt.sweep_value
                        << ", method=" << method_name(methods[mi]) << ", trial=" << ti << ")";
                    throw std::runtime_error(msg.str());
                }
                values[mi].push_back(v);
            }
        }

        for (std::size_t mi = 0; mi < methods.size(); ++mi)
        {
            const std::vector<double> &v = values[mi];
            double mean = 0.0;
            for (double x : v)
                mean += x;
            mean /= static_cast<double>(v.size());
            double var = 0.0;
            if (v.size() > 1)
            {
                for (double x : v)
                    var += (x - mean) * (x - mean);
                var /= static_cast<double>(v.size() - 1);
            }
            SweepRow row;
            row.method = method_name(methods[mi]);
            row.sweep_name = pt.sweep_name;
            row.sweep_value = pt.sweep_value;
            row.n_elements = pt.n;
            row.m_antennas = cfg.m_antennas;
            row.trials = cfg.trials;
            row.mean_rate = mean;
            row.std_rate = std::sqrt(var);
            row.ci95_halfwidth =
                1.96 * row.std_rate / std::sqrt(static_cast<double>(v.size()));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_double(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_uint(std::uint64_t v)
{
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::ofstream open_csv(const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_csv: cannot open \"" + path + "\" for writing");
    return out;
}

void finish_csv(std::ofstream &out, const std::string &path)
{
    out.flush();
    if (!out)
        throw std::runtime_error("write_csv: write to \"" + path + "\" failed");
}

using json = nlohmann::json;

double get_double(const json &v, const char *key)
{
    if (!v.is_number())
        throw std::runtime_error(std::string("load_config: malformed value for \"") + key +
                                 "\" (number expected)");
    return v.get<double>();
}

std::int64_t get_int(const json &v, const char *key)
{
    if (!v.is_number_integer())
        throw std::runtime_error(std::string("load_config: malformed value for \"") + key +
                                 "\" (integer expected)");
    return v.get<std::int64_t>();
}

} // namespace

const char *rate_metric_name(RateMetric m)
{
    switch (m)
    {
    case RateMetric::system:
        return "system";
    case RateMetric::slot1_sum:
        return "slot1_sum";
    case RateMetric::slot1_min:
        return "slot1_min";
    }
    throw std::logic_error("rate_metric_name: unhandled metric");
}

RateMetric rate_metric_from_name(const std::string &name)
{
    if (name == "system")
        return RateMetric::system;
    if (name == "slot1_sum")
        return RateMetric::slot1_sum;
    if (name == "slot1_min")
        return RateMetric::slot1_min;
    throw std::invalid_argument("rate_metric must be one of system, slot1_sum, slot1_min (got \"" +
                                name + "\")");
}

void ExperimentConfig::validate() const
{
    if (!std::isfinite(d_min) || !std::isfinite(d_max) || d_min < 0.0 || d_max > 100.0 ||
        d_min > d_max)
        throw std::invalid_argument("config: d_min/d_max must satisfy 0 <= d_min <= d_max <= 100");
    if (!(d_step > 0.0) || !std::isfinite(d_step))
        throw std::invalid_argument("config: d_step must be positive");
    if (element_counts.empty())
        throw std::invalid_argument("config: element_counts must be non-empty");
    for (std::size_t n : element_counts)
        if (n < 1)
            throw std::invalid_argument("config: element_counts entries must be >= 1");
    if (m_antennas < 1)
        throw std::invalid_argument("config: m_antennas must be >= 1");
    if (trials < 1)
        throw std::invalid_argument("config: trials must be >= 1");
    if (methods.empty())
        throw std::invalid_argument("config: methods must be non-empty");
    if (draws < 1)
        throw std::invalid_argument("config: draws must be >= 1");
    if (!(gpi.kappa > 0.0) || !std::isfinite(gpi.kappa))
        throw std::invalid_argument("config: kappa must be positive");
    if (gpi.max_iter < 1)
        throw std::invalid_argument("config: max_iter must be >= 1");
    budget.validate();
}

std::vector<SweepRow> run_distance_sweep(const ExperimentConfig &cfg)
{
    cfg.validate();
    const std::size_t n = cfg.element_counts.front();
    std::vector<PointSpec> points;
    const int steps =
        static_cast<int>(std::floor((cfg.d_max - cfg.d_min) / cfg.d_step + 1e-9));
    for (int i = 0; i <= steps; ++i)
    {
        const double d = cfg.d_min + static_cast<double>(i) * cfg.d_step;
        points.push_back({"d_m", d, d, n});
    }
    return run_points(cfg, points);
}

std::vector<SweepRow> run_size_sweep(const ExperimentConfig &cfg)
{
    cfg.validate();
    std::vector<PointSpec> points;
    for (std::size_t n : cfg.element_counts)
        points.push_back({"n_elements", static_cast<double>(n), kSizeSweepDistance, n});
    return run_points(cfg, points);
}

std::vector<ConvergenceRow> run_convergence_trace(const ExperimentConfig &cfg)
{
    cfg.validate();
    if (cfg.methods.size() != 1 || cfg.methods.front() != Method::gpi)
        throw std::invalid_argument("run_convergence_trace: methods must be exactly {gpi}");

    std::vector<ConvergenceRow> rows;
    for (std::size_t si = 0; si < cfg.element_counts.size(); ++si)
    {
        const std::size_t n = cfg.element_counts[si];
        const Geometry geom =
            Geometry::standard(clamp_distance(kSizeSweepDistance), n, cfg.m_antennas);
        for (int ti = 0; ti < cfg.trials; ++ti)
        {
            RandomStream chan_rng(derive_seed(cfg.seed, si, static_cast<std::uint64_t>(ti),
                                              kPurposeChannels));
            const ChannelSet chans = generate_channel_set(geom, cfg.budget, chan_rng);
            const OptResult res = max_sr_gpi(chans, cfg.gpi);
            for (std::size_t k = 0; k < res.objective_trace.size(); ++k)
            {
                ConvergenceRow row;
                row.method = res.method;
                row.n = n;
                row.trial = ti;
                row.iteration = static_cast<int>(k);
                row.objective = res.objective_trace[k];
                row.rate = std::log2(res.objective_trace[k]);
                if (!std::isfinite(row.rate))
                {
                    std::ostringstream msg;
                    msg << "non-finite trace (n_elements=" << n << ", trial=" << ti
                        << ", iteration=" << k << ")";
                    throw std::runtime_error(msg.str());
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_config: cannot open \"" + path + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        return {};

    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw std::runtime_error(std::string("load_config: \"") + path + "\" is not valid JSON: " +
                                 e.what());
    }
    if (!doc.is_object())
        throw std::runtime_error("load_config: top level must be a flat object");

    ExperimentConfig cfg;
    for (const auto &[key, value] : doc.items())
    {
        if (key == "d_min")
            cfg.d_min = get_double(value, "d_min");
        else if (key == "d_max")
            cfg.d_max = get_double(value, "d_max");
        else if (key == "d_step")
            cfg.d_step = get_double(value, "d_step");
        else if (key == "element_counts")
        {
            if (!value.is_array() || value.empty())
                throw std::runtime_error(
                    "load_config: malformed value for \"element_counts\" (non-empty array "
                    "expected)");
            cfg.element_counts.clear();
            for (const auto &e : value)
            {
                const std::int64_t n = get_int(e, "element_counts");
                if (n < 1)
                    throw std::runtime_error(
                        "load_config: malformed value for \"element_counts\" (entries must be "
                        ">= 1)");
                cfg.element_counts.push_back(static_cast<std::size_t>(n));
            }
        }
        else if (key == "m_antennas")
            cfg.m_antennas = static_cast<std::size_t>(get_int(value, "m_antennas"));
        else if (key == "trials")
            cfg.trials = static_cast<int>(get_int(value, "trials"));
        else if (key == "methods")
        {
            if (!value.is_array() || value.empty())
                throw std::runtime_error(
                    "load_config: malformed value for \"methods\" (non-empty array expected)");
            cfg.methods.clear();
            for (const auto &e : value)
            {
                if (!e.is_string())
                    throw std::runtime_error(
                        "load_config: malformed value for \"methods\" (strings expected)");
                cfg.methods.push_back(method_from_name(e.get<std::string>()));
            }
        }
        else if (key == "seed")
        {
            if (!value.is_number_integer())
                throw std::runtime_error(
                    "load_config: malformed value for \"seed\" (integer expected)");
            cfg.seed = value.get<std::uint64_t>();
        }
        else if (key == "pl0_db")
            cfg.budget.pl0_db = get_double(value, "pl0_db");
        else if (key == "d0_m")
            cfg.budget.d0_m = get_double(value, "d0_m");
        else if (key == "alpha_sr")
            cfg.budget.alpha_sr = get_double(value, "alpha_sr");
        else if (key == "alpha_dr")
            cfg.budget.alpha_dr = get_double(value, "alpha_dr");
        else if (key == "alpha_si")
            cfg.budget.alpha_si = get_double(value, "alpha_si");
        else if (key == "alpha_di")
            cfg.budget.alpha_di = get_double(value, "alpha_di");
        else if (key == "alpha_ir")
            cfg.budget.alpha_ir = get_double(value, "alpha_ir");
        else if (key == "p_s_w")
            cfg.budget.p_s_w = get_double(value, "p_s_w");
        else if (key == "p_d_w")
            cfg.budget.p_d_w = get_double(value, "p_d_w");
        else if (key == "p_r_w")
            cfg.budget.p_r_w = get_double(value, "p_r_w");
        else if (key == "sigma2_s_w")
            cfg.budget.sigma2_s_w = get_double(value, "sigma2_s_w");
        else if (key == "sigma2_d_w")
            cfg.budget.sigma2_d_w = get_double(value, "sigma2_d_w");
        else if (key == "sigma2_r_w")
            cfg.budget.sigma2_r_w = get_double(value, "sigma2_r_w");
        else if (key == "kappa")
            cfg.gpi.kappa = get_double(value, "kappa");
        else if (key == "max_iter")
            cfg.gpi.max_iter = static_cast<int>(get_int(value, "max_iter"));
        else if (key == "draws")
            cfg.draws = static_cast<int>(get_int(value, "draws"));
        else if (key == "rate_metric")
        {
            if (!value.is_string())
                throw std::runtime_error(
                    "load_config: malformed value for \"rate_metric\" (string expected)");
            cfg.rate_metric = rate_metric_from_name(value.get<std::string>());
        }
        else
            throw std::runtime_error("load_config: unknown key \"" + key + "\"");
    }
    cfg.validate();
    return cfg;
}

void write_csv(const std::vector<SweepRow> &rows, const std::string &path)
{
    std::ofstream out = open_csv(path);
    out << "method,sweep_name,sweep_value,n_elements,m_antennas,trials,mean_rate,std_rate,"
           "ci95_halfwidth\n";
    for (const SweepRow &r : rows)
    {
        out << r.method << ',' << r.sweep_name << ',' << format_double(r.sweep_value) << ','
            << format_uint(r.n_elements) << ',' << format_uint(r.m_antennas) << ','
            << format_uint(static_cast<std::uint64_t>(r.trials)) << ','
            << format_double(r.mean_rate) << ',' << format_double(r.std_rate) << ','
            << format_double(r.ci95_halfwidth) << '\n';
    }
    finish_csv(out, path);
}

void write_csv(const std::vector<ConvergenceRow> &rows, const std::string &path)
{
    std::ofstream out = open_csv(path);
    out << "method,n,trial,iteration,objective,rate\n";
    for (const ConvergenceRow &r : rows)
    {
        out << r.method << ',' << format_uint(r.n) << ','
            << format_uint(static_cast<std::uint64_t>(r.trial)) << ','
            << format_uint(static_cast<std::uint64_t>(r.iteration)) << ','
            << format_double(r.objective) << ',' << format_double(r.rate) << '\n';
    }
    finish_csv(out, path);
}

} // namespace twirs

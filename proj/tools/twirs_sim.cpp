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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twirs/experiment.hpp"

namespace
{

// Flag values held as optionals so "given on the command line" is
// distinguishable from "left at the config value".
struct Overrides
{
    std::string config_path;
    std::string out_path;
    CLI::Option *opt_n = nullptr;
    CLI::Option *opt_m = nullptr;
    CLI::Option *opt_d_min = nullptr;
    CLI::Option *opt_d_max = nullptr;
    CLI::Option *opt_d_step = nullptr;
    CLI::Option *opt_trials = nullptr;
    CLI::Option *opt_methods = nullptr;
    CLI::Option *opt_seed = nullptr;
    CLI::Option *opt_metric = nullptr;
    std::size_t n = 0;
    std::size_t m = 0;
    double d_min = 0.0;
    double d_max = 0.0;
    double d_step = 0.0;
    int trials = 0;
    std::vector<std::string> methods;
    std::uint64_t seed = 0;
    std::string metric;
};

void add_common_flags(CLI::App *sub, Overrides &ov, const std::string &default_out)
{
    sub->add_option("--config", ov.config_path, "JSON config file (flat key/value object)");
    ov.out_path = default_out;
    sub->add_option("--out", ov.out_path, "Output CSV path")
        ->capture_default_str();
    ov.opt_n = sub->add_option("--n", ov.n, "Reflecting element count (replaces the configured list)");
    ov.opt_m = sub->add_option("--m", ov.m, "Relay antenna count");
    ov.opt_d_min = sub->add_option("--d-min", ov.d_min, "Sweep start distance, meters");
    ov.opt_d_max = sub->add_option("--d-max", ov.d_max, "Sweep end distance, meters");
    ov.opt_d_step = sub->add_option("--d-step", ov.d_step, "Sweep step, meters");
    ov.opt_trials = sub->add_option("--trials", ov.trials, "Monte Carlo trials per sweep point");
    ov.opt_methods = sub->add_option("--methods", ov.methods,
                                     "Comma-separated methods: evd,maxmin,gpi,random,only_rs")
                         ->delimiter(',');
    ov.opt_seed = sub->add_option("--seed", ov.seed, "Master seed");
    ov.opt_metric =
        sub->add_option("--metric", ov.metric, "Reported rate: system, slot1_sum, slot1_min");
}

twirs::ExperimentConfig build_config(const Overrides &ov)
{
    twirs::ExperimentConfig cfg;
    if (!ov.config_path.empty())
        cfg = twirs::load_config(ov.config_path);
    if (*ov.opt_n)
        cfg.element_counts = {ov.n};
    if (*ov.opt_m)
        cfg.m_antennas = ov.m;
    if (*ov.opt_d_min)
        cfg.d_min = ov.d_min;
    if (*ov.opt_d_max)
        cfg.d_max = ov.d_max;
    if (*ov.opt_d_step)
        cfg.d_step = ov.d_step;
    if (*ov.opt_trials)
        cfg.trials = ov.trials;
    if (*ov.opt_methods)
    {
        cfg.methods.clear();
        for (const std::string &name : ov.methods)
            cfg.methods.push_back(twirs::method_from_name(name));
    }
    if (*ov.opt_seed)
        cfg.seed = ov.seed;
    if (*ov.opt_metric)
        cfg.rate_metric = twirs::rate_metric_from_name(ov.metric);
    return cfg;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Two-way relay link simulator with a reflecting surface"};
    app.require_subcommand(1);

    Overrides ov_dist, ov_size, ov_conv;
    CLI::App *dist = app.add_subcommand("sweep-distance",
                                        "Mean rate versus relay/surface placement d");
    add_common_flags(dist, ov_dist, "sweep_distance.csv");
    CLI::App *size = app.add_subcommand("sweep-size",
                                        "Mean rate versus reflecting element count at d = 50");
    add_common_flags(size, ov_size, "sweep_size.csv");
    CLI::App *conv = app.add_subcommand("convergence",
                                        "Per-iteration optimizer traces at d = 50");
    add_common_flags(conv, ov_conv, "convergence.csv");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (dist->parsed())
        {
            const twirs::ExperimentConfig cfg = build_config(ov_dist);
            twirs::write_csv(twirs::run_distance_sweep(cfg), ov_dist.out_path);
            std::cout << "wrote " << ov_dist.out_path << '\n';
        }
        else if (size->parsed())
        {
            const twirs::ExperimentConfig cfg = build_config(ov_size);
            twirs::write_csv(twirs::run_size_sweep(cfg), ov_size.out_path);
            std::cout << "wrote " << ov_size.out_path << '\n';
        }
        else
        {
            twirs::ExperimentConfig cfg = build_config(ov_conv);
            if (!*ov_conv.opt_methods)
                cfg.methods = {twirs::Method::gpi};
            twirs::write_csv(twirs::run_convergence_trace(cfg), ov_conv.out_path);
            std::cout << "wrote " << ov_conv.out_path << '\n';
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

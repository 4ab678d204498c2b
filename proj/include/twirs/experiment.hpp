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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twirs/channel.hpp"
#include "twirs/optimizers.hpp"

namespace twirs
{

enum class RateMetric
{
    system,    // half-duplex two-slot exchange rate
    slot1_sum, // sum of the two uplink rates
    slot1_min  // min of the two uplink rates
};

const char *rate_metric_name(RateMetric m);
RateMetric rate_metric_from_name(const std::string &name); // throws std::invalid_argument

// Monte Carlo experiment description. Serialized as a flat JSON object whose
// keys are exactly the field names below, with LinkBudget and GpiConfig
// flattened into the same namespace.
struct ExperimentConfig
{
    double d_min = 10.0;  // relay/surface x offset sweep start, meters
    double d_max = 90.0;
    double d_step = 10.0;
    std::vector<std::size_t> element_counts = {16, 32, 64, 80, 128};
    std::size_t m_antennas = 2;
    int trials = 500;
    std::vector<Method> methods = {Method::evd, Method::maxmin, Method::gpi, Method::random,
                                   Method::only_rs};
    std::uint64_t seed = 1;
    LinkBudget budget;
    GpiConfig gpi;
    int draws = 1000; // randomization candidates for the max-min solver
    RateMetric rate_metric = RateMetric::system;

    void validate() const; // throws std::invalid_argument naming the field
};

// One aggregated (sweep point, method) cell.
struct SweepRow
{
    std::string method;
    std::string sweep_name; // "d_m" or "n_elements"
    double sweep_value = 0.0;
    std::size_t n_elements = 0;
    std::size_t m_antennas = 0;
    int trials = 0;
    double mean_rate = 0.0; // bits/s/Hz
    double std_rate = 0.0;  // sample standard deviation (n - 1)
    double ci95_halfwidth = 0.0;
};

// One optimizer iterate: objective is the rate-product surrogate, rate its
// log2, the first-slot sum rate at that iterate.
struct ConvergenceRow
{
    std::string method;
    std::size_t n = 0;
    int trial = 0;
    int iteration = 0;
    double objective = 0.0;
    double rate = 0.0;
};

// Rate versus relay/surface placement d, element count fixed at
// element_counts.front(). Trial seeds derive from (seed, point index, trial
// index), so every method at a point sees identical channel draws and
// shrinking `trials` reproduces a prefix of the longer run.
std::vector<SweepRow> run_distance_sweep(const ExperimentConfig &cfg);

// Rate versus element count at d = 50. The max-min solver is skipped above
// 128 elements (noticed on stderr): its projection solver scales too steeply.
std::vector<SweepRow> run_size_sweep(const ExperimentConfig &cfg);

// Per-iteration objective traces at d = 50 for each configured element
// count; requires methods == {gpi}.
std::vector<ConvergenceRow> run_convergence_trace(const ExperimentConfig &cfg);

// Parses a flat JSON object; an empty (or whitespace-only) file yields the
// defaults; unknown keys and malformed values are errors naming the key.
ExperimentConfig load_config(const std::string &path);

// Header row plus one line per row; UTF-8, '\n' endings, shortest
// round-trip number formatting.
void write_csv(const std::vector<SweepRow> &rows, const std::string &path);
void write_csv(const std::vector<ConvergenceRow> &rows, const std::string &path);

} // namespace twirs

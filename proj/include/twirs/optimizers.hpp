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

#include <string>
#include <utility>

#include "twirs/channel.hpp"
#include "twirs/rate.hpp"
#include "twirs/rng.hpp"
#include "twirs/types.hpp"

namespace twirs
{

// Thrown by extract_unit_modulus when the reference component vanishes;
// callers fall back to treating its phase as zero.
class extraction_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// [H_IR * diag(h_ui), h_direct]: M x (N+1) matrices whose product with
// [theta; 1] reproduces the slot-1 effective channels.
struct AugmentedChannels
{
    CMat hbar_sir;
    CMat hbar_dir;
};

struct GpiConfig
{
    double kappa = 1e-6; // stop when the iterate moves less than this
    int max_iter = 100;
};

struct OptResult
{
    PhaseVector theta;
    std::vector<double> objective_trace;
    int iterations = 0;
    std::string method;
    bool converged = true;
};

// H = P_S diag(h_SI)^H H_IR^H H_IR diag(h_SI) + P_D (same with h_DI):
// theta^H H theta is the total reflected receive power at the relay.
CMat build_receive_power_matrix(const ChannelSet &chans);

// Principal-eigenvector phase selection: theta_i = exp(j arg u1_i) where u1
// is the top eigenvector of the receive-power matrix.
OptResult max_rps_evd(const ChannelSet &chans);

AugmentedChannels build_augmented_channels(const ChannelSet &chans);

// Max-min of the two slot-1 rates via the rank-relaxed semidefinite program
// plus Gaussian randomization. The overload without a stream derives one
// from a fixed constant, making the call a pure function of its arguments.
OptResult max_min_r(const ChannelSet &chans, int draws);
OptResult max_min_r(const ChannelSet &chans, int draws, RandomStream &rng);

// A_X = I/(N+1) + p_X/sigma_R^2 * Hbar_XIR^H Hbar_XIR: on the sphere
// ||theta_bar||^2 = N+1 with unit-modulus entries, theta_bar^H A_X theta_bar
// equals 2^(slot-1 rate of link X).
std::pair<CMat, CMat> build_gpi_matrices(const ChannelSet &chans);

// One generalized power iteration: y = A(theta_bar) * theta_bar / (2||theta_bar||^2)
// with A(t) = (t^H A_S t) A_D + (t^H A_D t) A_S, rescaled to ||y||^2 = N+1.
CVec gpi_step(const CMat &a_s, const CMat &a_d, const CVec &theta_bar);

struct GpiStepResult
{
    CVec theta_bar;
    double objective = 0.0;
    bool accepted = false; // false: no non-decreasing step found, input returned
};

// gpi_step plus the monotonicity safeguard: if the step would decrease the
// product objective, blend halfway back toward the input (up to 10 times);
// if the objective still decreases, return the input unchanged.
GpiStepResult gpi_safeguarded_step(const CMat &a_s, const CMat &a_d, const CVec &theta_bar,
                                   double objective);

// Sum-rate maximization by generalized power iteration from the all-ones
// start; objective_trace records the product objective per iterate.
OptResult max_sr_gpi(const ChannelSet &chans, const GpiConfig &cfg = {});

// theta_i = exp(j(arg theta_bar_i - arg theta_bar_N)), dropping the
// homogenization component. Throws extraction_error when that component's
// modulus is below 1e-12 * ||theta_bar||_inf.
PhaseVector extract_unit_modulus(const CVec &theta_bar);

// i.i.d. phases uniform on [0, 2*pi).
PhaseVector random_phase(std::size_t n, RandomStream &rng);

enum class Method
{
    evd,
    maxmin,
    gpi,
    random,
    only_rs
};

const char *method_name(Method m);
Method method_from_name(const std::string &name); // throws std::invalid_argument

// Optimize the second-slot phases by reusing the slot-1 machinery: under the
// substitution phi = -psi the slot-2 effective channels take the slot-1 form,
// with both links driven by the relay power and received under the terminal
// noise floors. Supports evd, maxmin, and gpi.
PhaseVector optimize_second_slot(const ChannelSet &chans, Method method, int draws,
                                 const GpiConfig &cfg, RandomStream *rng = nullptr);

} // namespace twirs

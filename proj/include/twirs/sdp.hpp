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

#include <utility>

#include "twirs/rng.hpp"
#include "twirs/types.hpp"

namespace twirs
{

class solver_error : public std::runtime_error
{
  public:
    solver_error(const std::string &msg, double t, double residual)
        : std::runtime_error(msg), t_value(t), residual(residual)
    {
    }
    double t_value;
    double residual;
};

// The rank-relaxed max-min program: maximize t subject to Theta_bar PSD with
// unit diagonal and tr(Theta_bar * M_X) >= (2^t - 1) * sigma2 / p_X for both
// links X in {S, D}, where M_X = Hbar_XIR^H Hbar_XIR.
struct MaxMinSdpInstance
{
    CMat m_s;
    CMat m_d;
    double p_s_w = 1.0;
    double p_d_w = 1.0;
    double sigma2_r_w = 1.0;
};

struct SdpSolution
{
    CMat theta_bar;
    double t_star = 0.0;
    double feasibility_residual = 0.0;
    int bisection_iters = 0;
    // Final top of the bisection bracket and whether it was classified
    // infeasible by projection (as opposed to being the analytic bound).
    double bracket_upper = 0.0;
    bool upper_classified_infeasible = false;
};

// (2^t - 1) * noise / power: the trace threshold a rate target t induces.
double rate_threshold(double t, double power_w, double noise_w);

// Dykstra alternating projections between the PSD cone, the unit-diagonal
// affine set, and the two trace half-spaces at rate target t. Returns the
// final iterate and the maximum constraint violation, measured with each
// trace constraint scaled by 1/||M_X||_F so the feasibility thresholds are
// meaningful at any channel-power level.
std::pair<CMat, double> feasibility_project(const MaxMinSdpInstance &inst, double t,
                                            int max_sweeps = 2000);

// Bisection on t with feasibility_project as the classifier (feasible iff
// residual <= 1e-7), down to bracket width 1e-4 bits. The lower end of the
// bracket is seeded with exactly feasible rank-one certificates so the
// returned iterate is always genuinely feasible at t_star.
SdpSolution solve_maxmin_sdp(const MaxMinSdpInstance &inst);

// Draws candidates xi ~ CN(0, Theta_bar), phase-projects them (plus the
// principal eigenvector of Theta_bar), and returns the unit-modulus
// (N+1)-vector achieving the largest min(R_SIR, R_DIR).
CVec gaussian_randomization(const CMat &theta_bar, const MaxMinSdpInstance &inst, int draws,
                            RandomStream &rng);

} // namespace twirs

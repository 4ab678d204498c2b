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

#include "twirs/rng.hpp"
#include "twirs/types.hpp"

namespace twirs
{

class geometry_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Vec3 &a, const Vec3 &b);

// Node placement. The standard layout puts the source at the origin, the
// destination 100 m away on the x axis, and hangs the reflecting surface and
// the relay off a common x offset d: IRS at (d, 10, 30), relay at (d, -10, 10).
struct Geometry
{
    Vec3 pos_s;
    Vec3 pos_d;
    Vec3 pos_irs;
    Vec3 pos_rs;
    std::size_t n_elements = 1;
    std::size_t m_antennas = 1;

    static Geometry standard(double d, std::size_t n_elements, std::size_t m_antennas);

    void validate() const; // throws geometry_error
};

// Powers, noise floors, and log-distance path-loss parameters.
struct LinkBudget
{
    double pl0_db = -30.0; // gain at the reference distance
    double d0_m = 1.0;
    double alpha_sr = 3.5;
    double alpha_dr = 3.5;
    double alpha_si = 2.5;
    double alpha_di = 2.5;
    double alpha_ir = 2.5;
    double p_s_w = 1.0;
    double p_d_w = 1.0;
    double p_r_w = 1.0;
    double sigma2_s_w = 3.9810717055349725e-12; // -84 dBm
    double sigma2_d_w = 3.9810717055349725e-12;
    double sigma2_r_w = 3.9810717055349725e-12;

    void validate() const; // throws std::invalid_argument
};

// One Rayleigh-fading realization of every first-slot channel. Second-slot
// channels are not stored: reciprocity makes them conjugate transposes.
struct ChannelSet
{
    CVec h_sr; // source  -> relay, length M
    CVec h_dr; // dest    -> relay, length M
    CVec h_si; // source  -> IRS,   length N
    CVec h_di; // dest    -> IRS,   length N
    CMat h_ir; // IRS     -> relay, M x N
    LinkBudget budget;
};

double dbm_to_watt(double x_dbm);

// PL0 - 10 * alpha * log10(d / d0), in dB.
double path_loss_db(double d_m, double alpha, const LinkBudget &budget);

// Linear per-entry channel power 10^(PL(|a-b|)/10).
double link_gain_linear(const Vec3 &a, const Vec3 &b, double alpha, const LinkBudget &budget);

// Entries are i.i.d. circularly-symmetric complex normal with per-entry
// variance equal to the link gain. Field order is fixed (h_sr, h_dr, h_si,
// h_di, then h_ir column-major, one draw per entry) so a given seed always
// produces the same realization.
ChannelSet generate_channel_set(const Geometry &geom, const LinkBudget &budget, RandomStream &rng);

} // namespace twirs

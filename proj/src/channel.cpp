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

#include "twirs/channel.hpp"

#include <cmath>

namespace twirs
{

double distance(const Vec3 &a, const Vec3 &b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Geometry Geometry::standard(double d, std::size_t n_elements, std::size_t m_antennas)
{
    Geometry g;
    g.pos_s = {0.0, 0.0, 0.0};
    g.pos_d = {100.0, 0.0, 0.0};
    g.pos_irs = {d, 10.0, 30.0};
    g.pos_rs = {d, -10.0, 10.0};
    g.n_elements = n_elements;
    g.m_antennas = m_antennas;
    g.validate();
    return g;
}

void Geometry::validate() const
{
    if (n_elements < 1)
        throw geometry_error("Geometry: n_elements must be >= 1");
    if (m_antennas < 1)
        throw geometry_error("Geometry: m_antennas must be >= 1");
    const Vec3 nodes[4] = {pos_s, pos_d, pos_irs, pos_rs};
    const char *names[4] = {"S", "D", "IRS", "RS"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (distance(nodes[i], nodes[j]) <= 0.0)
                throw geometry_error(std::string("Geometry: nodes ") + names[i] + " and " +
                                     names[j] + " coincide");
}

void LinkBudget::validate() const
{
    const double powers[6] = {p_s_w, p_d_w, p_r_w, sigma2_s_w, sigma2_d_w, sigma2_r_w};
    const char *pnames[6] = {"p_s_w", "p_d_w", "p_r_w", "sigma2_s_w", "sigma2_d_w", "sigma2_r_w"};
    for (int i = 0; i < 6; ++i)
        if (!(powers[i] > 0.0) || !std::isfinite(powers[i]))
            throw std::invalid_argument(std::string("LinkBudget: ") + pnames[i] +
                                        " must be positive and finite");
    const double alphas[5] = {alpha_sr, alpha_dr, alpha_si, alpha_di, alpha_ir};
    const char *anames[5] = {"alpha_sr", "alpha_dr", "alpha_si", "alpha_di", "alpha_ir"};
    for (int i = 0; i < 5; ++i)
        if (!(alphas[i] > 0.0) || !std::isfinite(alphas[i]))
            throw std::invalid_argument(std::string("LinkBudget: ") + anames[i] +
                                        " must be positive and finite");
    if (!(d0_m > 0.0) || !std::isfinite(d0_m))
        throw std::invalid_argument("LinkBudget: d0_m must be positive and finite");
    if (!std::isfinite(pl0_db))
        throw std::invalid_argument("LinkBudget: pl0_db must be finite");
}

double dbm_to_watt(double x_dbm)
{
    if (!std::isfinite(x_dbm))
        throw std::invalid_argument("dbm_to_watt: non-finite input");
    return std::pow(10.0, (x_dbm - 30.0) / 10.0);
}

double path_loss_db(double d_m, double alpha, const LinkBudget &budget)
{
    if (!(d_m > 0.0))
        throw geometry_error("path_loss_db: distance must be positive, got " +
                             std::to_string(d_m));
    return budget.pl0_db - 10.0 * alpha * std::log10(d_m / budget.d0_m);
}

double link_gain_linear(const Vec3 &a, const Vec3 &b, double alpha, const LinkBudget &budget)
{
    const double d = distance(a, b);
    if (d <= 0.0)
        throw geometry_error("link_gain_linear: coincident positions");
    return std::pow(10.0, path_loss_db(d, alpha, budget) / 10.0);
}

namespace
{

void fill_faded(CVec &out, std::size_t n, double gain, RandomStream &rng)
{
    const double amp = std::sqrt(gain);
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = amp * rng.complex_normal();
}

} // namespace

ChannelSet generate_channel_set(const Geometry &geom, const LinkBudget &budget, RandomStream &rng)
{
    geom.validate();
    budget.validate();

    const double g_sr = link_gain_linear(geom.pos_s, geom.pos_rs, budget.alpha_sr, budget);
    const double g_dr = link_gain_linear(geom.pos_d, geom.pos_rs, budget.alpha_dr, budget);
    const double g_si = link_gain_linear(geom.pos_s, geom.pos_irs, budget.alpha_si, budget);
    const double g_di = link_gain_linear(geom.pos_d, geom.pos_irs, budget.alpha_di, budget);
    const double g_ir = link_gain_linear(geom.pos_irs, geom.pos_rs, budget.alpha_ir, budget);

    const std::size_t m = geom.m_antennas;
    const std::size_t n = geom.n_elements;

    ChannelSet cs;
    cs.budget = budget;
    fill_faded(cs.h_sr, m, g_sr, rng);
    fill_faded(cs.h_dr, m, g_dr, rng);
    fill_faded(cs.h_si, n, g_si, rng);
    fill_faded(cs.h_di, n, g_di, rng);

    cs.h_ir = CMat(m, n);
    const double amp_ir = std::sqrt(g_ir);
    for (std::size_t c = 0; c < n; ++c)
    {
        cdouble *col = cs.h_ir.col(c);
        for (std::size_t r = 0; r < m; ++r)
            col[r] = amp_ir * rng.complex_normal();
    }
    return cs;
}

} // namespace twirs

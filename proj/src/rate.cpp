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

#include "twirs/rate.hpp"

#include <algorithm>
#include <cmath>

namespace twirs
{

PhaseVector::PhaseVector(CVec coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw std::invalid_argument("PhaseVector: must hold at least one coefficient");
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
    {
        const double a = std::abs(coeffs_[i]);
        if (!std::isfinite(a) || std::abs(a - 1.0) > 1e-12)
            throw std::invalid_argument("PhaseVector: entry " + std::to_string(i) +
                                        " is not unit modulus");
    }
}

PhaseVector PhaseVector::all_ones(std::size_t n)
{
    return PhaseVector(CVec(n, cdouble(1.0, 0.0)));
}

PhaseVector PhaseVector::from_angles(const std::vector<double> &angles)
{
    CVec c(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i)
        c[i] = std::polar(1.0, angles[i]);
    return PhaseVector(std::move(c));
}

PhaseVector PhaseVector::conjugated() const
{
    CVec c(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        c[i] = std::conj(coeffs_[i]);
    return PhaseVector(std::move(c));
}

CVec effective_channel(const CVec &h_direct, const CMat &h_ir, const CVec &h_ui,
                       const PhaseVector &theta)
{
    if (h_ir.rows() != h_direct.size() || h_ir.cols() != h_ui.size() ||
        theta.size() != h_ui.size())
        throw std::invalid_argument("effective_channel: dimension mismatch (direct " +
                                    std::to_string(h_direct.size()) + ", cascade " +
                                    std::to_string(h_ir.rows()) + "x" +
                                    std::to_string(h_ir.cols()) + ", surface " +
                                    std::to_string(theta.size()) + ")");
    CVec h = h_direct;
    for (std::size_t c = 0; c < h_ir.cols(); ++c)
    {
        const cdouble w = theta[c] * h_ui[c];
        if (w == cdouble(0.0))
            continue;
        const cdouble *col = h_ir.col(c);
        for (std::size_t r = 0; r < h.size(); ++r)
            h[r] += col[r] * w;
    }
    return h;
}

CVec second_slot_channel(const CVec &h_direct, const CMat &h_ir, const CVec &h_ui,
                         const PhaseVector &psi)
{
    return effective_channel(h_direct, h_ir, h_ui, psi.conjugated());
}

double link_rate(double power_w, const CVec &h, double noise_w)
{
    if (!(power_w > 0.0))
        throw std::invalid_argument("link_rate: power must be positive");
    if (!(noise_w > 0.0))
        throw std::invalid_argument("link_rate: noise must be positive");
    double p = 0.0;
    for (const cdouble &v : h)
        p += std::norm(v);
    return std::log2(1.0 + power_w * p / noise_w);
}

RateReport full_report(const ChannelSet &chans, const PhaseVector &theta, const PhaseVector &psi)
{
    const LinkBudget &b = chans.budget;

    const CVec h_sir = effective_channel(chans.h_sr, chans.h_ir, chans.h_si, theta);
    const CVec h_dir = effective_channel(chans.h_dr, chans.h_ir, chans.h_di, theta);
    const CVec h_ris = second_slot_channel(chans.h_sr, chans.h_ir, chans.h_si, psi);
    const CVec h_rid = second_slot_channel(chans.h_dr, chans.h_ir, chans.h_di, psi);

    RateReport r;
    r.r_sir = link_rate(b.p_s_w, h_sir, b.sigma2_r_w);
    r.r_dir = link_rate(b.p_d_w, h_dir, b.sigma2_r_w);
    r.r_ris = link_rate(b.p_r_w, h_ris, b.sigma2_s_w);
    r.r_rid = link_rate(b.p_r_w, h_rid, b.sigma2_d_w);
    r.sum_first_slot = r.r_sir + r.r_dir;
    r.min_first_slot = std::min(r.r_sir, r.r_dir);
    r.system_rate = 0.5 * (std::min(r.r_sir, r.r_rid) + std::min(r.r_dir, r.r_ris));
    return r;
}

} // namespace twirs

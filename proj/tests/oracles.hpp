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
//
// Reference implementations used only by tests: an independent eigensolver,
// brute-force phase grids, and distribution statistics. Deliberately slow
// and simple so they can serve as oracles for the production code.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "twirs/channel.hpp"
#include "twirs/numerics.hpp"
#include "twirs/rate.hpp"
#include "twirs/rng.hpp"
#include "twirs/types.hpp"

namespace oracles
{

using twirs::cdouble;
using twirs::CMat;
using twirs::CVec;

// Cyclic Jacobi eigendecomposition for Hermitian matrices. Independent of
// the production Householder + QL path; O(n^4)-ish but exact to roundoff.
inline twirs::EigenDecomposition jacobi_eigen(const CMat &input)
{
    const std::size_t n = input.rows();
    CMat a = input;
    CMat v = CMat::identity(n);

    const double norm = twirs::norm_fro(a);
    for (int sweep = 0; sweep < 100; ++sweep)
    {
        double off = 0.0;
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t p = 0; p < q; ++p)
                off += std::norm(a(p, q));
        if (std::sqrt(2.0 * off) <= 1e-14 * std::max(1.0, norm))
            break;
        for (std::size_t q = 1; q < n; ++q)
        {
            for (std::size_t p = 0; p < q; ++p)
            {
                const cdouble apq = a(p, q);
                if (std::abs(apq) == 0.0)
                    continue;
                // J = diag(1, e^{-j phi}) * [[c, -s],[s, c]] zeroes (p, q) of
                // J^H A J; apply A <- J^H (A J), accumulate V <- V J.
                const double phi = std::arg(apq);
                const double theta =
                    0.5 * std::atan2(2.0 * std::abs(apq), a(p, p).real() - a(q, q).real());
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cdouble ep = std::polar(1.0, -phi);
                const cdouble j00 = c, j01 = -s, j10 = s * ep, j11 = c * ep;
                for (std::size_t k = 0; k < n; ++k)
                {
                    const cdouble akp = a(k, p);
                    const cdouble akq = a(k, q);
                    a(k, p) = akp * j00 + akq * j10;
                    a(k, q) = akp * j01 + akq * j11;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const cdouble apk = a(p, k);
                    const cdouble aqk = a(q, k);
                    a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
                    a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const cdouble vkp = v(k, p);
                    const cdouble vkq = v(k, q);
                    v(k, p) = vkp * j00 + vkq * j10;
                    v(k, q) = vkp * j01 + vkq * j11;
                }
            }
        }
    }

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    twirs::EigenDecomposition ed;
    ed.values.resize(n);
    ed.vectors = CMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
    {
        ed.values[i] = a(perm[i], perm[i]).real();
        for (std::size_t k = 0; k < n; ++k)
            ed.vectors(k, i) = v(k, perm[i]);
    }
    return ed;
}

// Exhaustive search over an n-dimensional phase grid (n is meant to be 1 or
// 2). Returns the best objective value found.
inline double grid_search_phases(std::size_t n, double step_deg,
                                 const std::function<double(const twirs::PhaseVector &)> &eval)
{
    const int steps = static_cast<int>(std::lround(360.0 / step_deg));
    std::vector<double> angles(n, 0.0);
    double best = -std::numeric_limits<double>::infinity();
    std::function<void(std::size_t)> recurse = [&](std::size_t dim) {
        if (dim == n)
        {
            best = std::max(best, eval(twirs::PhaseVector::from_angles(angles)));
            return;
        }
        for (int k = 0; k < steps; ++k)
        {
            angles[dim] = k * step_deg * M_PI / 180.0;
            recurse(dim + 1);
        }
    };
    recurse(0);
    return best;
}

inline twirs::ChannelSet random_channel_set(std::size_t n, std::size_t m, double d,
                                            std::uint64_t seed)
{
    twirs::RandomStream rng(seed);
    return twirs::generate_channel_set(twirs::Geometry::standard(d, n, m), twirs::LinkBudget{},
                                       rng);
}

inline CMat random_complex(std::size_t n, twirs::RandomStream &rng)
{
    CMat g(n, n);
    for (std::size_t i = 0; i < n * n; ++i)
        g.data()[i] = rng.complex_normal();
    return g;
}

inline CMat random_hermitian(std::size_t n, twirs::RandomStream &rng)
{
    const CMat g = random_complex(n, rng);
    CMat h(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

inline CMat random_psd(std::size_t n, twirs::RandomStream &rng)
{
    return twirs::gram(random_complex(n, rng));
}

inline double slot1_sum_rate(const twirs::ChannelSet &chans, const twirs::PhaseVector &theta)
{
    const CVec h_sir = twirs::effective_channel(chans.h_sr, chans.h_ir, chans.h_si, theta);
    const CVec h_dir = twirs::effective_channel(chans.h_dr, chans.h_ir, chans.h_di, theta);
    return twirs::link_rate(chans.budget.p_s_w, h_sir, chans.budget.sigma2_r_w) +
           twirs::link_rate(chans.budget.p_d_w, h_dir, chans.budget.sigma2_r_w);
}

inline double slot1_min_rate(const twirs::ChannelSet &chans, const twirs::PhaseVector &theta)
{
    const CVec h_sir = twirs::effective_channel(chans.h_sr, chans.h_ir, chans.h_si, theta);
    const CVec h_dir = twirs::effective_channel(chans.h_dr, chans.h_ir, chans.h_di, theta);
    return std::min(twirs::link_rate(chans.budget.p_s_w, h_sir, chans.budget.sigma2_r_w),
                    twirs::link_rate(chans.budget.p_d_w, h_dir, chans.budget.sigma2_r_w));
}

inline double receive_power(const CMat &h, const twirs::PhaseVector &theta)
{
    return twirs::inner(theta.coeffs(), twirs::matvec(h, theta.coeffs())).real();
}

// Two-sided Kolmogorov-Smirnov statistic of |samples| against the Rayleigh
// CDF 1 - exp(-x^2 / (2 sigma^2)).
inline double ks_rayleigh(std::vector<double> magnitudes, double sigma)
{
    std::sort(magnitudes.begin(), magnitudes.end());
    const double n = static_cast<double>(magnitudes.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < magnitudes.size(); ++i)
    {
        const double x = magnitudes[i];
        const double cdf = 1.0 - std::exp(-x * x / (2.0 * sigma * sigma));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    return ks;
}

} // namespace oracles

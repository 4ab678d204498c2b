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

#include "twirs/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twirs/numerics.hpp"
#include "twirs/sdp.hpp"

namespace twirs
{

namespace
{

// Stream used by the max_min_r overload without an explicit stream.
constexpr std::uint64_t MAXMIN_DEFAULT_SEED = 0x74776972735F6D6DULL;

double quad_form(const CMat &a, const CVec &x)
{
    return inner(x, matvec(a, x)).real();
}

PhaseVector extract_or_zero_reference(const CVec &theta_bar)
{
    try
    {
        return extract_unit_modulus(theta_bar);
    }
    catch (const extraction_error &)
    {
        // Reference component vanished; its phase is taken as zero.
        CVec c(theta_bar.size() - 1);
        for (std::size_t i = 0; i + 1 < theta_bar.size(); ++i)
            c[i] = std::polar(1.0, phase_of(theta_bar[i]));
        return PhaseVector(std::move(c));
    }
}

} // namespace

CMat build_receive_power_matrix(const ChannelSet &chans)
{
    const std::size_t n = chans.h_si.size();
    if (chans.h_di.size() != n || chans.h_ir.cols() != n)
        throw std::invalid_argument("build_receive_power_matrix: inconsistent element count");

    const CMat c = gram(chans.h_ir); // H_IR^H H_IR
    const double ps = chans.budget.p_s_w;
    const double pd = chans.budget.p_d_w;

    CMat h(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t i = 0; i < j; ++i)
        {
            const cdouble v = c(i, j) * (ps * std::conj(chans.h_si[i]) * chans.h_si[j] +
                                         pd * std::conj(chans.h_di[i]) * chans.h_di[j]);
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
        h(j, j) = c(j, j).real() *
                  (ps * std::norm(chans.h_si[j]) + pd * std::norm(chans.h_di[j]));
    }
    return h;
}

OptResult max_rps_evd(const ChannelSet &chans)
{
    const CMat h = build_receive_power_matrix(chans);
    const EigPair top = principal_eigpair(h);

    CVec c(h.rows());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = std::polar(1.0, phase_of(top.vector[i]));

    OptResult r;
    r.theta = PhaseVector(std::move(c));
    r.objective_trace = {inner(r.theta.coeffs(), matvec(h, r.theta.coeffs())).real()};
    r.iterations = 1;
    r.method = method_name(Method::evd);
    return r;
}

AugmentedChannels build_augmented_channels(const ChannelSet &chans)
{
    const std::size_t m = chans.h_sr.size();
    const std::size_t n = chans.h_si.size();
    if (chans.h_dr.size() != m || chans.h_di.size() != n || chans.h_ir.rows() != m ||
        chans.h_ir.cols() != n)
        throw std::invalid_argument("build_augmented_channels: inconsistent channel shapes");

    AugmentedChannels aug;
    aug.hbar_sir = CMat(m, n + 1);
    aug.hbar_dir = CMat(m, n + 1);
    for (std::size_t c = 0; c < n; ++c)
    {
        const cdouble *src = chans.h_ir.col(c);
        cdouble *cs = aug.hbar_sir.col(c);
        cdouble *cd = aug.hbar_dir.col(c);
        for (std::size_t r = 0; r < m; ++r)
        {
            cs[r] = src[r] * chans.h_si[c];
            cd[r] = src[r] * chans.h_di[c];
        }
    }
    std::copy(chans.h_sr.begin(), chans.h_sr.end(), aug.hbar_sir.col(n));
    std::copy(chans.h_dr.begin(), chans.h_dr.end(), aug.hbar_dir.col(n));
    return aug;
}

OptResult max_min_r(const ChannelSet &chans, int draws)
{
    RandomStream rng(MAXMIN_DEFAULT_SEED);
    return max_min_r(chans, draws, rng);
}

OptResult max_min_r(const ChannelSet &chans, int draws, RandomStream &rng)
{
    if (draws < 1)
        throw std::invalid_argument("max_min_r: draws must be >= 1");

    const AugmentedChannels aug = build_augmented_channels(chans);
    MaxMinSdpInstance inst;
    inst.m_s = gram(aug.hbar_sir);
    inst.m_d = gram(aug.hbar_dir);
    inst.p_s_w = chans.budget.p_s_w;
    inst.p_d_w = chans.budget.p_d_w;
    inst.sigma2_r_w = chans.budget.sigma2_r_w;

    const SdpSolution sol = solve_maxmin_sdp(inst);
    const CVec best = gaussian_randomization(sol.theta_bar, inst, draws, rng);

    OptResult r;
    r.theta = extract_or_zero_reference(best);
    const CVec h_sir = effective_channel(chans.h_sr, chans.h_ir, chans.h_si, r.theta);
    const CVec h_dir = effective_channel(chans.h_dr, chans.h_ir, chans.h_di, r.theta);
    const double achieved = std::min(link_rate(inst.p_s_w, h_sir, inst.sigma2_r_w),
                                     link_rate(inst.p_d_w, h_dir, inst.sigma2_r_w));
    r.objective_trace = {achieved};
    r.iterations = sol.bisection_iters;
    r.method = method_name(Method::maxmin);
    return r;
}

std::pair<CMat, CMat> build_gpi_matrices(const ChannelSet &chans)
{
    const AugmentedChannels aug = build_augmented_channels(chans);
    const std::size_t n1 = chans.h_si.size() + 1;
    const double inv = 1.0 / static_cast<double>(n1);
    const double cs = chans.budget.p_s_w / chans.budget.sigma2_r_w;
    const double cd = chans.budget.p_d_w / chans.budget.sigma2_r_w;

    CMat a_s = gram(aug.hbar_sir);
    CMat a_d = gram(aug.hbar_dir);
    cdouble *ps = a_s.data();
    cdouble *pd = a_d.data();
    for (std::size_t i = 0; i < n1 * n1; ++i)
    {
        ps[i] *= cs;
        pd[i] *= cd;
    }
    for (std::size_t i = 0; i < n1; ++i)
    {
        a_s(i, i) += inv;
        a_d(i, i) += inv;
    }
    return {std::move(a_s), std::move(a_d)};
}

CVec gpi_step(const CMat &a_s, const CMat &a_d, const CVec &theta_bar)
{
    const std::size_t n1 = theta_bar.size();
    if (a_s.rows() != n1 || a_s.cols() != n1 || a_d.rows() != n1 || a_d.cols() != n1)
        throw std::invalid_argument("gpi_step: dimension mismatch");
    double nrm2 = 0.0;
    for (const cdouble &x : theta_bar)
        nrm2 += std::norm(x);
    if (nrm2 == 0.0)
        throw std::invalid_argument("gpi_step: zero input vector");

    const CVec ws = matvec(a_s, theta_bar);
    const CVec wd = matvec(a_d, theta_bar);
    const double qs = inner(theta_bar, ws).real();
    const double qd = inner(theta_bar, wd).real();

    // A(t)*t with A(t) = qs*A_D + qd*A_S; B^+ = I/(2||t||^2).
    CVec y(n1);
    const double inv_b = 1.0 / (2.0 * nrm2);
    double ynorm2 = 0.0;
    for (std::size_t i = 0; i < n1; ++i)
    {
        y[i] = (qs * wd[i] + qd * ws[i]) * inv_b;
        ynorm2 += std::norm(y[i]);
    }
    if (ynorm2 == 0.0)
        throw numerical_error("gpi_step: update vector vanished");
    const double scale = std::sqrt(static_cast<double>(n1) / ynorm2);
    for (cdouble &v : y)
        v *= scale;
    return y;
}

GpiStepResult gpi_safeguarded_step(const CMat &a_s, const CMat &a_d, const CVec &theta_bar,
                                   double objective)
{
    const std::size_t n1 = theta_bar.size();
    CVec cand = gpi_step(a_s, a_d, theta_bar);
    double obj = quad_form(a_s, cand) * quad_form(a_d, cand);
    if (obj >= objective)
        return {std::move(cand), obj, true};

    CVec step(n1);
    for (std::size_t i = 0; i < n1; ++i)
        step[i] = cand[i] - theta_bar[i];
    double frac = 0.5;
    for (int halving = 0; halving < 10; ++halving, frac *= 0.5)
    {
        CVec blend(n1);
        double bnorm2 = 0.0;
        for (std::size_t i = 0; i < n1; ++i)
        {
            blend[i] = theta_bar[i] + frac * step[i];
            bnorm2 += std::norm(blend[i]);
        }
        if (bnorm2 == 0.0)
            continue;
        const double scale = std::sqrt(static_cast<double>(n1) / bnorm2);
        for (cdouble &v : blend)
            v *= scale;
        obj = quad_form(a_s, blend) * quad_form(a_d, blend);
        if (obj >= objective)
            return {std::move(blend), obj, true};
    }
    return {theta_bar, objective, false};
}

OptResult max_sr_gpi(const ChannelSet &chans, const GpiConfig &cfg)
{
    if (!(cfg.kappa > 0.0))
        throw std::invalid_argument("max_sr_gpi: kappa must be positive");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("max_sr_gpi: max_iter must be >= 1");

    const auto [a_s, a_d] = build_gpi_matrices(chans);
    const std::size_t n1 = a_s.rows();

    CVec theta_bar(n1, cdouble(1.0, 0.0));
    double obj = quad_form(a_s, theta_bar) * quad_form(a_d, theta_bar);

    OptResult r;
    r.method = method_name(Method::gpi);
    r.objective_trace = {obj};
    r.converged = false;

    for (int k = 1; k <= cfg.max_iter; ++k)
    {
        GpiStepResult st = gpi_safeguarded_step(a_s, a_d, theta_bar, obj);
        r.iterations = k;
        if (!st.accepted)
        {
            // Safeguard found no non-decreasing move: stationary point.
            r.objective_trace.push_back(st.objective);
            r.converged = true;
            break;
        }
        double delta2 = 0.0;
        for (std::size_t i = 0; i < n1; ++i)
            delta2 += std::norm(st.theta_bar[i] - theta_bar[i]);
        theta_bar = std::move(st.theta_bar);
        obj = st.objective;
        r.objective_trace.push_back(obj);
        if (std::sqrt(delta2) < cfg.kappa)
        {
            r.converged = true;
            break;
        }
    }

    r.theta = extract_or_zero_reference(theta_bar);
    return r;
}

PhaseVector extract_unit_modulus(const CVec &theta_bar)
{
    if (theta_bar.size() < 2)
        throw std::invalid_argument("extract_unit_modulus: need at least 2 components");
    double vmax = 0.0;
    for (const cdouble &v : theta_bar)
        vmax = std::max(vmax, std::abs(v));
    const cdouble ref = theta_bar.back();
    if (std::abs(ref) <= 1e-12 * vmax)
        throw extraction_error("extract_unit_modulus: reference component vanishes");
    const double ref_phase = phase_of(ref);

    CVec c(theta_bar.size() - 1);
    for (std::size_t i = 0; i + 1 < theta_bar.size(); ++i)
        c[i] = std::polar(1.0, phase_of(theta_bar[i]) - ref_phase);
    return PhaseVector(std::move(c));
}

PhaseVector random_phase(std::size_t n, RandomStream &rng)
{
    if (n < 1)
        throw std::invalid_argument("random_phase: n must be >= 1");
    CVec c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    return PhaseVector(std::move(c));
}

const char *method_name(Method m)
{
    switch (m)
    {
    case Method::evd:
        return "evd";
    case Method::maxmin:
        return "maxmin";
    case Method::gpi:
        return "gpi";
    case Method::random:
        return "random";
    case Method::only_rs:
        return "only_rs";
    }
    throw std::invalid_argument("method_name: unknown method");
}

Method method_from_name(const std::string &name)
{
    if (name == "evd")
        return Method::evd;
    if (name == "maxmin")
        return Method::maxmin;
    if (name == "gpi")
        return Method::gpi;
    if (name == "random")
        return Method::random;
    if (name == "only_rs")
        return Method::only_rs;
    throw std::invalid_argument("unknown method '" + name + "'");
}

PhaseVector optimize_second_slot(const ChannelSet &chans, Method method, int draws,
                                 const GpiConfig &cfg, RandomStream *rng)
{
    // phi = -psi turns the slot-2 channels h_X + H_IR diag(conj(psi)) h_XI
    // into the slot-1 form; both surrogate links carry the relay power and
    // the per-link SNR coefficients P_R/sigma2_S, P_R/sigma2_D.
    ChannelSet surrogate = chans;
    const LinkBudget &b = chans.budget;
    const double sbar = std::sqrt(b.sigma2_s_w * b.sigma2_d_w);
    surrogate.budget.p_s_w = b.p_r_w * sbar / b.sigma2_s_w;
    surrogate.budget.p_d_w = b.p_r_w * sbar / b.sigma2_d_w;
    surrogate.budget.sigma2_r_w = sbar;

    PhaseVector phi;
    switch (method)
    {
    case Method::evd:
        phi = max_rps_evd(surrogate).theta;
        break;
    case Method::maxmin:
        phi = (rng != nullptr) ? max_min_r(surrogate, draws, *rng).theta
                               : max_min_r(surrogate, draws).theta;
        break;
    case Method::gpi:
        phi = max_sr_gpi(surrogate, cfg).theta;
        break;
    default:
        throw std::invalid_argument(
            "optimize_second_slot: method must be one of evd, maxmin, gpi");
    }
    return phi.conjugated(); // psi = -phi
}

} // namespace twirs

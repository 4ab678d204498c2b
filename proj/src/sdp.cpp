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

#include "twirs/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "twirs/numerics.hpp"

namespace twirs
{

namespace
{

constexpr double TOL_FEASIBLE = 1e-7;
constexpr double BISECTION_RESOLUTION = 1e-4;

struct TraceConstraint
{
    CMat m_hat;   // M / ||M||_F (unit Frobenius norm); empty when M == 0
    double fro = 0.0;
    double power = 1.0;
    double sigma2 = 1.0;

    // Required tr(X * m_hat) at rate target t; meaningless when fro == 0.
    double threshold(double t) const
    {
        return rate_threshold(t, power, sigma2) / fro;
    }
    // Normalized deficit of iterate x; a zero matrix that still demands a
    // positive trace is flagged with a unit sentinel violation.
    double deficit(const CMat &x, double t) const
    {
        if (fro == 0.0)
            return (t > 0.0) ? 1.0 : 0.0;
        return std::max(0.0, threshold(t) - trace_prod_real(x, m_hat));
    }
};

struct SweepPolicy
{
    int max_sweeps = 2000;
    double stop_tol = 1e-9;
    // Plateau detection; disabled when window == 0. Every `window` sweeps
    // (after min_sweeps) the best residual must have improved by the
    // relative factor, else the target is declared out of reach.
    int min_sweeps = 0;
    int window = 0;
    double rel_improve = 0.0;
};

struct ProjectionOutcome
{
    CMat x;
    double residual = 0.0;
    int sweeps = 0;
};

double residual_of(const CMat &x, const TraceConstraint &cs, const TraceConstraint &cd, double t,
                   double psd_deficit)
{
    double diag_dev = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        diag_dev = std::max(diag_dev, std::abs(x(i, i) - cdouble(1.0, 0.0)));
    return std::max({diag_dev, cs.deficit(x, t), cd.deficit(x, t), psd_deficit});
}

// Dykstra-corrected cyclic projections onto the two trace half-spaces, the
// unit-diagonal set, and the PSD cone (in that order, so every sweep ends on
// a PSD iterate and the residual needs no extra eigenvalue pass). Returns
// the iterate with the smallest violation seen.
ProjectionOutcome dykstra_feasibility(const CMat &x0, const TraceConstraint &cs,
                                      const TraceConstraint &cd, double t,
                                      const SweepPolicy &pol)
{
    const std::size_t n = x0.rows();
    CMat x = x0;
    CMat corr_s(n, n), corr_d(n, n), corr_diag(n, n), corr_psd(n, n);

    ProjectionOutcome best;
    best.residual = std::numeric_limits<double>::infinity();
    double plateau_mark = best.residual;

    for (int sweep = 1; sweep <= pol.max_sweeps; ++sweep)
    {
        for (const TraceConstraint *c : {&cs, &cd})
        {
            if (c->fro == 0.0)
                continue;
            CMat &corr = (c == &cs) ? corr_s : corr_d;
            // y = x + correction; project onto the half-space; new correction
            // is y minus the projection.
            const std::size_t total = n * n;
            cdouble *px = x.data();
            cdouble *pc = corr.data();
            for (std::size_t i = 0; i < total; ++i)
                px[i] += pc[i];
            const double v = c->threshold(t) - trace_prod_real(x, c->m_hat);
            if (v > 0.0)
            {
                const cdouble *pm = c->m_hat.data();
                for (std::size_t i = 0; i < total; ++i)
                {
                    pc[i] = -v * pm[i];
                    px[i] += v * pm[i];
                }
            }
            else
            {
                std::fill(pc, pc + total, cdouble(0.0));
            }
        }

        {
            const std::size_t total = n * n;
            cdouble *px = x.data();
            cdouble *pc = corr_diag.data();
            for (std::size_t i = 0; i < total; ++i)
                px[i] += pc[i];
            std::fill(pc, pc + total, cdouble(0.0));
            for (std::size_t i = 0; i < n; ++i)
            {
                corr_diag(i, i) = x(i, i) - cdouble(1.0, 0.0);
                x(i, i) = 1.0;
            }
        }

        {
            const std::size_t total = n * n;
            cdouble *px = x.data();
            cdouble *pc = corr_psd.data();
            for (std::size_t i = 0; i < total; ++i)
                px[i] += pc[i];
            CMat projected = psd_project(x);
            cdouble *pp = projected.data();
            for (std::size_t i = 0; i < total; ++i)
                pc[i] = px[i] - pp[i];
            x = std::move(projected);
        }

        const double res = residual_of(x, cs, cd, t, 0.0);
        if (!std::isfinite(res))
            throw numerical_error("feasibility_project: iterate diverged");
        if (res < best.residual)
        {
            best.residual = res;
            best.x = x;
        }
        best.sweeps = sweep;
        if (res <= pol.stop_tol)
            return best;
        if (pol.window > 0 && sweep >= pol.min_sweeps && sweep % pol.window == 0)
        {
            if (best.residual > plateau_mark * (1.0 - pol.rel_improve))
                break;
            plateau_mark = best.residual;
        }
    }
    return best;
}

void validate_instance(const MaxMinSdpInstance &inst, const char *where)
{
    if (inst.m_s.rows() != inst.m_s.cols() || inst.m_d.rows() != inst.m_d.cols() ||
        inst.m_s.rows() != inst.m_d.rows() || inst.m_s.rows() == 0)
        throw std::invalid_argument(std::string(where) +
                                    ": M_S and M_D must be square with equal dimension");
    require_finite(inst.m_s, where);
    require_finite(inst.m_d, where);
    if (!(inst.p_s_w > 0.0) || !(inst.p_d_w > 0.0) || !(inst.sigma2_r_w > 0.0))
        throw std::invalid_argument(std::string(where) +
                                    ": powers and noise must be positive");
}

TraceConstraint make_constraint(const CMat &m, double power, double sigma2)
{
    TraceConstraint c;
    c.fro = norm_fro(m);
    c.power = power;
    c.sigma2 = sigma2;
    if (c.fro > 0.0)
    {
        c.m_hat = m;
        cdouble *p = c.m_hat.data();
        const std::size_t total = m.rows() * m.cols();
        for (std::size_t i = 0; i < total; ++i)
            p[i] /= c.fro;
    }
    return c;
}

CVec phase_projected(const CVec &v)
{
    CVec c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        c[i] = std::polar(1.0, phase_of(v[i]));
    return c;
}

CMat unit_diag_outer(const CVec &c)
{
    const std::size_t n = c.size();
    CMat x(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t i = 0; i < j; ++i)
        {
            x(i, j) = c[i] * std::conj(c[j]);
            x(j, i) = std::conj(x(i, j));
        }
        x(j, j) = 1.0;
    }
    return x;
}

double quad_form_real(const CMat &a, const CVec &x)
{
    return inner(x, matvec(a, x)).real();
}

double min_rate_of(const MaxMinSdpInstance &inst, const CVec &c)
{
    const double qs = quad_form_real(inst.m_s, c);
    const double qd = quad_form_real(inst.m_d, c);
    return std::min(std::log2(1.0 + inst.p_s_w * std::max(qs, 0.0) / inst.sigma2_r_w),
                    std::log2(1.0 + inst.p_d_w * std::max(qd, 0.0) / inst.sigma2_r_w));
}

} // namespace

double rate_threshold(double t, double power_w, double noise_w)
{
    if (t < 0.0)
        throw std::invalid_argument("rate_threshold: t must be >= 0");
    if (!(power_w > 0.0) || !(noise_w > 0.0))
        throw std::invalid_argument("rate_threshold: power and noise must be positive");
    return (std::exp2(t) - 1.0) * noise_w / power_w;
}

std::pair<CMat, double> feasibility_project(const MaxMinSdpInstance &inst, double t,
                                            int max_sweeps)
{
    validate_instance(inst, "feasibility_project");
    if (t < 0.0)
        throw std::invalid_argument("feasibility_project: t must be >= 0");
    if (max_sweeps < 1)
        throw std::invalid_argument("feasibility_project: max_sweeps must be >= 1");

    const TraceConstraint cs = make_constraint(inst.m_s, inst.p_s_w, inst.sigma2_r_w);
    const TraceConstraint cd = make_constraint(inst.m_d, inst.p_d_w, inst.sigma2_r_w);

    SweepPolicy pol;
    pol.max_sweeps = max_sweeps;
    pol.stop_tol = 1e-9;
    ProjectionOutcome out =
        dykstra_feasibility(CMat::identity(inst.m_s.rows()), cs, cd, t, pol);
    return {std::move(out.x), out.residual};
}

SdpSolution solve_maxmin_sdp(const MaxMinSdpInstance &inst)
{
    validate_instance(inst, "solve_maxmin_sdp");
    const std::size_t n = inst.m_s.rows();

    const TraceConstraint cs = make_constraint(inst.m_s, inst.p_s_w, inst.sigma2_r_w);
    const TraceConstraint cd = make_constraint(inst.m_d, inst.p_d_w, inst.sigma2_r_w);

    SdpSolution sol;
    if (cs.fro == 0.0 || cd.fro == 0.0)
    {
        // One link is identically silent, so its rate is pinned at zero.
        sol.theta_bar = CMat::identity(n);
        return sol;
    }

    // Full decompositions serve three purposes: PSD validation, the spectral
    // upper bound tr(X*M) <= n * lambda_max over unit-diagonal PSD X, and
    // the tighter per-eigenvector bound tr(X*M) <= sum_i lambda_i *
    // (sum_j |v_ij|)^2 over the same set.
    double spectral_bound = 0.0;
    double elliptope_bound = std::numeric_limits<double>::infinity();
    CVec top_s, top_d;
    for (const TraceConstraint *c : {&cs, &cd})
    {
        const EigenDecomposition ed =
            hermitian_eigen((c == &cs) ? inst.m_s : inst.m_d);
        const double lam_max = ed.values.back();
        if (ed.values.front() < -1e-10 * std::max(lam_max, 0.0))
            throw std::invalid_argument("solve_maxmin_sdp: M_S/M_D not PSD within tolerance");
        spectral_bound = std::max(
            spectral_bound,
            std::log2(1.0 + c->power * static_cast<double>(n) * std::max(lam_max, 0.0) /
                                c->sigma2));
        double ell = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (ed.values[i] <= 0.0)
                continue;
            double abs_sum = 0.0;
            const cdouble *v = ed.vectors.col(i);
            for (std::size_t j = 0; j < n; ++j)
                abs_sum += std::abs(v[j]);
            ell += ed.values[i] * abs_sum * abs_sum;
        }
        elliptope_bound =
            std::min(elliptope_bound, std::log2(1.0 + c->power * ell / c->sigma2));
        CVec top(ed.vectors.col(n - 1), ed.vectors.col(n - 1) + n);
        ((c == &cs) ? top_s : top_d) = std::move(top);
    }
    double hi = std::min(spectral_bound, elliptope_bound);

    // Exactly feasible rank-one certificates seed the bracket's lower end.
    std::vector<CVec> certs;
    certs.push_back(CVec(n, cdouble(1.0, 0.0)));
    certs.push_back(phase_projected(top_s));
    certs.push_back(phase_projected(top_d));
    for (const double w : {0.5, 0.25, 0.75})
    {
        CVec mix(n);
        for (std::size_t i = 0; i < n; ++i)
            mix[i] = w * top_s[i] + (1.0 - w) * top_d[i];
        certs.push_back(phase_projected(mix));
    }

    double lo = -1.0;
    const CVec *best_cert = nullptr;
    for (const CVec &c : certs)
    {
        const double t_c = min_rate_of(inst, c);
        if (t_c > lo)
        {
            lo = t_c;
            best_cert = &c;
        }
    }
    if (!(lo >= 0.0) || best_cert == nullptr)
        throw std::logic_error("solve_maxmin_sdp: no nonnegative certificate (t=0 must be feasible)");
    hi = std::max(hi, lo);

    CMat best_x = unit_diag_outer(*best_cert);

    SweepPolicy probe;
    probe.max_sweeps = (n <= 9) ? 2000 : 64;
    probe.stop_tol = TOL_FEASIBLE;
    probe.min_sweeps = 12;
    probe.window = 6;
    probe.rel_improve = 1e-2;

    while (hi - lo > BISECTION_RESOLUTION)
    {
        const double mid = 0.5 * (lo + hi);
        ProjectionOutcome out;
        try
        {
            out = dykstra_feasibility(best_x, cs, cd, mid, probe);
        }
        catch (const numerical_error &e)
        {
            throw solver_error(std::string("solve_maxmin_sdp: ") + e.what(), mid, lo);
        }
        ++sol.bisection_iters;
        if (out.residual <= TOL_FEASIBLE)
        {
            lo = mid;
            best_x = std::move(out.x);
        }
        else
        {
            hi = mid;
            sol.upper_classified_infeasible = true;
        }
    }

    sol.t_star = lo;
    sol.bracket_upper = hi;
    const std::vector<double> spectrum = hermitian_eigenvalues(best_x);
    const double psd_deficit = std::max(0.0, -spectrum.front());
    sol.feasibility_residual = residual_of(best_x, cs, cd, lo, psd_deficit);
    sol.theta_bar = std::move(best_x);
    return sol;
}

CVec gaussian_randomization(const CMat &theta_bar, const MaxMinSdpInstance &inst, int draws,
                            RandomStream &rng)
{
    validate_instance(inst, "gaussian_randomization");
    if (draws < 1)
        throw std::invalid_argument("gaussian_randomization: draws must be >= 1");
    if (theta_bar.rows() != inst.m_s.rows() || theta_bar.cols() != inst.m_s.cols())
        throw std::invalid_argument("gaussian_randomization: dimension mismatch with instance");

    // Clip tolerance-level negative eigenvalues so the sampler's Cholesky
    // sees a genuine covariance.
    const CMat cov = psd_project(theta_bar);

    // The phase-projected principal eigenvector is always in the candidate
    // set; evaluating it first makes it win ties deterministically.
    CVec best = phase_projected(principal_eigpair(theta_bar).vector);
    double best_rate = min_rate_of(inst, best);

    for (int l = 0; l < draws; ++l)
    {
        const CVec xi = sample_complex_gaussian(cov, rng);
        const CVec cand = phase_projected(xi);
        const double r = min_rate_of(inst, cand);
        if (r > best_rate)
        {
            best_rate = r;
            best = cand;
        }
    }
    return best;
}

} // namespace twirs

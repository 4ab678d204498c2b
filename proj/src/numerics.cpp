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

#include "twirs/numerics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

namespace twirs
{

double phase_of(cdouble z)
{
    if (z.real() == 0.0 && z.imag() == 0.0)
        return 0.0;
    return std::arg(z);
}

cdouble unit_phase(cdouble z)
{
    const double a = std::abs(z);
    if (a == 0.0)
        return {1.0, 0.0};
    return z / a;
}

void canonicalize_phase(CVec &v)
{
    double vmax = 0.0;
    for (const cdouble &x : v)
        vmax = std::max(vmax, std::abs(x));
    if (vmax == 0.0)
        return;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        const double a = std::abs(v[i]);
        if (a > 1e-12 * vmax)
        {
            const cdouble rot = std::conj(v[i]) / a;
            for (cdouble &x : v)
                x *= rot;
            v[i] = a; // exactly real after the rotation
            return;
        }
    }
}

namespace
{

double max_abs_entry(const CMat &a)
{
    double m = 0.0;
    const cdouble *p = a.data();
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i)
        m = std::max(m, std::abs(p[i]));
    return m;
}

CMat hermitized_copy(const CMat &a)
{
    const std::size_t n = a.rows();
    CMat w(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t i = 0; i < j; ++i)
        {
            const cdouble v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            w(i, j) = v;
            w(j, i) = std::conj(v);
        }
        w(j, j) = a(j, j).real();
    }
    return w;
}

void require_square_hermitian(const CMat &a, const char *where)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument(std::string(where) + ": matrix is not square");
    require_finite(a, where);
    if (!is_hermitian(a, 1e-8 * (1.0 + max_abs_entry(a))))
        throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian");
}

struct Householder
{
    std::size_t k = 0; // reflector acts on rows/columns k+1 .. n-1
    double beta = 0.0;
    CVec v;
};

// Reduce a Hermitian matrix to real symmetric tridiagonal form
// T = D^H P^H A P D with P a product of Householder reflectors and D a
// diagonal unitary absorbing the subdiagonal phases.
struct Tridiagonal
{
    std::vector<double> d; // diagonal of T
    std::vector<double> e; // subdiagonal of T, e[i] = T(i+1, i) >= 0
    std::vector<Householder> reflectors;
    CVec dphase; // diagonal of D
};

Tridiagonal tridiagonalize(CMat w)
{
    const std::size_t n = w.rows();
    Tridiagonal t;
    t.d.resize(n);
    if (n == 0)
        return t;
    t.e.assign(n > 1 ? n - 1 : 0, 0.0);
    CVec esub(n > 1 ? n - 1 : 0, 0.0);

    for (std::size_t k = 0; k + 2 < n; ++k)
    {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i)
            xnorm2 += std::norm(w(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0)
        {
            esub[k] = 0.0;
            continue;
        }

        const cdouble x0 = w(k + 1, k);
        const cdouble alpha = -unit_phase(x0) * xnorm;

        const std::size_t len = n - k - 1;
        CVec v(len);
        for (std::size_t i = 0; i < len; ++i)
            v[i] = w(k + 1 + i, k);
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (const cdouble &x : v)
            vnorm2 += std::norm(x);
        if (vnorm2 == 0.0)
        {
            esub[k] = x0;
            continue;
        }
        const double beta = 2.0 / vnorm2;

        // Rank-2 update of the trailing block B: B -= v*w^H + w*v^H with
        // w = beta*B*v - (beta^2/2)*(v^H B v)*v.
        CVec p(len, 0.0);
        for (std::size_t j = 0; j < len; ++j)
        {
            const cdouble vj = v[j];
            if (vj == cdouble(0.0))
                continue;
            const cdouble *colj = w.col(k + 1 + j);
            for (std::size_t i = 0; i < len; ++i)
                p[i] += colj[k + 1 + i] * vj;
        }
        cdouble vhp = 0.0;
        for (std::size_t i = 0; i < len; ++i)
        {
            p[i] *= beta;
            vhp += std::conj(v[i]) * p[i];
        }
        const double kk = 0.5 * beta * vhp.real();
        CVec wv(len);
        for (std::size_t i = 0; i < len; ++i)
            wv[i] = p[i] - kk * v[i];

        for (std::size_t j = 0; j < len; ++j)
        {
            for (std::size_t i = 0; i < j; ++i)
            {
                const cdouble delta = v[i] * std::conj(wv[j]) + wv[i] * std::conj(v[j]);
                const cdouble nv = w(k + 1 + i, k + 1 + j) - delta;
                w(k + 1 + i, k + 1 + j) = nv;
                w(k + 1 + j, k + 1 + i) = std::conj(nv);
            }
            const cdouble deltad = v[j] * std::conj(wv[j]) + wv[j] * std::conj(v[j]);
            w(k + 1 + j, k + 1 + j) = (w(k + 1 + j, k + 1 + j) - deltad).real();
        }

        esub[k] = alpha;
        w(k + 1, k) = alpha;
        w(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i)
        {
            w(i, k) = 0.0;
            w(k, i) = 0.0;
        }
        t.reflectors.push_back({k, beta, std::move(v)});
    }
    if (n > 1)
        esub[n - 2] = w(n - 1, n - 2);

    for (std::size_t i = 0; i < n; ++i)
        t.d[i] = w(i, i).real();

    // Absorb subdiagonal phases into a diagonal unitary so the QL stage can
    // run in real arithmetic.
    t.dphase.assign(n, cdouble(1.0, 0.0));
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        const double mag = std::abs(esub[i]);
        t.e[i] = mag;
        if (mag == 0.0)
            t.dphase[i + 1] = t.dphase[i];
        else
            t.dphase[i + 1] = t.dphase[i] * (esub[i] / mag);
    }
    return t;
}

// Implicit-shift QL on a real symmetric tridiagonal matrix. If z is non-null
// it must point to an n*n column-major array (normally the identity) that
// accumulates the rotations, so its columns end up as eigenvectors.
void ql_implicit_shift(std::vector<double> &d, std::vector<double> &e, double *z, std::size_t n)
{
    if (n < 2)
        return;
    e.push_back(0.0); // scratch slot used as e[m] when m == n-1

    // Deflation floor at the backward-error scale of the dense reduction that
    // produced this tridiagonal. A neighbor-relative test alone stalls on
    // rank-deficient inputs, where whole blocks of d and e are roundoff of
    // the same magnitude and their ratio never shrinks.
    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]) +
                                    (i > 0 ? std::abs(e[i - 1]) : 0.0));
    const double floor_tol = DBL_EPSILON * anorm;

    for (std::size_t l = 0; l < n; ++l)
    {
        int iter = 0;
        std::size_t m;
        do
        {
            for (m = l; m + 1 < n; ++m)
            {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::max(DBL_EPSILON * dd, floor_tol))
                    break;
            }
            if (m != l)
            {
                if (iter++ == 50)
                    throw numerical_error("hermitian_eigen: tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;)
                {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0)
                    {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z != nullptr)
                    {
                        double *zi = z + i * n;
                        double *zi1 = z + (i + 1) * n;
                        for (std::size_t k = 0; k < n; ++k)
                        {
                            f = zi1[k];
                            zi1[k] = s * zi[k] + c * f;
                            zi[k] = c * zi[k] - s * f;
                        }
                    }
                }
                if (underflow)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    e.pop_back();
}

} // namespace

EigenDecomposition hermitian_eigen(const CMat &a)
{
    require_square_hermitian(a, "hermitian_eigen");
    const std::size_t n = a.rows();
    EigenDecomposition out;
    if (n == 0)
        return out;

    Tridiagonal t = tridiagonalize(hermitized_copy(a));

    std::vector<double> zr(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        zr[i * n + i] = 1.0;
    ql_implicit_shift(t.d, t.e, zr.data(), n);

    // Stable ascending sort; ties keep decomposition order.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t i, std::size_t j) { return t.d[i] < t.d[j]; });

    out.values.resize(n);
    std::vector<double> zs(n * n);
    for (std::size_t j = 0; j < n; ++j)
    {
        out.values[j] = t.d[perm[j]];
        std::copy_n(zr.data() + perm[j] * n, n, zs.data() + j * n);
    }

    // Back-transform: eigenvectors of A are (P * D) * z-columns.
    CMat q = CMat::identity(n);
    for (auto it = t.reflectors.rbegin(); it != t.reflectors.rend(); ++it)
    {
        const std::size_t k = it->k;
        const std::size_t len = it->v.size();
        for (std::size_t c = k + 1; c < n; ++c)
        {
            cdouble *qc = q.col(c);
            cdouble s = 0.0;
            for (std::size_t i = 0; i < len; ++i)
                s += std::conj(it->v[i]) * qc[k + 1 + i];
            s *= it->beta;
            if (s == cdouble(0.0))
                continue;
            for (std::size_t i = 0; i < len; ++i)
                qc[k + 1 + i] -= s * it->v[i];
        }
    }
    for (std::size_t c = 0; c < n; ++c)
    {
        const cdouble ph = t.dphase[c];
        cdouble *qc = q.col(c);
        for (std::size_t i = 0; i < n; ++i)
            qc[i] *= ph;
    }

    out.vectors = CMat(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        cdouble *uc = out.vectors.col(j);
        const double *zc = zs.data() + j * n;
        for (std::size_t k = 0; k < n; ++k)
        {
            const double zkj = zc[k];
            if (zkj == 0.0)
                continue;
            const cdouble *qk = q.col(k);
            for (std::size_t i = 0; i < n; ++i)
                uc[i] += qk[i] * zkj;
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMat &a)
{
    require_square_hermitian(a, "hermitian_eigenvalues");
    const std::size_t n = a.rows();
    if (n == 0)
        return {};
    Tridiagonal t = tridiagonalize(hermitized_copy(a));
    ql_implicit_shift(t.d, t.e, nullptr, n);
    std::sort(t.d.begin(), t.d.end());
    return t.d;
}

EigPair principal_eigpair(const CMat &a)
{
    require_square_hermitian(a, "principal_eigpair");
    const std::size_t n = a.rows();
    if (n == 0)
        throw std::invalid_argument("principal_eigpair: empty matrix");

    EigPair out;
    if (n <= 64)
    {
        EigenDecomposition ed = hermitian_eigen(a);
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (ed.values[i] > ed.values[best])
                best = i;
        out.value = ed.values[best];
        out.vector.assign(ed.vectors.col(best), ed.vectors.col(best) + n);
        canonicalize_phase(out.vector);
        return out;
    }

    // Power iteration on A + s*I with s = ||A||_inf, which dominates the
    // spectral radius, so the largest eigenvalue of A becomes dominant.
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            row += std::abs(a(i, j));
        shift = std::max(shift, row);
    }
    const double tol = 1e-10 * std::max(1.0, norm_fro(a));

    CVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = 1.0 + 0.1 * static_cast<double>(i + 1) / static_cast<double>(n);
    double vn = norm2(v);
    for (cdouble &x : v)
        x /= vn;

    constexpr int MAX_ITERS = 20000;
    for (int it = 0; it < MAX_ITERS; ++it)
    {
        CVec w = matvec(a, v);
        const double mu = inner(v, w).real();
        double res2 = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res2 += std::norm(w[i] - mu * v[i]);
        if (std::sqrt(res2) <= 0.5 * tol)
        {
            out.value = mu;
            out.vector = std::move(v);
            canonicalize_phase(out.vector);
            return out;
        }
        for (std::size_t i = 0; i < n; ++i)
            w[i] += shift * v[i];
        const double wn = norm2(w);
        if (wn == 0.0)
            throw numerical_error("principal_eigpair: power iteration collapsed to zero");
        for (std::size_t i = 0; i < n; ++i)
            v[i] = w[i] / wn;
    }
    throw numerical_error("principal_eigpair: power iteration did not converge");
}

CMat psd_project(const CMat &a)
{
    require_square_hermitian(a, "psd_project");
    const std::size_t n = a.rows();
    if (n == 0)
        return a;

    EigenDecomposition ed = hermitian_eigen(a);
    if (ed.values.front() >= 0.0)
        return hermitized_copy(a);

    CMat b(n, n);
    for (std::size_t t = 0; t < n; ++t)
    {
        const double lam = ed.values[t];
        if (lam <= 0.0)
            continue;
        const cdouble *u = ed.vectors.col(t);
        for (std::size_t j = 0; j < n; ++j)
        {
            const cdouble uj = lam * std::conj(u[j]);
            cdouble *bj = b.col(j);
            for (std::size_t i = 0; i <= j; ++i)
                bj[i] += u[i] * uj;
        }
    }
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t i = 0; i < j; ++i)
            b(j, i) = std::conj(b(i, j));
        b(j, j) = b(j, j).real();
    }
    return b;
}

CMat chol_psd(const CMat &a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("chol_psd: matrix is not square");
    require_finite(a, "chol_psd");
    const std::size_t n = a.rows();
    CMat l(n, n);
    const double amax = max_abs_entry(a);
    if (amax == 0.0)
        return l;
    const double drop_tol = 1e-9 * amax;
    const double neg_tol = 1e-8 * amax;

    for (std::size_t k = 0; k < n; ++k)
    {
        double dk = a(k, k).real();
        for (std::size_t j = 0; j < k; ++j)
            dk -= std::norm(l(k, j));
        if (dk <= drop_tol)
        {
            if (dk < -neg_tol)
                throw numerical_error("chol_psd: matrix is not PSD within tolerance");
            continue; // degenerate direction, column stays zero
        }
        const double lkk = std::sqrt(dk);
        l(k, k) = lkk;
        for (std::size_t i = k + 1; i < n; ++i)
        {
            cdouble s = 0.5 * (a(i, k) + std::conj(a(k, i)));
            for (std::size_t j = 0; j < k; ++j)
                s -= l(i, j) * std::conj(l(k, j));
            l(i, k) = s / lkk;
        }
    }
    return l;
}

} // namespace twirs

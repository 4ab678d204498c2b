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

#include "twirs/types.hpp"

#include <cmath>

namespace twirs
{

CMat::CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMat CMat::identity(std::size_t n)
{
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CMat conj_transpose(const CMat &a)
{
    CMat r(a.cols(), a.rows());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (std::size_t i = 0; i < a.rows(); ++i)
            r(c, i) = std::conj(a(i, c));
    return r;
}

CMat matmul(const CMat &a, const CMat &b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + ")");
    CMat r(a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
    {
        cdouble *rc = r.col(c);
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            const cdouble bkc = b(k, c);
            if (bkc == cdouble(0.0))
                continue;
            const cdouble *ak = a.col(k);
            for (std::size_t i = 0; i < a.rows(); ++i)
                rc[i] += ak[i] * bkc;
        }
    }
    return r;
}

CVec matvec(const CMat &a, const CVec &x)
{
    if (a.cols() != x.size())
        throw std::invalid_argument("matvec: dimension mismatch (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(x.size()) + ")");
    CVec y(a.rows());
    for (std::size_t k = 0; k < a.cols(); ++k)
    {
        const cdouble xk = x[k];
        if (xk == cdouble(0.0))
            continue;
        const cdouble *ak = a.col(k);
        for (std::size_t i = 0; i < a.rows(); ++i)
            y[i] += ak[i] * xk;
    }
    return y;
}

CMat gram(const CMat &a)
{
    const std::size_t n = a.cols();
    CMat g(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        const cdouble *aj = a.col(j);
        for (std::size_t i = 0; i <= j; ++i)
        {
            const cdouble *ai = a.col(i);
            cdouble s = 0.0;
            for (std::size_t m = 0; m < a.rows(); ++m)
                s += std::conj(ai[m]) * aj[m];
            if (i == j)
                g(i, i) = s.real();
            else
            {
                g(i, j) = s;
                g(j, i) = std::conj(s);
            }
        }
    }
    return g;
}

cdouble inner(const CVec &x, const CVec &y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("inner: vector lengths differ (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    cdouble s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += std::conj(x[i]) * y[i];
    return s;
}

double norm2(const CVec &x)
{
    double s = 0.0;
    for (const cdouble &v : x)
        s += std::norm(v);
    return std::sqrt(s);
}

double norm_fro(const CMat &a)
{
    double s = 0.0;
    const cdouble *p = a.data();
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i)
        s += std::norm(p[i]);
    return std::sqrt(s);
}

double trace_real(const CMat &a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("trace_real: matrix is not square");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        s += a(i, i).real();
    return s;
}

double trace_prod_real(const CMat &a, const CMat &b)
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("trace_prod_real: need square matrices of equal dimension");
    // tr(AB) = sum_ij A_ij B_ji; for Hermitian inputs the result is real.
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
    {
        const cdouble *bj = b.col(j);
        for (std::size_t i = 0; i < a.rows(); ++i)
            s += (a(j, i) * bj[i]).real();
    }
    return s;
}

bool is_hermitian(const CMat &a, double tol)
{
    if (a.rows() != a.cols())
        return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i <= j; ++i)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol)
                return false;
    return true;
}

void require_finite(const CVec &x, const std::string &what)
{
    for (const cdouble &v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument(what + ": non-finite entry");
}

void require_finite(const CMat &a, const std::string &what)
{
    const cdouble *p = a.data();
    const std::size_t n = a.rows() * a.cols();
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag()))
            throw std::invalid_argument(what + ": non-finite entry");
}

} // namespace twirs

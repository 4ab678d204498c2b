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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace twirs
{

using cdouble = std::complex<double>;
using CVec = std::vector<cdouble>;

// Thrown when an iterative kernel fails to reach its guaranteed accuracy
// (distinct from std::invalid_argument, which flags contract violations).
class numerical_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Dense complex matrix, column-major. Shapes are fixed at construction.
class CMat
{
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols);

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cdouble &operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const cdouble &operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    cdouble *data() { return data_.data(); }
    const cdouble *data() const { return data_.data(); }

    // Pointer to the first element of column c.
    cdouble *col(std::size_t c) { return data_.data() + c * rows_; }
    const cdouble *col(std::size_t c) const { return data_.data() + c * rows_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

CMat conj_transpose(const CMat &a);
CMat matmul(const CMat &a, const CMat &b);
CVec matvec(const CMat &a, const CVec &x);

// A^H * A; result is exactly Hermitian (lower triangle mirrored from upper).
CMat gram(const CMat &a);

// x^H * y (conjugates the first argument).
cdouble inner(const CVec &x, const CVec &y);

double norm2(const CVec &x);
double norm_fro(const CMat &a);
double trace_real(const CMat &a);

// Real part of tr(A * B) for Hermitian A, B of equal dimension.
double trace_prod_real(const CMat &a, const CMat &b);

bool is_hermitian(const CMat &a, double tol);

void require_finite(const CVec &x, const std::string &what);
void require_finite(const CMat &a, const std::string &what);

} // namespace twirs

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

#include "twirs/rng.hpp"

#include <cmath>
#include <numbers>

#include "twirs/numerics.hpp"

namespace twirs
{

namespace
{

constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t &state)
{
    std::uint64_t z = (state += GOLDEN);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl64(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed)
{
    std::uint64_t sm = seed;
    for (std::uint64_t &word : s_)
        word = splitmix64(sm);
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0)
        s_[0] = 1; // the all-zero state is a fixed point of xoshiro
}

std::uint64_t RandomStream::next_u64()
{
    const std::uint64_t result = rotl64(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl64(s_[3], 45);
    return result;
}

double RandomStream::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_pos()
{
    return 1.0 - uniform();
}

cdouble RandomStream::complex_normal()
{
    const double amplitude = std::sqrt(-std::log(uniform_pos()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {amplitude * std::cos(angle), amplitude * std::sin(angle)};
}

void RandomStream::fill_complex_normal(CVec &out)
{
    for (cdouble &z : out)
        z = complex_normal();
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    std::uint64_t h = mix64(master + GOLDEN);
    h = mix64(h ^ (a + GOLDEN));
    h = mix64(h ^ (b + 0x632BE59BD9B4E019ULL));
    h = mix64(h ^ (c + 0xD1B54A32D192ED03ULL));
    return h;
}

CVec sample_complex_gaussian(const CMat &cov, RandomStream &rng)
{
    if (cov.rows() != cov.cols())
        throw std::invalid_argument("sample_complex_gaussian: covariance is not square");
    require_finite(cov, "sample_complex_gaussian");
    const std::size_t n = cov.rows();
    if (n == 0)
        return {};

    double amax = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            amax = std::max(amax, std::abs(cov(i, j)));
    if (!is_hermitian(cov, 1e-8 * (1.0 + amax)))
        throw std::invalid_argument("sample_complex_gaussian: covariance is not Hermitian");

    CVec z(n);
    rng.fill_complex_normal(z);

    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        tr += cov(i, i).real();
    const double ridge = 1e-10 * std::max(tr, 0.0) / static_cast<double>(n);

    CMat work = cov;
    for (std::size_t i = 0; i < n; ++i)
        work(i, i) = work(i, i).real() + ridge;

    const CMat l = chol_psd(work);

    CVec xi(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const cdouble zk = z[k];
        if (zk == cdouble(0.0))
            continue;
        const cdouble *lk = l.col(k);
        for (std::size_t i = k; i < n; ++i)
            xi[i] += lk[i] * zk;
    }
    return xi;
}

} // namespace twirs

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

#include <cstdint>

#include "twirs/types.hpp"

namespace twirs
{

// Deterministic xoshiro256++ stream. Identical seeds produce bit-identical
// draw sequences on every platform; no global state is involved.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos();

    // Circularly-symmetric complex normal, E|z|^2 = 1. One amplitude draw
    // and one phase draw per sample: z = sqrt(-ln u1) * exp(2*pi*i*u2).
    cdouble complex_normal();

    void fill_complex_normal(CVec &out);

  private:
    std::uint64_t s_[4];
};

// Pure function of (master, a, b, c); used to give every (sweep point, trial,
// purpose) triple its own independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c);

// Draw from CN(0, cov). The covariance must be Hermitian PSD within
// tolerance; a diagonal ridge of 1e-10 * trace/dim is added before the
// factorization, and directions with negligible variance are sampled as
// exact zeros. Always consumes exactly dim complex draws from the stream.
CVec sample_complex_gaussian(const CMat &cov, RandomStream &rng);

} // namespace twirs

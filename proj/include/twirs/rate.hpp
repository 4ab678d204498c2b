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

#include "twirs/channel.hpp"
#include "twirs/types.hpp"

namespace twirs
{

// Unit-modulus reflection coefficients, the diagonal of the surface's phase
// matrix. Every entry satisfies | |c| - 1 | <= 1e-12.
class PhaseVector
{
  public:
    PhaseVector() = default; // empty placeholder; real instances come from the ctors below
    explicit PhaseVector(CVec coeffs);

    static PhaseVector all_ones(std::size_t n);
    static PhaseVector from_angles(const std::vector<double> &angles);

    std::size_t size() const { return coeffs_.size(); }
    const CVec &coeffs() const { return coeffs_; }
    const cdouble &operator[](std::size_t i) const { return coeffs_[i]; }

    // Entrywise conjugate (still unit modulus).
    PhaseVector conjugated() const;

  private:
    CVec coeffs_;
};

// The four per-link rates plus the derived first-slot and system quantities,
// all in bits/s/Hz.
struct RateReport
{
    double r_sir = 0.0; // source -> relay, slot 1
    double r_dir = 0.0; // dest   -> relay, slot 1
    double r_rid = 0.0; // relay  -> dest,  slot 2
    double r_ris = 0.0; // relay  -> source, slot 2
    double sum_first_slot = 0.0;
    double min_first_slot = 0.0;
    double system_rate = 0.0; // 0.5 * (min(r_sir, r_rid) + min(r_dir, r_ris))
};

// h_direct + H_IR * diag(theta) * h_ui (slot-1 effective channel).
CVec effective_channel(const CVec &h_direct, const CMat &h_ir, const CVec &h_ui,
                       const PhaseVector &theta);

// Column form of the slot-2 effective channel under reciprocity; equals
// effective_channel with conjugated phases.
CVec second_slot_channel(const CVec &h_direct, const CMat &h_ir, const CVec &h_ui,
                         const PhaseVector &psi);

// log2(1 + power * ||h||^2 / noise).
double link_rate(double power_w, const CVec &h, double noise_w);

RateReport full_report(const ChannelSet &chans, const PhaseVector &theta, const PhaseVector &psi);

} // namespace twirs

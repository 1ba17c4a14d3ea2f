// SPDX-License-Identifier: Apache-2.0
//
// owcsim - indoor optical wireless channel simulation and resource allocation
// Copyright (C) 2026 The owcsim authors
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

#ifndef OWC_ANALYSIS_HPP
#define OWC_ANALYSIS_HPP

#include "owc/channel_db.hpp"
#include "owc/propagation.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace owc
{
    // Smallest transform length used for bandwidth search (~1.5 MHz spacing at 10 ps bins).
    inline constexpr std::size_t min_bandwidth_fft = std::size_t{1} << 16;

    // One-sided DFT (n_fft/2 + 1 samples) of the binned power response, bins taken
    // relative to the first stored bin. H[0] equals the DC gain.
    std::vector<std::complex<double>> frequency_response(const ImpulseResponse &ir, std::size_t n_fft);

    struct BandwidthResult
    {
        double f3db_hz = 0.0;
        bool nyquist_cap = false; // |H| never fell 3 dB below |H(0)| below Nyquist
        double resolution_hz = 0.0;

        bool operator==(const BandwidthResult &) const = default;
    };

    // First frequency where |H(f)|/|H(0)| <= 1/sqrt(2), linearly interpolated between
    // samples. n_fft = 0 picks the smallest power of two >= max(ir length, min_bandwidth_fft).
    BandwidthResult bandwidth_3db(const ImpulseResponse &ir, std::size_t n_fft = 0);

    double rms_delay_spread(const ImpulseResponse &ir);

    struct BandwidthEntry
    {
        std::uint32_t location_id = 0;
        std::uint32_t ap_id = 0;
        std::uint32_t element_id = 0;
        BandwidthResult bandwidth;

        bool operator==(const BandwidthEntry &) const = default;
    };

    // Bandwidth of every record with positive DC gain, in record order.
    std::vector<BandwidthEntry> bandwidth_table(const ChannelDB &db, unsigned threads = 1);

    struct CdfCurve
    {
        std::vector<double> values;        // ascending
        std::vector<double> probabilities; // i/n
    };

    CdfCurve empirical_cdf(std::vector<double> samples);

    // Record with the highest DC gain over all APs and elements at each location.
    std::vector<std::uint32_t> best_record_per_location(const ChannelDB &db);

    // One bandwidth per location, taken from best_record_per_location.
    std::vector<BandwidthEntry> best_bandwidths(const ChannelDB &db);
    CdfCurve bandwidth_cdf(const ChannelDB &db);

} // namespace owc

#endif

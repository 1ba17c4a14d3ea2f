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

#include "owc/analysis.hpp"
#include "owc/parallel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace owc
{
    namespace
    {
        // FFTW planning is not thread safe; execution on a shared plan with new arrays is.
        std::mutex &planner_mutex()
        {
            static std::mutex m;
            return m;
        }

        struct FftwFree
        {
            void operator()(void *p) const { fftw_free(p); }
        };

        std::size_t next_pow2(std::size_t n)
        {
            std::size_t p = 1;
            while (p < n)
                p <<= 1;
            return p;
        }

        void check_nonzero(const ImpulseResponse &ir)
        {
            if (ir.bins.empty() || !(ir.dc_gain() > 0.0))
                throw std::invalid_argument("Impulse response has no power");
        }
    } // namespace

    std::vector<std::complex<double>> frequency_response(const ImpulseResponse &ir, std::size_t n_fft)
    {
        if (n_fft == 0 || (n_fft & (n_fft - 1)) != 0)
            throw std::invalid_argument("FFT length must be a power of two");
        if (n_fft < ir.bins.size())
            throw std::invalid_argument("FFT length is shorter than the impulse response");

        std::unique_ptr<double, FftwFree> in(static_cast<double *>(fftw_malloc(sizeof(double) * n_fft)));
        std::unique_ptr<fftw_complex, FftwFree> out(
            static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * (n_fft / 2 + 1))));
        fftw_plan plan;
        {
            std::lock_guard lock(planner_mutex());
            plan = fftw_plan_dft_r2c_1d(static_cast<int>(n_fft), in.get(), out.get(), FFTW_ESTIMATE);
        }
        std::fill(in.get(), in.get() + n_fft, 0.0);
        std::copy(ir.bins.begin(), ir.bins.end(), in.get());
        fftw_execute(plan);

        std::vector<std::complex<double>> spectrum(n_fft / 2 + 1);
        for (std::size_t k = 0; k < spectrum.size(); ++k)
            spectrum[k] = {out.get()[k][0], out.get()[k][1]};
        {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
        return spectrum;
    }

    BandwidthResult bandwidth_3db(const ImpulseResponse &ir, std::size_t n_fft)
    {
        check_nonzero(ir);
        if (n_fft == 0)
            n_fft = next_pow2(std::max(ir.bins.size(), min_bandwidth_fft));

        const auto H = frequency_response(ir, n_fft);
        const double df = 1.0 / (static_cast<double>(n_fft) * ir.bin_width_s);
        const double h0 = std::abs(H[0]);
        const double threshold = 1.0 / std::sqrt(2.0);

        BandwidthResult result;
        result.resolution_hz = df;
        double prev = 1.0;
        for (std::size_t k = 1; k < H.size(); ++k)
        {
            const double ratio = std::abs(H[k]) / h0;
            if (ratio <= threshold)
            {
                const double frac = (prev - threshold) / (prev - ratio);
                result.f3db_hz = (static_cast<double>(k - 1) + frac) * df;
                return result;
            }
            prev = ratio;
        }
        result.nyquist_cap = true;
        result.f3db_hz = 0.5 / ir.bin_width_s;
        return result;
    }

    double rms_delay_spread(const ImpulseResponse &ir)
    {
        check_nonzero(ir);
        // Moments relative to the first bin keep the subtraction well conditioned.
        double p = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t k = 0; k < ir.bins.size(); ++k)
        {
            const double t = static_cast<double>(k) * ir.bin_width_s;
            p += ir.bins[k];
            m1 += ir.bins[k] * t;
            m2 += ir.bins[k] * t * t;
        }
        const double mean = m1 / p;
        return std::sqrt(std::max(0.0, m2 / p - mean * mean));
    }

    std::vector<BandwidthEntry> bandwidth_table(const ChannelDB &db, unsigned threads)
    {
        std::vector<std::size_t> powered;
        for (std::size_t i = 0; i < db.records().size(); ++i)
            if (db.records()[i].dc_gain > 0.0)
                powered.push_back(i);

        std::vector<BandwidthEntry> table(powered.size());
        parallel_for(powered.size(), threads, [&](std::size_t k)
                     {
            const auto &r = db.records()[powered[k]];
            table[k] = {r.location_id, r.ap_id, r.element_id, bandwidth_3db(r.ir)}; });
        return table;
    }

    CdfCurve empirical_cdf(std::vector<double> samples)
    {
        if (samples.empty())
            throw std::invalid_argument("CDF of an empty sample");
        std::sort(samples.begin(), samples.end());
        CdfCurve cdf;
        cdf.values = std::move(samples);
        const auto n = static_cast<double>(cdf.values.size());
        for (std::size_t i = 0; i < cdf.values.size(); ++i)
            cdf.probabilities.push_back(static_cast<double>(i + 1) / n);
        return cdf;
    }

    std::vector<std::uint32_t> best_record_per_location(const ChannelDB &db)
    {
        if (db.empty())
            throw std::invalid_argument("Channel database is empty");
        const auto &h = db.header();
        std::vector<std::uint32_t> best(h.n_locations, 0);
        std::vector<double> gain(h.n_locations, 0.0);
        for (std::size_t i = 0; i < db.records().size(); ++i)
        {
            const auto &r = db.records()[i];
            // Strict comparison keeps the lowest (AP, element) on ties.
            if (r.dc_gain > gain[r.location_id - 1])
            {
                gain[r.location_id - 1] = r.dc_gain;
                best[r.location_id - 1] = static_cast<std::uint32_t>(i);
            }
        }
        for (std::size_t l = 0; l < gain.size(); ++l)
            if (!(gain[l] > 0.0))
                throw std::invalid_argument("Location " + std::to_string(l + 1) + " receives no power");
        return best;
    }

    std::vector<BandwidthEntry> best_bandwidths(const ChannelDB &db)
    {
        std::vector<BandwidthEntry> out;
        for (auto idx : best_record_per_location(db))
        {
            const auto &r = db.records()[idx];
            out.push_back({r.location_id, r.ap_id, r.element_id, bandwidth_3db(r.ir)});
        }
        return out;
    }

    CdfCurve bandwidth_cdf(const ChannelDB &db)
    {
        std::vector<double> samples;
        for (const auto &e : best_bandwidths(db))
            samples.push_back(e.bandwidth.f3db_hz);
        return empirical_cdf(std::move(samples));
    }

} // namespace owc

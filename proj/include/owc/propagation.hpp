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

#ifndef OWC_PROPAGATION_HPP
#define OWC_PROPAGATION_HPP

#include "owc/receivers.hpp"
#include "owc/scene.hpp"
#include "owc/vec3.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace owc
{
    // Received power versus delay for unit transmitted power, binned at a fixed width.
    // Bin k covers [(start_bin + k) * dt, (start_bin + k + 1) * dt).
    struct ImpulseResponse
    {
        double bin_width_s = 10e-12;
        std::int64_t start_bin = 0;
        std::vector<double> bins;

        double start_time() const { return static_cast<double>(start_bin) * bin_width_s; }
        double dc_gain() const;
        bool empty() const { return bins.empty(); }

        // Builds a trimmed response from a dense histogram that starts at t = 0.
        static ImpulseResponse from_dense(double bin_width_s, const std::vector<double> &dense);
    };

    // DC gain carried by each bounce order.
    struct OrderSplit
    {
        double los = 0.0;
        double first = 0.0;
        double second = 0.0;

        double total() const { return los + first + second; }
    };

    struct ChannelTrace
    {
        ImpulseResponse ir;
        OrderSplit split;
    };

    struct TraceOptions
    {
        double bin_width_s = 10e-12;
        double window_s = 100e-9; // absolute delay covered by the histogram
        int max_order = 2;        // 0 = LOS only
    };

    // Radiant intensity per unit power of a Lambertian source: (n+1)/(2 pi) cos^n(psi), zero beyond 90 deg.
    double lambertian_intensity(double order, double psi_rad);

    struct Emitter
    {
        Vec3 position;
        Vec3 normal;
        double order = 1.0;
    };

    struct Collector
    {
        Vec3 position;
        Vec3 normal;
        double area_m2 = 0.0;
        double fov_rad = pi / 2.0;
    };

    // Closed-form line-of-sight gain (n+1) A cos^n(phi) cos(theta) / (2 pi d^2).
    double los_gain(const Emitter &tx, const Collector &rx);

    // Element-to-element transfer for the double-bounce grid. Row j lists every
    // source element i that illuminates j, with the fraction of i's re-emitted
    // power landing on j and the centre-to-centre distance.
    class ElementKernel
    {
    public:
        explicit ElementKernel(std::vector<ReflectingElement> elements);

        const std::vector<ReflectingElement> &elements() const { return elements_; }
        std::size_t size() const { return elements_.size(); }
        std::size_t nonzero() const { return source_.size(); }

        struct Row
        {
            const std::uint32_t *source;
            const double *gain;
            const double *distance;
            std::size_t count;
        };
        Row row(std::size_t target) const;

        // Fraction of element i's re-emitted power collected by element j (0 if not visible).
        static double transfer(const ReflectingElement &from, const ReflectingElement &to);

    private:
        std::vector<ReflectingElement> elements_;
        std::vector<std::size_t> offsets_;
        std::vector<std::uint32_t> source_;
        std::vector<double> gain_;
        std::vector<double> distance_;
    };

    // Deterministic ray tracer over a discretized scene. Immutable after construction;
    // trace() may be called concurrently.
    class Tracer
    {
    public:
        Tracer(const SceneConfig &scene, TraceOptions options = {});

        const TraceOptions &options() const { return options_; }
        const SceneConfig &scene() const { return scene_; }
        const std::vector<ReflectingElement> &first_order_elements() const { return first_; }
        const ElementKernel &kernel() const { return kernel_; }

        // One trace per receiver element for a receiver sitting at 'location'.
        std::vector<ChannelTrace> trace(const AccessPoint &ap, const Vec3 &location, const Receiver &receiver) const;

    private:
        SceneConfig scene_;
        TraceOptions options_;
        std::vector<ReflectingElement> first_;
        ElementKernel kernel_;
    };

} // namespace owc

#endif

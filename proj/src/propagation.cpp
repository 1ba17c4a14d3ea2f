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

#include "owc/propagation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace owc
{
    namespace
    {
        inline double cos_power(double c, double order)
        {
            return order == 1.0 ? c : std::pow(c, order);
        }

        // (n+1)/(2 pi) cos^n, expressed in terms of the cosine.
        inline double intensity_from_cos(double order, double c)
        {
            return c <= 0.0 ? 0.0 : (order + 1.0) / (2.0 * pi) * cos_power(c, order);
        }
    } // namespace

    double ImpulseResponse::dc_gain() const
    {
        return std::accumulate(bins.begin(), bins.end(), 0.0);
    }

    ImpulseResponse ImpulseResponse::from_dense(double bin_width_s, const std::vector<double> &dense)
    {
        ImpulseResponse ir;
        ir.bin_width_s = bin_width_s;
        std::size_t first = 0;
        while (first < dense.size() && dense[first] == 0.0)
            ++first;
        if (first == dense.size())
            return ir;
        std::size_t last = dense.size();
        while (dense[last - 1] == 0.0)
            --last;
        ir.start_bin = static_cast<std::int64_t>(first);
        ir.bins.assign(dense.begin() + static_cast<std::ptrdiff_t>(first), dense.begin() + static_cast<std::ptrdiff_t>(last));
        return ir;
    }

    double lambertian_intensity(double order, double psi_rad)
    {
        if (!(order >= 1.0))
            throw std::invalid_argument("Lambertian order must be >= 1");
        if (!(psi_rad >= 0.0 && psi_rad <= pi))
            throw std::invalid_argument("Emission angle must lie in [0, pi]");
        if (psi_rad >= pi / 2.0)
            return 0.0;
        return intensity_from_cos(order, std::cos(psi_rad));
    }

    double los_gain(const Emitter &tx, const Collector &rx)
    {
        const Vec3 v = rx.position - tx.position;
        const double d2 = v.norm2();
        if (d2 == 0.0)
            throw std::invalid_argument("Transmitter and receiver coincide");
        const double d = std::sqrt(d2);
        const double cos_phi = tx.normal.dot(v) / d;
        const double cos_theta = -rx.normal.dot(v) / d;
        if (cos_phi <= 0.0 || cos_theta <= 0.0)
            return 0.0;
        if (std::acos(std::min(cos_theta, 1.0)) > rx.fov_rad + 1e-12)
            return 0.0;
        return (tx.order + 1.0) * rx.area_m2 * cos_power(cos_phi, tx.order) * cos_theta / (2.0 * pi * d2);
    }

    // ------------------------------------------------------------------------
    // ElementKernel

    double ElementKernel::transfer(const ReflectingElement &from, const ReflectingElement &to)
    {
        const Vec3 v = to.centre - from.centre;
        const double d2 = v.norm2();
        if (d2 == 0.0)
            return 0.0;
        const double d = std::sqrt(d2);
        const double cos_out = from.normal.dot(v) / d;
        const double cos_in = -to.normal.dot(v) / d;
        if (cos_out <= 0.0 || cos_in <= 0.0)
            return 0.0;
        return intensity_from_cos(from.lambertian_order, cos_out) * cos_in * to.area / d2;
    }

    ElementKernel::ElementKernel(std::vector<ReflectingElement> elements) : elements_(std::move(elements))
    {
        const std::size_t n = elements_.size();
        offsets_.reserve(n + 1);
        offsets_.push_back(0);
        for (std::size_t j = 0; j < n; ++j)
        {
            const auto &target = elements_[j];
            for (std::size_t i = 0; i < n; ++i)
            {
                // Coplanar elements never exchange light.
                if (elements_[i].surface == target.surface)
                    continue;
                const double g = transfer(elements_[i], target);
                if (g <= 0.0)
                    continue;
                source_.push_back(static_cast<std::uint32_t>(i));
                gain_.push_back(g);
                distance_.push_back(distance(elements_[i].centre, target.centre));
            }
            offsets_.push_back(source_.size());
        }
    }

    ElementKernel::Row ElementKernel::row(std::size_t target) const
    {
        const std::size_t b = offsets_.at(target), e = offsets_.at(target + 1);
        return {source_.data() + b, gain_.data() + b, distance_.data() + b, e - b};
    }

    // ------------------------------------------------------------------------
    // Tracer

    namespace
    {
        std::vector<ReflectingElement> second_order_grid(const SceneConfig &scene, const TraceOptions &opt)
        {
            if (opt.max_order < 2)
                return {};
            return discretize_surfaces(scene, scene.second_order_element_size);
        }
    } // namespace

    Tracer::Tracer(const SceneConfig &scene, TraceOptions options)
        : scene_(scene), options_(options),
          first_(options.max_order >= 1 ? discretize_surfaces(scene, scene.first_order_element_size) : std::vector<ReflectingElement>{}),
          kernel_(second_order_grid(scene, options))
    {
        if (options_.max_order < 0 || options_.max_order > 2)
            throw std::invalid_argument("Reflection order must be 0, 1 or 2");
        if (!(options_.bin_width_s > 0.0))
            throw std::invalid_argument("Bin width must be positive");
        // Every segment of a path is at most one room diagonal long.
        const double longest = (options_.max_order + 1) * scene_.room_size.norm() / speed_of_light;
        if (options_.window_s < longest)
            throw std::invalid_argument("Impulse-response window is shorter than the longest traced path");
    }

    std::vector<ChannelTrace> Tracer::trace(const AccessPoint &ap, const Vec3 &location, const Receiver &receiver) const
    {
        const std::size_t n_el = receiver.element_count();
        const auto n_bins = static_cast<std::size_t>(std::ceil(options_.window_s / options_.bin_width_s));
        const double bins_per_metre = 1.0 / (speed_of_light * options_.bin_width_s);

        std::vector<double> los(n_el * n_bins, 0.0), first(n_el * n_bins, 0.0), second(n_el * n_bins, 0.0);
        auto bin_of = [&](double path_length)
        {
            const auto k = static_cast<std::size_t>(path_length * bins_per_metre);
            if (k >= n_bins)
                throw std::logic_error("Path delay beyond impulse-response window");
            return k;
        };

        // Line of sight
        {
            const Vec3 v = location - ap.position;
            const double d2 = v.norm2();
            if (d2 > 0.0)
            {
                const double d = std::sqrt(d2);
                const double cos_phi = ap.orientation.dot(v) / d;
                if (cos_phi > 0.0)
                {
                    const double p = intensity_from_cos(ap.lambertian_order, cos_phi) / d2;
                    const std::size_t k = bin_of(d);
                    for (const auto &acc : receiver.accept(-(v / d)))
                        los[static_cast<std::size_t>(acc.element) * n_bins + k] += p * acc.area_m2;
                }
            }
        }

        // Single bounce on the fine grid
        if (options_.max_order >= 1)
        {
            for (const auto &e : first_)
            {
                if (e.reflectance == 0.0)
                    continue;
                const Vec3 v1 = e.centre - ap.position;
                const double d1sq = v1.norm2();
                const double d1 = std::sqrt(d1sq);
                const double cos_phi = ap.orientation.dot(v1) / d1;
                const double cos_in = -e.normal.dot(v1) / d1;
                if (cos_phi <= 0.0 || cos_in <= 0.0)
                    continue;
                const Vec3 v2 = location - e.centre;
                const double d2sq = v2.norm2();
                const double d2 = std::sqrt(d2sq);
                const double cos_out = e.normal.dot(v2) / d2;
                if (cos_out <= 0.0)
                    continue;
                const auto accepted = receiver.accept(-(v2 / d2));
                if (accepted.empty())
                    continue;

                const double incident = intensity_from_cos(ap.lambertian_order, cos_phi) / d1sq * cos_in * e.area;
                const double p = e.reflectance * incident * intensity_from_cos(e.lambertian_order, cos_out) / d2sq;
                const std::size_t k = bin_of(d1 + d2);
                for (const auto &acc : accepted)
                    first[static_cast<std::size_t>(acc.element) * n_bins + k] += p * acc.area_m2;
            }
        }

        // Double bounce on the coarse grid, both hops through the shared kernel
        if (options_.max_order >= 2)
        {
            const auto &elems = kernel_.elements();
            const std::size_t n = elems.size();
            std::vector<double> launched(n, 0.0), ap_dist(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
            {
                const auto &e = elems[i];
                const Vec3 v = e.centre - ap.position;
                const double dsq = v.norm2();
                const double d = std::sqrt(dsq);
                ap_dist[i] = d;
                const double cos_phi = ap.orientation.dot(v) / d;
                const double cos_in = -e.normal.dot(v) / d;
                if (cos_phi <= 0.0 || cos_in <= 0.0)
                    continue;
                launched[i] = e.reflectance * intensity_from_cos(ap.lambertian_order, cos_phi) / dsq * cos_in * e.area;
            }

            for (std::size_t j = 0; j < n; ++j)
            {
                const auto &e = elems[j];
                if (e.reflectance == 0.0)
                    continue;
                const Vec3 v2 = location - e.centre;
                const double d2sq = v2.norm2();
                const double d2 = std::sqrt(d2sq);
                const double cos_out = e.normal.dot(v2) / d2;
                if (cos_out <= 0.0)
                    continue;
                const auto accepted = receiver.accept(-(v2 / d2));
                if (accepted.empty())
                    continue;
                const double out = e.reflectance * intensity_from_cos(e.lambertian_order, cos_out) / d2sq;

                const auto row = kernel_.row(j);
                for (const auto &acc : accepted)
                {
                    const double factor = out * acc.area_m2;
                    double *hist = second.data() + static_cast<std::size_t>(acc.element) * n_bins;
                    for (std::size_t k = 0; k < row.count; ++k)
                    {
                        const std::uint32_t i = row.source[k];
                        const double w = launched[i] * row.gain[k];
                        if (w == 0.0)
                            continue;
                        hist[bin_of(ap_dist[i] + row.distance[k] + d2)] += w * factor;
                    }
                }
            }
        }

        std::vector<ChannelTrace> traces(n_el);
        std::vector<double> dense(n_bins);
        for (std::size_t el = 0; el < n_el; ++el)
        {
            const std::size_t base = el * n_bins;
            OrderSplit split;
            for (std::size_t k = 0; k < n_bins; ++k)
            {
                dense[k] = los[base + k] + first[base + k] + second[base + k];
                split.los += los[base + k];
                split.first += first[base + k];
                split.second += second[base + k];
            }
            traces[el].ir = ImpulseResponse::from_dense(options_.bin_width_s, dense);
            traces[el].split = split;
        }
        return traces;
    }

} // namespace owc

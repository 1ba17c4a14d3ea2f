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

#include "owc/receivers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace owc
{
    double receiver_noise_sigma(const NoiseSpec &noise)
    {
        if (!(noise.current_density > 0.0) || !(noise.bandwidth_hz > 0.0))
            throw std::invalid_argument("Noise density and bandwidth must be positive");
        return noise.current_density * std::sqrt(noise.bandwidth_hz);
    }

    Vec3 branch_normal(double azimuth_deg, double elevation_deg)
    {
        if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0))
            throw std::invalid_argument("Elevation must lie in [0, 90] degrees");
        const double az = deg_to_rad(azimuth_deg), el = deg_to_rad(elevation_deg);
        if (elevation_deg == 90.0)
            return {0.0, 0.0, 1.0};
        return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
    }

    Vec3 Detector::normal() const { return branch_normal(azimuth_deg, elevation_deg); }

    std::optional<double> detector_effective_area(const Detector &det, const Vec3 &toward_source)
    {
        const double c = std::clamp(det.normal().dot(toward_source), -1.0, 1.0);
        if (c <= 0.0)
            return std::nullopt;
        // Compare angles rather than cosines so the boundary case is exact in degrees.
        if (std::acos(c) > deg_to_rad(det.fov_deg) + 1e-12)
            return std::nullopt;
        return det.area_m2 * c;
    }

    std::optional<double> adr_effective_area(const Detector &branch, const Vec3 &toward_source)
    {
        return detector_effective_area(branch, toward_source);
    }

    namespace
    {
        // Cell along one focal-plane axis; boundaries belong to the lower cell.
        int grid_cell(double w, double half_side, int n)
        {
            const double cell = 2.0 * half_side / n;
            for (int k = 0; k < n - 1; ++k)
                if (w <= -half_side + cell * (k + 1))
                    return k;
            return n - 1;
        }
    } // namespace

    std::optional<int> imr_pixel_map(const ImrSpec &spec, const Vec3 &toward_source)
    {
        const double cz = std::clamp(toward_source.z, -1.0, 1.0);
        if (cz <= 0.0)
            return std::nullopt;
        if (std::acos(cz) > deg_to_rad(spec.lens_fov_deg) + 1e-12)
            return std::nullopt;

        // Focal-plane coordinates (tan theta cos phi, tan theta sin phi); the FOV disc
        // is inscribed in the pixel square.
        const double u = toward_source.x / cz, v = toward_source.y / cz;
        const double half_side = std::tan(deg_to_rad(spec.lens_fov_deg));
        const int row = grid_cell(u, half_side, spec.grid_size);
        const int col = grid_cell(v, half_side, spec.grid_size);
        return row * spec.grid_size + col + 1;
    }

    std::optional<double> imr_effective_area(const ImrSpec &spec, const Vec3 &toward_source)
    {
        if (!imr_pixel_map(spec, toward_source))
            return std::nullopt;
        return spec.aperture_area_m2 * std::clamp(toward_source.z, 0.0, 1.0);
    }

    AdrSpec reference_adr()
    {
        AdrSpec spec;
        for (double az : {45.0, 135.0, 225.0, 315.0})
            spec.branches.push_back({az, 70.0, 25.0, 20e-6});
        spec.noise = {4.47e-12, 5e9};
        return spec;
    }

    ImrSpec reference_imr()
    {
        ImrSpec spec;
        spec.lens_fov_deg = 50.0;
        spec.grid_size = 3;
        spec.aperture_area_m2 = 16e-6;
        spec.noise = {10e-12, 10e9};
        return spec;
    }

    AdrSpec single_detector(double area_m2, double fov_deg, const NoiseSpec &noise)
    {
        AdrSpec spec;
        spec.branches.push_back({0.0, 90.0, fov_deg, area_m2});
        spec.noise = noise;
        return spec;
    }

    void AcceptanceList::push(Acceptance a)
    {
        if (count_ == capacity)
            throw std::length_error("AcceptanceList capacity exceeded");
        items_[count_++] = a;
    }

    Receiver::Receiver(Spec spec, std::string name) : spec_(std::move(spec)), name_(std::move(name))
    {
        if (const auto *adr = std::get_if<AdrSpec>(&spec_))
        {
            if (adr->branches.empty() || adr->branches.size() > AcceptanceList::capacity)
                throw std::invalid_argument("ADR must have between 1 and 16 branches");
            for (const auto &b : adr->branches)
            {
                if (!(b.fov_deg > 0.0 && b.fov_deg <= 90.0) || !(b.area_m2 > 0.0))
                    throw std::invalid_argument("ADR branch needs FOV in (0, 90] degrees and positive area");
                normals_.push_back(b.normal());
                cos_fov_.push_back(std::cos(deg_to_rad(b.fov_deg) + 1e-12));
            }
        }
        else
        {
            const auto &imr = std::get<ImrSpec>(spec_);
            if (!(imr.lens_fov_deg > 0.0 && imr.lens_fov_deg < 90.0) || imr.grid_size < 1 || !(imr.aperture_area_m2 > 0.0))
                throw std::invalid_argument("ImR needs lens FOV in (0, 90) degrees, grid >= 1 and positive area");
            cos_fov_.push_back(std::cos(deg_to_rad(imr.lens_fov_deg) + 1e-12));
            imr_half_side_ = std::tan(deg_to_rad(imr.lens_fov_deg));
        }
        if (noise().current_density < 0.0 || noise().bandwidth_hz < 0.0)
            throw std::invalid_argument("Noise density and bandwidth must be non-negative");
    }

    std::size_t Receiver::element_count() const
    {
        if (const auto *adr = std::get_if<AdrSpec>(&spec_))
            return adr->branches.size();
        return static_cast<std::size_t>(std::get<ImrSpec>(spec_).pixel_count());
    }

    const NoiseSpec &Receiver::noise() const
    {
        return std::visit([](const auto &s) -> const NoiseSpec &
                          { return s.noise; },
                          spec_);
    }

    AcceptanceList Receiver::accept(const Vec3 &toward_source) const
    {
        AcceptanceList out;
        if (const auto *adr = std::get_if<AdrSpec>(&spec_))
        {
            for (std::size_t i = 0; i < normals_.size(); ++i)
            {
                const double c = normals_[i].dot(toward_source);
                if (c > 0.0 && c >= cos_fov_[i])
                    out.push({static_cast<int>(i), adr->branches[i].area_m2 * std::min(c, 1.0)});
            }
        }
        else
        {
            const auto &imr = std::get<ImrSpec>(spec_);
            const double cz = toward_source.z;
            if (cz > 0.0 && cz >= cos_fov_[0])
            {
                const int n = imr.grid_size;
                const int row = grid_cell(toward_source.x / cz, imr_half_side_, n);
                const int col = grid_cell(toward_source.y / cz, imr_half_side_, n);
                out.push({row * n + col, imr.aperture_area_m2 * std::min(cz, 1.0)});
            }
        }
        return out;
    }

} // namespace owc

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

#ifndef OWC_RECEIVERS_HPP
#define OWC_RECEIVERS_HPP

#include "owc/vec3.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Direction convention: every acceptance function takes the unit vector pointing
// from the receiver towards the source of the light (the reversed ray).
namespace owc
{
    struct NoiseSpec
    {
        double current_density = 0.0; // A/sqrt(Hz)
        double bandwidth_hz = 0.0;    // receiver electrical bandwidth
    };

    // sigma_Rx = density * sqrt(bandwidth)
    double receiver_noise_sigma(const NoiseSpec &noise);

    // A single photodetector with a conical field of view (semi-angle).
    struct Detector
    {
        double azimuth_deg = 0.0;
        double elevation_deg = 90.0;
        double fov_deg = 90.0;
        double area_m2 = 0.0;

        Vec3 normal() const;
    };

    // Unit normal for a detector pointing at (azimuth, elevation); elevation is from the horizontal.
    Vec3 branch_normal(double azimuth_deg, double elevation_deg);

    // Collecting area A*cos(angle) if the source direction lies within the FOV cone, else nullopt.
    std::optional<double> detector_effective_area(const Detector &det, const Vec3 &toward_source);
    std::optional<double> adr_effective_area(const Detector &branch, const Vec3 &toward_source);

    struct AdrSpec
    {
        std::vector<Detector> branches;
        NoiseSpec noise;
    };

    // Upward-facing lens with a square pixel grid in its focal plane.
    struct ImrSpec
    {
        double lens_fov_deg = 50.0;    // semi-angle
        int grid_size = 3;             // pixels per side
        double aperture_area_m2 = 0.0; // total collection area shared by the pixels
        NoiseSpec noise;

        int pixel_count() const { return grid_size * grid_size; }
    };

    // Pixel index (1-based, row-major, rows along +x, columns along +y) or nullopt outside the lens FOV.
    std::optional<int> imr_pixel_map(const ImrSpec &spec, const Vec3 &toward_source);
    std::optional<double> imr_effective_area(const ImrSpec &spec, const Vec3 &toward_source);

    AdrSpec reference_adr();
    ImrSpec reference_imr();
    // One upward detector with the given FOV; used for LOS checks and wide-FOV studies.
    AdrSpec single_detector(double area_m2, double fov_deg, const NoiseSpec &noise = {});

    struct Acceptance
    {
        int element = 0; // 0-based element index
        double area_m2 = 0.0;
    };

    // Directions can fall inside several overlapping ADR cones; at most one per branch.
    class AcceptanceList
    {
    public:
        static constexpr std::size_t capacity = 16;

        void push(Acceptance a);
        std::size_t size() const { return count_; }
        bool empty() const { return count_ == 0; }
        const Acceptance *begin() const { return items_.data(); }
        const Acceptance *end() const { return items_.data() + count_; }
        const Acceptance &operator[](std::size_t i) const { return items_[i]; }

    private:
        std::array<Acceptance, capacity> items_{};
        std::size_t count_ = 0;
    };

    class Receiver
    {
    public:
        using Spec = std::variant<AdrSpec, ImrSpec>;

        Receiver(Spec spec, std::string name);

        const std::string &name() const { return name_; }
        const Spec &spec() const { return spec_; }
        std::size_t element_count() const;
        const NoiseSpec &noise() const;
        double noise_sigma() const { return receiver_noise_sigma(noise()); }

        AcceptanceList accept(const Vec3 &toward_source) const;

        static Receiver adr() { return Receiver(reference_adr(), "adr"); }
        static Receiver imr() { return Receiver(reference_imr(), "imr"); }

    private:
        Spec spec_;
        std::string name_;
        // Cached acceptance geometry for the tracing hot path.
        std::vector<Vec3> normals_;
        std::vector<double> cos_fov_;
        double imr_half_side_ = 0.0;
    };

} // namespace owc

#endif

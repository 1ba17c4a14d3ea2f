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

#ifndef OWC_SCENE_HPP
#define OWC_SCENE_HPP

#include "owc/vec3.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace owc
{
    enum class Wavelength
    {
        Red,
        Yellow,
        Green,
        Blue
    };

    std::string_view to_string(Wavelength wl);
    Wavelength wavelength_from_string(std::string_view name); // case-insensitive, throws std::invalid_argument

    // One laser-diode colour of an access point and the matching receiver responsivity.
    struct WavelengthBand
    {
        Wavelength id = Wavelength::Red;
        double ld_power_w = 0.0;           // optical power of one LD module
        double responsivity_a_per_w = 0.0; // photodetector responsivity
    };

    struct AccessPoint
    {
        int id = 0;                       // 1-based
        Vec3 position;                    // m
        Vec3 orientation{0.0, 0.0, -1.0}; // unit emission axis
        double lambertian_order = 1.0;
        int ld_count = 12; // LD modules per colour
    };

    // Rectangle origin + edge_u + edge_v with an inward unit normal.
    struct Surface
    {
        std::string name;
        Vec3 origin;
        Vec3 edge_u;
        Vec3 edge_v;
        Vec3 normal;
        double reflectance = 0.0;
        double lambertian_order = 1.0;

        std::array<Vec3, 4> corners() const;
        double area() const { return edge_u.norm() * edge_v.norm(); }
    };

    struct ReflectingElement
    {
        Vec3 centre;
        Vec3 normal;
        double area = 0.0; // dA, m^2
        double reflectance = 0.0;
        double lambertian_order = 1.0;
        std::size_t surface = 0; // index into SceneConfig::surfaces
    };

    struct SceneConfig
    {
        Vec3 room_size{4.0, 8.0, 3.0}; // x width, y length, z height
        std::vector<Surface> surfaces;
        double first_order_element_size = 0.05;  // m, grid for single-bounce paths
        double second_order_element_size = 0.20; // m, grid for both hops of double-bounce paths
        std::vector<AccessPoint> access_points;
        std::vector<WavelengthBand> wavelengths;
        double communication_floor = 1.0; // m
        std::vector<Vec3> locations;      // receiver locations, 1-based ids by position

        // Total optical power of one colour of one AP (ld_count x LD power).
        double ap_power(std::size_t ap_index, std::size_t wavelength_index) const;
        std::size_t wavelength_index(Wavelength wl) const; // throws std::invalid_argument

        bool inside(const Vec3 &p, double tol = 1e-9) const;

        // Throws ConfigError describing the first violated constraint.
        void validate() const;
    };

    // Six inward-facing surfaces of an axis-aligned box [0,size.x] x [0,size.y] x [0,size.z].
    // Order: floor, ceiling, wall x=0, wall x=W, wall y=0, wall y=L.
    std::vector<Surface> room_surfaces(const Vec3 &size, double wall_reflectance, double ceiling_reflectance,
                                       double floor_reflectance, double lambertian_order = 1.0);

    // Lambertian order for a given semi-angle at half power: n = -ln 2 / ln cos(semi_angle).
    double lambertian_order_from_semi_angle(double semi_angle_deg);

    SceneConfig build_reference_scene();

    // Tiles every surface with square elements anchored at the surface origin.
    // Elements in the last row/column are clipped so the tiling is exact.
    std::vector<ReflectingElement> discretize_surfaces(const SceneConfig &scene, double element_size);

    // 1 m pitch grid at the communication floor, offset half a metre from the walls.
    std::vector<Vec3> test_grid(const SceneConfig &scene);

} // namespace owc

#endif

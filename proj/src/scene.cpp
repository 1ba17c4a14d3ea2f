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

#include "owc/scene.hpp"
#include "owc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace owc
{
    std::string_view to_string(Wavelength wl)
    {
        switch (wl)
        {
        case Wavelength::Red:
            return "red";
        case Wavelength::Yellow:
            return "yellow";
        case Wavelength::Green:
            return "green";
        case Wavelength::Blue:
            return "blue";
        }
        return "unknown";
    }

    Wavelength wavelength_from_string(std::string_view name)
    {
        std::string lower(name);
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c)
                       { return static_cast<char>(std::tolower(c)); });
        for (auto wl : {Wavelength::Red, Wavelength::Yellow, Wavelength::Green, Wavelength::Blue})
            if (lower == to_string(wl))
                return wl;
        throw std::invalid_argument("Unknown wavelength '" + std::string(name) + "'");
    }

    std::array<Vec3, 4> Surface::corners() const
    {
        return {origin, origin + edge_u, origin + edge_u + edge_v, origin + edge_v};
    }

    double SceneConfig::ap_power(std::size_t ap_index, std::size_t wavelength_index) const
    {
        const auto &ap = access_points.at(ap_index);
        return static_cast<double>(ap.ld_count) * wavelengths.at(wavelength_index).ld_power_w;
    }

    std::size_t SceneConfig::wavelength_index(Wavelength wl) const
    {
        for (std::size_t i = 0; i < wavelengths.size(); ++i)
            if (wavelengths[i].id == wl)
                return i;
        throw std::invalid_argument("Wavelength '" + std::string(to_string(wl)) + "' is not part of the scene");
    }

    bool SceneConfig::inside(const Vec3 &p, double tol) const
    {
        return p.x >= -tol && p.y >= -tol && p.z >= -tol &&
               p.x <= room_size.x + tol && p.y <= room_size.y + tol && p.z <= room_size.z + tol;
    }

    void SceneConfig::validate() const
    {
        auto fail = [](const std::string &msg)
        { throw ConfigError(msg); };

        if (!(room_size.x > 0.0 && room_size.y > 0.0 && room_size.z > 0.0))
            fail("room: all dimensions must be positive");
        if (surfaces.empty())
            fail("surfaces: scene has no surfaces");
        for (const auto &s : surfaces)
        {
            if (!(s.reflectance >= 0.0 && s.reflectance <= 1.0))
                fail("reflectance." + s.name + ": must lie in [0, 1]");
            if (!(s.lambertian_order >= 1.0))
                fail("reflector_order: must be >= 1");
            if (std::abs(s.normal.norm() - 1.0) > 1e-12)
                fail("surface " + s.name + ": normal is not unit length");
        }
        if (!(first_order_element_size > 0.0))
            fail("element_size.first_order: must be positive");
        if (!(second_order_element_size > 0.0))
            fail("element_size.second_order: must be positive");
        if (access_points.empty())
            fail("access_points: at least one access point is required");
        for (const auto &ap : access_points)
        {
            if (!inside(ap.position))
                fail("access_points: AP " + std::to_string(ap.id) + " lies outside the room");
            if (!(ap.lambertian_order >= 1.0))
                fail("access_points: Lambertian order must be >= 1");
            if (ap.ld_count <= 0)
                fail("access_points.ld_per_unit: must be positive");
            if (std::abs(ap.orientation.norm() - 1.0) > 1e-12)
                fail("access_points: orientation of AP " + std::to_string(ap.id) + " is not unit length");
        }
        if (wavelengths.empty())
            fail("wavelengths: at least one wavelength is required");
        for (const auto &wl : wavelengths)
        {
            if (!(wl.ld_power_w > 0.0))
                fail("wavelengths." + std::string(to_string(wl.id)) + ".ld_power_w: must be positive");
            if (!(wl.responsivity_a_per_w > 0.0))
                fail("wavelengths." + std::string(to_string(wl.id)) + ".responsivity_a_per_w: must be positive");
        }
        if (!(communication_floor >= 0.0 && communication_floor <= room_size.z))
            fail("communication_floor: must lie inside the room height");
        for (std::size_t i = 0; i < locations.size(); ++i)
        {
            const auto &p = locations[i];
            if (!inside(p))
                fail("locations[" + std::to_string(i) + "]: outside the room");
            if (std::abs(p.z - communication_floor) > 1e-9)
                fail("locations[" + std::to_string(i) + "]: z must equal the communication floor height");
        }
    }

    std::vector<Surface> room_surfaces(const Vec3 &size, double wall_reflectance, double ceiling_reflectance,
                                       double floor_reflectance, double lambertian_order)
    {
        const double W = size.x, L = size.y, H = size.z;
        std::vector<Surface> s;
        s.push_back({"floor", {0, 0, 0}, {W, 0, 0}, {0, L, 0}, {0, 0, 1}, floor_reflectance, lambertian_order});
        s.push_back({"ceiling", {0, 0, H}, {W, 0, 0}, {0, L, 0}, {0, 0, -1}, ceiling_reflectance, lambertian_order});
        s.push_back({"wall_x0", {0, 0, 0}, {0, L, 0}, {0, 0, H}, {1, 0, 0}, wall_reflectance, lambertian_order});
        s.push_back({"wall_x1", {W, 0, 0}, {0, L, 0}, {0, 0, H}, {-1, 0, 0}, wall_reflectance, lambertian_order});
        s.push_back({"wall_y0", {0, 0, 0}, {W, 0, 0}, {0, 0, H}, {0, 1, 0}, wall_reflectance, lambertian_order});
        s.push_back({"wall_y1", {0, L, 0}, {W, 0, 0}, {0, 0, H}, {0, -1, 0}, wall_reflectance, lambertian_order});
        return s;
    }

    double lambertian_order_from_semi_angle(double semi_angle_deg)
    {
        if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0))
            throw std::invalid_argument("Semi-angle must lie in (0, 90) degrees");
        return -std::log(2.0) / std::log(std::cos(deg_to_rad(semi_angle_deg)));
    }

    SceneConfig build_reference_scene()
    {
        SceneConfig scene;
        scene.room_size = {4.0, 8.0, 3.0};
        scene.surfaces = room_surfaces(scene.room_size, 0.8, 0.8, 0.3, 1.0);
        scene.first_order_element_size = 0.05;
        scene.second_order_element_size = 0.20;

        const Vec3 positions[] = {{1, 1, 3}, {1, 3, 3}, {1, 5, 3}, {1, 7, 3}, {3, 1, 3}, {3, 3, 3}, {3, 5, 3}, {3, 7, 3}};
        // cos(60 deg) is not exactly 0.5 in binary, so the order is rounded to the intended integer.
        const double order = std::round(lambertian_order_from_semi_angle(60.0));
        int id = 1;
        for (const auto &p : positions)
            scene.access_points.push_back({id++, p, {0.0, 0.0, -1.0}, order, 12});

        scene.wavelengths = {{Wavelength::Red, 0.8, 0.4},
                             {Wavelength::Yellow, 0.5, 0.35},
                             {Wavelength::Green, 0.3, 0.3},
                             {Wavelength::Blue, 0.3, 0.2}};
        scene.communication_floor = 1.0;
        scene.locations = test_grid(scene);
        return scene;
    }

    namespace
    {
        std::size_t cell_count(double length, double size)
        {
            return static_cast<std::size_t>(std::ceil(length / size - 1e-9));
        }
    } // namespace

    std::vector<ReflectingElement> discretize_surfaces(const SceneConfig &scene, double element_size)
    {
        if (!(element_size > 0.0) || !std::isfinite(element_size))
            throw std::invalid_argument("Element size must be positive");

        std::vector<ReflectingElement> elements;
        for (std::size_t si = 0; si < scene.surfaces.size(); ++si)
        {
            const auto &s = scene.surfaces[si];
            const double lu = s.edge_u.norm(), lv = s.edge_v.norm();
            const Vec3 du = s.edge_u / lu, dv = s.edge_v / lv;
            const std::size_t nu = cell_count(lu, element_size), nv = cell_count(lv, element_size);
            elements.reserve(elements.size() + nu * nv);

            for (std::size_t iu = 0; iu < nu; ++iu)
            {
                const double u0 = static_cast<double>(iu) * element_size;
                const double u1 = std::min(lu, u0 + element_size);
                for (std::size_t iv = 0; iv < nv; ++iv)
                {
                    const double v0 = static_cast<double>(iv) * element_size;
                    const double v1 = std::min(lv, v0 + element_size);
                    ReflectingElement e;
                    e.centre = s.origin + du * (0.5 * (u0 + u1)) + dv * (0.5 * (v0 + v1));
                    e.normal = s.normal;
                    e.area = (u1 - u0) * (v1 - v0);
                    e.reflectance = s.reflectance;
                    e.lambertian_order = s.lambertian_order;
                    e.surface = si;
                    elements.push_back(e);
                }
            }
        }
        return elements;
    }

    std::vector<Vec3> test_grid(const SceneConfig &scene)
    {
        std::vector<Vec3> grid;
        const auto nx = static_cast<std::size_t>(std::floor(scene.room_size.x + 1e-9));
        const auto ny = static_cast<std::size_t>(std::floor(scene.room_size.y + 1e-9));
        for (std::size_t ix = 0; ix < nx; ++ix)
            for (std::size_t iy = 0; iy < ny; ++iy)
                grid.push_back({0.5 + static_cast<double>(ix), 0.5 + static_cast<double>(iy), scene.communication_floor});
        return grid;
    }

} // namespace owc

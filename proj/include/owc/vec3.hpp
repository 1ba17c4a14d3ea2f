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

#ifndef OWC_VEC3_HPP
#define OWC_VEC3_HPP

#include <cmath>
#include <numbers>
#include <ostream>

namespace owc
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = std::numbers::pi;

    constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
    constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

    // Room frame: x in [0, width], y in [0, length], z up.
    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Vec3 operator-() const { return {-x, -y, -z}; }
        constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
        constexpr Vec3 &operator+=(const Vec3 &o)
        {
            x += o.x, y += o.y, z += o.z;
            return *this;
        }
        constexpr bool operator==(const Vec3 &) const = default;

        constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
        constexpr Vec3 cross(const Vec3 &o) const
        {
            return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
        }
        constexpr double norm2() const { return dot(*this); }
        double norm() const { return std::sqrt(norm2()); }
        Vec3 normalized() const { return *this / norm(); }
    };

    constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

    inline double distance(const Vec3 &a, const Vec3 &b) { return (b - a).norm(); }

    // Tolerant comparison used to match user locations against stored locations.
    bool approx_equal(const Vec3 &a, const Vec3 &b, double tol = 1e-9);

    std::ostream &operator<<(std::ostream &os, const Vec3 &v);

} // namespace owc

#endif

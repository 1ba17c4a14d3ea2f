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

#ifndef OWC_CONFIG_HPP
#define OWC_CONFIG_HPP

#include "owc/receivers.hpp"
#include "owc/scene.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace owc
{
    using json = nlohmann::json;

    // Scene files are JSON objects:
    //   room                { "size": [x, y, z] }
    //   reflectance         { "walls", "ceiling", "floor" }
    //   reflector_order     Lambertian order of all surfaces
    //   element_size        { "first_order", "second_order" }   (metres)
    //   communication_floor height of the receiver plane
    //   wavelengths         [ { "name", "ld_power_w", "responsivity_a_per_w" } ]
    //   access_points       { "ld_per_unit", "semi_angle_deg", "positions": [[x,y,z], ...] }
    //   locations           "grid" or [[x,y,z], ...]                (optional, default "grid")
    //   receivers           { "adr": {...}, "imr": {...} }           (optional, built-in defaults)
    json scene_to_json(const SceneConfig &scene);
    SceneConfig scene_from_json(const json &j);

    json receiver_to_json(const Receiver &receiver);
    Receiver receiver_from_json(const json &j, const std::string &name);

    // Reads and validates a scene file. Errors name the file and the offending field.
    SceneConfig load_scene(const std::filesystem::path &path);

    // Receiver 'name' ("adr" or "imr") from the scene file's receivers block, falling back
    // to the built-in definition when the block is absent.
    Receiver load_receiver(const std::filesystem::path &scene_path, const std::string &name);
    Receiver builtin_receiver(const std::string &name);

    json read_json_file(const std::filesystem::path &path);

    // 64-bit FNV-1a, used to fingerprint canonical JSON dumps.
    std::uint64_t fnv1a64(std::string_view bytes);
    std::string canonical_dump(const json &j);

} // namespace owc

#endif

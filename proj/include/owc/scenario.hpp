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

#ifndef OWC_SCENARIO_HPP
#define OWC_SCENARIO_HPP

#include "owc/allocation.hpp"
#include "owc/config.hpp"
#include "owc/scene.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace owc
{
    // One row of a published allocation table (1-based ids).
    struct ReferenceRow
    {
        int ap = 0;
        int element = 0;
        Wavelength wavelength = Wavelength::Red;
    };

    // Scenario files are JSON objects:
    //   name       free text
    //   receiver   optional "adr" / "imr"; when present the DB must match
    //   users      [[x, y, z], ...]
    //   reference  optional { "adr": [ {"ap", "element", "wavelength"} ...], "imr": [...] }
    struct Scenario
    {
        std::string name;
        std::optional<std::string> receiver;
        std::vector<Vec3> users;
        std::map<std::string, std::vector<ReferenceRow>> reference;

        // Reference rows for 'receiver' as an assignment over the scene's wavelength list.
        std::optional<Assignment> reference_assignment(const std::string &receiver, const SceneConfig &scene) const;
    };

    Scenario scenario_from_json(const json &j);
    Scenario load_scenario(const std::filesystem::path &path);

} // namespace owc

#endif

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

#include "owc/scenario.hpp"
#include "owc/errors.hpp"

namespace owc
{
    namespace
    {
        int positive_int(const json &j, const std::string &key, const std::string &path)
        {
            if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() < 1)
                throw ConfigError(path + key + ": expected a positive integer");
            return j[key].get<int>();
        }
    } // namespace

    std::optional<Assignment> Scenario::reference_assignment(const std::string &rx, const SceneConfig &scene) const
    {
        const auto it = reference.find(rx);
        if (it == reference.end())
            return std::nullopt;
        Assignment a;
        for (const auto &row : it->second)
            a.push_back({static_cast<std::size_t>(row.ap - 1), scene.wavelength_index(row.wavelength),
                         static_cast<std::size_t>(row.element - 1)});
        return a;
    }

    Scenario scenario_from_json(const json &j)
    {
        if (!j.is_object())
            throw ConfigError("scenario: expected a JSON object");
        Scenario s;
        if (j.contains("name"))
        {
            if (!j["name"].is_string())
                throw ConfigError("name: expected a string");
            s.name = j["name"].get<std::string>();
        }
        if (j.contains("receiver"))
        {
            if (!j["receiver"].is_string() || (j["receiver"] != "adr" && j["receiver"] != "imr"))
                throw ConfigError("receiver: expected \"adr\" or \"imr\"");
            s.receiver = j["receiver"].get<std::string>();
        }
        if (!j.contains("users") || !j["users"].is_array() || j["users"].empty())
            throw ConfigError("users: expected a non-empty array of positions");
        for (std::size_t i = 0; i < j["users"].size(); ++i)
        {
            const auto &p = j["users"][i];
            if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number())
                throw ConfigError("users[" + std::to_string(i) + "]: expected an array of three numbers");
            s.users.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
        if (j.contains("reference"))
        {
            if (!j["reference"].is_object())
                throw ConfigError("reference: expected an object keyed by receiver");
            for (const auto &[rx, rows] : j["reference"].items())
            {
                const std::string path = "reference." + rx;
                if (!rows.is_array() || rows.size() != s.users.size())
                    throw ConfigError(path + ": expected one row per user");
                std::vector<ReferenceRow> table;
                for (std::size_t i = 0; i < rows.size(); ++i)
                {
                    const std::string rp = path + "[" + std::to_string(i) + "].";
                    ReferenceRow row;
                    row.ap = positive_int(rows[i], "ap", rp);
                    row.element = positive_int(rows[i], "element", rp);
                    if (!rows[i].contains("wavelength") || !rows[i]["wavelength"].is_string())
                        throw ConfigError(rp + "wavelength: expected a string");
                    try
                    {
                        row.wavelength = wavelength_from_string(rows[i]["wavelength"].get<std::string>());
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw ConfigError(rp + "wavelength: " + e.what());
                    }
                    table.push_back(row);
                }
                s.reference[rx] = std::move(table);
            }
        }
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &path)
    {
        const json j = read_json_file(path);
        try
        {
            return scenario_from_json(j);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path.string() + ": " + e.what());
        }
    }

} // namespace owc

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

#include "owc/config.hpp"
#include "owc/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace owc
{
    namespace
    {
        json vec_to_json(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

        Vec3 vec_from_json(const json &j, const std::string &field)
        {
            if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
                throw ConfigError(field + ": expected an array of three numbers");
            return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
        }

        const json &require(const json &j, const std::string &key, const std::string &path)
        {
            if (!j.is_object() || !j.contains(key))
                throw ConfigError(path + key + ": missing field");
            return j.at(key);
        }

        double number(const json &j, const std::string &key, const std::string &path)
        {
            const auto &v = require(j, key, path);
            if (!v.is_number())
                throw ConfigError(path + key + ": expected a number");
            return v.get<double>();
        }

        double number_or(const json &j, const std::string &key, const std::string &path, double fallback)
        {
            if (!j.is_object() || !j.contains(key))
                return fallback;
            return number(j, key, path);
        }

        NoiseSpec noise_from_json(const json &j, const std::string &path)
        {
            return {number(j, "noise_density_a_per_rt_hz", path), number(j, "bandwidth_hz", path)};
        }

        json noise_to_json(const NoiseSpec &n)
        {
            return {{"noise_density_a_per_rt_hz", n.current_density}, {"bandwidth_hz", n.bandwidth_hz}};
        }
    } // namespace

    json scene_to_json(const SceneConfig &scene)
    {
        json j;
        j["room"] = {{"size", vec_to_json(scene.room_size)}};
        json refl = json::object();
        for (const auto &s : scene.surfaces)
            refl[s.name] = s.reflectance;
        j["reflectance"] = refl;
        j["reflector_order"] = scene.surfaces.empty() ? 1.0 : scene.surfaces.front().lambertian_order;
        j["element_size"] = {{"first_order", scene.first_order_element_size},
                             {"second_order", scene.second_order_element_size}};
        j["communication_floor"] = scene.communication_floor;
        json wls = json::array();
        for (const auto &wl : scene.wavelengths)
            wls.push_back({{"name", std::string(to_string(wl.id))},
                           {"ld_power_w", wl.ld_power_w},
                           {"responsivity_a_per_w", wl.responsivity_a_per_w}});
        j["wavelengths"] = wls;
        json aps = json::array();
        for (const auto &ap : scene.access_points)
            aps.push_back({{"id", ap.id},
                           {"position", vec_to_json(ap.position)},
                           {"orientation", vec_to_json(ap.orientation)},
                           {"lambertian_order", ap.lambertian_order},
                           {"ld_per_unit", ap.ld_count}});
        j["access_points"] = aps;
        json locs = json::array();
        for (const auto &p : scene.locations)
            locs.push_back(vec_to_json(p));
        j["locations"] = locs;
        return j;
    }

    SceneConfig scene_from_json(const json &j)
    {
        if (!j.is_object())
            throw ConfigError("scene: expected a JSON object");
        SceneConfig scene;
        scene.room_size = vec_from_json(require(require(j, "room", ""), "size", "room."), "room.size");

        const auto &refl = require(j, "reflectance", "");
        if (!refl.is_object())
            throw ConfigError("reflectance: expected an object");
        const double order = number_or(j, "reflector_order", "", 1.0);
        const double walls = number_or(refl, "walls", "reflectance.", 0.0);
        scene.surfaces = room_surfaces(scene.room_size, walls, number(refl, "ceiling", "reflectance."),
                                       number(refl, "floor", "reflectance."), order);
        // Individual walls may override the shared value.
        for (auto &s : scene.surfaces)
            s.reflectance = number_or(refl, s.name, "reflectance.", s.reflectance);
        if (!refl.contains("walls"))
            for (const auto &s : scene.surfaces)
                if (s.name.starts_with("wall") && !refl.contains(s.name))
                    throw ConfigError("reflectance.walls: missing field");

        const auto &es = require(j, "element_size", "");
        scene.first_order_element_size = number(es, "first_order", "element_size.");
        scene.second_order_element_size = number(es, "second_order", "element_size.");
        scene.communication_floor = number(j, "communication_floor", "");

        const auto &wls = require(j, "wavelengths", "");
        if (!wls.is_array())
            throw ConfigError("wavelengths: expected an array");
        for (std::size_t i = 0; i < wls.size(); ++i)
        {
            const std::string path = "wavelengths[" + std::to_string(i) + "].";
            const auto &name = require(wls[i], "name", path);
            if (!name.is_string())
                throw ConfigError(path + "name: expected a string");
            WavelengthBand band;
            try
            {
                band.id = wavelength_from_string(name.get<std::string>());
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(path + "name: " + e.what());
            }
            band.ld_power_w = number(wls[i], "ld_power_w", path);
            band.responsivity_a_per_w = number(wls[i], "responsivity_a_per_w", path);
            scene.wavelengths.push_back(band);
        }

        const auto &aps = require(j, "access_points", "");
        if (aps.is_object())
        {
            // Compact form: shared parameters plus a list of positions.
            const int ld = static_cast<int>(number_or(aps, "ld_per_unit", "access_points.", 12));
            double n = 1.0;
            if (aps.contains("semi_angle_deg"))
            {
                const double semi = number(aps, "semi_angle_deg", "access_points.");
                try
                {
                    n = lambertian_order_from_semi_angle(semi);
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError(std::string("access_points.semi_angle_deg: ") + e.what());
                }
                // Snap to an integer when the semi-angle was meant to give one (60 deg -> 1).
                if (std::abs(n - std::round(n)) < 1e-9)
                    n = std::round(n);
            }
            n = number_or(aps, "lambertian_order", "access_points.", n);
            const auto &pos = require(aps, "positions", "access_points.");
            if (!pos.is_array())
                throw ConfigError("access_points.positions: expected an array");
            int id = 1;
            for (std::size_t i = 0; i < pos.size(); ++i)
                scene.access_points.push_back({id++, vec_from_json(pos[i], "access_points.positions[" + std::to_string(i) + "]"),
                                               {0, 0, -1}, n, ld});
        }
        else if (aps.is_array())
        {
            for (std::size_t i = 0; i < aps.size(); ++i)
            {
                const std::string path = "access_points[" + std::to_string(i) + "].";
                AccessPoint ap;
                ap.id = static_cast<int>(number_or(aps[i], "id", path, static_cast<double>(i + 1)));
                ap.position = vec_from_json(require(aps[i], "position", path), path + "position");
                if (aps[i].contains("orientation"))
                    ap.orientation = vec_from_json(aps[i]["orientation"], path + "orientation");
                ap.lambertian_order = number_or(aps[i], "lambertian_order", path, 1.0);
                ap.ld_count = static_cast<int>(number_or(aps[i], "ld_per_unit", path, 12));
                scene.access_points.push_back(ap);
            }
        }
        else
            throw ConfigError("access_points: expected an object or an array");

        for (std::size_t i = 0; i < scene.access_points.size(); ++i)
            if (scene.access_points[i].id != static_cast<int>(i + 1))
                throw ConfigError("access_points: ids must be 1..N in order");

        if (!j.contains("locations") || (j["locations"].is_string() && j["locations"] == "grid"))
            scene.locations = test_grid(scene);
        else if (j["locations"].is_array())
        {
            const auto &locs = j["locations"];
            for (std::size_t i = 0; i < locs.size(); ++i)
                scene.locations.push_back(vec_from_json(locs[i], "locations[" + std::to_string(i) + "]"));
        }
        else
            throw ConfigError("locations: expected \"grid\" or an array of positions");

        scene.validate();
        return scene;
    }

    json receiver_to_json(const Receiver &receiver)
    {
        json j;
        if (const auto *adr = std::get_if<AdrSpec>(&receiver.spec()))
        {
            j["type"] = "adr";
            json br = json::array();
            for (const auto &b : adr->branches)
                br.push_back({{"azimuth_deg", b.azimuth_deg},
                              {"elevation_deg", b.elevation_deg},
                              {"fov_deg", b.fov_deg},
                              {"area_m2", b.area_m2}});
            j["branches"] = br;
            j["noise"] = noise_to_json(adr->noise);
        }
        else
        {
            const auto &imr = std::get<ImrSpec>(receiver.spec());
            j["type"] = "imr";
            j["lens_fov_deg"] = imr.lens_fov_deg;
            j["grid_size"] = imr.grid_size;
            j["aperture_area_m2"] = imr.aperture_area_m2;
            j["noise"] = noise_to_json(imr.noise);
        }
        j["fov_semantics"] = "semi-angle";
        return j;
    }

    Receiver receiver_from_json(const json &j, const std::string &name)
    {
        const std::string path = "receivers." + name + ".";
        const auto &type = require(j, "type", path);
        if (!type.is_string())
            throw ConfigError(path + "type: expected \"adr\" or \"imr\"");
        try
        {
            if (type == "adr")
            {
                AdrSpec spec;
                const auto &br = require(j, "branches", path);
                if (!br.is_array())
                    throw ConfigError(path + "branches: expected an array");
                for (std::size_t i = 0; i < br.size(); ++i)
                {
                    const std::string bp = path + "branches[" + std::to_string(i) + "].";
                    spec.branches.push_back({number(br[i], "azimuth_deg", bp), number(br[i], "elevation_deg", bp),
                                             number(br[i], "fov_deg", bp), number(br[i], "area_m2", bp)});
                }
                spec.noise = noise_from_json(require(j, "noise", path), path + "noise.");
                return Receiver(spec, name);
            }
            if (type == "imr")
            {
                ImrSpec spec;
                spec.lens_fov_deg = number(j, "lens_fov_deg", path);
                spec.grid_size = static_cast<int>(number_or(j, "grid_size", path, 3));
                spec.aperture_area_m2 = number(j, "aperture_area_m2", path);
                spec.noise = noise_from_json(require(j, "noise", path), path + "noise.");
                return Receiver(spec, name);
            }
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(path + " " + e.what());
        }
        throw ConfigError(path + "type: expected \"adr\" or \"imr\"");
    }

    json read_json_file(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open '" + path.string() + "'");
        try
        {
            return json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(path.string() + ": " + e.what());
        }
    }

    SceneConfig load_scene(const std::filesystem::path &path)
    {
        const json j = read_json_file(path);
        try
        {
            return scene_from_json(j);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(path.string() + ": " + e.what());
        }
    }

    Receiver builtin_receiver(const std::string &name)
    {
        if (name == "adr")
            return Receiver::adr();
        if (name == "imr")
            return Receiver::imr();
        throw ConfigError("receiver: unknown receiver '" + name + "' (expected adr or imr)");
    }

    Receiver load_receiver(const std::filesystem::path &scene_path, const std::string &name)
    {
        const json j = read_json_file(scene_path);
        if (j.is_object() && j.contains("receivers") && j["receivers"].contains(name))
        {
            try
            {
                return receiver_from_json(j["receivers"][name], name);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(scene_path.string() + ": " + e.what());
            }
        }
        return builtin_receiver(name);
    }

    std::uint64_t fnv1a64(std::string_view bytes)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : bytes)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::string canonical_dump(const json &j)
    {
        // nlohmann::json objects are key-sorted and doubles print round-trip exact.
        return j.dump();
    }

} // namespace owc

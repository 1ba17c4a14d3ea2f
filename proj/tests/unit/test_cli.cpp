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

#include "owc/cli.hpp"
#include "owc/config.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace owc;
namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace
{
    struct Outcome
    {
        int code;
        std::string out, err;
    };

    Outcome owcsim(std::vector<std::string> args)
    {
        args.insert(args.begin(), "owcsim");
        std::vector<char *> argv;
        for (auto &a : args)
            argv.push_back(a.data());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    // Coarse copy of the bundled scene so the pipeline runs in well under a second.
    const fs::path &work_dir()
    {
        static const fs::path dir = [] {
            const fs::path d = fs::temp_directory_path() / "owc_cli_tests";
            fs::remove_all(d);
            fs::create_directories(d);
            json scene = read_json_file(fs::path(OWC_DATA_DIR) / "reference_scene.json");
            scene["element_size"] = {{"first_order", 0.5}, {"second_order", 1.0}};
            std::ofstream(d / "scene.json") << scene.dump(2);
            return d;
        }();
        return dir;
    }

    std::string data(const char *name) { return (fs::path(OWC_DATA_DIR) / name).string(); }
} // namespace

TEST_CASE("Full pipeline writes every artefact", "[cli]")
{
    const fs::path out = work_dir() / "run";
    const auto r = owcsim({"run", "--scene", (work_dir() / "scene.json").string(), "--receiver", "imr", "--scenario",
                           data("scenario2.json"), "--out", out.string()});
    INFO(r.err);
    REQUIRE(r.code == 0);
    for (const char *f : {"channels_imr.owcdb", "bandwidth_imr.csv", "bandwidth_cdf_imr.csv",
                          "allocation_scenario2_imr.csv", "sinr_scenario2_imr.csv", "manifest_build_imr.json",
                          "manifest_analyze_imr.json", "manifest_optimize_imr_scenario2.json"})
        CHECK(fs::exists(out / f));

    const std::string alloc = slurp(out / "allocation_scenario2_imr.csv");
    CHECK_THAT(alloc, StartsWith("# manifest: manifest_optimize_imr_scenario2.json\n"
                                 "user,ap,wavelength,element,sinr_db,bandwidth_hz,rate_bps\n"));
    CHECK(std::count(alloc.begin(), alloc.end(), '\n') == 10);
    CHECK_THAT(slurp(out / "bandwidth_cdf_imr.csv"), ContainsSubstring("value_hz,probability"));

    const json manifest = json::parse(slurp(out / "manifest_optimize_imr_scenario2.json"));
    CHECK(manifest["decisions"]["sinr_mode"] == "linear");
    CHECK(manifest["decisions"]["bin_width_s"] == 10e-12);
    CHECK(manifest["decisions"]["fov_semantics"] == "semi-angle");
    CHECK(manifest["receiver"] == "imr");
    CHECK(manifest["scene_hash"].get<std::string>().size() == 16);

    const auto exported = owcsim({"export", "--db", (out / "channels_imr.owcdb").string(), "--out",
                                  (out / "channels.csv").string()});
    CHECK(exported.code == 0);
    CHECK_THAT(slurp(out / "channels.csv"), StartsWith("location_id,ap_id,element_id,dc_gain,bin_index,bin_value\n"));
}

TEST_CASE("Outputs do not depend on the thread count", "[cli]")
{
    std::map<std::string, std::string> first;
    for (const char *threads : {"1", "4"})
    {
        const fs::path out = work_dir() / (std::string("threads_") + threads);
        const auto r = owcsim({"run", "--scene", (work_dir() / "scene.json").string(), "--receiver", "adr",
                               "--scenario", data("scenario1.json"), "--out", out.string(), "--threads", threads});
        REQUIRE(r.code == 0);
        for (const auto &entry : fs::directory_iterator(out))
        {
            const std::string name = entry.path().filename().string();
            std::string bytes = slurp(entry.path());
            if (entry.path().extension() == ".json")
            {
                // the manifests record where they were written; everything else must match
                json m = json::parse(bytes);
                m.erase("output_directory");
                m.erase("db_file");
                bytes = m.dump();
            }
            if (first.count(name) == 0)
                first[name] = bytes;
            else
                CHECK(first[name] == bytes);
        }
    }
    CHECK(first.size() == 8);
}

TEST_CASE("Command-line errors are categorised", "[cli]")
{
    const std::string scene = (work_dir() / "scene.json").string();

    auto r = owcsim({"build-db", "--scene", "/nonexistent.json"});
    CHECK(r.code != 0);
    CHECK_THAT(r.err, StartsWith("error[io]"));

    r = owcsim({"build-db", "--scene", scene, "--receiver", "wide"});
    CHECK(r.code != 0);
    CHECK_THAT(r.err, StartsWith("error[usage]"));

    r = owcsim({"frobnicate"});
    CHECK_THAT(r.err, StartsWith("error[usage]"));

    r = owcsim({"analyze", "--db", scene});
    CHECK(r.code != 0);
    CHECK_THAT(r.err, StartsWith("error[io]"));

    const fs::path out = work_dir() / "errors";
    REQUIRE(owcsim({"build-db", "--scene", scene, "--receiver", "adr", "--out", out.string()}).code == 0);
    const std::string db = (out / "channels_adr.owcdb").string();

    {
        std::ofstream(out / "lost.json") << R"({"name": "lost", "users": [[2.0, 4.0, 1.0]]})";
        r = owcsim({"optimize", "--db", db, "--scenario", (out / "lost.json").string(), "--out", out.string()});
        CHECK(r.code != 0);
        CHECK_THAT(r.err, StartsWith("error[input]"));
        CHECK_THAT(r.err, ContainsSubstring("users[0]"));
    }
    {
        std::ofstream(out / "wrong_rx.json") << R"({"name": "x", "receiver": "imr", "users": [[0.5, 0.5, 1.0]]})";
        r = owcsim({"optimize", "--db", db, "--scenario", (out / "wrong_rx.json").string(), "--out", out.string()});
        CHECK_THAT(r.err, StartsWith("error[config]"));
    }
    {
        json j;
        j["name"] = "crowd";
        j["users"] = json::array();
        for (int i = 0; i < 33; ++i)
            j["users"].push_back({0.5, 0.5, 1.0});
        std::ofstream(out / "crowd.json") << j.dump();
        r = owcsim({"optimize", "--db", db, "--scenario", (out / "crowd.json").string(), "--out", out.string()});
        CHECK_THAT(r.err, StartsWith("error[infeasible]"));
    }
    {
        std::ofstream(out / "broken.json") << "{ nope";
        r = owcsim({"optimize", "--db", db, "--scenario", (out / "broken.json").string(), "--out", out.string()});
        CHECK_THAT(r.err, StartsWith("error[config]"));
    }
    // Failed commands leave no partial outputs behind
    CHECK_FALSE(fs::exists(out / "allocation_lost_adr.csv"));
    for (const auto &entry : fs::directory_iterator(out))
        CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("Help and version", "[cli]")
{
    CHECK(owcsim({"--help"}).code == 0);
    const auto v = owcsim({"--version"});
    CHECK(v.code == 0);
    CHECK_THAT(v.out, ContainsSubstring(OWC_VERSION));
}

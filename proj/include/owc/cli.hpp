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

#ifndef OWC_CLI_HPP
#define OWC_CLI_HPP

#include "owc/allocation.hpp"
#include "owc/config.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace owc::cli
{
    namespace fs = std::filesystem;

    // Everything needed to reproduce one command's outputs. Thread count is deliberately
    // absent: it never changes results.
    struct RunManifest
    {
        std::string command;
        std::string scene_file;
        std::string receiver;
        std::string scenario_file;
        std::string db_file;
        std::string output_directory;
        double bin_width_s = 0.0;
        double window_s = 0.0;
        int max_order = 2;
        std::string sinr_mode = "linear";
        int ld_per_unit = 0;
        std::string scene_hash;
        std::vector<std::string> outputs;

        json to_json() const;
        std::string file_name() const;
    };

    struct BuildOptions
    {
        fs::path scene;
        std::string receiver = "imr";
        fs::path out_dir = ".";
        std::optional<fs::path> db; // default: <out_dir>/channels_<receiver>.owcdb
        double bin_width_s = 10e-12;
        int orders = 2;
        unsigned threads = 1;
    };

    struct AnalyzeOptions
    {
        fs::path db;
        fs::path out_dir = ".";
        unsigned threads = 1;
    };

    struct OptimizeOptions
    {
        fs::path db;
        fs::path scenario;
        fs::path out_dir = ".";
        SinrMode mode = SinrMode::Linear;
    };

    struct OptimizeResult
    {
        AllocationReport report;
        std::optional<double> reference_objective;
        std::vector<std::size_t> reference_mismatches; // users whose row differs from the published one
    };

    fs::path cmd_build_db(const BuildOptions &opt, std::ostream &log);
    void cmd_analyze(const AnalyzeOptions &opt, std::ostream &log);
    OptimizeResult cmd_optimize(const OptimizeOptions &opt, std::ostream &log);
    void cmd_export(const fs::path &db, const fs::path &out_csv, std::ostream &log);

    // Parses arguments and dispatches. Returns the process exit status; failures print one
    // categorised line "error[<category>]: <message>" to err.
    int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace owc::cli

#endif

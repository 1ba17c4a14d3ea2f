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
#include "owc/analysis.hpp"
#include "owc/channel_db.hpp"
#include "owc/errors.hpp"
#include "owc/scenario.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace owc::cli
{
    namespace
    {
        std::string hex64(std::uint64_t v)
        {
            std::ostringstream ss;
            ss << std::hex << std::setw(16) << std::setfill('0') << v;
            return ss.str();
        }

        // Writes to a sibling temporary and renames, so a failed command leaves no partial file.
        void write_atomically(const fs::path &path, const std::string &content)
        {
            if (path.has_parent_path())
                fs::create_directories(path.parent_path());
            const fs::path tmp = path.string() + ".tmp";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if (!out)
                    throw IoError("cannot open '" + tmp.string() + "' for writing");
                out.write(content.data(), static_cast<std::streamsize>(content.size()));
                if (!out)
                    throw IoError("failed writing '" + tmp.string() + "'");
            }
            std::error_code ec;
            fs::rename(tmp, path, ec);
            if (ec)
                throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
        }

        void write_manifest(const fs::path &out_dir, const RunManifest &m)
        {
            write_atomically(out_dir / m.file_name(), m.to_json().dump(2) + "\n");
        }

        std::string csv_preamble(const RunManifest &m)
        {
            return "# manifest: " + m.file_name() + "\n";
        }

        RunManifest manifest_from_db(const ChannelDB &db, const std::string &command, const fs::path &db_path,
                                     const fs::path &out_dir)
        {
            const auto &h = db.header();
            const SceneConfig scene = db.scene();
            RunManifest m;
            m.command = command;
            m.receiver = h.receiver_id;
            m.db_file = db_path.string();
            m.output_directory = out_dir.string();
            m.bin_width_s = h.bin_width_s;
            m.window_s = h.window_s;
            m.max_order = static_cast<int>(h.max_order);
            m.ld_per_unit = scene.access_points.front().ld_count;
            m.scene_hash = hex64(h.scene_hash);
            return m;
        }

        std::string fmt(double v, int digits = 12)
        {
            std::ostringstream ss;
            ss << std::setprecision(digits) << v;
            return ss.str();
        }
    } // namespace

    json RunManifest::to_json() const
    {
        json j;
        j["command"] = command;
        j["tool_version"] = OWC_VERSION;
        j["scene_file"] = scene_file;
        j["receiver"] = receiver;
        j["scenario_file"] = scenario_file;
        j["db_file"] = db_file;
        j["output_directory"] = output_directory;
        j["scene_hash"] = scene_hash;
        j["decisions"] = {
            {"bin_width_s", bin_width_s},
            {"ir_window_s", window_s},
            {"max_reflection_order", max_order},
            {"fov_semantics", "semi-angle"},
            {"sinr_mode", sinr_mode},
            {"ld_per_unit", ld_per_unit},
            {"ap_power", "ld_per_unit x LD module power, single Lambertian point source"},
            {"bandwidth_convention", "|H(f)|/|H(0)| = 1/sqrt(2) on the optical power impulse response"},
            {"cdf_selection", "per location, record with the highest DC gain over all APs and elements"},
            {"data_rate_rule", "min(receiver bandwidth, channel bandwidth) / 0.7, truncated to 0.1 Gbit/s"},
            {"background_noise", "photocurrent of unmodulated same-colour light from other APs"}};
        j["outputs"] = outputs;
        return j;
    }

    std::string RunManifest::file_name() const
    {
        std::string name = "manifest_" + command + "_" + receiver;
        if (!scenario_file.empty())
            name += "_" + fs::path(scenario_file).stem().string();
        return name + ".json";
    }

    fs::path cmd_build_db(const BuildOptions &opt, std::ostream &log)
    {
        const SceneConfig scene = load_scene(opt.scene);
        const Receiver receiver = load_receiver(opt.scene, opt.receiver);
        if (scene.locations.empty())
            throw ConfigError(opt.scene.string() + ": locations: no receiver locations");

        TraceOptions trace;
        trace.bin_width_s = opt.bin_width_s;
        trace.max_order = opt.orders;
        if (!(trace.bin_width_s > 0.0))
            throw std::invalid_argument("--dt must be positive");
        if (trace.max_order < 0 || trace.max_order > 2)
            throw std::invalid_argument("--orders must be 0, 1 or 2");

        log << "tracing " << scene.locations.size() << " locations x " << scene.access_points.size() << " APs x "
            << receiver.element_count() << " " << receiver.name() << " elements\n";
        const ChannelDB db = build_channel_db(scene, receiver, scene.locations, trace, opt.threads);

        const fs::path db_path = opt.db ? *opt.db : opt.out_dir / ("channels_" + receiver.name() + ".owcdb");
        write_atomically(db_path, db.serialize());

        RunManifest m = manifest_from_db(db, "build", db_path, opt.out_dir);
        m.scene_file = opt.scene.string();
        m.outputs = {db_path.filename().string()};
        write_manifest(opt.out_dir, m);
        log << "wrote " << db.records().size() << " records to " << db_path.string() << "\n";
        return db_path;
    }

    void cmd_analyze(const AnalyzeOptions &opt, std::ostream &log)
    {
        const ChannelDB db = ChannelDB::load(opt.db);
        if (db.empty())
            throw std::invalid_argument(opt.db.string() + ": channel database has no records");
        const std::string rx = db.header().receiver_id;

        RunManifest m = manifest_from_db(db, "analyze", opt.db, opt.out_dir);
        const std::string table_name = "bandwidth_" + rx + ".csv";
        const std::string cdf_name = "bandwidth_cdf_" + rx + ".csv";
        m.outputs = {table_name, cdf_name};

        std::ostringstream table;
        table << csv_preamble(m) << "location_id,ap_id,element_id,f3db_hz\n";
        for (const auto &e : bandwidth_table(db, opt.threads))
            table << e.location_id << ',' << e.ap_id << ',' << e.element_id << ',' << fmt(e.bandwidth.f3db_hz) << '\n';

        const CdfCurve cdf = bandwidth_cdf(db);
        std::ostringstream cdf_csv;
        cdf_csv << csv_preamble(m) << "value_hz,probability\n";
        for (std::size_t i = 0; i < cdf.values.size(); ++i)
            cdf_csv << fmt(cdf.values[i]) << ',' << fmt(cdf.probabilities[i]) << '\n';

        write_atomically(opt.out_dir / table_name, table.str());
        write_atomically(opt.out_dir / cdf_name, cdf_csv.str());
        write_manifest(opt.out_dir, m);
        log << rx << " bandwidth over " << cdf.values.size() << " locations: min " << fmt(cdf.values.front() / 1e9, 4)
            << " GHz, max " << fmt(cdf.values.back() / 1e9, 4) << " GHz\n";
    }

    OptimizeResult cmd_optimize(const OptimizeOptions &opt, std::ostream &log)
    {
        const ChannelDB db = ChannelDB::load(opt.db);
        const Scenario scenario = load_scenario(opt.scenario);
        const std::string rx = db.header().receiver_id;
        if (scenario.receiver && *scenario.receiver != rx)
            throw ConfigError(opt.scenario.string() + ": receiver: scenario is for '" + *scenario.receiver +
                              "' but the database holds '" + rx + "'");

        std::vector<std::uint32_t> ids;
        for (std::size_t u = 0; u < scenario.users.size(); ++u)
        {
            const auto id = db.find_location(scenario.users[u]);
            if (!id)
            {
                std::ostringstream msg;
                msg << opt.scenario.string() << ": users[" << u << "]: location " << scenario.users[u]
                    << " is not in the channel database";
                throw LookupError(msg.str());
            }
            ids.push_back(*id);
        }

        const SceneConfig scene = db.scene();
        const Receiver receiver = db.receiver();
        const AllocationProblem problem = AllocationProblem::from_db(db, ids, opt.mode);

        OptimizeResult result;
        result.report = optimize(problem);
        attach_channel_metrics(result.report, db, ids, receiver.noise().bandwidth_hz);

        if (auto ref = scenario.reference_assignment(rx, scene))
        {
            const auto issues = validate_assignment(problem, *ref);
            if (!issues.empty())
                throw ConfigError(opt.scenario.string() + ": reference." + rx + ": " + issues.front());
            result.reference_objective = objective(problem, *ref);
            for (std::size_t u = 0; u < ref->size(); ++u)
                if ((*ref)[u] != result.report.assignment[u])
                    result.reference_mismatches.push_back(u);
        }

        RunManifest m = manifest_from_db(db, "optimize", opt.db, opt.out_dir);
        m.scenario_file = opt.scenario.string();
        m.sinr_mode = to_string(opt.mode);
        const std::string stem = fs::path(opt.scenario).stem().string();
        const std::string report_name = "allocation_" + stem + "_" + rx + ".csv";
        const std::string sinr_name = "sinr_" + stem + "_" + rx + ".csv";
        m.outputs = {report_name, sinr_name};

        const auto &rep = result.report;
        std::ostringstream csv;
        csv << csv_preamble(m) << "user,ap,wavelength,element,sinr_db,bandwidth_hz,rate_bps\n";
        for (std::size_t u = 0; u < rep.assignment.size(); ++u)
        {
            const auto &s = rep.assignment[u];
            csv << u + 1 << ',' << s.ap + 1 << ',' << to_string(scene.wavelengths[s.wavelength].id) << ','
                << s.element + 1 << ',' << fmt(rep.breakdown[u].sinr_db()) << ',' << fmt(rep.channel_bandwidth_hz[u])
                << ',' << fmt(rep.rate_bps[u]) << '\n';
        }

        std::ostringstream sinr_csv;
        sinr_csv << csv_preamble(m) << "user,signal_a,interference_a,background_a,noise_a,sinr_linear\n";
        for (std::size_t u = 0; u < rep.breakdown.size(); ++u)
        {
            const auto &b = rep.breakdown[u];
            sinr_csv << u + 1 << ',' << fmt(b.signal) << ',' << fmt(b.interference) << ',' << fmt(b.background) << ','
                     << fmt(b.noise) << ',' << fmt(b.sinr) << '\n';
        }
        sinr_csv << "# objective_sum_sinr," << fmt(rep.objective, 17) << '\n';
        if (result.reference_objective)
            sinr_csv << "# reference_objective_sum_sinr," << fmt(*result.reference_objective, 17) << '\n';

        write_atomically(opt.out_dir / report_name, csv.str());
        write_atomically(opt.out_dir / sinr_name, sinr_csv.str());
        write_manifest(opt.out_dir, m);

        log << scenario.name << " / " << rx << ": sum SINR " << fmt(rep.objective, 8) << " (" << rep.nodes_explored
            << " search nodes)\n";
        if (result.reference_objective)
        {
            log << "published assignment under this model: sum SINR " << fmt(*result.reference_objective, 8) << "\n";
            for (auto u : result.reference_mismatches)
                log << "  user " << u + 1 << " differs from the published row\n";
        }
        return result;
    }

    void cmd_export(const fs::path &db_path, const fs::path &out_csv, std::ostream &log)
    {
        const ChannelDB db = ChannelDB::load(db_path);
        std::ostringstream csv;
        db.export_csv(csv);
        write_atomically(out_csv, csv.str());
        log << "exported " << db.records().size() << " records to " << out_csv.string() << "\n";
    }

    int run(int argc, char **argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Indoor optical wireless channel simulation and resource allocation"};
        app.set_version_flag("--version", std::string(OWC_VERSION));
        app.require_subcommand(1);

        unsigned threads = 1;
        auto add_threads = [&](CLI::App *sub)
        {
            sub->add_option("--threads", threads, "Worker threads (results do not depend on this)")
                ->envname("OWC_THREADS")
                ->check(CLI::Range(1u, 1024u));
        };

        BuildOptions build;
        std::string db_override;
        auto *b = app.add_subcommand("build-db", "Trace a channel database for every scene location");
        b->add_option("--scene", build.scene, "Scene file (JSON)")->required()->envname("OWC_SCENE");
        b->add_option("--receiver", build.receiver, "Receiver type")->envname("OWC_RECEIVER")->check(CLI::IsMember({"adr", "imr"}));
        b->add_option("--out", build.out_dir, "Output directory")->envname("OWC_OUT");
        b->add_option("--db", db_override, "Database path (default <out>/channels_<receiver>.owcdb)")->envname("OWC_DB");
        b->add_option("--dt", build.bin_width_s, "Impulse-response bin width in seconds")->envname("OWC_DT");
        b->add_option("--orders", build.orders, "Highest reflection order")->envname("OWC_ORDERS")->check(CLI::Range(0, 2));
        add_threads(b);

        AnalyzeOptions analyze;
        auto *a = app.add_subcommand("analyze", "Bandwidth table and CDF for a channel database");
        a->add_option("--db", analyze.db, "Channel database")->required()->envname("OWC_DB");
        a->add_option("--out", analyze.out_dir, "Output directory")->envname("OWC_OUT");
        add_threads(a);

        OptimizeOptions optimize_opt;
        std::string mode = "linear";
        auto *o = app.add_subcommand("optimize", "Optimal AP / wavelength / element allocation for a scenario");
        o->add_option("--db", optimize_opt.db, "Channel database")->required()->envname("OWC_DB");
        o->add_option("--scenario", optimize_opt.scenario, "Scenario file (JSON)")->required()->envname("OWC_SCENARIO");
        o->add_option("--out", optimize_opt.out_dir, "Output directory")->envname("OWC_OUT");
        o->add_option("--sinr-mode", mode, "SINR model")->envname("OWC_SINR_MODE")->check(CLI::IsMember({"linear", "squared"}));
        add_threads(o);

        std::string export_db, export_out;
        auto *x = app.add_subcommand("export", "Lossless CSV dump of a channel database");
        x->add_option("--db", export_db, "Channel database")->required()->envname("OWC_DB");
        x->add_option("--out", export_out, "CSV file")->required();

        std::string run_scenario;
        auto *r = app.add_subcommand("run", "build-db, analyze and optimize in one go");
        r->add_option("--scene", build.scene, "Scene file (JSON)")->required()->envname("OWC_SCENE");
        r->add_option("--receiver", build.receiver, "Receiver type")->envname("OWC_RECEIVER")->check(CLI::IsMember({"adr", "imr"}));
        r->add_option("--scenario", run_scenario, "Scenario file (JSON)")->required()->envname("OWC_SCENARIO");
        r->add_option("--out", build.out_dir, "Output directory")->envname("OWC_OUT");
        r->add_option("--dt", build.bin_width_s, "Impulse-response bin width in seconds")->envname("OWC_DT");
        r->add_option("--orders", build.orders, "Highest reflection order")->envname("OWC_ORDERS")->check(CLI::Range(0, 2));
        r->add_option("--sinr-mode", mode, "SINR model")->envname("OWC_SINR_MODE")->check(CLI::IsMember({"linear", "squared"}));
        add_threads(r);

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            out << app.help();
            return 0;
        }
        catch (const CLI::CallForVersion &e)
        {
            out << OWC_VERSION << "\n";
            return 0;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error[usage]: " << e.what() << "\n";
            return 64;
        }

        try
        {
            if (b->parsed())
            {
                build.threads = threads;
                if (!db_override.empty())
                    build.db = db_override;
                cmd_build_db(build, out);
            }
            else if (a->parsed())
            {
                analyze.threads = threads;
                cmd_analyze(analyze, out);
            }
            else if (o->parsed())
            {
                optimize_opt.mode = sinr_mode_from_string(mode);
                cmd_optimize(optimize_opt, out);
            }
            else if (x->parsed())
                cmd_export(export_db, export_out, out);
            else if (r->parsed())
            {
                build.threads = threads;
                const fs::path db_path = cmd_build_db(build, out);
                cmd_analyze({db_path, build.out_dir, threads}, out);
                cmd_optimize({db_path, run_scenario, build.out_dir, sinr_mode_from_string(mode)}, out);
            }
            return 0;
        }
        catch (const ConfigError &e)
        {
            err << "error[config]: " << e.what() << "\n";
            return 2;
        }
        catch (const IoError &e)
        {
            err << "error[io]: " << e.what() << "\n";
            return 3;
        }
        catch (const InfeasibleError &e)
        {
            err << "error[infeasible]: " << e.what() << "\n";
            return 5;
        }
        catch (const LookupError &e)
        {
            err << "error[input]: " << e.what() << "\n";
            return 4;
        }
        catch (const std::invalid_argument &e)
        {
            err << "error[input]: " << e.what() << "\n";
            return 4;
        }
        catch (const std::exception &e)
        {
            err << "error[internal]: " << e.what() << "\n";
            return 1;
        }
    }

} // namespace owc::cli

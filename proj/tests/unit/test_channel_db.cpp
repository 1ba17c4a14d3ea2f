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

#include "owc/channel_db.hpp"
#include "owc/config.hpp"
#include "owc/errors.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <map>
#include <tuple>
#include <fstream>
#include <sstream>

using namespace owc;

namespace
{
    SceneConfig small_scene()
    {
        SceneConfig scene = build_reference_scene();
        scene.first_order_element_size = 0.5;
        scene.second_order_element_size = 1.0;
        return scene;
    }

    const ChannelDB &small_db()
    {
        static const ChannelDB db = [] {
            const SceneConfig scene = small_scene();
            return build_channel_db(scene, Receiver::imr(), scene.locations, {}, 2);
        }();
        return db;
    }
} // namespace

TEST_CASE("Database shape", "[channel_db]")
{
    const ChannelDB &db = small_db();
    CHECK(db.records().size() == 32 * 8 * 9);
    CHECK(db.header().n_locations == 32);
    CHECK(db.header().n_aps == 8);
    CHECK(db.header().n_elements == 9);
    CHECK(db.header().receiver_id == "imr");
    CHECK(db.header().scene_hash == scene_hash(small_scene()));

    const auto &r = db.at(3, 5, 7);
    CHECK(r.location_id == 3);
    CHECK(r.ap_id == 5);
    CHECK(r.element_id == 7);
    CHECK_THROWS_AS(db.at(33, 1, 1), LookupError);
    CHECK_THROWS_AS(db.at(1, 0, 1), LookupError);
    CHECK_THROWS_AS(db.at(1, 1, 10), LookupError);

    // grid ids run along y first
    CHECK(db.find_location({0.5, 1.5, 1.0}) == 2u);
    CHECK(db.find_location({2.5, 3.5, 1.0}) == 20u);
    CHECK(db.find_location({2.5, 3.5 + 1e-7, 1.0}) == 20u);
    CHECK_FALSE(db.find_location({2.0, 3.5, 1.0}).has_value());
}

TEST_CASE("Wide receiver database", "[channel_db]")
{
    const SceneConfig scene = small_scene();
    const ChannelDB db = build_channel_db(scene, Receiver::adr(), scene.locations, {}, 1);
    CHECK(db.records().size() == 1024);
}

TEST_CASE("Embedded scene and receiver", "[channel_db]")
{
    const ChannelDB &db = small_db();
    CHECK(canonical_dump(scene_to_json(db.scene())) == canonical_dump(scene_to_json(small_scene())));
    CHECK(canonical_dump(receiver_to_json(db.receiver())) == canonical_dump(receiver_to_json(Receiver::imr())));
}

TEST_CASE("Database serialization round trip", "[channel_db]")
{
    const ChannelDB &db = small_db();
    const std::string bytes = db.serialize();
    const ChannelDB back = ChannelDB::deserialize(bytes);
    CHECK(back.serialize() == bytes);
    REQUIRE(back.records().size() == db.records().size());
    for (std::size_t i = 0; i < db.records().size(); ++i)
    {
        const auto &a = db.records()[i];
        const auto &b = back.records()[i];
        CHECK(a.dc_gain == b.dc_gain);
        CHECK(a.ir.start_bin == b.ir.start_bin);
        CHECK(a.ir.bins == b.ir.bins);
        CHECK(a.split.los == b.split.los);
    }

    const auto path = std::filesystem::temp_directory_path() / "owc_roundtrip.owcdb";
    db.save(path);
    CHECK(ChannelDB::load(path).serialize() == bytes);
    std::filesystem::remove(path);
}

TEST_CASE("Corrupt databases are rejected", "[channel_db]")
{
    const std::string bytes = small_db().serialize();
    CHECK_THROWS_AS(ChannelDB::deserialize("NOTADB" + bytes.substr(6)), IoError);
    CHECK_THROWS_AS(ChannelDB::deserialize(bytes.substr(0, bytes.size() / 2)), IoError);
    CHECK_THROWS_AS(ChannelDB::deserialize(bytes + "x"), IoError);
    CHECK_THROWS_AS(ChannelDB::deserialize(""), IoError);
    CHECK_THROWS_AS(ChannelDB::load("/nonexistent/channels.owcdb"), IoError);

    // Tampering with the embedded scene breaks the fingerprint
    std::string tampered = bytes;
    const auto pos = tampered.find("\"ceiling\":0.8");
    REQUIRE(pos != std::string::npos);
    tampered[pos + 12] = '7';
    CHECK_THROWS_AS(ChannelDB::deserialize(tampered), IoError);
}

TEST_CASE("Output does not depend on thread count", "[channel_db]")
{
    const SceneConfig scene = small_scene();
    const std::vector<Vec3> locs(scene.locations.begin(), scene.locations.begin() + 6);
    const std::string one = build_channel_db(scene, Receiver::adr(), locs, {}, 1).serialize();
    const std::string many = build_channel_db(scene, Receiver::adr(), locs, {}, 5).serialize();
    CHECK(one == many);
}

TEST_CASE("Database build input checks", "[channel_db]")
{
    const SceneConfig scene = small_scene();
    CHECK_THROWS_AS(build_channel_db(scene, Receiver::adr(), std::span<const Vec3>{}, {}, 1), std::invalid_argument);
    ChannelDbHeader header = small_db().header();
    std::vector<ChannelRecord> records(small_db().records().begin(), small_db().records().end() - 1);
    CHECK_THROWS(ChannelDB(header, records));
}

TEST_CASE("CSV export is lossless", "[channel_db]")
{
    const ChannelDB &db = small_db();
    std::ostringstream os;
    db.export_csv(os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "location_id,ap_id,element_id,dc_gain,bin_index,bin_value");

    // Rebuild DC gains from the exported bins
    std::map<std::tuple<int, int, int>, double> sums;
    std::size_t rows = 0;
    while (std::getline(is, line))
    {
        int l, a, e;
        double dc, v;
        long long k;
        char c;
        std::istringstream ls(line);
        ls >> l >> c >> a >> c >> e >> c >> dc >> c >> k >> c >> v;
        REQUIRE(ls);
        REQUIRE(dc == db.at(l, a, e).dc_gain);
        const auto &ir = db.at(l, a, e).ir;
        REQUIRE(v == ir.bins.at(static_cast<std::size_t>(k - ir.start_bin)));
        ++rows;
    }
    std::size_t expected = 0;
    for (const auto &r : db.records())
        for (double v : r.ir.bins)
            expected += v != 0.0;
    CHECK(rows == expected);
}

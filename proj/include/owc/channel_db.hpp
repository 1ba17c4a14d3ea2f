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

#ifndef OWC_CHANNEL_DB_HPP
#define OWC_CHANNEL_DB_HPP

#include "owc/propagation.hpp"
#include "owc/receivers.hpp"
#include "owc/scene.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace owc
{
    // All ids are 1-based, matching the tables printed by the CLI.
    struct ChannelRecord
    {
        std::uint32_t location_id = 0;
        std::uint32_t ap_id = 0;
        std::uint32_t element_id = 0;
        double dc_gain = 0.0; // sum of the impulse-response bins
        OrderSplit split;
        ImpulseResponse ir;
    };

    struct ChannelDbHeader
    {
        std::uint64_t scene_hash = 0;
        std::string receiver_id;
        double bin_width_s = 0.0;
        double window_s = 0.0;
        std::uint32_t max_order = 0;
        std::uint32_t n_locations = 0;
        std::uint32_t n_aps = 0;
        std::uint32_t n_elements = 0;
        std::string scene_json;    // canonical scene the DB was traced from
        std::string receiver_json; // canonical receiver definition
        std::string notes;
        std::vector<Vec3> locations;
    };

    // Precomputed channel gains, one record per (location, AP, receiver element).
    // Records are wavelength independent: the received power of colour l from AP a is
    // P_tx(a, l) * dc_gain.
    //
    // Binary layout (little endian):
    //   "OWCDB1"
    //   u64 scene_hash, str receiver_id, f64 bin_width_s, f64 window_s, u32 max_order,
    //   u32 n_locations, u32 n_aps, u32 n_elements, str scene_json, str receiver_json, str notes,
    //   n_locations x (f64 x, f64 y, f64 z), u64 record_count,
    //   records: u32 location_id, u32 ap_id, u32 element_id, f64 dc_gain, f64 los, f64 first,
    //            f64 second, i64 start_bin, u32 n_bins, n_bins x f64
    // where str = u32 length + bytes.
    class ChannelDB
    {
    public:
        static constexpr char magic[] = "OWCDB1";

        ChannelDB() = default;
        ChannelDB(ChannelDbHeader header, std::vector<ChannelRecord> records);

        const ChannelDbHeader &header() const { return header_; }
        const std::vector<ChannelRecord> &records() const { return records_; }
        bool empty() const { return records_.empty(); }

        const ChannelRecord &at(std::uint32_t location_id, std::uint32_t ap_id, std::uint32_t element_id) const;
        std::optional<std::uint32_t> find_location(const Vec3 &p, double tol = 1e-6) const;

        SceneConfig scene() const;
        Receiver receiver() const;

        std::string serialize() const;
        static ChannelDB deserialize(const std::string &bytes);

        void save(const std::filesystem::path &path) const;
        static ChannelDB load(const std::filesystem::path &path);

        // One row per stored bin: location_id,ap_id,element_id,dc_gain,bin_index,bin_value.
        // Values are printed with 17 significant digits so the export is lossless.
        void export_csv(std::ostream &os) const;

    private:
        ChannelDbHeader header_;
        std::vector<ChannelRecord> records_;
    };

    // Traces every (location, AP, element) combination. Output does not depend on 'threads'.
    ChannelDB build_channel_db(const SceneConfig &scene, const Receiver &receiver, std::span<const Vec3> locations,
                               const TraceOptions &options = {}, unsigned threads = 1);

    std::uint64_t scene_hash(const SceneConfig &scene);

} // namespace owc

#endif

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
#include "owc/parallel.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little, "ChannelDB serialization assumes a little-endian host");

namespace owc
{
    namespace
    {
        class Writer
        {
        public:
            template <typename T>
            void put(T v)
            {
                char buf[sizeof(T)];
                std::memcpy(buf, &v, sizeof(T));
                out_.append(buf, sizeof(T));
            }
            void put_string(const std::string &s)
            {
                put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
                out_.append(s);
            }
            void put_doubles(const std::vector<double> &v)
            {
                out_.append(reinterpret_cast<const char *>(v.data()), v.size() * sizeof(double));
            }
            std::string take() { return std::move(out_); }

        private:
            std::string out_;
        };

        class Reader
        {
        public:
            explicit Reader(const std::string &in) : in_(in) {}

            template <typename T>
            T get()
            {
                need(sizeof(T));
                T v;
                std::memcpy(&v, in_.data() + pos_, sizeof(T));
                pos_ += sizeof(T);
                return v;
            }
            std::string get_string()
            {
                const auto n = get<std::uint32_t>();
                need(n);
                std::string s = in_.substr(pos_, n);
                pos_ += n;
                return s;
            }
            std::vector<double> get_doubles(std::size_t n)
            {
                need(n * sizeof(double));
                std::vector<double> v(n);
                std::memcpy(v.data(), in_.data() + pos_, n * sizeof(double));
                pos_ += n * sizeof(double);
                return v;
            }
            void expect_magic()
            {
                const std::size_t n = sizeof(ChannelDB::magic) - 1;
                need(n);
                if (in_.compare(0, n, ChannelDB::magic) != 0)
                    throw IoError("not a channel database (bad magic)");
                pos_ += n;
            }
            bool done() const { return pos_ == in_.size(); }

        private:
            void need(std::size_t n) const
            {
                if (in_.size() - pos_ < n)
                    throw IoError("channel database is truncated");
            }
            const std::string &in_;
            std::size_t pos_ = 0;
        };

        std::size_t record_index(const ChannelDbHeader &h, std::uint32_t loc, std::uint32_t ap, std::uint32_t el)
        {
            return ((static_cast<std::size_t>(loc) - 1) * h.n_aps + (ap - 1)) * h.n_elements + (el - 1);
        }
    } // namespace

    ChannelDB::ChannelDB(ChannelDbHeader header, std::vector<ChannelRecord> records)
        : header_(std::move(header)), records_(std::move(records))
    {
        const std::size_t expected = static_cast<std::size_t>(header_.n_locations) * header_.n_aps * header_.n_elements;
        if (records_.size() != expected)
            throw IoError("channel database: record count does not match the key cross-product");
        if (header_.locations.size() != header_.n_locations)
            throw IoError("channel database: location table does not match n_locations");
        for (std::size_t i = 0; i < records_.size(); ++i)
        {
            const auto &r = records_[i];
            if (r.location_id < 1 || r.location_id > header_.n_locations || r.ap_id < 1 || r.ap_id > header_.n_aps ||
                r.element_id < 1 || r.element_id > header_.n_elements ||
                record_index(header_, r.location_id, r.ap_id, r.element_id) != i)
                throw IoError("channel database: records are not in (location, ap, element) order");
        }
    }

    const ChannelRecord &ChannelDB::at(std::uint32_t location_id, std::uint32_t ap_id, std::uint32_t element_id) const
    {
        if (location_id < 1 || location_id > header_.n_locations || ap_id < 1 || ap_id > header_.n_aps ||
            element_id < 1 || element_id > header_.n_elements)
        {
            std::ostringstream msg;
            msg << "no channel record for location " << location_id << ", AP " << ap_id << ", element " << element_id;
            throw LookupError(msg.str());
        }
        return records_[record_index(header_, location_id, ap_id, element_id)];
    }

    std::optional<std::uint32_t> ChannelDB::find_location(const Vec3 &p, double tol) const
    {
        for (std::size_t i = 0; i < header_.locations.size(); ++i)
            if (approx_equal(header_.locations[i], p, tol))
                return static_cast<std::uint32_t>(i + 1);
        return std::nullopt;
    }

    SceneConfig ChannelDB::scene() const
    {
        return scene_from_json(json::parse(header_.scene_json));
    }

    Receiver ChannelDB::receiver() const
    {
        return receiver_from_json(json::parse(header_.receiver_json), header_.receiver_id);
    }

    std::string ChannelDB::serialize() const
    {
        Writer w;
        for (std::size_t i = 0; i + 1 < sizeof(magic); ++i)
            w.put<char>(magic[i]);
        w.put<std::uint64_t>(header_.scene_hash);
        w.put_string(header_.receiver_id);
        w.put<double>(header_.bin_width_s);
        w.put<double>(header_.window_s);
        w.put<std::uint32_t>(header_.max_order);
        w.put<std::uint32_t>(header_.n_locations);
        w.put<std::uint32_t>(header_.n_aps);
        w.put<std::uint32_t>(header_.n_elements);
        w.put_string(header_.scene_json);
        w.put_string(header_.receiver_json);
        w.put_string(header_.notes);
        for (const auto &p : header_.locations)
        {
            w.put<double>(p.x);
            w.put<double>(p.y);
            w.put<double>(p.z);
        }
        w.put<std::uint64_t>(records_.size());
        for (const auto &r : records_)
        {
            w.put<std::uint32_t>(r.location_id);
            w.put<std::uint32_t>(r.ap_id);
            w.put<std::uint32_t>(r.element_id);
            w.put<double>(r.dc_gain);
            w.put<double>(r.split.los);
            w.put<double>(r.split.first);
            w.put<double>(r.split.second);
            w.put<std::int64_t>(r.ir.start_bin);
            w.put<std::uint32_t>(static_cast<std::uint32_t>(r.ir.bins.size()));
            w.put_doubles(r.ir.bins);
        }
        return w.take();
    }

    ChannelDB ChannelDB::deserialize(const std::string &bytes)
    {
        Reader r(bytes);
        r.expect_magic();
        ChannelDbHeader h;
        h.scene_hash = r.get<std::uint64_t>();
        h.receiver_id = r.get_string();
        h.bin_width_s = r.get<double>();
        h.window_s = r.get<double>();
        h.max_order = r.get<std::uint32_t>();
        h.n_locations = r.get<std::uint32_t>();
        h.n_aps = r.get<std::uint32_t>();
        h.n_elements = r.get<std::uint32_t>();
        h.scene_json = r.get_string();
        h.receiver_json = r.get_string();
        h.notes = r.get_string();
        if (!(h.bin_width_s > 0.0))
            throw IoError("channel database: invalid bin width");
        for (std::uint32_t i = 0; i < h.n_locations; ++i)
        {
            Vec3 p;
            p.x = r.get<double>();
            p.y = r.get<double>();
            p.z = r.get<double>();
            h.locations.push_back(p);
        }
        const auto count = r.get<std::uint64_t>();
        if (count != static_cast<std::uint64_t>(h.n_locations) * h.n_aps * h.n_elements)
            throw IoError("channel database: record count does not match the header");
        std::vector<ChannelRecord> records;
        records.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i)
        {
            ChannelRecord rec;
            rec.location_id = r.get<std::uint32_t>();
            rec.ap_id = r.get<std::uint32_t>();
            rec.element_id = r.get<std::uint32_t>();
            rec.dc_gain = r.get<double>();
            rec.split.los = r.get<double>();
            rec.split.first = r.get<double>();
            rec.split.second = r.get<double>();
            rec.ir.bin_width_s = h.bin_width_s;
            rec.ir.start_bin = r.get<std::int64_t>();
            rec.ir.bins = r.get_doubles(r.get<std::uint32_t>());
            records.push_back(std::move(rec));
        }
        if (!r.done())
            throw IoError("channel database: trailing bytes after the last record");
        if (fnv1a64(h.scene_json) != h.scene_hash)
            throw IoError("channel database: scene hash does not match the embedded scene");
        return ChannelDB(std::move(h), std::move(records));
    }

    void ChannelDB::save(const std::filesystem::path &path) const
    {
        const std::string bytes = serialize();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + path.string() + "' for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw IoError("failed writing '" + path.string() + "'");
    }

    ChannelDB ChannelDB::load(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open channel database '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        try
        {
            return deserialize(ss.str());
        }
        catch (const IoError &e)
        {
            throw IoError(path.string() + ": " + e.what());
        }
    }

    void ChannelDB::export_csv(std::ostream &os) const
    {
        os << "location_id,ap_id,element_id,dc_gain,bin_index,bin_value\n";
        os << std::setprecision(17);
        for (const auto &r : records_)
            for (std::size_t k = 0; k < r.ir.bins.size(); ++k)
            {
                if (r.ir.bins[k] == 0.0)
                    continue;
                os << r.location_id << ',' << r.ap_id << ',' << r.element_id << ',' << r.dc_gain << ','
                   << (r.ir.start_bin + static_cast<std::int64_t>(k)) << ',' << r.ir.bins[k] << '\n';
            }
    }

    std::uint64_t scene_hash(const SceneConfig &scene)
    {
        return fnv1a64(canonical_dump(scene_to_json(scene)));
    }

    ChannelDB build_channel_db(const SceneConfig &scene, const Receiver &receiver, std::span<const Vec3> locations,
                               const TraceOptions &options, unsigned threads)
    {
        if (locations.empty())
            throw std::invalid_argument("build_channel_db: no receiver locations given");
        for (const auto &p : locations)
            if (!scene.inside(p))
                throw std::invalid_argument("build_channel_db: location outside the room");

        const Tracer tracer(scene, options);
        const std::size_t n_ap = scene.access_points.size();
        const std::size_t n_el = receiver.element_count();

        std::vector<std::vector<ChannelTrace>> traces(locations.size() * n_ap);
        parallel_for(traces.size(), threads, [&](std::size_t task)
                     {
            const std::size_t loc = task / n_ap, ap = task % n_ap;
            traces[task] = tracer.trace(scene.access_points[ap], locations[loc], receiver); });

        ChannelDbHeader h;
        SceneConfig stored = scene;
        stored.locations.assign(locations.begin(), locations.end());
        h.scene_json = canonical_dump(scene_to_json(stored));
        h.scene_hash = fnv1a64(h.scene_json);
        h.receiver_id = receiver.name();
        h.receiver_json = canonical_dump(receiver_to_json(receiver));
        h.bin_width_s = options.bin_width_s;
        h.window_s = options.window_s;
        h.max_order = static_cast<std::uint32_t>(options.max_order);
        h.n_locations = static_cast<std::uint32_t>(locations.size());
        h.n_aps = static_cast<std::uint32_t>(n_ap);
        h.n_elements = static_cast<std::uint32_t>(n_el);
        h.locations.assign(locations.begin(), locations.end());
        h.notes = "Gains are wavelength independent; received power of colour l from AP a = P_tx(a,l) * dc_gain. "
                  "Delay bins are floor(path_length / (c * bin_width)).";

        std::vector<ChannelRecord> records;
        records.reserve(traces.size() * n_el);
        for (std::size_t task = 0; task < traces.size(); ++task)
            for (std::size_t el = 0; el < n_el; ++el)
            {
                ChannelRecord r;
                r.location_id = static_cast<std::uint32_t>(task / n_ap + 1);
                r.ap_id = static_cast<std::uint32_t>(task % n_ap + 1);
                r.element_id = static_cast<std::uint32_t>(el + 1);
                r.ir = std::move(traces[task][el].ir);
                r.split = traces[task][el].split;
                r.dc_gain = r.ir.dc_gain();
                records.push_back(std::move(r));
            }
        return ChannelDB(std::move(h), std::move(records));
    }

} // namespace owc

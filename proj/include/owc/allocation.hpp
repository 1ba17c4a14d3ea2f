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

#ifndef OWC_ALLOCATION_HPP
#define OWC_ALLOCATION_HPP

#include "owc/channel_db.hpp"
#include "owc/receivers.hpp"
#include "owc/scene.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace owc
{
    // Linear: SINR = I_sig / (I_int + I_bg + sigma_Rx), photocurrents as printed.
    // Squared: SINR = I_sig^2 / (I_int^2 + I_bg^2 + sigma_Rx^2), electrical power domain.
    enum class SinrMode
    {
        Linear,
        Squared
    };

    std::string to_string(SinrMode mode);
    SinrMode sinr_mode_from_string(const std::string &s);

    // Resources of one user; all indices are 0-based.
    struct Slot
    {
        std::size_t ap = 0;
        std::size_t wavelength = 0;
        std::size_t element = 0;

        auto operator<=>(const Slot &) const = default;
    };

    using Assignment = std::vector<Slot>; // one slot per user

    struct SinrBreakdown
    {
        double signal = 0.0;       // A
        double interference = 0.0; // A, same colour from APs serving other users
        double background = 0.0;   // A, same colour from APs where it is unmodulated
        double noise = 0.0;        // sigma_Rx, A
        double sinr = 0.0;         // linear

        double sinr_db() const;
    };

    class AllocationProblem
    {
    public:
        AllocationProblem(std::size_t users, std::size_t aps, std::size_t wavelengths, std::size_t elements);

        std::size_t users() const { return users_; }
        std::size_t aps() const { return aps_; }
        std::size_t wavelengths() const { return wavelengths_; }
        std::size_t elements() const { return elements_; }

        // Channel DC gain of user u from AP a on receiver element p.
        double &gain(std::size_t u, std::size_t a, std::size_t p) { return gain_[index(u, a, p)]; }
        double gain(std::size_t u, std::size_t a, std::size_t p) const { return gain_[index(u, a, p)]; }

        double &power(std::size_t a, std::size_t wl) { return power_[a * wavelengths_ + wl]; }
        double power(std::size_t a, std::size_t wl) const { return power_[a * wavelengths_ + wl]; }

        double &responsivity(std::size_t wl) { return responsivity_.at(wl); }
        double responsivity(std::size_t wl) const { return responsivity_.at(wl); }

        double noise_sigma = 0.0;
        SinrMode mode = SinrMode::Linear;

        // Builds the problem for users at the given DB locations (1-based ids).
        static AllocationProblem from_db(const ChannelDB &db, const std::vector<std::uint32_t> &location_ids,
                                         SinrMode mode = SinrMode::Linear);

    private:
        std::size_t index(std::size_t u, std::size_t a, std::size_t p) const;

        std::size_t users_, aps_, wavelengths_, elements_;
        std::vector<double> gain_;
        std::vector<double> power_;
        std::vector<double> responsivity_;
    };

    // R(l) * P_tx(a, l) * G(u, a, p)
    double received_current(const AllocationProblem &problem, std::size_t user, std::size_t ap,
                            std::size_t wavelength, std::size_t element);

    // Empty when valid; otherwise one message per violated rule.
    std::vector<std::string> validate_assignment(const AllocationProblem &problem, const Assignment &assignment);

    // Throws std::invalid_argument for an invalid assignment.
    SinrBreakdown sinr(const AllocationProblem &problem, const Assignment &assignment, std::size_t user);
    double objective(const AllocationProblem &problem, const Assignment &assignment);

    struct AllocationReport
    {
        Assignment assignment;
        std::vector<SinrBreakdown> breakdown;
        double objective = 0.0; // sum of linear SINRs
        std::vector<double> channel_bandwidth_hz;
        std::vector<double> rate_bps;
        std::uint64_t nodes_explored = 0;
    };

    // Exact maximiser of the sum of SINRs. Among optima the lexicographically smallest
    // (user, ap, wavelength, element) sequence is returned.
    AllocationReport optimize(const AllocationProblem &problem);

    // Exhaustive enumeration over every valid assignment. Throws std::invalid_argument when
    // the search space exceeds max_space.
    AllocationReport brute_force_oracle(const AllocationProblem &problem, std::uint64_t max_space = 10'000'000);

    // Evaluates a given assignment into a report (no search).
    AllocationReport evaluate_assignment(const AllocationProblem &problem, const Assignment &assignment);

    // Supported bit rate for a limiting bandwidth: bandwidth / 0.7, truncated to 0.1 Gbit/s.
    double data_rate(double limiting_bandwidth_hz);

    // Fills channel_bandwidth_hz and rate_bps from the DB records behind the assignment.
    void attach_channel_metrics(AllocationReport &report, const ChannelDB &db,
                                const std::vector<std::uint32_t> &location_ids, double receiver_bandwidth_hz);

} // namespace owc

#endif

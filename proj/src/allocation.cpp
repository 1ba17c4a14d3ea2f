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

#include "owc/allocation.hpp"
#include "owc/analysis.hpp"
#include "owc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace owc
{
    std::string to_string(SinrMode mode)
    {
        return mode == SinrMode::Linear ? "linear" : "squared";
    }

    SinrMode sinr_mode_from_string(const std::string &s)
    {
        if (s == "linear")
            return SinrMode::Linear;
        if (s == "squared")
            return SinrMode::Squared;
        throw std::invalid_argument("Unknown SINR mode '" + s + "' (expected linear or squared)");
    }

    double SinrBreakdown::sinr_db() const { return 10.0 * std::log10(sinr); }

    AllocationProblem::AllocationProblem(std::size_t users, std::size_t aps, std::size_t wavelengths, std::size_t elements)
        : users_(users), aps_(aps), wavelengths_(wavelengths), elements_(elements),
          gain_(users * aps * elements, 0.0), power_(aps * wavelengths, 0.0), responsivity_(wavelengths, 0.0)
    {
        if (aps == 0 || wavelengths == 0 || elements == 0)
            throw std::invalid_argument("Allocation problem needs at least one AP, wavelength and element");
    }

    std::size_t AllocationProblem::index(std::size_t u, std::size_t a, std::size_t p) const
    {
        if (u >= users_ || a >= aps_ || p >= elements_)
            throw LookupError("allocation problem: index out of range");
        return (u * aps_ + a) * elements_ + p;
    }

    AllocationProblem AllocationProblem::from_db(const ChannelDB &db, const std::vector<std::uint32_t> &location_ids,
                                                 SinrMode mode)
    {
        const SceneConfig scene = db.scene();
        const Receiver receiver = db.receiver();
        const auto &h = db.header();
        AllocationProblem problem(location_ids.size(), h.n_aps, scene.wavelengths.size(), h.n_elements);
        for (std::size_t u = 0; u < location_ids.size(); ++u)
            for (std::uint32_t a = 1; a <= h.n_aps; ++a)
                for (std::uint32_t p = 1; p <= h.n_elements; ++p)
                    problem.gain(u, a - 1, p - 1) = db.at(location_ids[u], a, p).dc_gain;
        for (std::size_t a = 0; a < h.n_aps; ++a)
            for (std::size_t wl = 0; wl < scene.wavelengths.size(); ++wl)
                problem.power(a, wl) = scene.ap_power(a, wl);
        for (std::size_t wl = 0; wl < scene.wavelengths.size(); ++wl)
            problem.responsivity(wl) = scene.wavelengths[wl].responsivity_a_per_w;
        problem.noise_sigma = receiver.noise_sigma();
        problem.mode = mode;
        return problem;
    }

    double received_current(const AllocationProblem &problem, std::size_t user, std::size_t ap,
                            std::size_t wavelength, std::size_t element)
    {
        return problem.responsivity(wavelength) * problem.power(ap, wavelength) * problem.gain(user, ap, element);
    }

    std::vector<std::string> validate_assignment(const AllocationProblem &problem, const Assignment &assignment)
    {
        std::vector<std::string> issues;
        if (assignment.size() != problem.users())
        {
            issues.push_back("assignment has " + std::to_string(assignment.size()) + " entries for " +
                             std::to_string(problem.users()) + " users");
            return issues;
        }
        for (std::size_t u = 0; u < assignment.size(); ++u)
        {
            const auto &s = assignment[u];
            const std::string who = "user " + std::to_string(u + 1) + ": ";
            if (s.ap >= problem.aps())
                issues.push_back(who + "AP " + std::to_string(s.ap + 1) + " does not exist");
            if (s.wavelength >= problem.wavelengths())
                issues.push_back(who + "wavelength index " + std::to_string(s.wavelength) + " does not exist");
            if (s.element >= problem.elements())
                issues.push_back(who + "receiver element " + std::to_string(s.element + 1) + " does not exist");
            for (std::size_t v = 0; v < u; ++v)
                if (assignment[v].ap == s.ap && assignment[v].wavelength == s.wavelength)
                    issues.push_back(who + "shares AP " + std::to_string(s.ap + 1) + " / wavelength " +
                                     std::to_string(s.wavelength) + " with user " + std::to_string(v + 1));
        }
        return issues;
    }

    namespace
    {
        constexpr std::size_t unowned = std::numeric_limits<std::size_t>::max();

        double ratio(double num, double den)
        {
            if (den > 0.0)
                return num / den;
            return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }

        // owner[a * W + wl] is the user holding (a, wl) or 'unowned'.
        SinrBreakdown evaluate(const AllocationProblem &pr, std::size_t u, const Slot &s,
                               const std::vector<std::size_t> &owner)
        {
            SinrBreakdown b;
            b.signal = received_current(pr, u, s.ap, s.wavelength, s.element);
            for (std::size_t ap = 0; ap < pr.aps(); ++ap)
            {
                if (ap == s.ap)
                    continue;
                const double x = received_current(pr, u, ap, s.wavelength, s.element);
                const std::size_t o = owner[ap * pr.wavelengths() + s.wavelength];
                if (o != unowned && o != u)
                    b.interference += x;
                else
                    b.background += x;
            }
            b.noise = pr.noise_sigma;
            if (pr.mode == SinrMode::Linear)
                b.sinr = ratio(b.signal, b.interference + b.background + b.noise);
            else
                b.sinr = ratio(b.signal * b.signal, b.interference * b.interference +
                                                        b.background * b.background + b.noise * b.noise);
            return b;
        }

        std::vector<std::size_t> owners_of(const AllocationProblem &pr, const Assignment &a)
        {
            std::vector<std::size_t> owner(pr.aps() * pr.wavelengths(), unowned);
            for (std::size_t u = 0; u < a.size(); ++u)
                owner[a[u].ap * pr.wavelengths() + a[u].wavelength] = u;
            return owner;
        }

        void require_valid(const AllocationProblem &pr, const Assignment &a)
        {
            const auto issues = validate_assignment(pr, a);
            if (!issues.empty())
                throw std::invalid_argument("invalid assignment: " + issues.front());
        }
    } // namespace

    SinrBreakdown sinr(const AllocationProblem &problem, const Assignment &assignment, std::size_t user)
    {
        require_valid(problem, assignment);
        if (user >= assignment.size())
            throw std::invalid_argument("user index out of range");
        return evaluate(problem, user, assignment[user], owners_of(problem, assignment));
    }

    double objective(const AllocationProblem &problem, const Assignment &assignment)
    {
        require_valid(problem, assignment);
        const auto owner = owners_of(problem, assignment);
        double total = 0.0;
        for (std::size_t u = 0; u < assignment.size(); ++u)
            total += evaluate(problem, u, assignment[u], owner).sinr;
        return total;
    }

    AllocationReport evaluate_assignment(const AllocationProblem &problem, const Assignment &assignment)
    {
        require_valid(problem, assignment);
        const auto owner = owners_of(problem, assignment);
        AllocationReport report;
        report.assignment = assignment;
        for (std::size_t u = 0; u < assignment.size(); ++u)
        {
            report.breakdown.push_back(evaluate(problem, u, assignment[u], owner));
            report.objective += report.breakdown.back().sinr;
        }
        return report;
    }

    namespace
    {
        // Depth-first branch and bound over users in index order. Each node's bound is the sum of
        // per-user optimistic SINRs: exact for the linear model (where a user's denominator does
        // not depend on who holds the other slots) and a relaxation for the squared model, where
        // (sum x)^2 >= sum x^2 bounds every undecided interferer group from below.
        class BranchAndBound
        {
        public:
            explicit BranchAndBound(const AllocationProblem &pr)
                : pr_(pr), U_(pr.users()), A_(pr.aps()), W_(pr.wavelengths()), E_(pr.elements()),
                  owner_(A_ * W_, unowned), slot_(U_)
            {
                if (pr_.mode == SinrMode::Linear)
                {
                    // Owner-independent: every other same-colour AP sits in the denominator.
                    linear_best_.assign(U_ * A_ * W_, 0.0);
                    const std::vector<std::size_t> none(A_ * W_, unowned);
                    for (std::size_t u = 0; u < U_; ++u)
                        for (std::size_t a = 0; a < A_; ++a)
                            for (std::size_t wl = 0; wl < W_; ++wl)
                            {
                                double best = 0.0;
                                for (std::size_t p = 0; p < E_; ++p)
                                    best = std::max(best, evaluate(pr_, u, {a, wl, p}, none).sinr);
                                linear_best_[(u * A_ + a) * W_ + wl] = best;
                            }
                }
            }

            AllocationReport run()
            {
                seed_greedy();
                dfs(0);
                AllocationReport report = evaluate_assignment(pr_, best_assignment_);
                report.nodes_explored = nodes_;
                return report;
            }

        private:
            double optimistic(std::size_t u, std::size_t a, std::size_t wl) const
            {
                if (pr_.mode == SinrMode::Linear)
                    return linear_best_[(u * A_ + a) * W_ + wl];

                double best = 0.0;
                for (std::size_t p = 0; p < E_; ++p)
                {
                    const double sig = received_current(pr_, u, a, wl, p);
                    double known = 0.0, open_sq = 0.0;
                    for (std::size_t b = 0; b < A_; ++b)
                    {
                        if (b == a)
                            continue;
                        const double x = received_current(pr_, u, b, wl, p);
                        const std::size_t o = owner_[b * W_ + wl];
                        if (o != unowned && o != u)
                            known += x;
                        else
                            open_sq += x * x;
                    }
                    const double sigma = pr_.noise_sigma;
                    best = std::max(best, ratio(sig * sig, known * known + open_sq + sigma * sigma));
                }
                return best;
            }

            double bound(std::size_t depth) const
            {
                double total = 0.0;
                for (std::size_t u = 0; u < depth; ++u)
                    total += optimistic(u, slot_[u].ap, slot_[u].wavelength);
                for (std::size_t u = depth; u < U_; ++u)
                {
                    double best = 0.0;
                    for (std::size_t a = 0; a < A_; ++a)
                        for (std::size_t wl = 0; wl < W_; ++wl)
                            if (owner_[a * W_ + wl] == unowned)
                                best = std::max(best, optimistic(u, a, wl));
                    total += best;
                }
                return total;
            }

            // Complete assignment: each user's element only affects its own SINR, so it is chosen
            // per user (lowest index on ties).
            void leaf()
            {
                Assignment full(U_);
                double total = 0.0;
                for (std::size_t u = 0; u < U_; ++u)
                {
                    double best = -1.0;
                    for (std::size_t p = 0; p < E_; ++p)
                    {
                        const Slot s{slot_[u].ap, slot_[u].wavelength, p};
                        const double v = evaluate(pr_, u, s, owner_).sinr;
                        if (v > best)
                        {
                            best = v;
                            full[u] = s;
                        }
                    }
                    total += best;
                }
                if (!have_best_ || total > best_value_ || (total == best_value_ && full < best_assignment_))
                {
                    have_best_ = true;
                    best_value_ = total;
                    best_assignment_ = std::move(full);
                }
            }

            void dfs(std::size_t depth)
            {
                ++nodes_;
                if (depth == U_)
                {
                    leaf();
                    return;
                }
                if (have_best_ && bound(depth) < best_value_ - 1e-12 * std::abs(best_value_))
                    return;
                for (std::size_t a = 0; a < A_; ++a)
                    for (std::size_t wl = 0; wl < W_; ++wl)
                    {
                        auto &o = owner_[a * W_ + wl];
                        if (o != unowned)
                            continue;
                        o = depth;
                        slot_[depth] = {a, wl, 0};
                        dfs(depth + 1);
                        o = unowned;
                    }
            }

            void seed_greedy()
            {
                for (std::size_t u = 0; u < U_; ++u)
                {
                    double best = -1.0;
                    Slot pick{};
                    for (std::size_t a = 0; a < A_; ++a)
                        for (std::size_t wl = 0; wl < W_; ++wl)
                            if (owner_[a * W_ + wl] == unowned)
                            {
                                const double v = optimistic(u, a, wl);
                                if (v > best)
                                {
                                    best = v;
                                    pick = {a, wl, 0};
                                }
                            }
                    slot_[u] = pick;
                    owner_[pick.ap * W_ + pick.wavelength] = u;
                }
                leaf();
                std::fill(owner_.begin(), owner_.end(), unowned);
            }

            const AllocationProblem &pr_;
            std::size_t U_, A_, W_, E_;
            std::vector<std::size_t> owner_;
            std::vector<Slot> slot_;
            std::vector<double> linear_best_;

            bool have_best_ = false;
            double best_value_ = 0.0;
            Assignment best_assignment_;
            std::uint64_t nodes_ = 0;
        };

        void require_feasible(const AllocationProblem &problem)
        {
            if (problem.users() == 0)
                throw std::invalid_argument("allocation problem has no users");
            if (problem.users() > problem.aps() * problem.wavelengths())
                throw InfeasibleError(std::to_string(problem.users()) + " users exceed the " +
                                      std::to_string(problem.aps() * problem.wavelengths()) +
                                      " available (AP, wavelength) pairs");
        }
    } // namespace

    AllocationReport optimize(const AllocationProblem &problem)
    {
        require_feasible(problem);
        return BranchAndBound(problem).run();
    }

    AllocationReport brute_force_oracle(const AllocationProblem &problem, std::uint64_t max_space)
    {
        require_feasible(problem);
        const std::uint64_t per_user = problem.aps() * problem.wavelengths() * problem.elements();
        std::uint64_t space = 1;
        for (std::size_t u = 0; u < problem.users(); ++u)
        {
            if (space > max_space / per_user)
                throw std::invalid_argument("brute-force search space exceeds the limit");
            space *= per_user;
        }

        auto decode = [&](std::uint64_t code)
        {
            const std::uint64_t per_ap = problem.wavelengths() * problem.elements();
            return Slot{code / per_ap, (code % per_ap) / problem.elements(), code % problem.elements()};
        };

        // Odometer over per-user codes; user 0 is the most significant digit, so the
        // enumeration is lexicographic in (user, ap, wavelength, element).
        std::vector<std::uint64_t> digits(problem.users(), 0);
        Assignment current(problem.users());
        Assignment best;
        double best_value = -1.0;
        for (std::uint64_t n = 0; n < space; ++n)
        {
            for (std::size_t u = 0; u < problem.users(); ++u)
                current[u] = decode(digits[u]);
            if (validate_assignment(problem, current).empty())
            {
                const double v = objective(problem, current);
                if (v > best_value)
                {
                    best_value = v;
                    best = current;
                }
            }
            for (std::size_t u = problem.users(); u-- > 0;)
            {
                if (++digits[u] < per_user)
                    break;
                digits[u] = 0;
            }
        }
        AllocationReport report = evaluate_assignment(problem, best);
        report.nodes_explored = space;
        return report;
    }

    double data_rate(double limiting_bandwidth_hz)
    {
        if (!(limiting_bandwidth_hz > 0.0))
            throw std::invalid_argument("Bandwidth must be positive");
        // Truncate to 0.1 Gbit/s; the small offset absorbs representation error of 0.7.
        const double tenths = std::floor(limiting_bandwidth_hz / 0.7 / 1e8 + 1e-6);
        return tenths * 1e8;
    }

    void attach_channel_metrics(AllocationReport &report, const ChannelDB &db,
                                const std::vector<std::uint32_t> &location_ids, double receiver_bandwidth_hz)
    {
        report.channel_bandwidth_hz.assign(report.assignment.size(), 0.0);
        report.rate_bps.assign(report.assignment.size(), 0.0);
        for (std::size_t u = 0; u < report.assignment.size(); ++u)
        {
            const auto &s = report.assignment[u];
            const auto &rec = db.at(location_ids.at(u), static_cast<std::uint32_t>(s.ap + 1),
                                    static_cast<std::uint32_t>(s.element + 1));
            if (!(rec.dc_gain > 0.0))
                continue;
            const double bw = bandwidth_3db(rec.ir).f3db_hz;
            report.channel_bandwidth_hz[u] = bw;
            report.rate_bps[u] = data_rate(std::min(bw, receiver_bandwidth_hz));
        }
    }

} // namespace owc

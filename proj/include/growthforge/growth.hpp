#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "growthforge/errors.hpp"
#include "growthforge/group.hpp"

namespace growthforge {

/// Ball sizes beta_0..beta_N with presentation-layer root bounds. All counts
/// are exact; the decimal n-th roots are for display only.
struct GrowthReport {
    std::vector<std::uint64_t> ball_sizes;      // index = radius
    std::vector<double> nth_roots;              // index >= 1 meaningful
    bool budget_exhausted = false;
    std::uint64_t budget = 0;
    std::uint64_t elements_visited = 0;
    double wall_ms = 0.0;

    std::size_t max_radius() const { return ball_sizes.empty() ? 0 : ball_sizes.size() - 1; }
};

inline unsigned growth_thread_cap() {
    const char* env = std::getenv("GROWTHFORGE_THREADS");
    if (!env) return 0; // sequential
    long v = std::strtol(env, nullptr, 10);
    if (v <= 0) return 0;
    return static_cast<unsigned>(v);
}

/// Exhaustive breadth-first enumeration of the ball of radius N in the Cayley
/// graph of (spec, S u S^-1). Deduplication is by canonical encoding, so the
/// beta sequence is independent of generator order. Expansion may run on
/// several threads (GROWTHFORGE_THREADS); merging is in deterministic chunk
/// order, so the report is identical to the sequential run. If the visited
/// count would exceed the budget the enumeration stops after the last fully
/// completed radius and the report is flagged.
inline GrowthReport enumerate_ball(const GroupSpec& spec, const GeneratingSet& s,
                                   std::size_t radius, std::uint64_t budget = 5000000) {
    if (budget < 1) throw ValidationError("budget must be at least 1");
    auto start = std::chrono::steady_clock::now();

    std::vector<GroupElement> step_elements;
    for (const auto& item : s.items) {
        step_elements.push_back(item.element);
        step_elements.push_back(element_invert(spec, item.element));
    }

    GrowthReport report;
    report.budget = budget;

    std::unordered_set<std::string> visited;
    std::vector<GroupElement> frontier;
    GroupElement id = spec.identity();
    visited.insert(canonical_encode(id));
    frontier.push_back(id);
    report.ball_sizes.push_back(1);

    const unsigned threads = growth_thread_cap();

    for (std::size_t n = 1; n <= radius; ++n) {
        std::vector<GroupElement> next;
        bool over_budget = false;

        // Insertion attempts happen in frontier-then-generator order in both
        // the sequential and the chunked parallel path, so the visited set
        // and all counts are identical regardless of thread count.
        auto try_insert = [&](std::string key, GroupElement element) {
            if (visited.contains(key)) return true;
            if (visited.size() + 1 > budget) return false;
            visited.insert(std::move(key));
            next.push_back(std::move(element));
            return true;
        };
        auto expand_range = [&](std::size_t lo, std::size_t hi,
                                std::vector<std::pair<std::string, GroupElement>>& out) {
            for (std::size_t i = lo; i < hi; ++i)
                for (const GroupElement& g : step_elements) {
                    GroupElement child = element_compose(spec, frontier[i], g);
                    std::string key = canonical_encode(child);
                    out.emplace_back(std::move(key), std::move(child));
                }
        };

        if (threads > 1 && frontier.size() >= 2 * threads) {
            std::vector<std::vector<std::pair<std::string, GroupElement>>> chunks(threads);
            std::vector<std::thread> workers;
            std::size_t per = (frontier.size() + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                std::size_t lo = t * per;
                std::size_t hi = std::min(frontier.size(), lo + per);
                if (lo >= hi) break;
                workers.emplace_back([&, lo, hi, t] { expand_range(lo, hi, chunks[t]); });
            }
            for (auto& w : workers) w.join();
            for (auto& chunk : chunks) {
                for (auto& [key, element] : chunk)
                    if (!try_insert(std::move(key), std::move(element))) {
                        over_budget = true;
                        break;
                    }
                if (over_budget) break;
            }
        } else {
            for (std::size_t i = 0; i < frontier.size() && !over_budget; ++i)
                for (const GroupElement& g : step_elements) {
                    GroupElement child = element_compose(spec, frontier[i], g);
                    std::string key = canonical_encode(child);
                    if (!try_insert(std::move(key), std::move(child))) {
                        over_budget = true;
                        break;
                    }
                }
        }

        if (over_budget) {
            report.budget_exhausted = true;
            break;
        }
        report.ball_sizes.push_back(report.ball_sizes.back() + next.size());
        frontier = std::move(next);
        if (frontier.empty() && n < radius) {
            // Finite group: every later ball equals this one.
            while (report.ball_sizes.size() <= radius)
                report.ball_sizes.push_back(report.ball_sizes.back());
            break;
        }
    }

    report.elements_visited = visited.size();
    report.nth_roots.assign(report.ball_sizes.size(), 0.0);
    for (std::size_t n = 1; n < report.ball_sizes.size(); ++n)
        report.nth_roots[n] =
            std::pow(static_cast<double>(report.ball_sizes[n]), 1.0 / static_cast<double>(n));
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

struct RateBounds {
    double upper = 0.0;
    double lower = 1.0;
    std::optional<std::size_t> witness_length;
};

/// Rigorous growth-rate bounds: the upper bound is min over computed n >= 1 of
/// beta_n^(1/n) (the limit is the infimum by submultiplicativity); the lower
/// bound is 2^(1/L) for a verified free-semigroup witness of max word length
/// L, and 1 without one. lower <= upper must hold when both come from the same
/// group; a violation is a bug, not an input condition.
inline RateBounds rate_bounds(const GrowthReport& report,
                              std::optional<std::size_t> witness_max_length = {}) {
    if (report.ball_sizes.size() < 2)
        throw EmptyReport("rate bounds need at least radius 1");
    RateBounds b;
    b.upper = report.nth_roots[1];
    for (std::size_t n = 2; n < report.nth_roots.size(); ++n)
        b.upper = std::min(b.upper, report.nth_roots[n]);
    if (witness_max_length) {
        if (*witness_max_length == 0) throw ValidationError("witness length must be positive");
        b.lower = std::pow(2.0, 1.0 / static_cast<double>(*witness_max_length));
        b.witness_length = witness_max_length;
        if (b.lower > b.upper + 1e-9)
            throw std::logic_error("witness lower bound exceeds enumeration upper bound");
    }
    return b;
}

/// CSV emission: header `n,ball_size,nth_root`, one row per radius, roots to
/// 6 significant digits (blank at n = 0).
inline void write_growth_csv(const GrowthReport& report, std::ostream& os) {
    os << "n,ball_size,nth_root\n";
    for (std::size_t n = 0; n < report.ball_sizes.size(); ++n) {
        os << n << ',' << report.ball_sizes[n] << ',';
        if (n >= 1) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", report.nth_roots[n]);
            os << buf;
        }
        os << '\n';
    }
}

} // namespace growthforge

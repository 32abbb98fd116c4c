#pragma once

#include "fixtures.hpp"

#include <random>
#include <string>

namespace qirm::testing {

// A random all-strong overlay of at most 5 nodes and 3 contents with caches
// seeded directly, plus the expected server found by enumerating holders.
struct OracleCase {
    std::vector<TinyNode> nodes;
    std::size_t contents = 0;
    // cached[i] lists (content, stored_at) for node i.
    std::vector<std::vector<std::pair<ContentId, double>>> cached;
    NodeId client = 0;
    ContentId content = 0;
};

inline OracleCase random_case(std::mt19937_64& rng)
{
    OracleCase oc;
    const std::size_t n = 2 + rng() % 4;
    oc.contents = 1 + rng() % std::min<std::size_t>(3, n);
    oc.nodes.resize(n);
    oc.cached.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Small integer ranges force ties on weight and timestamp.
        oc.nodes[i].weight = static_cast<double>(1 + rng() % 3);
        oc.nodes[i].delay_ms = static_cast<double>(1 + rng() % 20);
        oc.nodes[i].bw = static_cast<double>(1 + rng() % 16);
        for (ContentId c = 0; c < oc.contents; ++c) {
            if (c == i || rng() % 2 == 0) continue;
            if (oc.cached[i].size() == 2) break;
            oc.cached[i].emplace_back(c, static_cast<double>(rng() % 3));
        }
    }
    oc.client = static_cast<NodeId>(rng() % n);
    oc.content = static_cast<ContentId>(rng() % oc.contents);
    return oc;
}

// Expected server: the client itself if it holds the content, otherwise the
// holder maximizing (timestamp, weight, -id), the origin copy stamped 0.
inline NodeId brute_force_server(const OracleCase& oc)
{
    auto stamp = [&](std::size_t i) -> std::optional<double> {
        if (i == oc.content) return 0.0;
        for (const auto& [c, ts] : oc.cached[i]) {
            if (c == oc.content) return ts;
        }
        return std::nullopt;
    };
    if (stamp(oc.client)) return oc.client;
    std::optional<NodeId> best;
    double best_ts = 0.0;
    double best_w = 0.0;
    for (std::size_t i = 0; i < oc.nodes.size(); ++i) {
        const auto ts = stamp(i);
        if (i == oc.client || !ts) continue;
        const double w = oc.nodes[i].weight;
        if (!best || *ts > best_ts || (*ts == best_ts && w > best_w)) {
            best = static_cast<NodeId>(i);
            best_ts = *ts;
            best_w = w;
        }
    }
    return *best;
}

struct OracleOutcome {
    Resolution resolution;
    NodeId expected = 0;
};

inline OracleOutcome run_oracle_case(const OracleCase& oc)
{
    auto ov = tiny_overlay(oc.nodes, oc.contents);
    for (std::size_t i = 0; i < oc.nodes.size(); ++i) {
        for (const auto& [c, ts] : oc.cached[i]) ov.nodes[i].cache.insert(c, ts);
    }
    auto q = make_query(1, oc.client, oc.content, 10.0);
    run_query(ov, q);
    return {q.resolution, brute_force_server(oc)};
}

}  // namespace qirm::testing

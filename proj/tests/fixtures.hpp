#pragma once

#include "qirm/search.hpp"

#include <limits>
#include <vector>

namespace qirm::testing {

inline constexpr ContentId kNoContent = std::numeric_limits<ContentId>::max();

struct TinyNode {
    double weight = 1.0;
    double bw = 8.0;
    double mz = 64.0;
    bool strong = true;
    double delay_ms = 1.0;
};

// n nodes, contents 0..n_contents-1 each originated by the node of the same
// id, symmetric 8 Mb/s links unless overridden.
inline search::Overlay tiny_overlay(const std::vector<TinyNode>& spec, std::size_t n_contents, double size_mb = 1.0,
                                    Strategy strategy = Strategy::Qirm, std::uint32_t k = 2, bool trace = false)
{
    ScenarioConfig cfg;
    cfg.n_nodes = static_cast<std::uint32_t>(spec.size());
    cfg.catalog_size = static_cast<std::uint32_t>(n_contents);
    cfg.k_cache_slots = k;
    cfg.strategy = strategy;
    cfg.duration = 1000.0;
    std::vector<NodeSpec> nodes;
    std::vector<simnet::LinkSpec> links;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        NodeSpec n;
        n.id = static_cast<NodeId>(i);
        n.bw = spec[i].bw;
        n.mz = spec[i].mz;
        n.weight = spec[i].weight;
        n.cluster = spec[i].strong ? ClusterTag::Strong : ClusterTag::Weak;
        n.cache = ReplicaCache(k);
        n.owned_content = i < n_contents ? static_cast<ContentId>(i) : kNoContent;
        links.push_back({n.id, spec[i].bw, spec[i].bw, spec[i].delay_ms});
        nodes.push_back(std::move(n));
    }
    std::vector<ContentItem> catalog;
    for (std::size_t c = 0; c < n_contents; ++c) {
        catalog.push_back({static_cast<ContentId>(c), keyword_for(static_cast<ContentId>(c)), size_mb,
                           static_cast<NodeId>(c), ContentClass::Unclassified});
    }
    return search::Overlay(cfg, std::move(nodes), std::move(links), std::move(catalog), trace);
}

inline Query make_query(QueryId qid, NodeId nid, ContentId c, SimTime at)
{
    Query q;
    q.qid = qid;
    q.nid = nid;
    q.ckwd = keyword_for(c);
    q.issued_at = at;
    return q;
}

// Schedules resolve for `q` at its issue time and drains the engine.
inline void run_query(search::Overlay& ov, Query& q)
{
    ov.engine.schedule(q.issued_at, simnet::EventKind::QueryArrival, [&ov, &q] { search::resolve(ov, q); });
    ov.engine.run_until(q.issued_at + 100.0);
}

}  // namespace qirm::testing

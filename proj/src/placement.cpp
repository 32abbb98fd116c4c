#include "qirm/placement.hpp"

#include <algorithm>
#include <stdexcept>

namespace qirm::placement {

bool AccessCounter::register_query(const Query& query)
{
    const auto id = content_for_keyword(query.ckwd);
    if (!id || *id >= counts_.size()) {
        ++unknown_;
        return false;
    }
    ++counts_[*id];
    return true;
}

std::uint64_t AccessCounter::count(std::string_view ckwd) const
{
    const auto id = content_for_keyword(ckwd);
    return id ? count(*id) : 0;
}

void AccessCounter::reset()
{
    std::fill(counts_.begin(), counts_.end(), 0);
    unknown_ = 0;
}

std::vector<ContentClass> classify(const AccessCounter& counter, std::uint32_t a_min)
{
    if (a_min < 1) throw std::domain_error("classify: a_min must be >= 1");
    std::vector<ContentClass> out(counter.catalog_size());
    for (ContentId id = 0; id < out.size(); ++id) {
        out[id] = counter.count(id) >= a_min ? ContentClass::Class1 : ContentClass::Class2;
    }
    return out;
}

std::size_t PlacementPlan::replica_count() const
{
    std::size_t n = 0;
    for (const auto& [c, hosts] : assignments) n += hosts.size();
    return n;
}

std::size_t class1_replicas(std::uint64_t count, std::uint32_t a_min, std::size_t limit)
{
    if (limit == 0) return 0;
    const std::uint64_t wanted = (count + a_min - 1) / a_min;
    return static_cast<std::size_t>(std::clamp<std::uint64_t>(wanted, 1, limit));
}

namespace {

std::vector<NodeId> by_weight(std::span<const NodeId> ids, std::span<const NodeSpec> nodes)
{
    std::vector<NodeId> out(ids.begin(), ids.end());
    std::sort(out.begin(), out.end(), [&nodes](NodeId a, NodeId b) {
        if (nodes[a].weight != nodes[b].weight) return nodes[a].weight > nodes[b].weight;
        return a < b;
    });
    return out;
}

}  // namespace

PlacementPlan build_plan(std::span<const ContentClass> classes, const clustering::Partition& clusters,
                         std::span<const NodeSpec> nodes, std::span<const ContentItem> catalog,
                         const AccessCounter& counter, std::uint32_t a_min, SimTime epoch)
{
    if (a_min < 1) throw std::domain_error("build_plan: a_min must be >= 1");
    if (clusters.strong.size() + clusters.weak.size() != nodes.size()) {
        throw std::domain_error("build_plan: partition does not cover every node");
    }
    PlacementPlan plan;
    plan.epoch = epoch;

    std::vector<std::size_t> free(nodes.size());
    for (const auto& n : nodes) free.at(n.id) = n.cache.free_slots();
    const auto strong = by_weight(clusters.strong, nodes);
    const auto weak = by_weight(clusters.weak, nodes);

    std::vector<ContentId> hot;
    std::vector<ContentId> cold;
    for (const auto& item : catalog) {
        const auto cls = item.id < classes.size() ? classes[item.id] : ContentClass::Class2;
        plan.classes[item.id] = cls;
        (cls == ContentClass::Class1 ? hot : cold).push_back(item.id);
    }
    std::stable_sort(hot.begin(), hot.end(),
                     [&counter](ContentId a, ContentId b) { return counter.count(a) > counter.count(b); });

    auto assign = [&](ContentId c, const std::vector<NodeId>& pool, bool class1) {
        const NodeId origin = catalog[c].origin;
        std::vector<NodeId> eligible;
        for (NodeId id : pool) {
            if (id != origin && free[id] > 0) eligible.push_back(id);
        }
        const std::size_t r = class1 ? class1_replicas(counter.count(c), a_min, std::min(pool.size(), eligible.size()))
                                     : std::min<std::size_t>(1, eligible.size());
        if (r == 0) {
            plan.warnings.push_back(keyword_for(c) + (pool.empty() ? ": no nodes in target cluster"
                                                                   : ": no free replica slot in target cluster"));
            return;
        }
        auto& hosts = plan.assignments[c];
        for (std::size_t i = 0; i < r; ++i) {
            hosts.push_back(eligible[i]);
            --free[eligible[i]];
        }
    };
    for (ContentId c : hot) assign(c, strong, true);
    for (ContentId c : cold) assign(c, weak, false);
    return plan;
}

std::vector<PlacementEvent> apply_plan(const PlacementPlan& plan, std::span<NodeSpec> nodes,
                                       std::span<const ContentItem> catalog, std::vector<DirectoryRecord>& directory,
                                       simnet::Network* network, SimTime now)
{
    std::vector<PlacementEvent> events;
    for (const auto& [content, hosts] : plan.assignments) {
        const auto cls_it = plan.classes.find(content);
        const auto cls = cls_it == plan.classes.end() ? ContentClass::Unclassified : cls_it->second;
        for (NodeId host : hosts) {
            auto& node = nodes[host];
            if (auto evicted = node.cache.insert(content, now)) {
                events.push_back({PlacementEventKind::Evict, now, *evicted, host, cls, node.weight});
            }
            events.push_back({PlacementEventKind::Place, now, content, host, cls, node.weight});
            directory.push_back({content, host, node.weight, now});
            if (network != nullptr) network->reserve_payload(catalog[content].origin, host, catalog[content].size, now);
        }
    }
    return events;
}

std::vector<PlacementMessage> broadcast_placement(const PlacementPlan& plan, std::span<const NodeSpec> nodes)
{
    std::map<NodeId, std::vector<ContentId>> by_node;
    for (const auto& [content, hosts] : plan.assignments) {
        for (NodeId host : hosts) by_node[host].push_back(content);
    }
    std::vector<PlacementMessage> out;
    out.reserve(by_node.size());
    for (auto& [node, contents] : by_node) {
        std::sort(contents.begin(), contents.end());
        out.push_back({node, nodes[node].cluster == ClusterTag::Strong ? 'S' : 'W', std::move(contents)});
    }
    return out;
}

PlacementPlan baseline_place(Strategy strategy, std::span<const ContentItem> catalog, std::span<const NodeSpec> nodes,
                             std::mt19937_64& rng)
{
    if (strategy == Strategy::Qirm) throw std::domain_error("baseline_place: qirm is not a baseline");
    PlacementPlan plan;
    if (strategy == Strategy::OriginOnly) return plan;

    std::vector<std::size_t> free(nodes.size());
    for (const auto& n : nodes) free.at(n.id) = n.cache.free_slots();
    for (const auto& item : catalog) {
        std::vector<NodeId> eligible;
        for (const auto& n : nodes) {
            if (n.id != item.origin && free[n.id] > 0) eligible.push_back(n.id);
        }
        if (eligible.empty()) {
            plan.warnings.push_back(item.ckwd + ": no free replica slot");
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
        const NodeId host = eligible[pick(rng)];
        --free[host];
        plan.assignments[item.id].push_back(host);
        plan.classes[item.id] = ContentClass::Unclassified;
    }
    return plan;
}

PlacementPlan baseline_place(Strategy strategy, std::span<const ContentItem> catalog, std::span<const NodeSpec> nodes,
                             std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return baseline_place(strategy, catalog, nodes, rng);
}

}  // namespace qirm::placement

#pragma once

#include "qirm/clustering.hpp"
#include "qirm/model.hpp"
#include "qirm/simnet.hpp"

#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qirm::placement {

// Query-server access counts n(Q) per catalog keyword.
class AccessCounter {
public:
    explicit AccessCounter(std::size_t catalog_size = 0) : counts_(catalog_size, 0) {}

    // Increments the keyword's count. Unknown keywords are tallied separately
    // and leave every count untouched; returns false for them.
    bool register_query(const Query& query);

    std::uint64_t count(ContentId id) const { return id < counts_.size() ? counts_[id] : 0; }
    std::uint64_t count(std::string_view ckwd) const;
    std::uint64_t unknown() const { return unknown_; }
    std::size_t catalog_size() const { return counts_.size(); }

    // Epoch boundary.
    void reset();

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t unknown_ = 0;
};

// Indexed by content id: Class1 iff count >= a_min. Throws on a_min < 1.
std::vector<ContentClass> classify(const AccessCounter& counter, std::uint32_t a_min);

struct PlacementPlan {
    std::map<ContentId, std::vector<NodeId>> assignments;  // hosts in selection order
    std::map<ContentId, ContentClass> classes;
    SimTime epoch = 0.0;
    std::vector<std::string> warnings;

    bool empty() const { return assignments.empty(); }
    std::size_t replica_count() const;
};

// Replicas per Class1 content: clamp(ceil(count / a_min), 1, limit).
std::size_t class1_replicas(std::uint64_t count, std::uint32_t a_min, std::size_t limit);

// Class1 content goes to strong nodes, Class2 to exactly one weak node.
// Hosts are taken in descending weight, skipping full caches and the
// content's own origin. Class1 content is planned first, hottest first.
PlacementPlan build_plan(std::span<const ContentClass> classes, const clustering::Partition& clusters,
                         std::span<const NodeSpec> nodes, std::span<const ContentItem> catalog,
                         const AccessCounter& counter, std::uint32_t a_min, SimTime epoch);

// Origin-server record of a replica copy.
struct DirectoryRecord {
    ContentId content = 0;
    NodeId node = 0;
    double weight = 0.0;
    SimTime placed_at = 0.0;

    friend bool operator==(const DirectoryRecord&, const DirectoryRecord&) = default;
};

enum class PlacementEventKind { Evict, Place };

struct PlacementEvent {
    PlacementEventKind kind = PlacementEventKind::Place;
    SimTime time = 0.0;
    ContentId content = 0;
    NodeId node = 0;
    ContentClass cls = ContentClass::Unclassified;
    double weight = 0.0;

    friend bool operator==(const PlacementEvent&, const PlacementEvent&) = default;
};

// Installs every replica (LRU eviction if a cache is full), appends to the
// directory and, when a network is given, charges the origin-to-host copy.
std::vector<PlacementEvent> apply_plan(const PlacementPlan& plan, std::span<NodeSpec> nodes,
                                       std::span<const ContentItem> catalog, std::vector<DirectoryRecord>& directory,
                                       simnet::Network* network, SimTime now);

// One message per assigned node listing its contents in ascending id.
std::vector<PlacementMessage> broadcast_placement(const PlacementPlan& plan, std::span<const NodeSpec> nodes);

// RandomFlood: each content to one uniformly drawn non-origin node with a
// free slot. OriginOnly: nothing. Throws std::domain_error for Qirm.
PlacementPlan baseline_place(Strategy strategy, std::span<const ContentItem> catalog,
                             std::span<const NodeSpec> nodes, std::mt19937_64& rng);
PlacementPlan baseline_place(Strategy strategy, std::span<const ContentItem> catalog,
                             std::span<const NodeSpec> nodes, std::uint64_t seed);

}  // namespace qirm::placement

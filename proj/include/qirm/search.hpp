#pragma once

#include "qirm/model.hpp"
#include "qirm/placement.hpp"
#include "qirm/simnet.hpp"
#include "qirm/trace.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace qirm::search {

// Rolling history of the outcomes this node observed from its neighbors.
class Profile {
public:
    explicit Profile(NodeId owner = 0) : owner_(owner) {}

    NodeId owner() const { return owner_; }
    const std::vector<ProfileEntry>& entries() const { return entries_; }

    // A later entry for the same (neighbor, query) replaces the earlier one.
    void record(ProfileEntry entry);

    // Keeps entries with now - recorded_at <= t_window, order preserved.
    void prune(SimTime now, double t_window);

private:
    NodeId owner_;
    std::vector<ProfileEntry> entries_;
};

Profile profile_prune(Profile profile, SimTime now, double t_window);

// Sum of nor^alpha over the neighbor's entries whose keyword equals `ckwd`
// and whose qhit > 0. A zero-result entry contributes 0 at every alpha.
double score(const Profile& profile, NodeId neighbor, std::string_view ckwd, double alpha);

// Top `fanout` strong nodes by score (ties by ascending id) when any strong
// node scored above zero; otherwise every strong node, ascending.
std::vector<NodeId> select_targets(const std::map<NodeId, double>& scores, std::span<const NodeId> strong,
                                   std::uint32_t fanout);

// An ack when the node holds the keyword's content; the origin copy is
// stamped 0, a replica with the time it was stored.
std::optional<Ack> handle_request(const NodeSpec& node, std::string_view ckwd, SimTime now);

// Lexicographic max over (ts, w, -responder). Throws on empty input.
NodeId select_best(std::span<const Ack> acks);

struct PromotionOutcome {
    bool promoted = false;
    std::optional<ContentId> evicted;
    std::optional<PlacementMessage> broadcast;
};

// After a server delivery: if the client's mz and bw both exceed the minima
// over the current strong set (0 when that set is empty) it caches the
// content, joins the strong set and announces {nid, "S", content}.
PromotionOutcome maybe_cache_and_promote(NodeSpec& client, ContentId content, std::vector<NodeId>& strong,
                                         std::span<const NodeSpec> nodes, SimTime now);

// Everything one scenario's protocol mutates.
struct Overlay {
    ScenarioConfig config;
    std::vector<NodeSpec> nodes;
    std::vector<ContentItem> catalog;
    std::vector<NodeId> strong;  // ascending; only grows
    std::vector<Profile> profiles;
    simnet::Network network;
    simnet::Engine engine;
    std::vector<placement::DirectoryRecord> directory;
    std::vector<PlacementMessage> broadcasts;
    TraceLog trace;
    std::uint64_t promotions = 0;

    Overlay(ScenarioConfig cfg, std::vector<NodeSpec> node_specs, std::vector<simnet::LinkSpec> links,
            std::vector<ContentItem> items, bool keep_trace = false);

    bool is_strong(NodeId id) const;
};

// Starts the query lifecycle at the engine's current time. `query` must stay
// at a stable address until the engine has drained; its resolution and
// completed_at are filled in by later events.
//
// Qirm: local lookup, then request to scored strong targets, ack collection
// for the longest control round trip, best-ack selection, confirm and data.
// No ack sends the request to the origin, after which the client may cache
// and be promoted. RandomFlood asks `flood_width` random peers and takes the
// earliest ack, with no origin fallback. OriginOnly always asks the origin.
void resolve(Overlay& overlay, Query& query);

}  // namespace qirm::search

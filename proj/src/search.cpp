#include "qirm/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace qirm::search {

void Profile::record(ProfileEntry entry)
{
    auto it = std::find_if(entries_.begin(), entries_.end(), [&entry](const ProfileEntry& e) {
        return e.ni == entry.ni && e.qid == entry.qid;
    });
    if (it != entries_.end()) entries_.erase(it);
    entries_.push_back(std::move(entry));
}

void Profile::prune(SimTime now, double t_window)
{
    std::erase_if(entries_, [&](const ProfileEntry& e) { return now - e.recorded_at > t_window; });
}

Profile profile_prune(Profile profile, SimTime now, double t_window)
{
    profile.prune(now, t_window);
    return profile;
}

double score(const Profile& profile, NodeId neighbor, std::string_view ckwd, double alpha)
{
    double total = 0.0;
    for (const auto& e : profile.entries()) {
        if (e.ni != neighbor || e.qhit == 0 || e.nor == 0 || e.ckwd != ckwd) continue;
        total += std::pow(static_cast<double>(e.nor), alpha);
    }
    return total;
}

std::vector<NodeId> select_targets(const std::map<NodeId, double>& scores, std::span<const NodeId> strong,
                                   std::uint32_t fanout)
{
    if (fanout < 1) throw std::domain_error("select_targets: fanout must be >= 1");
    std::vector<std::pair<double, NodeId>> ranked;
    ranked.reserve(strong.size());
    bool informed = false;
    for (NodeId id : strong) {
        const auto it = scores.find(id);
        const double s = it == scores.end() ? 0.0 : it->second;
        informed = informed || s > 0.0;
        ranked.emplace_back(s, id);
    }
    std::vector<NodeId> out;
    if (!informed) {
        out.assign(strong.begin(), strong.end());
        std::sort(out.begin(), out.end());
        return out;
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    const auto n = std::min<std::size_t>(fanout, ranked.size());
    for (std::size_t i = 0; i < n; ++i) out.push_back(ranked[i].second);
    return out;
}

std::optional<Ack> handle_request(const NodeSpec& node, std::string_view ckwd, SimTime /*now*/)
{
    const auto c = content_for_keyword(ckwd);
    if (!c) return std::nullopt;
    if (node.owned_content == *c) return Ack{node.id, 0.0, node.weight};
    if (const auto ts = node.cache.stored_at(*c)) return Ack{node.id, *ts, node.weight};
    return std::nullopt;
}

NodeId select_best(std::span<const Ack> acks)
{
    if (acks.empty()) throw std::domain_error("select_best: no acks");
    const Ack* best = &acks.front();
    for (const auto& a : acks.subspan(1)) {
        if (a.ts != best->ts ? a.ts > best->ts
            : a.w != best->w ? a.w > best->w
                             : a.responder < best->responder) {
            best = &a;
        }
    }
    return best->responder;
}

PromotionOutcome maybe_cache_and_promote(NodeSpec& client, ContentId content, std::vector<NodeId>& strong,
                                         std::span<const NodeSpec> nodes, SimTime now)
{
    double min_mz = 0.0;
    double min_bw = 0.0;
    if (!strong.empty()) {
        min_mz = std::numeric_limits<double>::infinity();
        min_bw = std::numeric_limits<double>::infinity();
        for (NodeId id : strong) {
            min_mz = std::min(min_mz, nodes[id].mz);
            min_bw = std::min(min_bw, nodes[id].bw);
        }
    }
    PromotionOutcome out;
    if (!(client.mz > min_mz && client.bw > min_bw)) return out;

    out.promoted = true;
    out.evicted = client.cache.insert(content, now);
    client.cluster = ClusterTag::Strong;
    const auto pos = std::lower_bound(strong.begin(), strong.end(), client.id);
    if (pos == strong.end() || *pos != client.id) strong.insert(pos, client.id);
    out.broadcast = PlacementMessage{client.id, 'S', {content}};
    return out;
}

Overlay::Overlay(ScenarioConfig cfg, std::vector<NodeSpec> node_specs, std::vector<simnet::LinkSpec> links,
                 std::vector<ContentItem> items, bool keep_trace)
    : config(std::move(cfg)),
      nodes(std::move(node_specs)),
      catalog(std::move(items)),
      network(std::move(links), config.control_packet_kb, config.report_interval),
      engine(config.seed, false),
      trace(keep_trace)
{
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id != i) throw std::invalid_argument("Overlay: nodes must be indexed by id");
        if (nodes[i].cluster == ClusterTag::Strong) strong.push_back(nodes[i].id);
        profiles.emplace_back(nodes[i].id);
    }
    if (network.links().size() != nodes.size()) throw std::invalid_argument("Overlay: one link per node required");
}

bool Overlay::is_strong(NodeId id) const
{
    return std::binary_search(strong.begin(), strong.end(), id);
}

namespace {

using simnet::EventKind;

struct Exchange {
    struct Received {
        Ack ack;
        SimTime arrival;
    };
    std::vector<NodeId> targets;
    std::vector<Received> acks;
};

void complete(Overlay& ov, Query& q, ResolutionKind kind, NodeId server, SimTime t, ContentId c)
{
    q.resolution = {kind, server};
    q.completed_at = t;
    ov.trace.add({t, TraceType::Complete, q.qid, q.nid, server, c, {}, {}});
}

void give_up(Overlay& ov, Query& q, SimTime t, std::optional<ContentId> c)
{
    q.resolution = {ResolutionKind::Unserved, std::nullopt};
    ov.trace.add({t, TraceType::Unserved, q.qid, q.nid, {}, c, {}, {}});
}

void announce(Overlay& ov, const PlacementMessage& msg, SimTime t)
{
    for (const auto& n : ov.nodes) {
        if (n.id != msg.nid) ov.network.send_control(msg.nid, n.id, t);
    }
    ov.broadcasts.push_back(msg);
}

void fetch_from_origin(Overlay& ov, Query& q, ContentId c, SimTime now, bool may_promote)
{
    const NodeId client = q.nid;
    const NodeId origin = ov.catalog[c].origin;
    ov.trace.add({now, TraceType::Fallback, q.qid, client, origin, c, {}, {}});
    const auto request = ov.network.send_control(client, origin, now);
    ov.engine.schedule(request.arrival, EventKind::PacketDelivery, [&ov, &q, c, client, origin, may_promote] {
        const SimTime t = ov.engine.now();
        const auto data = ov.network.reserve_payload(origin, client, ov.catalog[c].size, t);
        ov.trace.add({data.start, TraceType::Data, q.qid, origin, client, c, {}, {}});
        ov.engine.schedule(data.arrival, EventKind::TransferComplete, [&ov, &q, c, client, origin, may_promote] {
            const SimTime done = ov.engine.now();
            complete(ov, q, ResolutionKind::ServerFallback, origin, done, c);
            if (!may_promote) return;
            auto& node = ov.nodes[client];
            const auto outcome = maybe_cache_and_promote(node, c, ov.strong, ov.nodes, done);
            if (!outcome.promoted) return;
            ++ov.promotions;
            if (outcome.evicted) {
                ov.trace.add({done, TraceType::Evict, q.qid, client, {}, *outcome.evicted, {}, node.weight});
            }
            ov.trace.add({done, TraceType::Promote, q.qid, client, {}, c, {}, node.weight});
            announce(ov, *outcome.broadcast, done);
        });
    });
}

void deliver_from_peer(Overlay& ov, Query& q, ContentId c, NodeId server, SimTime now)
{
    const NodeId client = q.nid;
    ov.trace.add({now, TraceType::Confirm, q.qid, client, server, c, {}, {}});
    const auto confirm = ov.network.send_control(client, server, now);
    ov.engine.schedule(confirm.arrival, EventKind::PacketDelivery, [&ov, &q, c, client, server] {
        const SimTime t = ov.engine.now();
        auto& host = ov.nodes[server];
        if (!host.holds(c)) {
            // The replica was evicted between ack and confirm.
            if (ov.config.strategy == Strategy::Qirm) {
                fetch_from_origin(ov, q, c, t, true);
            } else {
                give_up(ov, q, t, c);
            }
            return;
        }
        host.cache.touch(c);
        const auto data = ov.network.reserve_payload(server, client, ov.catalog[c].size, t);
        ov.trace.add({data.start, TraceType::Data, q.qid, server, client, c, {}, {}});
        ov.engine.schedule(data.arrival, EventKind::TransferComplete, [&ov, &q, c, server] {
            complete(ov, q, ResolutionKind::StrongClusterHit, server, ov.engine.now(), c);
        });
    });
}

void decide(Overlay& ov, Query& q, ContentId c, const Exchange& ex)
{
    const SimTime t = ov.engine.now();
    const bool qirm = ov.config.strategy == Strategy::Qirm;
    if (qirm) {
        auto& profile = ov.profiles[q.nid];
        for (NodeId target : ex.targets) {
            const bool hit = std::any_of(ex.acks.begin(), ex.acks.end(),
                                         [target](const Exchange::Received& r) { return r.ack.responder == target; });
            profile.record({target, q.qid, q.ckwd, hit ? 1u : 0u, hit ? 1u : 0u, t});
        }
    }
    if (ex.acks.empty()) {
        if (qirm) {
            fetch_from_origin(ov, q, c, t, true);
        } else {
            give_up(ov, q, t, c);
        }
        return;
    }
    NodeId best = 0;
    if (qirm) {
        std::vector<Ack> acks;
        acks.reserve(ex.acks.size());
        for (const auto& r : ex.acks) acks.push_back(r.ack);
        best = select_best(acks);
    } else {
        const auto first = std::min_element(ex.acks.begin(), ex.acks.end(), [](const auto& a, const auto& b) {
            if (a.arrival != b.arrival) return a.arrival < b.arrival;
            return a.ack.responder < b.ack.responder;
        });
        best = first->ack.responder;
    }
    deliver_from_peer(ov, q, c, best, t);
}

void broadcast_request(Overlay& ov, Query& q, ContentId c, std::vector<NodeId> targets)
{
    const SimTime now = ov.engine.now();
    const NodeId client = q.nid;
    auto ex = std::make_shared<Exchange>();
    ex->targets = std::move(targets);
    SimTime window = 0.0;
    for (NodeId target : ex->targets) {
        ov.trace.add({now, TraceType::Query, q.qid, client, target, c, {}, {}});
        const auto request = ov.network.send_control(client, target, now);
        const double back = simnet::transfer_time(0.0, ov.network.link(target), ov.network.link(client),
                                                  ov.network.control_kb());
        window = std::max(window, request.arrival + back - now);
        ov.engine.schedule(request.arrival, EventKind::PacketDelivery, [&ov, &q, ex, target, client] {
            const SimTime t = ov.engine.now();
            const auto ack = handle_request(ov.nodes[target], q.ckwd, t);
            if (!ack) return;
            const auto reply = ov.network.send_control(target, client, t);
            ov.trace.add({t, TraceType::Ack, q.qid, target, client, content_for_keyword(q.ckwd), {}, ack->w});
            ex->acks.push_back({*ack, reply.arrival});
        });
    }
    // Every ack is in by the slowest round trip; acks are recorded with
    // their arrival time when the request lands, so none can be missed.
    ov.engine.schedule(now + window, EventKind::PacketDelivery, [&ov, &q, c, ex] { decide(ov, q, c, *ex); });
}

}  // namespace

void resolve(Overlay& ov, Query& q)
{
    const SimTime now = ov.engine.now();
    const auto c = content_for_keyword(q.ckwd);
    const bool known = c && *c < ov.catalog.size();
    ov.trace.add({now, TraceType::Query, q.qid, q.nid, {}, known ? c : std::nullopt, {}, {}});
    if (!known) {
        give_up(ov, q, now, std::nullopt);
        return;
    }
    auto& client = ov.nodes[q.nid];
    if (client.holds(*c)) {
        client.cache.touch(*c);
        complete(ov, q, ResolutionKind::LocalHit, q.nid, now, *c);
        return;
    }

    switch (ov.config.strategy) {
    case Strategy::OriginOnly:
        fetch_from_origin(ov, q, *c, now, false);
        return;
    case Strategy::Qirm: {
        auto& profile = ov.profiles[q.nid];
        profile.prune(now, ov.config.t_window);
        std::vector<NodeId> candidates;
        std::map<NodeId, double> scores;
        for (NodeId id : ov.strong) {
            if (id == q.nid) continue;
            candidates.push_back(id);
            scores[id] = score(profile, id, q.ckwd, ov.config.alpha);
        }
        auto targets = select_targets(scores, candidates, ov.config.fanout);
        if (targets.empty()) {
            fetch_from_origin(ov, q, *c, now, true);
        } else {
            broadcast_request(ov, q, *c, std::move(targets));
        }
        return;
    }
    case Strategy::RandomFlood: {
        std::vector<NodeId> peers;
        peers.reserve(ov.nodes.size());
        for (const auto& n : ov.nodes) {
            if (n.id != q.nid) peers.push_back(n.id);
        }
        const auto width = std::min<std::size_t>(ov.config.flood_width, peers.size());
        auto& rng = ov.engine.rng();
        for (std::size_t i = 0; i < width; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, peers.size() - 1);
            std::swap(peers[i], peers[pick(rng)]);
        }
        peers.resize(width);
        broadcast_request(ov, q, *c, std::move(peers));
        return;
    }
    }
}

}  // namespace qirm::search

#include "qirm/model.hpp"

#include <algorithm>
#include <charconv>

namespace qirm {

std::string_view to_string(ClusterTag tag)
{
    return tag == ClusterTag::Strong ? "S" : "W";
}

std::string_view to_string(ContentClass cls)
{
    switch (cls) {
    case ContentClass::Class1: return "class1";
    case ContentClass::Class2: return "class2";
    case ContentClass::Unclassified: break;
    }
    return "unclassified";
}

std::string_view to_string(Strategy strategy)
{
    switch (strategy) {
    case Strategy::Qirm: return "qirm";
    case Strategy::RandomFlood: return "random_flood";
    case Strategy::OriginOnly: break;
    }
    return "origin_only";
}

std::string_view to_string(ResolutionKind kind)
{
    switch (kind) {
    case ResolutionKind::Pending: return "pending";
    case ResolutionKind::LocalHit: return "local_hit";
    case ResolutionKind::StrongClusterHit: return "strong_hit";
    case ResolutionKind::ServerFallback: return "server_fallback";
    case ResolutionKind::Unserved: break;
    }
    return "unserved";
}

std::optional<Strategy> parse_strategy(std::string_view name)
{
    if (name == "qirm") return Strategy::Qirm;
    if (name == "random_flood") return Strategy::RandomFlood;
    if (name == "origin_only") return Strategy::OriginOnly;
    return std::nullopt;
}

std::string keyword_for(ContentId id)
{
    return "kw" + std::to_string(id);
}

std::optional<ContentId> content_for_keyword(std::string_view ckwd)
{
    if (ckwd.size() < 3 || ckwd.substr(0, 2) != "kw") return std::nullopt;
    auto digits = ckwd.substr(2);
    // Reject leading zeros so that keyword_for is the only spelling.
    if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
    ContentId id = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
    return id;
}

bool ReplicaCache::contains(ContentId c) const
{
    return std::any_of(entries_.begin(), entries_.end(), [c](const Entry& e) { return e.content == c; });
}

std::optional<SimTime> ReplicaCache::stored_at(ContentId c) const
{
    for (const auto& e : entries_) {
        if (e.content == c) return e.stored_at;
    }
    return std::nullopt;
}

void ReplicaCache::touch(ContentId c)
{
    auto it = std::find_if(entries_.begin(), entries_.end(), [c](const Entry& e) { return e.content == c; });
    if (it == entries_.end()) return;
    std::rotate(it, it + 1, entries_.end());
}

std::optional<ContentId> ReplicaCache::insert(ContentId c, SimTime now)
{
    if (capacity_ == 0) return std::nullopt;
    auto it = std::find_if(entries_.begin(), entries_.end(), [c](const Entry& e) { return e.content == c; });
    if (it != entries_.end()) {
        it->stored_at = now;
        std::rotate(it, it + 1, entries_.end());
        return std::nullopt;
    }
    std::optional<ContentId> evicted;
    if (entries_.size() >= capacity_) {
        evicted = entries_.front().content;
        entries_.erase(entries_.begin());
    }
    entries_.push_back({c, now});
    return evicted;
}

std::vector<std::string> validate(const ScenarioConfig& c)
{
    std::vector<std::string> out;
    auto require = [&out](bool ok, const char* message) {
        if (!ok) out.emplace_back(message);
    };
    require(c.n_nodes >= 2, "n_nodes ≥ 2 violated");
    require(c.beta > 0.0, "beta > 0 violated");
    require(c.a_min >= 1, "a_min ≥ 1 violated");
    require(c.alpha >= 0.0, "alpha ≥ 0 violated");
    require(c.t_window >= 0.0, "t_window ≥ 0 violated");
    require(c.fanout >= 1, "fanout ≥ 1 violated");
    require(c.duration > 0.0, "duration > 0 violated");
    require(c.warmup_fraction >= 0.0 && c.warmup_fraction < 1.0, "0 ≤ warmup_fraction < 1 violated");
    require(c.catalog_size == c.n_nodes, "catalog_size == n_nodes violated (each node originates one content)");
    require(c.zipf_s >= 0.0, "zipf_s ≥ 0 violated");
    require(c.query_rate > 0.0, "query_rate > 0 violated");
    require(c.content_size_min > 0.0 && c.content_size_min <= c.content_size_max,
            "0 < content_size_min ≤ content_size_max violated");
    require(c.bw_min > 0.0 && c.bw_min <= c.bw_max, "0 < bw_min ≤ bw_max violated");
    require(c.sp_min > 0.0 && c.sp_min <= c.sp_max, "0 < sp_min ≤ sp_max violated");
    require(c.mz_min > 0.0 && c.mz_min <= c.mz_max, "0 < mz_min ≤ mz_max violated");
    require(c.al_min > 0.0 && c.al_min <= c.al_max, "0 < al_min ≤ al_max violated");
    require(c.uplink_ratio > 0.0, "uplink_ratio > 0 violated");
    require(c.control_packet_kb >= 0.0, "control_packet_kb ≥ 0 violated");
    require(c.packet_size_kb > 0.0, "packet_size_kb > 0 violated");
    require(c.report_interval > 0.0, "report_interval > 0 violated");
    require(c.drain_horizon >= 0.0, "drain_horizon ≥ 0 violated");
    require(c.flood_width >= 1, "flood_width ≥ 1 violated");
    return out;
}

}  // namespace qirm

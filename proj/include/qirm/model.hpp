#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qirm {

using NodeId = std::uint32_t;
using ContentId = std::uint32_t;
using QueryId = std::uint64_t;
// Simulation time in seconds.
using SimTime = double;

enum class ClusterTag { Strong, Weak };
enum class ContentClass { Class1, Class2, Unclassified };
enum class Strategy { Qirm, RandomFlood, OriginOnly };
enum class ResolutionKind { Pending, LocalHit, StrongClusterHit, ServerFallback, Unserved };

std::string_view to_string(ClusterTag tag);
std::string_view to_string(ContentClass cls);
std::string_view to_string(Strategy strategy);
std::string_view to_string(ResolutionKind kind);

// Accepts the CLI spellings: qirm, random_flood, origin_only.
std::optional<Strategy> parse_strategy(std::string_view name);

// Keywords are synthesized from content ids and matched by exact equality.
std::string keyword_for(ContentId id);
std::optional<ContentId> content_for_keyword(std::string_view ckwd);

// Fixed-capacity LRU store of replicated content ids. The front of the
// recency list is the least recently used entry.
class ReplicaCache {
public:
    struct Entry {
        ContentId content;
        SimTime stored_at;
    };

    explicit ReplicaCache(std::size_t capacity = 0) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool full() const { return entries_.size() >= capacity_; }
    std::size_t free_slots() const { return capacity_ - entries_.size(); }

    bool contains(ContentId c) const;
    std::optional<SimTime> stored_at(ContentId c) const;

    // Marks c as most recently used. No-op if absent.
    void touch(ContentId c);

    // Inserts c (or refreshes its timestamp if present). Returns the evicted
    // content when the cache was full. A zero-capacity cache stores nothing.
    std::optional<ContentId> insert(ContentId c, SimTime now);

    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::vector<Entry> entries_;
};

struct NodeSpec {
    NodeId id = 0;
    double bw = 1.0;  // available bandwidth, Mb/s
    double sp = 1.0;  // CPU speed, normalized units
    double mz = 1.0;  // memory, MB
    double al = 1.0;  // access latency, ms
    double weight = 0.0;
    ClusterTag cluster = ClusterTag::Weak;
    ReplicaCache cache;
    ContentId owned_content = 0;

    bool holds(ContentId c) const { return owned_content == c || cache.contains(c); }
};

struct ContentItem {
    ContentId id = 0;
    std::string ckwd;
    double size = 0.0;  // MB
    NodeId origin = 0;
    ContentClass cls = ContentClass::Unclassified;
};

struct Resolution {
    ResolutionKind kind = ResolutionKind::Pending;
    std::optional<NodeId> server;

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

struct Query {
    QueryId qid = 0;
    NodeId nid = 0;
    std::string ckwd;
    SimTime issued_at = 0.0;
    Resolution resolution;
    std::optional<SimTime> completed_at;

    bool served() const
    {
        return resolution.kind == ResolutionKind::LocalHit ||
               resolution.kind == ResolutionKind::StrongClusterHit ||
               resolution.kind == ResolutionKind::ServerFallback;
    }
};

struct ProfileEntry {
    NodeId ni = 0;
    QueryId qid = 0;
    std::string ckwd;  // keyword of the query the entry describes
    std::uint32_t qhit = 0;
    std::uint32_t nor = 0;
    SimTime recorded_at = 0.0;
};

struct Ack {
    NodeId responder = 0;
    SimTime ts = 0.0;
    double w = 0.0;
};

struct PlacementMessage {
    NodeId nid = 0;
    char clid = 'W';  // 'S' or 'W'
    std::vector<ContentId> content_ids;

    friend bool operator==(const PlacementMessage&, const PlacementMessage&) = default;
};

struct ScenarioConfig {
    // Protocol constants.
    std::uint32_t n_nodes = 50;
    std::uint32_t k_cache_slots = 10;
    double beta = 40.0;
    std::uint32_t a_min = 5;
    double alpha = 1.0;
    double t_window = 60.0;
    std::uint32_t fanout = 3;
    bool normalize_weights = false;
    double warmup_fraction = 0.1;

    // Workload.
    std::uint32_t catalog_size = 50;
    double zipf_s = 0.8;
    // 1 Mb/s of offered query traffic at the default 3.5 MB mean size.
    double query_rate = 1000.0 / 28000.0;  // queries/s, all clients together
    double content_size_min = 2.0;  // MB
    double content_size_max = 5.0;  // MB
    double duration = 280000.0;  // s; ~10,000 queries at the default rate
    std::uint64_t seed = 1;
    Strategy strategy = Strategy::Qirm;

    // Node population ranges.
    double bw_min = 1.0, bw_max = 100.0;
    double sp_min = 1.0, sp_max = 10.0;
    double mz_min = 64.0, mz_max = 1024.0;
    double al_min = 1.0, al_max = 50.0;
    // Upload capacity as a fraction of the node's bandwidth (download).
    double uplink_ratio = 0.25;

    // Network and accounting.
    double control_packet_kb = 1.0;
    double packet_size_kb = 1.0;
    double report_interval = 1.0;  // s
    double drain_horizon = 600.0;  // s allowed after `duration` for in-flight queries
    std::uint32_t flood_width = 10;  // peers contacted per random_flood query

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// One human-readable message per broken invariant; empty when valid.
std::vector<std::string> validate(const ScenarioConfig& config);

struct ResolutionCounts {
    std::uint64_t local_hits = 0;
    std::uint64_t strong_hits = 0;
    std::uint64_t server_fallbacks = 0;
    std::uint64_t unserved = 0;

    std::uint64_t total() const { return local_hits + strong_hits + server_fallbacks + unserved; }
    std::uint64_t served() const { return local_hits + strong_hits + server_fallbacks; }

    friend bool operator==(const ResolutionCounts&, const ResolutionCounts&) = default;
};

struct MetricsReport {
    std::optional<double> avg_delay;  // s, absent when nothing was served
    double throughput_Bps = 0.0;
    double throughput_pps = 0.0;
    double query_efficiency = 0.0;
    double bandwidth_utilization = 0.0;
    ResolutionCounts counts;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

}  // namespace qirm

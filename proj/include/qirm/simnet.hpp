#pragma once

#include "qirm/model.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace qirm::simnet {

// Access link of one peer. Routers are unconstrained; two peers are joined by
// an overlay link whose one-way delay is the sum of their access delays.
struct LinkSpec {
    NodeId node = 0;
    double up_capacity = 1.0;    // Mb/s
    double down_capacity = 1.0;  // Mb/s
    double access_delay_ms = 0.0;
};

// One-way end-to-end delay in seconds; symmetric.
double e2e_delay(const LinkSpec& a, const LinkSpec& b);

// Bits carried by a message of `size_mb` MB; zero-size messages are control
// packets of `control_kb` KB.
double payload_megabits(double size_mb, double control_kb);

// e2e delay plus serialization over min(src.up, dst.down).
double transfer_time(double size_mb, const LinkSpec& src, const LinkSpec& dst, double control_kb = 1.0);

enum class EventKind : std::uint8_t { QueryArrival, PacketDelivery, TransferComplete, PlacementEpoch };

std::string_view to_string(EventKind kind);

struct EventRecord {
    SimTime fire_at = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::PacketDelivery;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// Single-threaded discrete-event loop. Events fire in (fire_at, seq) order
// where seq is the insertion counter.
class Engine {
public:
    using Handler = std::function<void()>;

    explicit Engine(std::uint64_t seed = 0, bool keep_log = false);

    SimTime now() const { return now_; }
    std::mt19937_64& rng() { return rng_; }

    // Throws std::domain_error when `at` lies before now().
    std::uint64_t schedule(SimTime at, EventKind kind, Handler handler);

    // Dispatches every event with fire_at <= t_end, then advances the clock
    // to t_end if it is still behind. Returns the number dispatched.
    std::size_t run_until(SimTime t_end);

    std::size_t pending() const { return queue_.size(); }
    std::uint64_t dispatched() const { return dispatched_; }
    const std::vector<EventRecord>& log() const { return log_; }

private:
    struct Scheduled {
        EventRecord record;
        Handler handler;
    };
    struct Later {
        bool operator()(const Scheduled& a, const Scheduled& b) const
        {
            if (a.record.fire_at != b.record.fire_at) return a.record.fire_at > b.record.fire_at;
            return a.record.seq > b.record.seq;
        }
    };

    SimTime now_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t dispatched_ = 0;
    bool keep_log_;
    std::mt19937_64 rng_;
    std::vector<Scheduled> queue_;  // heap ordered by Later
    std::vector<EventRecord> log_;
};

enum class Direction : std::uint8_t { Sent = 0, Received = 1 };

// Bytes moved per node per fixed-length reporting interval.
class BandwidthLedger {
public:
    BandwidthLedger(std::size_t n_nodes, double interval_length);

    double interval_length() const { return interval_; }
    std::size_t interval_count() const { return intervals_; }

    // Spreads `bytes` uniformly over [begin, end]; a zero-length span lands
    // entirely in the interval containing `begin`.
    void charge(NodeId node, double bytes, Direction dir, SimTime begin, SimTime end);

    double bytes(NodeId node, Direction dir, std::size_t interval) const;
    double total(Direction dir, std::size_t interval) const;
    double total(Direction dir) const;

    double raw_utilization(NodeId node, Direction dir, std::size_t interval, double capacity_mbps) const;
    // Clamped to [0, 1].
    double utilization(NodeId node, Direction dir, std::size_t interval, double capacity_mbps) const;

    // Mean clamped utilization over the intervals in which the node moved
    // any bytes in `dir`; nullopt if it never did.
    std::optional<double> active_utilization(NodeId node, Direction dir, double capacity_mbps) const;

    // (node, interval, direction) cells whose raw utilization exceeded 1.
    std::size_t oversubscribed_cells(std::span<const LinkSpec> links) const;

    std::size_t node_count() const { return cells_.size(); }

    // Intervals in which the node moved bytes, ascending.
    std::vector<std::size_t> active_intervals(NodeId node) const;

private:
    using Row = std::map<std::size_t, std::array<double, 2>>;

    double interval_;
    std::size_t intervals_ = 0;
    std::vector<Row> cells_;  // sparse: only intervals with traffic
};

struct Transfer {
    SimTime start = 0.0;     // serialization begins
    SimTime finish = 0.0;    // last bit leaves the sender's access link
    SimTime arrival = 0.0;   // last bit reaches the receiver
};

// Access-link model. Payload transfers occupy the sender's uplink and the
// receiver's downlink serially in reservation (FIFO) order; control packets
// are not queued behind payload.
class Network {
public:
    Network(std::vector<LinkSpec> links, double control_kb, double report_interval);

    const LinkSpec& link(NodeId id) const { return links_.at(id); }
    std::span<const LinkSpec> links() const { return links_; }
    double control_kb() const { return control_kb_; }

    Transfer send_control(NodeId src, NodeId dst, SimTime now);
    Transfer reserve_payload(NodeId src, NodeId dst, double size_mb, SimTime earliest);

    // Control-packet round trip between two peers.
    double control_rtt(NodeId a, NodeId b) const;

    const BandwidthLedger& ledger() const { return ledger_; }

private:
    void charge(NodeId src, NodeId dst, double megabits, SimTime begin, SimTime end);

    std::vector<LinkSpec> links_;
    std::vector<SimTime> up_free_;
    std::vector<SimTime> down_free_;
    double control_kb_;
    BandwidthLedger ledger_;
};

}  // namespace qirm::simnet

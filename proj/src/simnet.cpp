#include "qirm/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qirm::simnet {

double e2e_delay(const LinkSpec& a, const LinkSpec& b)
{
    return (a.access_delay_ms + b.access_delay_ms) / 1000.0;
}

double payload_megabits(double size_mb, double control_kb)
{
    return size_mb > 0.0 ? size_mb * 8.0 : control_kb * 8.0 / 1000.0;
}

double transfer_time(double size_mb, const LinkSpec& src, const LinkSpec& dst, double control_kb)
{
    if (size_mb < 0.0) throw std::domain_error("transfer_time: negative size");
    const double bottleneck = std::min(src.up_capacity, dst.down_capacity);
    return e2e_delay(src, dst) + payload_megabits(size_mb, control_kb) / bottleneck;
}

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::QueryArrival: return "query_arrival";
    case EventKind::PacketDelivery: return "packet_delivery";
    case EventKind::TransferComplete: return "transfer_complete";
    case EventKind::PlacementEpoch: break;
    }
    return "placement_epoch";
}

Engine::Engine(std::uint64_t seed, bool keep_log) : keep_log_(keep_log), rng_(seed) {}

std::uint64_t Engine::schedule(SimTime at, EventKind kind, Handler handler)
{
    if (!(at >= now_)) throw std::domain_error("Engine::schedule: event in the past");
    const auto seq = next_seq_++;
    queue_.push_back(Scheduled{{at, seq, kind}, std::move(handler)});
    std::push_heap(queue_.begin(), queue_.end(), Later{});
    return seq;
}

std::size_t Engine::run_until(SimTime t_end)
{
    std::size_t count = 0;
    while (!queue_.empty() && queue_.front().record.fire_at <= t_end) {
        std::pop_heap(queue_.begin(), queue_.end(), Later{});
        Scheduled next = std::move(queue_.back());
        queue_.pop_back();
        now_ = next.record.fire_at;
        if (keep_log_) log_.push_back(next.record);
        ++dispatched_;
        ++count;
        next.handler();
    }
    now_ = std::max(now_, t_end);
    return count;
}

BandwidthLedger::BandwidthLedger(std::size_t n_nodes, double interval_length)
    : interval_(interval_length), cells_(n_nodes)
{
    if (!(interval_length > 0.0)) throw std::domain_error("BandwidthLedger: interval must be positive");
}

void BandwidthLedger::charge(NodeId node, double bytes, Direction dir, SimTime begin, SimTime end)
{
    if (bytes < 0.0) throw std::domain_error("BandwidthLedger::charge: negative bytes");
    if (bytes == 0.0) return;
    auto& row = cells_.at(node);
    const auto d = static_cast<std::size_t>(dir);
    const auto first = static_cast<std::size_t>(std::floor(begin / interval_));
    if (!(end > begin)) {
        row[first][d] += bytes;
        intervals_ = std::max(intervals_, first + 1);
        return;
    }
    // An exact boundary at `end` belongs to the interval that ends there.
    const auto last = std::max(first, static_cast<std::size_t>(std::ceil(end / interval_)) - 1);
    intervals_ = std::max(intervals_, last + 1);
    const double rate = bytes / (end - begin);
    for (std::size_t i = first; i <= last; ++i) {
        const double lo = std::max(begin, static_cast<double>(i) * interval_);
        const double hi = std::min(end, static_cast<double>(i + 1) * interval_);
        if (hi > lo) row[i][d] += rate * (hi - lo);
    }
}

double BandwidthLedger::bytes(NodeId node, Direction dir, std::size_t interval) const
{
    const auto& row = cells_.at(node);
    const auto it = row.find(interval);
    return it == row.end() ? 0.0 : it->second[static_cast<std::size_t>(dir)];
}

double BandwidthLedger::total(Direction dir, std::size_t interval) const
{
    double sum = 0.0;
    for (NodeId n = 0; n < cells_.size(); ++n) sum += bytes(n, dir, interval);
    return sum;
}

double BandwidthLedger::total(Direction dir) const
{
    double sum = 0.0;
    for (const auto& row : cells_) {
        for (const auto& [i, cell] : row) sum += cell[static_cast<std::size_t>(dir)];
    }
    return sum;
}

double BandwidthLedger::raw_utilization(NodeId node, Direction dir, std::size_t interval, double capacity_mbps) const
{
    return bytes(node, dir, interval) * 8.0 / (capacity_mbps * 1e6 * interval_);
}

double BandwidthLedger::utilization(NodeId node, Direction dir, std::size_t interval, double capacity_mbps) const
{
    return std::clamp(raw_utilization(node, dir, interval, capacity_mbps), 0.0, 1.0);
}

std::vector<std::size_t> BandwidthLedger::active_intervals(NodeId node) const
{
    std::vector<std::size_t> out;
    for (const auto& [i, cell] : cells_.at(node)) out.push_back(i);
    return out;
}

std::optional<double> BandwidthLedger::active_utilization(NodeId node, Direction dir, double capacity_mbps) const
{
    const auto d = static_cast<std::size_t>(dir);
    double sum = 0.0;
    std::size_t active = 0;
    for (const auto& [i, cell] : cells_.at(node)) {
        if (cell[d] <= 0.0) continue;
        sum += std::clamp(cell[d] * 8.0 / (capacity_mbps * 1e6 * interval_), 0.0, 1.0);
        ++active;
    }
    if (active == 0) return std::nullopt;
    return sum / static_cast<double>(active);
}

std::size_t BandwidthLedger::oversubscribed_cells(std::span<const LinkSpec> links) const
{
    constexpr double kSlack = 1e-9;
    std::size_t count = 0;
    for (const auto& l : links) {
        for (const auto& [i, cell] : cells_.at(l.node)) {
            if (cell[0] * 8.0 / (l.up_capacity * 1e6 * interval_) > 1.0 + kSlack) ++count;
            if (cell[1] * 8.0 / (l.down_capacity * 1e6 * interval_) > 1.0 + kSlack) ++count;
        }
    }
    return count;
}

Network::Network(std::vector<LinkSpec> links, double control_kb, double report_interval)
    : links_(std::move(links)),
      up_free_(links_.size(), 0.0),
      down_free_(links_.size(), 0.0),
      control_kb_(control_kb),
      ledger_(links_.size(), report_interval)
{
    for (std::size_t i = 0; i < links_.size(); ++i) {
        if (links_[i].node != i) throw std::invalid_argument("Network: links must be indexed by node id");
        if (!(links_[i].up_capacity > 0.0 && links_[i].down_capacity > 0.0)) {
            throw std::invalid_argument("Network: capacities must be positive");
        }
    }
}

void Network::charge(NodeId src, NodeId dst, double megabits, SimTime begin, SimTime end)
{
    const double bytes = megabits * 1e6 / 8.0;
    ledger_.charge(src, bytes, Direction::Sent, begin, end);
    ledger_.charge(dst, bytes, Direction::Received, begin, end);
}

Transfer Network::send_control(NodeId src, NodeId dst, SimTime now)
{
    const auto& a = links_.at(src);
    const auto& b = links_.at(dst);
    const double megabits = payload_megabits(0.0, control_kb_);
    const double serialize = megabits / std::min(a.up_capacity, b.down_capacity);
    charge(src, dst, megabits, now, now + serialize);
    return {now, now + serialize, now + serialize + e2e_delay(a, b)};
}

Transfer Network::reserve_payload(NodeId src, NodeId dst, double size_mb, SimTime earliest)
{
    if (size_mb <= 0.0) return send_control(src, dst, earliest);
    const auto& a = links_.at(src);
    const auto& b = links_.at(dst);
    const double megabits = payload_megabits(size_mb, control_kb_);
    const SimTime start = std::max({earliest, up_free_[src], down_free_[dst]});
    const SimTime finish = start + megabits / std::min(a.up_capacity, b.down_capacity);
    up_free_[src] = finish;
    down_free_[dst] = finish;
    charge(src, dst, megabits, start, finish);
    return {start, finish, finish + e2e_delay(a, b)};
}

double Network::control_rtt(NodeId a, NodeId b) const
{
    const double kb = control_kb_;
    return transfer_time(0.0, links_.at(a), links_.at(b), kb) + transfer_time(0.0, links_.at(b), links_.at(a), kb);
}

}  // namespace qirm::simnet

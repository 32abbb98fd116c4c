#pragma once

#include "qirm/model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace qirm {

enum class TraceType : std::uint8_t { Query, Ack, Confirm, Data, Fallback, Promote, Place, Evict, Complete, Unserved };

std::string_view to_string(TraceType type);
std::optional<TraceType> parse_trace_type(std::string_view name);

// One row of trace.csv. Absent fields serialize as empty cells.
struct TraceEvent {
    SimTime time = 0.0;
    TraceType type = TraceType::Query;
    std::optional<QueryId> query;
    std::optional<NodeId> node;
    std::optional<NodeId> peer;
    std::optional<ContentId> content;
    std::optional<ContentClass> cls;
    std::optional<double> weight;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

// Collects events only when enabled, so untraced runs pay nothing.
class TraceLog {
public:
    explicit TraceLog(bool enabled = false) : enabled_(enabled) {}

    bool enabled() const { return enabled_; }
    void add(TraceEvent event)
    {
        if (enabled_) events_.push_back(event);
    }
    const std::vector<TraceEvent>& events() const { return events_; }

private:
    bool enabled_;
    std::vector<TraceEvent> events_;
};

}  // namespace qirm

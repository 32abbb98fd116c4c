#include "qirm/trace.hpp"

#include <array>
#include <utility>

namespace qirm {

namespace {

constexpr std::array<std::pair<TraceType, std::string_view>, 10> kNames{{
    {TraceType::Query, "QUERY"},
    {TraceType::Ack, "ACK"},
    {TraceType::Confirm, "CONFIRM"},
    {TraceType::Data, "DATA"},
    {TraceType::Fallback, "FALLBACK"},
    {TraceType::Promote, "PROMOTE"},
    {TraceType::Place, "PLACE"},
    {TraceType::Evict, "EVICT"},
    {TraceType::Complete, "COMPLETE"},
    {TraceType::Unserved, "UNSERVED"},
}};

}  // namespace

std::string_view to_string(TraceType type)
{
    for (const auto& [t, name] : kNames) {
        if (t == type) return name;
    }
    return "UNKNOWN";
}

std::optional<TraceType> parse_trace_type(std::string_view name)
{
    for (const auto& [t, n] : kNames) {
        if (n == name) return t;
    }
    return std::nullopt;
}

}  // namespace qirm

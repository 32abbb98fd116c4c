#pragma once

#include "qirm/model.hpp"
#include "qirm/simnet.hpp"
#include "qirm/trace.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qirm {

// Side information about a run that is not part of the exported metrics.
struct RunStats {
    std::uint64_t events = 0;
    std::uint64_t promotions = 0;
    std::size_t replicas_placed = 0;
    std::size_t strong_initial = 0;
    std::size_t strong_final = 0;
    std::size_t oversubscribed_cells = 0;
};

namespace metrics {

// avg_delay: mean completed_at - issued_at over served queries.
// throughput: payload delivered over the network to clients, per second of
//   simulated duration, in bytes/s and in packet_size_kb packets/s.
// query_efficiency: served / issued.
// bandwidth_utilization: clamped downlink utilization averaged over every
//   node and every reporting interval of the run (idle intervals count 0).
// Throws std::logic_error if the resolution counts do not add up.
MetricsReport finalize(std::span<const Query> queries, std::span<const ContentItem> catalog,
                       const simnet::Network& network, const ScenarioConfig& config);

ResolutionCounts count_resolutions(std::span<const Query> queries);

// One metrics.csv row.
struct MetricsRow {
    Strategy strategy = Strategy::Qirm;
    std::string param_name;  // "load", "rate" or "none"
    double param_value = 0.0;
    std::uint64_t seed = 0;
    MetricsReport report;

    friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

inline constexpr const char* kMetricsHeader =
    "strategy,param_name,param_value,seed,avg_delay_s,throughput_Bps,throughput_pps,query_efficiency,"
    "bw_utilization,local_hits,strong_hits,fallbacks,unserved";

inline constexpr const char* kTraceHeader = "time,event,query,node,peer,content,class,weight";

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

void write_trace_csv(std::ostream& out, std::span<const TraceEvent> events);
std::vector<TraceEvent> read_trace_csv(std::istream& in);

// Writes <dir>/metrics.csv and, when `trace` is non-null, <dir>/trace.csv.
// Creates the directory; throws std::runtime_error on I/O failure.
void export_csv(const std::filesystem::path& dir, std::span<const MetricsRow> rows,
                const std::vector<TraceEvent>* trace = nullptr);

}  // namespace metrics
}  // namespace qirm

#include "qirm/metrics.hpp"

#include "qirm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qirm::metrics {

ResolutionCounts count_resolutions(std::span<const Query> queries)
{
    ResolutionCounts c;
    for (const auto& q : queries) {
        switch (q.resolution.kind) {
        case ResolutionKind::LocalHit: ++c.local_hits; break;
        case ResolutionKind::StrongClusterHit: ++c.strong_hits; break;
        case ResolutionKind::ServerFallback: ++c.server_fallbacks; break;
        case ResolutionKind::Pending:
        case ResolutionKind::Unserved: ++c.unserved; break;
        }
    }
    return c;
}

MetricsReport finalize(std::span<const Query> queries, std::span<const ContentItem> catalog,
                       const simnet::Network& network, const ScenarioConfig& config)
{
    MetricsReport r;
    r.counts = count_resolutions(queries);
    if (r.counts.total() != queries.size()) throw std::logic_error("finalize: resolution counts do not add up");

    double delay_sum = 0.0;
    double delivered_mb = 0.0;
    for (const auto& q : queries) {
        if (!q.served()) continue;
        delay_sum += *q.completed_at - q.issued_at;
        if (q.resolution.kind == ResolutionKind::LocalHit) continue;
        const auto c = content_for_keyword(q.ckwd);
        delivered_mb += catalog[*c].size;
    }
    const auto served = r.counts.served();
    if (served > 0) r.avg_delay = delay_sum / static_cast<double>(served);
    r.query_efficiency = queries.empty() ? 0.0 : static_cast<double>(served) / static_cast<double>(queries.size());
    r.throughput_Bps = delivered_mb * 1e6 / config.duration;
    r.throughput_pps = delivered_mb * 1000.0 / config.packet_size_kb / config.duration;

    const auto& ledger = network.ledger();
    const auto intervals = std::max<std::size_t>(
        ledger.interval_count(), static_cast<std::size_t>(std::ceil(config.duration / ledger.interval_length())));
    double util_sum = 0.0;
    for (const auto& link : network.links()) {
        for (std::size_t i : ledger.active_intervals(link.node)) {
            util_sum += ledger.utilization(link.node, simnet::Direction::Received, i, link.down_capacity);
        }
    }
    const auto cells = static_cast<double>(intervals) * static_cast<double>(network.links().size());
    r.bandwidth_utilization = cells > 0.0 ? util_sum / cells : 0.0;
    return r;
}

namespace {

std::string opt(const std::optional<double>& v)
{
    return v ? format_double(*v) : std::string{};
}

template <typename T>
std::string opt(const std::optional<T>& v)
{
    return v ? std::to_string(*v) : std::string{};
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <typename T>
T num(const std::string& s, const char* column)
{
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error(std::string("bad value in column '") + column + "': '" + s + "'");
    }
    return v;
}

template <typename T>
std::optional<T> opt_num(const std::string& s, const char* column)
{
    if (s.empty()) return std::nullopt;
    return num<T>(s, column);
}

void expect_header(std::istream& in, const char* header)
{
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw std::runtime_error(std::string("unexpected CSV header; want: ") + header);
    }
}

}  // namespace

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows)
{
    out << kMetricsHeader << '\n';
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << to_string(row.strategy) << ',' << row.param_name << ',' << format_double(row.param_value) << ','
            << row.seed << ',' << opt(r.avg_delay) << ',' << format_double(r.throughput_Bps) << ','
            << format_double(r.throughput_pps) << ',' << format_double(r.query_efficiency) << ','
            << format_double(r.bandwidth_utilization) << ',' << r.counts.local_hits << ',' << r.counts.strong_hits
            << ',' << r.counts.server_fallbacks << ',' << r.counts.unserved << '\n';
    }
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in)
{
    expect_header(in, kMetricsHeader);
    std::vector<MetricsRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 13) throw std::runtime_error("metrics.csv: expected 13 columns, got " + std::to_string(f.size()));
        MetricsRow row;
        const auto s = parse_strategy(f[0]);
        if (!s) throw std::runtime_error("metrics.csv: unknown strategy '" + f[0] + "'");
        row.strategy = *s;
        row.param_name = f[1];
        row.param_value = num<double>(f[2], "param_value");
        row.seed = num<std::uint64_t>(f[3], "seed");
        row.report.avg_delay = opt_num<double>(f[4], "avg_delay_s");
        row.report.throughput_Bps = num<double>(f[5], "throughput_Bps");
        row.report.throughput_pps = num<double>(f[6], "throughput_pps");
        row.report.query_efficiency = num<double>(f[7], "query_efficiency");
        row.report.bandwidth_utilization = num<double>(f[8], "bw_utilization");
        row.report.counts.local_hits = num<std::uint64_t>(f[9], "local_hits");
        row.report.counts.strong_hits = num<std::uint64_t>(f[10], "strong_hits");
        row.report.counts.server_fallbacks = num<std::uint64_t>(f[11], "fallbacks");
        row.report.counts.unserved = num<std::uint64_t>(f[12], "unserved");
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_trace_csv(std::ostream& out, std::span<const TraceEvent> events)
{
    out << kTraceHeader << '\n';
    for (const auto& e : events) {
        out << format_double(e.time) << ',' << to_string(e.type) << ',' << opt(e.query) << ',' << opt(e.node) << ','
            << opt(e.peer) << ',' << opt(e.content) << ',' << (e.cls ? to_string(*e.cls) : std::string_view{}) << ','
            << opt(e.weight) << '\n';
    }
}

std::vector<TraceEvent> read_trace_csv(std::istream& in)
{
    expect_header(in, kTraceHeader);
    std::vector<TraceEvent> events;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 8) throw std::runtime_error("trace.csv: expected 8 columns, got " + std::to_string(f.size()));
        TraceEvent e;
        e.time = num<double>(f[0], "time");
        const auto type = parse_trace_type(f[1]);
        if (!type) throw std::runtime_error("trace.csv: unknown event '" + f[1] + "'");
        e.type = *type;
        e.query = opt_num<QueryId>(f[2], "query");
        e.node = opt_num<NodeId>(f[3], "node");
        e.peer = opt_num<NodeId>(f[4], "peer");
        e.content = opt_num<ContentId>(f[5], "content");
        if (!f[6].empty()) {
            if (f[6] == "class1") e.cls = ContentClass::Class1;
            else if (f[6] == "class2") e.cls = ContentClass::Class2;
            else if (f[6] == "unclassified") e.cls = ContentClass::Unclassified;
            else throw std::runtime_error("trace.csv: unknown class '" + f[6] + "'");
        }
        e.weight = opt_num<double>(f[7], "weight");
        events.push_back(e);
    }
    return events;
}

void export_csv(const std::filesystem::path& dir, std::span<const MetricsRow> rows, const std::vector<TraceEvent>* trace)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    {
        std::ofstream out(dir / "metrics.csv");
        if (!out) throw std::runtime_error("cannot write " + (dir / "metrics.csv").string());
        write_metrics_csv(out, rows);
        if (!out) throw std::runtime_error("write failed: " + (dir / "metrics.csv").string());
    }
    if (trace != nullptr) {
        std::ofstream out(dir / "trace.csv");
        if (!out) throw std::runtime_error("cannot write " + (dir / "trace.csv").string());
        write_trace_csv(out, *trace);
        if (!out) throw std::runtime_error("write failed: " + (dir / "trace.csv").string());
    }
}

}  // namespace qirm::metrics

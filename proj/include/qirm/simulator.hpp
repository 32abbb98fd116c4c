#pragma once

#include "qirm/metrics.hpp"
#include "qirm/model.hpp"
#include "qirm/placement.hpp"
#include "qirm/trace.hpp"

#include <string>
#include <vector>

namespace qirm {

struct RunResult {
    ScenarioConfig config;
    std::vector<Query> queries;
    std::vector<TraceEvent> trace;  // empty unless requested
    MetricsReport report;
    RunStats stats;
    std::vector<std::string> warnings;
};

struct RunOptions {
    bool keep_trace = false;
};

// Generates the workload from config.seed, clusters the nodes, places
// replicas at the warm-up epoch and drives every query through the
// configured strategy. Queries still in flight duration + drain_horizon
// seconds in are counted unserved. Throws std::invalid_argument on an
// invalid config.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace qirm

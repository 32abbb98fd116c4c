#pragma once

#include "qirm/metrics.hpp"
#include "qirm/workload.hpp"

#include <vector>

namespace qirm::experiment {

struct GridCell {
    ScenarioConfig config;
    std::string param_name;
    double param_value = 0.0;
};

// values x strategies x seeds, in that nesting order. With the repeated
// seed policy every (value, strategy) cell uses seeds base, base+1, ...;
// the independent policy gives each value its own seed block.
std::vector<GridCell> build_grid(const ScenarioConfig& base, workload::SweepParam param,
                                 const std::vector<double>& values, const std::vector<Strategy>& strategies,
                                 std::uint32_t seeds, workload::SeedPolicy policy = workload::SeedPolicy::Repeated);

// Runs every cell; rows come back in grid order regardless of `workers`.
std::vector<metrics::MetricsRow> run_grid(const std::vector<GridCell>& cells, unsigned workers = 1);

}  // namespace qirm::experiment

#pragma once

#include "qirm/model.hpp"
#include "qirm/simnet.hpp"

#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qirm::workload {

using Rng = std::mt19937_64;

struct Population {
    std::vector<NodeSpec> nodes;
    std::vector<simnet::LinkSpec> links;
};

// Uniform draws of bw, sp, mz, al per node. Download capacity is bw, upload
// is bw * uplink_ratio, access delay is al. Node i originates content i.
// Weights and clusters are left for the clustering pass.
Population generate_nodes(const ScenarioConfig& config, Rng& rng);

// One item per node; sizes uniform in [content_size_min, content_size_max].
std::vector<ContentItem> generate_catalog(const ScenarioConfig& config, Rng& rng);

// Poisson arrivals at query_rate over [0, duration); requester uniform;
// keyword Zipf(zipf_s) with content 0 the most popular.
std::vector<Query> generate_queries(const ScenarioConfig& config, Rng& rng);

enum class SweepParam { ContentSize, QueryRate };

// "load"/"content_size" or "rate"/"query_rate"; throws std::domain_error.
SweepParam parse_sweep_param(std::string_view name);
std::string_view sweep_param_name(SweepParam param);

// Parses "2", "2.5mb", "750kb", "1mb". Load values normalize to MB and rate
// values to Kb/s.
double parse_sweep_value(SweepParam param, std::string_view text);

// Offered query traffic (Kb/s, all clients together) converted to a query
// rate (queries/s) using the configured mean content size.
double offered_rate_to_query_rate(const ScenarioConfig& config, double kbps);

enum class SeedPolicy {
    Independent,  // seed = base seed + point index
    Repeated,     // every point reuses the base seed (paired comparison)
};

struct SweepPoint {
    ScenarioConfig config;
    SweepParam param;
    double value;  // MB for load, Kb/s for rate
};

std::vector<SweepPoint> sweep(const ScenarioConfig& base, SweepParam param, const std::vector<double>& values,
                              SeedPolicy policy = SeedPolicy::Independent);

}  // namespace qirm::workload

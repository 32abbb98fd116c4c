#include "qirm/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qirm::workload {

namespace {

double draw(Rng& rng, double lo, double hi)
{
    if (!(lo > 0.0 && lo <= hi)) throw std::domain_error("generate_nodes: invalid parameter range");
    if (lo == hi) return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

Population generate_nodes(const ScenarioConfig& config, Rng& rng)
{
    if (config.n_nodes < 2) throw std::domain_error("generate_nodes: n_nodes must be >= 2");
    if (!(config.uplink_ratio > 0.0)) throw std::domain_error("generate_nodes: uplink_ratio must be positive");
    Population pop;
    pop.nodes.reserve(config.n_nodes);
    pop.links.reserve(config.n_nodes);
    for (NodeId id = 0; id < config.n_nodes; ++id) {
        NodeSpec n;
        n.id = id;
        n.bw = draw(rng, config.bw_min, config.bw_max);
        n.sp = draw(rng, config.sp_min, config.sp_max);
        n.mz = draw(rng, config.mz_min, config.mz_max);
        n.al = draw(rng, config.al_min, config.al_max);
        n.cache = ReplicaCache(config.k_cache_slots);
        n.owned_content = id;
        pop.links.push_back({id, n.bw * config.uplink_ratio, n.bw, n.al});
        pop.nodes.push_back(std::move(n));
    }
    return pop;
}

std::vector<ContentItem> generate_catalog(const ScenarioConfig& config, Rng& rng)
{
    std::vector<ContentItem> catalog;
    catalog.reserve(config.catalog_size);
    for (ContentId id = 0; id < config.catalog_size; ++id) {
        ContentItem item;
        item.id = id;
        item.ckwd = keyword_for(id);
        item.size = draw(rng, config.content_size_min, config.content_size_max);
        item.origin = id % config.n_nodes;
        catalog.push_back(std::move(item));
    }
    return catalog;
}

std::vector<Query> generate_queries(const ScenarioConfig& config, Rng& rng)
{
    if (!(config.query_rate > 0.0 && config.duration > 0.0)) {
        throw std::domain_error("generate_queries: query_rate and duration must be positive");
    }
    std::vector<double> popularity(config.catalog_size);
    for (std::size_t i = 0; i < popularity.size(); ++i) {
        popularity[i] = std::pow(static_cast<double>(i + 1), -config.zipf_s);
    }
    std::discrete_distribution<ContentId> keyword(popularity.begin(), popularity.end());
    std::exponential_distribution<double> gap(config.query_rate);
    std::uniform_int_distribution<NodeId> requester(0, config.n_nodes - 1);

    std::vector<Query> out;
    out.reserve(static_cast<std::size_t>(config.query_rate * config.duration * 1.1) + 16);
    SimTime t = 0.0;
    for (QueryId qid = 0;; ++qid) {
        t += gap(rng);
        if (t >= config.duration) break;
        Query q;
        q.qid = qid;
        q.issued_at = t;
        q.nid = requester(rng);
        q.ckwd = keyword_for(keyword(rng));
        out.push_back(std::move(q));
    }
    return out;
}

SweepParam parse_sweep_param(std::string_view name)
{
    if (name == "load" || name == "content_size") return SweepParam::ContentSize;
    if (name == "rate" || name == "query_rate") return SweepParam::QueryRate;
    throw std::domain_error("unknown sweep parameter '" + std::string(name) + "'");
}

std::string_view sweep_param_name(SweepParam param)
{
    return param == SweepParam::ContentSize ? "load" : "rate";
}

double parse_sweep_value(SweepParam param, std::string_view text)
{
    std::string lower;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) lower.push_back(static_cast<char>(std::tolower(c)));
    }
    // Multiplier into the canonical unit: MB for load, Kb/s for rate.
    double scale = 1.0;
    auto strip = [&lower](std::string_view suffix) {
        if (lower.size() > suffix.size() && lower.ends_with(suffix)) {
            lower.resize(lower.size() - suffix.size());
            return true;
        }
        return false;
    };
    if (strip("mb/s") || strip("mbps") || strip("mb")) {
        scale = param == SweepParam::ContentSize ? 1.0 : 1000.0;
    } else if (strip("kb/s") || strip("kbps") || strip("kb")) {
        scale = param == SweepParam::ContentSize ? 1.0 / 1000.0 : 1.0;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(lower.data(), lower.data() + lower.size(), value);
    if (ec != std::errc{} || ptr != lower.data() + lower.size() || !(value > 0.0)) {
        throw std::domain_error("bad sweep value '" + std::string(text) + "'");
    }
    return value * scale;
}

double offered_rate_to_query_rate(const ScenarioConfig& config, double kbps)
{
    const double mean_size_kb = 0.5 * (config.content_size_min + config.content_size_max) * 8000.0;
    return kbps / mean_size_kb;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& base, SweepParam param, const std::vector<double>& values,
                              SeedPolicy policy)
{
    if (values.empty()) throw std::domain_error("sweep: no values");
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepPoint p{base, param, values[i]};
        if (param == SweepParam::ContentSize) {
            p.config.content_size_min = values[i];
            p.config.content_size_max = values[i];
        } else {
            p.config.query_rate = offered_rate_to_query_rate(base, values[i]);
        }
        if (policy == SeedPolicy::Independent) p.config.seed = base.seed + i;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace qirm::workload

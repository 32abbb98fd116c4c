#include "qirm/simulator.hpp"

#include "qirm/clustering.hpp"
#include "qirm/search.hpp"
#include "qirm/workload.hpp"

#include <stdexcept>

namespace qirm {

namespace {

void install(search::Overlay& ov, const placement::PlacementPlan& plan, RunStats& stats)
{
    const SimTime now = ov.engine.now();
    const auto events = placement::apply_plan(plan, ov.nodes, ov.catalog, ov.directory, &ov.network, now);
    for (const auto& e : events) {
        ov.trace.add({e.time, e.kind == placement::PlacementEventKind::Place ? TraceType::Place : TraceType::Evict, {},
                      e.node, ov.catalog[e.content].origin, e.content, e.cls, e.weight});
    }
    for (const auto& msg : placement::broadcast_placement(plan, ov.nodes)) {
        for (const auto& n : ov.nodes) {
            if (n.id != msg.nid) ov.network.send_control(msg.nid, n.id, now);
        }
        ov.broadcasts.push_back(msg);
    }
    stats.replicas_placed += plan.replica_count();
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options)
{
    if (const auto problems = validate(config); !problems.empty()) {
        std::string msg = "invalid scenario config:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw std::invalid_argument(msg);
    }

    workload::Rng rng(config.seed);
    auto population = workload::generate_nodes(config, rng);
    auto catalog = workload::generate_catalog(config, rng);

    RunResult result;
    result.config = config;
    result.queries = workload::generate_queries(config, rng);

    clustering::cluster_nodes(population.nodes, config.normalize_weights, config.beta);
    search::Overlay ov(config, std::move(population.nodes), std::move(population.links), std::move(catalog),
                       options.keep_trace);
    // Strategy-side randomness continues from the workload stream.
    ov.engine.rng() = rng;
    result.stats.strong_initial = ov.strong.size();

    placement::AccessCounter counter(ov.catalog.size());
    const SimTime epoch = config.warmup_fraction * config.duration;

    ov.engine.schedule(epoch, simnet::EventKind::PlacementEpoch, [&] {
        placement::PlacementPlan plan;
        if (config.strategy == Strategy::Qirm) {
            const auto classes = placement::classify(counter, config.a_min);
            clustering::Partition clusters;
            for (const auto& n : ov.nodes) (ov.is_strong(n.id) ? clusters.strong : clusters.weak).push_back(n.id);
            plan = placement::build_plan(classes, clusters, ov.nodes, ov.catalog, counter, config.a_min,
                                         ov.engine.now());
            for (const auto& [c, cls] : plan.classes) ov.catalog[c].cls = cls;
        } else {
            plan = placement::baseline_place(config.strategy, ov.catalog, ov.nodes, ov.engine.rng());
        }
        result.warnings.insert(result.warnings.end(), plan.warnings.begin(), plan.warnings.end());
        install(ov, plan, result.stats);
    });

    for (auto& q : result.queries) {
        ov.engine.schedule(q.issued_at, simnet::EventKind::QueryArrival, [&ov, &q, &counter, epoch] {
            if (q.issued_at < epoch) counter.register_query(q);
            search::resolve(ov, q);
        });
    }

    ov.engine.run_until(config.duration + config.drain_horizon);

    for (auto& q : result.queries) {
        if (q.resolution.kind == ResolutionKind::Pending) q.resolution = {ResolutionKind::Unserved, std::nullopt};
    }

    result.report = metrics::finalize(result.queries, ov.catalog, ov.network, config);
    result.stats.events = ov.engine.dispatched();
    result.stats.promotions = ov.promotions;
    result.stats.strong_final = ov.strong.size();
    result.stats.oversubscribed_cells = ov.network.ledger().oversubscribed_cells(ov.network.links());
    if (result.stats.oversubscribed_cells > 0) {
        result.warnings.push_back(std::to_string(result.stats.oversubscribed_cells) +
                                  " link-interval cells oversubscribed (utilization clamped)");
    }
    result.trace = ov.trace.events();
    return result;
}

}  // namespace qirm

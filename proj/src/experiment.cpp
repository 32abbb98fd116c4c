#include "qirm/experiment.hpp"

#include "qirm/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qirm::experiment {

std::vector<GridCell> build_grid(const ScenarioConfig& base, workload::SweepParam param,
                                 const std::vector<double>& values, const std::vector<Strategy>& strategies,
                                 std::uint32_t seeds, workload::SeedPolicy policy)
{
    if (strategies.empty()) throw std::domain_error("build_grid: no strategies");
    if (seeds == 0) throw std::domain_error("build_grid: seeds must be >= 1");
    const auto points = workload::sweep(base, param, values, workload::SeedPolicy::Repeated);
    std::vector<GridCell> cells;
    cells.reserve(points.size() * strategies.size() * seeds);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (Strategy s : strategies) {
            for (std::uint32_t j = 0; j < seeds; ++j) {
                GridCell cell{points[i].config, std::string(workload::sweep_param_name(param)), points[i].value};
                cell.config.strategy = s;
                cell.config.seed = policy == workload::SeedPolicy::Repeated ? base.seed + j
                                                                           : base.seed + i * seeds + j;
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

std::vector<metrics::MetricsRow> run_grid(const std::vector<GridCell>& cells, unsigned workers)
{
    std::vector<metrics::MetricsRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                const auto& cell = cells[i];
                const auto result = run_scenario(cell.config);
                rows[i] = {cell.config.strategy, cell.param_name, cell.param_value, cell.config.seed, result.report};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cells.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace qirm::experiment

#include "qirm/config.hpp"
#include "qirm/experiment.hpp"
#include "qirm/metrics.hpp"
#include "qirm/simulator.hpp"
#include "qirm/workload.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace qirm;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --seed beats QIRM_SEED, which beats the seed in the config file.
ScenarioConfig load_scenario(const std::string& path, const std::optional<std::uint64_t>& seed_flag)
{
    ScenarioConfig config = path.empty() ? ScenarioConfig{} : load_config(path);
    if (seed_flag) {
        config.seed = *seed_flag;
    } else if (const char* env = std::getenv("QIRM_SEED"); env != nullptr && *env != '\0') {
        std::uint64_t seed = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw UsageError("QIRM_SEED is not an unsigned integer: '" + std::string(text) + "'");
        }
        config.seed = seed;
    }
    return config;
}

void print_report(const RunResult& r)
{
    const auto& m = r.report;
    std::cout << "strategy          " << to_string(r.config.strategy) << "\n"
              << "seed              " << r.config.seed << "\n"
              << "queries           " << r.queries.size() << "\n"
              << "avg_delay_s       " << (m.avg_delay ? format_double(*m.avg_delay) : "n/a") << "\n"
              << "throughput_Bps    " << format_double(m.throughput_Bps) << "\n"
              << "throughput_pps    " << format_double(m.throughput_pps) << "\n"
              << "query_efficiency  " << format_double(m.query_efficiency) << "\n"
              << "bw_utilization    " << format_double(m.bandwidth_utilization) << "\n"
              << "local/strong/fallback/unserved  " << m.counts.local_hits << "/" << m.counts.strong_hits << "/"
              << m.counts.server_fallbacks << "/" << m.counts.unserved << "\n"
              << "strong nodes      " << r.stats.strong_initial << " -> " << r.stats.strong_final << " ("
              << r.stats.promotions << " promotions)\n";
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

int single_run(const ScenarioConfig& config, const std::string& out, bool trace)
{
    const auto result = run_scenario(config, {.keep_trace = trace});
    const metrics::MetricsRow row{config.strategy, "none", 0.0, config.seed, result.report};
    metrics::export_csv(out, std::span(&row, 1), trace ? &result.trace : nullptr);
    print_report(result);
    std::cout << "wrote " << out << "/metrics.csv" << (trace ? " and trace.csv" : "") << "\n";
    return 0;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Replica placement and search simulator for unstructured P2P overlays"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out = "out";

    auto* run = app.add_subcommand("run", "Run one scenario and write metrics.csv");
    run->add_option("--config", config_path, "Scenario file (key = value); built-in defaults if omitted");
    run->add_option("--seed", seed, "Seed override (default: QIRM_SEED, then the config's seed)");
    run->add_option("--out", out, "Output directory")->capture_default_str();

    std::string param;
    std::string values;
    std::string strategies = "qirm,random_flood";
    std::uint32_t seeds = 5;
    std::string seed_policy = "repeated";
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and write one metrics.csv row per run");
    sweep->add_option("--config", config_path, "Base scenario file; built-in defaults if omitted");
    sweep->add_option("--param", param, "Swept parameter: load (content size, MB) or rate (offered Kb/s)")
        ->required()
        ->check(CLI::IsMember({"load", "rate"}));
    sweep->add_option("--values", values, "Comma-separated values, unit suffixes mb/kb accepted (e.g. 2,3,4,5)")
        ->required();
    sweep->add_option("--strategies", strategies, "Comma-separated: qirm, random_flood, origin_only")
        ->capture_default_str();
    sweep->add_option("--seeds", seeds, "Seeds per (value, strategy) cell")->capture_default_str()->check(
        CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "Base seed (default: QIRM_SEED, then the config's seed)");
    sweep->add_option("--seed-policy", seed_policy,
                      "repeated: every value reuses seeds base..base+N-1; independent: fresh seeds per value")
        ->capture_default_str()
        ->check(CLI::IsMember({"repeated", "independent"}));
    sweep->add_option("--workers", workers, "Parallel scenario runs (output order is unaffected)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", out, "Output directory")->capture_default_str();

    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file and list every violation");
    validate_cmd->add_option("--config", config_path, "Scenario file; built-in defaults if omitted");

    auto* trace = app.add_subcommand("trace", "Run one scenario and write metrics.csv plus the event trace.csv");
    trace->add_option("--config", config_path, "Scenario file; built-in defaults if omitted");
    trace->add_option("--seed", seed, "Seed override (default: QIRM_SEED, then the config's seed)");
    trace->add_option("--out", out, "Output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) {
            const auto config = load_scenario(config_path, std::nullopt);
            const auto problems = qirm::validate(config);
            for (const auto& p : problems) std::cerr << "violation: " << p << "\n";
            if (!problems.empty()) return 2;
            std::cout << "ok\n";
            return 0;
        }
        if (*run || *trace) {
            const auto config = load_scenario(config_path, seed);
            if (const auto problems = qirm::validate(config); !problems.empty()) {
                for (const auto& p : problems) std::cerr << "violation: " << p << "\n";
                return 2;
            }
            return single_run(config, out, static_cast<bool>(*trace));
        }

        const auto base = load_scenario(config_path, seed);
        if (const auto problems = qirm::validate(base); !problems.empty()) {
            for (const auto& p : problems) std::cerr << "violation: " << p << "\n";
            return 2;
        }
        const auto sweep_param = workload::parse_sweep_param(param);
        std::vector<double> parsed;
        for (const auto& v : split_list(values)) parsed.push_back(workload::parse_sweep_value(sweep_param, v));
        std::vector<Strategy> chosen;
        for (const auto& s : split_list(strategies)) {
            const auto strategy = parse_strategy(s);
            if (!strategy) throw UsageError("unknown strategy '" + s + "' (expected qirm, random_flood, origin_only)");
            chosen.push_back(*strategy);
        }
        const auto policy =
            seed_policy == "repeated" ? workload::SeedPolicy::Repeated : workload::SeedPolicy::Independent;
        const auto cells = experiment::build_grid(base, sweep_param, parsed, chosen, seeds, policy);
        const auto rows = experiment::run_grid(cells, workers);
        metrics::export_csv(out, rows);
        std::cout << "wrote " << rows.size() << " rows to " << out << "/metrics.csv\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

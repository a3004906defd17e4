#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "btcsim/acceptance.hpp"
#include "btcsim/config.hpp"
#include "btcsim/csv.hpp"
#include "btcsim/engine.hpp"
#include "btcsim/stylized.hpp"

namespace {

using btcsim::ConfigError;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) throw ConfigError("config: seeds: empty element in '" + text + "'");
        try {
            const auto range = token.find("..");
            if (range != std::string::npos) {
                const std::uint64_t lo = std::stoull(token.substr(0, range));
                const std::uint64_t hi = std::stoull(token.substr(range + 2));
                if (hi < lo) throw ConfigError("config: seeds: empty range '" + token + "'");
                for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
            } else {
                seeds.push_back(std::stoull(token));
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config: seeds: cannot parse '" + token + "'");
        }
    }
    if (seeds.empty()) throw ConfigError("config: seeds: no seeds in '" + text + "'");
    return seeds;
}

//! Options shared by `run` and `verify`; merge order is defaults <- file <- flags.
struct CommonFlags {
    std::string config_path;
    std::string scenario;
    std::string seeds;
    std::string out_dir;
    int runs = 0;
    double gamma1_mean = 0.0;
    unsigned jobs = 0;

    CLI::Option* scenario_opt = nullptr;
    CLI::Option* seeds_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* runs_opt = nullptr;
    CLI::Option* gamma1_opt = nullptr;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", config_path, "JSON config file; flags override it");
        scenario_opt = cmd.add_option("--scenario", scenario, "base or gox");
        seeds_opt = cmd.add_option("--seeds", seeds, "comma list and/or a..b ranges");
        runs_opt = cmd.add_option("--runs", runs, "seed count when --seeds is absent");
        out_opt = cmd.add_option("--out", out_dir, "output directory");
        gamma1_opt =
            cmd.add_option("--gamma1-mean", gamma1_mean, "miner hardware-spend propensity");
        cmd.add_option("--jobs", jobs, "parallel runs (0 = auto)");
    }

    btcsim::RunConfig merge() const {
        btcsim::RunConfig cfg;
        if (!config_path.empty()) cfg = btcsim::load_config_file(config_path, cfg);
        if (scenario_opt->count()) cfg.scenario = btcsim::scenario_from_string(scenario);
        if (seeds_opt->count()) cfg.seeds = parse_seed_list(seeds);
        if (runs_opt->count()) cfg.runs = runs;
        if (out_opt->count()) cfg.output_dir = out_dir;
        if (gamma1_opt->count()) cfg.calibration.gamma1_mean = gamma1_mean;
        cfg.validate();
        return cfg;
    }
};

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

int do_run(const CommonFlags& flags, bool emit_trades, const std::string& real_csv) {
    btcsim::RunConfig cfg = flags.merge();
    cfg.emit_trades = emit_trades || cfg.emit_trades;
    if (!real_csv.empty()) cfg.real_price_csv = real_csv;

    std::filesystem::create_directories(cfg.output_dir);
    write_text_file(std::filesystem::path(cfg.output_dir) / "effective_config.json",
                    btcsim::config_to_json(cfg));

    btcsim::MonteCarloOptions options;
    options.write_files = true;
    options.output_dir = cfg.output_dir;
    options.jobs = flags.jobs;
    const btcsim::MonteCarloResult result = btcsim::monte_carlo(cfg, options);

    for (const auto& run : result.runs) {
        long trades = 0;
        for (const auto& rec : run.records) trades += rec.trade_count;
        std::cout << "seed " << run.seed << ": final price $" << run.records.back().close
                  << ", " << trades << " trades, " << run.final_trader_count
                  << " traders, ledgers " << (run.audit.clean() ? "clean" : "DIRTY") << "\n";
    }
    std::cout << "wrote " << result.runs.size() << " run CSVs and ensemble.csv to "
              << cfg.output_dir << "\n";
    return 0;
}

nlohmann::ordered_json series_stats_json(const std::vector<double>& closes) {
    const auto returns = btcsim::log_returns(closes);
    std::vector<double> abs_returns(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) abs_returns[i] = std::abs(returns[i]);
    std::vector<double> logp(closes.size());
    for (std::size_t i = 0; i < closes.size(); ++i) logp[i] = std::log(closes[i]);

    const auto acf_raw = btcsim::acf(returns, 10);
    const auto acf_abs = btcsim::acf(abs_returns, 10);
    double mean_abs = 0.0, mean_raw = 0.0;
    for (double v : acf_abs) mean_abs += v;
    for (double v : acf_raw) mean_raw += std::abs(v);
    mean_abs /= static_cast<double>(acf_abs.size());
    mean_raw /= static_cast<double>(acf_raw.size());

    nlohmann::ordered_json j;
    j["n_closes"] = closes.size();
    j["n_returns"] = returns.size();
    j["excess_kurtosis"] = btcsim::excess_kurtosis(returns);
    j["adf_statistic"] = btcsim::adf_statistic(logp, 1);
    j["acf_returns"] = acf_raw;
    j["acf_abs_returns"] = acf_abs;
    j["mean_acf_abs_returns"] = mean_abs;
    j["mean_abs_acf_returns"] = mean_raw;
    j["noise_band"] = 2.0 / std::sqrt(static_cast<double>(returns.size()));
    return j;
}

std::string stats_label(const std::string& input) {
    std::string stem = std::filesystem::path(input).stem().string();
    std::string digits;
    for (char c : stem)
        if (c >= '0' && c <= '9') digits += c;
    return digits.empty() ? stem : digits;
}

int do_stats(const std::vector<std::string>& inputs, const std::string& out_dir,
             const std::string& real_csv) {
    if (inputs.empty()) throw ConfigError("config: stats needs at least one --input file");
    std::vector<double> real_closes;
    if (!real_csv.empty()) real_closes = btcsim::read_price_series(real_csv);

    for (const auto& input : inputs) {
        const std::vector<double> closes = btcsim::read_csv_column(input, "close");
        nlohmann::ordered_json j;
        j["input"] = input;
        j["simulated"] = series_stats_json(closes);
        if (!real_closes.empty()) {
            j["real"] = series_stats_json(real_closes);
            const std::size_t n = std::min(closes.size(), real_closes.size());
            const std::vector<double> a(closes.begin(), closes.begin() + n);
            const std::vector<double> b(real_closes.begin(), real_closes.begin() + n);
            j["real"]["level_correlation"] = btcsim::pearson(a, b);
            j["real"]["overlap"] = n;
        }
        const auto path =
            std::filesystem::path(out_dir) / ("stats_" + stats_label(input) + ".json");
        write_text_file(path, j.dump(2) + "\n");
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int do_verify(const CommonFlags& flags) {
    btcsim::RunConfig cfg = flags.merge();
    const std::string out_dir = cfg.output_dir == "out" ? "acceptance_out" : cfg.output_dir;
    const btcsim::AcceptanceReport report = btcsim::run_acceptance(cfg, std::cout);
    const std::string verdict_path =
        (std::filesystem::path(out_dir) / "verdict.json").string();
    btcsim::write_verdict(verdict_path, report);
    std::cout << "verdict: " << (report.all_passed() ? "PASS" : "FAIL") << " (" << verdict_path
              << ")\n";
    return report.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based simulator of a crypto exchange and its mining economy"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "simulate and write run/ensemble CSVs");
    CommonFlags run_flags;
    run_flags.attach(*run_cmd);
    bool emit_trades = false;
    std::string run_real_csv;
    run_cmd->add_flag("--emit-trades", emit_trades, "also write trades_<seed>.csv");
    run_cmd->add_option("--real-price-csv", run_real_csv, "recorded for stats tooling");

    auto* stats_cmd = app.add_subcommand("stats", "analyze existing run CSVs");
    std::vector<std::string> stats_inputs;
    std::string stats_out = ".";
    std::string stats_real_csv;
    stats_cmd->add_option("--input", stats_inputs, "run CSV(s) to analyze")->required();
    stats_cmd->add_option("--out", stats_out, "directory for stats_<seed>.json");
    stats_cmd->add_option("--real-price-csv", stats_real_csv,
                          "reference price CSV to compare against");

    auto* verify_cmd = app.add_subcommand("verify", "run the full verification battery");
    CommonFlags verify_flags;
    verify_flags.attach(*verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_flags, emit_trades, run_real_csv);
        if (stats_cmd->parsed()) return do_stats(stats_inputs, stats_out, stats_real_csv);
        if (verify_cmd->parsed()) return do_verify(verify_flags);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bbwalk/experiments.hpp"

namespace {

// BBWALK_CAP caps every state-space enumeration; oversized instances fail
// fast with a clear error instead of thrashing.
std::uint64_t env_cap(std::uint64_t fallback) {
    if (const char* raw = std::getenv("BBWALK_CAP")) {
        try {
            return std::stoull(raw);
        } catch (const std::exception&) {
            throw CLI::ValidationError("BBWALK_CAP", "not an unsigned integer: " +
                                                         std::string(raw));
        }
    }
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bbwalk: classical laboratory for walk-based group commutativity testing"};
    app.require_subcommand(1);

    // run
    std::string config_path;
    std::vector<std::string> overrides;
    int run_jobs = 0;
    std::string out_path;
    auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
    run->add_option("config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--set", overrides, "Override a config key, e.g. --set params.trials=500");
    run->add_option("--jobs", run_jobs, "Worker threads for row-parallel experiments");
    run->add_option("-o,--output", out_path, "Write the JSON report here instead of stdout");

    // list
    auto* list = app.add_subcommand("list", "List registered experiments");

    // verify-all
    std::string verify_dir = "reports";
    std::uint64_t verify_seed = 20240901;
    int verify_jobs = 1;
    auto* verify = app.add_subcommand(
        "verify-all", "Run every experiment with default parameters; exit 0 iff all bounds hold");
    verify->add_option("--output-dir", verify_dir, "Directory for per-experiment reports");
    verify->add_option("--seed", verify_seed, "Base seed shared by all experiments");
    verify->add_option("--jobs", verify_jobs, "Worker threads for row-parallel experiments");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto cfg = bbwalk::ExperimentConfig::from_json_file(config_path);
            for (const auto& kv : overrides) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw CLI::ValidationError("--set", "expected key=value, got: " + kv);
                cfg.apply_override(kv.substr(0, eq), kv.substr(eq + 1));
            }
            if (run_jobs > 0) cfg.jobs = run_jobs;
            cfg.cap = env_cap(cfg.cap);
            bbwalk::Report rep = bbwalk::run_experiment(cfg);
            const std::string text = rep.to_json();
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path);
                if (!out) throw std::runtime_error("cannot write " + out_path);
                out << text;
            }
            return rep.all_pass ? 0 : 1;
        }
        if (list->parsed()) {
            for (const auto& info : bbwalk::list_experiments())
                std::cout << info.name << "\t" << info.description << "\n";
            return 0;
        }
        if (verify->parsed()) {
            const std::uint64_t cap = env_cap(bbwalk::kDefaultChainCap);
            const bool ok = bbwalk::verify_all(verify_dir, verify_seed, verify_jobs, cap);
            std::cout << (ok ? "all bounds hold" : "bound violations found") << "\n";
            return ok ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}

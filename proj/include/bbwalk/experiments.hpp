#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "bbwalk/common.hpp"

namespace bbwalk {

// One experiment run, fully determined by (experiment, params): identical
// config and seed give byte-identical reports apart from meta.generated_at.
struct ExperimentConfig {
    std::string experiment;
    nlohmann::json params = nlohmann::json::object();
    int jobs = 1;
    std::uint64_t cap = kDefaultChainCap;

    static ExperimentConfig from_json_file(const std::string& path);
    void apply_override(const std::string& dotted_key, const std::string& value);
};

struct Report {
    std::string experiment;
    nlohmann::json config;
    std::vector<nlohmann::json> rows;
    nlohmann::json summary;
    bool all_pass = false;
    std::vector<std::string> csv_header;

    std::string to_json(bool with_timestamp = true) const;
    std::string to_csv() const;
};

struct ExperimentInfo {
    std::string name;
    std::string description;
};

// Registered experiments, stable identifiers usable in config files.
std::vector<ExperimentInfo> list_experiments();

Report run_experiment(const ExperimentConfig& config);

// Runs every registered experiment with default parameters, writing
// <name>.json and <name>.csv under output_dir. Returns true iff every
// declared bound passed.
bool verify_all(const std::string& output_dir, std::uint64_t seed, int jobs,
                std::uint64_t cap, std::vector<Report>* reports_out = nullptr);

}  // namespace bbwalk

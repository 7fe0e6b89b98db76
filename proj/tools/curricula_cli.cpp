// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

// Command line front end: run experiments, export synthetic data and folds.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "curricula/data.hpp"
#include "curricula/error.hpp"
#include "curricula/harness.hpp"

namespace {

std::filesystem::path resolve_output_dir(const std::string& flag,
                                         const curricula::ExperimentConfig& config) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("CURRICULA_OUT"); env && *env) return env;
    if (config.output_dir) return *config.output_dir;
    return "results";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Task-space curriculum training with per-epoch loss scheduling"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 0;

    auto* run = app.add_subcommand("run", "Train every arm on every fold and write the report");
    run->add_option("--config", config_path, "Experiment config (YAML)")->required();
    run->add_option("--out", out, "Output directory (overrides CURRICULA_OUT)");
    run->add_option("--seed", seed, "Master seed override");
    run->add_option("--threads", threads, "Worker threads (0 = OpenMP default)");

    auto* gen = app.add_subcommand("gen-data", "Write the configured dataset as CSV");
    gen->add_option("--config", config_path, "Experiment config (YAML)")->required();
    gen->add_option("--out", out, "Output CSV path")->required();
    gen->add_option("--seed", seed, "Master seed override");

    auto* folds = app.add_subcommand("folds", "Write id,fold_index,split for every partition");
    folds->add_option("--config", config_path, "Experiment config (YAML)")->required();
    folds->add_option("--out", out, "Output CSV path")->required();
    folds->add_option("--seed", seed, "Master seed override");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto config = curricula::parse_config(config_path, seed);

        if (*run) {
            const auto report = curricula::run_experiment(config, threads);
            const auto dir = resolve_output_dir(out, config);
            curricula::write_report(report, dir);
            std::cout << curricula::render_table(report);
            std::cout << "wrote " << dir.string() << "/{table.txt,per_fold.csv,means.csv,run_info.txt}\n";
        } else if (*gen) {
            curricula::write_csv(curricula::load_dataset(config), out);
        } else if (*folds) {
            const auto dataset = curricula::load_dataset(config);
            const auto parts = curricula::stratified_kfold(
                dataset, config.folds, config.val_fraction,
                curricula::derive_seed(config.master_seed, curricula::kAnyFold, "partition"));
            std::ofstream file(out);
            if (!file) throw curricula::IoError("cannot write " + out);
            curricula::write_partitions_csv(parts, file);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

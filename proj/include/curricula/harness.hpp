// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "curricula/data.hpp"
#include "curricula/metrics.hpp"
#include "curricula/model.hpp"
#include "curricula/scheduler.hpp"

namespace curricula {

/// Fold value used for seeds that do not depend on a fold.
inline constexpr std::uint64_t kAnyFold = ~std::uint64_t{0};

/// Child seed from (master seed, fold index, purpose tag): FNV-1a of the tag
/// combined with splitmix64-finalized master and fold values.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t fold, std::string_view tag);

struct ArmSpec {
    std::string name;
    SchedulerSpec schedule;
};

struct ExperimentConfig {
    std::variant<SynthConfig, std::filesystem::path> data = SynthConfig{};
    int folds = 5;
    double val_fraction = 0.2;
    TrainConfig train;
    std::vector<ArmSpec> arms;
    std::uint64_t master_seed = 0;
    std::optional<std::filesystem::path> output_dir;

    /// At least one arm, unique arm names, E == train.epochs for every arm.
    void validate() const;
};

/// Parses the YAML experiment config. Unknown keys, type mismatches and
/// inconsistent epoch counts raise ParseError. Relative CSV paths resolve
/// against the config file's directory. `seed_override` replaces the
/// file's master seed before any seed is derived from it.
ExperimentConfig parse_config(const std::filesystem::path& path,
                              std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig parse_config_text(std::string_view text,
                                   const std::filesystem::path& base_dir = {},
                                   std::optional<std::uint64_t> seed_override = std::nullopt);

/// Canonical YAML rendering with every default spelled out.
std::string config_to_yaml(const ExperimentConfig& config);

Dataset load_dataset(const ExperimentConfig& config);

struct FitResult {
    ModelParams params;           // best-validation parameters
    int best_epoch = -1;
    double best_val_balanced_accuracy = -1.0;
    std::vector<double> epoch_losses;
};

/// Trains for config.epochs epochs with lambda from `schedule`, starting from
/// init_params(seed = config.seed) and shuffling with
/// derive_seed(config.seed, kAnyFold, "shuffle"). Keeps the parameters with
/// the highest validation balanced accuracy (earliest epoch on ties).
FitResult fit(const Dataset& train_set, const Dataset& val_set, const SchedulerSpec& schedule,
              const TrainConfig& config);

struct ArmResult {
    ArmSpec arm;
    std::vector<MetricsReport> folds;
    std::vector<int> best_epochs;
    MetricsReport mean;
};

struct ExperimentReport {
    std::vector<ArmResult> arms;
    std::uint64_t partition_seed = 0;
    std::vector<std::uint64_t> fold_train_seeds;
    std::string config_echo;
};

/// Trains and evaluates every (arm, fold) pair. Pairs run concurrently over
/// OpenMP threads (`threads` <= 0 keeps the runtime default); the result is
/// identical to run_experiment_serial.
ExperimentReport run_experiment(const ExperimentConfig& config, int threads = 0);
ExperimentReport run_experiment_serial(const ExperimentConfig& config);

MetricsReport mean_metrics(const std::vector<MetricsReport>& folds);

/// Fixed-width table, one row per arm in config order, metric columns
/// accuracy / balanced accuracy / average AUC / binary accuracy / binary AUC
/// at 3 decimals with the column maximum marked by `*`.
std::string render_table(const ExperimentReport& report);

std::string per_fold_csv(const ExperimentReport& report);
std::string means_csv(const ExperimentReport& report);

/// Writes table.txt, per_fold.csv, means.csv and run_info.txt into `dir`.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace curricula

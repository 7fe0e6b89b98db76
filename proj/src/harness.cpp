// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include "curricula/harness.hpp"

#include <exception>
#include <stdexcept>
#include <string>

#include "curricula/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace curricula {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<FineLabel> labels_of(const Dataset& dataset) {
    std::vector<FineLabel> labels;
    labels.reserve(dataset.size());
    for (const Sample& s : dataset.samples()) labels.push_back(s.label);
    return labels;
}

struct FoldData {
    Dataset train;
    Dataset val;
    Dataset test;
    std::vector<FineLabel> test_labels;
    TrainConfig train_config;
};

struct Job {
    std::size_t arm;
    std::size_t fold;
};

struct JobResult {
    MetricsReport metrics;
    int best_epoch = -1;
    std::exception_ptr error;
};

struct Prepared {
    std::vector<FoldData> folds;
    ExperimentReport report;
};

Prepared prepare(const ExperimentConfig& config) {
    config.validate();
    const Dataset dataset = load_dataset(config);

    Prepared prepared;
    ExperimentReport& report = prepared.report;
    report.partition_seed = derive_seed(config.master_seed, kAnyFold, "partition");
    report.config_echo = config_to_yaml(config);

    const auto partitions =
        stratified_kfold(dataset, config.folds, config.val_fraction, report.partition_seed);
    for (const FoldPartition& part : partitions) {
        FoldData fold{dataset.subset(part.train_ids), dataset.subset(part.val_ids),
                      dataset.subset(part.test_ids), {}, config.train};
        fold.test_labels = labels_of(fold.test);
        fold.train_config.seed =
            derive_seed(config.master_seed, static_cast<std::uint64_t>(part.fold_index), "train");
        report.fold_train_seeds.push_back(fold.train_config.seed);
        prepared.folds.push_back(std::move(fold));
    }
    for (const ArmSpec& arm : config.arms) {
        ArmResult result;
        result.arm = arm;
        result.folds.resize(prepared.folds.size());
        result.best_epochs.resize(prepared.folds.size());
        report.arms.push_back(std::move(result));
    }
    return prepared;
}

JobResult run_job(const ArmSpec& arm, const FoldData& fold) {
    JobResult result;
    try {
        const FitResult fitted = fit(fold.train, fold.val, arm.schedule, fold.train_config);
        const auto probs = predict_proba_batch_serial(fitted.params, fold.test);
        result.metrics = evaluate(probs, fold.test_labels);
        result.best_epoch = fitted.best_epoch;
    } catch (...) {
        result.error = std::current_exception();
    }
    return result;
}

ExperimentReport collect(Prepared prepared, const std::vector<Job>& jobs,
                         std::vector<JobResult>& results) {
    ExperimentReport& report = prepared.report;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        ArmResult& arm = report.arms[job.arm];
        if (results[j].error) {
            const std::string context =
                "arm '" + arm.arm.name + "', fold " + std::to_string(job.fold) + ": ";
            try {
                std::rethrow_exception(results[j].error);
            } catch (const ValidationError& e) {
                throw ValidationError(context + e.what());
            } catch (const std::exception& e) {
                throw std::runtime_error(context + e.what());
            }
        }
        arm.folds[job.fold] = results[j].metrics;
        arm.best_epochs[job.fold] = results[j].best_epoch;
    }
    for (ArmResult& arm : report.arms) arm.mean = mean_metrics(arm.folds);
    return std::move(prepared.report);
}

std::vector<Job> make_jobs(const Prepared& prepared) {
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < prepared.report.arms.size(); ++a) {
        for (std::size_t f = 0; f < prepared.folds.size(); ++f) jobs.push_back({a, f});
    }
    return jobs;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t fold, std::string_view tag) {
    return splitmix64(splitmix64(master) ^ splitmix64(fold ^ 0x5bd1e995ULL) ^ fnv1a(tag));
}

Dataset load_dataset(const ExperimentConfig& config) {
    if (const auto* synth = std::get_if<SynthConfig>(&config.data)) {
        return generate_synthetic(*synth);
    }
    return load_csv(std::get<std::filesystem::path>(config.data));
}

FitResult fit(const Dataset& train_set, const Dataset& val_set, const SchedulerSpec& schedule,
              const TrainConfig& config) {
    config.validate();
    schedule.validate();
    if (schedule.total_epochs != config.epochs) {
        throw ValidationError("scheduler E = " + std::to_string(schedule.total_epochs) +
                              " does not match epochs = " + std::to_string(config.epochs));
    }
    if (train_set.empty()) throw ValidationError("fit: empty training set");

    const auto sizes = config.layer_sizes(train_set.feature_dim());
    ModelParams params = init_params(sizes, config.seed);
    std::mt19937_64 rng(derive_seed(config.seed, kAnyFold, "shuffle"));
    const auto val_labels = labels_of(val_set);

    FitResult result;
    result.params = params;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const double lambda = lambda_at(schedule, epoch);
        result.epoch_losses.push_back(train_epoch(params, train_set, lambda, config, rng));
        const auto probs = predict_proba_batch_serial(params, val_set);
        const double score = balanced_accuracy(probs, val_labels);
        if (score > result.best_val_balanced_accuracy) {
            result.best_val_balanced_accuracy = score;
            result.best_epoch = epoch;
            result.params = params;
        }
    }
    return result;
}

ExperimentReport run_experiment_serial(const ExperimentConfig& config) {
    Prepared prepared = prepare(config);
    const auto jobs = make_jobs(prepared);
    std::vector<JobResult> results(jobs.size());
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        results[j] = run_job(prepared.report.arms[jobs[j].arm].arm, prepared.folds[jobs[j].fold]);
    }
    return collect(std::move(prepared), jobs, results);
}

ExperimentReport run_experiment(const ExperimentConfig& config, int threads) {
    Prepared prepared = prepare(config);
    const auto jobs = make_jobs(prepared);
    std::vector<JobResult> results(jobs.size());
    const auto n_jobs = static_cast<std::ptrdiff_t>(jobs.size());
#ifdef _OPENMP
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(n_threads)
#endif
    for (std::ptrdiff_t j = 0; j < n_jobs; ++j) {
        const Job& job = jobs[static_cast<std::size_t>(j)];
        results[static_cast<std::size_t>(j)] =
            run_job(prepared.report.arms[job.arm].arm, prepared.folds[job.fold]);
    }
    (void)threads;
    return collect(std::move(prepared), jobs, results);
}

MetricsReport mean_metrics(const std::vector<MetricsReport>& folds) {
    MetricsReport mean;
    if (folds.empty()) return mean;
    for (const MetricsReport& m : folds) {
        mean.accuracy += m.accuracy;
        mean.balanced_accuracy += m.balanced_accuracy;
        mean.average_auc += m.average_auc;
        mean.binary_accuracy += m.binary_accuracy;
        mean.binary_auc += m.binary_auc;
        mean.n_samples += m.n_samples;
    }
    const auto n = static_cast<double>(folds.size());
    mean.accuracy /= n;
    mean.balanced_accuracy /= n;
    mean.average_auc /= n;
    mean.binary_accuracy /= n;
    mean.binary_auc /= n;
    return mean;
}

}  // namespace curricula

// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "curricula/loss.hpp"

namespace curricula {

struct Sample {
    std::vector<double> features;
    FineLabel label = FineLabel::false_recall;
    std::uint64_t id = 0;
};

/// Immutable collection of samples sharing one feature dimension with
/// unique ids.
class Dataset {
public:
    Dataset() = default;
    /// Throws ValidationError on empty input, ragged or non-finite features,
    /// or duplicate ids.
    explicit Dataset(std::vector<Sample> samples);

    std::span<const Sample> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    std::size_t feature_dim() const { return feature_dim_; }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }

    std::array<std::size_t, kNumClasses> class_counts() const;

    /// Row position of `id`. Throws OutOfRangeError for unknown ids.
    std::size_t row_of(std::uint64_t id) const;

    /// Samples with the given ids, in the given order.
    Dataset subset(std::span<const std::uint64_t> ids) const;

private:
    std::vector<Sample> samples_;
    std::size_t feature_dim_ = 0;
    std::unordered_map<std::uint64_t, std::size_t> rows_;
};

/// Synthetic three-blob geometry. Classes 1 and 2 sit on the first axis at
/// -/+ separation * overlap / 2 (overlap 0 makes their means coincide);
/// class 0 sits at `separation` along the second axis, so the coarse task
/// stays separable while the fine task gets harder as overlap shrinks.
/// Remaining dimensions carry noise only.
struct SynthConfig {
    std::array<int, kNumClasses> counts = {349, 653, 707};
    int feature_dim = 2;
    double separation = 4.0;
    double overlap = 0.5;
    double noise = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

Dataset generate_synthetic(const SynthConfig& config);

/// Reads `id,label,f1,...,fd` rows. A leading header row starting with `id`
/// is optional. Errors name the 1-based line.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::istream& in);

/// Writes the header and one row per sample with round-trip precision.
void write_csv(const Dataset& dataset, std::ostream& out);
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

struct FoldPartition {
    int fold_index = 0;
    std::vector<std::uint64_t> train_ids;
    std::vector<std::uint64_t> val_ids;
    std::vector<std::uint64_t> test_ids;
};

/// Stratified k-fold partitions. Each class is shuffled with the seeded
/// generator and dealt round-robin into k folds; partition i tests on fold i
/// and splits the remaining samples of each class into train / validation so
/// that every per-class count is within 1 of its exact proportional share.
std::vector<FoldPartition> stratified_kfold(const Dataset& dataset, int k,
                                            double val_fraction, std::uint64_t seed);

/// One line per (partition, sample): `id,fold_index,split`.
void write_partitions_csv(std::span<const FoldPartition> partitions, std::ostream& out);

}  // namespace curricula

// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "curricula/loss.hpp"

namespace curricula {

/// The five reported evaluation metrics for one set of predictions.
struct MetricsReport {
    double accuracy = 0.0;
    double balanced_accuracy = 0.0;
    double average_auc = 0.0;
    double binary_accuracy = 0.0;
    double binary_auc = 0.0;
    std::size_t n_samples = 0;
};

/// Argmax with ties broken to the lowest class index.
int predicted_class(const ProbabilityVector& p);

/// Binary-task decision: z = 0 only when p0 > 0.5 (the 0.5 tie predicts z = 1).
CoarseLabel predicted_coarse(const ProbabilityVector& p);

double accuracy(std::span<const ProbabilityVector> probs, std::span<const FineLabel> labels);

/// Unweighted mean of per-class recall. Every class must be present.
double balanced_accuracy(std::span<const ProbabilityVector> probs,
                         std::span<const FineLabel> labels);

/// Mann-Whitney AUC: P(s+ > s-) + P(s+ == s-) / 2, computed from midranks in
/// O(n log n). Exactly equal to the pairwise count.
double auc_binary(std::span<const double> scores, std::span<const int> targets);

/// Macro one-vs-rest AUC over the three classes using p[c] as the score.
double average_auc(std::span<const ProbabilityVector> probs, std::span<const FineLabel> labels);

/// (binary accuracy, binary AUC) of the grouped task, scoring z = 1 by 1 - p0.
std::pair<double, double> binary_task_metrics(std::span<const ProbabilityVector> probs,
                                              std::span<const FineLabel> labels);

MetricsReport evaluate(std::span<const ProbabilityVector> probs, std::span<const FineLabel> labels);

}  // namespace curricula

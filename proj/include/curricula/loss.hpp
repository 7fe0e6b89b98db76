// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace curricula {

inline constexpr int kNumClasses = 3;

/// Fine three-class label.
enum class FineLabel : std::uint8_t { false_recall = 0, negative = 1, malignant = 2 };

/// Coarse label of the grouped binary task: false recall vs. everything else.
enum class CoarseLabel : std::uint8_t { false_recall = 0, negative_or_malignant = 1 };

constexpr int index(FineLabel y) { return static_cast<int>(y); }
constexpr int index(CoarseLabel z) { return static_cast<int>(z); }

/// Returns the label for `value` in {0, 1, 2}, nullopt otherwise.
std::optional<FineLabel> fine_label_from_int(long long value);

/// Model output (p0, p1, p2). Expected to be a softmax output.
using ProbabilityVector = std::array<double, kNumClasses>;
using ScoreVector = std::array<double, kNumClasses>;

/// Probabilities are clamped to [kProbFloor, 1 - kProbFloor] inside logarithms.
inline constexpr double kProbFloor = 1e-12;

constexpr CoarseLabel coarsen(FineLabel y) {
    return y == FineLabel::false_recall ? CoarseLabel::false_recall
                                        : CoarseLabel::negative_or_malignant;
}

/// Numerically stable softmax (max-shifted).
ProbabilityVector softmax(const ScoreVector& scores);

/// -log p[y].
double hard_loss(const ProbabilityVector& p, FineLabel y);

/// Grouped binary cross-entropy: -log p0 for z = 0, -log(1 - p0) for z = 1.
double easy_loss(const ProbabilityVector& p, CoarseLabel z);

/// lambda * easy_loss(p, coarsen(y)) + (1 - lambda) * hard_loss(p, y).
/// At lambda == 0 and lambda == 1 the unused term is skipped, so the
/// endpoints reproduce hard_loss / easy_loss bit for bit.
double combined_loss(const ProbabilityVector& p, FineLabel y, double lambda);

/// Gradient of combined_loss(softmax(scores), y, lambda) w.r.t. scores.
ScoreVector combined_loss_grad(const ScoreVector& scores, FineLabel y, double lambda);

/// Same as combined_loss_grad, reusing an already computed p = softmax(scores).
ScoreVector combined_loss_grad_from_proba(const ProbabilityVector& p, FineLabel y,
                                          double lambda);

/// Throws ValidationError unless 0 <= lambda <= 1.
void validate_lambda(double lambda);

}  // namespace curricula

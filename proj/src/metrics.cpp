// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include "curricula/metrics.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "curricula/error.hpp"

namespace curricula {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw ValidationError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                              " vs " + std::to_string(b) + ")");
    }
    if (a == 0) throw ValidationError(std::string(what) + ": no samples");
}

void require_all_classes(std::span<const FineLabel> labels, const char* what) {
    std::array<bool, kNumClasses> seen{};
    for (FineLabel y : labels) seen[index(y)] = true;
    for (int c = 0; c < kNumClasses; ++c) {
        if (!seen[c]) {
            throw ValidationError(std::string(what) + ": class " + std::to_string(c) +
                                  " absent from labels");
        }
    }
}

}  // namespace

int predicted_class(const ProbabilityVector& p) {
    int best = 0;
    for (int c = 1; c < kNumClasses; ++c) {
        if (p[c] > p[best]) best = c;
    }
    return best;
}

CoarseLabel predicted_coarse(const ProbabilityVector& p) {
    return 1.0 - p[0] >= 0.5 ? CoarseLabel::negative_or_malignant : CoarseLabel::false_recall;
}

double accuracy(std::span<const ProbabilityVector> probs, std::span<const FineLabel> labels) {
    check_lengths(probs.size(), labels.size(), "accuracy");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (predicted_class(probs[i]) == index(labels[i])) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(probs.size());
}

double balanced_accuracy(std::span<const ProbabilityVector> probs,
                         std::span<const FineLabel> labels) {
    check_lengths(probs.size(), labels.size(), "balanced_accuracy");
    require_all_classes(labels, "balanced_accuracy");
    std::array<std::size_t, kNumClasses> hits{};
    std::array<std::size_t, kNumClasses> totals{};
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const int y = index(labels[i]);
        ++totals[y];
        if (predicted_class(probs[i]) == y) ++hits[y];
    }
    double sum = 0.0;
    for (int c = 0; c < kNumClasses; ++c) {
        sum += static_cast<double>(hits[c]) / static_cast<double>(totals[c]);
    }
    return sum / kNumClasses;
}

double auc_binary(std::span<const double> scores, std::span<const int> targets) {
    check_lengths(scores.size(), targets.size(), "auc_binary");
    const std::size_t n = scores.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Twice the midrank sum of positives keeps everything in integers:
    // a tie group occupying ranks [lo+1, hi] has doubled midrank lo + hi + 1.
    std::int64_t doubled_rank_sum = 0;
    std::int64_t positives = 0;
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && scores[order[hi]] == scores[order[lo]]) ++hi;
        const auto doubled_midrank = static_cast<std::int64_t>(lo + hi + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            const int t = targets[order[j]];
            if (t != 0 && t != 1) throw ValidationError("auc_binary: targets must be 0 or 1");
            if (t == 1) {
                doubled_rank_sum += doubled_midrank;
                ++positives;
            }
        }
        lo = hi;
    }
    const std::int64_t negatives = static_cast<std::int64_t>(n) - positives;
    if (positives == 0 || negatives == 0) {
        throw ValidationError("auc_binary: need at least one positive and one negative target");
    }
    // 2U = 2 * (rank sum - n+ (n+ + 1) / 2) counts wins twice and ties once.
    const std::int64_t doubled_u = doubled_rank_sum - positives * (positives + 1);
    return (static_cast<double>(doubled_u) * 0.5) /
           (static_cast<double>(positives) * static_cast<double>(negatives));
}

double average_auc(std::span<const ProbabilityVector> probs, std::span<const FineLabel> labels) {
    check_lengths(probs.size(), labels.size(), "average_auc");
    require_all_classes(labels, "average_auc");
    std::vector<double> scores(probs.size());
    std::vector<int> targets(probs.size());
    double sum = 0.0;
    for (int c = 0; c < kNumClasses; ++c) {
        for (std::size_t i = 0; i < probs.size(); ++i) {
            scores[i] = probs[i][c];
            targets[i] = index(labels[i]) == c ? 1 : 0;
        }
        sum += auc_binary(scores, targets);
    }
    return sum / kNumClasses;
}

std::pair<double, double> binary_task_metrics(std::span<const ProbabilityVector> probs,
                                              std::span<const FineLabel> labels) {
    check_lengths(probs.size(), labels.size(), "binary_task_metrics");
    std::vector<double> scores(probs.size());
    std::vector<int> targets(probs.size());
    std::size_t correct = 0;
    bool seen_zero = false;
    bool seen_one = false;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const CoarseLabel z = coarsen(labels[i]);
        (z == CoarseLabel::false_recall ? seen_zero : seen_one) = true;
        scores[i] = 1.0 - probs[i][0];
        targets[i] = index(z);
        if (predicted_coarse(probs[i]) == z) ++correct;
    }
    if (!seen_zero || !seen_one) {
        throw ValidationError("binary_task_metrics: both coarse classes must be present");
    }
    const double acc = static_cast<double>(correct) / static_cast<double>(probs.size());
    return {acc, auc_binary(scores, targets)};
}

MetricsReport evaluate(std::span<const ProbabilityVector> probs, std::span<const FineLabel> labels) {
    MetricsReport report;
    report.accuracy = accuracy(probs, labels);
    report.balanced_accuracy = balanced_accuracy(probs, labels);
    report.average_auc = average_auc(probs, labels);
    std::tie(report.binary_accuracy, report.binary_auc) = binary_task_metrics(probs, labels);
    report.n_samples = probs.size();
    return report;
}

}  // namespace curricula

// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include "curricula/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curricula/error.hpp"

namespace curricula {

namespace {

double clamp_prob(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

}  // namespace

std::optional<FineLabel> fine_label_from_int(long long value) {
    if (value < 0 || value >= kNumClasses) return std::nullopt;
    return static_cast<FineLabel>(value);
}

void validate_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ValidationError("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
}

ProbabilityVector softmax(const ScoreVector& scores) {
    const double shift = std::max({scores[0], scores[1], scores[2]});
    ProbabilityVector p;
    double total = 0.0;
    for (int c = 0; c < kNumClasses; ++c) {
        p[c] = std::exp(scores[c] - shift);
        total += p[c];
    }
    for (double& v : p) v /= total;
    return p;
}

double hard_loss(const ProbabilityVector& p, FineLabel y) {
    return -std::log(clamp_prob(p[index(y)]));
}

double easy_loss(const ProbabilityVector& p, CoarseLabel z) {
    // p(z = 0) = p0, p(z = 1) = 1 - p0
    const double p_z = z == CoarseLabel::false_recall ? p[0] : 1.0 - p[0];
    return -std::log(clamp_prob(p_z));
}

double combined_loss(const ProbabilityVector& p, FineLabel y, double lambda) {
    validate_lambda(lambda);
    if (lambda == 0.0) return hard_loss(p, y);
    if (lambda == 1.0) return easy_loss(p, coarsen(y));
    return lambda * easy_loss(p, coarsen(y)) + (1.0 - lambda) * hard_loss(p, y);
}

ScoreVector combined_loss_grad_from_proba(const ProbabilityVector& p, FineLabel y,
                                          double lambda) {
    validate_lambda(lambda);

    ScoreVector hard{};
    for (int c = 0; c < kNumClasses; ++c) hard[c] = p[c] - (c == index(y) ? 1.0 : 0.0);
    if (lambda == 0.0) return hard;

    ScoreVector easy{};
    if (coarsen(y) == CoarseLabel::false_recall) {
        for (int c = 0; c < kNumClasses; ++c) easy[c] = p[c] - (c == 0 ? 1.0 : 0.0);
    } else {
        const double ratio = p[0] / std::max(1.0 - p[0], kProbFloor);
        for (int c = 0; c < kNumClasses; ++c) easy[c] = ratio * ((c == 0 ? 1.0 : 0.0) - p[c]);
    }
    if (lambda == 1.0) return easy;

    ScoreVector grad{};
    for (int c = 0; c < kNumClasses; ++c) grad[c] = lambda * easy[c] + (1.0 - lambda) * hard[c];
    return grad;
}

ScoreVector combined_loss_grad(const ScoreVector& scores, FineLabel y, double lambda) {
    for (double s : scores) {
        if (!std::isfinite(s)) throw ValidationError("combined_loss_grad: non-finite score");
    }
    return combined_loss_grad_from_proba(softmax(scores), y, lambda);
}

}  // namespace curricula

// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include "curricula/scheduler.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "curricula/error.hpp"

namespace curricula {

std::string_view to_string(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::cosine: return "cosine";
        case SchedulerKind::linear: return "linear";
        case SchedulerKind::concave_quadratic: return "concave_quadratic";
        case SchedulerKind::convex_quadratic: return "convex_quadratic";
        case SchedulerKind::exponential: return "exponential";
        case SchedulerKind::logarithm: return "logarithm";
        case SchedulerKind::step: return "step";
        case SchedulerKind::constant_zero: return "constant_zero";
    }
    return "unknown";
}

std::optional<SchedulerKind> parse_scheduler_kind(std::string_view name) {
    for (SchedulerKind kind : kAllSchedulerKinds) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

void SchedulerSpec::validate() const {
    if (switch_epoch < 1) {
        throw ValidationError("scheduler " + std::string(to_string(kind)) +
                              ": L must be >= 1, got " + std::to_string(switch_epoch));
    }
    if (total_epochs < switch_epoch) {
        throw ValidationError("scheduler " + std::string(to_string(kind)) + ": E (" +
                              std::to_string(total_epochs) + ") must be >= L (" +
                              std::to_string(switch_epoch) + ")");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ValidationError("scheduler " + std::string(to_string(kind)) +
                              ": epsilon must lie in (0, 1)");
    }
}

SchedulerSpec SchedulerSpec::with_default_switch(SchedulerKind kind, int total_epochs,
                                                 double epsilon) {
    SchedulerSpec spec;
    spec.kind = kind;
    spec.total_epochs = total_epochs;
    spec.switch_epoch = total_epochs / 2 < 1 ? 1 : total_epochs / 2;
    spec.epsilon = epsilon;
    return spec;
}

double lambda_at(const SchedulerSpec& spec, int epoch) {
    spec.validate();
    if (epoch < 0 || epoch > spec.total_epochs) {
        throw OutOfRangeError("epoch " + std::to_string(epoch) + " outside [0, " +
                              std::to_string(spec.total_epochs) + "]");
    }
    if (spec.kind == SchedulerKind::constant_zero || epoch >= spec.switch_epoch) return 0.0;

    const double e = epoch;
    const double L = spec.switch_epoch;
    const double t = e / L;
    switch (spec.kind) {
        case SchedulerKind::cosine: return (std::cos(e * std::numbers::pi / L) + 1.0) / 2.0;
        case SchedulerKind::linear: return 1.0 - t;
        case SchedulerKind::concave_quadratic: return -(t * t) + 1.0;
        case SchedulerKind::convex_quadratic: return (e - L) * (e - L) / (L * L);
        case SchedulerKind::exponential: return std::pow(spec.epsilon, t);
        case SchedulerKind::logarithm: return std::log(1.0 + L - e) / std::log(1.0 + L);
        case SchedulerKind::step: return 1.0;
        case SchedulerKind::constant_zero: return 0.0;
    }
    return 0.0;
}

}  // namespace curricula

// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace curricula {

/// Shape of the curriculum weight curve. `constant_zero` is the pure
/// three-class baseline (lambda == 0 at every epoch).
enum class SchedulerKind {
    cosine,
    linear,
    concave_quadratic,
    convex_quadratic,
    exponential,
    logarithm,
    step,
    constant_zero,
};

inline constexpr std::array<SchedulerKind, 8> kAllSchedulerKinds = {
    SchedulerKind::cosine,           SchedulerKind::linear,      SchedulerKind::concave_quadratic,
    SchedulerKind::convex_quadratic, SchedulerKind::exponential, SchedulerKind::logarithm,
    SchedulerKind::step,             SchedulerKind::constant_zero,
};

std::string_view to_string(SchedulerKind kind);
std::optional<SchedulerKind> parse_scheduler_kind(std::string_view name);

/// Curriculum weight schedule. `switch_epoch` (L) is the first epoch at
/// which training is purely the three-class task; `total_epochs` (E) is the
/// training length.
struct SchedulerSpec {
    SchedulerKind kind = SchedulerKind::linear;
    int switch_epoch = 1;
    int total_epochs = 1;
    double epsilon = 1e-3;

    /// Throws ValidationError unless 1 <= L <= E and 0 < epsilon < 1.
    void validate() const;

    /// Spec with L defaulted to E / 2 (at least 1).
    static SchedulerSpec with_default_switch(SchedulerKind kind, int total_epochs,
                                             double epsilon = 1e-3);
};

/// Weight of the easy (grouped binary) loss at epoch `epoch`, in [0, 1].
///
/// For 0 <= e < L the closed form of `spec.kind` is returned; for
/// L <= e <= E the result is exactly 0. Throws OutOfRangeError for e < 0 or
/// e > E and ValidationError for an invalid spec.
double lambda_at(const SchedulerSpec& spec, int epoch);

}  // namespace curricula

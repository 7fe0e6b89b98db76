// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "curricula/data.hpp"
#include "curricula/loss.hpp"

namespace curricula {

/// Fully connected layer; `weights` is outputs x inputs, row-major.
struct DenseLayer {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights;
    std::vector<double> biases;

    double weight(std::size_t out, std::size_t in) const { return weights[out * inputs + in]; }

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// Feedforward classifier: rectifier hidden layers, softmax over 3 outputs.
struct ModelParams {
    std::vector<DenseLayer> layers;

    std::vector<std::size_t> layer_sizes() const;
    std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().inputs; }
    std::size_t parameter_count() const;

    /// Shapes consistent, last width 3, all values finite.
    void validate() const;

    /// Same shapes, every value zero.
    ModelParams zeros_like() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct TrainConfig {
    double learning_rate = 0.05;
    int epochs = 100;
    int batch_size = 32;
    std::uint64_t seed = 0;
    std::vector<int> hidden_sizes = {16};

    void validate() const;

    /// {input_dim, hidden..., 3}; zero-width hidden entries are dropped.
    std::vector<std::size_t> layer_sizes(std::size_t input_dim) const;
};

/// Weights ~ N(0, 1/fan_in), biases zero. Deterministic given `seed`.
ModelParams init_params(std::span<const std::size_t> layer_sizes, std::uint64_t seed);

ScoreVector forward_scores(const ModelParams& params, std::span<const double> features);
ProbabilityVector predict_proba(const ModelParams& params, std::span<const double> features);

/// Probabilities for every sample of `dataset`, in order. Parallel over
/// samples; results are identical to predict_proba_batch_serial.
std::vector<ProbabilityVector> predict_proba_batch(const ModelParams& params,
                                                   const Dataset& dataset);
std::vector<ProbabilityVector> predict_proba_batch_serial(const ModelParams& params,
                                                          const Dataset& dataset);

struct BatchGradient {
    double loss_sum = 0.0;   // sum of per-sample combined losses
    ModelParams gradient;    // gradient of the mean combined loss
};

/// Loss and backpropagated gradient of the mean combined loss over `rows`.
BatchGradient batch_gradient(const ModelParams& params, const Dataset& dataset,
                             std::span<const std::size_t> rows, double lambda);

/// In-place params -= learning_rate * gradient.
void sgd_step(ModelParams& params, const ModelParams& gradient, double learning_rate);

/// One shuffled pass of minibatch SGD on the combined loss with a fixed
/// lambda. Returns the mean per-sample loss over the epoch.
double train_epoch(ModelParams& params, const Dataset& train_set, double lambda,
                   const TrainConfig& config, std::mt19937_64& rng);

/// Text format: `curricula-mlp 1`, `layers n0 n1 ...`, then for each layer
/// one line of row-major weights and one line of biases. Values are written
/// in shortest round-trip form, so load(save(p)) == p exactly.
void save_params(const ModelParams& params, std::ostream& out);
ModelParams load_params(std::istream& in);

}  // namespace curricula

// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "curricula/data.hpp"
#include "curricula/harness.hpp"
#include "curricula/metrics.hpp"
#include "curricula/model.hpp"

namespace curricula::oracle {

/// Closed-form weights written out directly, with the cut-off at e >= L.
inline double schedule_formula(SchedulerKind kind, double e, double L, double eps) {
    if (kind == SchedulerKind::constant_zero || e >= L) return 0.0;
    switch (kind) {
        case SchedulerKind::cosine: return (std::cos(e * std::numbers::pi / L) + 1.0) / 2.0;
        case SchedulerKind::linear: return 1.0 - e / L;
        case SchedulerKind::concave_quadratic: return -std::pow(e / L, 2.0) + 1.0;
        case SchedulerKind::convex_quadratic: return std::pow(L, -2.0) * std::pow(e - L, 2.0);
        case SchedulerKind::exponential: return std::pow(eps, e / L);
        case SchedulerKind::logarithm: return std::log(1.0 + L - e) / std::log(1.0 + L);
        case SchedulerKind::step: return 1.0;
        default: return 0.0;
    }
}

/// Mean over all positive/negative pairs of 1 (win), 1/2 (tie), 0 (loss).
inline double pairwise_auc(std::span<const double> scores, std::span<const int> targets) {
    double sum = 0.0;
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (int t : targets) (t == 1 ? pos : neg)++;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (targets[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (targets[j] != 0) continue;
            if (scores[i] > scores[j]) {
                sum += 1.0;
            } else if (scores[i] == scores[j]) {
                sum += 0.5;
            }
        }
    }
    return sum / (static_cast<double>(pos) * static_cast<double>(neg));
}

/// Direct p = softmax(s) without max shifting; fine for moderate scores.
inline ProbabilityVector plain_softmax(const ScoreVector& s) {
    const double e0 = std::exp(s[0]), e1 = std::exp(s[1]), e2 = std::exp(s[2]);
    const double z = e0 + e1 + e2;
    return {e0 / z, e1 / z, e2 / z};
}

/// Central differences of f at x with step h.
inline std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                              std::vector<double> x, double h) {
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + h;
        const double up = f(x);
        x[i] = orig - h;
        const double down = f(x);
        x[i] = orig;
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

/// ||a - b|| / max(||a||, ||b||), 0 when both vanish.
inline double relative_error(std::span<const double> a, std::span<const double> b) {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    const double denom = std::sqrt(std::max(na, nb));
    return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
}

inline std::vector<double> flatten(const ModelParams& params) {
    std::vector<double> out;
    for (const DenseLayer& layer : params.layers) {
        out.insert(out.end(), layer.weights.begin(), layer.weights.end());
        out.insert(out.end(), layer.biases.begin(), layer.biases.end());
    }
    return out;
}

inline ModelParams unflatten(const ModelParams& shape, std::span<const double> flat) {
    ModelParams out = shape;
    std::size_t k = 0;
    for (DenseLayer& layer : out.layers) {
        for (double& w : layer.weights) w = flat[k++];
        for (double& b : layer.biases) b = flat[k++];
    }
    return out;
}

/// Plain three-class cross-entropy minibatch SGD, written independently of
/// curricula::train_epoch / batch_gradient but performing the same floating
/// point operations in the same order. Used as the lambda == 0 reference.
class PlainCrossEntropyTrainer {
public:
    explicit PlainCrossEntropyTrainer(ModelParams params) : p_(std::move(params)) {}

    const ModelParams& params() const { return p_; }

    ScoreVector scores(std::span<const double> x) const {
        std::vector<double> a(x.begin(), x.end());
        std::vector<double> next;
        for (std::size_t l = 0; l < p_.layers.size(); ++l) {
            const DenseLayer& L = p_.layers[l];
            next.assign(L.outputs, 0.0);
            for (std::size_t o = 0; o < L.outputs; ++o) {
                double acc = L.biases[o];
                for (std::size_t i = 0; i < L.inputs; ++i) acc += L.weights[o * L.inputs + i] * a[i];
                next[o] = (l + 1 < p_.layers.size() && !(acc > 0.0)) ? 0.0 : acc;
            }
            a.swap(next);
        }
        return {a[0], a[1], a[2]};
    }

    ProbabilityVector proba(std::span<const double> x) const {
        const ScoreVector s = scores(x);
        const double m = std::max({s[0], s[1], s[2]});
        ProbabilityVector p;
        double z = 0.0;
        for (int c = 0; c < 3; ++c) {
            p[c] = std::exp(s[c] - m);
            z += p[c];
        }
        for (double& v : p) v /= z;
        return p;
    }

    void epoch(const Dataset& data, int batch_size, double lr, std::mt19937_64& rng) {
        std::vector<std::size_t> order(data.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(batch_size)) {
            const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(batch_size));
            ModelParams g = p_;
            for (auto& L : g.layers) {
                std::fill(L.weights.begin(), L.weights.end(), 0.0);
                std::fill(L.biases.begin(), L.biases.end(), 0.0);
            }
            for (std::size_t k = start; k < end; ++k) accumulate(data[order[k]], g);
            const double m = static_cast<double>(end - start);
            for (std::size_t l = 0; l < p_.layers.size(); ++l) {
                for (std::size_t i = 0; i < p_.layers[l].weights.size(); ++i) {
                    p_.layers[l].weights[i] -= lr * (g.layers[l].weights[i] / m);
                }
                for (std::size_t i = 0; i < p_.layers[l].biases.size(); ++i) {
                    p_.layers[l].biases[i] -= lr * (g.layers[l].biases[i] / m);
                }
            }
        }
    }

private:
    void accumulate(const Sample& s, ModelParams& g) const {
        const std::size_t n = p_.layers.size();
        std::vector<std::vector<double>> acts(n + 1);
        acts[0] = s.features;
        for (std::size_t l = 0; l < n; ++l) {
            const DenseLayer& L = p_.layers[l];
            acts[l + 1].assign(L.outputs, 0.0);
            for (std::size_t o = 0; o < L.outputs; ++o) {
                double acc = L.biases[o];
                for (std::size_t i = 0; i < L.inputs; ++i) acc += L.weights[o * L.inputs + i] * acts[l][i];
                acts[l + 1][o] = (l + 1 < n && !(acc > 0.0)) ? 0.0 : acc;
            }
        }
        const auto& out = acts[n];
        const double m = std::max({out[0], out[1], out[2]});
        std::array<double, 3> p;
        double z = 0.0;
        for (int c = 0; c < 3; ++c) {
            p[c] = std::exp(out[c] - m);
            z += p[c];
        }
        std::vector<double> delta(3);
        for (int c = 0; c < 3; ++c) delta[c] = p[c] / z - (c == static_cast<int>(s.label) ? 1.0 : 0.0);

        for (std::size_t l = n; l-- > 0;) {
            const DenseLayer& L = p_.layers[l];
            for (std::size_t o = 0; o < L.outputs; ++o) {
                for (std::size_t i = 0; i < L.inputs; ++i) g.layers[l].weights[o * L.inputs + i] += delta[o] * acts[l][i];
                g.layers[l].biases[o] += delta[o];
            }
            if (l == 0) break;
            std::vector<double> prev(L.inputs, 0.0);
            for (std::size_t o = 0; o < L.outputs; ++o) {
                for (std::size_t i = 0; i < L.inputs; ++i) prev[i] += L.weights[o * L.inputs + i] * delta[o];
            }
            for (std::size_t i = 0; i < L.inputs; ++i) {
                if (!(acts[l][i] > 0.0)) prev[i] = 0.0;
            }
            delta = std::move(prev);
        }
    }

    ModelParams p_;
};

/// Full plain cross-entropy protocol for one fold: same initialization,
/// shuffling and best-validation selection as the harness, hard loss only.
inline MetricsReport plain_cross_entropy_fold(const Dataset& train, const Dataset& val,
                                              const Dataset& test, const TrainConfig& config) {
    PlainCrossEntropyTrainer trainer(init_params(config.layer_sizes(train.feature_dim()), config.seed));
    std::mt19937_64 rng(derive_seed(config.seed, kAnyFold, "shuffle"));
    std::vector<FineLabel> val_labels, test_labels;
    for (const Sample& s : val.samples()) val_labels.push_back(s.label);
    for (const Sample& s : test.samples()) test_labels.push_back(s.label);

    ModelParams best = trainer.params();
    double best_score = -1.0;
    for (int e = 0; e < config.epochs; ++e) {
        trainer.epoch(train, config.batch_size, config.learning_rate, rng);
        std::vector<ProbabilityVector> probs;
        for (const Sample& s : val.samples()) probs.push_back(trainer.proba(s.features));
        const double score = balanced_accuracy(probs, val_labels);
        if (score > best_score) {
            best_score = score;
            best = trainer.params();
        }
    }
    PlainCrossEntropyTrainer chosen(best);
    std::vector<ProbabilityVector> probs;
    for (const Sample& s : test.samples()) probs.push_back(chosen.proba(s.features));
    return evaluate(probs, test_labels);
}

}  // namespace curricula::oracle

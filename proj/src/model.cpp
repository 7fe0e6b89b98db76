// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include "curricula/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "curricula/error.hpp"
#include "curricula/numeric_text.hpp"

namespace curricula {

std::vector<std::size_t> ModelParams::layer_sizes() const {
    std::vector<std::size_t> sizes;
    if (layers.empty()) return sizes;
    sizes.push_back(layers.front().inputs);
    for (const DenseLayer& layer : layers) sizes.push_back(layer.outputs);
    return sizes;
}

std::size_t ModelParams::parameter_count() const {
    std::size_t n = 0;
    for (const DenseLayer& layer : layers) n += layer.weights.size() + layer.biases.size();
    return n;
}

void ModelParams::validate() const {
    if (layers.empty()) throw ValidationError("model has no layers");
    if (layers.back().outputs != static_cast<std::size_t>(kNumClasses)) {
        throw ValidationError("final layer width must be 3");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const DenseLayer& layer = layers[l];
        if (layer.inputs == 0 || layer.outputs == 0) {
            throw ValidationError("layer " + std::to_string(l) + " has zero width");
        }
        if (l > 0 && layers[l - 1].outputs != layer.inputs) {
            throw ValidationError("layer " + std::to_string(l) + " input width mismatch");
        }
        if (layer.weights.size() != layer.inputs * layer.outputs ||
            layer.biases.size() != layer.outputs) {
            throw ValidationError("layer " + std::to_string(l) + " parameter shape mismatch");
        }
        const auto finite = [](double v) { return std::isfinite(v); };
        if (!std::all_of(layer.weights.begin(), layer.weights.end(), finite) ||
            !std::all_of(layer.biases.begin(), layer.biases.end(), finite)) {
            throw ValidationError("layer " + std::to_string(l) + " has non-finite parameters");
        }
    }
}

ModelParams ModelParams::zeros_like() const {
    ModelParams out = *this;
    for (DenseLayer& layer : out.layers) {
        std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
        std::fill(layer.biases.begin(), layer.biases.end(), 0.0);
    }
    return out;
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ValidationError("learning_rate must be positive");
    }
    if (epochs < 1) throw ValidationError("epochs must be >= 1");
    if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
    for (int h : hidden_sizes) {
        if (h < 0) throw ValidationError("hidden sizes must be non-negative");
    }
}

std::vector<std::size_t> TrainConfig::layer_sizes(std::size_t input_dim) const {
    std::vector<std::size_t> sizes{input_dim};
    for (int h : hidden_sizes) {
        if (h > 0) sizes.push_back(static_cast<std::size_t>(h));
    }
    sizes.push_back(kNumClasses);
    return sizes;
}

ModelParams init_params(std::span<const std::size_t> layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2) throw ValidationError("need at least input and output sizes");
    if (layer_sizes.back() != static_cast<std::size_t>(kNumClasses)) {
        throw ValidationError("layer sizes must end in 3");
    }
    if (std::find(layer_sizes.begin(), layer_sizes.end(), std::size_t{0}) != layer_sizes.end()) {
        throw ValidationError("layer sizes must be positive");
    }

    std::mt19937_64 rng(seed);
    ModelParams params;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        DenseLayer layer;
        layer.inputs = layer_sizes[l];
        layer.outputs = layer_sizes[l + 1];
        std::normal_distribution<double> dist(0.0, 1.0 / std::sqrt(static_cast<double>(layer.inputs)));
        layer.weights.resize(layer.inputs * layer.outputs);
        for (double& w : layer.weights) w = dist(rng);
        layer.biases.assign(layer.outputs, 0.0);
        params.layers.push_back(std::move(layer));
    }
    return params;
}

namespace {

// y = W x + b
void affine(const DenseLayer& layer, std::span<const double> x, std::vector<double>& y) {
    y.resize(layer.outputs);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
        const double* row = layer.weights.data() + o * layer.inputs;
        double acc = layer.biases[o];
        for (std::size_t i = 0; i < layer.inputs; ++i) acc += row[i] * x[i];
        y[o] = acc;
    }
}

void check_input(const ModelParams& params, std::span<const double> features) {
    if (params.layers.empty()) throw ValidationError("model has no layers");
    if (features.size() != params.input_dim()) {
        throw ValidationError("feature length " + std::to_string(features.size()) +
                              " does not match model input dim " +
                              std::to_string(params.input_dim()));
    }
}

// Forward pass keeping every layer's input; activations[l] feeds layer l and
// activations.back() holds the output scores. Hidden activations are
// rectified, so activations[l] > 0 is also the derivative mask.
void forward_cached(const ModelParams& params, std::span<const double> features,
                    std::vector<std::vector<double>>& activations) {
    const std::size_t n_layers = params.layers.size();
    activations.resize(n_layers + 1);
    activations[0].assign(features.begin(), features.end());
    for (std::size_t l = 0; l < n_layers; ++l) {
        affine(params.layers[l], activations[l], activations[l + 1]);
        if (l + 1 < n_layers) {
            for (double& v : activations[l + 1]) v = v > 0.0 ? v : 0.0;
        }
    }
}

}  // namespace

ScoreVector forward_scores(const ModelParams& params, std::span<const double> features) {
    check_input(params, features);
    std::vector<std::vector<double>> activations;
    forward_cached(params, features, activations);
    const auto& out = activations.back();
    return {out[0], out[1], out[2]};
}

ProbabilityVector predict_proba(const ModelParams& params, std::span<const double> features) {
    return softmax(forward_scores(params, features));
}

std::vector<ProbabilityVector> predict_proba_batch_serial(const ModelParams& params,
                                                          const Dataset& dataset) {
    std::vector<ProbabilityVector> out(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out[i] = predict_proba(params, dataset[i].features);
    }
    return out;
}

std::vector<ProbabilityVector> predict_proba_batch(const ModelParams& params,
                                                   const Dataset& dataset) {
    if (!dataset.empty()) check_input(params, dataset[0].features);
    const auto n = static_cast<std::ptrdiff_t>(dataset.size());
    std::vector<ProbabilityVector> out(dataset.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = predict_proba(params, dataset[static_cast<std::size_t>(i)].features);
    }
    return out;
}

BatchGradient batch_gradient(const ModelParams& params, const Dataset& dataset,
                             std::span<const std::size_t> rows, double lambda) {
    validate_lambda(lambda);
    if (rows.empty()) throw ValidationError("batch_gradient: empty batch");

    BatchGradient result{0.0, params.zeros_like()};
    const std::size_t n_layers = params.layers.size();
    std::vector<std::vector<double>> activations;
    std::vector<double> delta;
    std::vector<double> delta_prev;

    for (std::size_t row : rows) {
        const Sample& sample = dataset[row];
        check_input(params, sample.features);
        forward_cached(params, sample.features, activations);

        const auto& out = activations.back();
        const ProbabilityVector p = softmax({out[0], out[1], out[2]});
        result.loss_sum += combined_loss(p, sample.label, lambda);
        const ScoreVector g = combined_loss_grad_from_proba(p, sample.label, lambda);
        delta.assign(g.begin(), g.end());

        for (std::size_t l = n_layers; l-- > 0;) {
            const DenseLayer& layer = params.layers[l];
            DenseLayer& grad = result.gradient.layers[l];
            const std::vector<double>& input = activations[l];
            for (std::size_t o = 0; o < layer.outputs; ++o) {
                double* grow = grad.weights.data() + o * layer.inputs;
                for (std::size_t i = 0; i < layer.inputs; ++i) grow[i] += delta[o] * input[i];
                grad.biases[o] += delta[o];
            }
            if (l == 0) break;
            delta_prev.assign(layer.inputs, 0.0);
            for (std::size_t o = 0; o < layer.outputs; ++o) {
                const double* row_w = layer.weights.data() + o * layer.inputs;
                for (std::size_t i = 0; i < layer.inputs; ++i) delta_prev[i] += row_w[i] * delta[o];
            }
            for (std::size_t i = 0; i < layer.inputs; ++i) {
                if (!(input[i] > 0.0)) delta_prev[i] = 0.0;
            }
            delta.swap(delta_prev);
        }
    }

    const auto m = static_cast<double>(rows.size());
    for (DenseLayer& grad : result.gradient.layers) {
        for (double& v : grad.weights) v /= m;
        for (double& v : grad.biases) v /= m;
    }
    return result;
}

void sgd_step(ModelParams& params, const ModelParams& gradient, double learning_rate) {
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
        DenseLayer& layer = params.layers[l];
        const DenseLayer& grad = gradient.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            layer.weights[i] -= learning_rate * grad.weights[i];
        }
        for (std::size_t i = 0; i < layer.biases.size(); ++i) {
            layer.biases[i] -= learning_rate * grad.biases[i];
        }
    }
}

double train_epoch(ModelParams& params, const Dataset& train_set, double lambda,
                   const TrainConfig& config, std::mt19937_64& rng) {
    if (train_set.empty()) throw ValidationError("train_epoch: empty training set");
    validate_lambda(lambda);
    config.validate();

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    const auto batch = static_cast<std::size_t>(config.batch_size);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
        const std::size_t end = std::min(start + batch, order.size());
        const auto rows = std::span<const std::size_t>(order).subspan(start, end - start);
        BatchGradient bg = batch_gradient(params, train_set, rows, lambda);
        loss_sum += bg.loss_sum;
        sgd_step(params, bg.gradient, config.learning_rate);
    }
    return loss_sum / static_cast<double>(train_set.size());
}

void save_params(const ModelParams& params, std::ostream& out) {
    out << "curricula-mlp 1\nlayers";
    for (std::size_t n : params.layer_sizes()) out << ' ' << n;
    out << '\n';
    const auto write_row = [&out](const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ' ';
            out << format_double(values[i]);
        }
        out << '\n';
    };
    for (const DenseLayer& layer : params.layers) {
        write_row(layer.weights);
        write_row(layer.biases);
    }
}

ModelParams load_params(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    const auto next_line = [&]() -> std::string& {
        if (!std::getline(in, line)) throw ParseError("unexpected end of model file", line_no + 1);
        ++line_no;
        return line;
    };

    if (trim(next_line()) != "curricula-mlp 1") throw ParseError("bad model header", line_no);

    std::istringstream sizes_in(next_line());
    std::string tag;
    sizes_in >> tag;
    if (tag != "layers") throw ParseError("expected 'layers'", line_no);
    std::vector<std::size_t> sizes;
    std::string token;
    while (sizes_in >> token) {
        const auto n = parse_integer(token);
        if (!n || *n <= 0) throw ParseError("invalid layer size '" + token + "'", line_no);
        sizes.push_back(static_cast<std::size_t>(*n));
    }
    if (sizes.size() < 2) throw ParseError("need at least two layer sizes", line_no);

    const auto read_row = [&](std::size_t expected) {
        std::istringstream row(next_line());
        std::vector<double> values;
        std::string tok;
        while (row >> tok) {
            const auto v = parse_double(tok);
            if (!v) throw ParseError("invalid number '" + tok + "'", line_no);
            values.push_back(*v);
        }
        if (values.size() != expected) {
            throw ParseError("expected " + std::to_string(expected) + " values, got " +
                                 std::to_string(values.size()),
                             line_no);
        }
        return values;
    };

    ModelParams params;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        DenseLayer layer;
        layer.inputs = sizes[l];
        layer.outputs = sizes[l + 1];
        layer.weights = read_row(layer.inputs * layer.outputs);
        layer.biases = read_row(layer.outputs);
        params.layers.push_back(std::move(layer));
    }
    try {
        params.validate();
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
    return params;
}

}  // namespace curricula

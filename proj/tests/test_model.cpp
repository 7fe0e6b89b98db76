// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "curricula/error.hpp"
#include "curricula/metrics.hpp"
#include "curricula/model.hpp"
#include "oracles.hpp"

using namespace curricula;

namespace {

Dataset random_dataset(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < n; ++i) {
        Sample s;
        s.id = i;
        s.label = static_cast<FineLabel>(i % 3);
        for (std::size_t d = 0; d < dim; ++d) s.features.push_back(g(rng));
        samples.push_back(std::move(s));
    }
    return Dataset(std::move(samples));
}

/// Three well separated blobs at the vertices of a triangle.
Dataset three_blobs(int per_class, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.3);
    const double centers[3][2] = {{0.0, 4.0}, {-4.0, -2.0}, {4.0, -2.0}};
    std::vector<Sample> samples;
    std::uint64_t id = 0;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < per_class; ++i) {
            samples.push_back({{centers[c][0] + g(rng), centers[c][1] + g(rng)}, static_cast<FineLabel>(c), id++});
        }
    }
    return Dataset(std::move(samples));
}

}  // namespace

TEST_CASE("init is deterministic with zero biases and fan-in scaled weights") {
    const std::vector<std::size_t> sizes{2, 3};
    const auto a = init_params(sizes, 7);
    const auto b = init_params(sizes, 7);
    CHECK(a == b);
    CHECK_FALSE(a == init_params(sizes, 8));
    for (const auto& layer : init_params(sizes, 123).layers) {
        for (double v : layer.biases) CHECK(v == 0.0);
    }

    const std::vector<std::size_t> deep{4, 8, 3};
    const auto p = init_params(deep, 1);
    REQUIRE(p.layers.size() == 2);
    CHECK(p.layers[0].outputs == 8);
    CHECK(p.layers[0].inputs == 4);
    CHECK(p.layers[0].weights.size() == 32);
    CHECK(p.layers[1].outputs == 3);
    CHECK(p.layers[1].inputs == 8);
    CHECK(p.layer_sizes() == deep);

    const std::vector<std::size_t> wide{400, 3};
    const auto w = init_params(wide, 2).layers[0].weights;
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    double var = 0.0;
    for (double v : w) var += (v - mean) * (v - mean);
    var /= static_cast<double>(w.size());
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0 / 400).epsilon(0.1));
}

TEST_CASE("init rejects bad layer sizes") {
    CHECK_THROWS_AS(init_params(std::vector<std::size_t>{2, 4}, 0), ValidationError);
    CHECK_THROWS_AS(init_params(std::vector<std::size_t>{3}, 0), ValidationError);
    CHECK_THROWS_AS(init_params(std::vector<std::size_t>{0, 3}, 0), ValidationError);
    CHECK_THROWS_AS(init_params(std::vector<std::size_t>{2, 0, 3}, 0), ValidationError);
}

TEST_CASE("predict_proba") {
    auto params = init_params(std::vector<std::size_t>{2, 5, 3}, 4);
    const auto zero = params.zeros_like();
    const std::vector<double> x{0.3, -1.7};
    for (double v : predict_proba(zero, x)) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-15));

    const auto p = predict_proba(params, x);
    CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-9);
    for (double v : p) CHECK((v > 0.0 && v < 1.0));

    // bias shift invariance
    auto shifted = params;
    for (double& b : shifted.layers.back().biases) b += 5.25;
    const auto q = predict_proba(shifted, x);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(p[c] - q[c]) < 1e-9);

    CHECK_THROWS_AS(predict_proba(params, std::vector<double>{1.0}), ValidationError);
}

TEST_CASE("hand-built linear model favours class 2 on feature 0") {
    ModelParams linear;
    linear.layers.push_back({2, 3, {0.0, 0.0, 0.0, 0.0, 2.0, 0.0}, {0.0, 0.0, 0.0}});
    CHECK(predicted_class(predict_proba(linear, std::vector<double>{1.0, 0.0})) == 2);
    CHECK(predicted_class(predict_proba(linear, std::vector<double>{-1.0, 0.0})) != 2);
}

TEST_CASE("batch predictions: parallel kernel equals serial reference") {
    const auto data = random_dataset(257, 4, 9);
    const auto params = init_params(std::vector<std::size_t>{4, 6, 3}, 2);
    CHECK(predict_proba_batch(params, data) == predict_proba_batch_serial(params, data));
}

TEST_CASE("backprop matches central differences on random small networks") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto data = random_dataset(6, 3, rng());
        const auto params = init_params(std::vector<std::size_t>{3, 4, 3}, rng());
        const double lambda = u01(rng);
        const std::vector<std::size_t> rows{0, 1, 2, 3, 4, 5};
        const auto analytic = oracle::flatten(batch_gradient(params, data, rows, lambda).gradient);
        const auto f = [&](std::span<const double> flat) {
            const auto p = oracle::unflatten(params, flat);
            double sum = 0.0;
            for (std::size_t r : rows) sum += combined_loss(predict_proba(p, data[r].features), data[r].label, lambda);
            return sum / static_cast<double>(rows.size());
        };
        const auto numeric = oracle::central_difference(f, oracle::flatten(params), 1e-6);
        CAPTURE(trial);
        REQUIRE(oracle::relative_error(analytic, numeric) < 1e-4);
    }
}

TEST_CASE("single-sample SGD step moves parameters by -lr * gradient") {
    const auto data = random_dataset(1, 2, 3);
    auto params = init_params(std::vector<std::size_t>{2, 4, 3}, 11);
    const auto before = params;
    TrainConfig config;
    config.batch_size = 1;
    config.learning_rate = 0.1;
    std::mt19937_64 rng(0);
    const std::vector<std::size_t> rows{0};
    const auto grad = oracle::flatten(batch_gradient(before, data, rows, 0.3).gradient);
    train_epoch(params, data, 0.3, config, rng);
    const auto a = oracle::flatten(before);
    const auto b = oracle::flatten(params);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs((b[i] - a[i]) - (-0.1 * grad[i])) <= 1e-15);
    }
}

TEST_CASE("lambda = 0 training follows an independent plain cross-entropy trainer exactly") {
    const auto data = random_dataset(90, 3, 8);
    TrainConfig config;
    config.batch_size = 7;
    config.learning_rate = 0.2;
    auto params = init_params(std::vector<std::size_t>{3, 5, 4, 3}, 6);
    oracle::PlainCrossEntropyTrainer reference(params);
    std::mt19937_64 rng_a(99), rng_b(99);
    for (int e = 0; e < 5; ++e) {
        train_epoch(params, data, 0.0, config, rng_a);
        reference.epoch(data, config.batch_size, config.learning_rate, rng_b);
        REQUIRE(params == reference.params());
    }
}

TEST_CASE("training is deterministic given the rng state") {
    const auto data = random_dataset(60, 2, 1);
    TrainConfig config;
    auto a = init_params(std::vector<std::size_t>{2, 8, 3}, 5);
    auto b = a;
    std::mt19937_64 ra(4), rb(4);
    for (int e = 0; e < 3; ++e) {
        CHECK(train_epoch(a, data, 0.4, config, ra) == train_epoch(b, data, 0.4, config, rb));
    }
    CHECK(a == b);
}

TEST_CASE("separable three-blob data is learned by pure hard-loss training") {
    const auto data = three_blobs(100, 12);
    TrainConfig config;
    auto params = init_params(config.layer_sizes(2), 3);
    std::mt19937_64 rng(1);
    double first = 0.0, last = 0.0;
    for (int e = 0; e < 50; ++e) {
        last = train_epoch(params, data, 0.0, config, rng);
        if (e == 0) first = last;
    }
    CHECK(last < first);
    std::vector<FineLabel> labels;
    for (const auto& s : data.samples()) labels.push_back(s.label);
    CHECK(accuracy(predict_proba_batch(params, data), labels) >= 0.95);
}

TEST_CASE("train_epoch errors") {
    TrainConfig config;
    auto params = init_params(std::vector<std::size_t>{2, 3}, 0);
    std::mt19937_64 rng(0);
    CHECK_THROWS_AS(train_epoch(params, Dataset{}, 0.0, config, rng), ValidationError);
    const auto data = random_dataset(3, 2, 0);
    CHECK_THROWS_AS(train_epoch(params, data, 1.5, config, rng), ValidationError);
    config.batch_size = 0;
    CHECK_THROWS_AS(train_epoch(params, data, 0.5, config, rng), ValidationError);
}

TEST_CASE("model text format round-trips exactly") {
    const auto params = init_params(std::vector<std::size_t>{3, 7, 2, 3}, 77);
    std::stringstream buf;
    save_params(params, buf);
    CHECK(load_params(buf) == params);

    std::istringstream truncated("curricula-mlp 1\nlayers 2 3\n0.1 0.2\n");
    CHECK_THROWS_AS(load_params(truncated), ParseError);
    std::istringstream bad_header("mlp 2\n");
    CHECK_THROWS_AS(load_params(bad_header), ParseError);
}

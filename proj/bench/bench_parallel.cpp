// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

// Wall-clock comparison of the OpenMP kernels against their serial
// references: batch prediction and the (arm x fold) experiment loop.
//
// usage: curricula_bench [config.yaml] [threads]

#include <chrono>
#include <iostream>

#include "curricula/harness.hpp"
#include "curricula/model.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <typename F>
double time_ms(F&& f, int repeats = 1) {
    const auto t0 = std::chrono::high_resolution_clock::now();
    for (int i = 0; i < repeats; ++i) f();
    const auto t1 = std::chrono::high_resolution_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace curricula;
    const std::string config_path = argc > 1 ? argv[1] : "configs/desk_scale.yaml";
    const int threads = argc > 2 ? std::stoi(argv[2]) : 0;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::cout << "threads " << omp_get_max_threads() << '\n';
#endif

    SynthConfig synth;
    synth.counts = {20000, 20000, 20000};
    synth.feature_dim = 32;
    const Dataset big = generate_synthetic(synth);
    const auto params = init_params(std::vector<std::size_t>{32, 64, 64, 3}, 1);
    const double serial_pred = time_ms([&] { predict_proba_batch_serial(params, big); }, 5);
    const double parallel_pred = time_ms([&] { predict_proba_batch(params, big); }, 5);
    std::cout << "predict_proba_batch  serial " << serial_pred << " ms  parallel " << parallel_pred
              << " ms  speedup " << serial_pred / parallel_pred << '\n';

    const auto config = parse_config(config_path);
    ExperimentReport serial, parallel;
    const double serial_run = time_ms([&] { serial = run_experiment_serial(config); });
    const double parallel_run = time_ms([&] { parallel = run_experiment(config, threads); });
    std::cout << "run_experiment       serial " << serial_run << " ms  parallel " << parallel_run
              << " ms  speedup " << serial_run / parallel_run << '\n';
    std::cout << "reports identical: " << (per_fold_csv(serial) == per_fold_csv(parallel) ? "yes" : "NO")
              << '\n';
}

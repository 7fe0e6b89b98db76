// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "curricula/error.hpp"
#include "curricula/harness.hpp"
#include "curricula/numeric_text.hpp"

namespace curricula {

namespace {

constexpr std::array<const char*, 5> kMetricColumns = {
    "accuracy", "balanced_accuracy", "average_auc", "binary_accuracy", "binary_auc"};

constexpr std::array<const char*, 5> kMetricTitles = {
    "Accuracy", "Balanced acc.", "Average AUC", "Binary acc.", "Binary AUC"};

std::array<double, 5> metric_values(const MetricsReport& m) {
    return {m.accuracy, m.balanced_accuracy, m.average_auc, m.binary_accuracy, m.binary_auc};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << contents;
    if (!out) throw IoError("error writing " + path.string());
}

}  // namespace

std::string render_table(const ExperimentReport& report) {
    std::array<double, 5> best;
    best.fill(-1.0);
    std::size_t name_width = 3;
    for (const ArmResult& arm : report.arms) {
        const auto values = metric_values(arm.mean);
        for (std::size_t c = 0; c < best.size(); ++c) best[c] = std::max(best[c], values[c]);
        name_width = std::max(name_width, arm.arm.name.size());
    }

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(name_width)) << "Arm";
    for (const char* title : kMetricTitles) out << "  " << std::right << std::setw(14) << title;
    out << '\n';
    for (const ArmResult& arm : report.arms) {
        out << std::left << std::setw(static_cast<int>(name_width)) << arm.arm.name;
        const auto values = metric_values(arm.mean);
        for (std::size_t c = 0; c < values.size(); ++c) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(3) << values[c]
                 << (values[c] == best[c] ? "*" : " ");
            out << "  " << std::right << std::setw(14) << cell.str();
        }
        out << '\n';
    }
    out << "(* = column maximum; means over " << (report.arms.empty() ? 0 : report.arms[0].folds.size())
        << " folds)\n";
    return out.str();
}

std::string per_fold_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "arm,fold";
    for (const char* col : kMetricColumns) out << ',' << col;
    out << '\n';
    for (const ArmResult& arm : report.arms) {
        for (std::size_t f = 0; f < arm.folds.size(); ++f) {
            out << arm.arm.name << ',' << f;
            for (double v : metric_values(arm.folds[f])) out << ',' << format_double(v);
            out << '\n';
        }
    }
    return out.str();
}

std::string means_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "arm";
    for (const char* col : kMetricColumns) out << ',' << col;
    out << '\n';
    for (const ArmResult& arm : report.arms) {
        out << arm.arm.name;
        for (double v : metric_values(arm.mean)) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    write_file(dir / "table.txt", render_table(report));
    write_file(dir / "per_fold.csv", per_fold_csv(report));
    write_file(dir / "means.csv", means_csv(report));

    std::ostringstream info;
    info << "partition_seed: " << report.partition_seed << '\n';
    info << "fold_train_seeds:";
    for (std::uint64_t s : report.fold_train_seeds) info << ' ' << s;
    info << '\n';
    for (const ArmResult& arm : report.arms) {
        info << "best_epochs[" << arm.arm.name << "]:";
        for (int e : arm.best_epochs) info << ' ' << e;
        info << '\n';
    }
    info << "---\n" << report.config_echo;
    write_file(dir / "run_info.txt", info.str());
}

}  // namespace curricula

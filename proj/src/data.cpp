// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include "curricula/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

#include "curricula/error.hpp"
#include "curricula/numeric_text.hpp"

namespace curricula {

Dataset::Dataset(std::vector<Sample> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw ValidationError("dataset has no samples");
    feature_dim_ = samples_.front().features.size();
    if (feature_dim_ == 0) throw ValidationError("dataset feature dimension must be positive");
    rows_.reserve(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const Sample& s = samples_[i];
        if (s.features.size() != feature_dim_) {
            throw ValidationError("sample " + std::to_string(s.id) + " has " +
                                  std::to_string(s.features.size()) + " features, expected " +
                                  std::to_string(feature_dim_));
        }
        for (double v : s.features) {
            if (!std::isfinite(v)) {
                throw ValidationError("sample " + std::to_string(s.id) + " has a non-finite feature");
            }
        }
        if (!rows_.emplace(s.id, i).second) {
            throw ValidationError("duplicate sample id " + std::to_string(s.id));
        }
    }
}

std::array<std::size_t, kNumClasses> Dataset::class_counts() const {
    std::array<std::size_t, kNumClasses> counts{};
    for (const Sample& s : samples_) ++counts[index(s.label)];
    return counts;
}

std::size_t Dataset::row_of(std::uint64_t id) const {
    auto it = rows_.find(id);
    if (it == rows_.end()) throw OutOfRangeError("unknown sample id " + std::to_string(id));
    return it->second;
}

Dataset Dataset::subset(std::span<const std::uint64_t> ids) const {
    std::vector<Sample> out;
    out.reserve(ids.size());
    for (std::uint64_t id : ids) out.push_back(samples_[row_of(id)]);
    return Dataset(std::move(out));
}

void SynthConfig::validate() const {
    for (int c = 0; c < kNumClasses; ++c) {
        if (counts[c] < 1) {
            throw ValidationError("synthetic count for class " + std::to_string(c) +
                                  " must be positive");
        }
    }
    if (feature_dim < 2) {
        throw ValidationError("synthetic feature_dim must be >= 2 (class 0 needs its own axis)");
    }
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw ValidationError("synthetic separation must be positive");
    }
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw ValidationError("synthetic overlap must lie in [0, 1]");
    }
    if (!(noise > 0.0) || !std::isfinite(noise)) {
        throw ValidationError("synthetic noise must be positive");
    }
}

Dataset generate_synthetic(const SynthConfig& config) {
    config.validate();
    const auto dim = static_cast<std::size_t>(config.feature_dim);
    const double half_gap = config.separation * config.overlap / 2.0;

    std::array<std::vector<double>, kNumClasses> means;
    for (auto& m : means) m.assign(dim, 0.0);
    means[0][1] = config.separation;
    means[1][0] = -half_gap;
    means[2][0] = half_gap;

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> gauss(0.0, config.noise);

    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(config.counts[0] + config.counts[1] + config.counts[2]));
    std::uint64_t next_id = 0;
    for (int c = 0; c < kNumClasses; ++c) {
        for (int i = 0; i < config.counts[c]; ++i) {
            Sample s;
            s.id = next_id++;
            s.label = static_cast<FineLabel>(c);
            s.features.resize(dim);
            for (std::size_t d = 0; d < dim; ++d) s.features[d] = means[c][d] + gauss(rng);
            samples.push_back(std::move(s));
        }
    }
    return Dataset(std::move(samples));
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

Dataset parse_csv(std::istream& in) {
    std::vector<Sample> samples;
    std::size_t width = 0;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_commas(line);

        if (!seen_content) {
            seen_content = true;
            if (fields[0] == "id") {
                if (fields.size() < 3 || fields[1] != "label") {
                    throw ParseError("header must be id,label,f1,...,fd", line_no);
                }
                width = fields.size();
                continue;
            }
        }
        if (fields.size() < 3) {
            throw ParseError("expected id,label and at least one feature", line_no);
        }
        if (width == 0) width = fields.size();
        if (fields.size() != width) {
            throw ParseError("expected " + std::to_string(width) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }

        Sample s;
        const auto id = parse_integer(fields[0]);
        if (!id || *id < 0) throw ParseError("invalid id '" + std::string(fields[0]) + "'", line_no);
        s.id = static_cast<std::uint64_t>(*id);

        const auto raw_label = parse_integer(fields[1]);
        const auto label = raw_label ? fine_label_from_int(*raw_label) : std::nullopt;
        if (!label) {
            throw ParseError("label '" + std::string(fields[1]) + "' outside {0,1,2}", line_no);
        }
        s.label = *label;

        s.features.reserve(width - 2);
        for (std::size_t f = 2; f < width; ++f) {
            const auto v = parse_double(fields[f]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError("invalid feature value '" + std::string(fields[f]) + "'", line_no);
            }
            s.features.push_back(*v);
        }
        samples.push_back(std::move(s));
    }
    if (samples.empty()) throw ParseError("no samples");
    try {
        return Dataset(std::move(samples));
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_csv(in);
}

void write_csv(const Dataset& dataset, std::ostream& out) {
    out << "id,label";
    for (std::size_t f = 1; f <= dataset.feature_dim(); ++f) out << ",f" << f;
    out << '\n';
    for (const Sample& s : dataset.samples()) {
        out << s.id << ',' << index(s.label);
        for (double v : s.features) out << ',' << format_double(v);
        out << '\n';
    }
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_csv(dataset, out);
    if (!out) throw IoError("error writing " + path.string());
}

std::vector<FoldPartition> stratified_kfold(const Dataset& dataset, int k, double val_fraction,
                                            std::uint64_t seed) {
    if (k < 2) throw ValidationError("fold count must be >= 2, got " + std::to_string(k));
    if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
        throw ValidationError("val_fraction must lie in (0, 1)");
    }
    const auto folds = static_cast<std::size_t>(k);

    std::array<std::vector<std::uint64_t>, kNumClasses> by_class;
    for (const Sample& s : dataset.samples()) by_class[index(s.label)].push_back(s.id);

    std::mt19937_64 rng(seed);
    for (int c = 0; c < kNumClasses; ++c) {
        if (by_class[c].size() < folds) {
            throw ValidationError("class " + std::to_string(c) + " has " +
                                  std::to_string(by_class[c].size()) + " samples, fewer than k = " +
                                  std::to_string(k));
        }
        std::shuffle(by_class[c].begin(), by_class[c].end(), rng);
    }

    std::vector<FoldPartition> partitions(folds);
    for (std::size_t i = 0; i < folds; ++i) {
        FoldPartition& part = partitions[i];
        part.fold_index = static_cast<int>(i);
        for (int c = 0; c < kNumClasses; ++c) {
            const auto& ids = by_class[c];
            std::vector<std::uint64_t> rest;
            rest.reserve(ids.size());
            for (std::size_t j = 0; j < ids.size(); ++j) {
                if (j % folds == i) {
                    part.test_ids.push_back(ids[j]);
                } else {
                    rest.push_back(ids[j]);
                }
            }
            // Target val share is val_fraction of the ideal (k-1)/k portion.
            // Splitting the rounding slack of `rest` evenly keeps both the
            // train and validation counts within 1 of their targets.
            const double ideal_rest = static_cast<double>(ids.size()) * (k - 1) / k;
            const double slack = static_cast<double>(rest.size()) - ideal_rest;
            auto n_val = static_cast<long long>(std::llround(val_fraction * ideal_rest + slack / 2.0));
            n_val = std::clamp<long long>(n_val, 0, static_cast<long long>(rest.size()));
            const auto cut = rest.begin() + n_val;
            part.val_ids.insert(part.val_ids.end(), rest.begin(), cut);
            part.train_ids.insert(part.train_ids.end(), cut, rest.end());
        }
    }
    return partitions;
}

void write_partitions_csv(std::span<const FoldPartition> partitions, std::ostream& out) {
    out << "id,fold_index,split\n";
    for (const FoldPartition& p : partitions) {
        for (std::uint64_t id : p.train_ids) out << id << ',' << p.fold_index << ",train\n";
        for (std::uint64_t id : p.val_ids) out << id << ',' << p.fold_index << ",val\n";
        for (std::uint64_t id : p.test_ids) out << id << ',' << p.fold_index << ",test\n";
    }
}

}  // namespace curricula

// Copyright (C) 2026 The curricula authors
// SPDX-License-Identifier: Apache-2.0

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>

#include "curricula/error.hpp"
#include "curricula/harness.hpp"

namespace curricula {

namespace {

std::size_t line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line < 0 ? 0 : static_cast<std::size_t>(mark.line) + 1;
}

void require_map(const YAML::Node& node, const std::string& where) {
    if (!node.IsMap()) throw ParseError(where + ": expected a mapping", line_of(node));
}

void reject_unknown(const YAML::Node& node, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* a) { return key == a; });
        if (!known) {
            throw ParseError("unknown key '" + (where.empty() ? key : where + "." + key) + "'",
                             line_of(kv.first));
        }
    }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& where, const char* type_name) {
    if (!node.IsScalar()) throw ParseError(where + ": expected " + type_name, line_of(node));
    try {
        return node.as<T>();
    } catch (const YAML::BadConversion&) {
        throw ParseError(where + ": expected " + type_name + ", got '" + node.Scalar() + "'",
                         line_of(node));
    }
}

int as_int(const YAML::Node& node, const std::string& where) {
    return scalar<int>(node, where, "an integer");
}

double as_double(const YAML::Node& node, const std::string& where) {
    return scalar<double>(node, where, "a number");
}

std::uint64_t as_seed(const YAML::Node& node, const std::string& where) {
    const auto value = scalar<long long>(node, where, "a non-negative integer");
    if (value < 0) throw ParseError(where + ": must be non-negative", line_of(node));
    return static_cast<std::uint64_t>(value);
}

std::vector<int> as_int_list(const YAML::Node& node, const std::string& where) {
    if (!node.IsSequence()) throw ParseError(where + ": expected a list", line_of(node));
    std::vector<int> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(as_int(node[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

SynthConfig parse_synthetic(const YAML::Node& node, std::uint64_t master_seed) {
    require_map(node, "data.synthetic");
    reject_unknown(node, "data.synthetic",
                   {"counts", "feature_dim", "separation", "overlap", "noise", "seed"});
    SynthConfig synth;
    synth.seed = derive_seed(master_seed, kAnyFold, "data");
    if (node["counts"]) {
        const auto counts = as_int_list(node["counts"], "data.synthetic.counts");
        if (counts.size() != static_cast<std::size_t>(kNumClasses)) {
            throw ParseError("data.synthetic.counts: expected 3 class counts",
                             line_of(node["counts"]));
        }
        std::copy(counts.begin(), counts.end(), synth.counts.begin());
    }
    if (node["feature_dim"]) synth.feature_dim = as_int(node["feature_dim"], "data.synthetic.feature_dim");
    if (node["separation"]) synth.separation = as_double(node["separation"], "data.synthetic.separation");
    if (node["overlap"]) synth.overlap = as_double(node["overlap"], "data.synthetic.overlap");
    if (node["noise"]) synth.noise = as_double(node["noise"], "data.synthetic.noise");
    if (node["seed"]) synth.seed = as_seed(node["seed"], "data.synthetic.seed");
    try {
        synth.validate();
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_of(node));
    }
    return synth;
}

ArmSpec parse_arm(const YAML::Node& node, std::size_t i, int epochs) {
    const std::string where = "arms[" + std::to_string(i) + "]";
    require_map(node, where);
    reject_unknown(node, where, {"kind", "name", "L", "E", "epsilon"});
    if (!node["kind"]) throw ParseError(where + ": missing required key 'kind'", line_of(node));
    const auto kind_name = scalar<std::string>(node["kind"], where + ".kind", "a scheduler kind");
    const auto kind = parse_scheduler_kind(kind_name);
    if (!kind) {
        throw ParseError(where + ".kind: unknown scheduler '" + kind_name + "'",
                         line_of(node["kind"]));
    }

    ArmSpec arm;
    arm.name = node["name"] ? scalar<std::string>(node["name"], where + ".name", "a string")
                            : kind_name;
    const int total = node["E"] ? as_int(node["E"], where + ".E") : epochs;
    if (total != epochs) {
        throw ParseError(where + " (" + arm.name + "): E = " + std::to_string(total) +
                             " does not match train.epochs = " + std::to_string(epochs),
                         line_of(node["E"]));
    }
    arm.schedule = SchedulerSpec::with_default_switch(*kind, total);
    if (node["L"]) arm.schedule.switch_epoch = as_int(node["L"], where + ".L");
    if (node["epsilon"]) arm.schedule.epsilon = as_double(node["epsilon"], where + ".epsilon");
    try {
        arm.schedule.validate();
    } catch (const ValidationError& e) {
        throw ParseError(where + ": " + e.what(), line_of(node));
    }
    return arm;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (arms.empty()) throw ValidationError("experiment needs at least one arm");
    if (folds < 2) throw ValidationError("folds must be >= 2");
    if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
        throw ValidationError("val_fraction must lie in (0, 1)");
    }
    train.validate();
    std::set<std::string> names;
    for (const ArmSpec& arm : arms) {
        arm.schedule.validate();
        if (arm.schedule.total_epochs != train.epochs) {
            throw ValidationError("arm '" + arm.name + "': E = " +
                                  std::to_string(arm.schedule.total_epochs) +
                                  " does not match train.epochs = " + std::to_string(train.epochs));
        }
        if (!names.insert(arm.name).second) {
            throw ValidationError("duplicate arm name '" + arm.name + "'");
        }
    }
    if (const auto* synth = std::get_if<SynthConfig>(&data)) synth->validate();
}

ExperimentConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir,
                                   std::optional<std::uint64_t> seed_override) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, static_cast<std::size_t>(e.mark.line) + 1);
    }
    if (!root.IsMap()) throw ParseError("config must be a mapping");
    reject_unknown(root, "", {"seed", "folds", "val_fraction", "output_dir", "data", "train", "arms"});

    ExperimentConfig config;
    if (root["seed"]) config.master_seed = as_seed(root["seed"], "seed");
    if (seed_override) config.master_seed = *seed_override;
    if (root["folds"]) config.folds = as_int(root["folds"], "folds");
    if (root["val_fraction"]) config.val_fraction = as_double(root["val_fraction"], "val_fraction");
    if (root["output_dir"]) {
        config.output_dir = scalar<std::string>(root["output_dir"], "output_dir", "a path");
    }

    const YAML::Node data = root["data"];
    if (!data) throw ParseError("missing required key 'data'");
    require_map(data, "data");
    reject_unknown(data, "data", {"synthetic", "csv"});
    if (data["synthetic"] && data["csv"]) {
        throw ParseError("data: give exactly one of 'synthetic' or 'csv'", line_of(data));
    }
    if (data["csv"]) {
        std::filesystem::path csv = scalar<std::string>(data["csv"], "data.csv", "a path");
        if (csv.is_relative() && !base_dir.empty()) csv = base_dir / csv;
        config.data = csv;
    } else if (data["synthetic"]) {
        config.data = parse_synthetic(data["synthetic"], config.master_seed);
    } else {
        throw ParseError("data: give exactly one of 'synthetic' or 'csv'", line_of(data));
    }

    if (const YAML::Node train = root["train"]) {
        require_map(train, "train");
        reject_unknown(train, "train", {"epochs", "learning_rate", "batch_size", "hidden"});
        if (train["epochs"]) config.train.epochs = as_int(train["epochs"], "train.epochs");
        if (train["learning_rate"]) {
            config.train.learning_rate = as_double(train["learning_rate"], "train.learning_rate");
        }
        if (train["batch_size"]) config.train.batch_size = as_int(train["batch_size"], "train.batch_size");
        if (train["hidden"]) config.train.hidden_sizes = as_int_list(train["hidden"], "train.hidden");
    }

    const YAML::Node arms = root["arms"];
    if (!arms) throw ParseError("missing required key 'arms'");
    if (!arms.IsSequence() || arms.size() == 0) {
        throw ParseError("arms: expected a non-empty list", line_of(arms));
    }
    for (std::size_t i = 0; i < arms.size(); ++i) {
        config.arms.push_back(parse_arm(arms[i], i, config.train.epochs));
    }

    try {
        config.validate();
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
    return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path,
                              std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.parent_path(), seed_override);
}

std::string config_to_yaml(const ExperimentConfig& config) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "seed" << YAML::Value << config.master_seed;
    out << YAML::Key << "folds" << YAML::Value << config.folds;
    out << YAML::Key << "val_fraction" << YAML::Value << config.val_fraction;
    out << YAML::Key << "data" << YAML::Value << YAML::BeginMap;
    if (const auto* synth = std::get_if<SynthConfig>(&config.data)) {
        out << YAML::Key << "synthetic" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "counts" << YAML::Value << YAML::Flow << YAML::BeginSeq
            << synth->counts[0] << synth->counts[1] << synth->counts[2] << YAML::EndSeq;
        out << YAML::Key << "feature_dim" << YAML::Value << synth->feature_dim;
        out << YAML::Key << "separation" << YAML::Value << synth->separation;
        out << YAML::Key << "overlap" << YAML::Value << synth->overlap;
        out << YAML::Key << "noise" << YAML::Value << synth->noise;
        out << YAML::Key << "seed" << YAML::Value << synth->seed;
        out << YAML::EndMap;
    } else {
        out << YAML::Key << "csv" << YAML::Value
            << std::get<std::filesystem::path>(config.data).string();
    }
    out << YAML::EndMap;
    out << YAML::Key << "train" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "epochs" << YAML::Value << config.train.epochs;
    out << YAML::Key << "learning_rate" << YAML::Value << config.train.learning_rate;
    out << YAML::Key << "batch_size" << YAML::Value << config.train.batch_size;
    out << YAML::Key << "hidden" << YAML::Value << YAML::Flow << config.train.hidden_sizes;
    out << YAML::EndMap;
    out << YAML::Key << "arms" << YAML::Value << YAML::BeginSeq;
    for (const ArmSpec& arm : config.arms) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << arm.name;
        out << YAML::Key << "kind" << YAML::Value << std::string(to_string(arm.schedule.kind));
        out << YAML::Key << "L" << YAML::Value << arm.schedule.switch_epoch;
        out << YAML::Key << "E" << YAML::Value << arm.schedule.total_epochs;
        out << YAML::Key << "epsilon" << YAML::Value << arm.schedule.epsilon;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace curricula

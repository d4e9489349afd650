#pragma once

#include "sfrj/ann.hpp"
#include "sfrj/combustor.hpp"
#include "sfrj/harness.hpp"

#include <map>
#include <string>

namespace sfrj {

// Whole-run configuration, loadable from a single JSON file. Every key is
// optional (defaults below), unknown keys are rejected with their path.
struct AppConfig {
    PlantConfig plant;
    TrainConfig train;
    int hidden_nodes = 20;
    Activation activation = Activation::Sigmoid;
    int points_per_axis = 20;
    double dataset_mach = 3.25;
    LoopConfig loop;
    std::map<std::string, CommandSignal> scenarios;

    static AppConfig defaults();
    static AppConfig from_file(const std::string& path);
    static AppConfig from_json_text(const std::string& text);

    // effective configuration, suitable for the run manifest
    std::string to_json_text() const;

    const CommandSignal& scenario(const std::string& name) const;
};

} // namespace sfrj

#pragma once

#include <nlohmann/json.hpp>

#include "gabp/classifier.hpp"
#include "gabp/dataset.hpp"

namespace gabp {

using json = nlohmann::ordered_json;

/// One run's outcome for reporting: the measured error, solver diagnostics,
/// wall time, and an echo of every effective configuration value. All
/// fields serialize losslessly (doubles round-trip exactly).
struct RunReport {
    double error_rate = 0.0;
    int iterations_used = 0;
    bool converged = false;
    double wall_time_seconds = 0.0;
    json config_echo = json::object();

    json to_json() const;
    static RunReport from_json(const json& j);
};

/// Classifies the test set with the model and reports the misclassification
/// fraction together with the model's training diagnostics. Wall time and
/// the config echo are left for the caller to fill.
RunReport evaluate(const TrainedModel& model, const Dataset& test);

}  // namespace gabp

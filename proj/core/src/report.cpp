#include "gabp/report.hpp"

#include <string>

namespace gabp {

json RunReport::to_json() const {
    json j = json::object();
    j["error_rate"] = error_rate;
    j["iterations_used"] = iterations_used;
    j["converged"] = converged;
    j["wall_time_seconds"] = wall_time_seconds;
    j["config"] = config_echo;
    return j;
}

RunReport RunReport::from_json(const json& j) {
    RunReport report;
    report.error_rate = j.at("error_rate").get<double>();
    report.iterations_used = j.at("iterations_used").get<int>();
    report.converged = j.at("converged").get<bool>();
    report.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    report.config_echo = j.value("config", json::object());
    return report;
}

RunReport evaluate(const TrainedModel& model, const Dataset& test) {
    if (test.points.empty()) {
        throw InvalidArgument("evaluate: empty test set");
    }
    const PredictionReport predictions = predict(model, test.points);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < test.points.size(); ++i) {
        if (predictions.labels[i] != test.points[i].label) {
            ++wrong;
        }
    }
    RunReport report;
    report.error_rate =
        static_cast<double>(wrong) / static_cast<double>(test.points.size());
    report.iterations_used = model.diagnostics.iterations_used;
    report.converged = model.diagnostics.converged;
    return report;
}

}  // namespace gabp

#include "gabp/model_io.hpp"

#include <fstream>
#include <utility>
#include <vector>

namespace gabp {

namespace {

using nlohmann::ordered_json;

ordered_json kernel_to_json(const KernelSpec& spec) {
    ordered_json j = ordered_json::object();
    switch (spec.family()) {
        case KernelFamily::linear:
            j["family"] = "linear";
            break;
        case KernelFamily::rbf:
            j["family"] = "rbf";
            j["gamma"] = spec.rbf_gamma();
            break;
        case KernelFamily::polynomial:
            j["family"] = "poly";
            j["degree"] = spec.poly_degree();
            j["coef0"] = spec.poly_coef0();
            break;
    }
    j["bias"] = spec.bias_constant();
    return j;
}

KernelSpec kernel_from_json(const ordered_json& j) {
    const std::string family = j.at("family").get<std::string>();
    const double bias = j.at("bias").get<double>();
    if (family == "linear") {
        return KernelSpec::linear(bias);
    }
    if (family == "rbf") {
        return KernelSpec::rbf(j.at("gamma").get<double>(), bias);
    }
    if (family == "poly") {
        return KernelSpec::polynomial(j.at("degree").get<int>(),
                                      j.at("coef0").get<double>(), bias);
    }
    throw InvalidArgument("unknown kernel family '" + family + "'");
}

}  // namespace

nlohmann::ordered_json model_to_json(const ModelFile& file) {
    const TrainedModel& model = file.model;
    ordered_json j = ordered_json::object();
    j["format"] = "gabp-model";
    j["version"] = 1;
    j["kernel"] = kernel_to_json(model.kernel);
    j["sv_threshold"] = model.sv_threshold;
    j["weights"] = model.weights.values();
    j["support_indices"] = model.support_indices;

    ordered_json training = ordered_json::object();
    std::vector<double> labels;
    ordered_json features = ordered_json::array();
    labels.reserve(model.training_points.size());
    for (const SamplePoint& p : model.training_points) {
        labels.push_back(p.label);
        features.push_back(p.features.values());
    }
    training["labels"] = labels;
    training["features"] = std::move(features);
    j["training"] = std::move(training);

    ordered_json diag = ordered_json::object();
    diag["iterations_used"] = model.diagnostics.iterations_used;
    diag["converged"] = model.diagnostics.converged;
    diag["final_delta"] = model.diagnostics.final_delta;
    diag["spectral_radius_estimate"] =
        model.diagnostics.loaded_matrix.spectral_radius_estimate;
    diag["is_diagonally_dominant"] =
        model.diagnostics.loaded_matrix.is_diagonally_dominant;
    diag["dominance_margin"] = model.diagnostics.loaded_matrix.dominance_margin;
    j["diagnostics"] = std::move(diag);

    if (file.scaling.has_value()) {
        ordered_json scaling = ordered_json::object();
        scaling["mins"] = file.scaling->mins;
        scaling["ranges"] = file.scaling->ranges;
        j["scaling"] = std::move(scaling);
    } else {
        j["scaling"] = nullptr;
    }
    j["provenance"] = file.provenance;
    return j;
}

ModelFile model_from_json(const nlohmann::ordered_json& j) {
    if (j.value("format", "") != "gabp-model") {
        throw InvalidArgument("not a gabp model record");
    }
    ModelFile file;
    TrainedModel& model = file.model;
    model.kernel = kernel_from_json(j.at("kernel"));
    model.sv_threshold = j.at("sv_threshold").get<double>();
    model.weights = Vector(j.at("weights").get<std::vector<double>>());
    model.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();

    const auto labels = j.at("training").at("labels").get<std::vector<double>>();
    const auto& features = j.at("training").at("features");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        model.training_points.push_back(SamplePoint{
            Vector(features.at(i).get<std::vector<double>>()), labels[i]});
    }

    const auto& diag = j.at("diagnostics");
    model.diagnostics.iterations_used = diag.at("iterations_used").get<int>();
    model.diagnostics.converged = diag.at("converged").get<bool>();
    model.diagnostics.final_delta = diag.at("final_delta").get<double>();
    model.diagnostics.loaded_matrix.spectral_radius_estimate =
        diag.at("spectral_radius_estimate").get<double>();
    model.diagnostics.loaded_matrix.is_diagonally_dominant =
        diag.at("is_diagonally_dominant").get<bool>();
    model.diagnostics.loaded_matrix.dominance_margin =
        diag.at("dominance_margin").get<double>();

    if (!j.at("scaling").is_null()) {
        ScalingParams scaling;
        scaling.mins = j.at("scaling").at("mins").get<std::vector<double>>();
        scaling.ranges = j.at("scaling").at("ranges").get<std::vector<double>>();
        file.scaling = std::move(scaling);
    }
    file.provenance = j.value("provenance", "");
    return file;
}

void save_model(const std::filesystem::path& path, const ModelFile& file) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out << model_to_json(file).dump(2) << '\n';
    if (!out) {
        throw Error("failed writing model to '" + path.string() + "'");
    }
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed model file '" + path.string() + "': " + e.what());
    }
    return model_from_json(j);
}

}  // namespace gabp

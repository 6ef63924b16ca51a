#include "model_io.hpp"

#include <fstream>
#include <numbers>
#include <stdexcept>

namespace cavity::cli {

namespace {

std::optional<double> number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string("model field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

}  // namespace

nlohmann::ordered_json model_to_json(const CavityModel& model) {
    const ModelSpec s = model.spec();
    nlohmann::ordered_json j;
    j["family"] = to_string(model.family());
    if (model.family() == Family::static_cavity) {
        j["L"] = model.length();
    } else {
        j["M"] = s.M;
        if (s.theta) j["theta"] = *s.theta;
        if (s.v0 && model.family() == Family::homographic) j["v0"] = *s.v0;
        if (s.v1) j["v1"] = *s.v1;
    }
    j["T"] = model.period();
    j["derived"] = {
        {"length", model.length()},
        {"omega", model.omega()},
        {"omega_ratio", model.omega_ratio()},
        {"vmax", model.vmax()},
        {"amplitude_ratio", model.amplitude() / model.length()},
        {"map_class", to_string(model.map_class().kind)},
    };
    return j;
}

ModelSpec spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("model JSON must be an object");
    if (!j.contains("family") || !j.at("family").is_string()) {
        throw std::invalid_argument("model JSON needs a string field 'family'");
    }
    ModelSpec s;
    s.family = family_from_string(j.at("family").get<std::string>());
    if (j.contains("M")) {
        if (!j.at("M").is_number_integer()) throw std::invalid_argument("model field 'M' must be an integer");
        s.M = j.at("M").get<int>();
    }
    s.theta = number(j, "theta");
    s.v0 = number(j, "v0");
    s.v1 = number(j, "v1");
    s.length = number(j, "L");
    if (auto T = number(j, "T")) s.T = *T;
    return s;
}

ModelSpec spec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("model file " + path + ": " + e.what());
    }
    return spec_from_json(j);
}

ModelSpec default_spec(Family family) {
    ModelSpec s;
    s.family = family;
    switch (family) {
        case Family::static_cavity:
            s.length = std::numbers::pi;
            break;
        case Family::linear_finite:
            s.M = 2;
            s.theta = std::numbers::pi / 4;
            break;
        case Family::linear_odd:
            s.M = 2;
            s.theta = 0.3;
            break;
        case Family::inversion:
            s.M = 1;
            s.theta = std::numbers::pi / 6;
            break;
        case Family::homographic:
            s.M = 1;
            s.v0 = 1.0;
            s.v1 = 2.0;
            break;
    }
    return s;
}

}  // namespace cavity::cli

#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kaclab/distributions.hpp"

namespace kaclab {

/// Custom discrete law from the JSON schema
///   {"name": str, "atoms": [[value, mass_num, mass_den], ...]}
/// with masses given as exact rationals.
inline CoefficientLaw law_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("atoms"))
        throw std::invalid_argument("law config: expected {\"name\", \"atoms\"}");
    CoefficientLaw law;
    law.name = j.at("name").get<std::string>();
    law.kind = LawKind::DiscreteAtoms;
    for (const auto& entry : j.at("atoms")) {
        if (!entry.is_array() || entry.size() != 3)
            throw std::invalid_argument("law config: atom entries are [value, mass_num, mass_den]");
        double value = entry.at(0).get<double>();
        auto num = entry.at(1).get<long long>();
        auto den = entry.at(2).get<long long>();
        if (den <= 0) throw std::invalid_argument("law config: mass denominator must be positive");
        law.atoms.push_back({value, Rational(num, den)});
    }
    law.finalize();
    return law;
}

inline CoefficientLaw law_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("law config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return law_from_json(j);
}

inline nlohmann::json law_to_json(const CoefficientLaw& law) {
    nlohmann::json j;
    j["name"] = law.name;
    if (law.kind == LawKind::DiscreteAtoms) {
        nlohmann::json atoms = nlohmann::json::array();
        for (const auto& a : law.atoms) {
            atoms.push_back({a.value, a.mass.convert_to<std::string>()});
        }
        j["atoms"] = atoms;
    } else {
        j["builtin"] = law.builtin == BuiltinDensity::Gaussian ? "gaussian" : "uniform-sym";
    }
    return j;
}

}  // namespace kaclab

#include "coherent/report_json.hpp"

namespace coherent {

namespace {

nlohmann::json atom_json(const WeightedAtom& a) {
    nlohmann::json j{{"x", a.point.x.str()}, {"y", a.point.y.str()}, {"w", a.weight.str()}};
    if (a.label == AtomLabel::diagonal) j["label"] = "diag";
    if (a.label == AtomLabel::graph) j["label"] = "graph";
    return j;
}

nlohmann::json signed_part_json(const std::vector<std::pair<Point2, Rational>>& part) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [p, w] : part)
        arr.push_back({{"x", p.x.str()}, {"y", p.y.str()}, {"w", w.str()}});
    return arr;
}

}  // namespace

nlohmann::json to_json(const DiscreteMeasure& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& a : m.atoms()) arr.push_back(atom_json(a));
    return arr;
}

nlohmann::json to_json(const RepresentationPair& rep) {
    return {{"mu", to_json(rep.mu)}, {"nu", to_json(rep.nu)}};
}

nlohmann::json to_json(const SignedPair& sp) {
    return {{"mu", signed_part_json(sp.mu_part)}, {"nu", signed_part_json(sp.nu_part)}};
}

nlohmann::json to_json(const CoherenceReport& report) {
    nlohmann::json j{{"feasible", report.feasible}, {"defect", report.defect.str()}};
    j["representation"] =
        report.representation ? to_json(*report.representation) : nlohmann::json();
    return j;
}

nlohmann::json to_json(const ExtremalityReport& report) {
    nlohmann::json j{{"coherent", report.coherent},
                     {"unique", report.unique},
                     {"minimal", report.minimal},
                     {"extreme", report.extreme},
                     {"defect", report.defect.str()},
                     {"null_space_dim", report.null_space_dim}};
    j["representation"] =
        report.representation ? to_json(*report.representation) : nlohmann::json();
    j["witness_alt_representation"] = report.witness_alt_representation
                                          ? to_json(*report.witness_alt_representation)
                                          : nlohmann::json();
    j["witness_null_direction"] =
        report.witness_null_direction ? to_json(*report.witness_null_direction)
                                      : nlohmann::json();
    j["witness_epsilon"] =
        report.witness_epsilon ? nlohmann::json(report.witness_epsilon->str()) : nlohmann::json();
    return j;
}

nlohmann::json to_json(const Histogram& h) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : h.values) values.push_back(v.str());
    return {{"domain_length", h.domain_length.str()}, {"values", values}};
}

DiscreteMeasure measure_from_json(const nlohmann::json& j) {
    std::vector<WeightedAtom> atoms;
    for (const auto& a : j) {
        AtomLabel label = AtomLabel::none;
        if (a.contains("label")) {
            const std::string name = a["label"].get<std::string>();
            if (name == "diag") label = AtomLabel::diagonal;
            else if (name == "graph") label = AtomLabel::graph;
            else throw std::invalid_argument("unknown atom label '" + name + "'");
        }
        atoms.push_back({Point2(Rational::parse(a.at("x").get<std::string>()),
                                Rational::parse(a.at("y").get<std::string>())),
                         Rational::parse(a.at("w").get<std::string>()), label});
    }
    return DiscreteMeasure(std::move(atoms));
}

}  // namespace coherent

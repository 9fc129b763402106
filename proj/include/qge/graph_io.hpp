#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qge/graph.hpp"

namespace qge {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::Standard ? "standard" : "dirichlet";
}

inline BoundaryCondition bc_from_string(const std::string& s) {
    if (s == "standard") return BoundaryCondition::Standard;
    if (s == "dirichlet") return BoundaryCondition::Dirichlet;
    throw ParseError("unknown boundary condition kind: \"" + s + "\"");
}

inline nlohmann::json to_json(const MetricGraph& g) {
    nlohmann::json j;
    j["version"] = 1;
    j["vertices"] = g.vertices;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) {
        j["edges"].push_back(
            {{"a", e.a}, {"b", e.b}, {"length", e.length}, {"phase", e.phase}});
    }
    j["leads"] = nlohmann::json::array();
    for (const auto& l : g.leads) {
        j["leads"].push_back({{"id", l.id}, {"vertex", l.vertex}});
    }
    j["bc"] = nlohmann::json::object();
    for (const auto& [v, bc] : g.bc) j["bc"][v] = to_string(bc);
    return j;
}

inline MetricGraph graph_from_json(const nlohmann::json& j) {
    try {
        if (!j.contains("version") || !j["version"].is_number_integer()) {
            throw ParseError("graph file missing integer \"version\"");
        }
        if (j["version"].get<int>() != 1) {
            throw ParseError("unsupported graph file version " +
                             j["version"].dump());
        }
        MetricGraph g;
        g.vertices = j.at("vertices").get<std::vector<std::string>>();
        for (const auto& je : j.at("edges")) {
            Edge e;
            e.a = je.at("a").get<std::string>();
            e.b = je.at("b").get<std::string>();
            e.length = je.at("length").get<double>();
            e.phase = je.value("phase", 0.0);
            g.edges.push_back(e);
        }
        for (const auto& jl : j.at("leads")) {
            g.leads.push_back({jl.at("id").get<int>(),
                               jl.at("vertex").get<std::string>()});
        }
        if (j.contains("bc")) {
            for (const auto& [v, kind] : j.at("bc").items()) {
                g.bc[v] = bc_from_string(kind.get<std::string>());
            }
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed graph file: ") + e.what());
    }
}

inline MetricGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed graph file: ") + e.what());
    }
    return graph_from_json(j);
}

inline void save_graph(const MetricGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    out << to_json(g).dump(2) << '\n';
}

} // namespace qge

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qge {

/// Vertex coupling at a graph vertex. Standard (Neumann-Kirchhoff) gives
/// the vertex matrix (2/d)J - I; Dirichlet gives -I.
enum class BoundaryCondition {
    Standard,
    Dirichlet,
};

struct Edge {
    std::string a;
    std::string b;
    double length = 0.0;
    double phase = 0.0; // additive phase on k*length, per traversal
};

struct Lead {
    int id = 0;
    std::string vertex;
};

/// Open metric graph: vertices, weighted internal edges, semi-infinite
/// leads, and a boundary condition per vertex. Lead list order fixes the
/// scattering channel labels 0..c-1. Immutable by convention after
/// construction; all operations return copies.
struct MetricGraph {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<Lead> leads;
    std::map<std::string, BoundaryCondition> bc;

    bool has_vertex(const std::string& v) const {
        return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }

    BoundaryCondition bc_of(const std::string& v) const {
        auto it = bc.find(v);
        return it == bc.end() ? BoundaryCondition::Standard : it->second;
    }

    /// Leads count toward the degree.
    int degree(const std::string& v) const {
        int d = 0;
        for (const auto& e : edges) {
            if (e.a == v) ++d;
            if (e.b == v) ++d;
        }
        for (const auto& l : leads) {
            if (l.vertex == v) ++d;
        }
        return d;
    }
};

struct Violation {
    std::string field;
    std::string rule;
    bool warning = false; // warnings do not block the solver
};

/// Checks every structural invariant; returns diagnostics instead of
/// throwing. An empty list means the graph is well formed. Disconnected
/// lead pairs are reported as warnings (transmission is identically zero,
/// which is physical, just probably not what the caller wanted).
inline std::vector<Violation> validate(const MetricGraph& g) {
    std::vector<Violation> out;

    std::set<std::string> vset(g.vertices.begin(), g.vertices.end());
    if (vset.size() != g.vertices.size()) {
        out.push_back({"vertices", "vertex ids must be unique"});
    }

    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        const std::string field = "edges[" + std::to_string(i) + "]";
        if (!(e.length > 0.0) || !std::isfinite(e.length)) {
            out.push_back({field + ".length",
                           "edge length must be finite and strictly positive"});
        }
        if (!std::isfinite(e.phase)) {
            out.push_back({field + ".phase", "edge phase must be finite"});
        }
        if (!vset.count(e.a) || !vset.count(e.b)) {
            out.push_back({field, "edge endpoints must be existing vertices"});
        }
        if (e.a == e.b) {
            out.push_back({field, "self-loop edges are not supported"});
        }
    }

    std::set<int> lead_ids;
    for (std::size_t i = 0; i < g.leads.size(); ++i) {
        const auto& l = g.leads[i];
        const std::string field = "leads[" + std::to_string(i) + "]";
        if (!vset.count(l.vertex)) {
            out.push_back({field, "lead must attach to an existing vertex"});
        }
        if (!lead_ids.insert(l.id).second) {
            out.push_back({field, "lead ids must be unique"});
        }
    }

    for (const auto& [v, _] : g.bc) {
        if (!vset.count(v)) {
            out.push_back({"bc." + v, "boundary condition names unknown vertex"});
        }
    }

    // Two-channel graphs need the leads on two distinct vertices, and a
    // path of internal edges between them (the latter is only a warning).
    if (g.leads.size() == 2) {
        if (g.leads[0].vertex == g.leads[1].vertex) {
            out.push_back({"leads",
                           "two-channel graph needs leads on two distinct vertices"});
        } else if (vset.count(g.leads[0].vertex) && vset.count(g.leads[1].vertex)) {
            // union-find over internal edges
            std::map<std::string, std::string> parent;
            for (const auto& v : g.vertices) parent[v] = v;
            auto find = [&](std::string v) {
                while (parent[v] != v) v = parent[v];
                return v;
            };
            for (const auto& e : g.edges) {
                if (vset.count(e.a) && vset.count(e.b)) {
                    parent[find(e.a)] = find(e.b);
                }
            }
            if (find(g.leads[0].vertex) != find(g.leads[1].vertex)) {
                out.push_back({"edges",
                               "lead-bearing vertices are not connected; "
                               "transmission is identically zero",
                               true});
            }
        }
    }

    return out;
}

inline bool has_errors(const std::vector<Violation>& vs) {
    return std::any_of(vs.begin(), vs.end(),
                       [](const Violation& v) { return !v.warning; });
}

/// Requires exactly two leads; anything else is a violation on top of the
/// general ones.
inline std::vector<Violation> validate_two_channel(const MetricGraph& g) {
    auto out = validate(g);
    if (g.leads.size() != 2) {
        out.push_back({"leads", "two-channel graph must have exactly 2 leads, got " +
                                    std::to_string(g.leads.size())});
    }
    return out;
}

/// Star graph of Fig-5(a) shape: hub v2 with arms to v1 (lead), v3
/// (dead end) and v4 (lead). Standard boundary conditions everywhere.
inline MetricGraph make_star4(double l12, double l23, double l24) {
    if (!(l12 > 0.0) || !(l23 > 0.0) || !(l24 > 0.0)) {
        throw std::invalid_argument("make_star4: all edge lengths must be positive");
    }
    MetricGraph g;
    g.vertices = {"v1", "v2", "v3", "v4"};
    g.edges = {{"v1", "v2", l12, 0.0}, {"v2", "v3", l23, 0.0}, {"v2", "v4", l24, 0.0}};
    g.leads = {{0, "v1"}, {1, "v4"}};
    for (const auto& v : g.vertices) g.bc[v] = BoundaryCondition::Standard;
    return g;
}

/// Copy of the graph with the phase on one edge replaced (not added).
inline MetricGraph with_edge_phase(const MetricGraph& g, std::size_t edge_index,
                                   double phi) {
    if (edge_index >= g.edges.size()) {
        throw std::out_of_range("with_edge_phase: no edge with index " +
                                std::to_string(edge_index));
    }
    MetricGraph out = g;
    out.edges[edge_index].phase = phi;
    return out;
}

} // namespace qge

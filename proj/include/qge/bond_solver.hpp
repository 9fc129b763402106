#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qge/graph.hpp"
#include "qge/smatrix.hpp"

namespace qge {

/// Thrown when the internal bond-scattering system is (numerically)
/// singular at the requested wavenumber.
struct ResonanceError : std::runtime_error {
    double k;
    explicit ResonanceError(double k_)
        : std::runtime_error("resonance at k = " + std::to_string(k_) +
                             ": internal scattering system is singular"),
          k(k_) {}
};

struct SolverOptions {
    double max_condition = 1e12;
};

namespace detail {

// Port bookkeeping for one vertex: leads first (in lead-list order), then
// directed-bond starts (in edge-list order, a-side before b-side).
struct VertexPorts {
    std::vector<int> lead_channels; // channel index per lead port
    std::vector<int> out_bonds;     // directed bond leaving through this port
    std::vector<int> in_bonds;      // reverse bond arriving at this port
};

} // namespace detail

/// Global S-matrix of an open graph by solving the directed-bond linear
/// system. Each internal edge {u,v} carries two directed bonds; a bond
/// amplitude propagates with e^{i(k*length + phase)} and is rescattered
/// at its terminal vertex through that vertex's boundary matrix. Lead
/// injection is a unit incident amplitude on the input channel.
inline FullSMatrix global_smatrix(const MetricGraph& g, double k,
                                  const SolverOptions& opts = {}) {
    {
        auto vs = validate(g);
        if (has_errors(vs)) {
            std::string msg = "global_smatrix: invalid graph:";
            for (const auto& v : vs) {
                if (!v.warning) msg += " [" + v.field + ": " + v.rule + "]";
            }
            throw std::invalid_argument(msg);
        }
    }
    if (!(k > 0.0)) throw std::invalid_argument("global_smatrix: k must be positive");

    const int n_channels = static_cast<int>(g.leads.size());
    const int n_bonds = 2 * static_cast<int>(g.edges.size());

    // Directed bond 2*e is a->b of edge e; 2*e+1 is b->a.
    std::map<std::string, detail::VertexPorts> ports;
    for (int c = 0; c < n_channels; ++c) {
        ports[g.leads[c].vertex].lead_channels.push_back(c);
    }
    std::vector<complexd> bond_phase(n_bonds);
    std::vector<std::string> bond_end(n_bonds);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        const complexd ph = std::polar(1.0, k * edge.length + edge.phase);
        bond_phase[2 * e] = bond_phase[2 * e + 1] = ph;
        bond_end[2 * e] = edge.b;
        bond_end[2 * e + 1] = edge.a;
        auto& pa = ports[edge.a];
        pa.out_bonds.push_back(static_cast<int>(2 * e));
        pa.in_bonds.push_back(static_cast<int>(2 * e + 1));
        auto& pb = ports[edge.b];
        pb.out_bonds.push_back(static_cast<int>(2 * e + 1));
        pb.in_bonds.push_back(static_cast<int>(2 * e));
    }

    // a = M a + B, one injection column per channel.
    Eigen::MatrixXcd system =
        Eigen::MatrixXcd::Identity(n_bonds, n_bonds);
    Eigen::MatrixXcd inject = Eigen::MatrixXcd::Zero(n_bonds, n_channels);

    for (const auto& [vname, vp] : ports) {
        const int n_leads = static_cast<int>(vp.lead_channels.size());
        const int deg = n_leads + static_cast<int>(vp.out_bonds.size());
        const Eigen::MatrixXcd sigma = vertex_matrix(deg, g.bc_of(vname));
        // Port order: leads, then bonds. Incoming on bond port j is the
        // propagated amplitude of the reverse bond.
        for (std::size_t i = 0; i < vp.out_bonds.size(); ++i) {
            const int row = vp.out_bonds[i];
            const int pi = n_leads + static_cast<int>(i);
            for (int c = 0; c < n_leads; ++c) {
                inject(row, vp.lead_channels[c]) = sigma(pi, c);
            }
            for (std::size_t j = 0; j < vp.in_bonds.size(); ++j) {
                const int col = vp.in_bonds[j];
                const int pj = n_leads + static_cast<int>(j);
                system(row, col) -= sigma(pi, pj) * bond_phase[col];
            }
        }
    }

    Eigen::MatrixXcd amps; // bond amplitudes per input channel
    if (n_bonds > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
            system, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        if (!(smin > 0.0) || smax / smin > opts.max_condition) {
            throw ResonanceError(k);
        }
        amps = svd.solve(inject);
    } else {
        amps.resize(0, n_channels);
    }

    // Outgoing lead amplitudes: rescatter incoming leads and propagated
    // bonds through the lead rows of each vertex matrix.
    FullSMatrix out;
    out.k = k;
    out.entries = Eigen::MatrixXcd::Zero(n_channels, n_channels);
    for (const auto& [vname, vp] : ports) {
        const int n_leads = static_cast<int>(vp.lead_channels.size());
        if (n_leads == 0) continue;
        const int deg = n_leads + static_cast<int>(vp.out_bonds.size());
        const Eigen::MatrixXcd sigma = vertex_matrix(deg, g.bc_of(vname));
        for (int f = 0; f < n_leads; ++f) {
            const int row = vp.lead_channels[f];
            for (int c = 0; c < n_leads; ++c) {
                out.entries(row, vp.lead_channels[c]) += sigma(f, c);
            }
            for (std::size_t j = 0; j < vp.in_bonds.size(); ++j) {
                const int b = vp.in_bonds[j];
                const int pj = n_leads + static_cast<int>(j);
                out.entries.row(row) +=
                    sigma(f, pj) * bond_phase[b] * amps.row(b);
            }
        }
    }
    return out;
}

/// Convenience wrapper for two-channel graphs.
inline ChannelSMatrix channel_smatrix(const MetricGraph& g, double k,
                                      const SolverOptions& opts = {}) {
    {
        auto vs = validate_two_channel(g);
        if (has_errors(vs)) {
            throw std::invalid_argument(
                "channel_smatrix: graph is not a valid two-channel graph");
        }
    }
    return as_channel(global_smatrix(g, k, opts));
}

} // namespace qge

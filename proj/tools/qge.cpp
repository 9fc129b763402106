// qge: quantum-graph entanglement toolbox.
//
// Subcommands:
//   smatrix    evaluate the global S-matrix of a two-channel graph file
//   sweep      entropy surface over a 3-axis grid (CSV or JSON)
//   gates      synthesize and verify Table-of-gates star parameters
//   solve-phi  edge-phase solution of tan(y) tan(y+phi) = -4
//
// Exit codes: 0 success, 1 numerical failure, 2 usage/input error.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qge/qge.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numeric = 1;
constexpr int exit_usage = 2;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

struct KRange {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;
};

KRange parse_krange(const std::string& s) {
    KRange r;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(s);
    if (!(in >> r.lo >> colon1 >> r.hi >> colon2 >> r.steps) || colon1 != ':' ||
        colon2 != ':' || r.steps < 1 || !(r.lo <= r.hi)) {
        throw CLI::ValidationError("--k-range", "expected a:b:n with a <= b, n >= 1");
    }
    return r;
}

int run_smatrix(const std::string& graph_path, std::optional<double> k_single,
                std::optional<std::string> k_range_str, bool skip_resonances,
                const std::string& out_path) {
    qge::MetricGraph g;
    try {
        g = qge::load_graph(graph_path);
    } catch (const qge::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    const auto violations = qge::validate_two_channel(g);
    if (qge::has_errors(violations)) {
        for (const auto& v : violations) {
            if (!v.warning) std::cerr << "invalid graph: " << v.field << ": " << v.rule << '\n';
        }
        return exit_usage;
    }
    for (const auto& v : violations) {
        if (v.warning) std::cerr << "warning: " << v.field << ": " << v.rule << '\n';
    }

    KRange kr;
    if (k_range_str) {
        kr = parse_krange(*k_range_str);
    } else if (k_single) {
        kr = {*k_single, *k_single, 1};
    } else {
        std::cerr << "error: one of --k or --k-range is required\n";
        return exit_usage;
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return exit_usage;
        }
        os = &file;
    }

    *os << "# qge " << qge::version << " smatrix graph=" << graph_path << '\n';
    *os << "# k,re_r,im_r,re_t,im_t,r2,t2,unitarity_residual\n";
    int rc = exit_ok;
    for (int i = 0; i < kr.steps; ++i) {
        const double k = kr.steps == 1
                             ? kr.lo
                             : kr.lo + (kr.hi - kr.lo) * i / (kr.steps - 1);
        try {
            const auto full = qge::global_smatrix(g, k);
            const auto s = qge::as_channel(full);
            *os << fmt17(k) << ',' << fmt17(s.r.real()) << ',' << fmt17(s.r.imag())
                << ',' << fmt17(s.t.real()) << ',' << fmt17(s.t.imag()) << ','
                << fmt17(std::norm(s.r)) << ',' << fmt17(std::norm(s.t)) << ','
                << fmt17(full.unitarity_residual()) << '\n';
        } catch (const qge::ResonanceError& e) {
            if (skip_resonances) {
                *os << "# skipped: " << e.what() << '\n';
            } else {
                std::cerr << "error: " << e.what() << '\n';
                rc = exit_numeric;
                break;
            }
        }
    }
    return rc;
}

struct SweepCli {
    std::string mode = "channel-phase";
    std::vector<std::string> grid;
    std::vector<std::string> fix;
    std::string format = "csv";
    std::string out_path;
};

int run_sweep(const SweepCli& cfg) {
    qge::SurfaceMode mode;
    if (cfg.mode == "channel-phase") {
        mode = qge::SurfaceMode::ChannelPhase;
    } else if (cfg.mode == "edge-phase") {
        mode = qge::SurfaceMode::EdgePhase;
    } else {
        std::cerr << "error: unknown mode \"" << cfg.mode << "\"\n";
        return exit_usage;
    }
    const auto names = qge::surface_axis_names(mode);

    std::array<qge::AxisSpec, 3> axes;
    std::array<bool, 3> have{false, false, false};
    auto axis_index = [&](const std::string& name) -> int {
        for (int i = 0; i < 3; ++i) {
            if (name == names[i]) return i;
        }
        return -1;
    };
    for (const auto& spec : cfg.grid) {
        const auto eq = spec.find('=');
        const int idx = eq == std::string::npos ? -1 : axis_index(spec.substr(0, eq));
        if (idx < 0) {
            std::cerr << "error: bad --grid \"" << spec << "\"; axes for mode " << cfg.mode
                      << " are " << names[0] << ", " << names[1] << ", " << names[2] << '\n';
            return exit_usage;
        }
        qge::AxisSpec ax;
        char c1 = 0, c2 = 0;
        std::istringstream in(spec.substr(eq + 1));
        if (!(in >> ax.min >> c1 >> ax.max >> c2 >> ax.steps) || c1 != ':' || c2 != ':') {
            std::cerr << "error: bad --grid \"" << spec << "\"; expected axis=min:max:steps\n";
            return exit_usage;
        }
        axes[idx] = ax;
        have[idx] = true;
    }
    for (const auto& spec : cfg.fix) {
        const auto eq = spec.find('=');
        const int idx = eq == std::string::npos ? -1 : axis_index(spec.substr(0, eq));
        double value = 0.0;
        if (idx < 0 ||
            !(std::istringstream(spec.substr(eq + 1)) >> value)) {
            std::cerr << "error: bad --fix \"" << spec << "\"; expected axis=value\n";
            return exit_usage;
        }
        axes[idx] = {value, value, 1};
        have[idx] = true;
    }
    for (int i = 0; i < 3; ++i) {
        if (!have[i]) {
            std::cerr << "error: axis " << names[i] << " needs a --grid or --fix\n";
            return exit_usage;
        }
    }

    std::vector<qge::SurfaceRow> rows;
    try {
        rows = qge::entropy_surface(mode, axes);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << cfg.out_path << '\n';
            return exit_usage;
        }
        os = &file;
    }

    std::ostringstream config_echo;
    config_echo << "mode=" << cfg.mode;
    for (int i = 0; i < 3; ++i) {
        config_echo << ' ' << names[i] << '=' << fmt17(axes[i].min) << ':'
                    << fmt17(axes[i].max) << ':' << axes[i].steps;
    }

    if (cfg.format == "csv") {
        *os << "# qge " << qge::version << " sweep schema=1\n";
        *os << "# " << config_echo.str() << '\n';
        *os << "# " << names[0] << ',' << names[1] << ',' << names[2]
            << ",lambda_plus,entropy\n";
        for (const auto& row : rows) {
            *os << fmt17(row.axes[0]) << ',' << fmt17(row.axes[1]) << ','
                << fmt17(row.axes[2]) << ',' << fmt17(row.lambda_plus) << ','
                << fmt17(row.entropy) << '\n';
        }
    } else if (cfg.format == "json") {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["tool"] = std::string("qge ") + qge::version;
        j["config"] = config_echo.str();
        auto& jr = j["rows"] = nlohmann::json::array();
        for (const auto& row : rows) {
            jr.push_back({{names[0], row.axes[0]},
                          {names[1], row.axes[1]},
                          {names[2], row.axes[2]},
                          {"lambda_plus", row.lambda_plus},
                          {"entropy", row.entropy}});
        }
        *os << j.dump(1) << '\n';
    } else {
        std::cerr << "error: unknown format \"" << cfg.format << "\"\n";
        return exit_usage;
    }
    return exit_ok;
}

int run_gates(const std::string& name, int n_phi, int n_alpha, int n_beta,
              double delta, double alpha, const std::string& sign, double tol) {
    static const std::map<std::string, qge::Gate> known = {
        {"identity", qge::Gate::Identity},
        {"global-phase", qge::Gate::GlobalPhase},
        {"pauli-x", qge::Gate::PauliX},
        {"pauli-z", qge::Gate::PauliZ},
        {"hadamard", qge::Gate::Hadamard},
    };
    const auto it = known.find(name);
    if (it == known.end()) {
        std::cerr << "error: unknown gate \"" << name << "\"\n";
        return exit_usage;
    }
    if (sign != "plus" && sign != "minus") {
        std::cerr << "error: --sign must be plus or minus\n";
        return exit_usage;
    }
    qge::GateSpec spec{it->second, n_phi, n_alpha, n_beta, delta, alpha,
                       sign == "plus"};
    const auto report = qge::verify_gate(spec, tol);
    std::cout << "gate: " << name << '\n';
    std::cout << "x     = " << fmt17(report.params.x) << '\n';
    std::cout << "alpha = " << fmt17(report.params.alpha) << '\n';
    std::cout << "beta  = " << fmt17(report.params.beta) << '\n';
    std::cout << "achieved matrix:\n";
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const auto v = report.achieved(i, j);
            std::cout << "  (" << fmt17(v.real()) << ", " << fmt17(v.imag()) << ")";
        }
        std::cout << '\n';
    }
    std::cout << "deviation (up to global phase): " << fmt17(report.deviation) << '\n';
    std::cout << (report.passed ? "PASS" : "FAIL") << " (tol " << tol << ")\n";
    return report.passed ? exit_ok : exit_numeric;
}

int run_solve_phi(double kBl, int n) {
    const double phi = qge::solve_phi(kBl, n);
    const double residual = qge::phi_plugback_residual(kBl, phi);
    std::cout << "phi      = " << fmt17(phi) << '\n';
    std::cout << "residual = " << fmt17(residual) << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-graph entanglement toolbox"};
    app.set_version_flag("--version", std::string("qge ") + qge::version);
    app.require_subcommand(1);

    // smatrix
    auto* sm = app.add_subcommand("smatrix", "evaluate the global S-matrix of a graph file");
    std::string graph_path;
    std::optional<double> k_single;
    std::optional<std::string> k_range;
    bool skip_resonances = false;
    std::string sm_out;
    sm->add_option("--graph", graph_path, "graph description JSON")->required();
    sm->add_option("--k", k_single, "single wavenumber");
    sm->add_option("--k-range", k_range, "wavenumber range a:b:n");
    sm->add_flag("--skip-resonances", skip_resonances,
                 "skip singular wavenumbers instead of failing");
    sm->add_option("--out", sm_out, "output path (default stdout)");

    // sweep
    auto* sw = app.add_subcommand("sweep", "entropy surface over a 3-axis grid");
    SweepCli sweep_cfg;
    sw->add_option("--mode", sweep_cfg.mode, "channel-phase | edge-phase");
    sw->add_option("--grid", sweep_cfg.grid, "axis=min:max:steps (repeatable)");
    sw->add_option("--fix", sweep_cfg.fix, "axis=value (repeatable)");
    sw->add_option("--format", sweep_cfg.format, "csv | json");
    sw->add_option("--out", sweep_cfg.out_path, "output path (default stdout)");

    // gates
    auto* gt = app.add_subcommand("gates", "synthesize and verify a star-graph gate");
    std::string gate_name;
    int n_phi = 0, n_alpha = 0, n_beta = 0;
    double delta = 0.0, alpha = 0.0, gate_tol = 1e-10;
    std::string sign = "plus";
    gt->add_option("gate", gate_name,
                   "identity | global-phase | pauli-x | pauli-z | hadamard")
        ->required();
    gt->add_option("--n-phi", n_phi, "integer offset in x");
    gt->add_option("--n-alpha", n_alpha, "integer offset in alpha");
    gt->add_option("--n-beta", n_beta, "integer offset in beta");
    gt->add_option("--delta", delta, "global phase (global-phase gate)");
    gt->add_option("--alpha", alpha, "free alpha (pauli-x gate)");
    gt->add_option("--sign", sign, "hadamard branch: plus | minus");
    gt->add_option("--tol", gate_tol, "verification tolerance");

    // solve-phi
    auto* sp = app.add_subcommand("solve-phi", "phi with tan(y) tan(y+phi) = -4");
    double kBl = 0.0;
    int branch = 0;
    sp->add_option("kBl", kBl, "k_B * l argument")->required();
    sp->add_option("n", branch, "branch index (phi shifts by pi per step)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (sm->parsed()) {
            return run_smatrix(graph_path, k_single, k_range, skip_resonances, sm_out);
        }
        if (sw->parsed()) return run_sweep(sweep_cfg);
        if (gt->parsed()) {
            return run_gates(gate_name, n_phi, n_alpha, n_beta, delta, alpha, sign,
                             gate_tol);
        }
        if (sp->parsed()) return run_solve_phi(kBl, branch);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_usage;
}

#pragma once

#include <array>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qge/entanglement.hpp"
#include "qge/smatrix.hpp"

namespace qge {

enum class SurfaceMode {
    ChannelPhase, // axes: |t_A|^2, |t_B|^2, phi
    EdgePhase,    // axes: k_A*l, k_B*l, phi
};

struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    double value(int i) const {
        if (steps <= 1) return min;
        return min + (max - min) * static_cast<double>(i) /
                         static_cast<double>(steps - 1);
    }
};

struct SurfaceRow {
    std::array<double, 3> axes;
    double lambda_plus;
    double entropy;
};

inline std::array<const char*, 3> surface_axis_names(SurfaceMode mode) {
    if (mode == SurfaceMode::ChannelPhase) return {"tA2", "tB2", "phi"};
    return {"kAl", "kBl", "phi"};
}

/// Entropy and lambda_plus at a single grid point.
inline SurfaceRow surface_point(SurfaceMode mode, double a0, double a1, double a2) {
    double rA2, tA2, overlap2;
    if (mode == SurfaceMode::ChannelPhase) {
        tA2 = a0;
        rA2 = 1.0 - tA2;
        const double tB2 = a1;
        const complexd g = (1.0 - tB2) + std::polar(tB2, -a2);
        overlap2 = std::norm(g);
    } else {
        const auto [rA, tA] = rt_simplified(a0);
        const auto [rB, tB] = rt_simplified(a1);
        const auto [rBp, tBp] = rt_simplified(a1 + a2);
        rA2 = std::norm(rA);
        tA2 = std::norm(tA);
        overlap2 = std::norm(rB * std::conj(rBp) + tB * std::conj(tBp));
    }
    const auto l = detail::lambda_core(rA2, tA2, overlap2);
    return {{a0, a1, a2}, l.first, entropy(l)};
}

inline int surface_thread_count() {
    if (const char* env = std::getenv("QGE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Row-major entropy table over the three axes (last axis fastest).
/// Grid points are independent, so they are evaluated in parallel; the
/// output ordering is fixed by index regardless of scheduling.
inline std::vector<SurfaceRow> entropy_surface(SurfaceMode mode,
                                               const std::array<AxisSpec, 3>& axes,
                                               int threads = 0) {
    for (const auto& ax : axes) {
        if (ax.steps < 1) throw std::invalid_argument("entropy_surface: empty grid axis");
        if (!(ax.min <= ax.max)) {
            throw std::invalid_argument("entropy_surface: axis min must be <= max");
        }
        if (mode == SurfaceMode::ChannelPhase && (&ax - axes.data()) < 2 &&
            (ax.min < 0.0 || ax.max > 1.0)) {
            throw std::invalid_argument(
                "entropy_surface: probability axes must stay inside [0,1]");
        }
    }
    const std::size_t n0 = axes[0].steps, n1 = axes[1].steps, n2 = axes[2].steps;
    const std::size_t total = n0 * n1 * n2;
    std::vector<SurfaceRow> rows(total);

    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            const std::size_t i0 = idx / (n1 * n2);
            const std::size_t i1 = (idx / n2) % n1;
            const std::size_t i2 = idx % n2;
            rows[idx] = surface_point(mode, axes[0].value(static_cast<int>(i0)),
                                      axes[1].value(static_cast<int>(i1)),
                                      axes[2].value(static_cast<int>(i2)));
        }
    };

    const int nthreads =
        std::min<std::size_t>(threads > 0 ? threads : surface_thread_count(),
                              std::max<std::size_t>(total, 1));
    if (nthreads <= 1 || total < 1024) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

} // namespace qge

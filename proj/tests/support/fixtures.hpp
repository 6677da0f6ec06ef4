#pragma once

// Library-aware helpers shared by the unit tests and the acceptance gate.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "orlicz/orlicz.hpp"
#include "support/oracles.hpp"

namespace fixture {

using namespace orlicz;

inline std::function<long double(long double)> long_double_of(const OrliczFunction& m)
{
    if (m.kind() == OrliczFunction::Kind::NonDelta2) return [](long double t) { return oracle::non_delta2(t); };
    if (m.kind() == OrliczFunction::Kind::Power) {
        const long double p = m.exponent(), c = m(1.0);
        return [p, c](long double t) { return c * std::pow(std::fabs(t), p); };
    }
    return [m](long double t) { return static_cast<long double>(m(static_cast<double>(t))); };
}

/// Points y with ‖y‖ ≤ K and g_a(y) ≤ 3δ for a local perturbation: an arbitrary
/// head on indices ≤ N plus a tail whose modular is drawn up to 1.2·3δ/ε, then
/// filtered. The extreme tail σ(P_N^⊥ y) = 3δ/ε is always included.
inline std::vector<SparseSequence> tail_clause_points(const OrliczFunction& m, const LocalPerturbation& lp,
                                                      double radius, double eps, std::size_t want, Rng& rng,
                                                      std::size_t max_tries = 200000)
{
    const auto ld = long_double_of(m);
    const double cap = 3.0 * lp.delta / eps;
    const std::size_t n = lp.tail_index;
    std::vector<SparseSequence> out;
    for (std::size_t tries = 0; out.size() < want && tries < max_tries; ++tries) {
        SparseSequence head;
        if (n > 0 && tries % 4 != 0) {
            head = random_point_in_ball(rng, m, radius, 6, n);
            head *= rng.uniform();
        }
        oracle::Dense dir;
        const std::size_t s = 1 + rng.integer(0, 7);
        for (std::size_t i = 0; i < s; ++i) dir.emplace_back(n + 1 + 3 * i + rng.integer(0, 2), rng.normal());
        const double target = tries == 0 ? cap * (1 - 1e-12) : cap * 1.2 * rng.uniform();
        if (target <= 0.0) continue;
        const double scale = oracle::scale_to_modular(ld, dir, target);
        for (auto& e : dir) e.second *= scale;
        const SparseSequence y = head + SparseSequence(dir);
        if (!within_ball(m, y, radius)) continue;
        if (g_eval(m, lp.weights, y) > 3.0 * lp.delta) continue;
        out.push_back(y);
    }
    return out;
}

struct Certificate {
    double grid_min = kInfinity;
    std::size_t points = 0;
    std::size_t violations = 0;
};

/// Re-enumerates the cube grid k·step, |k·step| ≤ half_width, on coordinates
/// 1..dims within K·B and checks value(y) ≥ floor for all points, with
/// value = f + sign·g_a. Points are streamed, never stored.
inline Certificate certify_grid(const Objective& f, const OrliczFunction& m, const PerturbationWeights& a, double sign,
                                std::size_t dims, double step, double half_width, double floor)
{
    Certificate c;
    const long half = static_cast<long>(std::floor(half_width / step + 1e-9));
    std::vector<long> k(dims, -half);
    std::vector<double> coords(dims);
    for (;;) {
        for (std::size_t d = 0; d < dims; ++d) coords[d] = static_cast<double>(k[d]) * step;
        const SparseSequence y = SparseSequence::from_dense(coords);
        if (within_ball(m, y, f.domain_radius)) {
            const double fv = f(y);
            if (std::isfinite(fv)) {
                const double v = fv + sign * g_eval(m, a, y);
                ++c.points;
                c.grid_min = std::min(c.grid_min, v);
                if (v < floor) ++c.violations;
            }
        }
        std::size_t d = dims;
        while (d > 0 && k[d - 1] == half) k[--d] = -half;
        if (d == 0) break;
        ++k[d - 1];
    }
    return c;
}

} // namespace fixture

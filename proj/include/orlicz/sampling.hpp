#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sequence.hpp"

namespace orlicz {

/// Portable random stream: mt19937_64 with hand-rolled transforms, so a seed
/// reproduces the same doubles on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal()
    {
        if (spare_) {
            spare_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * std::numbers::pi * u2);
        spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [lo, hi].
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) { return lo + engine_() % (hi - lo + 1); }

private:
    std::mt19937_64 engine_;
    bool spare_ = false;
    double cached_ = 0.0;
};

/// Sampler of points in K·B. `Random` draws sparse directions with random
/// support and scales them to a radius that is uniform half the time and
/// log-uniform down to 1e-6·K otherwise. `Grid` enumerates a cube grid on the
/// first `dims` coordinates. Explicit `extra` points are appended when they
/// lie in K·B.
struct SamplerSpec {
    enum class Kind { Random, Grid };

    Kind kind = Kind::Random;
    std::uint64_t seed = 1;
    std::size_t count = 2000;
    std::size_t max_support = 8;
    std::size_t index_range = 32;
    bool include_origin = true;
    std::size_t dims = 2;
    double step = 0.05;
    std::vector<SparseSequence> extra;

    std::string describe() const
    {
        std::ostringstream os;
        os.precision(17);
        if (kind == Kind::Random) {
            os << "random: seed " << seed << ", count " << count << ", support<=" << max_support << ", indices<="
               << index_range;
        } else {
            os << "grid: dims " << dims << ", step " << step;
        }
        if (include_origin) os << ", origin";
        if (!extra.empty()) os << ", " << extra.size() << " explicit points";
        return os.str();
    }
};

/// A random point with ‖x‖ ≤ radius·(1 − 1e-9).
inline SparseSequence random_point_in_ball(Rng& rng, const OrliczFunction& m, double radius, std::size_t max_support,
                                           std::size_t index_range, double log_floor = 1e-6)
{
    const std::size_t s = static_cast<std::size_t>(rng.integer(1, std::max<std::size_t>(1, max_support)));
    std::vector<std::size_t> idx;
    while (idx.size() < std::min(s, index_range)) {
        const auto i = static_cast<std::size_t>(rng.integer(1, index_range));
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    std::vector<SparseSequence::Entry> e;
    for (auto i : idx) {
        double v = rng.normal();
        if (v == 0.0) v = 1.0;
        e.emplace_back(i, v);
    }
    SparseSequence u(std::move(e));
    const double nu = luxemburg_norm(m, u);
    const double r = rng.uniform() < 0.5 ? rng.uniform() : std::pow(log_floor, rng.uniform());
    return (radius * (1.0 - 1e-9) * r / nu) * u;
}

inline std::vector<SparseSequence> draw_points(const SamplerSpec& spec, const OrliczFunction& m, double radius)
{
    if (!(radius > 0.0)) throw DomainError("sampler radius must be positive");
    std::vector<SparseSequence> pts;
    if (spec.include_origin) pts.emplace_back();
    if (spec.kind == SamplerSpec::Kind::Random) {
        Rng rng(spec.seed);
        for (std::size_t i = 0; i < spec.count; ++i)
            pts.push_back(random_point_in_ball(rng, m, radius, spec.max_support, spec.index_range));
    } else {
        if (spec.dims == 0 || spec.dims > 6) throw DomainError("grid sampler supports 1 to 6 dimensions");
        if (!(spec.step > 0.0)) throw DomainError("grid step must be positive");
        const auto half = static_cast<long>(std::floor(radius / spec.step + 1e-9));
        const std::size_t n = static_cast<std::size_t>(2 * half + 1);
        std::size_t total = 1;
        for (std::size_t d = 0; d < spec.dims; ++d) {
            total *= n;
            if (total > 20'000'000) throw DomainError("grid sampler too large");
        }
        std::vector<long> k(spec.dims, -half);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t f = flat;
            std::vector<SparseSequence::Entry> e;
            for (std::size_t d = spec.dims; d-- > 0;) {
                k[d] = static_cast<long>(f % n) - half;
                f /= n;
            }
            bool origin = true;
            for (std::size_t d = 0; d < spec.dims; ++d) {
                e.emplace_back(d + 1, static_cast<double>(k[d]) * spec.step);
                origin = origin && k[d] == 0;
            }
            if (origin && spec.include_origin) continue;
            SparseSequence y(std::move(e));
            if (within_ball(m, y, radius)) pts.push_back(std::move(y));
        }
    }
    for (const auto& x : spec.extra)
        if (within_ball(m, x, radius)) pts.push_back(x);
    return pts;
}

} // namespace orlicz

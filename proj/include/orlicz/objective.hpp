#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/sequence.hpp"

namespace orlicz {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A black-box extended-real function f: ℓ_M → ℝ ∪ {+∞} restricted to the
/// working ball K·B. Lower semicontinuity is the caller's responsibility.
struct Objective {
    std::function<double(const SparseSequence&)> eval;
    double domain_radius = 1.0;  // K
    double lower_bound = 0.0;    // witness that f is bounded below
    bool bounded_domain = false; // f = +∞ outside K·B
    bool coercive = false;       // caller asserts f(x) → ∞ as ‖x‖ → ∞
    bool concurrent_safe = false;
    std::vector<SparseSequence> probes;
    std::string description;

    /// f(x); NaN is rejected, +∞ is the explicit "outside the domain" value.
    double operator()(const SparseSequence& x) const
    {
        const double v = eval(x);
        if (std::isnan(v)) throw DomainError("objective returned NaN at " + format_sequence(x));
        return v;
    }

    bool is_proper() const
    {
        for (const auto& p : probes)
            if (std::isfinite((*this)(p))) return true;
        return false;
    }
};

} // namespace orlicz

#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/objective.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sequence.hpp"

// A few ready-made objectives on K·B. All are +∞ outside K·B when
// bounded_domain is set, and all are safe for concurrent evaluation.

namespace orlicz::objectives {

inline std::string radius_text(double k)
{
    std::ostringstream os;
    os.precision(17);
    os << k;
    return os.str();
}

/// σ_M on K·B.
inline Objective modular(const OrliczFunction& m, double radius)
{
    Objective f;
    f.eval = [m](const SparseSequence& x) { return orlicz::modular(m, x); };
    f.domain_radius = radius;
    f.coercive = true;
    f.concurrent_safe = true;
    f.probes = {SparseSequence()};
    f.description = "modular sigma_M, K=" + radius_text(radius);
    return f;
}

/// ‖x − z‖^q.
inline Objective distance(const OrliczFunction& m, const SparseSequence& z, double radius, double q = 1.0)
{
    if (!(q > 0.0)) throw DomainError("distance exponent must be positive");
    Objective f;
    f.eval = [m, z, q](const SparseSequence& x) {
        const double d = luxemburg_norm(m, x - z);
        return q == 1.0 ? d : q == 2.0 ? d * d : std::pow(d, q);
    };
    f.domain_radius = radius;
    f.coercive = true;
    f.concurrent_safe = true;
    f.probes = {z};
    std::ostringstream os;
    os.precision(17);
    os << "||x - z||^" << q << ", z=(" << format_sequence(z) << "), K=" << radius;
    f.description = os.str();
    return f;
}

/// 0 at the origin, +∞ elsewhere.
inline Objective indicator_origin(double radius)
{
    Objective f;
    f.eval = [](const SparseSequence& x) { return x.is_zero() ? 0.0 : kInfinity; };
    f.domain_radius = radius;
    f.bounded_domain = true;
    f.coercive = true;
    f.concurrent_safe = true;
    f.probes = {SparseSequence()};
    f.description = "indicator of {0}";
    return f;
}

/// 1 + ‖x‖² on K·B, +∞ outside.
inline Objective ball_quadratic(const OrliczFunction& m, double radius = 1.0)
{
    Objective f;
    f.eval = [m, radius](const SparseSequence& x) {
        if (!within_ball(m, x, radius)) return kInfinity;
        const double n = luxemburg_norm(m, x);
        return 1.0 + n * n;
    };
    f.domain_radius = radius;
    f.lower_bound = 1.0;
    f.bounded_domain = true;
    f.coercive = true;
    f.concurrent_safe = true;
    f.probes = {SparseSequence()};
    f.description = "1 + ||x||^2 on K*B, K=" + radius_text(radius);
    return f;
}

/// b^{-2} for the bump b(x) = exp(−1/(1 − |x|²/r²)) with Euclidean |x| on the
/// listed coordinates; +∞ where b vanishes or outside K·B.
inline Objective bump_inverse(const OrliczFunction& m, double radius, double bump_radius = 1.0)
{
    if (!(bump_radius > 0.0)) throw DomainError("bump radius must be positive");
    Objective f;
    f.eval = [m, radius, bump_radius](const SparseSequence& x) {
        double r2 = 0.0;
        for (const auto& e : x.entries()) r2 += e.second * e.second;
        r2 /= bump_radius * bump_radius;
        if (r2 >= 1.0 || !within_ball(m, x, radius)) return kInfinity;
        return std::exp(2.0 / (1.0 - r2));
    };
    f.domain_radius = radius;
    f.lower_bound = std::exp(2.0);
    f.bounded_domain = true;
    f.coercive = true;
    f.concurrent_safe = true;
    f.probes = {SparseSequence()};
    f.description = "b^-2 for a smooth bump of Euclidean radius " + radius_text(bump_radius);
    return f;
}

/// c on K·B, +∞ outside.
inline Objective constant(const OrliczFunction& m, double radius, double c = 0.0)
{
    Objective f;
    f.eval = [m, radius, c](const SparseSequence& x) { return within_ball(m, x, radius) ? c : kInfinity; };
    f.domain_radius = radius;
    f.lower_bound = c;
    f.bounded_domain = true;
    f.coercive = true;
    f.concurrent_safe = true;
    f.probes = {SparseSequence()};
    f.description = "constant " + radius_text(c) + " on K*B";
    return f;
}

inline const std::vector<std::string>& names()
{
    static const std::vector<std::string> n = {"modular",        "dist",          "dist2",   "indicator0",
                                               "ball-quadratic", "bump-inverse", "constant"};
    return n;
}

/// Objective by name; `center` is used by dist and dist2.
inline Objective by_name(const std::string& name, const OrliczFunction& m, double radius,
                         const SparseSequence& center = {})
{
    if (name == "modular") return modular(m, radius);
    if (name == "dist") return distance(m, center, radius, 1.0);
    if (name == "dist2") return distance(m, center, radius, 2.0);
    if (name == "indicator0") return indicator_origin(radius);
    if (name == "ball-quadratic") return ball_quadratic(m, radius);
    if (name == "bump-inverse") return bump_inverse(m, radius);
    if (name == "constant") return constant(m, radius);
    throw DomainError("unknown objective '" + name + "'");
}

} // namespace orlicz::objectives

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/error.hpp"

namespace orlicz {

/// An Orlicz function M: [0, ∞) → [0, ∞), continuous, non-decreasing, convex,
/// with M(0) = 0. Carries the threshold t̄ (t̄ > 1, M(t̄) > 1) and, when known,
/// a constant C ∈ (0, 1) with M(t) ≥ C·M(2t) on [0, t̄].
///
/// Built-in families evaluate through a switch rather than a type-erased
/// callable; grid searches call eval() hundreds of millions of times.
class OrliczFunction {
public:
    using Map = std::function<double(double)>;

    enum class Kind { Power, NonDelta2, Custom };

    static OrliczFunction power(double p, double scale = 1.0);
    static OrliczFunction non_delta2();
    static OrliczFunction custom(std::string tag, Map eval, Map d1 = {}, Map d2 = {},
                                 std::optional<double> delta2 = std::nullopt);

    double operator()(double t) const { return eval(t); }

    double eval(double t) const
    {
        t = std::abs(t);
        switch (kind_) {
        case Kind::Power:
            if (p_ == 1.0) return scale_ * t;
            if (p_ == 2.0) return scale_ * t * t;
            if (p_ == 3.0) return scale_ * t * t * t;
            return scale_ * std::pow(t, p_);
        case Kind::NonDelta2:
            if (t == 0.0) return 0.0;
            if (t <= kJoint) return std::exp(-1.0 / t);
            return kJointValue + kJointSlope * (t - kJoint);
        case Kind::Custom:
            return eval_(t);
        }
        return std::numeric_limits<double>::quiet_NaN();
    }

    /// M′(t); analytic for built-ins, central difference otherwise.
    double deriv1(double t) const;
    /// M″(t); analytic for built-ins, central difference otherwise.
    double deriv2(double t) const;

    bool has_analytic_deriv1() const { return kind_ != Kind::Custom || static_cast<bool>(d1_); }
    bool has_analytic_deriv2() const { return kind_ != Kind::Custom || static_cast<bool>(d2_); }

    double t_bar() const { return t_bar_; }
    const std::optional<double>& delta2_constant() const { return delta2_; }
    const std::string& family_tag() const { return tag_; }
    Kind kind() const { return kind_; }
    /// Exponent of a power family (NaN otherwise).
    double exponent() const { return kind_ == Kind::Power ? p_ : std::numeric_limits<double>::quiet_NaN(); }

    /// Step used for finite-difference first derivatives.
    static double fd_step1(double t) { return std::max(1e-8, 1e-6 * t); }
    /// Step used for finite-difference second derivatives.
    static double fd_step2(double t) { return std::max(1e-6, 1e-4 * t); }

    static constexpr double kJoint = 0.25;

private:
    OrliczFunction() = default;

    // e^{-1/t} tangent line at t = 1/4.
    static constexpr double kJointValue = 0.018315638888734179;  // e^{-4}
    static constexpr double kJointSlope = 16.0 * 0.018315638888734179;

    Kind kind_ = Kind::Custom;
    double p_ = 1.0;
    double scale_ = 1.0;
    Map eval_, d1_, d2_;
    double t_bar_ = 2.0;
    std::optional<double> delta2_;
    std::string tag_;
};

/// Smallest t in {2^j : j = 1, 2, ...} with t > 1 and M(t) > 1.
inline double find_t_bar(const std::function<double(double)>& m)
{
    for (int j = 1; j <= 64; ++j) {
        const double t = std::ldexp(1.0, j);
        const double v = m(t);
        if (std::isnan(v)) {
            std::ostringstream os;
            os << "M evaluated to NaN at t=" << t;
            throw DomainError(os.str());
        }
        if (v > 1.0) return t;
    }
    throw DomainError("M appears bounded or degenerate");
}

inline double find_t_bar(const OrliczFunction& m)
{
    return find_t_bar([&m](double t) { return m(t); });
}

inline OrliczFunction OrliczFunction::power(double p, double scale)
{
    if (!(p >= 1.0) || !std::isfinite(p)) {
        std::ostringstream os;
        os << "power family requires p >= 1 for convexity (got " << p << ")";
        throw DomainError(os.str());
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("power family requires a positive scale");
    OrliczFunction m;
    m.kind_ = Kind::Power;
    m.p_ = p;
    m.scale_ = scale;
    m.delta2_ = std::exp2(-p);
    std::ostringstream os;
    os.precision(17);
    os << "power:" << p;
    if (scale != 1.0) os << ":" << scale;
    m.tag_ = os.str();
    m.t_bar_ = scale == 1.0 ? 2.0 : find_t_bar(m);
    return m;
}

inline OrliczFunction OrliczFunction::non_delta2()
{
    OrliczFunction m;
    m.kind_ = Kind::NonDelta2;
    m.tag_ = "non-delta2";
    m.t_bar_ = find_t_bar(m);
    return m;
}

/// Sampled check of the Orlicz-function axioms on a log grid in [t_lo, t_hi].
/// Returns an empty string when no violation is found.
inline std::string check_orlicz_invariants(const std::function<double(double)>& m, double t_lo = 1e-6,
                                           double t_hi = 64.0, std::size_t points = 200, double tol = 1e-12)
{
    std::ostringstream os;
    if (m(0.0) != 0.0) {
        os << "M(0) = " << m(0.0) << " != 0";
        return os.str();
    }
    std::vector<double> ts;
    ts.reserve(points);
    const double ratio = std::pow(t_hi / t_lo, 1.0 / static_cast<double>(points - 1));
    for (std::size_t i = 0; i < points; ++i) ts.push_back(t_lo * std::pow(ratio, static_cast<double>(i)));
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double a = m(ts[i]), b = m(ts[i + 1]);
        if (!(a <= b)) {
            os << "M decreases between t=" << ts[i] << " and t=" << ts[i + 1];
            return os.str();
        }
        const double mid = m(0.5 * (ts[i] + ts[i + 1]));
        if (mid > 0.5 * (a + b) + tol * (1.0 + std::abs(a + b))) {
            os << "midpoint convexity fails on [" << ts[i] << ", " << ts[i + 1] << "]";
            return os.str();
        }
    }
    for (std::size_t i = 0; i + 2 < ts.size(); i += 2) {
        const double a = m(ts[i]), c = m(ts[i + 2]);
        const double mid = m(0.5 * (ts[i] + ts[i + 2]));
        if (mid > 0.5 * (a + c) + tol * (1.0 + std::abs(a + c))) {
            os << "midpoint convexity fails on [" << ts[i] << ", " << ts[i + 2] << "]";
            return os.str();
        }
    }
    return {};
}

inline OrliczFunction OrliczFunction::custom(std::string tag, Map eval, Map d1, Map d2, std::optional<double> delta2)
{
    if (!eval) throw DomainError("custom Orlicz function needs an evaluator");
    if (delta2 && !(*delta2 > 0.0 && *delta2 < 1.0)) throw DomainError("Δ2 constant must lie in (0, 1)");
    OrliczFunction m;
    m.kind_ = Kind::Custom;
    m.eval_ = std::move(eval);
    m.d1_ = std::move(d1);
    m.d2_ = std::move(d2);
    m.delta2_ = delta2;
    m.tag_ = std::move(tag);
    if (auto bad = check_orlicz_invariants(m.eval_); !bad.empty()) throw DomainError("not an Orlicz function: " + bad);
    m.t_bar_ = find_t_bar(m.eval_);
    return m;
}

inline double OrliczFunction::deriv1(double t) const
{
    t = std::abs(t);
    switch (kind_) {
    case Kind::Power:
        if (p_ == 1.0) return scale_;
        return scale_ * p_ * std::pow(t, p_ - 1.0);
    case Kind::NonDelta2:
        if (t == 0.0) return 0.0;
        if (t <= kJoint) return std::exp(-1.0 / t - 2.0 * std::log(t));
        return kJointSlope;
    case Kind::Custom:
        if (d1_) return d1_(t);
        break;
    }
    const double h = fd_step1(t);
    if (t < h) return (eval(t + h) - eval(t)) / h;
    return (eval(t + h) - eval(t - h)) / (2.0 * h);
}

inline double OrliczFunction::deriv2(double t) const
{
    t = std::abs(t);
    switch (kind_) {
    case Kind::Power:
        if (p_ == 1.0) return 0.0;
        if (p_ == 2.0) return 2.0 * scale_;
        return scale_ * p_ * (p_ - 1.0) * std::pow(t, p_ - 2.0);
    case Kind::NonDelta2:
        if (t == 0.0) return 0.0;
        if (t <= kJoint) return std::exp(-1.0 / t - 4.0 * std::log(t)) * (1.0 - 2.0 * t);
        return 0.0;
    case Kind::Custom:
        if (d2_) return d2_(t);
        break;
    }
    const double h = fd_step2(t);
    if (t < h) return (eval(t + 2.0 * h) - 2.0 * eval(t + h) + eval(t)) / (h * h);
    return (eval(t + h) + eval(t - h) - 2.0 * eval(t)) / (h * h);
}

/// Outcome of a grid estimate of inf M(t)/M(2t).
struct Delta2Estimate {
    std::optional<double> constant;  // empty means "fail"
    double floor = 1e-6;
    std::size_t skipped_underflow = 0;
    std::vector<std::pair<double, double>> ratio_table;  // (t, M(t)/M(2t)), t ascending
    std::string diagnosis;
};

/// C_est = min M(t)/M(2t) over a log grid on [t_min, t̄]. Fails when the ratio
/// keeps decreasing as t ↓ over the smallest grid points and ends below `floor`.
/// Points where M(t) or M(2t) underflows to zero are skipped and counted.
inline Delta2Estimate estimate_delta2_constant(const OrliczFunction& m, std::size_t grid_size = 64,
                                               double t_min = 1e-6, double floor = 1e-6)
{
    if (grid_size < 16) throw DomainError("grid_size must be at least 16");
    if (!(t_min > 0.0) || !(t_min < m.t_bar())) throw DomainError("t_min must lie in (0, t_bar)");

    Delta2Estimate out;
    out.floor = floor;
    const double ratio = std::pow(m.t_bar() / t_min, 1.0 / static_cast<double>(grid_size - 1));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double t = i + 1 == grid_size ? m.t_bar() : t_min * std::pow(ratio, static_cast<double>(i));
        const double num = m(t), den = m(2.0 * t);
        if (!std::isfinite(num) || !std::isfinite(den)) {
            std::ostringstream os;
            os << "evaluation overflow/NaN at t=" << t;
            throw DomainError(os.str());
        }
        if (den == 0.0 || num == 0.0) {
            ++out.skipped_underflow;
            continue;
        }
        const double r = num / den;
        out.ratio_table.emplace_back(t, r);
        best = std::min(best, r);
    }
    if (out.ratio_table.empty()) throw DomainError("M underflows on the whole grid; raise t_min");

    // Apparent failure: strictly decreasing toward the small end and below the floor.
    const std::size_t window = std::min<std::size_t>(8, out.ratio_table.size());
    bool decreasing = window >= 2;
    for (std::size_t i = 0; i + 1 < window; ++i) {
        const double lo = out.ratio_table[i].second, hi = out.ratio_table[i + 1].second;
        if (!(lo < hi * (1.0 - 1e-12))) decreasing = false;
    }
    if (decreasing && out.ratio_table.front().second < floor) {
        std::ostringstream os;
        os << "ratio M(t)/M(2t) decreases to " << out.ratio_table.front().second << " at t="
           << out.ratio_table.front().first << " (below floor " << floor << "): apparent Δ2 failure at zero";
        out.diagnosis = os.str();
        return out;
    }
    out.constant = best;
    out.diagnosis = "grid estimate (not a certificate)";
    return out;
}

/// Δ2 status used by downstream modules: exact constant when the family
/// provides one, otherwise the grid estimate.
struct Delta2Status {
    bool holds = false;
    bool exact = false;
    double constant = 0.0;
    Delta2Estimate estimate;
};

inline Delta2Status check_delta2_at_zero(const OrliczFunction& m, std::size_t grid_size = 64, double t_min = 1e-6,
                                         double floor = 1e-6)
{
    Delta2Status s;
    if (m.delta2_constant()) {
        s.holds = true;
        s.exact = true;
        s.constant = *m.delta2_constant();
        return s;
    }
    s.estimate = estimate_delta2_constant(m, grid_size, t_min, floor);
    if (s.estimate.constant) {
        s.holds = true;
        s.constant = *s.estimate.constant;
    }
    return s;
}

/// Requires an exact or user-supplied Δ2 constant.
inline double require_delta2(const OrliczFunction& m)
{
    if (!m.delta2_constant()) throw DomainError("Δ2 certificate required (" + m.family_tag() + ")");
    return *m.delta2_constant();
}

/// Parses a family specification: "power:P", "power:P:SCALE", "non-delta2".
inline OrliczFunction parse_family(const std::string& spec)
{
    if (spec == "non-delta2") return OrliczFunction::non_delta2();
    if (spec.rfind("power:", 0) == 0) {
        const std::string rest = spec.substr(6);
        const auto colon = rest.find(':');
        try {
            std::size_t used = 0;
            const std::string p_str = rest.substr(0, colon);
            const double p = std::stod(p_str, &used);
            if (used != p_str.size()) throw std::invalid_argument(p_str);
            double scale = 1.0;
            if (colon != std::string::npos) {
                const std::string s_str = rest.substr(colon + 1);
                scale = std::stod(s_str, &used);
                if (used != s_str.size()) throw std::invalid_argument(s_str);
            }
            return OrliczFunction::power(p, scale);
        } catch (const std::invalid_argument&) {
            throw DomainError("malformed power family spec '" + spec + "'");
        } catch (const std::out_of_range&) {
            throw DomainError("malformed power family spec '" + spec + "'");
        }
    }
    throw DomainError("unknown Orlicz family '" + spec + "' (expected power:P[:SCALE] or non-delta2)");
}

} // namespace orlicz

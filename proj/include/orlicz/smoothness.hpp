#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/objective.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sequence.hpp"
#include "orlicz/weights.hpp"

namespace orlicz {

/// (f(x+h) + f(x−h) − 2f(x)) / ‖h‖^p. With `convex` set, a negative value
/// beyond rounding is reported as an error.
inline double second_difference(const std::function<double(const SparseSequence&)>& f, const OrliczFunction& m,
                                const SparseSequence& x, const SparseSequence& h, double p, bool convex = false)
{
    if (h.is_zero()) throw DomainError("second difference needs h != 0");
    const double fp = f(x + h), fm = f(x - h), f0 = f(x);
    if (!std::isfinite(fp) || !std::isfinite(fm) || !std::isfinite(f0)) throw DomainError("probe left domain");
    const double num = fp + fm - 2.0 * f0;
    const double q = num / std::pow(luxemburg_norm(m, h), p);
    if (convex && num < -1e-12 * (1.0 + std::abs(fp) + std::abs(fm) + 2.0 * std::abs(f0)))
        throw DomainError("second difference of a declared convex function is negative");
    return q;
}

enum class ProbeVerdict { ObstructionConfirmed, Inconclusive };

inline const char* to_string(ProbeVerdict v)
{
    return v == ProbeVerdict::ObstructionConfirmed ? "obstruction-confirmed" : "inconclusive";
}

struct ProbeReport {
    std::string name;
    std::vector<double> scales;
    std::vector<double> quotients;
    double threshold = 0.0;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
    std::string aux_label;
    std::vector<double> aux;  // aligned with scales
    std::vector<std::string> warnings;
    std::string note;
};

namespace detail {

inline void require_decreasing_scales(const std::vector<double>& scales)
{
    if (scales.empty()) throw DomainError("probe needs at least one scale");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0) || !std::isfinite(scales[i])) throw DomainError("probe scales must be positive");
        if (i && !(scales[i] < scales[i - 1])) throw DomainError("probe scales must be strictly decreasing");
    }
}

/// Growth by `factor` across each of the last `steps` scales.
inline bool diverging(const std::vector<double>& q, double factor, std::size_t steps)
{
    if (q.size() < steps + 1) return false;
    for (std::size_t i = q.size() - steps; i < q.size(); ++i)
        if (!(q[i - 1] > 0.0) || !(q[i] >= factor * q[i - 1])) return false;
    return true;
}

} // namespace detail

inline std::vector<double> decade_scales(int from_exp, int to_exp)
{
    std::vector<double> s;
    for (int e = from_exp; e >= to_exp; --e) s.push_back(std::pow(10.0, e));
    return s;
}

/// Coordinate second differences of g_a at x̄ along t·e_n, p = 1, n up to the
/// support end plus `fresh` untouched coordinates. The sup over n is reported
/// per scale; the obstruction is confirmed when it stays ≥ 2 − tol.
inline ProbeReport probe_l1(const OrliczFunction& m, const PerturbationWeights& a, const SparseSequence& xbar,
                            const std::vector<double>& scales, std::size_t fresh = 50, double tol = 0.1)
{
    detail::require_decreasing_scales(scales);
    ProbeReport r;
    r.name = "l1";
    r.threshold = 2.0 - tol;
    r.aux_label = "argsup_n";
    r.note = "a Frechet differentiable bump would give an admissible g_a whose quotients vanish as t -> 0";
    if (a.min_weight() < 1.0) r.warnings.push_back("weights below 1: the lower bound 2 is not guaranteed");
    const std::size_t n_max = xbar.max_index() + fresh;
    bool ok = true;
    for (double t : scales) {
        const double h_norm = luxemburg_norm(m, SparseSequence::basis(1, t));
        double best = -kInfinity;
        std::size_t arg = 0;
        for (std::size_t n = 1; n <= n_max; ++n) {
            const double v = xbar[n];
            const double num = a[n] * (m(std::abs(v + t)) + m(std::abs(v - t)) - 2.0 * m(std::abs(v)));
            const double q = num / h_norm;
            if (q > best) {
                best = q;
                arg = n;
            }
        }
        r.scales.push_back(t);
        r.quotients.push_back(best);
        r.aux.push_back(static_cast<double>(arg));
        ok = ok && best >= r.threshold;
    }
    r.verdict = ok ? ProbeVerdict::ObstructionConfirmed : ProbeVerdict::Inconclusive;
    return r;
}

/// For k = 1..k_max, the first t_k on t = 2^{-j/16} (after t_{k-1}) with
/// M(t_k)/t_k^p > k. The reported bound is the fresh-coordinate quotient
/// 2M(t_k)/t_k^p.
inline ProbeReport probe_p_growth(const OrliczFunction& m, double p, int k_max, int steps_per_octave = 16)
{
    if (!(p > 1.0 && p <= 2.0)) throw DomainError("p-growth probe needs p in (1, 2]");
    if (k_max < 1) throw DomainError("k_max must be at least 1");
    ProbeReport r;
    r.name = "p-growth";
    r.threshold = static_cast<double>(k_max);
    r.aux_label = "k";
    r.note = "quotients beyond every k rule out bumps with an O(||h||^p) second-order estimate";
    std::ostringstream ps;
    ps.precision(17);
    ps << p;
    r.name += ":" + ps.str();

    int j = 0;
    const int j_max = 1100 * steps_per_octave;
    for (int k = 1; k <= k_max; ++k) {
        bool found = false;
        for (; j <= j_max; ++j) {
            const double t = std::exp2(-static_cast<double>(j) / steps_per_octave);
            const double tp = std::pow(t, p);
            const double mt = m(t);
            if (tp == 0.0 || mt == 0.0) {
                j = j_max + 1;
                break;
            }
            if (mt / tp > k) {
                r.scales.push_back(t);
                r.quotients.push_back(2.0 * mt / tp);
                r.aux.push_back(k);
                ++j;
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream w;
            w << "scan exhausted at k = " << k << "; M(t) may be O(t^p)";
            r.warnings.push_back(w.str());
            break;
        }
    }
    r.verdict = static_cast<int>(r.scales.size()) == k_max ? ProbeVerdict::ObstructionConfirmed
                                                           : ProbeVerdict::Inconclusive;
    return r;
}

enum class CoordinateMode { Zero, Nonzero, Both };

/// Nonzero mode tracks M''(t); zero mode tracks 2M(t)/t^2. Divergence is
/// growth by a factor of at least 2 across each of the last three scales.
/// In Both mode the quotients are M'' and aux holds 2M(t)/t^2; both must diverge.
inline ProbeReport probe_second_derivative(const OrliczFunction& m, const std::vector<double>& scales,
                                           CoordinateMode mode = CoordinateMode::Both, double factor = 2.0)
{
    detail::require_decreasing_scales(scales);
    ProbeReport r;
    r.name = mode == CoordinateMode::Zero ? "second-derivative:zero"
             : mode == CoordinateMode::Nonzero ? "second-derivative:nonzero"
                                                : "second-derivative";
    r.threshold = factor;
    r.note = "unbounded M'' near 0 rules out twice Gateaux differentiable bumps";
    if (mode == CoordinateMode::Both) r.aux_label = "zero_quotient";
    for (double t : scales) {
        if (!m.has_analytic_deriv2() && OrliczFunction::fd_step2(t) >= t / 2.0) {
            std::ostringstream w;
            w.precision(17);
            w << "scale " << t << " dropped: finite-difference step too large";
            r.warnings.push_back(w.str());
            continue;
        }
        const double d2 = m.deriv2(t);
        const double zq = 2.0 * m(t) / (t * t);
        if (!std::isfinite(d2) || !std::isfinite(zq) || d2 < 0.0) {
            std::ostringstream w;
            w.precision(17);
            w << "scale " << t << " dropped: non-finite or negative value";
            r.warnings.push_back(w.str());
            continue;
        }
        r.scales.push_back(t);
        r.quotients.push_back(mode == CoordinateMode::Zero ? zq : d2);
        if (mode == CoordinateMode::Both) r.aux.push_back(zq);
    }
    bool ok = detail::diverging(r.quotients, factor, 3);
    if (mode == CoordinateMode::Both) ok = ok && detail::diverging(r.aux, factor, 3);
    r.verdict = ok ? ProbeVerdict::ObstructionConfirmed : ProbeVerdict::Inconclusive;
    return r;
}

struct SpaceClassification {
    std::string family;
    Delta2Status delta2;
    bool applicable = false;
    std::vector<std::string> exclusions;
    std::vector<ProbeReport> probes;
    std::string summary;
};

inline SpaceClassification classify_space(const OrliczFunction& m)
{
    SpaceClassification c;
    c.family = m.family_tag();
    c.delta2 = check_delta2_at_zero(m);
    if (!c.delta2.holds) {
        c.summary = "perturbation method inapplicable: M fails the delta2 condition at zero";
        return c;
    }
    c.applicable = true;

    const double lin_small = m(1e-8) / 1e-8, lin_big = m(1e-2) / 1e-2;
    if (lin_big > 0.0 && lin_small >= 0.5 * lin_big) {
        auto r = probe_l1(m, PerturbationWeights::constant(1.0), SparseSequence(), decade_scales(-1, -6));
        if (r.verdict == ProbeVerdict::ObstructionConfirmed) c.exclusions.push_back("Frechet differentiable bumps");
        c.probes.push_back(std::move(r));
    }
    for (double p : {1.25, 1.5, 1.75, 2.0}) {
        auto r = probe_p_growth(m, p, 10);
        if (r.verdict == ProbeVerdict::ObstructionConfirmed) {
            std::ostringstream e;
            e << "bumps with O(||h||^" << p << ") second-order estimate";
            c.exclusions.push_back(e.str());
        }
        c.probes.push_back(std::move(r));
    }
    auto r = probe_second_derivative(m, decade_scales(-1, -6));
    if (r.verdict == ProbeVerdict::ObstructionConfirmed) c.exclusions.push_back("twice Gateaux differentiable bumps");
    c.probes.push_back(std::move(r));
    c.summary = c.exclusions.empty() ? "no exclusions" : std::to_string(c.exclusions.size()) + " exclusions";
    return c;
}

} // namespace orlicz

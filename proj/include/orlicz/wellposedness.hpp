#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/objective.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sampling.hpp"
#include "orlicz/sequence.hpp"

namespace orlicz {

using PointFunction = std::function<double(const SparseSequence&)>;

/// Ω_f^S(ε) on a finite sample S.
struct SublevelSample {
    double level = 0.0;
    std::vector<SparseSequence> points;
    std::vector<double> values;
    double inf_sample = kInfinity;
    std::string sampler_spec;
};

namespace detail {

struct EvaluatedSample {
    std::vector<SparseSequence> points;
    std::vector<double> values;
    double inf = kInfinity;
};

inline EvaluatedSample evaluate_sample(const PointFunction& f, const std::vector<SparseSequence>& pts)
{
    EvaluatedSample s;
    for (const auto& p : pts) {
        const double v = f(p);
        if (std::isnan(v)) throw DomainError("objective returned NaN at " + format_sequence(p));
        if (!std::isfinite(v)) continue;
        s.points.push_back(p);
        s.values.push_back(v);
        s.inf = std::min(s.inf, v);
    }
    if (s.points.empty()) throw DomainError("no feasible sample");
    return s;
}

inline SublevelSample restrict(const EvaluatedSample& s, double level, const std::string& spec)
{
    SublevelSample out;
    out.level = level;
    out.inf_sample = s.inf;
    out.sampler_spec = spec;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (s.values[i] <= s.inf + level) {
            out.points.push_back(s.points[i]);
            out.values.push_back(s.values[i]);
        }
    }
    return out;
}

} // namespace detail

inline SublevelSample sublevel_sample(const PointFunction& f, const OrliczFunction& m, double radius, double level,
                                      const SamplerSpec& sampler)
{
    if (!(level >= 0.0)) throw DomainError("sublevel level must be non-negative");
    const auto s = detail::evaluate_sample(f, draw_points(sampler, m, radius));
    return detail::restrict(s, level, sampler.describe());
}

/// Greedy farthest-point k-centre covering radius in the Luxemburg metric: an
/// upper bound for the covering radius achievable with `max_centers` centres.
/// Starts from the first point; ties go to the lowest index.
inline double kuratowski_estimate(const std::vector<SparseSequence>& points, const OrliczFunction& m,
                                  std::size_t max_centers)
{
    if (points.empty()) throw DomainError("kuratowski_estimate needs a non-empty point list");
    if (max_centers == 0) throw DomainError("max_centers must be at least 1");
    std::vector<double> dist(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) dist[i] = luxemburg_norm(m, points[i] - points[0]);
    for (std::size_t centers = 1; centers < max_centers; ++centers) {
        const auto far = static_cast<std::size_t>(std::max_element(dist.begin(), dist.end()) - dist.begin());
        if (dist[far] == 0.0) break;
        for (std::size_t i = 0; i < points.size(); ++i)
            dist[i] = std::min(dist[i], luxemburg_norm(m, points[i] - points[far]));
    }
    return *std::max_element(dist.begin(), dist.end());
}

/// Sample diameter: exact over all pairs up to `exact_limit` points, otherwise
/// a lower estimate from repeated farthest-point sweeps.
inline double diameter_estimate(const std::vector<SparseSequence>& points, const OrliczFunction& m,
                                std::size_t exact_limit = 256)
{
    if (points.size() < 2) return 0.0;
    double best = 0.0;
    if (points.size() <= exact_limit) {
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                best = std::max(best, luxemburg_norm(m, points[i] - points[j]));
        return best;
    }
    std::size_t from = 0;
    for (int sweep = 0; sweep < 4; ++sweep) {
        std::size_t far = from;
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = luxemburg_norm(m, points[i] - points[from]);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        best = std::max(best, far_d);
        if (far == from) break;
        from = far;
    }
    return best;
}

struct IntersectionCheck {
    bool holds = true;
    bool hypothesis_empty = false;
    std::size_t sample_size = 0;
    std::size_t checked = 0;  // |Ω_{f+g}(δ)|
    std::size_t counterexamples = 0;
    SparseSequence witness;  // a point of Ω_f(δ) ∩ Ω_g(δ)
};

/// Checks Ω_f(δ) ∩ Ω_g(δ) ≠ ∅ ⇒ Ω_{f+g}(δ) ⊂ Ω_f(3δ) ∩ Ω_g(3δ) pointwise on a
/// common sample. A relative slack of 1e-12 absorbs rounding in the sums.
inline IntersectionCheck intersection_lemma_check(const PointFunction& f, const PointFunction& g,
                                                  const OrliczFunction& m, double radius, double delta,
                                                  const SamplerSpec& sampler)
{
    if (!(delta > 0.0)) throw DomainError("δ must be positive");
    const auto pts = draw_points(sampler, m, radius);
    std::vector<double> fv, gv;
    std::vector<SparseSequence> kept;
    for (const auto& p : pts) {
        const double a = f(p), b = g(p);
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        kept.push_back(p);
        fv.push_back(a);
        gv.push_back(b);
    }
    IntersectionCheck out;
    out.sample_size = kept.size();
    if (kept.empty()) throw DomainError("no feasible sample");
    const double inf_f = *std::min_element(fv.begin(), fv.end());
    const double inf_g = *std::min_element(gv.begin(), gv.end());
    double inf_fg = kInfinity;
    for (std::size_t i = 0; i < kept.size(); ++i) inf_fg = std::min(inf_fg, fv[i] + gv[i]);
    auto slack = [](double v) { return 1e-12 * (1.0 + std::abs(v)); };

    bool hyp = false;
    for (std::size_t i = 0; i < kept.size() && !hyp; ++i) {
        if (fv[i] <= inf_f + delta && gv[i] <= inf_g + delta) {
            hyp = true;
            out.witness = kept[i];
        }
    }
    if (!hyp) {
        out.hypothesis_empty = true;
        return out;
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double s = fv[i] + gv[i];
        if (s > inf_fg + delta) continue;
        ++out.checked;
        const bool in_f = fv[i] <= inf_f + 3.0 * delta + slack(fv[i]) + slack(s);
        const bool in_g = gv[i] <= inf_g + 3.0 * delta + slack(gv[i]) + slack(s);
        if (!(in_f && in_g)) ++out.counterexamples;
    }
    out.holds = out.counterexamples == 0;
    return out;
}

enum class WpmcVerdict { LooksWpmc, LooksNotWpmc, Inconclusive };

inline const char* to_string(WpmcVerdict v)
{
    switch (v) {
    case WpmcVerdict::LooksWpmc: return "looks-wpmc";
    case WpmcVerdict::LooksNotWpmc: return "looks-not-wpmc";
    case WpmcVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct WpmcThresholds {
    double tol = 1e-2;
    double monotone_slack = 0.1;  // each estimate may exceed its predecessor by 10%
    std::size_t max_centers = 16;
};

struct WellPosednessReport {
    std::vector<double> levels;
    std::vector<double> alpha_estimates;
    std::vector<double> diam_estimates;
    std::vector<std::size_t> sample_sizes;
    WpmcVerdict verdict = WpmcVerdict::Inconclusive;
    std::string sampler_spec;
    WpmcThresholds thresholds;
};

/// Sublevel-set α and diameter estimates at decreasing levels, with a verdict:
/// looks-wpmc when both shrink (within the monotone slack) below tol,
/// looks-not-wpmc when either stays above 10·tol at the smallest level.
inline WellPosednessReport wpmc_diagnose(const PointFunction& f, const OrliczFunction& m, double radius,
                                         const std::vector<double>& levels, const SamplerSpec& sampler,
                                         const WpmcThresholds& th = {})
{
    if (levels.empty()) throw DomainError("wpmc_diagnose needs at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] >= 0.0)) throw DomainError("levels must be non-negative");
        if (i && !(levels[i] < levels[i - 1])) throw DomainError("levels must be strictly decreasing");
    }
    const auto sample = detail::evaluate_sample(f, draw_points(sampler, m, radius));
    WellPosednessReport rep;
    rep.levels = levels;
    rep.sampler_spec = sampler.describe();
    rep.thresholds = th;
    for (double t : levels) {
        const auto sub = detail::restrict(sample, t, rep.sampler_spec);
        rep.alpha_estimates.push_back(kuratowski_estimate(sub.points, m, th.max_centers));
        rep.diam_estimates.push_back(diameter_estimate(sub.points, m));
        rep.sample_sizes.push_back(sub.points.size());
    }
    auto shrinking = [&](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > (1.0 + th.monotone_slack) * v[i - 1] + 1e-12) return false;
        return v.back() < th.tol;
    };
    const double a = rep.alpha_estimates.back(), d = rep.diam_estimates.back();
    if (shrinking(rep.alpha_estimates) && shrinking(rep.diam_estimates))
        rep.verdict = WpmcVerdict::LooksWpmc;
    else if (a > 10.0 * th.tol || d > 10.0 * th.tol)
        rep.verdict = WpmcVerdict::LooksNotWpmc;
    else
        rep.verdict = WpmcVerdict::Inconclusive;
    return rep;
}

struct WitnessOptions {
    int steps_per_octave = 16;
    std::size_t max_support = 10'000'000;
};

/// x^k = Σ_{i ≤ i_k} t_k e_i with M(t_k)/M(2t_k) < 1/k and i_k = ⌊1/M(2t_k)⌋.
struct Witness {
    int k = 0;
    double t = 0.0;
    std::size_t count = 0;  // i_k
    double ratio = 0.0;     // M(t_k)/M(2t_k)
    double m_t = 0.0;       // M(t_k)
    double sigma = 0.0;     // σ(x^k)
    double sigma_double = 0.0;  // σ(2x^k)
    double norm = 0.0;      // ‖x^k‖
    double sigma_bound = 0.0;   // 1/k + M(t_k)
    SparseSequence point;
};

/// Scans t = 2^{-j/steps_per_octave} downward from below 1/2 (keeping 2t < 1
/// and M(2t) < 1) for the first t with M(t)/M(2t) < 1/k.
inline Witness non_delta2_witness(const OrliczFunction& m, int k, const WitnessOptions& opts = {})
{
    if (k < 1) throw DomainError("witness index k must be at least 1");
    if (opts.steps_per_octave < 1) throw DomainError("steps_per_octave must be positive");
    if (check_delta2_at_zero(m, 64, std::min(1e-3, m.t_bar() / 4.0)).holds)
        throw DomainError("no witness found: M satisfies the Δ2 condition on the scanned range");

    const int s = opts.steps_per_octave;
    for (int j = s + 1; j < 200 * s; ++j) {
        const double t = std::exp2(-static_cast<double>(j) / s);
        const double m2 = m(2.0 * t);
        if (!(m2 < 1.0)) continue;
        if (m2 == 0.0) break;
        const double mt = m(t);
        if (!(mt / m2 < 1.0 / k)) continue;

        const double count_real = std::floor(1.0 / m2);
        if (count_real > static_cast<double>(opts.max_support))
            throw DomainError("witness support exceeds max_support");
        Witness w;
        w.k = k;
        w.t = t;
        w.count = static_cast<std::size_t>(count_real);
        w.ratio = mt / m2;
        w.m_t = mt;
        std::vector<SparseSequence::Entry> e;
        e.reserve(w.count);
        for (std::size_t i = 1; i <= w.count; ++i) e.emplace_back(i, t);
        w.point = SparseSequence(std::move(e));
        w.sigma = modular(m, w.point);
        w.sigma_double = modular(m, 2.0 * w.point);
        w.norm = luxemburg_norm(m, w.point);
        w.sigma_bound = 1.0 / k + mt;
        return w;
    }
    throw DomainError("no witness found on the scanned range");
}

} // namespace orlicz

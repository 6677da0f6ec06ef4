#pragma once

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "orlicz/orlicz_function.hpp"
#include "orlicz/perturbation.hpp"
#include "orlicz/sequence.hpp"
#include "orlicz/smoothness.hpp"
#include "orlicz/weights.hpp"
#include "orlicz/wellposedness.hpp"

// JSON views of the library types. nlohmann::json objects keep keys sorted, so
// output bytes depend only on the values. Non-finite reals become null.

namespace orlicz::io {

using nlohmann::json;

inline json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json reals(const std::vector<double>& v)
{
    json a = json::array();
    for (double x : v) a.push_back(real(x));
    return a;
}

inline json to_json(const SparseSequence& x) { return format_sequence(x); }

inline json to_json(const PerturbationWeights& a)
{
    return {{"head", reals(a.head())}, {"tail", real(a.tail())}, {"signed", a.is_signed()}};
}

inline PerturbationWeights weights_from_json(const json& j)
{
    return {j.at("head").get<std::vector<double>>(), j.at("tail").get<double>(), j.value("signed", false)};
}

inline json to_json(const Delta2Status& s)
{
    json j = {{"holds", s.holds}, {"exact", s.exact}, {"constant", real(s.constant)}};
    if (!s.exact) {
        json table = json::array();
        for (const auto& [t, r] : s.estimate.ratio_table) table.push_back({real(t), real(r)});
        j["ratio_table"] = table;
        j["skipped_underflow"] = s.estimate.skipped_underflow;
        j["diagnosis"] = s.estimate.diagnosis;
        j["floor"] = s.estimate.floor;
    }
    return j;
}

inline json to_json(const LocalPerturbation& p)
{
    return {{"weights", to_json(p.weights)},
            {"delta", real(p.delta)},
            {"theta", real(p.theta)},
            {"tail_index", p.tail_index},
            {"scale_exponent", p.scale_exponent}};
}

inline json to_json(const IterationRecord& r)
{
    return {{"step", r.step},
            {"eps", real(r.eps)},
            {"delta", real(r.delta)},
            {"tail_index", r.tail_index},
            {"point", to_json(r.point)},
            {"value", real(r.value)},
            {"moved", real(r.moved)},
            {"tail_proxy", real(r.tail_proxy)},
            {"sublevel_size", r.sublevel_size}};
}

inline json to_json(const SolveReport& r)
{
    json hist = json::array();
    for (const auto& h : r.history) hist.push_back(to_json(h));
    return {{"weights", to_json(r.weights)},
            {"minimizer", to_json(r.minimizer)},
            {"min_value", real(r.min_value)},
            {"iterations", r.iterations},
            {"final_tail_index", r.final_tail_index},
            {"compactness_proxy", real(r.compactness_proxy)},
            {"certificate_resolution", r.certificate_resolution},
            {"oracle_accuracy", real(r.oracle_accuracy)},
            {"converged", r.converged},
            {"epsilon", real(r.epsilon)},
            {"theta0", real(r.theta0)},
            {"history", hist},
            {"note", r.note}};
}

inline json to_json(const SupportReport& r)
{
    return {{"weights", to_json(r.weights)},
            {"point", to_json(r.point)},
            {"value", real(r.value)},
            {"inner", to_json(r.inner)}};
}

inline json to_json(const WellPosednessReport& r)
{
    json sizes = json::array();
    for (auto s : r.sample_sizes) sizes.push_back(s);
    return {{"levels", reals(r.levels)},
            {"alpha_estimates", reals(r.alpha_estimates)},
            {"diam_estimates", reals(r.diam_estimates)},
            {"sample_sizes", sizes},
            {"verdict", to_string(r.verdict)},
            {"sampler_spec", r.sampler_spec},
            {"thresholds",
             {{"tol", r.thresholds.tol},
              {"monotone_slack", r.thresholds.monotone_slack},
              {"max_centers", r.thresholds.max_centers}}}};
}

/// The witness point itself is omitted: it is t_k on indices 1..i_k.
inline json to_json(const Witness& w)
{
    return {{"k", w.k},
            {"t_k", real(w.t)},
            {"i_k", w.count},
            {"ratio", real(w.ratio)},
            {"M_t_k", real(w.m_t)},
            {"sigma", real(w.sigma)},
            {"sigma_2x", real(w.sigma_double)},
            {"norm", real(w.norm)},
            {"sigma_bound", real(w.sigma_bound)}};
}

inline json to_json(const ProbeReport& r)
{
    json j = {{"name", r.name},
              {"scales", reals(r.scales)},
              {"quotients", reals(r.quotients)},
              {"threshold", real(r.threshold)},
              {"verdict", to_string(r.verdict)},
              {"warnings", r.warnings},
              {"note", r.note}};
    if (!r.aux_label.empty()) j["aux"] = {{"label", r.aux_label}, {"values", reals(r.aux)}};
    return j;
}

inline json to_json(const SpaceClassification& c)
{
    json probes = json::array();
    for (const auto& p : c.probes) probes.push_back(to_json(p));
    return {{"family", c.family},
            {"delta2", to_json(c.delta2)},
            {"applicable", c.applicable},
            {"exclusions", c.exclusions},
            {"probes", probes},
            {"summary", c.summary}};
}

// CSV writers. Every file starts with a schema comment line.

inline std::string csv_real(double v)
{
    std::ostringstream os;
    os.precision(17);
    if (std::isfinite(v))
        os << v;
    else
        os << (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
    return os.str();
}

inline void write_csv(std::ostream& os, const WellPosednessReport& r)
{
    os << "#schema=1\nlevel,alpha_est,diam_est\n";
    for (std::size_t i = 0; i < r.levels.size(); ++i)
        os << csv_real(r.levels[i]) << ',' << csv_real(r.alpha_estimates[i]) << ',' << csv_real(r.diam_estimates[i])
           << '\n';
}

inline void write_csv(std::ostream& os, const ProbeReport& r)
{
    os << "#schema=1\nscale,quotient,threshold\n";
    for (std::size_t i = 0; i < r.scales.size(); ++i)
        os << csv_real(r.scales[i]) << ',' << csv_real(r.quotients[i]) << ',' << csv_real(r.threshold) << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<Witness>& ws)
{
    os << "#schema=1\nk,t_k,i_k,sigma,norm\n";
    for (const auto& w : ws)
        os << w.k << ',' << csv_real(w.t) << ',' << w.count << ',' << csv_real(w.sigma) << ',' << csv_real(w.norm)
           << '\n';
}

} // namespace orlicz::io

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/orlicz_function.hpp"

namespace orlicz {

/// A finitely supported element of ℓ_M. Indices are 1-based, strictly
/// increasing, and no explicit zero is stored.
class SparseSequence {
public:
    using Entry = std::pair<std::size_t, double>;

    SparseSequence() = default;

    /// Entries must have strictly increasing indices ≥ 1; zero values are dropped.
    explicit SparseSequence(std::vector<Entry> entries)
    {
        entries_.reserve(entries.size());
        std::size_t last = 0;
        for (const auto& [i, v] : entries) {
            if (i == 0) throw DomainError("sequence indices are 1-based");
            if (i <= last) throw DomainError("sequence indices must be strictly increasing");
            if (!std::isfinite(v)) throw DomainError("sequence values must be finite");
            last = i;
            if (v != 0.0) entries_.emplace_back(i, v);
        }
    }

    /// Dense values placed at indices 1..n.
    static SparseSequence from_dense(const std::vector<double>& values)
    {
        std::vector<Entry> e;
        e.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) e.emplace_back(i + 1, values[i]);
        return SparseSequence(std::move(e));
    }

    static SparseSequence basis(std::size_t n, double value = 1.0) { return SparseSequence({{n, value}}); }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    std::size_t max_index() const { return entries_.empty() ? 0 : entries_.back().first; }
    bool is_zero() const { return entries_.empty(); }

    double operator[](std::size_t n) const
    {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                                   [](const Entry& e, std::size_t k) { return e.first < k; });
        return it != entries_.end() && it->first == n ? it->second : 0.0;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const auto& e : entries_) m = std::max(m, std::abs(e.second));
        return m;
    }

    SparseSequence& operator*=(double s)
    {
        if (s == 0.0) {
            entries_.clear();
            return *this;
        }
        for (auto& e : entries_) e.second *= s;
        return *this;
    }

    friend SparseSequence operator*(double s, SparseSequence x) { return x *= s; }
    friend SparseSequence operator*(SparseSequence x, double s) { return x *= s; }

    friend SparseSequence operator+(const SparseSequence& a, const SparseSequence& b) { return combine(a, 1.0, b); }
    friend SparseSequence operator-(const SparseSequence& a, const SparseSequence& b) { return combine(a, -1.0, b); }
    friend SparseSequence operator-(SparseSequence a) { return a *= -1.0; }

    friend bool operator==(const SparseSequence& a, const SparseSequence& b) { return a.entries_ == b.entries_; }

    /// a + s·b with exact zero cancellation removed.
    static SparseSequence combine(const SparseSequence& a, double s, const SparseSequence& b)
    {
        SparseSequence out;
        out.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto ia = a.entries_.begin(), ib = b.entries_.begin();
        while (ia != a.entries_.end() || ib != b.entries_.end()) {
            Entry e;
            if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
                e = *ia++;
            } else if (ia == a.entries_.end() || ib->first < ia->first) {
                e = {ib->first, s * ib->second};
                ++ib;
            } else {
                e = {ia->first, ia->second + s * ib->second};
                ++ia;
                ++ib;
            }
            if (e.second != 0.0) out.entries_.push_back(e);
        }
        return out;
    }

private:
    std::vector<Entry> entries_;
};

/// "i1:v1,i2:v2,..." with strictly increasing indices. The empty string is
/// the zero sequence.
inline SparseSequence parse_sequence(const std::string& text)
{
    std::vector<SparseSequence::Entry> entries;
    std::size_t pos = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(text).empty()) return {};
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = trim(text.substr(pos, comma - pos));
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw DomainError("sequence item '" + item + "' is not of the form index:value");
        try {
            std::size_t used_i = 0, used_v = 0;
            const std::string is = trim(item.substr(0, colon)), vs = trim(item.substr(colon + 1));
            const long long idx = std::stoll(is, &used_i);
            const double val = std::stod(vs, &used_v);
            if (used_i != is.size() || used_v != vs.size() || idx < 1) throw std::invalid_argument(item);
            entries.emplace_back(static_cast<std::size_t>(idx), val);
        } catch (const std::invalid_argument&) {
            throw DomainError("malformed sequence item '" + item + "'");
        } catch (const std::out_of_range&) {
            throw DomainError("sequence item out of range '" + item + "'");
        }
        pos = comma + 1;
    }
    return SparseSequence(std::move(entries));
}

inline std::string format_sequence(const SparseSequence& x)
{
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [i, v] : x.entries()) {
        if (!first) os << ',';
        os << i << ':' << v;
        first = false;
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const SparseSequence& x) { return os << '(' << format_sequence(x) << ')'; }

/// σ_M(x) = Σ M(|x_n|).
inline double modular(const OrliczFunction& m, const SparseSequence& x)
{
    double s = 0.0;
    for (const auto& e : x.entries()) s += m(std::abs(e.second));
    return s;
}

/// σ_M(x / ρ) without materialising the scaled sequence.
inline double modular_scaled(const OrliczFunction& m, const SparseSequence& x, double rho)
{
    double s = 0.0;
    for (const auto& e : x.entries()) s += m(std::abs(e.second) / rho);
    return s;
}

/// Luxemburg norm inf{ρ > 0 : σ_M(x/ρ) ≤ 1}. Bracketing from ρ = max|x_n|/t̄
/// (where σ > 1) with doubling, then bisection until the relative width is
/// below `tol` and σ_M(x/ρ) is within 10·tol of 1. Returns the upper end, so
/// σ_M(x/‖x‖) ≤ 1 always.
inline double luxemburg_norm(const OrliczFunction& m, const SparseSequence& x, double tol = 1e-12)
{
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (x.is_zero()) return 0.0;
    double lo = x.max_abs() / m.t_bar();
    double hi = 2.0 * lo;
    for (int k = 0; modular_scaled(m, x, hi) > 1.0; ++k) {
        if (k > 2100) throw DomainError("Luxemburg bracket diverged (degenerate M?)");
        lo = hi;
        hi *= 2.0;
    }
    for (int iter = 0; iter < 200; ++iter) {
        const bool narrow = hi - lo <= tol * hi;
        if (narrow && std::abs(modular_scaled(m, x, hi) - 1.0) <= 10.0 * tol) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (modular_scaled(m, x, mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

/// ‖x‖ ≤ K, decided through σ_M(x/K) ≤ 1 without a root find.
inline bool within_ball(const OrliczFunction& m, const SparseSequence& x, double radius)
{
    if (x.is_zero()) return radius >= 0.0;
    if (!(radius > 0.0)) return false;
    return modular_scaled(m, x, radius) <= 1.0;
}

/// P_N x: entries with index ≤ N.
inline SparseSequence project_head(const SparseSequence& x, std::size_t n)
{
    std::vector<SparseSequence::Entry> e;
    for (const auto& entry : x.entries())
        if (entry.first <= n) e.push_back(entry);
    return SparseSequence(std::move(e));
}

/// P_N^⊥ x: entries with index > N.
inline SparseSequence project_tail(const SparseSequence& x, std::size_t n)
{
    std::vector<SparseSequence::Entry> e;
    for (const auto& entry : x.entries())
        if (entry.first > n) e.push_back(entry);
    return SparseSequence(std::move(e));
}

/// Upper bound for ν(K) = sup{σ_M(x) : ‖x‖ ≤ K}:
///   C^{-m} + M(2^m t̄) / M(2^{-m} t̄),  m = smallest integer ≥ 0 with 2^m ≥ K.
inline double nu_bound(const OrliczFunction& m, double radius)
{
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("nu_bound needs a finite K > 0");
    const double c = require_delta2(m);
    int k = 0;
    while (std::ldexp(1.0, k) < radius) ++k;
    const double tb = m.t_bar();
    return std::pow(c, -k) + m(std::ldexp(tb, k)) / m(std::ldexp(tb, -k));
}

/// Upper bound 2^{1-m} on diam Ω_σ(t), m = largest integer ≥ 0 with C^m ≥ t.
inline double phi_bound(const OrliczFunction& m, double t)
{
    if (!(t > 0.0)) throw DomainError("phi_bound needs t > 0");
    const double c = require_delta2(m);
    if (!(c > 0.0 && c < 1.0)) throw DomainError("phi_bound needs C in (0, 1)");
    int k = 0;
    while (std::pow(c, k + 1) >= t) {
        ++k;
        if (k > 100000) break;
    }
    return std::ldexp(1.0, 1 - k);
}

} // namespace orlicz

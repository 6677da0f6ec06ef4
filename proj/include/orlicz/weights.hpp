#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sequence.hpp"

namespace orlicz {

/// a ∈ ℓ_∞ stored as a finite head (a_1..a_N) and a constant tail (a_n, n > N).
/// Unsigned weights live in the cone ℓ_∞^+; signed ones are span elements.
class PerturbationWeights {
public:
    PerturbationWeights() = default;

    PerturbationWeights(std::vector<double> head, double tail, bool is_signed = false)
        : head_(std::move(head)), tail_(tail), signed_(is_signed)
    {
        for (double v : head_)
            if (!std::isfinite(v)) throw DomainError("weights must be finite");
        if (!std::isfinite(tail_)) throw DomainError("weights must be finite");
        if (!signed_) {
            for (double v : head_)
                if (v < 0.0) throw DomainError("unsigned weights must be non-negative");
            if (tail_ < 0.0) throw DomainError("unsigned weights must be non-negative");
        }
    }

    static PerturbationWeights constant(double c, bool is_signed = false) { return {{}, c, is_signed}; }

    /// a_n for 1-based n.
    double operator[](std::size_t n) const { return n >= 1 && n <= head_.size() ? head_[n - 1] : tail_; }

    const std::vector<double>& head() const { return head_; }
    double tail() const { return tail_; }
    bool is_signed() const { return signed_; }

    /// ‖a‖_∞ = max(max |head|, |tail|).
    double sup_norm() const
    {
        double s = std::abs(tail_);
        for (double v : head_) s = std::max(s, std::abs(v));
        return s;
    }

    double min_weight() const
    {
        double s = tail_;
        for (double v : head_) s = std::min(s, v);
        return s;
    }

    double max_weight() const
    {
        double s = tail_;
        for (double v : head_) s = std::max(s, v);
        return s;
    }

    PerturbationWeights positive_part() const { return map([](double v) { return std::max(v, 0.0); }, false); }
    PerturbationWeights negative_part() const { return map([](double v) { return -std::min(v, 0.0); }, false); }

    /// Re-tags a signed vector as a cone member; throws if any entry is negative.
    PerturbationWeights as_unsigned() const { return {head_, tail_, false}; }
    PerturbationWeights as_signed() const { return {head_, tail_, true}; }

    template <class F>
    PerturbationWeights map(F f, bool is_signed) const
    {
        std::vector<double> h;
        h.reserve(head_.size());
        for (double v : head_) h.push_back(f(v));
        return {std::move(h), f(tail_), is_signed};
    }

    /// Head-wise sum; the shorter head is padded with its own tail.
    friend PerturbationWeights operator+(const PerturbationWeights& a, const PerturbationWeights& b)
    {
        return zip(a, b, [](double x, double y) { return x + y; }, a.signed_ || b.signed_);
    }

    friend PerturbationWeights operator-(const PerturbationWeights& a, const PerturbationWeights& b)
    {
        return zip(a, b, [](double x, double y) { return x - y; }, true);
    }

    friend PerturbationWeights operator*(double s, const PerturbationWeights& a)
    {
        return a.map([s](double v) { return s * v; }, a.signed_ || s < 0.0);
    }

    friend bool operator==(const PerturbationWeights& a, const PerturbationWeights& b)
    {
        return a.head_ == b.head_ && a.tail_ == b.tail_ && a.signed_ == b.signed_;
    }

private:
    template <class F>
    static PerturbationWeights zip(const PerturbationWeights& a, const PerturbationWeights& b, F f, bool is_signed)
    {
        const std::size_t n = std::max(a.head_.size(), b.head_.size());
        std::vector<double> h(n);
        for (std::size_t i = 0; i < n; ++i) h[i] = f(a[i + 1], b[i + 1]);
        return {std::move(h), f(a.tail_, b.tail_), is_signed};
    }

    std::vector<double> head_;
    double tail_ = 0.0;
    bool signed_ = false;
};

/// g_a(x) = Σ a_n M(|x_n|) over the support of x.
inline double g_eval(const OrliczFunction& m, const PerturbationWeights& a, const SparseSequence& x)
{
    double s = 0.0;
    for (const auto& [n, v] : x.entries()) s += a[n] * m(std::abs(v));
    return s;
}

struct GBounds {
    double bound = 0.0;      // sup_{KB} |g_a| ≤ ‖a‖_∞ ν(K)
    double lipschitz = 0.0;  // 2 ‖a‖_∞ ν(K+1)
};

inline GBounds g_bounds(const OrliczFunction& m, const PerturbationWeights& a, double radius)
{
    const double s = a.sup_norm();
    if (s == 0.0) {
        // still validates K and the certificate
        (void)nu_bound(m, radius);
        return {};
    }
    return {s * nu_bound(m, radius), 2.0 * s * nu_bound(m, radius + 1.0)};
}

} // namespace orlicz

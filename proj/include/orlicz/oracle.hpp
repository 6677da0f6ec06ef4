#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/objective.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sequence.hpp"
#include "orlicz/weights.hpp"

namespace orlicz {

/// Points of S within `level` of min_S (f + g_w).
struct SublevelResult {
    double min_value = kInfinity;
    SparseSequence argmin;
    std::vector<SparseSequence> points;  // at most the requested cap, in oracle order
    std::vector<double> values;
    std::size_t total_count = 0;
};

/// Inner approximate minimiser of f + g_w over a truncated feasible set S.
/// bind() fixes f and M; sublevel() is then called with varying weights.
class MinimizationOracle {
public:
    virtual ~MinimizationOracle() = default;

    virtual void bind(const Objective& f, const OrliczFunction& m) = 0;
    virtual SublevelResult sublevel(const PerturbationWeights& w, double level, std::size_t max_points) const = 0;
    /// Returned points are within accuracy() of the infimum over S.
    virtual double accuracy() const = 0;
    virtual std::string resolution() const = 0;

    SublevelResult minimize(const PerturbationWeights& w) const { return sublevel(w, 0.0, 1); }
};

/// Axis-aligned grid c_i + k·step, |k·step| ≤ half_width, over the listed
/// coordinates, intersected with the ball K·B.
struct GridSpec {
    std::vector<std::size_t> indices;  // 1-based, strictly increasing
    std::vector<double> center;        // empty = origin
    double step = 0.01;
    double half_width = 1.0;

    static GridSpec cube(std::size_t dims, double step, double half_width)
    {
        GridSpec g;
        for (std::size_t i = 1; i <= dims; ++i) g.indices.push_back(i);
        g.step = step;
        g.half_width = half_width;
        return g;
    }

    std::string describe() const
    {
        std::ostringstream os;
        os.precision(17);
        os << "exhaustive grid: coordinates {";
        for (std::size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
        os << "}, step " << step << ", half-width " << half_width;
        if (!center.empty()) {
            os << ", center (";
            for (std::size_t i = 0; i < center.size(); ++i) os << (i ? "," : "") << center[i];
            os << ")";
        }
        return os.str();
    }
};

/// Exhaustive grid search. f is evaluated once per feasible grid point at
/// bind(); each sublevel() call only adds Σ w_i M(|y_i|) from per-axis tables.
class GridOracle final : public MinimizationOracle {
public:
    static constexpr std::size_t kMaxDims = 8;
    static constexpr std::uint64_t kMaxPoints = 60'000'000;

    explicit GridOracle(GridSpec spec) : spec_(std::move(spec))
    {
        if (spec_.indices.empty() || spec_.indices.size() > kMaxDims)
            throw DomainError("grid oracle supports 1 to 8 coordinates");
        for (std::size_t i = 0; i < spec_.indices.size(); ++i)
            if (spec_.indices[i] == 0 || (i && spec_.indices[i] <= spec_.indices[i - 1]))
                throw DomainError("grid coordinates must be 1-based and strictly increasing");
        if (!(spec_.step > 0.0) || !(spec_.half_width >= 0.0)) throw DomainError("grid step and half-width must be positive");
        if (spec_.center.empty()) spec_.center.assign(spec_.indices.size(), 0.0);
        if (spec_.center.size() != spec_.indices.size()) throw DomainError("grid center has the wrong dimension");

        const auto half = static_cast<long>(std::floor(spec_.half_width / spec_.step + 1e-9));
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < spec_.indices.size(); ++i) {
            std::vector<double> axis;
            for (long k = -half; k <= half; ++k) axis.push_back(spec_.center[i] + static_cast<double>(k) * spec_.step);
            total *= axis.size();
            if (total > kMaxPoints) throw DomainError("grid too large; raise the step or lower the dimension");
            axes_.push_back(std::move(axis));
        }
        box_size_ = total;
    }

    void bind(const Objective& f, const OrliczFunction& m) override
    {
        const double radius = f.domain_radius;
        if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("objective needs a finite domain radius");

        const std::size_t d = axes_.size();
        std::vector<std::vector<double>> ball_tab(d);
        tables_.assign(d, {});
        for (std::size_t i = 0; i < d; ++i) {
            for (double v : axes_[i]) {
                ball_tab[i].push_back(m(std::abs(v) / radius));
                tables_[i].push_back(m(std::abs(v)));
            }
        }

        const unsigned hw = f.concurrent_safe ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
        const std::uint64_t chunks = std::min<std::uint64_t>(hw, box_size_);
        std::vector<std::vector<std::uint64_t>> idx_parts(chunks);
        std::vector<std::vector<double>> val_parts(chunks);
        auto work = [&](std::uint64_t c) {
            const std::uint64_t lo = box_size_ * c / chunks, hi = box_size_ * (c + 1) / chunks;
            std::vector<std::size_t> k(d);
            for (std::uint64_t flat = lo; flat < hi; ++flat) {
                decode(flat, k);
                double ball = 0.0;
                for (std::size_t i = 0; i < d; ++i) ball += ball_tab[i][k[i]];
                if (ball > 1.0) continue;
                const double v = f(point(k));
                if (!std::isfinite(v)) continue;
                idx_parts[c].push_back(flat);
                val_parts[c].push_back(v);
            }
        };
        if (chunks <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::uint64_t c = 0; c < chunks; ++c) pool.emplace_back(work, c);
            for (auto& t : pool) t.join();
        }
        flat_.clear();
        fvals_.clear();
        for (std::uint64_t c = 0; c < chunks; ++c) {
            flat_.insert(flat_.end(), idx_parts[c].begin(), idx_parts[c].end());
            fvals_.insert(fvals_.end(), val_parts[c].begin(), val_parts[c].end());
        }
        if (flat_.empty()) throw DomainError("objective is not proper on the grid: no finite value inside K·B");
        bound_ = true;
    }

    SublevelResult sublevel(const PerturbationWeights& w, double level, std::size_t max_points) const override
    {
        if (!bound_) throw DomainError("grid oracle used before bind()");
        const std::size_t d = axes_.size();
        std::vector<std::vector<double>> wt(d);
        for (std::size_t i = 0; i < d; ++i) {
            const double wi = w[spec_.indices[i]];
            for (double mv : tables_[i]) wt[i].push_back(wi * mv);
        }
        std::vector<double> vals(flat_.size());
        std::vector<std::size_t> k(d);
        double best = kInfinity;
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < flat_.size(); ++j) {
            decode(flat_[j], k);
            double v = fvals_[j];
            for (std::size_t i = 0; i < d; ++i) v += wt[i][k[i]];
            vals[j] = v;
            if (v < best) {
                best = v;
                best_j = j;
            }
        }
        SublevelResult r;
        r.min_value = best;
        decode(flat_[best_j], k);
        r.argmin = point(k);
        const double cut = best + level;
        for (std::size_t j = 0; j < flat_.size(); ++j) {
            if (vals[j] > cut) continue;
            ++r.total_count;
            if (r.points.size() < max_points) {
                decode(flat_[j], k);
                r.points.push_back(point(k));
                r.values.push_back(vals[j]);
            }
        }
        return r;
    }

    double accuracy() const override { return 0.0; }
    std::string resolution() const override { return spec_.describe() + ", restricted to K·B"; }

    std::size_t feasible_size() const { return flat_.size(); }
    std::uint64_t box_size() const { return box_size_; }
    const GridSpec& spec() const { return spec_; }

private:
    void decode(std::uint64_t flat, std::vector<std::size_t>& k) const
    {
        for (std::size_t i = axes_.size(); i-- > 0;) {
            k[i] = flat % axes_[i].size();
            flat /= axes_[i].size();
        }
    }

    SparseSequence point(const std::vector<std::size_t>& k) const
    {
        std::vector<SparseSequence::Entry> e;
        e.reserve(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) e.emplace_back(spec_.indices[i], axes_[i][k[i]]);
        return SparseSequence(std::move(e));
    }

    GridSpec spec_;
    std::vector<std::vector<double>> axes_;
    std::uint64_t box_size_ = 0;
    std::vector<std::vector<double>> tables_;
    std::vector<std::uint64_t> flat_;
    std::vector<double> fvals_;
    bool bound_ = false;
};

} // namespace orlicz

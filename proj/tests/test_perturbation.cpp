#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "orlicz/orlicz.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace orlicz;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("g_a evaluation and algebra")
{
    const auto l1 = OrliczFunction::power(1);
    CHECK(g_eval(l1, PerturbationWeights({2}, 0.5), SparseSequence::from_dense({1, 4})) == 4.0);
    CHECK(g_eval(l1, PerturbationWeights::constant(0), SparseSequence::from_dense({1, 4})) == 0.0);

    std::mt19937_64 g(4);
    const auto m = OrliczFunction::power(1.5);
    for (int i = 0; i < 200; ++i) {
        const auto x = SparseSequence(oracle::random_sparse(g, 10, 30, 1.0));
        const PerturbationWeights a({0.25, 1.0, 0.0, 2.0}, 0.5), b({1.0}, 0.125);
        CHECK(g_eval(m, PerturbationWeights::constant(1), x) == modular(m, x));
        CHECK_THAT(g_eval(m, a + b, x), WithinRel(g_eval(m, a, x) + g_eval(m, b, x), 1e-14));
        CHECK_THAT(g_eval(m, 3.0 * a, x), WithinRel(3.0 * g_eval(m, a, x), 1e-14));
        const auto d = a - b;
        CHECK_THAT(g_eval(m, d, x), WithinAbs(g_eval(m, d.positive_part(), x) - g_eval(m, d.negative_part(), x), 1e-12));
        CHECK(d.sup_norm() == std::max(d.positive_part().sup_norm(), d.negative_part().sup_norm()));
    }
}

TEST_CASE("g_a bounds are majorants")
{
    const auto m = OrliczFunction::power(1.5);
    const PerturbationWeights a({0.5, 1.0, 0.25}, 0.75);
    const double k = 1.5;
    const auto b = g_bounds(m, a, k);
    Rng rng(8);
    for (int i = 0; i < 2000; ++i) {
        const auto x = random_point_in_ball(rng, m, k, 8, 20);
        const auto y = random_point_in_ball(rng, m, k, 8, 20);
        CHECK(g_eval(m, a, x) <= b.bound);
        CHECK(std::abs(g_eval(m, a, x) - g_eval(m, a, y)) <= b.lipschitz * luxemburg_norm(m, x - y) + 1e-12);
    }
    const auto l1 = OrliczFunction::power(1);
    const auto one = g_bounds(l1, PerturbationWeights::constant(1), 1.0);
    CHECK(one.bound == 2.0);
    Rng r2(9);
    for (int i = 0; i < 1000; ++i) CHECK(modular(l1, random_point_in_ball(r2, l1, 1.0, 8, 20)) <= one.bound);
}

TEST_CASE("local perturbation: scale selection")
{
    const auto l1 = OrliczFunction::power(1);
    int j = -1;
    // φ(2^{-j}) = 2^{1-j} < 0.1 first at j = 5
    CHECK_THAT(local_delta(l1, 0.1, &j), WithinRel(0.1 * std::ldexp(1.0, -5) / 3.0, 1e-15));
    CHECK(j == 5);

    const auto lp = construct_local_perturbation(l1, SparseSequence::basis(1, 0.3), 1.0, 0.1);
    CHECK(lp.scale_exponent == 5);
    CHECK_THAT(lp.delta, WithinRel(1.0416666666666667e-3, 1e-14));
    CHECK_THAT(lp.theta, WithinRel(lp.delta / (4.0 * 2.0), 1e-15));
    CHECK(lp.tail_index == 1);
    CHECK(lp.weights.sup_norm() == 0.1);
    CHECK(lp.weights[1] == lp.theta);
    CHECK(lp.weights[2] == 0.1);

    const auto zero = construct_local_perturbation(l1, SparseSequence(), 1.0, 0.1);
    CHECK(zero.tail_index == 0);
    CHECK(zero.weights == PerturbationWeights::constant(0.1));
    CHECK(g_eval(l1, zero.weights, SparseSequence()) == 0.0);

    // the cut N stops at the first index whose remaining tail is small enough
    const auto x = SparseSequence::from_dense({0.5, 0.2, 1e-6, 1e-7});
    const auto cut = construct_local_perturbation(l1, x, 1.0, 0.1);
    CHECK(cut.tail_index == 2);
    CHECK(0.1 * modular(l1, project_tail(x, 2)) < cut.delta / 2);
    CHECK_FALSE(0.1 * modular(l1, project_tail(x, 1)) < cut.delta / 2);

    CHECK_THROWS_AS(construct_local_perturbation(l1, SparseSequence::basis(1, 2.0), 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(construct_local_perturbation(l1, x, 1.0, 0.0), DomainError);
    CHECK_THROWS_WITH(construct_local_perturbation(OrliczFunction::non_delta2(), x, 1.0, 0.1),
                      ContainsSubstring("Δ2 certificate required"));
}

TEST_CASE("local perturbation: the three clauses")
{
    for (double p : {1.0, 2.0}) {
        const auto m = OrliczFunction::power(p);
        for (double eps : {0.5, 0.1, 0.01}) {
            Rng rng(static_cast<std::uint64_t>(1000 * eps + p));
            for (int trial = 0; trial < 10; ++trial) {
                const double k = rng.uniform(0.5, 3.0);
                const auto x = random_point_in_ball(rng, m, k, 10, 25);
                const auto lp = construct_local_perturbation(m, x, k, eps);
                CHECK(lp.weights.sup_norm() == eps);
                CHECK(g_eval(m, lp.weights, x) < lp.delta);
                CHECK(lp.delta == local_delta(m, eps));
                const auto ys = fixture::tail_clause_points(m, lp, k, eps, 100, rng);
                CHECK(ys.size() == 100);
                for (const auto& y : ys) CHECK(luxemburg_norm(m, project_tail(y, lp.tail_index)) < eps);
            }
        }
    }
}

TEST_CASE("grid oracle")
{
    const auto m = OrliczFunction::power(2);
    GridOracle o(GridSpec::cube(2, 0.5, 1.0));
    CHECK(o.box_size() == 25);
    const auto z = SparseSequence::from_dense({0.5, -0.5});
    o.bind(objectives::distance(m, z, 1.0, 2.0), m);
    CHECK(o.feasible_size() == 13);
    const auto r = o.minimize(PerturbationWeights::constant(0));
    CHECK(r.argmin == z);
    CHECK(r.min_value == 0.0);
    // with weight 1, |x-z|² + |x|² is minimal (0.5) at the four points with x_1 ∈ {0, .5}, x_2 ∈ {0, -.5}
    const auto s = o.sublevel(PerturbationWeights::constant(1), 1e-9, 100);
    CHECK_THAT(s.min_value, WithinAbs(0.5, 1e-12));
    CHECK(s.total_count == 4);
    const auto all = o.sublevel(PerturbationWeights::constant(0), 100.0, 5);
    CHECK(all.total_count == 13);
    CHECK(all.points.size() == 5);

    GridOracle unbound(GridSpec::cube(1, 0.1, 1.0));
    CHECK_THROWS_AS(unbound.minimize(PerturbationWeights::constant(0)), DomainError);
    GridSpec shifted = GridSpec::cube(1, 0.1, 0.5);
    shifted.center = {0.05};  // misses the origin
    GridOracle off(shifted);
    CHECK_THROWS_WITH(off.bind(objectives::indicator_origin(1.0), m), ContainsSubstring("not proper"));
    CHECK_THROWS_AS(GridOracle(GridSpec::cube(9, 0.5, 1.0)), DomainError);
    CHECK_THROWS_AS(GridOracle(GridSpec::cube(6, 0.001, 1.0)), DomainError);
    CHECK(o.resolution().find("step 0.5") != std::string::npos);
}

TEST_CASE("perturbed minimisation of the modular")
{
    const auto m = OrliczFunction::power(2);
    GridOracle o(GridSpec::cube(2, 0.05, 1.0));
    const auto rep = perturb_minimize(objectives::modular(m, 1.0), m, 0.1, o);
    CHECK(rep.converged);
    CHECK(rep.minimizer.is_zero());
    CHECK(rep.min_value == 0.0);
    CHECK(rep.iterations == 2);
    CHECK(rep.weights.sup_norm() < 0.1);
    CHECK(rep.theta0 == 0.0);
}

TEST_CASE("perturbed minimisation of a distance")
{
    const auto m = OrliczFunction::power(2);
    const auto z = SparseSequence::from_dense({0.3, -0.2});
    const double k = 2.0 * luxemburg_norm(m, z);
    GridSpec spec = GridSpec::cube(2, 0.01, k);
    GridOracle o(spec);
    auto f = objectives::distance(m, z, k, 1.0);
    f.coercive = false;  // exercise the θ₀σ reduction
    const auto rep = perturb_minimize(f, m, 0.1, o);
    CHECK(rep.theta0 == 0.025);
    CHECK(rep.weights.sup_norm() < 0.1);
    CHECK(luxemburg_norm(m, rep.minimizer - z) <= 0.02);
    CHECK_THAT(rep.min_value, WithinAbs(f(rep.minimizer) + g_eval(m, rep.weights, rep.minimizer), 1e-15));
    const auto cert = fixture::certify_grid(f, m, rep.weights, 1.0, 2, 0.01, k, rep.min_value - 1e-12);
    CHECK(cert.violations == 0);
    CHECK(cert.points == o.feasible_size());
    CHECK_THAT(cert.grid_min, WithinAbs(rep.min_value, 1e-12));
    double total = rep.theta0;
    for (const auto& h : rep.history) total += h.eps;
    CHECK(total < 0.1);
    for (std::size_t i = 0; i < rep.history.size(); ++i) CHECK(rep.history[i].eps == 0.1 * std::ldexp(1.0, -int(i) - 3));
}

TEST_CASE("perturbed minimisation on a single point domain")
{
    const auto m = OrliczFunction::power(1);
    GridOracle o(GridSpec::cube(3, 0.25, 1.0));
    const auto rep = perturb_minimize(objectives::indicator_origin(1.0), m, 0.5, o);
    CHECK(rep.minimizer.is_zero());
    CHECK(rep.min_value == 0.0);
    CHECK(rep.converged);
}

TEST_CASE("perturbed minimisation rejects bad input")
{
    const auto m = OrliczFunction::power(2);
    GridOracle o(GridSpec::cube(1, 0.1, 1.0));
    const auto f = objectives::modular(m, 1.0);
    CHECK_THROWS_AS(perturb_minimize(f, m, 0.0, o), DomainError);
    CHECK_THROWS_AS(perturb_minimize(f, m, 1.0, o), DomainError);
    CHECK_THROWS_AS(perturb_minimize(f, OrliczFunction::non_delta2(), 0.1, o), DomainError);
    Objective nowhere = objectives::constant(m, 1.0);
    nowhere.eval = [](const SparseSequence&) { return kInfinity; };
    CHECK_THROWS_WITH(perturb_minimize(nowhere, m, 0.1, o), ContainsSubstring("not proper"));
    PerturbOptions bad;
    bad.budget = 0;
    CHECK_THROWS_AS(perturb_minimize(f, m, 0.1, o, bad), DomainError);
}

TEST_CASE("perturbed minimisation reports a budget overrun")
{
    const auto m = OrliczFunction::power(2);
    GridOracle o(GridSpec::cube(2, 0.05, 1.0));
    PerturbOptions opts;
    opts.budget = 1;
    const auto rep = perturb_minimize(objectives::modular(m, 1.0), m, 0.1, o, opts);
    CHECK_FALSE(rep.converged);
    CHECK(rep.note.find("not converged") != std::string::npos);
}

TEST_CASE("sublevel nesting of the oracle")
{
    const auto m = OrliczFunction::power(1.5);
    GridOracle o(GridSpec::cube(2, 0.05, 1.0));
    o.bind(objectives::distance(m, SparseSequence::from_dense({0.2, 0.1}), 1.0, 2.0), m);
    const PerturbationWeights a({0.1, 0.3}, 0.2);
    const auto small = o.sublevel(a, 0.01, 100000), big = o.sublevel(a, 0.05, 100000);
    CHECK(small.total_count <= big.total_count);
    for (const auto& y : small.points) CHECK(std::find(big.points.begin(), big.points.end(), y) != big.points.end());
}

TEST_CASE("support from below")
{
    const auto m = OrliczFunction::power(2);
    SECTION("indicator of the origin")
    {
        GridOracle o(GridSpec::cube(2, 0.1, 1.0));
        const auto rep = support_from_below(objectives::indicator_origin(1.0), m, 1.0, 2.0, o);
        CHECK(rep.point.is_zero());
        CHECK(rep.value == 0.0);
        CHECK(rep.weights.min_weight() >= 1.0);
        CHECK(rep.weights.max_weight() <= 2.0);
    }
    SECTION("quadratic on the unit ball")
    {
        GridOracle o(GridSpec::cube(2, 0.02, 1.0));
        const auto f = objectives::ball_quadratic(m, 1.0);
        const auto rep = support_from_below(f, m, 1.0, 2.0, o);
        CHECK(rep.weights.min_weight() >= 1.0);
        CHECK(rep.weights.max_weight() <= 2.0);
        CHECK_FALSE(rep.weights.is_signed());
        CHECK_THAT(rep.value, WithinAbs(f(rep.point) - g_eval(m, rep.weights, rep.point), 1e-15));
        const auto cert = fixture::certify_grid(f, m, rep.weights, -1.0, 2, 0.02, 1.0, rep.value - 1e-12);
        CHECK(cert.violations == 0);
        CHECK(cert.points > 0);
    }
    SECTION("errors")
    {
        GridOracle o(GridSpec::cube(1, 0.1, 1.0));
        CHECK_THROWS_WITH(support_from_below(objectives::modular(m, 1.0), m, 1.0, 2.0, o),
                          "bounded domain required");
        CHECK_THROWS_AS(support_from_below(objectives::indicator_origin(1.0), m, 2.0, 1.0, o), DomainError);
    }
}

TEST_CASE("supporting functional")
{
    const auto m = OrliczFunction::power(2);
    const auto one = PerturbationWeights::constant(1);
    CHECK(supporting_functional(m, one, SparseSequence(), 1.0).functional.is_zero());
    const auto s = supporting_functional(m, one, SparseSequence::basis(1, 0.5), 1.0);
    CHECK(s.functional == SparseSequence::basis(1, 1.0));
    CHECK(s.norm_bound == 2.0 * nu_bound(m, 3.0));
    CHECK_THROWS_AS(supporting_functional(m, PerturbationWeights::constant(-1, true), SparseSequence(), 1.0),
                    DomainError);

    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        const double k = 1.0;
        const auto xbar = random_point_in_ball(rng, m, k, 6, 12);
        std::vector<double> head;
        for (int j = 0; j < 12; ++j) head.push_back(rng.uniform(1.0, 2.0));
        const PerturbationWeights a(head, 1.5);
        const auto sf = supporting_functional(m, a, xbar, k);
        for (int j = 0; j < 300; ++j) {
            const auto y = random_point_in_ball(rng, m, k, 8, 16);
            CHECK(subgradient_gap(m, a, xbar, sf.functional, y) >= -1e-10);
        }
        CHECK(dual_norm(m, sf.functional) <= sf.norm_bound);
    }
}

TEST_CASE("dual norms of power spaces")
{
    std::mt19937_64 g(23);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const auto m = OrliczFunction::power(p);
        for (int i = 0; i < 50; ++i) {
            const auto d = oracle::random_sparse(g, 8, 20, 1.0);
            double expect = 0.0;
            if (p == 1.0) {
                for (const auto& e : d) expect = std::max(expect, std::abs(e.second));
            } else {
                expect = oracle::lp_norm(d, p / (p - 1.0));
            }
            CHECK_THAT(dual_norm(m, SparseSequence(d)), WithinRel(expect, 1e-9));
        }
    }
    CHECK(dual_norm(OrliczFunction::power(2), SparseSequence()) == 0.0);
}

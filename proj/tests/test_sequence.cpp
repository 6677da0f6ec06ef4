#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "orlicz/sampling.hpp"
#include "orlicz/sequence.hpp"
#include "orlicz/weights.hpp"
#include "support/oracles.hpp"

using namespace orlicz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SparseSequence to_seq(const oracle::Dense& d) { return SparseSequence(d); }

std::vector<OrliczFunction> families()
{
    return {OrliczFunction::power(1), OrliczFunction::power(1.5), OrliczFunction::power(2), OrliczFunction::power(3),
            OrliczFunction::power(2, 0.5), OrliczFunction::non_delta2()};
}

} // namespace

TEST_CASE("sparse sequence invariants")
{
    const SparseSequence x({{1, 1.0}, {3, 0.0}, {5, -2.0}});
    CHECK(x.support_size() == 2);
    CHECK(x.max_index() == 5);
    CHECK(x[3] == 0.0);
    CHECK(x[5] == -2.0);
    CHECK(x[100] == 0.0);
    CHECK_THROWS_AS(SparseSequence({{0, 1.0}}), DomainError);
    CHECK_THROWS_AS(SparseSequence({{2, 1.0}, {2, 1.0}}), DomainError);
    CHECK_THROWS_AS(SparseSequence({{3, 1.0}, {2, 1.0}}), DomainError);
    CHECK_THROWS_AS(SparseSequence({{1, std::nan("")}}), DomainError);
    CHECK((x - x).is_zero());
    CHECK((x + x) == 2.0 * x);
    CHECK((0.0 * x).is_zero());
    CHECK(SparseSequence::from_dense({0, 3, 0}) == SparseSequence::basis(2, 3));
}

TEST_CASE("sequence literals round-trip")
{
    const auto x = parse_sequence("1:3, 2:-4.5,10:1e-300");
    CHECK(x[1] == 3.0);
    CHECK(x[2] == -4.5);
    CHECK(x[10] == 1e-300);
    CHECK(parse_sequence(format_sequence(x)) == x);
    CHECK(parse_sequence("").is_zero());
    CHECK(parse_sequence("  ").is_zero());
    std::mt19937_64 g(7);
    for (int i = 0; i < 200; ++i) {
        const auto y = to_seq(oracle::random_sparse(g, 12, 40, 3.0));
        CHECK(parse_sequence(format_sequence(y)) == y);
    }
    for (const char* bad : {"1", "1:", ":2", "0:1", "2:1,1:1", "1:x", "1:2,", "a:1", "-1:1"})
        CHECK_THROWS_AS(parse_sequence(bad), DomainError);
}

TEST_CASE("modular")
{
    const auto l1 = OrliczFunction::power(1), l2 = OrliczFunction::power(2);
    CHECK(modular(l1, SparseSequence::from_dense({1, -2, 3})) == 6.0);
    CHECK(modular(l1, SparseSequence()) == 0.0);
    CHECK(modular(l2, SparseSequence::from_dense({0.5, 0.5})) == 0.5);
    CHECK(modular_scaled(l2, SparseSequence::from_dense({1, 1}), 2.0) == 0.5);
}

TEST_CASE("luxemburg norm closed forms")
{
    const auto l1 = OrliczFunction::power(1), l2 = OrliczFunction::power(2);
    CHECK_THAT(luxemburg_norm(l1, SparseSequence::from_dense({3, 4})), WithinRel(7.0, 1e-12));
    CHECK_THAT(luxemburg_norm(l2, SparseSequence::from_dense({3, 4})), WithinRel(5.0, 1e-12));
    CHECK(luxemburg_norm(OrliczFunction::non_delta2(), SparseSequence()) == 0.0);

    std::mt19937_64 g(11);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const auto m = OrliczFunction::power(p);
        for (int i = 0; i < 300; ++i) {
            const auto d = oracle::random_sparse(g, 20, 60, std::pow(10.0, (i % 9) - 4));
            CHECK_THAT(luxemburg_norm(m, to_seq(d)), WithinRel(oracle::lp_norm(d, p), 1e-10));
        }
    }
}

TEST_CASE("luxemburg norm for the non-delta2 spike")
{
    // single spike 0.2·e_1: solve M(0.2/ρ) = 1 on the affine branch
    const auto nd = OrliczFunction::non_delta2();
    const double e4 = std::exp(-4.0);
    const double s = 0.25 + (1.0 - e4) / (16.0 * e4);  // M(s) = 1
    CHECK_THAT(luxemburg_norm(nd, SparseSequence::basis(1, 0.2)), WithinRel(0.2 / s, 1e-11));

    std::mt19937_64 g(3);
    for (int i = 0; i < 100; ++i) {
        const auto d = oracle::random_sparse(g, 10, 30, 0.3);
        CHECK_THAT(luxemburg_norm(nd, to_seq(d)), WithinRel(oracle::luxemburg(oracle::non_delta2, d), 1e-10));
    }
}

TEST_CASE("modular versus norm on the unit sphere")
{
    std::mt19937_64 g(5);
    for (const auto& m : families()) {
        INFO(m.family_tag());
        for (int i = 0; i < 300; ++i) {
            const auto x = to_seq(oracle::random_sparse(g, 15, 40, std::pow(2.0, (i % 13) - 6)));
            const double n = luxemburg_norm(m, x);
            const double s = modular(m, x);
            CHECK_THAT(modular_scaled(m, x, n), WithinAbs(1.0, 1e-9));
            if (m.exponent() == 1.0) {
                // M linear: σ is the norm itself
                CHECK_THAT(s, WithinRel(n, 1e-11));
                continue;
            }
            if (n <= 1.0) CHECK(s <= n * (1 + 1e-12));
            if (n > 1.0 + 1e-9) CHECK(s > n);
        }
    }
}

TEST_CASE("norm axioms on finite support")
{
    std::mt19937_64 g(9);
    for (const auto& m : families()) {
        INFO(m.family_tag());
        for (int i = 0; i < 200; ++i) {
            const auto x = to_seq(oracle::random_sparse(g, 8, 20, 0.5));
            const auto y = to_seq(oracle::random_sparse(g, 8, 20, 0.5));
            const double nx = luxemburg_norm(m, x), ny = luxemburg_norm(m, y);
            CHECK(luxemburg_norm(m, x + y) <= (nx + ny) * (1 + 1e-10));
            CHECK_THAT(luxemburg_norm(m, -3.0 * x), WithinRel(3.0 * nx, 1e-10));
            CHECK(within_ball(m, x, nx));
            CHECK_FALSE(within_ball(m, x, nx * (1 - 1e-8)));
        }
    }
}

TEST_CASE("delta2 chain on the unit ball")
{
    Rng rng(21);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const auto m = OrliczFunction::power(p);
        const double c = *m.delta2_constant();
        for (int i = 0; i < 500; ++i) {
            const auto x = random_point_in_ball(rng, m, 1.0, 12, 30);
            CHECK(modular(m, x) >= c * modular(m, 2.0 * x) - 1e-12);
        }
    }
}

TEST_CASE("projections")
{
    const auto x = SparseSequence::from_dense({1, 2, 3});
    CHECK(project_head(x, 2) == SparseSequence::from_dense({1, 2}));
    CHECK(project_tail(x, 2) == SparseSequence::basis(3, 3));
    CHECK(project_head(x, 0).is_zero());
    CHECK(project_tail(x, 0) == x);
    CHECK(project_head(x, 3) == x);
    CHECK(project_tail(x, 7).is_zero());
    std::mt19937_64 g(2);
    const auto m = OrliczFunction::power(1.5);
    for (int i = 0; i < 100; ++i) {
        const auto y = to_seq(oracle::random_sparse(g, 10, 30, 1.0));
        double last = luxemburg_norm(m, y);
        for (std::size_t n = 0; n <= y.max_index(); ++n) {
            CHECK(project_head(y, n) + project_tail(y, n) == y);
            const double t = luxemburg_norm(m, project_tail(y, n));
            CHECK(t <= last * (1 + 1e-12));
            last = t;
        }
        CHECK(luxemburg_norm(m, project_tail(y, y.max_index())) == 0.0);
    }
}

TEST_CASE("nu bound")
{
    const auto l1 = OrliczFunction::power(1), l2 = OrliczFunction::power(2);
    CHECK(nu_bound(l1, 1.0) == 2.0);
    // m = 1, C = 1/4, t̄ = 2: 4 + M(4)/M(1) = 4 + 16
    CHECK(nu_bound(l2, 2.0) == 20.0);
    CHECK(nu_bound(l2, 0.5) == nu_bound(l2, 1.0));
    CHECK(nu_bound(l1, 3.0) == 4.0 + 8.0 / 0.5);
    CHECK_THROWS_WITH(nu_bound(OrliczFunction::non_delta2(), 1.0), "Δ2 certificate required (non-delta2)");
    CHECK_THROWS_AS(nu_bound(l1, 0.0), DomainError);

    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const auto m = OrliczFunction::power(p);
        for (double k : {0.5, 1.0, 2.0, 3.0}) {
            Rng rng(static_cast<std::uint64_t>(p * 100 + k));
            const double bound = nu_bound(m, k);
            double worst = 0.0;
            for (int i = 0; i < 2500; ++i) worst = std::max(worst, modular(m, random_point_in_ball(rng, m, k, 10, 30)));
            CHECK(worst <= bound);
            // the true supremum K^p is also below the bound
            CHECK(std::pow(k, p) <= bound);
        }
    }
}

TEST_CASE("phi bound")
{
    const auto l1 = OrliczFunction::power(1);
    CHECK(phi_bound(l1, 1.0) == 2.0);
    CHECK(phi_bound(l1, 5.0) == 2.0);
    CHECK(phi_bound(l1, 0.125) == 0.25);
    CHECK(phi_bound(l1, 0.124) == 0.25);
    CHECK(phi_bound(l1, 0.126) == 0.5);
    CHECK_THROWS_AS(phi_bound(l1, 0.0), DomainError);
    double last = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double t = std::pow(10.0, -6.0 + 0.1 * i);
        const double b = phi_bound(OrliczFunction::power(1.5), t);
        CHECK(b >= last);
        last = b;
    }
    CHECK(phi_bound(OrliczFunction::power(2), 1e-12) < 1e-4);
}

TEST_CASE("sublevel containment of the modular")
{
    // σ(x) ≤ C^m ⇒ ‖x‖ ≤ 2^{-m}
    for (double p : {1.0, 2.0}) {
        const auto m = OrliczFunction::power(p);
        const double c = *m.delta2_constant();
        Rng rng(static_cast<std::uint64_t>(p * 7));
        for (int k = 1; k <= 8; ++k) {
            for (int i = 0; i < 400; ++i) {
                const auto x = random_point_in_ball(rng, m, 1.0, 6, 20);
                if (modular(m, x) <= std::pow(c, k)) CHECK(luxemburg_norm(m, x) <= std::ldexp(1.0, -k) + 1e-9);
            }
        }
    }
}

TEST_CASE("weights")
{
    const PerturbationWeights a({1, 2, 3}, 0.5);
    CHECK(a[0] == 0.5);
    CHECK(a[1] == 1.0);
    CHECK(a[3] == 3.0);
    CHECK(a[4] == 0.5);
    CHECK(a.sup_norm() == 3.0);
    CHECK(a.min_weight() == 0.5);
    CHECK_THROWS_AS(PerturbationWeights({-1}, 0), DomainError);
    CHECK_THROWS_AS(PerturbationWeights({}, std::nan("")), DomainError);
    const auto b = PerturbationWeights::constant(1.0);
    const auto s = a + b;
    CHECK(s.head() == std::vector<double>{2, 3, 4});
    CHECK(s.tail() == 1.5);
    const auto d = b - a;
    CHECK(d.is_signed());
    CHECK(d[2] == -1.0);
    CHECK(d.positive_part()[4] == 0.5);
    CHECK(d.negative_part()[3] == 2.0);
    CHECK_THROWS_AS(d.as_unsigned(), DomainError);
    CHECK((2.0 * a)[2] == 4.0);

    const auto m = OrliczFunction::power(2);
    const auto x = SparseSequence::from_dense({1, 1, 1, 1});
    CHECK(g_eval(m, a, x) == 1 + 2 + 3 + 0.5);
    CHECK(g_eval(m, PerturbationWeights::constant(1), x) == modular(m, x));
    const auto gb = g_bounds(m, a, 2.0);
    CHECK(gb.bound == 3.0 * 20.0);
    CHECK(gb.lipschitz == 6.0 * nu_bound(m, 3.0));
    CHECK(g_bounds(m, PerturbationWeights::constant(0), 1.0).bound == 0.0);
}

TEST_CASE("ball sampler")
{
    for (const auto& m : families()) {
        INFO(m.family_tag());
        Rng rng(13);
        for (int i = 0; i < 300; ++i) {
            const auto x = random_point_in_ball(rng, m, 1.5, 8, 30);
            CHECK(within_ball(m, x, 1.5));
            CHECK(x.max_index() <= 30);
        }
    }
    SamplerSpec spec;
    spec.count = 50;
    const auto m = OrliczFunction::power(2);
    const auto a = draw_points(spec, m, 1.0), b = draw_points(spec, m, 1.0);
    REQUIRE(a.size() == 51);
    CHECK(a.front().is_zero());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    SamplerSpec grid;
    grid.kind = SamplerSpec::Kind::Grid;
    grid.dims = 2;
    grid.step = 0.5;
    // points of {-1,-.5,0,.5,1}^2 with x²+y² ≤ 1: origin, 4 axis pairs, 4 diagonals
    CHECK(draw_points(grid, m, 1.0).size() == 13);
    grid.extra.push_back(SparseSequence::basis(5, 0.1));
    grid.extra.push_back(SparseSequence::basis(5, 3.0));
    CHECK(draw_points(grid, m, 1.0).size() == 14);
}

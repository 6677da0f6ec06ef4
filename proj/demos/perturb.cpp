// Perturbed minimisation of a shifted distance, then support from below of
// 1 + ||x||^2 on the unit ball, both on a 2-dimensional grid.
#include <cstdio>

#include "orlicz/orlicz.hpp"

int main()
{
    using namespace orlicz;
    const auto m = OrliczFunction::power(2);
    const auto z = parse_sequence("1:0.3,2:-0.2");

    const auto f = objectives::distance(m, z, 1.0, 2.0);
    GridOracle grid(GridSpec::cube(2, 0.01, 1.0));
    const auto rep = perturb_minimize(f, m, 0.1, grid);
    std::printf("%s\n  minimiser (%s), value %.6g, %d iterations, sup|a| = %.6g, %s\n", f.description.c_str(),
                format_sequence(rep.minimizer).c_str(), rep.min_value, rep.iterations, rep.weights.sup_norm(),
                rep.converged ? "converged" : "not converged");
    for (const auto& h : rep.history)
        std::printf("  step %d  eps %.4g  delta %.4g  N %zu  sublevel %zu\n", h.step, h.eps, h.delta, h.tail_index,
                    h.sublevel_size);

    const auto b = objectives::ball_quadratic(m, 1.0);
    GridOracle grid2(GridSpec::cube(2, 0.02, 1.0));
    const auto s = support_from_below(b, m, 1.0, 2.0, grid2);
    std::printf("\n%s\n  x = (%s), f(x) - g_a(x) = %.6g\n  weights head", b.description.c_str(),
                format_sequence(s.point).c_str(), s.value);
    for (double w : s.weights.head()) std::printf(" %.6f", w);
    std::printf(", tail %.6f\n", s.weights.tail());
}

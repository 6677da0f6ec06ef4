// Luxemburg norms, modulars and Δ2 constants for a few families.
#include <cstdio>

#include "orlicz/orlicz.hpp"

int main()
{
    using namespace orlicz;
    const auto x = parse_sequence("1:0.5,2:-0.25,5:0.125");
    for (const char* spec : {"power:1", "power:1.5", "power:2", "power:3", "non-delta2"}) {
        const auto m = parse_family(spec);
        const auto d2 = check_delta2_at_zero(m);
        std::printf("%-11s  norm %.12f  modular %.12f  delta2 %s", spec, luxemburg_norm(m, x), modular(m, x),
                    d2.holds ? "holds" : "fails");
        if (d2.holds) std::printf(" (C = %.6f)", d2.constant);
        std::printf("\n");
    }

    const auto m = OrliczFunction::non_delta2();
    std::printf("\nnon-delta2 witnesses\n   k   t_k        i_k   sigma(x)  sigma(2x)  norm\n");
    for (int k : {5, 10, 20, 50}) {
        const auto w = non_delta2_witness(m, k);
        std::printf("%4d   %.6f  %5zu  %.6f  %.6f   %.6f\n", k, w.t, w.count, w.sigma, w.sigma_double, w.norm);
    }
}

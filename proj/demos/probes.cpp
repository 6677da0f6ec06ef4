// Smoothness obstruction probes and the resulting classification.
#include <cmath>
#include <cstdio>

#include "orlicz/orlicz.hpp"

namespace {

void show(const orlicz::ProbeReport& r)
{
    std::printf("%s: %s\n", r.name.c_str(), orlicz::to_string(r.verdict));
    for (std::size_t i = 0; i < r.scales.size(); ++i) std::printf("  t = %-10.4g q = %.6g\n", r.scales[i], r.quotients[i]);
    for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
}

} // namespace

int main()
{
    using namespace orlicz;
    std::vector<double> v;
    for (int j = 1; j <= 20; ++j) v.push_back(std::ldexp(1.0, -j));
    show(probe_l1(OrliczFunction::power(1), PerturbationWeights::constant(1), SparseSequence::from_dense(v),
                  decade_scales(-2, -6)));
    show(probe_p_growth(OrliczFunction::power(1.5), 2.0, 10));
    show(probe_second_derivative(OrliczFunction::power(1.5), decade_scales(-1, -6)));

    for (const char* spec : {"power:1", "power:1.5", "power:2", "non-delta2"}) {
        const auto c = classify_space(parse_family(spec));
        std::printf("\n%s: %s\n", spec, c.summary.c_str());
        for (const auto& e : c.exclusions) std::printf("  excludes %s\n", e.c_str());
    }
}

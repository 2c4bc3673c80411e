// Measures the frozen constants in include/lacuna/calibration.hpp and prints them.
#include "lacuna/calibration.hpp"
#include "lacuna/carleson.hpp"
#include "lacuna/diagonal.hpp"
#include "lacuna/experiments.hpp"
#include "lacuna/packets.hpp"

#include <algorithm>
#include <cstdio>

using namespace lacuna;

int main() {
    const auto seed = calibration::kSeed;
    double jn_constant = 0.0, lo = 1e300, hi = 0.0, mean = 0.0;
    const std::size_t trials = 100;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto b = random_weight(trial_seed(seed, t), 12, 5);
        for (double p : {1.0, 1.5}) {
            const auto c = jn_certificate(b.scaled(1.0 / cm_norm(b, p)), p, 0.05);
            if (!c.valid) std::fprintf(stderr, "warning: invalid certificate at trial %zu p=%g\n", t, p);
            jn_constant = std::max(jn_constant, c.constant);
        }
    }
    // The equivalence interval is taken over a larger sample than any gated run uses.
    const std::size_t ratio_trials = 1000;
    for (std::size_t t = 0; t < ratio_trials; ++t) {
        const double r = jn_ratio(random_weight(trial_seed(seed, t), 12, 5), 1, 2);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        mean += r;
    }
    mean /= ratio_trials;

    double journe = 0.0;
    for (std::size_t t = 0; t < 500; ++t) {
        const auto r = journe_verify(journe_weight(trial_seed(seed ^ 0x4a6fULL, t), 0.25), 0.25);
        if (r.hypothesis) journe = std::max(journe, r.cm1);
    }

    const DyadicRectangle er{-6, -6, 5, 5, 0};
    const auto env = envelope_check(ShiftedGrid::base(1024, 1.0), er, nearest_generator_slope(er.slope()));

    std::printf("kJnConstant = %.6g\n", jn_constant);
    std::printf("kJnRatioMin = %.6g\nkJnRatioMax = %.6g\nkJnRatioMean = %.6g\n", lo, hi, mean);
    std::printf("kJourneCm1 = %.6g\n", journe);
    std::printf("kEnvelopeCenter = %.6g\n", env.center_ratio);
}

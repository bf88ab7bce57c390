#include "arnav/ztest.hpp"

#include <cmath>
#include <string>

#include "arnav/errors.hpp"

namespace arnav {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

ZTestResult z_test(double mean1, double sd1, int n1, double mean2, double sd2,
                   int n2) {
    if (n1 < 2 || n2 < 2)
        throw ValidationError("z_test: sample sizes must be >= 2 (got " +
                              std::to_string(n1) + ", " + std::to_string(n2) + ")");
    if (sd1 < 0.0 || sd2 < 0.0)
        throw ValidationError("z_test: standard deviations must be >= 0");

    ZTestResult r;
    r.se1 = sd1 / std::sqrt(static_cast<double>(n1));
    r.se2 = sd2 / std::sqrt(static_cast<double>(n2));
    r.mean_diff = std::abs(mean1 - mean2);
    const double denom_sq = r.se1 * r.se1 + r.se2 * r.se2;
    if (denom_sq == 0.0)
        throw DegenerateVariance("z_test: both standard errors are zero");
    r.z = r.mean_diff / std::sqrt(denom_sq);
    // 2*(1 - Phi(z)) written as erfc(z/sqrt(2)) to keep precision in the tail.
    r.p_two_sided = std::erfc(r.z / std::sqrt(2.0));
    return r;
}

}  // namespace arnav

#pragma once

namespace arnav {

/// Two-sample Z-test on summary statistics (absolute-value numerator, so
/// z >= 0 and the test is symmetric in its arguments).
struct ZTestResult {
    double z = 0.0;
    double p_two_sided = 1.0;
    double se1 = 0.0;  // sd1 / sqrt(n1), mm
    double se2 = 0.0;
    double mean_diff = 0.0;  // |mean1 - mean2|, mm
};

/// Standard normal CDF via the complementary error function
/// (absolute error well below 1e-12; no lookup table).
double normal_cdf(double z);

/// z = |mean1 - mean2| / sqrt(sd1^2/n1 + sd2^2/n2); p = 2*(1 - Phi(z)).
/// Requires n1, n2 >= 2 and sd1, sd2 >= 0; throws DegenerateVariance when
/// both standard errors vanish.
ZTestResult z_test(double mean1, double sd1, int n1, double mean2, double sd2,
                   int n2);

}  // namespace arnav

#pragma once

#include <cstddef>
#include <vector>

namespace sbs::stats {

/// Natural log of the gamma function (Lanczos approximation), x > 0.
[[nodiscard]] double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
[[nodiscard]] double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
[[nodiscard]] double gamma_q(double a, double x);

/// Upper-tail probability of the chi-square distribution with df degrees of
/// freedom: P(X >= x).
[[nodiscard]] double chi_square_sf(double x, double df);

/// Population mean and standard deviation (dividing by N, not N-1).
struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
};

[[nodiscard]] Moments population_moments(const std::vector<double>& values);

}  // namespace sbs::stats

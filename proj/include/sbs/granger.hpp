#pragma once

#include <cstddef>
#include <vector>

namespace sbs {

/// One lag's Granger test result.
struct GrangerLag {
    int lag = 0;
    double chi2 = 0.0;       ///< Wald chi-square statistic
    int df = 0;              ///< degrees of freedom (= lag)
    double p_value = 1.0;    ///< chi-square upper tail
};

/// Granger-causality test: do lagged values of x improve the prediction of y
/// beyond y's own lags?
///
/// For each L in 1..max_lag, two OLS models are fit on the same sample:
///   restricted:    y_t = c + a_1 y_{t-1} + ... + a_L y_{t-L}
///   unrestricted:  ... + b_1 x_{t-1} + ... + b_L x_{t-L}
/// and the asymptotic Wald statistic T * (RSS_r - RSS_u) / RSS_u is referred
/// to a chi-square distribution with L degrees of freedom (T = number of
/// usable observations at that lag).
///
/// difference_y / difference_x first-difference the series, a common
/// stationarity transform; no automatic stationarity testing is performed.
///
/// Throws std::invalid_argument when the series are misaligned, contain
/// non-finite values, or are shorter than 3*max_lag + 5 after differencing.
/// Throws DegenerateFitError, naming the offending lag block, when a design
/// matrix is (numerically) rank deficient.
[[nodiscard]] std::vector<GrangerLag> granger_test(const std::vector<double>& y,
                                                   const std::vector<double>& x, int max_lag,
                                                   bool difference_y = false,
                                                   bool difference_x = false);

}  // namespace sbs

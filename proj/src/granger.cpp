#include "sbs/granger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sbs/errors.hpp"
#include "sbs/stats.hpp"

namespace sbs {

namespace {

std::vector<double> first_difference(const std::vector<double>& s) {
    std::vector<double> d;
    if (s.size() < 2) return d;
    d.reserve(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) d.push_back(s[i] - s[i - 1]);
    return d;
}

// In-place Cholesky solve of A b = rhs for symmetric positive definite A
// (row-major k x k). Returns false when a pivot is not strictly positive.
bool cholesky_solve(std::vector<double> a, std::vector<double> rhs, std::size_t k,
                    std::vector<double>& solution) {
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double sum = a[i * k + j];
            for (std::size_t m = 0; m < i; ++m) sum -= a[i * k + m] * a[j * k + m];
            if (i == j) {
                if (sum <= 0.0) return false;
                a[i * k + i] = std::sqrt(sum);
            } else {
                a[j * k + i] = sum / a[i * k + i];
            }
        }
    }
    // Forward then back substitution on the lower factor.
    for (std::size_t i = 0; i < k; ++i) {
        double sum = rhs[i];
        for (std::size_t m = 0; m < i; ++m) sum -= a[i * k + m] * rhs[m];
        rhs[i] = sum / a[i * k + i];
    }
    solution.assign(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
        double sum = rhs[i];
        for (std::size_t m = i + 1; m < k; ++m) sum -= a[m * k + i] * solution[m];
        solution[i] = sum / a[i * k + i];
    }
    return true;
}

// OLS residual sum of squares via normal equations. A tiny ridge is used to
// detect rank deficiency, not to mask it: if adding 1e-10 to the diagonal
// moves the RSS by more than 1e-6 relative, the design is declared singular.
double ols_rss(const std::vector<std::vector<double>>& rows, const std::vector<double>& targets,
               const std::string& context) {
    const std::size_t t_count = rows.size();
    const std::size_t k = rows.front().size();
    std::vector<double> xtx(k * k, 0.0);
    std::vector<double> xty(k, 0.0);
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += rows[t][i] * targets[t];
            for (std::size_t j = i; j < k; ++j) xtx[i * k + j] += rows[t][i] * rows[t][j];
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) xtx[i * k + j] = xtx[j * k + i];
    }

    auto rss_for = [&](double ridge, std::vector<double>& beta) -> bool {
        std::vector<double> a = xtx;
        for (std::size_t i = 0; i < k; ++i) a[i * k + i] += ridge;
        return cholesky_solve(std::move(a), xty, k, beta);
    };
    auto residual_sum = [&](const std::vector<double>& beta) {
        double rss = 0.0;
        for (std::size_t t = 0; t < t_count; ++t) {
            double fit = 0.0;
            for (std::size_t i = 0; i < k; ++i) fit += rows[t][i] * beta[i];
            const double r = targets[t] - fit;
            rss += r * r;
        }
        return rss;
    };

    std::vector<double> beta_plain, beta_ridge;
    if (!rss_for(0.0, beta_plain) || !rss_for(1e-10, beta_ridge))
        throw DegenerateFitError("degenerate fit: singular design matrix in " + context);
    const double rss_plain = residual_sum(beta_plain);
    const double rss_ridge = residual_sum(beta_ridge);
    const double denom = std::max(rss_plain, 1e-300);
    if (std::fabs(rss_ridge - rss_plain) / denom > 1e-6)
        throw DegenerateFitError("degenerate fit: collinear regressors in " + context);
    return rss_ridge;
}

}  // namespace

std::vector<GrangerLag> granger_test(const std::vector<double>& y, const std::vector<double>& x,
                                     int max_lag, bool difference_y, bool difference_x) {
    if (max_lag < 1) throw std::invalid_argument("max_lag must be >= 1");
    if (y.size() != x.size()) throw std::invalid_argument("series must be aligned (equal length)");
    for (const double v : y) {
        if (!std::isfinite(v)) throw std::invalid_argument("y contains missing or non-finite values");
    }
    for (const double v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument("x contains missing or non-finite values");
    }

    const std::vector<double> ys = difference_y ? first_difference(y) : y;
    const std::vector<double> xs = difference_x ? first_difference(x) : x;
    const std::size_t len = std::min(ys.size(), xs.size());
    const std::size_t needed = 3 * static_cast<std::size_t>(max_lag) + 5;
    if (len < needed) {
        throw std::invalid_argument("series too short after differencing: have " +
                                    std::to_string(len) + ", need " + std::to_string(needed));
    }
    // Differencing one series shortens it by one; align both to the tail.
    const std::vector<double> ya(ys.end() - static_cast<std::ptrdiff_t>(len), ys.end());
    const std::vector<double> xa(xs.end() - static_cast<std::ptrdiff_t>(len), xs.end());

    std::vector<GrangerLag> results;
    results.reserve(static_cast<std::size_t>(max_lag));
    for (int lag = 1; lag <= max_lag; ++lag) {
        const std::size_t l = static_cast<std::size_t>(lag);
        const std::size_t t_count = len - l;

        std::vector<std::vector<double>> restricted(t_count), unrestricted(t_count);
        std::vector<double> targets(t_count);
        for (std::size_t t = 0; t < t_count; ++t) {
            const std::size_t at = t + l;
            targets[t] = ya[at];
            auto& r = restricted[t];
            r.reserve(1 + l);
            r.push_back(1.0);
            for (std::size_t i = 1; i <= l; ++i) r.push_back(ya[at - i]);
            auto& u = unrestricted[t];
            u.reserve(1 + 2 * l);
            u = r;
            for (std::size_t i = 1; i <= l; ++i) u.push_back(xa[at - i]);
        }

        const std::string tag = "lag " + std::to_string(lag);
        const double rss_r = ols_rss(restricted, targets, "restricted y-lag block at " + tag);
        const double rss_u = ols_rss(unrestricted, targets, "unrestricted x-lag block at " + tag);
        if (rss_u <= 0.0)
            throw DegenerateFitError("degenerate fit: zero residual variance at " + tag);

        GrangerLag result;
        result.lag = lag;
        result.df = lag;
        result.chi2 = std::max(0.0, static_cast<double>(t_count) * (rss_r - rss_u) / rss_u);
        result.p_value = stats::chi_square_sf(result.chi2, static_cast<double>(lag));
        results.push_back(result);
    }
    return results;
}

}  // namespace sbs

#include "spantree/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace spantree {

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double alpha) {
    if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be positive");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes out of range");
    double z = normal_quantile(1.0 - alpha / 2.0);
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p in (0,1) required");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double chi_square_pvalue(double statistic, int df) {
    if (df <= 0) throw std::invalid_argument("chi_square_pvalue: df must be positive");
    if (statistic <= 0.0) return 1.0;
    boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

double ks_pvalue(double statistic, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("ks_pvalue: n must be positive");
    double lambda = (std::sqrt(static_cast<double>(n)) + 0.12 + 0.11 / std::sqrt(static_cast<double>(n))) * statistic;
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::min(1.0, std::max(0.0, sum));
}

double ks_statistic_uniform(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("ks_statistic_uniform: empty sample");
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double cdf = xs[i]; // uniform CDF
        d = std::max(d, std::fabs((i + 1) / n - cdf));
        d = std::max(d, std::fabs(cdf - i / n));
    }
    return d;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two points");
    if (!w.empty() && w.size() != x.size())
        throw std::invalid_argument("fit_line: weight size mismatch");
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double wi = w.empty() ? 1.0 : w[i];
        sw += wi;
        sx += wi * x[i];
        sy += wi * y[i];
        sxx += wi * x[i] * x[i];
        sxy += wi * x[i] * y[i];
    }
    double det = sw * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f;
    f.n_points = static_cast<int>(x.size());
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;
    // Slope variance: from the weights when given (treated as inverse variances),
    // otherwise from the residual scatter.
    if (!w.empty()) {
        f.slope_stderr = std::sqrt(sw / det);
    } else {
        double rss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double r = y[i] - (f.intercept + f.slope * x[i]);
            rss += r * r;
        }
        double dof = std::max<double>(1.0, static_cast<double>(x.size()) - 2.0);
        f.slope_stderr = std::sqrt(rss / dof * sw / det);
    }
    return f;
}

} // namespace spantree

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace spantree {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Wilson score interval for a binomial proportion at confidence 1-alpha.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double alpha = 0.05);

double normal_quantile(double p);                    // inverse standard normal CDF
double chi_square_pvalue(double statistic, int df);  // upper tail
double ks_pvalue(double statistic, std::int64_t n);  // asymptotic Kolmogorov upper tail

// One-sample Kolmogorov-Smirnov statistic against Uniform[0,1]; sorts a copy.
double ks_statistic_uniform(std::vector<double> xs);

/* Weighted least squares fit y = intercept + slope * x. */
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    int n_points = 0;
};

// weights are inverse variances of the y values; empty weights = unweighted.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w = {});

} // namespace spantree

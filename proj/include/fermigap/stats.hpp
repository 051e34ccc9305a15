#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fermigap {

double mean(std::span<const double> xs);
double median(std::vector<double> xs);

// Two-sided one-sample Kolmogorov-Smirnov statistic
// sup_x |F_empirical(x) - cdf(x)|.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// sqrt(p (1 - p) / trials).
double binomial_standard_error(double p, long long trials);

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace fermigap

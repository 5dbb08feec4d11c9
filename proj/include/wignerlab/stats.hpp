#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace wignerlab {

/// Sample summary.
///   mean, sd: unbiased (n - 1) estimators; se = sd / sqrt(n).
///   skewness: G1 = g1 sqrt(n (n - 1)) / (n - 2), g1 = m3 / m2^(3/2).
///   excess_kurtosis: G2 = (n - 1) / ((n - 2)(n - 3)) ((n + 1) g2 + 6), g2 = m4 / m2^2 - 3.
/// m2, m3, m4 are the biased central sample moments. Skewness and kurtosis are left empty for
/// constant samples (flagged `degenerate`) or too few points.
struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0;
    std::optional<double> skewness;
    std::optional<double> excess_kurtosis;
    bool degenerate = false;
};

/// Throws std::invalid_argument for fewer than two samples.
Summary summarize(std::span<const double> samples);

double normal_cdf(double x, double mean, double variance);

/// Asymptotic Kolmogorov tail P(K > sqrt(n) d) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 n d^2).
double kolmogorov_pvalue(double statistic, std::size_t n);

struct NormalityResult {
    double statistic = 0.0;  // sup |F_n - Phi|
    double p_value = 1.0;
};

constexpr std::size_t kMinNormalitySamples = 1000;

/// One-sample KS test against Normal(mean0, var0). Throws std::invalid_argument when var0 <= 0 or
/// fewer than kMinNormalitySamples samples are given.
NormalityResult normality_test(std::span<const double> samples, double mean0, double var0);

double median(std::span<const double> values);

/// Standard error of the unbiased sample variance, sqrt((m4 - m2^2) / n) with central moments.
double variance_standard_error(std::span<const double> samples);

/// Unbiased sample covariance and the standard error sqrt(Var[(x - xbar)(y - ybar)] / n).
struct CovarianceEstimate {
    double value = 0.0;
    double se = 0.0;
};
CovarianceEstimate sample_covariance(std::span<const double> x, std::span<const double> y);

}  // namespace wignerlab

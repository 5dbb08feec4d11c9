#include "wignerlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wignerlab {

namespace {

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

}  // namespace

Summary summarize(std::span<const double> samples) {
    if (samples.size() < 2) throw std::invalid_argument("summarize needs at least two samples");
    Summary s;
    s.n = samples.size();
    const double n = static_cast<double>(s.n);
    s.mean = mean_of(samples);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : samples) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    s.sd = std::sqrt(m2 / (n - 1.0));
    s.se = s.sd / std::sqrt(n);
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0.0) {
        s.degenerate = true;
        return s;
    }
    if (s.n >= 3) {
        const double g1 = m3 / std::pow(m2, 1.5);
        s.skewness = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
    }
    if (s.n >= 4) {
        const double g2 = m4 / (m2 * m2) - 3.0;
        s.excess_kurtosis = (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * g2 + 6.0);
    }
    return s;
}

double normal_cdf(double x, double mean, double variance) {
    const double z = (x - mean) / std::sqrt(variance);
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double kolmogorov_pvalue(double statistic, std::size_t n) {
    const double lambda = std::sqrt(static_cast<double>(n)) * statistic;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

NormalityResult normality_test(std::span<const double> samples, double mean0, double var0) {
    if (!(var0 > 0.0)) throw std::invalid_argument("normality_test: reference variance must be positive");
    if (samples.size() < kMinNormalitySamples) {
        throw std::invalid_argument("normality_test: needs at least 1000 samples");
    }
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = normal_cdf(x[i], mean0, var0);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return {d, kolmogorov_pvalue(d, x.size())};
}

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty sequence");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double variance_standard_error(std::span<const double> samples) {
    const double mu = mean_of(samples);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : samples) {
        const double d2 = (v - mu) * (v - mu);
        m2 += d2;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(samples.size());
    m2 /= n;
    m4 /= n;
    return std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
}

CovarianceEstimate sample_covariance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("sample_covariance needs two equal-length samples of size >= 2");
    }
    const double mx = mean_of(x);
    const double my = mean_of(y);
    const double n = static_cast<double>(x.size());
    std::vector<double> prod(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) prod[i] = (x[i] - mx) * (y[i] - my);
    const double mp = mean_of(prod);
    double vp = 0.0;
    for (double p : prod) vp += (p - mp) * (p - mp);
    vp /= n;
    return {mp * n / (n - 1.0), std::sqrt(vp / n)};
}

}  // namespace wignerlab

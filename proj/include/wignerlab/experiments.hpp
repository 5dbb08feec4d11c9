#pragma once

#include "wignerlab/combinatorics.hpp"
#include "wignerlab/oracle.hpp"
#include "wignerlab/randmat.hpp"
#include "wignerlab/stats.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wignerlab {

enum class Verdict { Pass, Fail, Insufficient, NotApplicable };

std::string to_string(Verdict v);

/// Runs body(i) for i in [0, count) on `threads` workers. Work is split by index only, so any
/// output written to slot i is independent of the worker count. The first exception is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

struct Thresholds {
    double variance_relative = 0.10;   // variance verdict tolerance: max(rel * |pred|, se_multiple * SE)
    double se_multiple = 4.0;
    double normality_alpha = 0.01;     // reject normality when p < alpha
    std::size_t min_replicas = 1000;   // fewer replicas downgrade verdicts to insufficient
};

struct LlnConfig {
    std::vector<std::size_t> grid{100, 400, 1600};
    int K = 6;
    std::size_t replicas = 20;
    EntryKind diag = EntryKind::Gaussian;
    EntryKind offdiag = EntryKind::Gaussian;
    std::uint64_t seed = 1;
    SpectrumSolver solver = SpectrumSolver::Auto;
};

struct LlnMoment {
    int k = 0;
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0;
    double target = 0.0;
    double error = 0.0;  // |mean - target|
};

struct LlnCell {
    std::size_t N = 0;
    std::size_t replicas = 0;
    std::vector<LlnMoment> moments;
    std::vector<double> ks_spectral;   // per replica
    std::vector<double> ks_empirical;
    double median_ks_spectral = 0.0;
    double median_ks_empirical = 0.0;
    std::optional<std::string> error;
};

struct LlnTrend {
    int k = 0;
    double error_smallest_N = 0.0;
    double error_largest_N = 0.0;
    /// Least-squares slope of log Var<nu_N, x^k> against log N; empty when undefined.
    std::optional<double> variance_exponent;
};

struct LlnReport {
    LlnConfig config;
    std::vector<LlnCell> cells;
    std::vector<LlnTrend> trends;
    bool ks_spectral_decreasing = false;
    bool ks_empirical_decreasing = false;
    Verdict ks_trend = Verdict::NotApplicable;
};

LlnReport run_lln(const LlnConfig& config, int threads = 1);

struct CltConfig {
    std::size_t N = 500;
    int K = 4;
    std::size_t replicas = 20000;
    EntryKind diag = EntryKind::Gaussian;
    EntryKind offdiag = EntryKind::Gaussian;
    std::uint64_t seed = 1;
    EnumerationCaps caps;
    Thresholds thresholds;
};

enum class LimitShape { Gaussian, Mixture, Degenerate };

std::string to_string(LimitShape s);

struct CltOrder {
    int k = 0;
    std::int64_t a_k = 0;
    LimitShape limit = LimitShape::Gaussian;
    double moment_mean = 0.0;     // cross-replica mean of X^k(1,1), used for centering
    double centering_se = 0.0;    // SE of that mean, scaled by sqrt(N)
    Summary summary;              // of the centered samples
    double variance = 0.0;
    double variance_se = 0.0;
    double predicted_variance = 0.0;
    std::optional<double> predicted_kurtosis;
    std::optional<NormalityResult> normality;
    Verdict variance_verdict = Verdict::NotApplicable;
    Verdict normality_verdict = Verdict::NotApplicable;
    Verdict kurtosis_verdict = Verdict::NotApplicable;
};

struct CltCovariance {
    int k = 0;
    int l = 0;
    double sample = 0.0;
    double se = 0.0;
    double predicted = 0.0;
    Verdict verdict = Verdict::NotApplicable;
};

struct CltReport {
    CltConfig config;
    std::vector<CltOrder> orders;              // k = 1..K
    std::vector<CltCovariance> covariances;    // k < l
    std::vector<std::vector<double>> sample_cov;
    std::vector<std::vector<double>> predicted_cov;
    std::vector<CovarianceEntry> table;        // A(k, l) cells used
    /// Centered samples, samples[k - 1][replica]. Not serialized.
    std::vector<std::vector<double>> samples;
    Verdict overall = Verdict::NotApplicable;
};

CltReport run_clt(const CltConfig& config, int threads = 1);

/// Monte Carlo estimate of E[X_N^k(1,1)] (k2 == 0) or of Cov(X^k(1,1), X^k2(1,1)).
struct ExactCheck {
    double estimate = 0.0;
    double se = 0.0;
    std::size_t replicas = 0;
};

ExactCheck monte_carlo_moment(const EnsembleSpec& spec, int k, int k2, std::size_t replicas, int threads = 1);

struct ExactConfig {
    std::size_t N = 2;
    int k = 2;
    int k2 = 0;  // nonzero selects the covariance of the k-th and k2-th moments
    EntryKind diag = EntryKind::Gaussian;
    EntryKind offdiag = EntryKind::Gaussian;
    std::uint64_t seed = 1;
    std::size_t replicas = 0;  // > 0 adds a Monte Carlo cross-check
    BruteForceBudget budget;
    Thresholds thresholds;
};

struct ExactReport {
    ExactConfig config;
    std::string profile;
    FiniteNValue value;
    std::optional<ExactCheck> monte_carlo;
    std::optional<double> z_score;
    Verdict verdict = Verdict::NotApplicable;  // Monte Carlo within se_multiple SE of the exact value
};

ExactReport run_exact(const ExactConfig& config, int threads = 1);

}  // namespace wignerlab

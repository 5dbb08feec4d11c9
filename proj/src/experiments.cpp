#include "wignerlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace wignerlab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Insufficient: return "insufficient";
        case Verdict::NotApplicable: return "n/a";
    }
    return "?";
}

std::string to_string(LimitShape s) {
    switch (s) {
        case LimitShape::Gaussian: return "gaussian";
        case LimitShape::Mixture: return "mixture";
        case LimitShape::Degenerate: return "degenerate";
    }
    return "?";
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count && !stop; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        stop = true;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

namespace {

Verdict within(double observed, double predicted, double tolerance) {
    return std::abs(observed - predicted) <= tolerance ? Verdict::Pass : Verdict::Fail;
}

std::optional<double> log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    if (lx.size() < 2) return std::nullopt;
    const double n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

}  // namespace

LlnReport run_lln(const LlnConfig& config, int threads) {
    if (config.grid.empty()) throw std::invalid_argument("lln: N grid is empty");
    if (config.K < 1) throw std::invalid_argument("lln: K must be positive");
    if (config.replicas < 2) throw std::invalid_argument("lln: at least two replicas are required");
    for (std::size_t i = 1; i < config.grid.size(); ++i) {
        if (config.grid[i] <= config.grid[i - 1]) throw std::invalid_argument("lln: N grid must increase");
    }

    LlnReport report;
    report.config = config;
    for (std::size_t N : config.grid) {
        LlnCell cell;
        cell.N = N;
        cell.replicas = config.replicas;
        EnsembleSpec spec{N, {config.diag}, {config.offdiag}, config.seed};
        std::vector<std::vector<double>> moments(config.replicas);
        cell.ks_spectral.assign(config.replicas, 0.0);
        cell.ks_empirical.assign(config.replicas, 0.0);
        try {
            spec.validate();
            parallel_for(config.replicas, threads, [&](std::size_t r) {
                const SymMatrix a = sample_wigner(spec, r);
                moments[r] = spectral_moments(a, config.K);
                const SpectralMeasures m = spectral_measures(a, config.solver);
                cell.ks_spectral[r] = ks_distance(m.spectral, semicircle_cdf);
                cell.ks_empirical[r] = ks_distance(m.empirical, semicircle_cdf);
            });
        } catch (const std::exception& e) {
            cell.error = e.what();
            report.cells.push_back(std::move(cell));
            continue;
        }
        for (int k = 1; k <= config.K; ++k) {
            std::vector<double> xs(config.replicas);
            for (std::size_t r = 0; r < config.replicas; ++r) xs[r] = moments[r][k - 1];
            const Summary s = summarize(xs);
            const double target = semicircle_moment(k);
            cell.moments.push_back({k, s.mean, s.sd, s.se, target, std::abs(s.mean - target)});
        }
        cell.median_ks_spectral = median(cell.ks_spectral);
        cell.median_ks_empirical = median(cell.ks_empirical);
        report.cells.push_back(std::move(cell));
    }

    const bool any_error = std::any_of(report.cells.begin(), report.cells.end(),
                                       [](const LlnCell& c) { return c.error.has_value(); });
    if (!any_error) {
        std::vector<double> ns;
        for (const auto& c : report.cells) ns.push_back(static_cast<double>(c.N));
        for (int k = 1; k <= config.K; ++k) {
            LlnTrend t;
            t.k = k;
            t.error_smallest_N = report.cells.front().moments[k - 1].error;
            t.error_largest_N = report.cells.back().moments[k - 1].error;
            std::vector<double> vars;
            for (const auto& c : report.cells) vars.push_back(c.moments[k - 1].sd * c.moments[k - 1].sd);
            t.variance_exponent = log_log_slope(ns, vars);
            report.trends.push_back(t);
        }
        if (report.cells.size() >= 2) {
            report.ks_spectral_decreasing = true;
            report.ks_empirical_decreasing = true;
            for (std::size_t i = 1; i < report.cells.size(); ++i) {
                const auto& prev = report.cells[i - 1];
                const auto& cur = report.cells[i];
                report.ks_spectral_decreasing &= cur.median_ks_spectral < prev.median_ks_spectral;
                report.ks_empirical_decreasing &= cur.median_ks_empirical < prev.median_ks_empirical;
            }
            report.ks_trend = report.ks_spectral_decreasing ? Verdict::Pass : Verdict::Fail;
        }
    } else {
        report.ks_trend = Verdict::Fail;
    }
    return report;
}

CltReport run_clt(const CltConfig& config, int threads) {
    if (config.K < 1) throw std::invalid_argument("clt: K must be positive");
    if (config.replicas < 2) throw std::invalid_argument("clt: at least two replicas are required");
    const EnsembleSpec spec{config.N, {config.diag}, {config.offdiag}, config.seed};
    spec.validate();
    const MomentProfile profile = spec.profile();
    const int K = config.K;
    const std::size_t M = config.replicas;
    const Thresholds& th = config.thresholds;

    CltReport report;
    report.config = config;
    CovarianceTable table;
    if (K >= 2) table = CovarianceTable::build(K, profile, config.caps, threads);
    report.table = table.entries();
    report.predicted_cov = limit_cov_matrix(K, table, profile, config.caps);

    std::vector<std::vector<double>> raw(M);
    parallel_for(M, threads, [&](std::size_t r) { raw[r] = spectral_moments(sample_wigner(spec, r), K); });

    const double root_n = std::sqrt(static_cast<double>(config.N));
    report.samples.assign(K, std::vector<double>(M, 0.0));
    const bool enough = M >= th.min_replicas;
    const double d2 = profile.diag(2).value;
    const double d4 = profile.diag(4).value;

    for (int k = 1; k <= K; ++k) {
        CltOrder o;
        o.k = k;
        o.a_k = a_coefficient(k, config.caps);
        double mean = 0.0;
        for (std::size_t r = 0; r < M; ++r) mean += raw[r][k - 1];
        mean /= static_cast<double>(M);
        o.moment_mean = mean;
        auto& s = report.samples[k - 1];
        for (std::size_t r = 0; r < M; ++r) s[r] = root_n * (raw[r][k - 1] - mean);

        o.summary = summarize(s);
        o.centering_se = o.summary.se;
        o.variance = o.summary.sd * o.summary.sd;
        o.variance_se = variance_standard_error(s);
        o.predicted_variance = report.predicted_cov[k - 1][k - 1];

        const double ak = static_cast<double>(o.a_k);
        if (o.predicted_variance <= 0.0) {
            o.limit = LimitShape::Degenerate;
        } else if (o.a_k == 0 || config.diag == EntryKind::Gaussian || config.diag == EntryKind::Zero) {
            o.limit = LimitShape::Gaussian;
            o.predicted_kurtosis = 0.0;
        } else {
            // a_k zeta + eta_k with zeta independent of eta_k: the fourth cumulant comes from zeta only.
            o.limit = LimitShape::Mixture;
            const double v = o.predicted_variance;
            o.predicted_kurtosis = std::pow(ak, 4) * (d4 - 3.0 * d2 * d2) / (v * v);
        }

        if (!enough) {
            o.variance_verdict = Verdict::Insufficient;
            o.normality_verdict = o.limit == LimitShape::Gaussian ? Verdict::Insufficient : Verdict::NotApplicable;
            o.kurtosis_verdict = o.limit == LimitShape::Mixture ? Verdict::Insufficient : Verdict::NotApplicable;
        } else {
            const double tol = std::max(th.variance_relative * std::abs(o.predicted_variance),
                                        th.se_multiple * o.variance_se);
            o.variance_verdict = within(o.variance, o.predicted_variance, tol);
            if (o.limit == LimitShape::Gaussian) {
                o.normality = normality_test(s, 0.0, o.predicted_variance);
                o.normality_verdict = o.normality->p_value < th.normality_alpha ? Verdict::Fail : Verdict::Pass;
            }
            if (o.limit == LimitShape::Mixture) {
                const double kse = std::sqrt(24.0 / static_cast<double>(M));
                const double ktol = std::max(th.variance_relative * std::abs(*o.predicted_kurtosis),
                                             th.se_multiple * kse);
                o.kurtosis_verdict = o.summary.excess_kurtosis
                                         ? within(*o.summary.excess_kurtosis, *o.predicted_kurtosis, ktol)
                                         : Verdict::Fail;
            }
        }
        report.orders.push_back(std::move(o));
    }

    report.sample_cov.assign(K, std::vector<double>(K, 0.0));
    for (int k = 1; k <= K; ++k) {
        for (int l = k; l <= K; ++l) {
            const CovarianceEstimate c = sample_covariance(report.samples[k - 1], report.samples[l - 1]);
            report.sample_cov[k - 1][l - 1] = c.value;
            report.sample_cov[l - 1][k - 1] = c.value;
            if (l == k) continue;
            CltCovariance cv{k, l, c.value, c.se, report.predicted_cov[k - 1][l - 1], Verdict::Insufficient};
            if (enough) cv.verdict = within(cv.sample, cv.predicted, th.se_multiple * cv.se);
            report.covariances.push_back(cv);
        }
    }

    bool any_fail = false;
    bool any_insufficient = false;
    auto note = [&](Verdict v) {
        any_fail |= v == Verdict::Fail;
        any_insufficient |= v == Verdict::Insufficient;
    };
    for (const auto& o : report.orders) {
        note(o.variance_verdict);
        note(o.normality_verdict);
        note(o.kurtosis_verdict);
    }
    for (const auto& c : report.covariances) note(c.verdict);
    report.overall = any_fail ? Verdict::Fail : any_insufficient ? Verdict::Insufficient : Verdict::Pass;
    return report;
}

ExactCheck monte_carlo_moment(const EnsembleSpec& spec, int k, int k2, std::size_t replicas, int threads) {
    if (k < 1 || k2 < 0) throw std::invalid_argument("monte_carlo_moment: invalid orders");
    if (replicas < 2) throw std::invalid_argument("monte_carlo_moment: at least two replicas are required");
    spec.validate();
    const int K = std::max(k, k2);
    std::vector<double> x(replicas);
    std::vector<double> y(k2 > 0 ? replicas : 0);
    parallel_for(replicas, threads, [&](std::size_t r) {
        const auto m = spectral_moments(sample_wigner(spec, r), K);
        x[r] = m[k - 1];
        if (k2 > 0) y[r] = m[k2 - 1];
    });
    ExactCheck out;
    out.replicas = replicas;
    if (k2 == 0) {
        const Summary s = summarize(x);
        out.estimate = s.mean;
        out.se = s.se;
    } else {
        const CovarianceEstimate c = sample_covariance(x, y);
        out.estimate = c.value;
        out.se = c.se;
    }
    return out;
}

ExactReport run_exact(const ExactConfig& config, int threads) {
    const EnsembleSpec spec{config.N, {config.diag}, {config.offdiag}, config.seed};
    spec.validate();
    const MomentProfile profile = spec.profile();
    const int n = static_cast<int>(config.N);
    ExactReport r;
    r.config = config;
    r.profile = profile.name();
    r.value = config.k2 == 0 ? exact_moment_finite_N(n, config.k, profile, config.budget)
                             : exact_pair_moment_finite_N(n, config.k, config.k2, profile, config.budget);
    if (config.replicas > 0) {
        r.monte_carlo = monte_carlo_moment(spec, config.k, config.k2, config.replicas, threads);
        const double diff = r.monte_carlo->estimate - r.value.value;
        if (r.monte_carlo->se > 0.0) r.z_score = diff / r.monte_carlo->se;
        r.verdict = within(r.monte_carlo->estimate, r.value.value,
                           config.thresholds.se_multiple * r.monte_carlo->se);
    }
    return r;
}

}  // namespace wignerlab

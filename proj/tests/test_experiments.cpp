#include "wignerlab/experiments.hpp"
#include "wignerlab/report.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>

using namespace wignerlab;

TEST_SUITE("experiments") {

TEST_CASE("parallel_for covers every index once and rethrows") {
    for (int threads : {1, 2, 5}) {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) CHECK(h == 1);
    }
    CHECK_THROWS_AS(parallel_for(100, 3,
                                 [](std::size_t i) {
                                     if (i == 42) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("lln on the degenerate 1x1 zero matrix") {
    LlnConfig c;
    c.grid = {1};
    c.K = 4;
    c.replicas = 3;
    c.diag = EntryKind::Zero;
    const auto r = run_lln(c);
    REQUIRE(r.cells.size() == 1);
    for (const auto& m : r.cells[0].moments) CHECK(m.mean == 0.0);
    CHECK(r.cells[0].median_ks_spectral == doctest::Approx(0.5));
    CHECK(r.cells[0].median_ks_empirical == doctest::Approx(0.5));
}

TEST_CASE("lln report fields") {
    LlnConfig c;
    c.grid = {20, 80};
    c.K = 5;
    c.replicas = 8;
    c.seed = 5;
    const auto r = run_lln(c, 2);
    REQUIRE(r.cells.size() == 2);
    for (const auto& cell : r.cells) {
        CHECK(cell.replicas == 8);
        CHECK(cell.ks_spectral.size() == 8);
        for (const auto& m : cell.moments) {
            CHECK(m.target == semicircle_moment(m.k));
            CHECK(m.se == doctest::Approx(m.sd / std::sqrt(8.0)));
            if (m.k % 2 == 1) CHECK(m.target == 0.0);
        }
    }
    REQUIRE(r.trends.size() == 5);
    CHECK(r.trends[1].variance_exponent);
    CHECK(*r.trends[1].variance_exponent < 0.0);
    CHECK(r.ks_trend != Verdict::NotApplicable);

    CHECK_THROWS(run_lln(LlnConfig{{100, 50}, 2, 4}));
    CHECK_THROWS(run_lln(LlnConfig{{10}, 2, 1}));
}

TEST_CASE("lln and clt reports do not depend on the worker count") {
    LlnConfig l;
    l.grid = {10, 40};
    l.K = 4;
    l.replicas = 6;
    const ordered_json cfg = {{"test", true}};
    CHECK(report_json(run_lln(l, 1), cfg).dump() == report_json(run_lln(l, 4), cfg).dump());

    CltConfig c;
    c.N = 30;
    c.K = 4;
    c.replicas = 1200;
    c.seed = 9;
    CHECK(report_json(run_clt(c, 1), cfg).dump() == report_json(run_clt(c, 3), cfg).dump());
}

TEST_CASE("clt k=1 samples are the centered diagonal draws") {
    CltConfig c;
    c.N = 25;
    c.K = 2;
    c.replicas = 1500;
    c.diag = EntryKind::Uniform;
    const auto r = run_clt(c);
    const EnsembleSpec spec{c.N, {c.diag}, {c.offdiag}, c.seed};
    double mean = 0.0;
    std::vector<double> xi(c.replicas);
    for (std::size_t i = 0; i < c.replicas; ++i) {
        xi[i] = sample_wigner(spec, i)(0, 0) * std::sqrt(25.0);
        mean += xi[i];
    }
    mean /= static_cast<double>(c.replicas);
    for (std::size_t i = 0; i < c.replicas; ++i) CHECK(r.samples[0][i] == doctest::Approx(xi[i] - mean).epsilon(1e-12));
    CHECK(r.orders[0].predicted_variance == 1.0);
    CHECK(r.orders[0].variance == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r.orders[0].limit == LimitShape::Mixture);
    REQUIRE(r.orders[0].predicted_kurtosis);
    CHECK(*r.orders[0].predicted_kurtosis == doctest::Approx(-1.2));
}

TEST_CASE("clt under-replication downgrades verdicts") {
    CltConfig c;
    c.N = 20;
    c.K = 3;
    c.replicas = 200;
    const auto r = run_clt(c);
    for (const auto& o : r.orders) {
        CHECK(o.variance_verdict == Verdict::Insufficient);
        CHECK_FALSE(o.normality);
    }
    for (const auto& cv : r.covariances) CHECK(cv.verdict == Verdict::Insufficient);
    CHECK(r.overall == Verdict::Insufficient);
}

TEST_CASE("clt predictions follow the oracle") {
    CltConfig c;
    c.N = 20;
    c.K = 4;
    c.replicas = 100;
    c.diag = EntryKind::Zero;
    const auto r = run_clt(c);
    CHECK(r.orders[2].predicted_variance == 2.0);  // A(3,3) alone
    CHECK(r.orders[0].limit == LimitShape::Degenerate);
    CHECK(r.orders[1].predicted_variance == 2.0);
    CHECK(r.predicted_cov[1][3] == 6.0);
    CHECK(r.predicted_cov[1][2] == 0.0);

    c.diag = EntryKind::Gaussian;
    const auto g = run_clt(c);
    CHECK(g.orders[2].predicted_variance == 6.0);
    CHECK(g.predicted_cov[0][2] == 2.0);
    CHECK(g.orders[2].limit == LimitShape::Gaussian);

    c.offdiag = EntryKind::Rademacher;
    c.diag = EntryKind::Rademacher;
    const auto rad = run_clt(c);
    CHECK(rad.orders[1].limit == LimitShape::Degenerate);
    CHECK(rad.orders[2].limit == LimitShape::Mixture);
    // a_3^4 (d4 - 3 d2^2) / var^2 with var = A(3,3) + a_3^2 = 2 + 4
    CHECK(*rad.orders[2].predicted_kurtosis == doctest::Approx(16.0 * (1.0 - 3.0) / 36.0));
}

TEST_CASE("zero-diagonal even-k fluctuations are symmetric") {
    CltConfig c;
    c.N = 400;
    c.K = 4;
    c.replicas = 4000;
    c.diag = EntryKind::Zero;
    c.offdiag = EntryKind::Uniform;
    c.seed = 17;
    const auto r = run_clt(c);
    const double se = std::sqrt(6.0 / static_cast<double>(c.replicas));
    for (int k : {2, 4}) {
        REQUIRE(r.orders[k - 1].summary.skewness);
        CHECK(std::abs(*r.orders[k - 1].summary.skewness) <= 4.0 * se);
    }
}

TEST_CASE("centering SE shrinks like 1/sqrt(M)") {
    CltConfig c;
    c.N = 40;
    c.K = 2;
    c.seed = 3;
    c.replicas = 4000;
    const auto a = run_clt(c);
    c.replicas = 8000;
    const auto b = run_clt(c);
    const double ratio = b.orders[1].centering_se / a.orders[1].centering_se;
    CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("exact mode with Monte Carlo cross-check") {
    ExactConfig c;
    c.N = 2;
    c.k = 2;
    c.replicas = 20000;
    const auto r = run_exact(c);
    CHECK(r.value.value == 1.0);
    REQUIRE(r.monte_carlo);
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE(r.z_score);
    CHECK(std::abs(*r.z_score) <= 4.0);

    c.k = 2;
    c.k2 = 2;
    c.replicas = 20000;
    const auto p = run_exact(c);
    CHECK(p.value.value == 1.0);
    CHECK(p.verdict == Verdict::Pass);

    c.replicas = 0;
    CHECK(run_exact(c).verdict == Verdict::NotApplicable);
}

TEST_CASE("lln spectral second moment at N=1600") {
    LlnConfig c;
    c.grid = {1600};
    c.K = 2;
    c.replicas = 20;
    c.seed = 1;
    const auto r = run_lln(c);
    const auto& m = r.cells[0].moments[1];
    CHECK(std::abs(m.mean - 1.0) <= 3.0 * m.se);
}

}

#include "wignerlab/oracle.hpp"
#include "wignerlab/randmat.hpp"
#include "wignerlab/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace wignerlab;

namespace {

EnsembleSpec spec_of(std::size_t n, EntryKind diag, EntryKind off, std::uint64_t seed) {
    return EnsembleSpec{n, {diag}, {off}, seed};
}

std::vector<double> draws(EntryKind kind, std::size_t count, std::uint64_t seed) {
    std::vector<double> out(count);
    const EntryDistribution d{kind};
    for (std::size_t i = 0; i < count; ++i) {
        CounterRng rng = CounterRng::for_entry(seed, 0, i);
        out[i] = d.sample(rng);
    }
    return out;
}

}  // namespace

TEST_SUITE("randmat") {

TEST_CASE("counter rng") {
    CounterRng a(42);
    CounterRng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    CHECK(CounterRng::for_entry(1, 0, 0).next() != CounterRng::for_entry(1, 0, 1).next());
    CHECK(CounterRng::for_entry(1, 0, 0).next() != CounterRng::for_entry(1, 1, 0).next());
    CHECK(CounterRng::for_entry(1, 0, 0).next() != CounterRng::for_entry(2, 0, 0).next());
    std::set<std::uint64_t> seen;
    CounterRng c(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        seen.insert(c.counter());
    }
    CHECK(seen.size() == 10000);
}

TEST_CASE("entry samplers have the advertised moments") {
    for (auto kind : {EntryKind::Gaussian, EntryKind::Rademacher, EntryKind::Uniform}) {
        CAPTURE(to_string(kind));
        const auto x = draws(kind, 200000, 5);
        const Summary s = summarize(x);
        CHECK(std::abs(s.mean) <= 4.0 * s.se);
        CHECK(s.sd * s.sd == doctest::Approx(1.0).epsilon(0.02));
        double m4 = 0.0;
        for (double v : x) m4 += v * v * v * v;
        m4 /= static_cast<double>(x.size());
        CHECK(m4 == doctest::Approx(entry_moment(kind, 4).convert_to<double>()).epsilon(0.03));
    }
    for (double v : draws(EntryKind::Rademacher, 1000, 3)) CHECK(std::abs(v) == 1.0);
    for (double v : draws(EntryKind::Uniform, 1000, 3)) CHECK(std::abs(v) <= std::sqrt(3.0));
    for (double v : draws(EntryKind::Zero, 10, 3)) CHECK(v == 0.0);
}

TEST_CASE("sample_wigner examples") {
    const auto z = sample_wigner(spec_of(1, EntryKind::Zero, EntryKind::Gaussian, 1), 0);
    CHECK(z.size() == 1);
    CHECK(z(0, 0) == 0.0);

    const auto r = sample_wigner(spec_of(2, EntryKind::Gaussian, EntryKind::Rademacher, 1), 0);
    CHECK(std::abs(r(0, 1)) == 1.0 / std::sqrt(2.0));
    CHECK(r(0, 1) == r(1, 0));

    const auto spec = spec_of(100, EntryKind::Gaussian, EntryKind::Gaussian, 99);
    CHECK(sample_wigner(spec, 3) == sample_wigner(spec, 3));
    CHECK_FALSE(sample_wigner(spec, 3) == sample_wigner(spec, 4));

    CHECK_THROWS_AS(sample_wigner(spec_of(0, EntryKind::Gaussian, EntryKind::Gaussian, 1), 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_wigner(spec_of(3, EntryKind::Gaussian, EntryKind::Zero, 1), 0), std::invalid_argument);
}

TEST_CASE("spectral and empirical measure examples") {
    const auto one = spectral_measure(SymMatrix::diagonal({0.7}));
    REQUIRE(one.size() == 1);
    CHECK(one.atoms()[0].location == 0.7);
    CHECK(one.atoms()[0].weight == 1.0);

    const auto swap = spectral_measure(SymMatrix::from_rows({{0, 1}, {1, 0}}));
    REQUIRE(swap.size() == 2);
    CHECK(swap.atoms()[0].location == doctest::Approx(-1.0));
    CHECK(swap.atoms()[0].weight == doctest::Approx(0.5));
    CHECK(swap.atoms()[1].location == doctest::Approx(1.0));
    CHECK(swap.atoms()[1].weight == doctest::Approx(0.5));

    const auto emp = empirical_measure(SymMatrix::diagonal({1.0, 3.0}));
    REQUIRE(emp.size() == 2);
    CHECK(emp.atoms()[0].location == 1.0);
    CHECK(emp.atoms()[0].weight == 0.5);
    CHECK(emp.atoms()[1].location == 3.0);

    // a repeated eigenvalue collapses to one atom carrying the summed weight
    const auto rep = empirical_measure(SymMatrix::diagonal({2.0, 2.0, 5.0}));
    REQUIRE(rep.size() == 2);
    CHECK(rep.atoms()[0].weight == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("measures share locations, shift, and match power moments") {
    for (auto solver : {SpectrumSolver::Jacobi, SpectrumSolver::Tridiagonal}) {
        const auto a = sample_wigner(spec_of(60, EntryKind::Gaussian, EntryKind::Gaussian, 4), 0);
        const auto m = spectral_measures(a, solver);
        CHECK(m.spectral.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m.empirical.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(m.spectral.size() == m.empirical.size());
        for (std::size_t i = 0; i < m.spectral.size(); ++i) {
            CHECK(m.spectral.atoms()[i].location == m.empirical.atoms()[i].location);
        }
        const auto pm = spectral_moments(a, 10);
        for (int k = 1; k <= 10; ++k) {
            CHECK(std::abs(m.spectral.moment(k) - pm[k - 1]) <= 1e-6 * std::max(1.0, std::abs(pm[k - 1])));
        }
        const auto shifted = empirical_measure(a.shifted(0.5), solver);
        REQUIRE(shifted.size() == m.empirical.size());
        for (std::size_t i = 0; i < shifted.size(); ++i) {
            CHECK(shifted.atoms()[i].location == doctest::Approx(m.empirical.atoms()[i].location + 0.5));
            CHECK(shifted.atoms()[i].weight == m.empirical.atoms()[i].weight);
        }
    }
}

TEST_CASE("spectral moments examples") {
    const auto spec = spec_of(2, EntryKind::Gaussian, EntryKind::Gaussian, 8);
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto a = sample_wigner(spec, r);
        const auto m = spectral_moments(a, 2);
        CHECK(m[0] == a(0, 0));
        CHECK(m[1] == doctest::Approx(a(0, 0) * a(0, 0) + a(0, 1) * a(0, 1)));
    }
    const auto zspec = spec_of(30, EntryKind::Zero, EntryKind::Uniform, 8);
    for (std::uint64_t r = 0; r < 5; ++r) CHECK(spectral_moments(sample_wigner(zspec, r), 1)[0] == 0.0);
}

TEST_CASE("seeded N=500 empirical measure is close to the semicircle") {
    const auto a = sample_wigner(spec_of(500, EntryKind::Gaussian, EntryKind::Gaussian, 2024), 0);
    const double ks = ks_distance(empirical_measure(a), semicircle_cdf);
    CHECK(ks < 0.1);
    CHECK(ks == doctest::Approx(ks_distance(empirical_measure(a, SpectrumSolver::Tridiagonal), semicircle_cdf)));
}

TEST_CASE("solver names") {
    for (auto s : {SpectrumSolver::Auto, SpectrumSolver::Jacobi, SpectrumSolver::Tridiagonal}) {
        CHECK(parse_spectrum_solver(to_string(s)) == s);
    }
    CHECK_THROWS(parse_spectrum_solver("lapack"));
}

}

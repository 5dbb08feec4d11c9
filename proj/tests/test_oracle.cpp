#include "wignerlab/linalg.hpp"
#include "wignerlab/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace wignerlab;

namespace {

const MomentProfile kProfiles[] = {
    MomentProfile::gaussian(),
    MomentProfile::rademacher(),
    MomentProfile::uniform(),
    MomentProfile::gaussian().with_diagonal(EntryKind::Zero),
    MomentProfile(EntryKind::Rademacher, EntryKind::Uniform),
};

// E[X_N^k(1,1)] * N^{k/2} summed over word classes: a class of weight v has (N-1)...(N-v+1)
// labelled copies, all with the same moment product.
Rational class_sum(int N, int k, const MomentProfile& p) {
    Rational total = 0;
    for (const Word& w : enumerate_words(k, WordFilter::All)) {
        const std::size_t v = w.weight();
        if (v > static_cast<std::size_t>(N)) continue;
        Rational copies = 1;
        for (std::size_t i = 1; i < v; ++i) copies *= N - static_cast<int>(i);
        Rational prod = 1;
        for (const auto& [e, n] : build_graph(w).passage_counts) {
            prod *= *(e.is_self() ? p.diag(n) : p.offdiag(n)).exact;
        }
        total += copies * prod;
    }
    return total;
}

Rational pow_n(int N, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= N;
    return r;
}

double smallest_eigenvalue(const std::vector<std::vector<double>>& m) {
    const auto d = jacobi_eigh(SymMatrix::from_rows(m));
    return d.values.front();
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("entry moments") {
    CHECK(entry_moment(EntryKind::Gaussian, 2) == 1);
    CHECK(entry_moment(EntryKind::Gaussian, 4) == 3);
    CHECK(entry_moment(EntryKind::Gaussian, 6) == 15);
    CHECK(entry_moment(EntryKind::Gaussian, 3) == 0);
    CHECK(entry_moment(EntryKind::Rademacher, 8) == 1);
    CHECK(entry_moment(EntryKind::Uniform, 4) == Rational(9, 5));
    CHECK(entry_moment(EntryKind::Uniform, 6) == Rational(27, 7));
    CHECK(entry_moment(EntryKind::Zero, 0) == 1);
    CHECK(entry_moment(EntryKind::Zero, 2) == 0);
    for (auto k : {EntryKind::Gaussian, EntryKind::Rademacher, EntryKind::Uniform, EntryKind::Zero}) {
        CHECK(parse_entry_kind(to_string(k)) == k);
    }
    CHECK_THROWS(parse_entry_kind("cauchy"));
}

TEST_CASE("moment profiles") {
    for (const auto& p : kProfiles) CHECK_NOTHROW(p.validate());
    CHECK(MomentProfile::named("uniform").offdiag(4).value == doctest::Approx(1.8));
    CHECK(MomentProfile::gaussian().with_diagonal(EntryKind::Zero).name() == "gaussian/diag=zero");
    CHECK(MomentProfile::gaussian().exact());
    std::vector<Moment> bad{{1.0, {}}, {0.0, {}}, {2.0, {}}, {0.0, {}}, {3.0, {}}};
    std::vector<Moment> good{{1.0, {}}, {0.0, {}}, {1.0, {}}, {0.0, {}}, {3.0, {}}};
    CHECK_THROWS_AS(MomentProfile(good, bad, "bad").validate(), std::invalid_argument);
    std::vector<Moment> sub{{1.0, {}}, {0.0, {}}, {1.0, {}}, {0.0, {}}, {0.5, {}}};
    CHECK_THROWS_AS(MomentProfile(good, sub, "m4<1").validate(), std::invalid_argument);
    CHECK_NOTHROW(MomentProfile(good, good, "ok").validate());
}

TEST_CASE("catalan") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(1) == 1);
    CHECK(catalan(2) == 2);
    CHECK(catalan(3) == 5);
    CHECK(catalan(10) == 16796);
    CHECK(catalan(36) == 11959798385860453492ULL);
    CHECK_THROWS_AS(catalan(37), std::overflow_error);
    CHECK_THROWS(catalan(-1));
}

TEST_CASE("semicircle moments") {
    CHECK(semicircle_moment(0) == 1);
    CHECK(semicircle_moment(2) == 1);
    CHECK(semicircle_moment(3) == 0);
    CHECK(semicircle_moment(6) == 5);
    for (int n = 1; n <= 5; ++n) {
        CHECK(semicircle_moment(2 * n) == static_cast<double>(count_words(2 * n, WordFilter::Wigner)));
    }
}

TEST_CASE("covariance_A examples") {
    const auto g = covariance_A(2, 2, MomentProfile::gaussian());
    CHECK(g.tree_count == 1);
    CHECK(g.cycle_count == 0);
    CHECK(g.value == 2.0);
    CHECK(covariance_A(2, 3, MomentProfile::gaussian()).value == 0.0);
    CHECK(covariance_A(2, 2, MomentProfile::rademacher()).value == 0.0);
    CHECK(covariance_A(2, 2, MomentProfile::uniform()).value == doctest::Approx(0.8));
    CHECK(covariance_A(2, 2, MomentProfile::gaussian()).value_for(9.0) == 8.0);
    CHECK_THROWS_AS(covariance_A(7, 9, MomentProfile::gaussian()), CapError);
}

TEST_CASE("covariance counts are frozen") {
    struct Cell {
        int k, l;
        std::int64_t tree, cycle;
    };
    const Cell cells[] = {
        {2, 2, 1, 0},    {2, 4, 3, 0},     {3, 3, 0, 2},     {2, 6, 9, 0},     {3, 5, 0, 8},
        {4, 4, 9, 2},    {2, 8, 28, 0},    {3, 7, 0, 28},    {4, 6, 27, 10},   {5, 5, 0, 34},
        {2, 10, 90, 0},  {3, 9, 0, 96},    {4, 8, 84, 40},   {5, 7, 0, 124},   {6, 6, 81, 52},
        {2, 12, 297, 0}, {3, 11, 0, 330},  {4, 10, 270, 150}, {5, 9, 0, 438},  {6, 8, 252, 214},
        {7, 7, 0, 466},
    };
    const auto g = MomentProfile::gaussian();
    for (const auto& c : cells) {
        CAPTURE(c.k);
        CAPTURE(c.l);
        const auto e = covariance_A(c.k, c.l, g);
        CHECK(e.tree_count == c.tree);
        CHECK(e.cycle_count == c.cycle);
        const auto f = covariance_A(c.l, c.k, g);
        CHECK(f.tree_count == c.tree);
        CHECK(f.cycle_count == c.cycle);
    }
}

TEST_CASE("odd sums vanish and the table is symmetric") {
    const auto table = CovarianceTable::build(7, MomentProfile::uniform());
    for (int k = 2; k <= 7; ++k) {
        for (int l = 2; l <= 7; ++l) {
            CHECK(table.value(k, l) == table.value(l, k));
            if ((k + l) % 2 == 1) {
                CHECK(table.value(k, l) == 0.0);
                CHECK(table.entry(std::min(k, l), std::max(k, l)).tree_count == 0);
                CHECK(table.entry(std::min(k, l), std::max(k, l)).cycle_count == 0);
            }
        }
    }
    CHECK(table.value(1, 5) == 0.0);
}

TEST_CASE("cycle classes exist for even sums away from order 2") {
    const auto table = CovarianceTable::build(7, MomentProfile::gaussian());
    for (const auto& e : table.entries()) {
        if ((e.k + e.l) % 2 != 0) continue;
        if (e.k >= 3) CHECK(e.cycle_count >= 1);
        if (e.k == 2) CHECK(e.cycle_count == 0);  // X^2(1,1) fluctuation is sum (xi_1j^2 - 1): tree only
    }
    const auto missing = table.cells_without_cycles();
    REQUIRE(missing.size() == 3);
    CHECK(missing[0].k == 2);
    CHECK(missing[0].l == 2);
}

TEST_CASE("table build is independent of the worker count") {
    const auto a = CovarianceTable::build(6, MomentProfile::gaussian(), {}, 1).entries();
    const auto b = CovarianceTable::build(6, MomentProfile::gaussian(), {}, 4).entries();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].tree_count == b[i].tree_count);
        CHECK(a[i].cycle_count == b[i].cycle_count);
    }
    CHECK_THROWS_AS(CovarianceTable::build(8, MomentProfile::gaussian()), CapError);
}

TEST_CASE("a coefficients") {
    CHECK(a_coefficient(1) == 1);
    CHECK(a_coefficient(2) == 0);
    CHECK(a_coefficient(3) == 2);
    CHECK(a_coefficient(5) == 5);
    CHECK(a_coefficient(7) == 14);
    CHECK(a_coefficient(9) == 42);
    CHECK_THROWS_AS(a_coefficient(11), CapError);
}

TEST_CASE("limit_cov_S examples") {
    const auto g = MomentProfile::gaussian();
    const auto table = CovarianceTable::build(4, g);
    CHECK(limit_cov_S(1, 1, table, g) == 1.0);
    CHECK(limit_cov_S(2, 2, table, g) == 2.0);
    CHECK(limit_cov_S(1, 2, table, g) == 0.0);
    CHECK(limit_cov_S(3, 3, table, g) == 6.0);
    CHECK(limit_cov_S(1, 3, table, g) == 2.0);
    CHECK(limit_cov_S(2, 4, table, g) == 6.0);
    CHECK(limit_cov_S(2, 3, table, g) == 0.0);
    const auto z = g.with_diagonal(EntryKind::Zero);
    const auto tz = CovarianceTable::build(4, z);
    CHECK(limit_cov_S(3, 3, tz, z) == 2.0);
    CHECK(limit_cov_S(1, 1, tz, z) == 0.0);
}

TEST_CASE("limit covariance blocks are positive semidefinite") {
    for (const auto& p : kProfiles) {
        CAPTURE(p.name());
        const auto table = CovarianceTable::build(7, p);
        for (int K = 1; K <= 7; ++K) {
            CHECK(smallest_eigenvalue(limit_cov_matrix(K, table, p)) >= -1e-8);
        }
    }
}

TEST_CASE("Wick joint moments") {
    const auto g = MomentProfile::gaussian();
    const auto table = CovarianceTable::build(4, g);
    CHECK(wick_joint_moment({2, 2, 2}, table) == 0.0);
    CHECK(wick_joint_moment({2, 2, 2, 2}, table) == 12.0);
    CHECK(wick_joint_moment({2, 3, 2, 3}, table) == table.value(2, 2) * table.value(3, 3));
    CHECK(wick_joint_moment({2, 4}, table) == table.value(2, 4));
    CHECK(wick_joint_moment({}, table) == 1.0);
    // (2m - 1)!! A(k,k)^m
    for (int k = 2; k <= 4; ++k) {
        double dfact = 1.0;
        for (int m = 1; m <= 4; ++m) {
            dfact *= 2 * m - 1;
            CHECK(wick_joint_moment(std::vector<int>(2 * m, k), table) ==
                  doctest::Approx(dfact * std::pow(table.value(k, k), m)));
        }
    }
}

TEST_CASE("exact finite-N moments") {
    const auto g = MomentProfile::gaussian();
    CHECK(exact_moment_finite_N(1, 2, g).value == 1.0);
    CHECK(*exact_moment_finite_N(2, 2, g).exact() == 1);
    CHECK(exact_moment_finite_N(2, 1, g).value == 0.0);
    CHECK(*exact_moment_finite_N(2, 4, g).exact() == Rational(5, 2));
    CHECK(*exact_moment_finite_N(3, 4, g).exact() == Rational(7, 3));
    CHECK(*exact_moment_finite_N(5, 4, g).exact() == Rational(11, 5));
    const auto u = MomentProfile::uniform();
    CHECK(*exact_moment_finite_N(1, 2, u).exact() == 1);
    CHECK(*exact_moment_finite_N(1, 4, u).exact() == Rational(9, 5));
    const auto z = g.with_diagonal(EntryKind::Zero);
    CHECK(*exact_moment_finite_N(2, 2, z).exact() == Rational(1, 2));
    CHECK(*exact_moment_finite_N(4, 4, z).exact() == Rational(21, 16));
    CHECK_THROWS_AS(exact_moment_finite_N(50, 8, g), BudgetError);
}

TEST_CASE("finite-N moments agree with the class-sum route") {
    for (const auto& p : kProfiles) {
        CAPTURE(p.name());
        for (int N = 1; N <= 4; ++N) {
            for (int k = 1; k <= 6; ++k) {
                CAPTURE(N);
                CAPTURE(k);
                const auto v = exact_moment_finite_N(N, k, p);
                REQUIRE(v.word_sum);
                CHECK(*v.word_sum == class_sum(N, k, p));
                if (k % 2 == 0) CHECK(*v.exact() == class_sum(N, k, p) / pow_n(N, k / 2));
            }
        }
    }
}

TEST_CASE("finite-N moments approach the semicircle") {
    for (const auto& p : kProfiles) {
        for (int k : {2, 4}) {
            const double c = semicircle_moment(k);
            const double e2 = std::abs(exact_moment_finite_N(2, k, p).value - c);
            const double e5 = std::abs(exact_moment_finite_N(5, k, p).value - c);
            CHECK(e5 <= e2);
        }
    }
    const auto z = MomentProfile::gaussian().with_diagonal(EntryKind::Zero);
    for (int k : {2, 4}) {
        CHECK(std::abs(exact_moment_finite_N(5, k, z).value - semicircle_moment(k)) <
              std::abs(exact_moment_finite_N(2, k, z).value - semicircle_moment(k)));
    }
}

TEST_CASE("exact pair moments") {
    for (const auto& p : kProfiles) {
        CAPTURE(p.name());
        const double d2 = p.diag(2).value;
        const double d4 = p.diag(4).value;
        const double m4 = p.offdiag(4).value;
        CHECK(exact_pair_moment_finite_N(1, 2, 2, p).value == doctest::Approx(d4 - d2 * d2));
        // Var((1/N) sum_j xi_1j^2)
        for (int N = 1; N <= 5; ++N) {
            const double expect = (d4 - d2 * d2 + (N - 1) * (m4 - 1.0)) / (N * N);
            CHECK(exact_pair_moment_finite_N(N, 2, 2, p).value == doctest::Approx(expect));
        }
        // symmetric laws: odd total order vanishes
        CHECK(exact_pair_moment_finite_N(2, 1, 2, p).value == 0.0);
    }
    CHECK(*exact_pair_moment_finite_N(2, 2, 2, MomentProfile::gaussian()).exact() == 1);
    CHECK(*exact_pair_moment_finite_N(2, 3, 3, MomentProfile::gaussian()).exact() == Rational(21, 4));
    CHECK(*exact_pair_moment_finite_N(5, 3, 3, MomentProfile::rademacher()).exact() == Rational(109, 125));
    CHECK_THROWS_AS(exact_pair_moment_finite_N(6, 8, 8, MomentProfile::gaussian()), BudgetError);
}

TEST_CASE("N times the finite-N variance moves toward the limit") {
    const auto z = MomentProfile::gaussian().with_diagonal(EntryKind::Zero);
    for (int k : {2, 3}) {
        const double target = covariance_A(k, k, z).value;
        double prev = INFINITY;
        for (int N = 2; N <= 5; ++N) {
            const double err = std::abs(N * exact_pair_moment_finite_N(N, k, k, z).value - target);
            CHECK(err < prev);
            prev = err;
        }
    }
    // with a Gaussian diagonal the limit includes a_k^2 d_2
    const auto g = MomentProfile::gaussian();
    double prev = INFINITY;
    for (int N = 2; N <= 5; ++N) {
        const double err = std::abs(N * exact_pair_moment_finite_N(N, 3, 3, g).value - 6.0);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("run_oracle") {
    const auto r = run_oracle(6, MomentProfile::gaussian());
    CHECK(r.catalan == std::vector<std::uint64_t>{1, 1, 2, 5, 14, 42, 132});
    CHECK(r.a == std::vector<std::int64_t>{1, 0, 2, 0, 5, 0});
    CHECK(r.findings.size() == 3);
    CHECK(r.limit_cov.size() == 6);
    CHECK(r.limit_cov[1][1] == 2.0);
    CHECK(run_oracle(6, MomentProfile::rademacher()).table.value(2, 2) == 0.0);
    CHECK_THROWS_AS(run_oracle(99, MomentProfile::gaussian()), CapError);
}

}
